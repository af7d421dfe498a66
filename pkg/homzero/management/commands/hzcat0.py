from django.utils.translation import gettext as _

from homzero.formats import file_digest, load_semigroup
from homzero.management.base import HomzeroCommand
from homzero.report import Report
from homzero.semigroup import invalid, is_categorical_at_zero


class Command(HomzeroCommand):
    # Translators: help text for hzcat0 management command
    help = _("Decides whether a semigroup with zero is categorical at zero.")

    def add_arguments(self, parser):
        parser.add_argument("semigroup", help="Semigroup JSON file.")

    def handle(self, *args, **options):
        s = load_semigroup(options["semigroup"])
        if not s.has_zero:
            raise invalid(_("categoricity at zero needs a semigroup with zero"), "no_zero")
        verdict = is_categorical_at_zero(s)
        report = Report("hzcat0", digest=file_digest(options["semigroup"]))
        report.verdicts["categorical_at_zero"] = verdict.holds
        if verdict.witness:
            report.verdicts["witness"] = ",".join(s.names[x] for x in verdict.witness)
        self.emit(report, options)
