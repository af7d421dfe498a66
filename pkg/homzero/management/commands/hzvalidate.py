from django.utils.translation import gettext as _

from homzero.formats import file_digest, load_semigroup
from homzero.management.base import HomzeroCommand
from homzero.report import Report


class Command(HomzeroCommand):
    # Translators: help text for hzvalidate management command
    help = _("Checks that a semigroup table is associative and has the declared zero.")

    def add_arguments(self, parser):
        parser.add_argument("semigroup", help="Semigroup JSON file.")

    def handle(self, *args, **options):
        s = load_semigroup(options["semigroup"])
        report = Report("hzvalidate", digest=file_digest(options["semigroup"]))
        report.verdicts["valid"] = True
        report.verdicts["elements"] = s.size
        report.verdicts["zero"] = s.has_zero
        if s.has_zero:
            report.verdicts["nilpotency_degree"] = s.nilpotency_degree() or "none"
        self.emit(report, options)
