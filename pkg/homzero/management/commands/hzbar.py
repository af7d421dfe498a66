from django.utils.translation import gettext as _

from homzero.formats import file_digest, load_module, load_semigroup
from homzero.homology import homology_groups
from homzero.management.base import HomzeroCommand
from homzero.report import Report
from homzero.semigroup import invalid


class Command(HomzeroCommand):
    # Translators: help text for hzbar management command
    help = _("Computes the homology of a finite semigroup from its bar complex.")

    def add_arguments(self, parser):
        parser.add_argument("semigroup", help="Semigroup JSON file with \"zero\": false.")
        parser.add_argument("module", help="Module JSON file.")
        self.add_max_dim(parser)

    def handle(self, *args, **options):
        max_dim = self.max_dim(options)
        s = load_semigroup(options["semigroup"])
        if s.has_zero:
            raise invalid(_("the bar complex takes a semigroup without zero; use hzh0"), "has_zero")
        a = load_module(options["module"], s)
        report = Report(
            "hzbar", digest=file_digest(options["semigroup"], options["module"]), label="H_{n}(S,A)"
        )
        with self.collecting(report):
            report.groups = homology_groups(s, a, max_dim, jobs=options.get("jobs"))
        self.emit(report, options)
