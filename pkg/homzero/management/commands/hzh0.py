from django.utils.translation import gettext as _

from homzero.formats import file_digest, load_module, load_semigroup
from homzero.homology import homology_groups
from homzero.management.base import HomzeroCommand
from homzero.report import Report
from homzero.semigroup import invalid, is_categorical_at_zero


class Command(HomzeroCommand):
    # Translators: help text for hzh0 management command
    help = _("Computes the 0-homology of a finite semigroup with zero.")

    def add_arguments(self, parser):
        parser.add_argument("semigroup", help="Semigroup JSON file.")
        parser.add_argument("module", help="Module JSON file.")
        self.add_max_dim(parser)

    def handle(self, *args, **options):
        max_dim = self.max_dim(options)
        s = load_semigroup(options["semigroup"])
        if not s.has_zero:
            raise invalid(_("the 0-complex needs a semigroup with zero; use hzbar"), "no_zero")
        a = load_module(options["module"], s)
        report = Report(
            "hzh0", digest=file_digest(options["semigroup"], options["module"]), label="H_{n}^0(S,A)"
        )
        with self.collecting(report):
            report.groups = homology_groups(s, a, max_dim, jobs=options.get("jobs"))
        categorical = is_categorical_at_zero(s)
        report.verdicts["categorical_at_zero"] = categorical.holds
        if categorical:
            report.notes.append(_("S is categorical at zero: these are the homology groups of its 0-reflector"))
        degree = s.nilpotency_degree()
        if degree is not None:
            report.verdicts["nilpotency_degree"] = degree
            report.notes.append(_("no tuples of length %(k)s or more, so every degree from %(k)s on vanishes") % {"k": degree})
        self.emit(report, options)
