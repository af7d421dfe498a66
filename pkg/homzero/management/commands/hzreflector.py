from django.core.management.base import CommandError
from django.utils.translation import gettext as _

from homzero.formats import digest, load_semigroup, read_text
from homzero.management.base import UNDECIDED, HomzeroCommand
from homzero.reflector import NuVerdict, nu_equivalent, parse_sequence
from homzero.report import Report, collect_warnings
from homzero.semigroup import invalid


class Command(HomzeroCommand):
    # Translators: help text for hzreflector management command
    help = _("Decides, within a budget, whether two sequences name the same 0-reflector element.")

    def add_arguments(self, parser):
        parser.add_argument("semigroup", help="Semigroup JSON file.")
        parser.add_argument("action", choices=["eq"], help="What to decide.")
        parser.add_argument("first", help="Comma separated element names, e.g. a.b,c")
        parser.add_argument("second", help="Comma separated element names.")
        parser.add_argument(
            "--budget",
            type=int,
            dest="budget",
            default=None,
            help="Number of sequences the search may visit.",
        )
        parser.add_argument(
            "--max-length",
            type=int,
            dest="max_length",
            default=None,
            help="Longest sequence the search may produce.",
        )

    def handle(self, *args, **options):
        s = load_semigroup(options["semigroup"])
        if not s.has_zero:
            raise invalid(_("the 0-reflector needs a semigroup with zero"), "no_zero")
        x = parse_sequence(s, options["first"])
        y = parse_sequence(s, options["second"])
        text = read_text(options["semigroup"])
        report = Report("hzreflector", digest=digest(text, x.render(), y.render()))
        with collect_warnings(report):
            verdict = nu_equivalent(
                x, y, budget=options.get("budget"), max_length=options.get("max_length")
            )
        report.verdicts["first"] = x.render()
        report.verdicts["second"] = y.render()
        report.verdicts["verdict"] = verdict.value
        self.emit(report, options)
        if verdict == NuVerdict.UNKNOWN:
            raise CommandError(_("Undecided within the budget"), returncode=UNDECIDED)
