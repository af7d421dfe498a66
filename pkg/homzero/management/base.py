import sys
from argparse import ArgumentParser
from contextlib import contextmanager

from blessed import Terminal
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError, CommandParser
from django.utils.translation import gettext as _

from homzero.conf import Conf, logger
from homzero.homology import BasisTooLarge
from homzero.report import Report, collect_warnings
from homzero.rewriting import Undecided

# exit codes
INVALID = 1
UNDECIDED = 2
USAGE = 3


class UsageParser(CommandParser):
    """
    Reports bad arguments with their own exit code.
    """

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(USAGE, _("%(prog)s: error: %(message)s\n") % {"prog": self.prog, "message": message})
        raise CommandError(_("Error: %s") % message, returncode=USAGE)


def describe(error: ValidationError) -> str:
    message = "; ".join(error.messages)
    witness = (getattr(error, "params", None) or {}).get("witness")
    if witness is not None:
        message += _(" (witness: %s)") % (witness,)
    return message


class HomzeroCommand(BaseCommand):
    """
    Shared behaviour of the homzero commands: --json output and exit codes.
    """

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageParser
        parser.add_argument(
            "--json",
            action="store_true",
            dest="json",
            default=False,
            help="Print the report as JSON.",
        )
        return parser

    def execute(self, *args, **options):
        self.options = options
        try:
            return super().execute(*args, **options)
        except ValidationError as e:
            logger.info(_(f"rejected input: {describe(e)}"))
            raise CommandError(describe(e), returncode=INVALID)
        except (Undecided, BasisTooLarge) as e:
            logger.warning(_(f"undecided: {e}"))
            raise CommandError(_("Undecided: %s") % e, returncode=UNDECIDED)

    @contextmanager
    def collecting(self, report: Report):
        """
        Collects warnings into the report. An undecided computation still
        prints the report before the command fails.
        """
        with collect_warnings(report):
            try:
                yield report
            except (Undecided, BasisTooLarge):
                self.emit(report, self.options)
                raise

    def emit(self, report: Report, options):
        if options.get("json", False):
            self.stdout.write(report.to_json())
        else:
            term = Terminal(force_styling=None if not self.stdout.isatty() else False)
            self.stdout.write(report.render(term))

    def add_max_dim(self, parser: ArgumentParser):
        parser.add_argument(
            "--max-dim",
            type=int,
            dest="max_dim",
            default=None,
            help="Highest degree to compute.",
        )
        parser.add_argument(
            "--jobs",
            type=int,
            dest="jobs",
            default=None,
            help="Number of worker processes, one degree per task.",
        )

    def max_dim(self, options) -> int:
        value = Conf.MAX_DIM if options.get("max_dim") is None else options["max_dim"]
        if value < 0:
            raise CommandError(_("--max-dim must be nonnegative"), returncode=USAGE)
        return value
