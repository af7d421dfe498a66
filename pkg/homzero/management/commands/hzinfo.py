from django.utils.translation import gettext as _

from homzero import VERSION
from homzero.conf import Conf
from homzero.formats import dump_json
from homzero.management.base import HomzeroCommand

COMMANDS = ("hzvalidate", "hzcat0", "hzh0", "hzbar", "hzpipeline", "hzreflector", "hzinfo")


class Command(HomzeroCommand):
    # Translators: help text for hzinfo management command
    help = _("Version, commands and effective configuration.")

    def add_arguments(self, parser):
        parser.add_argument(
            "--config",
            action="store_true",
            dest="config",
            default=False,
            help="Print current configuration.",
        )

    def handle(self, *args, **options):
        if options.get("json", False):
            data = {"version": list(VERSION), "commands": list(COMMANDS), "config": Conf.as_dict()}
            self.stdout.write(dump_json(data))
            return
        self.stdout.write(f"VERSION: {'.'.join(str(v) for v in VERSION)}")
        if options.get("config", False):
            for setting, value in Conf.as_dict().items():
                self.stdout.write(f"{setting}: {value}")
        else:
            self.stdout.write(_("Commands: %s") % ", ".join(COMMANDS))
