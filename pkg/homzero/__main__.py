"""
Standalone entry point: ``python -m homzero hzh0 semigroup.json module.json``.

Outside a Django project a minimal configuration is set up so the homzero
management commands can run on their own.
"""
import os
import sys

from django.conf import settings


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    if not settings.configured and not os.environ.get("DJANGO_SETTINGS_MODULE"):
        settings.configure(
            INSTALLED_APPS=["homzero"],
            USE_I18N=True,
            HOMZERO={"log_level": os.environ.get("HOMZERO_LOG_LEVEL", "WARNING")},
        )
    from django.core.management import execute_from_command_line

    argv[0] = "homzero"
    execute_from_command_line(argv)


if __name__ == "__main__":
    main()
