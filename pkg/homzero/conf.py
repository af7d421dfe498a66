import logging
import os
from multiprocessing import cpu_count

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

# optional
try:
    import psutil
except ImportError:
    psutil = None


def _read_settings():
    try:
        return dict(settings.HOMZERO)
    except (AttributeError, ImproperlyConfigured):
        # plain library use without a configured Django project
        return {}


class Conf:
    """
    Configuration class
    """

    conf = _read_settings()

    # Log output level
    LOG_LEVEL = conf.get("log_level", "INFO")

    # The Django app label
    LABEL = conf.get("label", "Homzero")

    # Highest degree computed by the homology commands when --max-dim is not given
    MAX_DIM = conf.get("max_dim", 4)

    # Largest number of tuples a single degree of a chain complex may hold
    TUPLE_LIMIT = conf.get("tuple_limit", 10 ** 6)

    # Number of sequences the reflector equivalence search may visit
    NU_BUDGET = conf.get("nu_budget", 10 ** 4)

    # Longest reflector sequence the equivalence search will produce
    NU_MAX_LENGTH = conf.get("nu_max_length", 12)

    # Number of words a single congruence class may hold before giving up
    REWRITE_BUDGET = conf.get("rewrite_budget", 10 ** 5)

    # The environment overrides both search budgets. Handy for one-off runs.
    if os.environ.get("HOMZERO_BUDGET"):
        NU_BUDGET = REWRITE_BUDGET = int(os.environ["HOMZERO_BUDGET"])

    # Number of worker processes for per-degree homology. 0 means cpu count.
    WORKERS = conf.get("workers", 1)
    if not WORKERS:
        try:
            WORKERS = cpu_count()
            # in rare cases this might fail
        except NotImplementedError:
            # try psutil
            if psutil:
                WORKERS = psutil.cpu_count() or 4
            else:
                # sensible default
                WORKERS = 4

    # Global sync option for debugging. Keeps all work in the calling process.
    SYNC = conf.get("sync", False)

    # Verify every Smith normal form against its transforms
    CHECK_SNF = conf.get("check_snf", False)

    @classmethod
    def as_dict(cls):
        return {
            key: getattr(cls, key)
            for key in (
                "LOG_LEVEL",
                "MAX_DIM",
                "TUPLE_LIMIT",
                "NU_BUDGET",
                "NU_MAX_LENGTH",
                "REWRITE_BUDGET",
                "WORKERS",
                "SYNC",
                "CHECK_SNF",
            )
        }


# logger
logger = logging.getLogger("homzero")

# Set up standard logging handler in case there is none
if not logger.handlers:
    logger.setLevel(level=getattr(logging, Conf.LOG_LEVEL))
    logger.propagate = False
    formatter = logging.Formatter(
        fmt="%(asctime)s [HZ] %(levelname)s %(message)s", datefmt="%H:%M:%S"
    )
    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    logger.addHandler(handler)
