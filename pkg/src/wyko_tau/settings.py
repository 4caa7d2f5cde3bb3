import logging
import sys
from pathlib import Path

from environs import Env

logger = logging.getLogger(__name__)
env = Env()

CONFIG_DIR = Path(__file__).parent.resolve() / "configs"

__cmd = Path(sys.argv[0]).name

RUNNING_TESTS = "test" in __cmd
LOG_LEVEL = env.str("WYKO_LOG_LEVEL", default="WARNING").upper()
WORKERS = env.int("WYKO_WORKERS", default=1)
DEFAULT_SEED = env.int("WYKO_SEED", default=7)
DEFAULT_RESTARTS = env.int("WYKO_RESTARTS", default=20)
MAX_EVALUATIONS = env.int("WYKO_MAX_EVALUATIONS", default=100_000)
if RUNNING_TESTS:
    logging.basicConfig(level=logging.DEBUG)
if WORKERS < 1:
    logger.warning(f"wyko-tau: WYKO_WORKERS={WORKERS} is not positive, using 1")
    WORKERS = 1
logger.debug(f"wyko-tau: WORKERS:{WORKERS}")
logger.debug(f"wyko-tau: DEFAULT_SEED:{DEFAULT_SEED}")
