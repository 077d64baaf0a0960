import logging
import sys
from typing import List, Optional

from .cli import build_parser, parse_config, run_command
from .config import load_settings
from .errors import WordFreqError

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    # stdout carries the report, so logs go to stderr
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(module)s - %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        settings = load_settings()
        configure_logging(settings.log_level)
        config = parse_config(build_parser(settings), argv)
        return run_command(config)
    except SystemExit as exc:
        if exc.code is None or isinstance(exc.code, int):
            return exc.code or 0
        return 2
    except (WordFreqError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        print(f"❌ {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
