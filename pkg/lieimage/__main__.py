import io
import sys

from . import logger


def launch() -> None:
    from .cli import main

    if isinstance(sys.stdout, io.TextIOWrapper):
        sys.stdout.reconfigure(encoding="utf-8", line_buffering=True)

    try:
        code = main()
    except Exception as e:
        logger.critical(
            f"Uncaught {type(e).__name__} in lieimage. See exc_info output.",
            exc_info=True,
        )
        raise
    sys.exit(code)


if __name__ == "__main__":
    launch()
