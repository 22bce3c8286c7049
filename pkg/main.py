"""
Entry point for running fibolattice from a source checkout.

This module delegates to the command line front end and handles:
- Exit status propagation
- Worker process cleanup after the check harness
- Last-resort error logging
"""

import sys

from fibolattice.cli import EXIT_INTERRUPTED, main as cli_main
from fibolattice.logging_config import get_logger

logger = get_logger(__name__)


def cleanup_resources() -> None:
    """Terminate any worker processes left behind by an interrupted check run."""
    try:
        import multiprocessing as mp

        for p in mp.active_children():
            if p.is_alive():
                logger.debug("Terminating remaining process: %s", p.name)
                p.terminate()
                p.join(timeout=2.0)
                if p.is_alive():
                    logger.warning("Failed to terminate process: %s", p.name)

        logger.debug("Resource cleanup completed")

    except Exception as e:
        logger.warning("Error during resource cleanup: %s", e)


def main() -> None:
    status = 1
    try:
        status = cli_main()
    except KeyboardInterrupt:
        logger.info("Run interrupted by user")
        status = EXIT_INTERRUPTED
    except Exception as e:
        logger.error("Run failed: %s", e)
    finally:
        cleanup_resources()
    sys.exit(status)


if __name__ == "__main__":
    main()
