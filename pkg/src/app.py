"""
Application entry point.

This module provides the console-script entry point.
"""

from __future__ import annotations

import sys

from src.core.application import main as app_main


def main() -> int:
    """
    Application entry point.

    Returns:
        Application exit code
    """
    return app_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
