#!/usr/bin/env python3
"""
Grasp Repertoire

Quality-diversity search of open-loop grasping policies for a planar
arm with a parallel gripper (E2R and its baselines).

Usage:
    python main.py run --strategy e2r --seed 1 --out results/e2r-seed1
    python main.py batch --out results/batch

Or using the module:
    python -m src.app run --out results/e2r-seed1
"""

from __future__ import annotations

import sys


def main() -> int:
    """
    Application entry point.

    Returns:
        Application exit code
    """
    from src.core.application import Application

    app = Application()
    return app.run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
