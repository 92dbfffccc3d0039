"""
Views module.

Contains the operator-facing surface of the toolkit: the
command-line interface.
"""

from src.views.cli import build_parser, main

__all__ = [
    "build_parser",
    "main",
]
