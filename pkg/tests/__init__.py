"""
Test suite for PySide6 Desktop Application Template.
"""
