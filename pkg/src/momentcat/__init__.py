"""Executable moment categories, hypermoment categories and their operads."""

__version__ = "0.1.0"
