"""Parsing and I/O helpers for spin-maxent."""

from spin_maxent.utils.obs_parser import format_observable, parse_level_text, parse_observable

__all__ = ["format_observable", "parse_level_text", "parse_observable"]
