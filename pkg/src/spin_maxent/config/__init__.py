"""Configuration management for spin-maxent."""

from spin_maxent.config.options import ScanOverrides, SolverOptions

__all__ = ["ScanOverrides", "SolverOptions"]
