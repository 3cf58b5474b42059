"""Integration tests for spin-maxent."""
