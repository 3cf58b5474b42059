"""Unit tests for spin-maxent."""
