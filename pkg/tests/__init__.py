"""Tests for spin-maxent."""
