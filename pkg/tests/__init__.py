"""Test package for RIO-QED."""
