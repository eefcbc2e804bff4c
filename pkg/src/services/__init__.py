"""Campaigns and report output used by the command-line interface."""
