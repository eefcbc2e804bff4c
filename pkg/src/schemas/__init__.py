"""Pydantic report and run-configuration models."""
