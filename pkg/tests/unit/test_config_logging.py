"""Unit tests for settings, run configuration and structured logging."""

import json
import logging
import os
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from src.core.config import Settings, get_settings, load_settings
from src.core.logging import ROOT_LOGGER, JSONFormatter, get_logger, setup_logging
from src.schemas.config import RunConfig


@pytest.mark.unit
class TestSettings:
    """Test Settings defaults and validators."""

    def test_defaults(self):
        """Test default campaign and physical values."""
        settings = Settings(_env_file=None)
        assert settings.seed == 2007
        assert settings.samples == 50
        assert settings.tolerance == 1e-10
        assert settings.g_khz == 24.0
        assert settings.delta_over_g == 10.0
        assert settings.offset == 0.01
        assert settings.output_format == "json"

    def test_log_level_normalized(self):
        """Test that quoted lower-case levels are accepted."""
        assert Settings(_env_file=None, log_level="'debug'").log_level == "DEBUG"

    @pytest.mark.parametrize(
        "field,value",
        [
            ("log_level", "VERBOSE"),
            ("log_format", "xml"),
            ("output_format", "yaml"),
            ("early_atom", 3),
            ("fock_cap", 0),
        ],
    )
    def test_invalid_values(self, field, value):
        """Test that each validator rejects bad input."""
        with pytest.raises(ValidationError):
            Settings(_env_file=None, **{field: value})

    def test_environment_override(self):
        """Test that environment variables reach the cached settings."""
        with patch.dict(os.environ, {"SEED": "11", "SAMPLES": "3"}, clear=False):
            get_settings.cache_clear()
            settings = get_settings()
            assert settings.seed == 11
            assert settings.samples == 3
        get_settings.cache_clear()

    def test_load_settings_from_file(self, tmp_path):
        """Test a KEY=value file passed as --config."""
        path = tmp_path / "run.env"
        path.write_text("SEED=7\nOFFSET=0.02\nOUTPUT_FORMAT=csv\n", encoding="utf-8")
        settings = load_settings(str(path))
        assert settings.seed == 7
        assert settings.offset == 0.02
        assert settings.output_format == "csv"
        assert get_settings() is settings

    def test_load_settings_rejects_bad_file(self, tmp_path):
        """Test that a bad value in the file is a validation error."""
        path = tmp_path / "bad.env"
        path.write_text("EARLY_ATOM=5\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            load_settings(str(path))
        assert get_settings().early_atom == 1

    def test_export_env_file(self, tmp_path):
        """Test that the template lists every key with its default."""
        path = Settings(_env_file=None).export_env_file(str(tmp_path / ".env.generated"))
        lines = (tmp_path / ".env.generated").read_text(encoding="utf-8").splitlines()
        assert path.endswith(".env.generated")
        assert "SEED=2007" in lines
        assert "LOG_FILE=" in lines
        assert len(lines) == len(Settings.model_fields)


@pytest.mark.unit
class TestRunConfig:
    """Test the per-run configuration."""

    def test_overrides_replace_settings(self):
        """Test that non-None overrides win and None keeps the setting."""
        config = RunConfig.from_settings(Settings(_env_file=None), samples=5, seed=None, output_format="CSV")
        assert config.samples == 5
        assert config.seed == 2007
        assert config.output_format == "csv"

    def test_zero_tolerance_allowed(self):
        """Test that a zero tolerance is valid."""
        assert RunConfig(tolerance=0.0).tolerance == 0.0

    @pytest.mark.parametrize(
        "overrides",
        [{"tolerance": -1e-3}, {"samples": 0}, {"offset": 0.7}, {"grid_step": 1.5}, {"early_atom": 0}],
    )
    def test_invalid_overrides(self, overrides):
        """Test range checks on run parameters."""
        with pytest.raises(ValidationError):
            RunConfig(**overrides)

    def test_frozen(self):
        """Test that a validated configuration cannot change."""
        config = RunConfig()
        with pytest.raises(ValidationError):
            config.samples = 2


@pytest.mark.unit
class TestLogging:
    """Test structured logging."""

    def test_json_formatter(self):
        """Test the JSON record layout and extra fields."""
        record = logging.LogRecord("rioqed.test", logging.INFO, __file__, 10, "ran %d cases", (384,), None)
        record.seed = 2007
        data = json.loads(JSONFormatter().format(record))
        assert data["level"] == "INFO"
        assert data["logger"] == "rioqed.test"
        assert data["message"] == "ran 384 cases"
        assert data["seed"] == 2007
        assert "timestamp" in data

    def test_get_logger_namespace(self):
        """Test that module loggers live under the package logger."""
        assert get_logger("cavity.gates").name == f"{ROOT_LOGGER}.cavity.gates"

    def test_setup_logging_to_file(self, tmp_path):
        """Test text logging to a configured file."""
        log_file = tmp_path / "run.log"
        settings = Settings(_env_file=None, log_level="INFO", log_format="text", log_file=str(log_file))
        logger = setup_logging(settings)
        try:
            get_logger("tests").info("campaign started")
            for handler in logger.handlers:
                handler.flush()
            assert "campaign started" in log_file.read_text(encoding="utf-8")
            assert logger.level == logging.INFO
            assert logger.propagate is False
        finally:
            for handler in logger.handlers:
                handler.close()
            logger.handlers.clear()
