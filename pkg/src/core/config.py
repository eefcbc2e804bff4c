"""Configuration management for the RIO cavity-QED simulator."""

import os
from functools import lru_cache

from pydantic import Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Simulator settings with env-file support (``KEY=value`` files via ``--config``)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore",
        env_file_encoding="utf-8",
    )

    # Application Settings
    app_name: str = "RIO-QED Simulator"
    app_version: str = "0.1.0"

    # Logging Settings
    log_level: str = Field(default="WARNING", description="Logging level")
    log_format: str = Field(default="json", description="Log format (json or text)")
    log_file: str | None = Field(default=None, description="Log file path")

    # Campaign Settings
    seed: int = Field(default=2007, description="Seed for every stochastic entry point")
    samples: int = Field(default=50, description="Random (xi, t) samples per operator and branch")
    tolerance: float = Field(default=1e-10, description="Protocol residual tolerance")
    gate_tolerance: float = Field(default=1e-9, description="Physical gate residual tolerance")
    leakage_tolerance: float = Field(default=1e-10, description="Auxiliary-level population tolerance")

    # Physical Parameters
    g_khz: float = Field(default=24.0, description="Atom-cavity coupling, g = 2*pi*g_khz kHz")
    delta_over_g: float = Field(default=10.0, description="Detuning in units of g")
    q_factor: float = Field(default=1e8, description="Cavity quality factor")
    cavity_ghz: float = Field(default=50.0, description="Cavity frequency in GHz")
    radiative_time: float = Field(default=3e-2, description="Rydberg radiative time in seconds")
    pulse_time: float = Field(default=6.3e-6, description="Classical-field pulse time in seconds")
    excitation_probability: float = Field(default=0.01, description="Probability the cavity is excited during a passage")

    # Timing-Error Settings
    offset: float = Field(default=0.01, description="Entry offset as a fraction of the two-atom time")
    early_atom: int = Field(default=1, description="Atom entering the cavity first (1=control, 2=target)")
    grid_step: float = Field(default=0.1, description="Grid step for the y_gg, y_ge, y_eg sweep")
    sweep_phase: float = Field(default=0.0, description="Common phase (radians) of t_m in the sweep")

    # Output Settings
    output_format: str = Field(default="json", description="Report format (json or csv)")
    out: str | None = Field(default=None, description="Report output path (stdout when unset)")
    verbose: bool = Field(default=False, description="Include gate matrices in reports")

    # Numerics
    max_hilbert_dimension: int = Field(default=1024, description="Largest Hilbert space the simulator will build")
    fock_cap: int = Field(default=1, description="Fock truncation N for the resonant cavity stage")
    feasibility_ratio: float = Field(default=0.1, description="Largest ratio still counted as 'much shorter than'")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level value."""
        allowed = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v = v.strip("\"'").upper()
        if v not in allowed:
            raise ValueError(f"Log level must be one of {allowed}")
        return v

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Validate log format value."""
        allowed = ["json", "text"]
        v = v.strip("\"'").lower()
        if v not in allowed:
            raise ValueError(f"Log format must be one of {allowed}")
        return v

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        """Validate report format value."""
        allowed = ["json", "csv"]
        v = v.strip("\"'").lower()
        if v not in allowed:
            raise ValueError(f"Output format must be one of {allowed}")
        return v

    @field_validator("early_atom")
    @classmethod
    def validate_early_atom(cls, v: int) -> int:
        """Validate early atom choice."""
        if v not in (1, 2):
            raise ValueError("Early atom must be 1 or 2")
        return v

    @field_validator("max_hilbert_dimension", "fock_cap")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """Validate positive integer settings."""
        if v < 1:
            raise ValueError("Value must be a positive integer")
        return v

    def export_env_file(self, path: str = ".env.generated") -> str:
        """Export a .env-style template containing ALL supported keys with DEFAULT values.

        Notes:
        - Values are defaults from Settings definitions, not current environment overrides.
        - Keys are emitted in uppercase snake case, in declaration order.
        """
        from pathlib import Path

        lines: list[str] = []
        for key, field in type(self).model_fields.items():
            default_value = field.default
            val_str = "" if default_value is None else str(default_value)
            lines.append(f"{key.upper()}={val_str}")

        out_path = Path(path)
        out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(out_path)


_config_file: str | None = None


def load_settings(config_path: str | None = None) -> Settings:
    """Make ``config_path`` (a KEY=value file, or None for the environment) the source
    behind get_settings() and return the resulting settings.

    A file that fails validation leaves the previous source in place.
    """
    global _config_file
    previous, _config_file = _config_file, config_path
    get_settings.cache_clear()
    try:
        return get_settings()
    except ValidationError:
        _config_file = previous
        get_settings.cache_clear()
        raise


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    if _config_file is not None:
        return Settings(_env_file=_config_file)  # type: ignore[call-arg]

    # Check if we're in a test environment
    if os.getenv("PYTEST_CURRENT_TEST") or os.getenv("TESTING"):
        return Settings(_env_file=None)  # type: ignore[call-arg]

    return Settings()
