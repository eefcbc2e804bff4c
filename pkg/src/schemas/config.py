"""Per-run configuration assembled from Settings and CLI overrides."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core.config import Settings


class RunConfig(BaseModel):
    """Everything a CLI command needs; validated once, then passed around read-only."""

    model_config = ConfigDict(frozen=True)

    seed: int = 2007
    samples: int = Field(default=50, ge=1)
    tolerance: float = 1e-10
    gate_tolerance: float = 1e-9
    leakage_tolerance: float = 1e-10

    g_khz: float = Field(default=24.0, gt=0)
    delta_over_g: float = Field(default=10.0, gt=0)
    q_factor: float = Field(default=1e8, gt=0)
    cavity_ghz: float = Field(default=50.0, gt=0)
    radiative_time: float = Field(default=3e-2, gt=0)
    pulse_time: float = Field(default=6.3e-6, ge=0)
    excitation_probability: float = Field(default=0.01, gt=0, le=1)

    offset: float = Field(default=0.01, ge=0, le=0.5)
    early_atom: int = 1
    grid_step: float = Field(default=0.1, gt=0, lt=1)
    sweep_phase: float = 0.0
    fock_cap: int = Field(default=1, ge=1)
    feasibility_ratio: float = Field(default=0.1, gt=0)

    output_format: str = "json"
    out: str | None = None
    verbose: bool = False

    @field_validator("tolerance", "gate_tolerance", "leakage_tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        """Tolerances may be zero (every check then fails) but never negative."""
        if v < 0:
            raise ValueError("Tolerance must not be negative")
        return v

    @field_validator("early_atom")
    @classmethod
    def validate_early_atom(cls, v: int) -> int:
        if v not in (1, 2):
            raise ValueError("Early atom must be 1 or 2")
        return v

    @field_validator("output_format")
    @classmethod
    def validate_output_format(cls, v: str) -> str:
        v = v.lower()
        if v not in ("json", "csv"):
            raise ValueError("Output format must be json or csv")
        return v

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: Any) -> "RunConfig":
        """Settings values, replaced by any override that is not None."""
        values = {name: getattr(settings, name) for name in cls.model_fields if hasattr(settings, name)}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
