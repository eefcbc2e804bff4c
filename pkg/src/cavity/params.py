"""Physical parameters of the cavity-QED realization and the entry schedule of a CNOT stage."""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.logging import get_logger
from src.schemas.config import RunConfig

logger = get_logger(__name__)

# delta/g below this weakens the dispersive approximation
DISPERSIVE_RATIO_WARNING = 10.0


class PhysicalParams(BaseModel):
    """Couplings in rad/s, times in s. lambda = g^2/delta is always derived."""

    model_config = ConfigDict(frozen=True)

    g: float = Field(..., gt=0, description="Atom-cavity coupling (rad/s)")
    delta: float = Field(..., gt=0, description="Detuning omega_0 - omega (rad/s)")
    q_factor: float = Field(default=1e8, gt=0)
    cavity_frequency: float = Field(default=50e9, gt=0, description="Cavity frequency (Hz)")
    radiative_time: float = Field(default=3e-2, gt=0)
    pulse_time: float = Field(default=6.3e-6, ge=0)
    excitation_probability: float = Field(default=0.01, gt=0, le=1)

    @model_validator(mode="after")
    def warn_weak_detuning(self) -> "PhysicalParams":
        ratio = self.delta / self.g
        if ratio < DISPERSIVE_RATIO_WARNING - 1e-9:
            logger.warning(f"delta/g = {ratio:.3g} is below {DISPERSIVE_RATIO_WARNING}; dispersive model is approximate")
        return self

    @property
    def lam(self) -> float:
        """Effective atom-atom coupling g^2/delta (rad/s)."""
        return self.g**2 / self.delta

    @property
    def cnot_time(self) -> float:
        """Two-atom interaction time with lambda t = pi."""
        return math.pi / self.lam

    @property
    def hadamard_time(self) -> float:
        """Resonant interaction time with g t = pi."""
        return math.pi / self.g

    @classmethod
    def from_khz(cls, g_khz: float = 24.0, delta_over_g: float = 10.0, **kwargs) -> "PhysicalParams":
        g = 2 * math.pi * g_khz * 1e3
        return cls(g=g, delta=delta_over_g * g, **kwargs)

    @classmethod
    def from_config(cls, config: RunConfig) -> "PhysicalParams":
        return cls.from_khz(
            config.g_khz,
            config.delta_over_g,
            q_factor=config.q_factor,
            cavity_frequency=config.cavity_ghz * 1e9,
            radiative_time=config.radiative_time,
            pulse_time=config.pulse_time,
            excitation_probability=config.excitation_probability,
        )


class StaggeredSchedule(BaseModel):
    """One atom enters the cavity ``offset_fraction * t`` before the other; both stay for t."""

    model_config = ConfigDict(frozen=True)

    offset_fraction: float = Field(default=0.0, ge=0.0, lt=1.0)
    early_atom: int = Field(default=1, description="1 = control enters first, 2 = target")

    @model_validator(mode="after")
    def validate_early_atom(self) -> "StaggeredSchedule":
        if self.early_atom not in (1, 2):
            raise ValueError("early_atom must be 1 or 2")
        return self

    @property
    def is_ideal(self) -> bool:
        return self.offset_fraction == 0.0


IDEAL_SCHEDULE = StaggeredSchedule()
