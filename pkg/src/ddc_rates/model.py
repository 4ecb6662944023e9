"""Parameter space, two-atom eigenbasis and the rate result type."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional


class PreparedState(enum.Enum):
    """Eigenstates of the free two-atom Hamiltonian, tagged by their CLI names."""

    GROUND_GROUND = "gg"
    SYMMETRIC_BELL = "sym"
    ANTISYMMETRIC_BELL = "asym"
    EXCITED_EXCITED = "ee"

    @classmethod
    def from_tag(cls, tag: str) -> "PreparedState":
        try:
            return cls(tag)
        except ValueError:
            names = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown state {tag!r} (expected one of {names})") from None

    @property
    def is_bell(self) -> bool:
        return self in (PreparedState.SYMMETRIC_BELL, PreparedState.ANTISYMMETRIC_BELL)

    def energy(self, omega0: float) -> float:
        return state_energy(self, omega0)


_ENERGY_IN_GAPS = {
    PreparedState.GROUND_GROUND: -1.0,
    PreparedState.SYMMETRIC_BELL: 0.0,
    PreparedState.ANTISYMMETRIC_BELL: 0.0,
    PreparedState.EXCITED_EXCITED: 1.0,
}


def parity_sign(state: PreparedState) -> int:
    """+1 for the symmetric Bell state, -1 for the antisymmetric one.

    Product states have no exchange parity and raise ``ValueError``.
    """
    if state is PreparedState.SYMMETRIC_BELL:
        return 1
    if state is PreparedState.ANTISYMMETRIC_BELL:
        return -1
    raise ValueError(f"parity is undefined for the product state {state.value!r}")


def state_energy(state: PreparedState, omega0: float) -> float:
    if not omega0 > 0:
        raise ValueError(f"omega0 must be positive, got {omega0!r}")
    return _ENERGY_IN_GAPS[state] * omega0


def rate_unit(omega0: float, mu: float) -> float:
    """Natural rate scale mu^2 omega0^2 / (8 pi): one isolated atom's radiation-reaction loss."""
    return mu * mu * omega0 * omega0 / (8.0 * math.pi)


@dataclass(frozen=True)
class AtomPairParams:
    omega0: float
    mu: float
    state: PreparedState

    def __post_init__(self):
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise ValueError(f"omega0 must be positive and finite, got {self.omega0!r}")
        if not (math.isfinite(self.mu) and self.mu > 0):
            raise ValueError(f"mu must be positive and finite, got {self.mu!r}")
        if not isinstance(self.state, PreparedState):
            raise TypeError("state must be a PreparedState; arbitrary density matrices are not supported")

    @property
    def unit(self) -> float:
        return rate_unit(self.omega0, self.mu)


class Method(enum.Enum):
    ANALYTIC_KERNEL = "analytic"
    REGULARIZED_QUADRATURE = "numeric"


@dataclass(frozen=True)
class ExtrapolationRecord:
    """Diagnostics of one epsilon-extrapolated quadrature."""

    epsilons: tuple[float, ...]
    estimates: tuple[float, ...]
    extrapolants: tuple[float, ...]  # diagonal of the Richardson table
    value: float
    residual: float
    tolerance: float
    T_window: float
    window: str
    note: str = ""

    @property
    def converged(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "epsilons": list(self.epsilons),
            "estimates": list(self.estimates),
            "extrapolants": list(self.extrapolants),
            "value": self.value,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "T_window": self.T_window,
            "window": self.window,
            "note": self.note,
        }


class NonConvergenceError(RuntimeError):
    """The epsilon ladder did not settle within the requested tolerance."""

    def __init__(self, message: str, record: ExtrapolationRecord):
        super().__init__(message)
        self.record = record


@dataclass(frozen=True)
class RateBreakdown:
    vf: float
    rr: float
    total: float
    method: Method
    diagnostics: Optional[dict[str, ExtrapolationRecord]] = field(default=None)

    @classmethod
    def from_parts(cls, vf: float, rr: float, method: Method, diagnostics=None) -> "RateBreakdown":
        return cls(vf=vf, rr=rr, total=vf + rr, method=method, diagnostics=diagnostics or None)

    def normalized(self, unit: float) -> tuple[float, float, float]:
        return self.vf / unit, self.rr / unit, self.total / unit

    @property
    def eps_residual(self) -> Optional[float]:
        """Largest extrapolation residual among the quadratures that produced this result."""
        if not self.diagnostics:
            return None
        return max(rec.residual for rec in self.diagnostics.values())
