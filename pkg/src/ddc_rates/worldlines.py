"""Synchronized stationary worldlines for the two atoms.

Atom A moves in the x-t plane; atom B follows the same motion displaced by a
constant transverse offset ``L`` along y. Proper time is shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Union

import numpy as np

Atom = Literal["A", "B"]
Pairing = Literal["same", "cross"]

MAX_SPEED = 1.0 - 1e-12


@dataclass(frozen=True)
class Inertial:
    v: float = 0.0
    x0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.v <= MAX_SPEED:
            raise ValueError(f"speed must lie in [0, {MAX_SPEED}], got {self.v!r}")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt((1.0 - self.v) * (1.0 + self.v))


@dataclass(frozen=True)
class UniformAcceleration:
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"proper acceleration must be positive, got {self.a!r}")


Motion = Union[Inertial, UniformAcceleration]


@dataclass(frozen=True)
class WorldlinePair:
    motion: Motion
    L: float

    def __post_init__(self):
        if not (math.isfinite(self.L) and self.L > 0):
            raise ValueError(f"separation L must be positive, got {self.L!r}")
        if not isinstance(self.motion, (Inertial, UniformAcceleration)):
            raise TypeError(f"unsupported motion {self.motion!r}")

    @property
    def kind(self) -> str:
        return "inertial" if isinstance(self.motion, Inertial) else "accelerated"

    @classmethod
    def inertial(cls, L: float, v: float = 0.0, x0: float = 0.0) -> "WorldlinePair":
        return cls(Inertial(v=v, x0=x0), L)

    @classmethod
    def accelerated(cls, L: float, a: float) -> "WorldlinePair":
        return cls(UniformAcceleration(a=a), L)


class SpacetimeEvent(NamedTuple):
    t: float
    x: float
    y: float
    z: float


def event_at(pair: WorldlinePair, atom: Atom, tau: float) -> SpacetimeEvent:
    if atom not in ("A", "B"):
        raise ValueError(f"atom must be 'A' or 'B', got {atom!r}")
    y = 0.0 if atom == "A" else pair.L
    m = pair.motion
    if isinstance(m, Inertial):
        g = m.gamma
        return SpacetimeEvent(g * tau, m.x0 + m.v * g * tau, y, 0.0)
    return SpacetimeEvent(math.sinh(m.a * tau) / m.a, math.cosh(m.a * tau) / m.a, y, 0.0)


def _atoms(pairing: Pairing) -> tuple[Atom, Atom]:
    if pairing == "same":
        return "A", "A"
    if pairing == "cross":
        return "A", "B"
    raise ValueError(f"pairing must be 'same' or 'cross', got {pairing!r}")


def lag_interval(pair: WorldlinePair, pairing: Pairing, dtau: float, tau_prime: float = 0.0):
    """Coordinate time difference and spatial distance between x(tau' + dtau) and x'(tau').

    For inertial motion the result is independent of ``tau_prime``. For the
    accelerated pair it is not; downstream code uses :func:`invariant_interval`.
    """
    first, second = _atoms(pairing)
    m = pair.motion
    if isinstance(m, Inertial):
        # closed form avoids cancellation in x0 + v*gamma*tau differences
        along = m.v * m.gamma * abs(dtau)
        return m.gamma * dtau, (along if pairing == "same" else math.hypot(along, pair.L))
    e1 = event_at(pair, first, tau_prime + dtau)
    e0 = event_at(pair, second, tau_prime)
    return e1.t - e0.t, math.sqrt((e1.x - e0.x) ** 2 + (e1.y - e0.y) ** 2 + (e1.z - e0.z) ** 2)


def invariant_interval(pair: WorldlinePair, pairing: Pairing, dtau):
    """Delta t^2 - |Delta x|^2 as a function of the proper-time lag alone.

    Accepts real or complex (scalar or array) lags so the same expression
    serves the i*epsilon-shifted two-point function.
    """
    _atoms(pairing)
    m = pair.motion
    if isinstance(m, Inertial):
        sq = dtau * dtau
    else:
        sq = (2.0 / m.a * np.sinh(0.5 * m.a * dtau)) ** 2
    if pairing == "cross":
        sq = sq - pair.L * pair.L
    return sq


def light_cone_lag(pair: WorldlinePair) -> float:
    """Positive proper-time lag at which the two worldlines are null separated."""
    m = pair.motion
    if isinstance(m, Inertial):
        return pair.L
    return 2.0 / m.a * math.asinh(0.5 * m.a * pair.L)
