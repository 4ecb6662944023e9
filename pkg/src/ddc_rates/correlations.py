"""Vacuum two-point functions of the massless scalar field on a worldline pair.

Two interchangeable representations are provided:

* exact distributional kernels for the antisymmetric (commutator) function,
  built from Dirac deltas plus one ``delta(s)/d(s)`` boundary term;
* smooth i*epsilon-regularized functions obtained from the Wightman function.

The regulator shifts the proper-time lag, ``s -> s - i*eps``, inside the
invariant interval. For an atom at rest this is the usual ``t -> t - i*eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .worldlines import (
    Inertial,
    Pairing,
    SpacetimeEvent,
    WorldlinePair,
    invariant_interval,
    light_cone_lag,
)

FOUR_PI_SQ = 4.0 * math.pi**2


@dataclass(frozen=True)
class Delta:
    location: float
    weight: complex


@dataclass(frozen=True)
class BoundaryTerm:
    """``weight * delta(s) / d(s)`` with ``d`` odd, ``d(0) = 0`` and ``d'(0) = 1``."""

    weight: complex
    denominator: Callable[[float], float]
    label: str = "s"


@dataclass(frozen=True)
class DistributionalKernel:
    deltas: tuple[Delta, ...] = ()
    boundary: Optional[BoundaryTerm] = None

    @property
    def total_delta_weight(self) -> complex:
        return sum((d.weight for d in self.deltas), 0j)

    def is_antisymmetric(self, tol: float = 1e-15) -> bool:
        """Every off-origin delta has a mirrored partner of opposite weight."""
        for d in self.deltas:
            if d.location == 0.0:
                continue
            partner = [
                e for e in self.deltas
                if abs(e.location + d.location) <= tol * max(1.0, abs(d.location))
                and abs(e.weight + d.weight) <= tol * max(1.0, abs(d.weight))
            ]
            if not partner:
                return False
        return True


def chi_F_kernel(pair: WorldlinePair, pairing: Pairing) -> DistributionalKernel:
    """Exact commutator function of the field as a distribution in the lag."""
    m = pair.motion
    if pairing == "same":
        if isinstance(m, Inertial):
            return DistributionalKernel(boundary=BoundaryTerm(-1j / (4 * math.pi), lambda s: s, "s"))
        a = m.a
        return DistributionalKernel(
            boundary=BoundaryTerm(
                -1j / (4 * math.pi),
                lambda s: 2.0 / a * math.sinh(0.5 * a * s),
                f"(2/{a:g}) sinh({a:g} s/2)",
            )
        )
    if pairing != "cross":
        raise ValueError(f"pairing must be 'same' or 'cross', got {pairing!r}")
    L = pair.L
    s0 = light_cone_lag(pair)
    stretch = 1.0 if isinstance(m, Inertial) else math.sqrt(1.0 + 0.25 * (m.a * L) ** 2)
    w = 1.0 / (8 * math.pi * L * stretch)
    return DistributionalKernel(deltas=(Delta(-s0, 1j * w), Delta(s0, -1j * w)))


def _reciprocal_interval(pair: WorldlinePair, pairing: Pairing, u):
    """1 / interval(u) for complex lags, without overflow at large |Re u|."""
    m = pair.motion
    if isinstance(m, Inertial):
        return 1.0 / invariant_interval(pair, pairing, u)
    scalar = np.ndim(u) == 0
    z = 0.5 * m.a * np.asarray(u, dtype=complex)
    kappa = 0.25 * (m.a * pair.L) ** 2 if pairing == "cross" else 0.0
    z = np.where(z.real >= 0, z, -z)  # sinh^2 is even
    out = np.empty_like(z)
    near = z.real < 1.0
    sh = np.sinh(z[near])
    out[near] = 1.0 / (sh * sh - kappa)
    q = np.exp(-2.0 * z[~near])
    out[~near] = 4.0 * q / ((1.0 - q) ** 2 - 4.0 * kappa * q)
    out *= 0.25 * m.a * m.a
    return complex(out) if scalar else out


def wightman_from_interval(dt, dx, epsilon: float):
    """-1/(4 pi^2) / ((dt - i eps)^2 - dx^2) from raw coordinate differences."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return -1.0 / (FOUR_PI_SQ * ((dt - 1j * epsilon) ** 2 - dx * dx))


def wightman_from_events(x: SpacetimeEvent, x_prime: SpacetimeEvent, epsilon: float) -> complex:
    dt = x.t - x_prime.t
    dx = math.sqrt((x.x - x_prime.x) ** 2 + (x.y - x_prime.y) ** 2 + (x.z - x_prime.z) ** 2)
    return wightman_from_interval(dt, dx, epsilon)


def wightman_regularized(pair: WorldlinePair, pairing: Pairing, dtau, epsilon: float):
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return -_reciprocal_interval(pair, pairing, dtau - 1j * epsilon) / FOUR_PI_SQ


def chi_F_regularized(pair: WorldlinePair, pairing: Pairing, dtau, epsilon: float):
    """Half the vacuum commutator: (W(s) - W(-s)) / 2. Purely imaginary for real s."""
    return 0.5 * (
        wightman_regularized(pair, pairing, dtau, epsilon)
        - wightman_regularized(pair, pairing, -dtau, epsilon)
    )


def C_F_regularized(pair: WorldlinePair, pairing: Pairing, dtau, epsilon: float):
    """Half the vacuum anticommutator: (W(s) + W(-s)) / 2. Real for real s."""
    return 0.5 * (
        wightman_regularized(pair, pairing, dtau, epsilon)
        + wightman_regularized(pair, pairing, -dtau, epsilon)
    )


def integrated_C_F_same(pair: WorldlinePair, upper: float, epsilon: float) -> float:
    """Closed-form integral of the same-atom C^F over [0, upper].

    Uses the antiderivative of W; its value at s = 0 is purely imaginary and
    drops out of the real part.
    """
    u = upper - 1j * epsilon
    m = pair.motion
    if isinstance(m, Inertial):
        F = 1.0 / (FOUR_PI_SQ * u)
    else:
        z = 0.5 * m.a * u
        # coth without overflow
        coth = 1.0 / np.tanh(z) if abs(z.real) < 20 else math.copysign(1.0, z.real)
        F = m.a / (2 * FOUR_PI_SQ) * coth
    return float(np.real(F))
