"""Atomic statistical functions of the two-atom eigenstates.

All functions depend on the proper-time lag ``s = tau - tau'`` only and are
finite sums of complex exponentials, held exactly as :class:`ExponentialSum`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .model import PreparedState, parity_sign
from .worldlines import Atom


@dataclass(frozen=True)
class ExponentialSum:
    """sum_k coeff_k * exp(i * freq_k * s)."""

    terms: tuple[tuple[complex, float], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[complex, float]]) -> "ExponentialSum":
        return cls(tuple((complex(c), float(f)) for c, f in pairs if c != 0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, s):
        if not self.terms:
            return 0j if np.ndim(s) == 0 else np.zeros(np.shape(s), dtype=complex)
        c = np.array([t[0] for t in self.terms])
        f = np.array([t[1] for t in self.terms])
        val = np.exp(1j * np.multiply.outer(s, f)) @ c
        return complex(val) if np.ndim(s) == 0 else val

    def increment(self, s):
        """es(s) - es(0), evaluated without cancellation for small s."""
        if not self.terms:
            return 0j if np.ndim(s) == 0 else np.zeros(np.shape(s), dtype=complex)
        c = np.array([t[0] for t in self.terms])
        f = np.array([t[1] for t in self.terms])
        val = np.expm1(1j * np.multiply.outer(s, f)) @ c
        return complex(val) if np.ndim(s) == 0 else val

    def derivative(self) -> "ExponentialSum":
        return ExponentialSum.of((1j * f * c, f) for c, f in self.terms)

    def scaled(self, factor: complex) -> "ExponentialSum":
        return ExponentialSum.of((factor * c, f) for c, f in self.terms)

    def __neg__(self) -> "ExponentialSum":
        return self.scaled(-1)

    def __add__(self, other: "ExponentialSum") -> "ExponentialSum":
        return ExponentialSum.of(self.terms + other.terms)

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(sorted({f for _, f in self.terms}))


def derivative(es: ExponentialSum) -> ExponentialSum:
    return es.derivative()


def chi_atom(state: PreparedState, atom: Atom, omega0: float) -> ExponentialSum:
    """Half the commutator of the free dipole operator of one atom, averaged in ``state``."""
    if atom not in ("A", "B"):
        raise ValueError(f"atom must be 'A' or 'B', got {atom!r}")
    if state.is_bell:
        return ExponentialSum()
    sign = -1.0 if state is PreparedState.GROUND_GROUND else 1.0
    return ExponentialSum.of([(sign / 8, omega0), (-sign / 8, -omega0)])


def c_atoms(state: PreparedState, xi: Atom, xi_prime: Atom, omega0: float) -> ExponentialSum:
    """Half the anticommutator of the free dipole operators of atoms ``xi`` and ``xi_prime``."""
    for atom in (xi, xi_prime):
        if atom not in ("A", "B"):
            raise ValueError(f"atom must be 'A' or 'B', got {atom!r}")
    even = ExponentialSum.of([(1 / 8, omega0), (1 / 8, -omega0)])
    if xi == xi_prime:
        return even
    if not state.is_bell:
        # product states: single-atom dipole expectations vanish in energy eigenstates
        return ExponentialSum()
    return even.scaled(parity_sign(state))


# Brute-force oracle: explicit four-dimensional two-atom Hilbert space.
# Single-atom basis ordering is (|g>, |e>).

_G = np.array([1.0, 0.0], dtype=complex)
_E = np.array([0.0, 1.0], dtype=complex)
_R_MINUS = np.outer(_G, _E)  # |g><e|
_R_PLUS = np.outer(_E, _G)  # |e><g|
_I2 = np.eye(2, dtype=complex)


def state_vector(state: PreparedState) -> np.ndarray:
    if state is PreparedState.GROUND_GROUND:
        return np.kron(_G, _G)
    if state is PreparedState.EXCITED_EXCITED:
        return np.kron(_E, _E)
    p = parity_sign(state)
    return (np.kron(_G, _E) + p * np.kron(_E, _G)) / np.sqrt(2.0)


def _dipole(atom: Atom, tau: float, omega0: float, order: int = 0) -> np.ndarray:
    """Free-evolved R_2 = (i/2)(R_- e^{-i w tau} - R_+ e^{i w tau}) on one tensor factor,
    or its ``order``-th proper-time derivative."""
    em = (-1j * omega0) ** order * np.exp(-1j * omega0 * tau)
    ep = (1j * omega0) ** order * np.exp(1j * omega0 * tau)
    single = 0.5j * (_R_MINUS * em - _R_PLUS * ep)
    if atom == "A":
        return np.kron(single, _I2)
    if atom == "B":
        return np.kron(_I2, single)
    raise ValueError(f"atom must be 'A' or 'B', got {atom!r}")


def brute_force_statistics(
    state: PreparedState,
    xi: Atom,
    xi_prime: Atom,
    s: float,
    omega0: float = 1.0,
    which: Literal["chi", "C"] = "C",
    tau_prime: float = 0.0,
    differentiate: bool = False,
) -> complex:
    """<psi| [R2^xi(tau), R2^xi'(tau')]_-/+ |psi> / 2 with tau = tau' + s, by matrix algebra.

    ``which="chi"`` takes the commutator, ``"C"`` the anticommutator. With
    ``differentiate`` the first operator is replaced by its tau-derivative.
    """
    psi = state_vector(state)
    first = _dipole(xi, tau_prime + s, omega0, order=1 if differentiate else 0)
    second = _dipole(xi_prime, tau_prime, omega0)
    if which == "chi":
        op = first @ second - second @ first
    elif which == "C":
        op = first @ second + second @ first
    else:
        raise ValueError(f"which must be 'chi' or 'C', got {which!r}")
    return complex(0.5 * (psi.conj() @ op @ psi))
