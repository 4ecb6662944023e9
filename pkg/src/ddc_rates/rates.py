"""Vacuum-fluctuation and radiation-reaction energy rates of the two-atom system.

Every rate is available along two independent routes:

* analytic: exact pairing of distributional field kernels with the atomic
  exponential sums (no quadrature at all);
* numeric: quadrature of the i*epsilon-regularized field functions against
  the same atomic functions, extrapolated to epsilon -> 0.

Both routes integrate over the lag ``s = tau - tau'`` on the half line
``[0, inf)`` (the infinitely long interaction time limit).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .atom_stats import ExponentialSum, brute_force_statistics, c_atoms, chi_atom
from .correlations import (
    C_F_regularized,
    DistributionalKernel,
    chi_F_kernel,
    chi_F_regularized,
    integrated_C_F_same,
)
from .model import (
    AtomPairParams,
    ExtrapolationRecord,
    Method,
    NonConvergenceError,
    PreparedState,
    RateBreakdown,
    rate_unit,
)
from .quadrature import (
    QuadratureConfig,
    breakpoints,
    extrapolate,
    fourier_tail,
    integrate_complex,
    taper_weight,
    window_span,
)
from .worldlines import Pairing, WorldlinePair, light_cone_lag

ATOMS = ("A", "B")
DEFAULT_QC = QuadratureConfig()


class KernelPairingError(ValueError):
    """A ``delta(s)/d(s)`` kernel was paired with a function that does not vanish at s = 0."""


def _pairing(xi: str, xi_prime: str) -> Pairing:
    return "same" if xi == xi_prime else "cross"


def pair_kernel(kernel: DistributionalKernel, es: ExponentialSum) -> complex:
    """Action of ``kernel`` on ``es`` over the half line s >= 0.

    Deltas at s0 > 0 act by sifting, deltas at s0 < 0 lie outside the range,
    a delta exactly at s0 = 0 carries half weight. The boundary term acts as
    ``(weight / 2) * lim_{s->0+} es(s) / d(s) = (weight / 2) * es'(0)``.
    """
    total = 0j
    for d in kernel.deltas:
        if d.location > 0:
            total += d.weight * es(d.location)
        elif d.location == 0:
            total += 0.5 * d.weight * es(0.0)
    if kernel.boundary is not None and not es.is_zero:
        at_zero = es(0.0)
        scale = sum(abs(c) for c, _ in es.terms)
        if abs(at_zero) > 1e-12 * scale:
            raise KernelPairingError(
                f"boundary kernel needs a function vanishing at s=0, got {at_zero!r}"
            )
        total += 0.5 * kernel.boundary.weight * es.derivative()(0.0)
    return total


def _rr_pieces(params: AtomPairParams) -> dict[Pairing, ExponentialSum]:
    """d/ds C^{xi xi'} summed over atom pairs sharing the same field kernel."""
    out: dict[Pairing, ExponentialSum] = {"same": ExponentialSum(), "cross": ExponentialSum()}
    for xi in ATOMS:
        for xp in ATOMS:
            key = _pairing(xi, xp)
            out[key] = out[key] + c_atoms(params.state, xi, xp, params.omega0).derivative()
    return out


def _vf_piece(params: AtomPairParams) -> ExponentialSum:
    es = ExponentialSum()
    for xi in ATOMS:
        es = es + chi_atom(params.state, xi, params.omega0).derivative()
    return es


def rate_rr_analytic(params: AtomPairParams, pair: WorldlinePair) -> float:
    """Radiation-reaction rate from exact kernel pairing."""
    total = 0j
    for xi in ATOMS:
        for xp in ATOMS:
            kernel = chi_F_kernel(pair, _pairing(xi, xp))
            es = c_atoms(params.state, xi, xp, params.omega0).derivative()
            total += pair_kernel(kernel, es)
    rate = 2j * params.mu**2 * total
    if abs(rate.imag) > 1e-12 * params.unit:
        raise ArithmeticError(f"analytic radiation-reaction rate is not real: {rate!r}")
    return rate.real


# ---------------------------------------------------------------- numeric route


def _check_window(pair: WorldlinePair, T: float):
    if light_cone_lag(pair) >= T:
        raise ValueError(
            f"T_window ({T:g}) must exceed the light-cone lag ({light_cone_lag(pair):g})"
        )


def regularized_pairing(
    pair: WorldlinePair,
    pairing: Pairing,
    es: ExponentialSum,
    epsilon: float,
    T: float,
    cfg: QuadratureConfig,
) -> complex:
    """Integral of chi^F_eps(s) * es(s) over the window starting at s = 0, for one epsilon."""
    if es.is_zero:
        return 0j
    span = window_span(T, cfg.window)
    centers = [0.0] if pairing == "same" else [light_cone_lag(pair)]
    pts = breakpoints(0.0, span, centers, epsilon)
    if cfg.window == "taper":

        def f(s):
            return chi_F_regularized(pair, pairing, s, epsilon) * es(s) * taper_weight(s, T)

    else:

        def f(s):
            return chi_F_regularized(pair, pairing, s, epsilon) * es(s)

    return integrate_complex(f, pts, cfg)


def _rr_at(params: AtomPairParams, pair: WorldlinePair, epsilon: float, T: float, cfg) -> float:
    total = 0j
    for pairing, es in _rr_pieces(params).items():
        total += regularized_pairing(pair, pairing, es, epsilon, T, cfg)
    rate = 2j * params.mu**2 * total
    if abs(rate.imag) > 1e-9 * params.unit:
        raise ArithmeticError(f"regularized radiation-reaction integrand is not real: {rate!r}")
    return rate.real


def _finish(record: ExtrapolationRecord, what: str) -> ExtrapolationRecord:
    if not record.converged:
        raise NonConvergenceError(
            f"{what}: epsilon extrapolation residual {record.residual:.3e} exceeds "
            f"tolerance {record.tolerance:.3e}",
            record,
        )
    return record


def rate_rr_numeric_record(
    params: AtomPairParams, pair: WorldlinePair, qc: QuadratureConfig = DEFAULT_QC
) -> ExtrapolationRecord:
    T = qc.upper(params.omega0)
    _check_window(pair, T)
    record = extrapolate(
        lambda e: _rr_at(params, pair, e, T, qc),
        qc.ladder(params.omega0),
        qc.tol * params.unit,
        T,
        qc.window,
        note="radiation reaction; tail beyond T is O(eps) and removed by extrapolation",
    )
    return _finish(record, "radiation reaction")


def rate_rr_numeric(params: AtomPairParams, pair: WorldlinePair, qc: QuadratureConfig = DEFAULT_QC) -> float:
    """Radiation-reaction rate from regularized quadrature (independent of the kernels)."""
    return rate_rr_numeric_record(params, pair, qc).value


def _vf_at(pair: WorldlinePair, g, g_terms: Optional[ExponentialSum], epsilon: float, T: float, cfg) -> complex:
    """Integral of C^F_eps(s) g(s) over [0, inf) with the 1/s^2 core subtracted at s = 0.

    g(0) * C^F is integrated in closed form; the remainder C^F * (g - g(0)) is
    bounded near the origin. Beyond T the exact Fourier tail is added when g is
    an exponential sum. A pointwise g has no frequency decomposition, so its
    tail is dropped; for |C^F| ~ 1/(4 pi^2 s^2) and g oscillating at omega0
    the omission is below max|g| / (4 pi^2 omega0 T^2).
    """
    g0 = g(0.0)
    head = g0 * integrated_C_F_same(pair, T, epsilon)
    if g_terms is not None:

        def rest(s):
            return C_F_regularized(pair, "same", s, epsilon) * g_terms.increment(s)

    else:

        def rest(s):
            return C_F_regularized(pair, "same", s, epsilon) * (g(s) - g0)

    body = integrate_complex(rest, breakpoints(0.0, T, [0.0], epsilon), cfg)
    tail = 0j
    if g_terms is not None:

        def c_real(s):
            return C_F_regularized(pair, "same", s, epsilon).real

        tail = sum((c * fourier_tail(c_real, T, f, cfg) for c, f in g_terms.terms), 0j)
    return head + body + tail


def rate_vf_record(
    params: AtomPairParams,
    pair: WorldlinePair,
    qc: QuadratureConfig = DEFAULT_QC,
    source: Literal["closed", "matrix"] = "closed",
) -> Optional[ExtrapolationRecord]:
    """Vacuum-fluctuation rate by regularized quadrature.

    With ``source="closed"`` Bell states return ``None``: their atomic
    commutator function is the empty sum and no quadrature is run. With
    ``source="matrix"`` the atomic function is taken pointwise from the
    explicit four-state matrix computation and the quadrature always runs.
    """
    if source == "closed":
        g_terms = _vf_piece(params)
        if g_terms.is_zero:
            return None
        g = g_terms
    elif source == "matrix":
        g_terms = None

        def g(s):
            return sum(
                brute_force_statistics(params.state, xi, xi, s, params.omega0, "chi", differentiate=True)
                for xi in ATOMS
            )

    else:
        raise ValueError(f"source must be 'closed' or 'matrix', got {source!r}")

    T = qc.upper(params.omega0)
    mu2 = params.mu**2

    def estimate(eps):
        rate = 2j * mu2 * _vf_at(pair, g, g_terms, eps, T, qc)
        if abs(rate.imag) > 1e-9 * params.unit:
            raise ArithmeticError(f"regularized vacuum-fluctuation integrand is not real: {rate!r}")
        return rate.real

    record = extrapolate(
        estimate,
        qc.ladder(params.omega0),
        qc.tol * params.unit,
        T,
        "hard",
        note="vacuum fluctuations; 1/s^2 core subtracted at s=0 and integrated in closed form; "
        + ("exact Fourier tail beyond T" if g_terms is not None else "tail beyond T truncated"),
    )
    return _finish(record, "vacuum fluctuations")


def rate_vf(
    params: AtomPairParams,
    pair: WorldlinePair,
    qc: QuadratureConfig = DEFAULT_QC,
    source: Literal["closed", "matrix"] = "closed",
) -> float:
    record = rate_vf_record(params, pair, qc, source)
    return 0.0 if record is None else record.value


def rate_total(
    params: AtomPairParams,
    pair: WorldlinePair,
    qc: QuadratureConfig = DEFAULT_QC,
    method: Literal["analytic", "numeric"] = "analytic",
) -> RateBreakdown:
    """vf + rr breakdown. ``method`` selects the radiation-reaction route.

    The vacuum-fluctuation part of product states always needs quadrature;
    its record is attached under ``diagnostics["vf"]``.
    """
    diagnostics = {}
    vf_rec = rate_vf_record(params, pair, qc)
    vf = 0.0
    if vf_rec is not None:
        diagnostics["vf"] = vf_rec
        vf = vf_rec.value
    if method == "analytic":
        rr = rate_rr_analytic(params, pair)
        m = Method.ANALYTIC_KERNEL
    elif method == "numeric":
        rr_rec = rate_rr_numeric_record(params, pair, qc)
        diagnostics["rr"] = rr_rec
        rr = rr_rec.value
        m = Method.REGULARIZED_QUADRATURE
    else:
        raise ValueError(f"method must be 'analytic' or 'numeric', got {method!r}")
    return RateBreakdown.from_parts(vf, rr, m, diagnostics)


# ---------------------------------------------------------------- closed forms


def modulation_factor(omega0: float, L: float, a: Optional[float] = None) -> float:
    """Interference factor multiplying mu^2 omega0 / (8 pi) in the Bell-state rate."""
    if not L > 0:
        raise ValueError("L must be positive")
    if a is None:
        return math.sin(omega0 * L) / L
    if not a > 0:
        raise ValueError("a must be positive")
    x = 0.5 * a * L
    # (2/a) asinh(aL/2) written as L * asinh(x)/x keeps a -> 0 exact
    lag = L * (math.asinh(x) / x if x > 1e-8 else 1.0 - x * x / 6.0)
    return math.sin(omega0 * lag) / (L * math.sqrt(1.0 + x * x))


def _check_parity(parity: int):
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 or -1, got {parity!r}")


def closed_form_inertial(omega0: float, mu: float, L: float, parity: int) -> float:
    _check_parity(parity)
    c = mu * mu * omega0 / (8 * math.pi)
    return -c * omega0 - parity * c * modulation_factor(omega0, L)


def closed_form_accelerated(omega0: float, mu: float, L: float, a: float, parity: int) -> float:
    _check_parity(parity)
    c = mu * mu * omega0 / (8 * math.pi)
    return -c * omega0 - parity * c * modulation_factor(omega0, L, a)


# ---------------------------------------------------------------- thermality


def planck_occupation(omega0: float, a: float) -> float:
    """1 / (exp(2 pi omega0 / a) - 1): occupation at the Unruh temperature a / (2 pi)."""
    return 1.0 / math.expm1(2 * math.pi * omega0 / a)


@dataclass(frozen=True)
class PlanckFit:
    coefficients: tuple[float, float, float]  # constant, modulation, planck (rate units)
    rms_residual: float

    @property
    def planck(self) -> float:
        return self.coefficients[2]


def fit_planck_coefficient(
    a_values: Sequence[float],
    totals: Sequence[float],
    omega0: float,
    mu: float,
    L: float,
) -> PlanckFit:
    """Least squares of ``totals / unit`` on [1, modulation(a) / omega0, planck(a)]."""
    unit = rate_unit(omega0, mu)
    a = np.asarray(a_values, dtype=float)
    y = np.asarray(totals, dtype=float) / unit
    X = np.column_stack(
        [
            np.ones_like(a),
            [modulation_factor(omega0, L, ai) / omega0 for ai in a],
            [planck_occupation(omega0, ai) for ai in a],
        ]
    )
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    rms = float(np.sqrt(np.mean((X @ coef - y) ** 2)))
    return PlanckFit(tuple(float(c) for c in coef), rms)


@dataclass(frozen=True)
class ThermalReport:
    omega0: float
    a: float
    L_grid: tuple[float, ...]
    modulation: tuple[float, ...]
    inertial_modulation: tuple[float, ...]
    planck_occupation: float
    a_grid: tuple[float, ...]
    planck_coefficient: dict[int, float]
    tolerance: float

    @property
    def nonthermal(self) -> bool:
        return all(abs(c) <= self.tolerance for c in self.planck_coefficient.values())


def thermal_comparison(
    omega0: float,
    a: float,
    L: float = 1.0,
    mu: float = 1.0,
    L_grid: Optional[Sequence[float]] = None,
    a_grid: Optional[Sequence[float]] = None,
    tolerance: float = 1e-6,
) -> ThermalReport:
    """Compare accelerated Bell-state rates with a thermal (Unruh) occupation.

    The modulation factor is tabulated over ``L_grid`` at acceleration ``a``.
    Bell-state totals from the kernel route over ``a_grid`` (default
    [0.1, 10] omega0) are regressed on a Planck occupation term; a coefficient
    within ``tolerance`` of zero certifies the absence of thermal dependence.
    """
    if not a > 0:
        raise ValueError("a must be positive")
    Ls = tuple(L_grid) if L_grid is not None else tuple(np.linspace(0.05, 10.0, 40) / omega0)
    As = tuple(a_grid) if a_grid is not None else tuple(np.geomspace(0.1, 10.0, 25) * omega0)
    coeffs = {}
    for state in (PreparedState.SYMMETRIC_BELL, PreparedState.ANTISYMMETRIC_BELL):
        params = AtomPairParams(omega0, mu, state)
        totals = [rate_total(params, WorldlinePair.accelerated(L, ai)).total for ai in As]
        coeffs[1 if state is PreparedState.SYMMETRIC_BELL else -1] = fit_planck_coefficient(
            As, totals, omega0, mu, L
        ).planck
    return ThermalReport(
        omega0=omega0,
        a=a,
        L_grid=Ls,
        modulation=tuple(modulation_factor(omega0, l, a) for l in Ls),
        inertial_modulation=tuple(modulation_factor(omega0, l) for l in Ls),
        planck_occupation=planck_occupation(omega0, a),
        a_grid=As,
        planck_coefficient=coeffs,
        tolerance=tolerance,
    )
