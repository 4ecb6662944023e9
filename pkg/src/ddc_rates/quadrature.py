"""Quadrature plumbing for the regularized (epsilon -> 0) evaluation path.

Integrals are split at breakpoints clustered geometrically around each
narrow feature and handed to QUADPACK piece by piece, in a fixed order, so
results are bit-reproducible. Limits epsilon -> 0 are taken by Richardson
extrapolation over a halving ladder.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .model import ExtrapolationRecord

WINDOWS = ("hard", "taper")


@dataclass(frozen=True)
class QuadratureConfig:
    """Regulator ladder, time window and tolerance.

    ``eps0`` and ``T_window`` are in units of 1/omega0; ``tol`` is relative to
    the natural rate unit mu^2 omega0^2 / (8 pi).
    """

    eps0: float = 1e-2
    levels: int = 7
    T_window: float = 200.0
    window: str = "hard"
    tol: float = 1e-8
    epsabs: float = 1e-15
    epsrel: float = 1e-13
    limit: int = 200

    def __post_init__(self):
        if not self.eps0 > 0:
            raise ValueError("eps0 must be positive")
        if self.levels < 2:
            raise ValueError("the epsilon ladder needs at least two levels to estimate a residual")
        if not self.T_window > 0:
            raise ValueError("T_window must be positive")
        if self.window not in WINDOWS:
            raise ValueError(f"window must be one of {WINDOWS}, got {self.window!r}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    def ladder(self, omega0: float) -> tuple[float, ...]:
        return tuple(self.eps0 / omega0 / 2**j for j in range(self.levels))

    def upper(self, omega0: float) -> float:
        return self.T_window / omega0


def richardson(values: Sequence[float], ratio: float = 2.0) -> tuple[list[list[float]], float, float]:
    """Neville-style Richardson table for an expansion in integer powers of the step.

    Returns ``(table, value, residual)`` where ``value`` is the last diagonal
    entry and ``residual`` its distance to the previous diagonal entry.
    """
    if len(values) < 2:
        raise ValueError("need at least two estimates")
    table: list[list[float]] = []
    for j, v in enumerate(values):
        row = [v]
        for k in range(1, j + 1):
            fac = ratio**k - 1.0
            row.append(row[k - 1] + (row[k - 1] - table[j - 1][k - 1]) / fac)
        table.append(row)
    value = table[-1][-1]
    return table, value, abs(value - table[-2][-1])


def breakpoints(lo: float, hi: float, centers: Sequence[float], width: float) -> list[float]:
    """Sorted breakpoints in [lo, hi], refined geometrically (width * 2^k) around each center."""
    pts = {lo, hi}
    for c in centers:
        if lo <= c <= hi:
            pts.add(c)
        d = width
        while d < (hi - lo):
            for p in (c - d, c + d):
                if lo < p < hi:
                    pts.add(p)
            d *= 2.0
    return sorted(pts)


def _quad(f, a, b, cfg: QuadratureConfig, **kw) -> float:
    with warnings.catch_warnings():
        # roundoff warnings at the 1e-15 level are expected; accuracy is judged by the ladder
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(f, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit, **kw)[0]


def integrate_complex(
    f: Callable[[float], complex],
    pts: Sequence[float],
    cfg: QuadratureConfig,
) -> complex:
    """Integral of a complex scalar function over consecutive breakpoint intervals."""
    re, im = [], []
    for a, b in zip(pts, pts[1:]):
        re.append(_quad(lambda s: f(s).real, a, b, cfg))
        im.append(_quad(lambda s: f(s).imag, a, b, cfg))
    return complex(math.fsum(re), math.fsum(im))


def fourier_tail(g: Callable[[float], float], lower: float, freq: float, cfg: QuadratureConfig) -> complex:
    """Integral of g(s) * exp(i freq s) over [lower, inf) for smooth, decaying real g."""
    if freq == 0.0:
        return complex(_quad(g, lower, np.inf, cfg), 0.0)
    w = abs(freq)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        c = integrate.quad(g, lower, np.inf, weight="cos", wvar=w, limlst=200)[0]
        s = integrate.quad(g, lower, np.inf, weight="sin", wvar=w, limlst=200)[0]
    return complex(c, math.copysign(1.0, freq) * s)


def taper_weight(s: float, T: float) -> float:
    """Exponential roll-off beyond T with scale T/10."""
    return 1.0 if s <= T else math.exp(-(s - T) / (0.1 * T))


def window_span(T: float, window: str) -> float:
    return T if window == "hard" else T + 40.0 * (0.1 * T)


def extrapolate(
    estimate: Callable[[float], float],
    epsilons: Sequence[float],
    tolerance: float,
    T_window: float,
    window: str,
    note: str = "",
) -> ExtrapolationRecord:
    """Evaluate ``estimate`` along the ladder and Richardson-extrapolate to epsilon = 0."""
    est = [estimate(e) for e in epsilons]
    table, value, residual = richardson(est)
    return ExtrapolationRecord(
        epsilons=tuple(epsilons),
        estimates=tuple(est),
        extrapolants=tuple(row[-1] for row in table),
        value=value,
        residual=residual,
        tolerance=tolerance,
        T_window=T_window,
        window=window,
        note=note,
    )
