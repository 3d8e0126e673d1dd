"""Numeric ground truth for the displacement function.

On the circle family x^2 + y^2 = t a leaf of dF + eps*w = 0 near the cycle
is a graph rho(theta) over the angle, x = rho cos(theta), y = rho sin(theta):
substituting into the form and collecting d rho and d theta gives the scalar
equation

    d rho / d theta = -eps rho (Q cos - P sin) / (2 rho + eps (P cos + Q sin))

for w = P dx + Q dy.  One counterclockwise revolution with fixed-step RK4
from rho(0) = sqrt(t) lands on the transversal {y = 0, x > 0}; the return is
reported as an F-value, so the displacement is Delta(t, eps) = rho(2pi)^2 - t
and Delta = eps M_1(t) + O(eps^2) with the same sign convention as the
symbolic pipeline.

At eps = 0 the right-hand side vanishes identically, so the unperturbed
return is exact at any step count; convergence-order measurements therefore
need a nonzero eps.  The integrator state is a numpy vector over the eps
grid, which keeps coefficient sweeps at fixed t cheap.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from math import cos, sin, pi, sqrt

import numpy as np

from .algebra import BivarPoly, RationalFunction, X, Y
from .exterior import Form1Planar
from .abelian import UnsupportedOvalFamily

__all__ = [
    "HolonomyConfig",
    "DisplacementSample",
    "MelnikovEstimates",
    "DarbouxReport",
    "LeafEscapedAnnulus",
    "DenominatorVanished",
    "holonomy_return",
    "displacement_sample",
    "displacement_table",
    "melnikov_estimate",
    "first_melnikov_richardson",
    "darboux_fixture_check",
    "write_samples_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("t", "eps", "delta", "est_error")

_CIRCLE = X * X + Y * Y

_CONDITION_LIMIT = 1e8


class LeafEscapedAnnulus(RuntimeError):
    """The integrated leaf left t/2 < x^2+y^2 < 2t; eps too large for t."""


class DenominatorVanished(RuntimeError):
    """The d rho coefficient of dF + eps*w reached zero; leaf not a graph."""


@dataclass(frozen=True)
class HolonomyConfig:
    """Fixed-step integrator settings."""

    step_count: int = 20000
    refine_tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.step_count < 100:
            raise ValueError("step_count must be >= 100")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")


DEFAULT_CONFIG = HolonomyConfig()


@dataclass(frozen=True)
class DisplacementSample:
    """One measured Delta(t, eps); est_error compares n and 2n step runs."""

    t: float
    eps: float
    delta: float
    est_error: float


def _require_circle(F: BivarPoly) -> None:
    if F != _CIRCLE:
        raise UnsupportedOvalFamily(
            f"holonomy integration supports F = x^2+y^2 only, got {F}"
        )


def _integrate(
    w: Form1Planar, t: float, eps: np.ndarray, steps: int
) -> np.ndarray:
    """rho(2pi) for every eps in the grid, from rho(0) = sqrt(t)."""
    if t <= 0:
        raise ValueError("t must be positive")
    p_fn = w.p.as_callable()
    q_fn = w.q.as_callable()
    lo, hi = 0.5 * t, 2.0 * t
    h = 2.0 * pi / steps

    def slope(theta: float, rho: np.ndarray) -> np.ndarray:
        c, s = cos(theta), sin(theta)
        x = rho * c
        y = rho * s
        pv = p_fn(x, y)
        qv = q_fn(x, y)
        den = 2.0 * rho + eps * (pv * c + qv * s)
        if np.any(den <= 0.0):
            j = int(np.argmin(den))
            raise DenominatorVanished(
                f"d rho coefficient vanished at theta={theta:.6f}, "
                f"eps={float(np.atleast_1d(eps)[min(j, np.size(eps) - 1)]):g}"
            )
        return -eps * rho * (qv * c - pv * s) / den

    eps = np.asarray(eps, dtype=float)
    rho = np.full(eps.shape or (1,), sqrt(t))
    for i in range(steps):
        theta = i * h
        k1 = slope(theta, rho)
        k2 = slope(theta + 0.5 * h, rho + 0.5 * h * k1)
        k3 = slope(theta + 0.5 * h, rho + 0.5 * h * k2)
        k4 = slope(theta + h, rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        sq = rho * rho
        if np.any(sq <= lo) or np.any(sq >= hi):
            bad = np.argmax((sq <= lo) | (sq >= hi))
            raise LeafEscapedAnnulus(
                f"leaf left the annulus ({lo:g}, {hi:g}) at theta="
                f"{theta + h:.6f}, t={t:g}, "
                f"eps={float(np.atleast_1d(eps)[min(int(bad), np.size(eps) - 1)]):g}"
            )
    return rho


def holonomy_return(
    F: BivarPoly,
    w: Form1Planar,
    t: float,
    eps: float,
    cfg: HolonomyConfig = DEFAULT_CONFIG,
) -> float:
    """F-value after one revolution of the leaf through (sqrt(t), 0)."""
    _require_circle(F)
    rho = _integrate(w, t, np.array([eps], dtype=float), cfg.step_count)
    return float(rho[0] ** 2)


def displacement_sample(
    F: BivarPoly,
    w: Form1Planar,
    t: float,
    eps: float,
    cfg: HolonomyConfig = DEFAULT_CONFIG,
) -> DisplacementSample:
    """Delta(t, eps) from the doubled-step run, with the halving difference."""
    coarse = holonomy_return(F, w, t, eps, cfg) - t
    fine = (
        holonomy_return(
            F, w, t, eps, HolonomyConfig(2 * cfg.step_count, cfg.refine_tol)
        )
        - t
    )
    return DisplacementSample(
        t=t, eps=eps, delta=fine, est_error=abs(fine - coarse)
    )


def displacement_table(
    F: BivarPoly,
    w: Form1Planar,
    t_values,
    eps_values,
    cfg: HolonomyConfig = DEFAULT_CONFIG,
) -> list[DisplacementSample]:
    """Samples for the whole (t, eps) grid, row-major in the given order."""
    return [
        displacement_sample(F, w, t, eps, cfg)
        for t in t_values
        for eps in eps_values
    ]


class MelnikovEstimates(list):
    """Fitted coefficients of eps^1..eps^m with the fit diagnostics attached.

    Behaves as a plain list of floats; residual is the rms misfit over the
    sample grid, and ill_conditioned flags a rank-deficient or badly scaled
    design matrix (condition number above 1e8 in the rescaled variable).
    """

    def __init__(self, coefficients, residual, condition_number, ill_conditioned):
        super().__init__(float(c) for c in coefficients)
        self.residual = float(residual)
        self.condition_number = float(condition_number)
        self.ill_conditioned = bool(ill_conditioned)

    def __repr__(self) -> str:
        return (
            f"MelnikovEstimates({list(self)!r}, residual={self.residual:g}, "
            f"condition_number={self.condition_number:g}, "
            f"ill_conditioned={self.ill_conditioned})"
        )


def melnikov_estimate(
    F: BivarPoly,
    w: Form1Planar,
    t: float,
    orders: int,
    cfg: HolonomyConfig = DEFAULT_CONFIG,
    eps0: float = 1e-3,
) -> MelnikovEstimates:
    """Least-squares jet of Delta(t, .): coefficients of eps^1..eps^orders.

    Samples the geometric grid eps_j = eps0 * 2^-j for j = 0..2*orders and
    fits the model without constant term; the fit runs in the rescaled
    variable eps/eps0 so the reported condition number reflects the model,
    not the units.
    """
    _require_circle(F)
    if orders < 1:
        raise ValueError("orders must be >= 1")
    if eps0 <= 0:
        raise ValueError("eps0 must be positive")
    grid = np.array([eps0 * 2.0 ** (-j) for j in range(2 * orders + 1)])
    rho = _integrate(w, t, grid, cfg.step_count)
    deltas = rho * rho - t
    u = grid / eps0
    design = np.vander(u, orders + 1, increasing=True)[:, 1:]
    scaled, _, rank, sv = np.linalg.lstsq(design, deltas, rcond=None)
    condition = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    residual = float(np.sqrt(np.mean((design @ scaled - deltas) ** 2)))
    coefficients = scaled / eps0 ** np.arange(1, orders + 1)
    return MelnikovEstimates(
        coefficients,
        residual,
        condition,
        rank < orders or condition > _CONDITION_LIMIT,
    )


def first_melnikov_richardson(
    F: BivarPoly,
    w: Form1Planar,
    t: float,
    cfg: HolonomyConfig = DEFAULT_CONFIG,
    eps0: float = 1e-3,
    levels: int = 4,
) -> float:
    """M_1(t) by Richardson extrapolation of Delta/eps on a halving grid.

    Alternative to the least-squares fit; successive columns cancel the
    eps^1, eps^2, ... corrections of Delta(t, eps)/eps.
    """
    _require_circle(F)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    grid = np.array([eps0 * 2.0 ** (-j) for j in range(levels + 1)])
    rho = _integrate(w, t, grid, cfg.step_count)
    table = list((rho * rho - t) / grid)
    for col in range(1, levels + 1):
        factor = 2.0**col
        table = [
            (factor * table[i + 1] - table[i]) / (factor - 1.0)
            for i in range(len(table) - 1)
        ]
    return float(table[0])


@dataclass(frozen=True)
class DarbouxReport:
    """Displacement audit of the rational fixture w = F d(1+x)/(1+x)."""

    samples: tuple[DisplacementSample, ...]
    tolerance: float
    max_abs_delta: float
    integrator_ok: bool
    passed: bool


def darboux_fixture_check(
    cfg: HolonomyConfig = DEFAULT_CONFIG, tolerance: float = 1e-8
) -> DarbouxReport:
    """Check Delta ~ 0 for the rational perturbation with first integral F(1+x)^eps.

    w = F dx / (1+x) on t in {0.25, 0.5}, eps in {1e-2, 1e-3}; the denominator
    1 + x stays positive on the disk t < 1.
    """
    w = Form1Planar(
        RationalFunction(_CIRCLE, BivarPoly.one() + X), RationalFunction(0)
    )
    samples = displacement_table(
        _CIRCLE, w, (0.25, 0.5), (1e-2, 1e-3), cfg
    )
    worst = max(abs(s.delta) for s in samples)
    integrator_ok = all(s.est_error <= cfg.refine_tol for s in samples)
    return DarbouxReport(
        samples=tuple(samples),
        tolerance=tolerance,
        max_abs_delta=worst,
        integrator_ok=integrator_ok,
        passed=worst < tolerance and integrator_ok,
    )


def write_samples_csv(samples, fileobj) -> None:
    """Write rows (t, eps, delta, est_error) with a header line."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in samples:
        writer.writerow([repr(s.t), repr(s.eps), repr(s.delta), repr(s.est_error)])
