"""Degenerating genus-2 period-matrix families and sweep verification.

Two one-parameter families of Siegel points approach the boundary of
moduli space:

* separating, parameters (omega1, omega2, t):

      Omega_t = [[omega1 + 2 pi i t,  2 pi i t],
                 [2 pi i t,  omega2 + 2 pi i t]],

  block-diagonal in the limit t -> 0;

* non-separating, parameters (omega, u, omega22 = x_offset + i y):

      Omega = [[omega, u], [u, x_offset + i y]],

  with q = exp(2 pi i omega22), so log|q| = -2 pi y -> -inf as y grows.

Along each family the Hain-Reed beta-invariant diverges; adding the matching
regularizer (a slope times log of the vanishing parameter, plus a log-log
term in the non-separating case) produces a finite limit with a closed-form
right-hand side built from eta, theta and Petersson norms.  ``run_sweep``
samples the regularized combination on a grid, extrapolates, and reports the
discrepancy against the closed form.

One exactly-known finite-size term matters for the non-separating fit: beta
contains -10 log det Im(Omega) = -10 log(Im omega * y - (Im u)^2), whose gap
to -10 log(Im omega * y),

    nonsep_det_deficit = -10 log(1 - (Im u)^2 / (Im omega * y)),

vanishes in the limit but only like 1/y, while everything else converges
like e^{-2 pi y}.  The sweep subtracts this closed-form deficit before
fitting, which leaves a cleanly exponential remainder; the raw regularized
samples are reported unchanged.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FitError
from .invariants import TorusDisplacement, beta_genus2
from .modular import chi10, log_petersson_eta
from .theta import (
    DEFAULT_ACCURACY,
    AccuracyTarget,
    SiegelPoint2,
    UpperHalfPoint,
    eta,
    log_abs_eta,
    log_abs_theta_odd,
    theta_odd_genus1,
)

__all__ = [
    "SeparatingFamily",
    "NonSeparatingFamily",
    "SweepGrid",
    "SweepReport",
    "sep_period_matrix",
    "nonsep_period_matrix",
    "regularized_beta_separating",
    "rhs_separating",
    "regularized_beta_nonseparating_q",
    "rhs_nonseparating_q",
    "rhs_nonseparating_tau",
    "nonsep_det_deficit",
    "log_q_from_log_tau",
    "chi10_leading_ratio",
    "run_sweep",
]

LOG_2PI = math.log(2.0 * math.pi)

SEPARATING = "separating"
NONSEPARATING = "nonseparating"

MAX_SEP_T = 0.05
MIN_NONSEP_Y = 2.0
MAX_NONSEP_Y = 40.0
_FIT_POINTS = 4


@dataclass(frozen=True)
class SeparatingFamily:
    """Two genus-1 moduli whose tori are joined at a node as t -> 0."""

    omega1: UpperHalfPoint
    omega2: UpperHalfPoint


@dataclass(frozen=True)
class NonSeparatingFamily:
    """One genus-1 modulus with two points a, b = a + u identified in the limit.

    ``x_offset`` is the real part assigned to the free diagonal entry
    omega22; the swept q-regularized combination does not depend on it.
    """

    omega: UpperHalfPoint
    u: complex
    x_offset: float = 0.0

    def __post_init__(self):
        TorusDisplacement(self.u, self.omega)  # validates u off the lattice
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "x_offset", float(self.x_offset))


@dataclass(frozen=True)
class SweepGrid:
    """Grid of sweep parameters, strictly monotone toward the degeneration.

    Separating: t values in (0, 0.05], strictly decreasing.  Non-separating:
    y = Im(omega22) values in [2, 40], strictly increasing.
    """

    mode: str
    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise DomainError("sweep grid must be nonempty")
        if self.mode == SEPARATING:
            if not all(0.0 < p <= MAX_SEP_T for p in pts):
                raise DomainError(f"separating grid values must lie in (0, {MAX_SEP_T}]")
            if not all(a > b for a, b in zip(pts, pts[1:])):
                raise DomainError("separating grid must strictly decrease toward t = 0")
        elif self.mode == NONSEPARATING:
            if not all(MIN_NONSEP_Y <= p <= MAX_NONSEP_Y for p in pts):
                raise DomainError(
                    f"nonseparating grid values must lie in [{MIN_NONSEP_Y}, {MAX_NONSEP_Y}]")
            if not all(a < b for a, b in zip(pts, pts[1:])):
                raise DomainError("nonseparating grid must strictly increase toward y = inf")
        else:
            raise DomainError(f"unknown sweep mode {self.mode!r}")


@dataclass(frozen=True)
class SweepReport:
    """Samples of a regularized invariant plus extrapolation diagnostics.

    ``samples`` holds (parameter, regularized value) pairs in grid order;
    ``estimated_order`` is the fitted exponent p of value = L + C s^p in the
    separating mode, and the worst fit residual of the L + C e^{-2 pi y}
    model in the non-separating mode.
    """

    samples: tuple[tuple[float, float], ...]
    extrapolated_limit: float
    closed_form_rhs: float
    discrepancy: float
    estimated_order: float


def sep_period_matrix(fam: SeparatingFamily, t: complex) -> SiegelPoint2:
    """Period matrix of the separating family at parameter t, 0 < |t| <= 0.05."""
    t = complex(t)
    if not 0.0 < abs(t) <= MAX_SEP_T:
        raise DomainError(f"separating parameter needs 0 < |t| <= {MAX_SEP_T}, got {t}")
    shift = 2j * math.pi * t
    return SiegelPoint2(fam.omega1.value + shift, shift, fam.omega2.value + shift)


def nonsep_period_matrix(fam: NonSeparatingFamily, y: float) -> SiegelPoint2:
    """Period matrix of the non-separating family at height y = Im(omega22) >= 2."""
    y = float(y)
    if y < MIN_NONSEP_Y:
        raise DomainError(f"nonseparating height needs y >= {MIN_NONSEP_Y}, got {y}")
    return SiegelPoint2(fam.omega.value, fam.u, complex(fam.x_offset, y))


def regularized_beta_separating(fam: SeparatingFamily, t: float,
                                acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """beta(Omega_t) + 4 log t for real t in (0, 0.05]."""
    t = float(t)
    if not 0.0 < t <= MAX_SEP_T:
        raise DomainError(f"sweep parameter needs 0 < t <= {MAX_SEP_T}, got {t}")
    return beta_genus2(sep_period_matrix(fam, t), acc) + 4.0 * math.log(t)


def rhs_separating(fam: SeparatingFamily, acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Closed-form limit of the separating sweep:

    -48 log||eta||(omega1) - 48 log||eta||(omega2)
        + 2 log(Im omega1 * Im omega2) - 48 log(2 pi).
    """
    return (-48.0 * log_petersson_eta(fam.omega1, acc).log_norm
            - 48.0 * log_petersson_eta(fam.omega2, acc).log_norm
            + 2.0 * math.log(fam.omega1.im * fam.omega2.im)
            - 48.0 * LOG_2PI)


def regularized_beta_nonseparating_q(fam: NonSeparatingFamily, y: float,
                                     acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """beta(Omega) + 2 log|q| + 10 log(-log|q|) with log|q| = -2 pi y."""
    log_q = -2.0 * math.pi * float(y)
    return (beta_genus2(nonsep_period_matrix(fam, y), acc)
            + 2.0 * log_q + 10.0 * math.log(-log_q))


def rhs_nonseparating_q(fam: NonSeparatingFamily,
                        acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Closed-form limit of the q-regularized non-separating sweep:

    -36 log|eta(omega)| - 4 log|theta(u, omega)| - 10 log Im(omega) - 30 log(2 pi).
    """
    eps = AccuracyTarget(acc.eps_abs / 4.0, acc.max_radius)
    return (-36.0 * log_abs_eta(fam.omega, eps)
            - 4.0 * log_abs_theta_odd(fam.u, fam.omega, eps)
            - 10.0 * math.log(fam.omega.im)
            - 30.0 * LOG_2PI)


def rhs_nonseparating_tau(fam: NonSeparatingFamily,
                          acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Closed-form limit of the tau-regularized combination, independent of u:

    -40 log||eta||(omega) - 30 log(2 pi).
    """
    return -40.0 * log_petersson_eta(fam.omega, acc).log_norm - 30.0 * LOG_2PI


def nonsep_det_deficit(fam: NonSeparatingFamily, y: float) -> float:
    """Closed-form finite-height deficit -10 log(1 - (Im u)^2/(Im omega * y)).

    This is the exact gap between -10 log det Im(Omega) on the family and its
    separable form -10 (log Im(omega) + log y).  It tends to 0 as y -> inf,
    but only like 10 (Im u)^2/(Im omega * y); subtracting it from the
    regularized combination leaves an O(e^{-2 pi y}) remainder.
    """
    y = float(y)
    ratio = fam.u.imag**2 / (fam.omega.im * y)
    if ratio >= 1.0:
        raise DomainError("height y too small: Im(Omega) not positive definite")
    return -10.0 * math.log1p(-ratio)


def log_q_from_log_tau(log_tau: float, fam: NonSeparatingFamily,
                       acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Translate the tau-scale to the q-scale on the non-separating family:

    log|q| = log|tau| - 2 log|theta(u, omega)| + 2 log|eta(omega)|.

    Equivalently log|tau| - 2 g(a,b) - 2 pi (Im u)^2 / Im(omega); the two
    forms agree by the closed formula for the torus Green's function.
    """
    eps = AccuracyTarget(acc.eps_abs / 2.0, acc.max_radius)
    return (float(log_tau)
            - 2.0 * log_abs_theta_odd(fam.u, fam.omega, eps)
            + 2.0 * log_abs_eta(fam.omega, eps))


def chi10_leading_ratio(mode: str, fam, parameter: float,
                        acc: AccuracyTarget = DEFAULT_ACCURACY) -> complex:
    """chi10 on the family divided by its leading boundary term; tends to 1.

    Separating (parameter t):   chi10(Omega_t) / (t^2 (2 pi)^4 2^12
    eta(omega1)^24 eta(omega2)^24).  Non-separating (parameter y):
    chi10(Omega) / (-q 2^12 eta(omega)^18 theta(u, omega)^2).
    """
    if mode == SEPARATING:
        t = complex(parameter)
        lead = (t * t * (2.0 * math.pi) ** 4 * 4096.0
                * eta(fam.omega1, acc) ** 24 * eta(fam.omega2, acc) ** 24)
        value = chi10(sep_period_matrix(fam, t), acc)
    elif mode == NONSEPARATING:
        y = float(parameter)
        q = np.exp(2j * np.pi * complex(fam.x_offset, y))
        theta_u = theta_odd_genus1(fam.u, fam.omega, acc)
        lead = -q * 4096.0 * eta(fam.omega, acc) ** 18 * theta_u**2
        value = chi10(nonsep_period_matrix(fam, y), acc)
    else:
        raise DomainError(f"unknown degeneration mode {mode!r}")
    if lead == 0:
        raise DomainError("leading boundary term vanishes (u on the lattice?)")
    return value / lead


def _fit_limit(basis: np.ndarray, values: np.ndarray) -> tuple[float, np.ndarray]:
    design = np.column_stack([np.ones_like(basis), basis])
    if np.linalg.matrix_rank(design) < 2:
        raise FitError("extrapolation fit is singular: need at least two distinct "
                       "grid points in the fitted window")
    sol, *_ = np.linalg.lstsq(design, values, rcond=None)
    residuals = values - design @ sol
    return float(sol[0]), residuals


def run_sweep(grid: SweepGrid, fam, acc: AccuracyTarget = DEFAULT_ACCURACY,
              threads: int = 1) -> SweepReport:
    """Sweep the matching regularized beta over the grid and extrapolate.

    The two-parameter model (L, C) is fitted on the last four grid points:
    value = L + C t for the separating mode, and value = L + C e^{-2 pi y}
    for the non-separating mode after subtracting the closed-form
    :func:`nonsep_det_deficit` (which vanishes in the limit but decays far
    slower than the exponential remainder).  Grid points are independent and
    may be evaluated in parallel; results are reassembled in grid order.
    """
    if grid.mode == SEPARATING:
        if not isinstance(fam, SeparatingFamily):
            raise DomainError("separating grid needs a SeparatingFamily")
        evaluate = lambda t: regularized_beta_separating(fam, t, acc)
        rhs = rhs_separating(fam, acc)
    else:
        if not isinstance(fam, NonSeparatingFamily):
            raise DomainError("nonseparating grid needs a NonSeparatingFamily")
        evaluate = lambda y: regularized_beta_nonseparating_q(fam, y, acc)
        rhs = rhs_nonseparating_q(fam, acc)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            values = list(pool.map(evaluate, grid.points))
    else:
        values = [evaluate(p) for p in grid.points]

    tail = min(_FIT_POINTS, len(grid.points))
    params = np.array(grid.points[-tail:])
    fitted = np.array(values[-tail:])
    if grid.mode == SEPARATING:
        limit, _ = _fit_limit(params, fitted)
        gaps = np.abs(fitted - limit)
        if np.all(gaps > 0):
            slope, _ = np.polyfit(np.log(params), np.log(gaps), 1)
            order = float(slope)
        else:
            order = float("nan")
    else:
        deficit = np.array([nonsep_det_deficit(fam, y) for y in params])
        limit, residuals = _fit_limit(np.exp(-2.0 * np.pi * params), fitted - deficit)
        order = float(np.max(np.abs(residuals)))

    return SweepReport(
        samples=tuple(zip(grid.points, values)),
        extrapolated_limit=limit,
        closed_form_rhs=rhs,
        discrepancy=abs(limit - rhs),
        estimated_order=order,
    )
