"""The invariant chain on degenerating surfaces.

Pointwise invariants of an elliptic curve M = C/(Z + Z omega):

* Kawazumi-Zhang phi(M) = 0 in genus one,
* Faltings delta(M) = -24 log||eta||(omega) - 8 log(2 pi),
* the canonical Green's function g(a, b) with u = b - a,

      g = -pi (Im u)^2 / Im omega + log|theta(u, omega)| - log|eta(omega)|,

* the regularized self-pairing log d = 2 log|eta(omega)| + log(2 pi),

and in genus two beta = -2 log||chi10|| - 40 log(2 pi) + 24 log 2.  These are
tied together by lambda = (h-1)/(6(2h+1)) phi + delta/12 - (h/3) log(2 pi)
and beta = (8h+4) lambda.

The limit evaluators return the closed-form behavior of phi, delta and beta
along one-node degenerations: the slope of the +log|tau| regularizer, the
coefficient of +log(-log|tau|), and the limit value.  All coefficients are
assembled in exact rational arithmetic (see :class:`LimitLaw`) and converted
to floats only at the boundary, so the beta law is *identically* the
(8h+4)-lambda combination of the phi and delta laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError
from .theta import (
    DEFAULT_ACCURACY,
    AccuracyTarget,
    SiegelPoint2,
    UpperHalfPoint,
    log_abs_eta,
    log_abs_theta_odd,
)
from .modular import log_petersson_chi10, log_petersson_eta

__all__ = [
    "EllipticCurveData",
    "TorusDisplacement",
    "GenusSplit",
    "LimitLaw",
    "PhiLimit",
    "RegularizedLimit",
    "phi_genus1",
    "delta_elliptic",
    "green_torus",
    "arakelov_d_torus",
    "beta_genus2",
    "lambda_invariant",
    "beta_from_lambda",
    "phi_limit",
    "delta_limit",
    "beta_limit",
    "phi_limit_law",
    "delta_limit_law",
    "beta_limit_law",
    "combine_phi_delta_laws",
    "euler_split_residual",
    "euler_nonsplit_residual",
    "slope_assembly_residual",
    "green_assembly_residual",
]

LOG_2PI = math.log(2.0 * math.pi)

SEPARATING = "separating"
NONSEPARATING = "nonseparating"

_LATTICE_TOL = 1e-9


@dataclass(frozen=True)
class EllipticCurveData:
    """An elliptic curve C/(Z + Z omega) presented by its modulus."""

    omega: UpperHalfPoint


@dataclass(frozen=True)
class TorusDisplacement:
    """A displacement u = b - a on C/(Z + Z omega), away from the lattice.

    Validity is checked after reducing u modulo the lattice: the reduced
    representative must be farther than 1e-9 from every lattice point.
    """

    u: complex
    omega: UpperHalfPoint

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        if not (math.isfinite(self.u.real) and math.isfinite(self.u.imag)):
            raise DomainError("displacement must be finite")
        if self.lattice_distance() <= _LATTICE_TOL:
            raise DomainError(
                f"displacement u={self.u} is within {_LATTICE_TOL} of the lattice "
                "(the Green's function diverges there)"
            )

    def lattice_distance(self) -> float:
        """Euclidean distance from u to the nearest point of Z + Z omega."""
        w = self.omega.value
        # coordinates of u in the basis (1, omega)
        y_coord = self.u.imag / w.imag
        x_coord = self.u.real - y_coord * w.real
        xf, yf = x_coord - math.floor(x_coord), y_coord - math.floor(y_coord)
        best = math.inf
        for dx in (0.0, 1.0):
            for dy in (0.0, 1.0):
                best = min(best, abs((xf - dx) + (yf - dy) * w))
        return best


@dataclass(frozen=True)
class GenusSplit:
    """Genus data of a one-node degeneration.

    ``separating``: the limit is a union of components of genera h1, h2 >= 1
    (total genus h1 + h2).  ``nonseparating``: the limit is one surface of
    genus h >= 1 with two points identified (total genus h + 1).
    """

    mode: str
    h1: int = 0
    h2: int = 0
    h: int = 0

    def __post_init__(self):
        if self.mode == SEPARATING:
            if not (self.h1 >= 1 and self.h2 >= 1):
                raise DomainError("separating split needs h1, h2 >= 1")
        elif self.mode == NONSEPARATING:
            if not self.h >= 1:
                raise DomainError("nonseparating split needs h >= 1")
        else:
            raise DomainError(f"unknown split mode {self.mode!r}")

    @classmethod
    def separating(cls, h1: int, h2: int) -> "GenusSplit":
        return cls(SEPARATING, h1=int(h1), h2=int(h2))

    @classmethod
    def nonseparating(cls, h: int) -> "GenusSplit":
        return cls(NONSEPARATING, h=int(h))

    @property
    def total_genus(self) -> int:
        return self.h1 + self.h2 if self.mode == SEPARATING else self.h + 1


class PhiLimit(NamedTuple):
    slope: float
    limit: float


class RegularizedLimit(NamedTuple):
    slope: float
    log_log_coeff: float
    limit: float


class LimitLaw(NamedTuple):
    """Exact coefficients of one degeneration limit statement.

    The statement reads: X(M_t) + slope * log|tau| + log_log * log(-log|tau|)
    tends to   sum over inputs of coeff * value   +   const_2pi * log(2 pi),
    where ``inputs`` names the boundary data (phi1, delta2, g_ab, ...).
    """

    slope: Fraction
    log_log: Fraction
    inputs: tuple[tuple[str, Fraction], ...]
    const_2pi: Fraction

    def limit_value(self, values: dict[str, float]) -> float:
        known = {name for name, _ in self.inputs}
        missing = [name for name, _ in self.inputs if name not in values]
        extra = sorted(set(values) - known)
        if missing or extra:
            raise DomainError(
                f"limit inputs mismatch: missing {missing or 'none'}, "
                f"unexpected {extra or 'none'} (expected {sorted(known)})"
            )
        acc = 0.0
        for name, coeff in self.inputs:
            acc += float(coeff) * float(values[name])
        return acc + float(self.const_2pi) * LOG_2PI


def phi_genus1() -> float:
    """The Kawazumi-Zhang invariant of any genus-1 surface: exactly 0."""
    return 0.0


def delta_elliptic(curve: EllipticCurveData, acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Faltings delta of C/(Z + Z omega); absolute error <= 24 * acc.eps_abs."""
    return -24.0 * log_petersson_eta(curve.omega, acc).log_norm - 8.0 * LOG_2PI


def green_torus(disp: TorusDisplacement, acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Canonical Green's function g(a, b) on the torus, u = b - a.

    g = -pi (Im u)^2 / Im omega + log|theta(u, omega)| - log|eta(omega)|.

    The quadratic term makes log|theta| doubly periodic (theta gains modulus
    e^{pi Im omega + 2 pi Im u} under u -> u + omega), and the eta term
    normalizes the mean against the flat probability measure to zero; g is
    even in u and diverges to -inf on the lattice.  As u -> 0,
    g - log|u| -> 2 log|eta| + log(2 pi), the Arakelov d-constant.  Per-term
    budgets keep the total log error near acc.eps_abs while |theta| >= 1e-6.
    """
    omega = disp.omega
    quad = -math.pi * disp.u.imag**2 / omega.im
    log_theta = log_abs_theta_odd(disp.u, omega, acc)
    eps_eta = acc.eps_abs / 3.0
    log_eta = log_abs_eta(omega, AccuracyTarget(eps_eta, acc.max_radius))
    return quad + log_theta - log_eta


def arakelov_d_torus(curve: EllipticCurveData, acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """log d = 2 log|eta(omega)| + log(2 pi), the regularized self-pairing
    of a point in the euclidean coordinate; absolute error <= 2 * acc.eps_abs."""
    return 2.0 * log_abs_eta(curve.omega, acc) + LOG_2PI


def beta_genus2(Omega: SiegelPoint2, acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """Hain-Reed beta in genus two: -2 log||chi10|| - 40 log(2 pi) + 24 log 2.

    Raises VanishingError on the chi10 zero locus (beta -> +inf there).
    """
    log_norm = log_petersson_chi10(Omega, acc).log_norm
    return -2.0 * log_norm - 40.0 * LOG_2PI + 24.0 * math.log(2.0)


def lambda_invariant(h: int, phi: float, delta: float) -> float:
    """lambda = (h-1)/(6(2h+1)) phi + delta/12 - (h/3) log(2 pi), h >= 1."""
    if h < 1:
        raise DomainError(f"genus must be >= 1, got {h}")
    c_phi = Fraction(h - 1, 6 * (2 * h + 1))
    return float(c_phi) * phi + delta / 12.0 - (h / 3.0) * LOG_2PI


def beta_from_lambda(h: int, lam: float) -> float:
    """beta = (8h + 4) lambda."""
    if h < 1:
        raise DomainError(f"genus must be >= 1, got {h}")
    return (8 * h + 4) * lam


def phi_limit_law(split: GenusSplit) -> LimitLaw:
    """Exact limit law of the Kawazumi-Zhang invariant along a degeneration."""
    if split.mode == SEPARATING:
        h1, h2, h = split.h1, split.h2, split.total_genus
        return LimitLaw(
            slope=Fraction(2 * h1 * h2, h),
            log_log=Fraction(0),
            inputs=(("phi1", Fraction(1)), ("phi2", Fraction(1))),
            const_2pi=Fraction(0),
        )
    h = split.h
    return LimitLaw(
        slope=Fraction(h, 6 * (h + 1)),
        log_log=Fraction(0),
        inputs=(("phi", Fraction(1)), ("g_ab", Fraction(-5 * h, 3 * (h + 1)))),
        const_2pi=Fraction(0),
    )


def delta_limit_law(split: GenusSplit) -> LimitLaw:
    """Exact limit law of the Faltings delta-invariant along a degeneration."""
    if split.mode == SEPARATING:
        h1, h2, h = split.h1, split.h2, split.total_genus
        return LimitLaw(
            slope=Fraction(4 * h1 * h2, h),
            log_log=Fraction(0),
            inputs=(("delta1", Fraction(1)), ("delta2", Fraction(1))),
            const_2pi=Fraction(0),
        )
    h = split.h
    return LimitLaw(
        slope=Fraction(4 * h + 3, 3 * (h + 1)),
        log_log=Fraction(6),
        inputs=(("delta", Fraction(1)), ("g_ab", Fraction(-2 * (2 * h - 3), 3 * (h + 1)))),
        const_2pi=Fraction(-2),
    )


def beta_limit_law(split: GenusSplit) -> LimitLaw:
    """Exact limit law of the Hain-Reed beta-invariant along a degeneration."""
    if split.mode == SEPARATING:
        h1, h2, h = split.h1, split.h2, split.total_genus
        return LimitLaw(
            slope=Fraction(4 * h1 * h2),
            log_log=Fraction(0),
            inputs=(
                ("phi1", Fraction(2 * (h - 1), 3)),
                ("phi2", Fraction(2 * (h - 1), 3)),
                ("delta1", Fraction(2 * h + 1, 3)),
                ("delta2", Fraction(2 * h + 1, 3)),
            ),
            const_2pi=Fraction(-(8 * h + 4) * h, 3),
        )
    h = split.h
    return LimitLaw(
        slope=Fraction(h + 1),
        log_log=Fraction(2 * (2 * h + 3)),
        inputs=(
            ("phi", Fraction(2 * h, 3)),
            ("delta", Fraction(2 * h + 3, 3)),
            ("g_ab", Fraction(-2 * (h - 1))),
        ),
        const_2pi=-(Fraction(8 * h * (h + 3), 3) + 6),
    )


def combine_phi_delta_laws(phi_law: LimitLaw, delta_law: LimitLaw, total_genus: int) -> LimitLaw:
    """Assemble the beta law as (8H+4) lambda(H, phi-law, delta-law).

    With H the total genus of the degenerating surface, pointwise
    beta = (8H+4) lambda gives beta's regularized asymptotics as

        2(H-1)/3 * phi-law  +  (2H+1)/3 * delta-law  -  (8H+4)H/3 * log(2 pi),

    slope, log-log coefficient and limit alike; everything in exact rationals.
    """
    H = total_genus
    c_phi = Fraction(2 * (H - 1), 3)
    c_delta = Fraction(2 * H + 1, 3)
    merged: dict[str, Fraction] = {}
    for law, coeff in ((phi_law, c_phi), (delta_law, c_delta)):
        for name, value in law.inputs:
            merged[name] = merged.get(name, Fraction(0)) + coeff * value
    return LimitLaw(
        slope=c_phi * phi_law.slope + c_delta * delta_law.slope,
        log_log=c_phi * phi_law.log_log + c_delta * delta_law.log_log,
        inputs=tuple(sorted((n, v) for n, v in merged.items() if v != 0)),
        const_2pi=(c_phi * phi_law.const_2pi + c_delta * delta_law.const_2pi
                   - Fraction((8 * H + 4) * H, 3)),
    )


def phi_limit(split: GenusSplit, **inputs: float) -> PhiLimit:
    """Slope and limit of phi(M_t) + slope*log|tau| along a degeneration.

    Separating inputs: phi1, phi2.  Non-separating inputs: phi, g_ab.
    """
    law = phi_limit_law(split)
    return PhiLimit(float(law.slope), law.limit_value(inputs))


def delta_limit(split: GenusSplit, **inputs: float) -> RegularizedLimit:
    """Slope, log-log coefficient and limit of the delta-invariant.

    Separating inputs: delta1, delta2.  Non-separating inputs: delta, g_ab
    (note the g_ab coefficient -2(2h-3)/(3(h+1)) changes sign at h = 1).
    """
    law = delta_limit_law(split)
    return RegularizedLimit(float(law.slope), float(law.log_log), law.limit_value(inputs))


def beta_limit(split: GenusSplit, **inputs: float) -> RegularizedLimit:
    """Slope, log-log coefficient and limit of the beta-invariant.

    Separating inputs: phi1, phi2, delta1, delta2.  Non-separating inputs:
    phi, delta, g_ab.
    """
    law = beta_limit_law(split)
    return RegularizedLimit(float(law.slope), float(law.log_log), law.limit_value(inputs))


def euler_split_residual(h1: int, h2: int) -> Fraction:
    """Residual of the separating region-mass identity (zero for all h1, h2 >= 1).

    The four regions of the limit surface carry quadratic-form masses that
    must recombine to the Euler characteristic 2 - 2h of the total genus
    h = h1 + h2:

        -2 h2 (2h - h2)/h^2 + (2 - 2 h1) - 2 h1 (2h - h1)/h^2 + (2 - 2 h2)
        + 4 h1 h2 / h^2  =  2 - 2h.
    """
    h = h1 + h2
    lhs = (Fraction(-2 * h2 * (2 * h - h2), h * h) + (2 - 2 * h1)
           + Fraction(-2 * h1 * (2 * h - h1), h * h) + (2 - 2 * h2)
           + Fraction(4 * h1 * h2, h * h))
    return lhs - (2 - 2 * h)


def euler_nonsplit_residual(h: int) -> Fraction:
    """Residual of the non-separating region-mass identity (zero for all h >= 1):

        -(4h+2)/(h+1)^2 + 2 - 2h + 4h/(h+1)^2 - 2h(h+2)/(h+1)^2 = 2 - 2(h+1).
    """
    hp = (h + 1) * (h + 1)
    lhs = (Fraction(-(4 * h + 2), hp) + (2 - 2 * h)
           + Fraction(4 * h, hp) - Fraction(2 * h * (h + 2), hp))
    return lhs - (2 - 2 * (h + 1))


def slope_assembly_residual(h: int) -> Fraction:
    """Residual of the log|tau| coefficient assembly in the non-separating
    phi-limit (zero for all h >= 1):

        1/(12(h+1)^2) (-(4h+2)/(h+1)^2 + 2-2h) - 2 h/(12(h+1)^2) * 2h/(h+1)^2
        - h^2/(12(h+1)^2) * 2h(h+2)/(h+1)^2  =  -h/(6(h+1)).
    """
    hp = (h + 1) * (h + 1)
    lhs = (Fraction(1, 12 * hp) * (Fraction(-(4 * h + 2), hp) + (2 - 2 * h))
           - 2 * Fraction(h, 12 * hp) * Fraction(2 * h, hp)
           - Fraction(h * h, 12 * hp) * Fraction(2 * h * (h + 2), hp))
    return lhs - Fraction(-h, 6 * (h + 1))


def green_assembly_residual(h: int) -> Fraction:
    """Residual of the g(a,b) coefficient assembly in the non-separating
    phi-limit (zero for all h >= 1):

        5/(6(h+1)^2) (-(4h+2)/(h+1)^2 + 2-2h) - 2 * 5h/(6(h+1)^2) * 2h/(h+1)^2
        - 5h^2/(6(h+1)^2) * 2h(h+2)/(h+1)^2  =  -5h/(3(h+1)).
    """
    hp = (h + 1) * (h + 1)
    lhs = (Fraction(5, 6 * hp) * (Fraction(-(4 * h + 2), hp) + (2 - 2 * h))
           - 2 * Fraction(5 * h, 6 * hp) * Fraction(2 * h, hp)
           - Fraction(5 * h * h, 6 * hp) * Fraction(2 * h * (h + 2), hp))
    return lhs - Fraction(-5 * h, 3 * (h + 1))
