"""The weight-10 Siegel cusp form chi10, Petersson norms, and Gauss reduction.

chi10 is the product of the squares of the ten even theta constants,

.. math:: \\chi_{10}(\\Omega) = \\prod_{\\alpha \\; even} \\theta[\\alpha](0, \\Omega)^2,

vanishing exactly on the block-diagonal locus.  Petersson norms are the
modular-invariant rescalings

.. math::

    \\|\\eta\\|(\\omega) = (\\mathrm{Im}\\,\\omega)^{1/4} |\\eta(\\omega)|, \\qquad
    \\|\\chi_{10}\\|(\\Omega) = (\\det \\mathrm{Im}\\,\\Omega)^5 |\\chi_{10}(\\Omega)|,

both returned in log form since the downstream invariants are logarithmic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonTerminationError, VanishingError
from .theta import (
    DEFAULT_ACCURACY,
    AccuracyTarget,
    SiegelPoint2,
    UpperHalfPoint,
    even_characteristics,
    log_abs_eta,
    theta_char_genus2,
)

__all__ = [
    "PeterssonValue",
    "chi10",
    "log_petersson_eta",
    "log_petersson_chi10",
    "reduce_fundamental_domain",
]

_REDUCTION_CAP = 10_000


@dataclass(frozen=True)
class PeterssonValue:
    """Natural log of a Petersson norm; ``vanishing`` marks log_norm = -inf."""

    log_norm: float
    vanishing: bool = False

    def __post_init__(self):
        if not self.vanishing and not math.isfinite(self.log_norm):
            raise DomainError("finite Petersson value required unless flagged vanishing")


def _even_theta_constants(Omega: SiegelPoint2, acc: AccuracyTarget) -> tuple[list[complex], float]:
    """The ten even theta constants, each within a per-factor budget.

    A cheap first pass estimates the magnitude bound B = max(max |theta|, 1);
    each constant is then recomputed with per-factor eps = eps_abs/(20 B^19),
    which first-order propagation through the product of ten squares turns
    into an absolute bound eps_abs on chi10 itself.
    """
    eps1 = min(acc.eps_abs, 1e-8)
    first = [theta_char_genus2(c, (0.0, 0.0), Omega, AccuracyTarget(eps1, acc.max_radius))
             for c in even_characteristics()]
    bound = max(1.0, max(abs(v) for v in first) + eps1)
    eps2 = acc.eps_abs / (20.0 * bound**19)
    acc2 = AccuracyTarget(eps2, acc.max_radius)
    return [theta_char_genus2(c, (0.0, 0.0), Omega, acc2) for c in even_characteristics()], eps2


def chi10(Omega: SiegelPoint2, acc: AccuracyTarget = DEFAULT_ACCURACY) -> complex:
    """chi10(Omega) with absolute error <= acc.eps_abs."""
    constants, _ = _even_theta_constants(Omega, acc)
    out = 1.0 + 0.0j
    for v in constants:
        out *= v * v
    return out


def log_petersson_eta(omega: UpperHalfPoint, acc: AccuracyTarget = DEFAULT_ACCURACY) -> PeterssonValue:
    """log ||eta||(omega) = (1/4) log Im(omega) + log|eta(omega)|.

    Evaluated after reduction to the fundamental domain, where the q-product
    converges in a handful of terms; the result is SL2(Z)-invariant.
    """
    reduced = reduce_fundamental_domain(omega)
    log_norm = 0.25 * math.log(reduced.im) + log_abs_eta(reduced, acc)
    return PeterssonValue(log_norm)


def log_petersson_chi10(Omega: SiegelPoint2, acc: AccuracyTarget = DEFAULT_ACCURACY) -> PeterssonValue:
    """log ||chi10||(Omega) = 5 log det Im(Omega) + log|chi10(Omega)|.

    Raises VanishingError when some theta-constant factor is within its own
    certified error of zero, i.e. when chi10 cannot be certified nonzero
    (in particular on block-diagonal Omega).
    """
    constants, per_factor_eps = _even_theta_constants(Omega, acc)
    smallest = min(abs(v) for v in constants)
    if smallest <= per_factor_eps:
        raise VanishingError(
            f"chi10 vanishes within working accuracy (a theta constant is "
            f"{smallest:.3g}, below its error bound {per_factor_eps:.3g})"
        )
    det_im = float(np.linalg.det(Omega.im_matrix))
    log_abs_chi = 2.0 * sum(math.log(abs(v)) for v in constants)
    return PeterssonValue(5.0 * math.log(det_im) + log_abs_chi)


def reduce_fundamental_domain(omega: UpperHalfPoint) -> UpperHalfPoint:
    """Gauss-reduce omega into the region |Re| <= 1/2, |omega| >= 1.

    Iterates the translation omega -> omega - round(Re omega) and, while
    |omega| < 1, the inversion omega -> -1/omega; Im strictly increases on
    every inversion, so the loop terminates.
    """
    w = omega.value
    for _ in range(_REDUCTION_CAP):
        w = complex(w.real - round(w.real), w.imag)
        if abs(w) < 1.0:
            w = -1.0 / w
        else:
            return UpperHalfPoint(w.real, w.imag)
    raise NonTerminationError(f"fundamental-domain reduction did not settle for {omega.value}")
