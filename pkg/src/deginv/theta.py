"""Dedekind eta and theta functions with certified truncation error.

Conventions used throughout (with ``omega`` in the upper half plane and
``Omega`` a 2x2 point of the Siegel upper half space):

.. math::

    q = e^{2\\pi i \\omega}, \\qquad
    \\eta(\\omega) = q^{1/24} \\prod_{n \\ge 1} (1 - q^n),

    \\theta(z, \\omega) = \\sum_{n \\in \\mathbb{Z}}
        e^{\\pi i (n + 1/2)^2 \\omega + 2\\pi i (n + 1/2)(z + 1/2)},

    \\theta[\\alpha](z, \\Omega) = \\sum_{n \\in \\mathbb{Z}^2}
        e^{\\pi i (n+a) \\Omega (n+a)^t + 2\\pi i (n+a) \\cdot (z+b)},
    \\qquad \\alpha = (a, b), \\; a, b \\in \\{0, 1/2\\}^2.

Every evaluation truncates its lattice sum at a radius certified by an
explicit Gaussian tail bound, so the returned value is within the requested
absolute error ``eps_abs`` of the exact sum (truncation error only; double
rounding stays far below any accepted ``eps_abs``).  Summation order is
fixed: increasing sup-norm shells, lexicographic inside a shell, so repeated
runs on one platform are bit-identical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError

__all__ = [
    "UpperHalfPoint",
    "SiegelPoint2",
    "ThetaChar2",
    "AccuracyTarget",
    "DEFAULT_ACCURACY",
    "log_abs_eta",
    "eta",
    "theta_odd_genus1",
    "log_abs_theta_odd",
    "theta_char_genus2",
    "even_characteristics",
    "odd_characteristics",
    "truncation_radius",
]

# Below this the eta q-product converges too slowly for the default caps;
# callers reduce to the fundamental domain first (see deginv.modular).
MIN_ETA_IM = 0.05

_HARD_RADIUS_CAP = 256


@dataclass(frozen=True)
class UpperHalfPoint:
    """A point re + i*im of the complex upper half plane (im > 0)."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError("upper-half-plane point must be finite")
        if not self.im > 0:
            raise DomainError(f"upper-half-plane point needs im > 0, got im={self.im}")

    @classmethod
    def from_complex(cls, value: complex) -> "UpperHalfPoint":
        value = complex(value)
        return cls(value.real, value.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class SiegelPoint2:
    """A 2x2 symmetric complex matrix with positive-definite imaginary part.

    The off-diagonal entry is stored once and mirrored on read, so the matrix
    is exactly symmetric by construction.  Positive definiteness of the
    imaginary part is checked via the trace/determinant test.
    """

    a11: complex
    a12: complex
    a22: complex

    def __post_init__(self):
        for name in ("a11", "a12", "a22"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"Siegel point entry {name} must be finite")
            object.__setattr__(self, name, v)
        y11, y12, y22 = self.a11.imag, self.a12.imag, self.a22.imag
        tr = y11 + y22
        det = y11 * y22 - y12 * y12
        if not (tr > 0 and det > 0):
            raise DomainError(
                "imaginary part is not positive definite "
                f"(trace={tr:.6g}, det={det:.6g})"
            )

    @classmethod
    def from_matrix(cls, m) -> "SiegelPoint2":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"Siegel point needs a 2x2 matrix, got shape {m.shape}")
        if m[0, 1] != m[1, 0]:
            raise DomainError("Siegel point matrix must be exactly symmetric")
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a12, self.a22]])

    @property
    def im_matrix(self) -> np.ndarray:
        return self.matrix.imag

    def lambda_min(self) -> float:
        """Smallest eigenvalue of the imaginary part (drives truncation)."""
        y11, y12, y22 = self.a11.imag, self.a12.imag, self.a22.imag
        tr = y11 + y22
        det = y11 * y22 - y12 * y12
        return 0.5 * (tr - math.sqrt(max(tr * tr - 4.0 * det, 0.0)))


@dataclass(frozen=True)
class ThetaChar2:
    """A genus-2 half-integer theta characteristic alpha = (a, b).

    Entries of a and b lie in {0, 1/2}; the parity (-1)^{4 a.b} splits the 16
    characteristics into 10 even and 6 odd ones.
    """

    a: tuple[float, float]
    b: tuple[float, float]

    def __post_init__(self):
        for pair in (self.a, self.b):
            if len(pair) != 2 or any(x not in (0.0, 0.5) for x in pair):
                raise DomainError(f"characteristic entries must lie in {{0, 1/2}}, got {pair}")
        object.__setattr__(self, "a", (float(self.a[0]), float(self.a[1])))
        object.__setattr__(self, "b", (float(self.b[0]), float(self.b[1])))

    @property
    def parity(self) -> int:
        """+1 for an even characteristic, -1 for an odd one."""
        four_ab = int(round(4.0 * (self.a[0] * self.b[0] + self.a[1] * self.b[1])))
        return 1 if four_ab % 2 == 0 else -1

    @property
    def is_even(self) -> bool:
        return self.parity == 1


@dataclass(frozen=True)
class AccuracyTarget:
    """Absolute error bound and a hard cap on lattice summation radius."""

    eps_abs: float = 1e-12
    max_radius: int = 64

    def __post_init__(self):
        if not 0.0 < self.eps_abs <= 1e-3:
            raise DomainError(f"eps_abs must lie in (0, 1e-3], got {self.eps_abs}")
        if not 4 <= int(self.max_radius) <= _HARD_RADIUS_CAP:
            raise DomainError(f"max_radius must lie in [4, 256], got {self.max_radius}")
        object.__setattr__(self, "max_radius", int(self.max_radius))


DEFAULT_ACCURACY = AccuracyTarget()


def even_characteristics() -> list[ThetaChar2]:
    """The 10 even characteristics, lexicographic on (a1, a2, b1, b2), 0 < 1/2."""
    chars = (ThetaChar2((a1, a2), (b1, b2))
             for a1, a2, b1, b2 in itertools.product((0.0, 0.5), repeat=4))
    return [c for c in chars if c.is_even]


def odd_characteristics() -> list[ThetaChar2]:
    """The 6 odd characteristics, in the same lexicographic order."""
    chars = (ThetaChar2((a1, a2), (b1, b2))
             for a1, a2, b1, b2 in itertools.product((0.0, 0.5), repeat=4))
    return [c for c in chars if not c.is_even]


def _box_radius(lam_min: float, offset: float, eps: float, cap: int) -> int:
    # Smallest N <= cap with 8(N+2) exp(-pi lam_min (N-offset)^2) < eps and
    # N > offset, so the shell bound below is decreasing past N.
    n_min = max(1, int(math.floor(offset)) + 1)
    for n in range(n_min, cap + 1):
        if 8.0 * (n + 2) * math.exp(-math.pi * lam_min * (n - offset) ** 2) < eps:
            return n
    needed = n_min
    while needed < 100 * _HARD_RADIUS_CAP:
        if 8.0 * (needed + 2) * math.exp(-math.pi * lam_min * (needed - offset) ** 2) < eps:
            break
        needed += 1
    raise AccuracyError(
        f"lattice radius cap {cap} too small for eps={eps:.3g} at "
        f"lambda_min={lam_min:.3g} (would need N={needed})"
    )


def truncation_radius(lam_min: float, offset: float, eps: float, cap: int = _HARD_RADIUS_CAP) -> int:
    """Certified square-box radius for a 2-d Gaussian lattice sum.

    Returns the smallest N <= cap with

        8 (N + 2) exp(-pi lam_min (N - offset)^2) < eps,

    which dominates the sum over all shells ||n||_inf = m > N of terms bounded
    by exp(-pi lam_min (m - offset)^2).  ``offset`` absorbs the half-integer
    characteristic shift (offset = 1 is conservative for |a|_inf <= 1/2).
    """
    if not lam_min > 0:
        raise DomainError(f"lambda_min must be positive, got {lam_min}")
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if not 0.0 <= offset <= 1.0:
        raise DomainError(f"offset must lie in [0, 1], got {offset}")
    return _box_radius(lam_min, offset, eps, min(int(cap), _HARD_RADIUS_CAP))


def _eta_terms(omega: UpperHalfPoint, acc: AccuracyTarget) -> int:
    # First N with |q|^{N+1}/(1-|q|) < eps/2, then the full log-tail bound
    # |sum_{n>N} log(1-q^n)| <= |q|^{N+1} / ((1-|q|)(1-|q|^{N+1})) re-verified.
    if omega.im < MIN_ETA_IM:
        raise DomainError(
            f"eta evaluation needs Im(omega) >= {MIN_ETA_IM}, got {omega.im}; "
            "reduce to the fundamental domain first"
        )
    absq = math.exp(-2.0 * math.pi * omega.im)
    target = acc.eps_abs / 2.0
    n_terms = None
    for n in range(1, acc.max_radius + 1):
        if absq ** (n + 1) / (1.0 - absq) < target:
            n_terms = n
            break
    if n_terms is None:
        raise AccuracyError(
            f"eta product cap {acc.max_radius} insufficient for "
            f"eps={acc.eps_abs:.3g} at Im(omega)={omega.im:.3g}"
        )
    head = absq ** (n_terms + 1)
    if head / ((1.0 - absq) * (1.0 - head)) >= acc.eps_abs:
        raise AccuracyError("eta log-tail bound failed re-verification")
    return n_terms


def log_abs_eta(omega: UpperHalfPoint, acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """log|eta(omega)| with absolute error <= acc.eps_abs.

    Computed additively as -pi Im(omega)/12 + sum log|1 - q^n|, which stays
    well conditioned even where |eta| is tiny.
    """
    n_terms = _eta_terms(omega, acc)
    q = np.exp(2j * np.pi * omega.value)
    qn = q ** np.arange(1, n_terms + 1)
    return -math.pi * omega.im / 12.0 + float(np.sum(np.log(np.abs(1.0 - qn))))


def eta(omega: UpperHalfPoint, acc: AccuracyTarget = DEFAULT_ACCURACY) -> complex:
    """The complex value eta(omega) = e^{pi i omega/12} prod (1 - q^n).

    The product is truncated at the radius certified for ``log_abs_eta``, so
    the relative error is <= acc.eps_abs and the absolute error is below
    2 * acc.eps_abs (|eta| stays under 2 wherever Im omega >= 0.05).
    """
    n_terms = _eta_terms(omega, acc)
    q = np.exp(2j * np.pi * omega.value)
    qn = q ** np.arange(1, n_terms + 1)
    return complex(np.exp(1j * np.pi * omega.value / 12.0) * np.prod(1.0 - qn))


def _theta1_radius(y: float, s: float, acc: AccuracyTarget) -> int:
    # Tail of sum over half-integers |m| > N + 1/2 of exp(-pi y m^2 + 2 pi s m),
    # bounded by a geometric series from the first omitted index.
    for n in range(1, acc.max_radius + 1):
        first = n + 1.5
        ratio = math.exp(-math.pi * y * (2.0 * first + 1.0) + 2.0 * math.pi * s)
        if ratio >= 0.5:
            continue
        head = math.exp(-math.pi * y * first * first + 2.0 * math.pi * s * first)
        if 2.0 * head / (1.0 - ratio) < acc.eps_abs:
            return n
    raise AccuracyError(
        f"theta radius cap {acc.max_radius} insufficient for eps={acc.eps_abs:.3g} "
        f"(Im omega={y:.3g}, max|Im z|={s:.3g})"
    )


def theta_odd_genus1(z, omega: UpperHalfPoint, acc: AccuracyTarget = DEFAULT_ACCURACY):
    """Genus-1 theta with odd characteristic (1/2, 1/2), certified to acc.eps_abs.

    ``z`` may be a complex scalar or a numpy array (one truncation radius is
    certified for the largest |Im z| in the array).  Odd in z: theta(-z) =
    -theta(z), in particular theta(0, omega) = 0.
    """
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    s = float(np.max(np.abs(z_arr.imag))) if z_arr.size else 0.0
    n_rad = _theta1_radius(omega.im, s, acc)
    m = np.arange(-n_rad - 1, n_rad + 1) + 0.5
    # fixed order: increasing |m| shells, negative index first within a shell
    m = m[np.lexsort((m, np.abs(m)))]
    terms = np.exp(1j * np.pi * omega.value * m**2
                   + 2j * np.pi * m * (z_arr[..., None] + 0.5))
    out = terms.sum(axis=-1)
    return complex(out) if scalar else out


def log_abs_theta_odd(z: complex, omega: UpperHalfPoint,
                      acc: AccuracyTarget = DEFAULT_ACCURACY) -> float:
    """log|theta(z, omega)| with log-space error near acc.eps_abs.

    Two passes: a cheap first evaluation estimates |theta|, then the sum is
    recomputed with an absolute eps proportional to that magnitude, bounding
    the log error by acc.eps_abs/3 down to |theta| ~ 1e-6.  Raises
    DomainError when theta is indistinguishable from zero (z on the lattice).
    """
    eps1 = min(acc.eps_abs, 1e-8)
    rough = abs(theta_odd_genus1(z, omega, AccuracyTarget(eps1, acc.max_radius)))
    floor = max(rough - eps1, 0.0)
    if floor < 1e-12:
        raise DomainError(
            f"|theta(z, omega)| = {rough:.3g} is too close to zero for a certified "
            "log (z is effectively a lattice point)"
        )
    eps2 = min(floor, 1.0) * acc.eps_abs / 3.0
    value = abs(theta_odd_genus1(z, omega, AccuracyTarget(eps2, acc.max_radius)))
    return math.log(value)


def _box_indices(n_rad: int) -> np.ndarray:
    grid = np.arange(-n_rad, n_rad + 1)
    n1, n2 = np.meshgrid(grid, grid, indexing="ij")
    pts = np.stack([n1.ravel(), n2.ravel()], axis=1)
    shells = np.max(np.abs(pts), axis=1)
    order = np.lexsort((pts[:, 1], pts[:, 0], shells))
    return pts[order]


def theta_char_genus2(char: ThetaChar2, z, Omega: SiegelPoint2,
                      acc: AccuracyTarget = DEFAULT_ACCURACY) -> complex:
    """Genus-2 theta constant/function theta[alpha](z, Omega) to acc.eps_abs.

    Summation runs over the box max(|n1|, |n2|) <= N with N certified by the
    Gaussian shell bound of :func:`truncation_radius`; for Im z != 0 the
    radius is widened by the completed-square growth factor of the linear
    term.
    """
    z_arr = np.asarray(z, dtype=complex).reshape(2)
    lam = Omega.lambda_min()
    c = float(np.hypot(z_arr[0].imag, z_arr[1].imag))
    if c == 0.0:
        n_rad = truncation_radius(lam, 1.0, acc.eps_abs, cap=acc.max_radius)
    else:
        # exp(-pi lam r^2 + 2 pi c r) <= e^{pi c^2/lam} exp(-pi lam (r - c/lam)^2)
        prefac = math.exp(math.pi * c * c / lam)
        n_rad = _box_radius(lam, 1.0 + c / lam, acc.eps_abs / prefac, acc.max_radius)
    pts = _box_indices(n_rad)
    w1 = pts[:, 0] + char.a[0]
    w2 = pts[:, 1] + char.a[1]
    quad = (w1 * w1 * Omega.a11 + 2.0 * w1 * w2 * Omega.a12 + w2 * w2 * Omega.a22)
    lin = w1 * (z_arr[0] + char.b[0]) + w2 * (z_arr[1] + char.b[1])
    return complex(np.sum(np.exp(1j * np.pi * quad + 2j * np.pi * lin)))
