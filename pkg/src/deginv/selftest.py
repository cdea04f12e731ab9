"""Embedded property suite behind the ``selftest`` CLI command.

Six fixed groups, run in order with a fixed RNG seed so the suite is
reproducible.  Each group reports its worst residual; a group passes when
that residual stays under its threshold (or, for the exact-arithmetic
groups, is identically zero).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import invariants, theta
from .modular import log_petersson_eta
from .theta import AccuracyTarget, SiegelPoint2, ThetaChar2, UpperHalfPoint

__all__ = ["GROUPS", "GroupResult", "run_selftest"]

GROUPS = (
    "even-characteristics",
    "odd-vanishing",
    "splitting",
    "sl2-invariance",
    "consistency-chain",
    "proof-identities",
)

_SEED = 20240817
_ACC = AccuracyTarget(1e-13, 64)


@dataclass(frozen=True)
class GroupResult:
    name: str
    passed: bool
    worst_residual: float
    detail: str = ""


def _random_siegel(rng: np.random.Generator, lam_floor: float = 0.3) -> SiegelPoint2:
    while True:
        y11, y22 = rng.uniform(0.5, 2.5, size=2)
        y12 = rng.uniform(-0.8, 0.8) * math.sqrt(y11 * y22)
        x11, x12, x22 = rng.uniform(-0.5, 0.5, size=3)
        try:
            point = SiegelPoint2(complex(x11, y11), complex(x12, y12), complex(x22, y22))
        except Exception:
            continue
        if point.lambda_min() >= lam_floor:
            return point


def _theta1d_char(a: float, b: float, z: complex, omega: complex, n_max: int = 30) -> complex:
    # independent 1-d sum, coded apart from the library's 2-d box path
    total = 0.0 + 0.0j
    for n in range(-n_max, n_max + 1):
        w = n + a
        total += np.exp(1j * np.pi * w * w * omega + 2j * np.pi * w * (z + b))
    return complex(total)


def _check_even_characteristics() -> GroupResult:
    listed = theta.even_characteristics()
    # independent parity scan over all 16 characteristics
    brute = []
    for a1, a2, b1, b2 in itertools.product((0.0, 0.5), repeat=4):
        if int(round(4.0 * (a1 * b1 + a2 * b2))) % 2 == 0:
            brute.append(((a1, a2), (b1, b2)))
    ok = (len(listed) == 10
          and [(c.a, c.b) for c in listed] == brute
          and all(c.parity == 1 for c in listed)
          and len(theta.odd_characteristics()) == 6)
    return GroupResult(GROUPS[0], ok, 0.0 if ok else 1.0,
                       f"{len(listed)} even characteristics listed")


def _check_odd_vanishing(rng: np.random.Generator) -> GroupResult:
    worst = 0.0
    for _ in range(20):
        point = _random_siegel(rng)
        for char in theta.odd_characteristics():
            worst = max(worst, abs(theta.theta_char_genus2(char, (0.0, 0.0), point, _ACC)))
    return GroupResult(GROUPS[1], worst < 1e-12, worst)


def _check_splitting(rng: np.random.Generator) -> GroupResult:
    worst = 0.0
    for _ in range(10):
        w1 = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 2.0))
        w2 = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 2.0))
        point = SiegelPoint2(w1, 0.0, w2)
        for a1, a2, b1, b2 in itertools.product((0.0, 0.5), repeat=4):
            char = ThetaChar2((a1, a2), (b1, b2))
            joint = theta.theta_char_genus2(char, (0.0, 0.0), point, _ACC)
            split = _theta1d_char(a1, b1, 0.0, w1) * _theta1d_char(a2, b2, 0.0, w2)
            worst = max(worst, abs(joint - split))
    return GroupResult(GROUPS[2], worst < 1e-11, worst)


def _check_sl2_invariance(rng: np.random.Generator) -> GroupResult:
    worst = 0.0
    for _ in range(100):
        base = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.2, 2.0))
        moved = base
        for _ in range(int(rng.integers(1, 6))):
            if rng.random() < 0.5:
                moved = moved + (1 if rng.random() < 0.5 else -1)
            else:
                moved = -1.0 / moved
        ref = log_petersson_eta(UpperHalfPoint(base.real, base.imag), _ACC).log_norm
        new = log_petersson_eta(UpperHalfPoint(moved.real, moved.imag), _ACC).log_norm
        worst = max(worst, abs(new - ref))
    return GroupResult(GROUPS[3], worst < 1e-10, worst)


def _check_consistency_chain(rng: np.random.Generator) -> GroupResult:
    exact_ok = True
    worst = 0.0
    splits = [invariants.GenusSplit.separating(h1, h2)
              for h1 in range(1, 11) for h2 in range(1, 11)]
    splits += [invariants.GenusSplit.nonseparating(h) for h in range(1, 11)]
    for split in splits:
        phi_law = invariants.phi_limit_law(split)
        delta_law = invariants.delta_limit_law(split)
        beta_law = invariants.beta_limit_law(split)
        combined = invariants.combine_phi_delta_laws(phi_law, delta_law, split.total_genus)
        names = {n for n, _ in beta_law.inputs} | {n for n, _ in combined.inputs}
        same_inputs = all(dict(beta_law.inputs).get(n, Fraction(0))
                          == dict(combined.inputs).get(n, Fraction(0)) for n in names)
        if not (beta_law.slope == combined.slope and beta_law.log_log == combined.log_log
                and beta_law.const_2pi == combined.const_2pi and same_inputs):
            exact_ok = False
        # float spot check: beta limit equals (8H+4) lambda(H, phi-limit, delta-limit)
        values = {name: float(v) for name, v in
                  zip(("phi1", "phi2", "delta1", "delta2", "phi", "delta", "g_ab"),
                      rng.uniform(-3.0, 3.0, size=7))}
        present = lambda law: {n: values[n] for n, _ in law.inputs}
        direct = beta_law.limit_value(present(beta_law))
        via_lambda = invariants.beta_from_lambda(
            split.total_genus,
            invariants.lambda_invariant(split.total_genus,
                                        phi_law.limit_value(present(phi_law)),
                                        delta_law.limit_value(present(delta_law))))
        worst = max(worst, abs(direct - via_lambda))
    return GroupResult(GROUPS[4], exact_ok and worst < 1e-12, worst,
                       "exact coefficients" if exact_ok else "coefficient mismatch")


def _check_proof_identities() -> GroupResult:
    residuals = [invariants.euler_split_residual(h1, h2)
                 for h1 in range(1, 21) for h2 in range(1, 21)]
    residuals += [invariants.euler_nonsplit_residual(h) for h in range(1, 21)]
    residuals += [invariants.slope_assembly_residual(h) for h in range(1, 21)]
    residuals += [invariants.green_assembly_residual(h) for h in range(1, 21)]
    worst = max(abs(r) for r in residuals)
    return GroupResult(GROUPS[5], worst == 0, float(worst))


def run_selftest(seed: int = _SEED) -> list[GroupResult]:
    """Run all groups in their documented order and return their results."""
    rng = np.random.default_rng(seed)
    return [
        _check_even_characteristics(),
        _check_odd_vanishing(rng),
        _check_splitting(rng),
        _check_sl2_invariance(rng),
        _check_consistency_chain(rng),
        _check_proof_identities(),
    ]
