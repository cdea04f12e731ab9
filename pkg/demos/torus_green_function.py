"""The canonical Green's function on a complex torus, and the invariants it feeds.

g(a, b) depends only on u = b - a modulo the lattice; the demo checks the
defining properties numerically (evenness, double periodicity, mean zero
against the flat probability measure), extracts the Arakelov d-constant from
the logarithmic singularity, and assembles the Faltings delta and the
lambda/beta chain for an elliptic curve.
"""

import math

import numpy as np

from deginv import (
    AccuracyTarget,
    EllipticCurveData,
    TorusDisplacement,
    UpperHalfPoint,
    arakelov_d_torus,
    beta_from_lambda,
    delta_elliptic,
    green_torus,
    lambda_invariant,
    log_abs_eta,
    phi_genus1,
    theta_odd_genus1,
)

acc = AccuracyTarget(1e-12, 64)
omega = UpperHalfPoint(0.0, 1.1)
u = 0.3 + 0.2j

print("== defining properties ==")
base = green_torus(TorusDisplacement(u, omega), acc)
print(f"  g({u}) = {base:+.12f}")
for label, other in (("-u", -u), ("u+1", u + 1), ("u+omega", u + omega.value)):
    value = green_torus(TorusDisplacement(other, omega), acc)
    print(f"  g({label:7s}) = {value:+.12f}   gap {value - base:+.1e}")

n = 200
xs = (np.arange(n) + 0.5) / n
X, Y = np.meshgrid(xs, xs, indexing="ij")
U = X + Y * omega.value
G = (-np.pi * U.imag**2 / omega.im
     + np.log(np.abs(theta_odd_genus1(U, omega, acc)))
     - log_abs_eta(omega, acc))
mask = np.ones((n, n), bool)
mask[0, 0] = mask[0, -1] = mask[-1, 0] = mask[-1, -1] = False
print(f"  flat mean over a {n}x{n} grid (4 singular cells omitted): "
      f"{G[mask].sum() / n**2:+.2e}")

print("\n== the d-constant hides in the singularity ==")
target = arakelov_d_torus(EllipticCurveData(omega), acc)
print(f"  2 log|eta| + log(2 pi) = {target:+.12f}")
for r in (1e-2, 1e-4, 1e-6):
    point = r * complex(math.cos(0.4), math.sin(0.4))
    reg = green_torus(TorusDisplacement(point, omega), acc) - math.log(r)
    print(f"  g(u) - log|u| at |u| = {r:.0e}:  {reg:+.12f}")

print("\n== the invariant chain in genus one ==")
delta = delta_elliptic(EllipticCurveData(omega), acc)
lam = lambda_invariant(1, phi_genus1(), delta)
print(f"  phi   = {phi_genus1()}")
print(f"  delta = {delta:+.12f}")
print(f"  lambda = delta/12 - log(2 pi)/3 = {lam:+.12f}")
print(f"  beta = 12 lambda = {beta_from_lambda(1, lam):+.12f}")
