"""Walk through the special-function layer: eta, theta, characteristics.

Every value below carries a certified absolute truncation error; the demo
prints the certified radius next to each evaluation so you can see how the
Gaussian tail bound reacts to the geometry of the input.
"""

import numpy as np

from deginv import (
    AccuracyTarget,
    SiegelPoint2,
    UpperHalfPoint,
    even_characteristics,
    log_abs_eta,
    odd_characteristics,
    theta_char_genus2,
    theta_odd_genus1,
    truncation_radius,
)

acc = AccuracyTarget(eps_abs=1e-12, max_radius=64)

print("== Dedekind eta ==")
for im in (0.8, 2.0, 10.0):
    omega = UpperHalfPoint(0.0, im)
    print(f"  log|eta({im}i)| = {log_abs_eta(omega, acc):+.12f}")
print("  (at 10i the q-product tail is ~3e-28, so -20*pi/24 = "
      f"{-20 * np.pi / 24:.12f} dominates)")

print("\n== Genus-1 theta with odd characteristic ==")
omega = UpperHalfPoint(0.0, 1.0)
for z in (0.0, 0.3, 0.3 + 0.1j):
    value = theta_odd_genus1(z, omega, acc)
    print(f"  theta({z}, i) = {value:+.12f}")
print("  odd in z: theta(-z) = -theta(z), so theta(0) = 0 exactly")

print("\n== The 16 half-integer characteristics in genus 2 ==")
print(f"  even ({len(even_characteristics())}):")
for char in even_characteristics():
    print(f"    a = {char.a}, b = {char.b}")
print(f"  odd  ({len(odd_characteristics())}): all give theta[alpha](0, Omega) = 0")

print("\n== Genus-2 theta constants ==")
point = SiegelPoint2(1.1j, 0.2 + 0.1j, 1.3j)
lam = point.lambda_min()
print(f"  Omega = [[1.1i, 0.2+0.1i], [0.2+0.1i, 1.3i]], lambda_min = {lam:.4f}")
print(f"  certified box radius for eps = 1e-12: N = {truncation_radius(lam, 1.0, 1e-12)}")
for char in even_characteristics()[:3]:
    value = theta_char_genus2(char, (0.0, 0.0), point, acc)
    print(f"  theta[a={char.a}, b={char.b}](0, Omega) = {value:+.12f}")
odd = odd_characteristics()[0]
print(f"  odd characteristic a={odd.a}, b={odd.b}: "
      f"|theta| = {abs(theta_char_genus2(odd, (0.0, 0.0), point, acc)):.2e}")
