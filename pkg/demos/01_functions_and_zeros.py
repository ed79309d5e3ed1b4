"""Hahn-Exton functions, their zeros and the Laurent polynomials that approximate them.

Run with ``python3 demos/01_functions_and_zeros.py``.
"""
import numpy as np

from qlommel import QContext, J, h_eval, j, laurent_zeros, wronskian_residual, zeros_J, zeros_j
from qlommel.lommel import h_minimal

ctx = QContext(0.5)
nu = 1.5

print("J_nu and j_nu on a few points")
for x in (0.5, 1.0, 2.0):
    print(f"  x={x:4}:  J = {J(ctx, nu, x): .12f}   j = {j(ctx, nu, x): .12f}")

print("\nThe Wronskian of J(1/x) and j(x) is a theta product; residual of the closed form:")
for x in (0.9, 1.0, np.exp(0.4j)):
    print(f"  x={x!s:>24}: {abs(wronskian_residual(ctx, nu, x)):.1e}")

print("\nFirst zeros of J_{nu-1} and j_{nu-1}")
Jz = zeros_J(ctx, nu - 1, 5)
jz = zeros_j(ctx, nu - 1, 5)
print("  J:", np.array2string(Jz.zeros, precision=8))
print("  j:", np.array2string(jz.zeros, precision=8))

# Zeros of h_{n,nu} (through the Hessenberg spectrum, squared variable)
# settle on 1/j_k^2 outside the unit circle and on x_l^2 inside it.  At
# nu = 1.5 both limits sit next to 1 and the finite-n roots are complex, so
# use nu = 1 here.
mu = 1.0
z = laurent_zeros(ctx, mu, 40)
real = np.sort(z[np.abs(z.imag) < 1e-9].real)
Jz1, jz1 = zeros_J(ctx, mu - 1, 5), zeros_j(ctx, mu - 1, 5)
print(f"\nReal positive spectrum of H_40 at nu = {mu}:", np.array2string(real[real > 0], precision=8))
print("  compare 1/j_k^2 :", np.array2string(1 / Jz1.zeros[Jz1.zeros < 1] ** 2, precision=8))
print("  compare x_l^2   :", np.array2string(jz1.zeros[jz1.zeros < 1] ** 2, precision=8))

print("\nMinimal solution h^+_n at x=2 is normalized so that x^n h^+_n -> 1")
for n in (5, 10, 20, 40):
    print(f"  n={n:2}: {2.0**n * h_minimal(ctx, nu, '+', n, 2.0):.15f}   (h_n(2) = {h_eval(ctx, nu, n, 2.0):.4e})")
