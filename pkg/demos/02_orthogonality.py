"""Three orthogonality relations, checked numerically.

Run with ``python3 demos/02_orthogonality.py``.
"""
import numpy as np

from qlommel import L_apply, L_residue, QContext, gram_P, gram_laurent, gram_p

np.set_printoptions(precision=3, linewidth=110, suppress=False)
ctx = QContext(0.5)

plus, minus = gram_laurent(ctx, 1.5, 5)
print("L(h_n h_m), nu = 1.5")
print(plus.matrix)
print("target diagonal", plus.target_diagonal)
print(f"largest off-diagonal {plus.max_off_diagonal:.1e}; L(x^-1 h_n x^-1 h_m) diagonal {np.diag(minus.matrix)}")

G = gram_p(ctx, 1.5, 5)
print(f"\np_n against masses at +-1/j_k plus 1 at the origin: off-diagonal {G.max_off_diagonal:.1e}, "
      f"diagonal error {G.max_diagonal_error:.1e}")
print("first weights", G.extra["weights"][:4])

for nu in (0.5, 2.0):
    G = gram_P(ctx, nu, 5)
    print(f"P_n, nu = {nu}: mass at 0 = {G.extra['mass0']:.3f}, off-diagonal {G.max_off_diagonal:.1e}, "
          f"diagonal error {G.max_diagonal_error:.1e}")

# the strong functional two ways: moment recursion and contour plus residues
print("\nL(x^m), nu = 0.5, moment path vs contour at three radii")
for m in (-6, -2, 0, 4, 8):
    vals = [L_residue(ctx, 0.5, {m: 1.0}, s=s).value_residue for s in (0.8, 1.0, 1.25)]
    print(f"  m={m:3}: {L_apply(ctx, 0.5, {m: 1.0}): .12f}  " + "  ".join(f"{v: .12f}" for v in vals))
