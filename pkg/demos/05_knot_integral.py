"""
The knot integral through degree two
====================================

Numerical iterated integrals over a piecewise-linear Morse knot: the
raw series Z, the hump correction, and the cross-check of the corrected
interleaved coefficient against the Conway polynomial.
"""

from knotcocycle import (
    MorseKnot,
    QuadratureConfig,
    canonicalize,
    casson_invariant,
    conway_polynomial,
    crossings,
    kontsevich_z,
    load_knot_fixture,
    z_hat,
)

QUAD = QuadratureConfig(order=8, max_refine=6, tol=1e-7)
ABAB = canonicalize(chords=[(0, 2), (1, 3)])

# -- 1. the trivial cases ---------------------------------------------------------
# A straight strand integrates to the empty diagram with coefficient 1;
# a single hump picks up the universal correction value in the
# interleaved coefficient.
line = MorseKnot([(0, 0, 0), (0, 0, 1)])
z_line = kontsevich_z(line, quad=QUAD)
print("straight strand:", z_line)

hump = load_knot_fixture("hump")
z_hump = kontsevich_z(hump, quad=QUAD)
print(f"hump interleaved coefficient: {z_hump[ABAB].real:.7f}  "
      f"(1/24 = {1 / 24:.7f})")

# -- 2. a real knot ------------------------------------------------------------------
trefoil = load_knot_fixture("trefoil_a")
cr = crossings(trefoil)
print(f"trefoil: {len(cr)} projection crossings, "
      f"writhe {sum(c.sign for c in cr)}")
z_tref = kontsevich_z(trefoil, quad=QUAD)
print(f"raw interleaved coefficient:  {z_tref[ABAB].real:.7f}  "
      f"(13/12 = {13 / 12:.7f})")

# -- 3. the correction and the Conway cross-check --------------------------------------
# Dividing by the hump contribution per critical-point pair removes the
# embedding artefacts; what is left at degree two is the z^2-coefficient
# of the Conway polynomial, computed here by a completely independent
# skein-relation routine.
hat = z_hat(trefoil, quad=QUAD)
print(f"corrected coefficient:        {hat[ABAB].real:.7f}")
print("Conway polynomial coefficients (z^0, z^1, z^2):",
      conway_polynomial(trefoil))
print(f"Casson invariant (z^2 coefficient): {casson_invariant(trefoil)}")

hat_hump = z_hat(hump, quad=QUAD)
print(f"corrected hump coefficient:   {abs(hat_hump[ABAB]):.2e}  "
      "(an unknot: exactly zero up to quadrature)")
