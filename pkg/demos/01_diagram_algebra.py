"""
Chord diagrams, V-diagrams, and formal sums
===========================================

The building blocks: diagrams on an oriented circle with chords and
one- or two-sided V-endpoints, canonical forms, and exact formal sums.
"""

from fractions import Fraction

from knotcocycle import (
    FormalSum,
    canonicalize,
    enumerate_chord_diagrams,
    enumerate_v_diagrams,
    sigma,
    sigma_sum,
)

# -- 1. canonical chord diagrams --------------------------------------------
# A chord diagram is stored as chords between positions on the circle;
# canonicalize() rotates and relabels so equal diagrams compare equal.
cross = canonicalize(chords=[(0, 2), (1, 3)])
nested = canonicalize(chords=[(0, 3), (1, 2)])
print("interleaved pair:", cross)
print("nested pair:     ", nested)
print("equal?", cross == nested)

# Rotating the marked point does not change the canonical form.
rotated = canonicalize(chords=[(1, 3), (2, 0)])
print("rotation invariance:", rotated == cross)

# -- 2. enumeration by degree ------------------------------------------------
# A V-diagram carries exactly one V-vertex (degree 2) plus ordinary
# chords, so the family starts in degree 2.
for degree in (2, 3):
    chords_only = enumerate_chord_diagrams(degree)
    vees = enumerate_v_diagrams(degree)
    print(f"degree {degree}: {len(chords_only)} chord diagrams, "
          f"{len(vees)} V-diagrams")

# -- 3. exact formal sums -----------------------------------------------------
# FormalSum is a free module over whatever scalars you feed it; here we
# stay in Fractions so every identity below is exact.
s = FormalSum.single(cross, Fraction(1, 2)) + FormalSum.single(nested, Fraction(-1, 3))
print("sum:", {repr(k): str(v) for k, v in s.items()})
print("2*sum - sum == sum?", (2 * s - s) == s)

# -- 4. the orientation involution -------------------------------------------
# sigma reverses the circle orientation; on a canonical diagram it acts
# by a sign only, and applying it twice is the identity.
for d in enumerate_v_diagrams(2):
    sign, image = sigma(d)
    assert image == d and sign in (1, -1)
    print(f"sigma {d!r} = {sign:+d} * (same diagram)")

one = FormalSum.single(cross, Fraction(1))
print("involution on sums:", sigma_sum(sigma_sum(one)) == one)
