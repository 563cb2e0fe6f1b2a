"""
Relation families and weight systems
====================================

The six relator families (1T, 2T, 4T, 16T, 28T, 4x4T), the assembled
relation matrix, and the exact weight-system basis it cuts out.
"""

from knotcocycle import (
    is_weight_system,
    rank,
    relation_matrix,
    relators_16t_28t,
    relators_1t,
    relators_2t,
    relators_4x4t,
    standard_4t_relators,
    weight_system_basis,
)

# -- 1. the relator families ---------------------------------------------------
# Each family is generated over a diagram basis; the number of terms per
# relator is a fingerprint of the family (1T kills isolated chords, 2T
# identifies mirror pairs, 16T/28T are the degree-three tree relations,
# 4x4T the degree-four products of classical four-term relators).
sixteen, twenty_eight = relators_16t_28t()
families = [
    ("1T deg 3", relators_1t(3).relators),
    ("2T deg 3", relators_2t(3).relators),
    ("4T deg 2", standard_4t_relators()),
    ("16T", sixteen.slotted),
    ("28T", twenty_eight.slotted),
    ("4x4T", relators_4x4t().slotted),
]
for name, rows in families:
    sizes = sorted(len(r.items()) for r in rows)
    print(f"{name}: {len(rows)} relators, term counts {sizes}")

# -- 2. the assembled relation matrix -----------------------------------------
# relation_matrix(m) stacks every family over the degree-m diagram basis
# into one exact sparse matrix.
for degree in (2, 3):
    matrix, basis, labels = relation_matrix(degree)
    r = rank(matrix)
    print(f"degree {degree}: {matrix.n_rows} relation rows over "
          f"{len(basis)} diagrams, rank {r}, cokernel {len(basis) - r}")

# -- 3. weight systems ----------------------------------------------------------
# The kernel of the transposed relation matrix: functionals that vanish
# on every relator.  All entries are exact rationals.
ws = weight_system_basis(3)
print(f"degree-3 weight systems: {len(ws)}")
print("all annihilate every relator?", all(is_weight_system(w, 3) for w in ws))

# Show one basis functional as (diagram -> coefficient).
first = ws[0]
print("sample functional:", {repr(d): str(c) for d, c in first.items()})
