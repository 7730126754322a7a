"""
The orbit map
=============

PU(n+1) acts on the section space.  On models the orbit map sends t⊗β_k to a
multiple of s^-1 c_(n-k+1); the multiple decides whether it is a rational
equivalence.
"""

from sullivan import catalog as cat

for n in (2, 3):
    row = []
    for d in range(-2, 7):
        dec = cat.orbit_iso_decision(n, d)
        row.append(f"d={d}:{'iso' if dec.iso else 'no'}")
    print(f"n={n}", " ".join(row))

# at d = 2 only the odd Chern classes survive
psi = cat.orbit_map(3, 2, projective=True)
for k in range(3):
    print(cat.tb(k), "->", psi.images[cat.tb(k)])

# the coefficient is pinned by the Borel construction, not by the chain condition
wrong = cat.orbit_map(2, 3, coefficient=lambda n, d, k: (1 - d) ** (n + 1))
print("wrong coefficient compatible:", cat.borel_compatible(wrong, 2, 3)["ok"])
print("H_1 torsion order n=2 d=3:", cat.h1_torsion_order(2, 3))
