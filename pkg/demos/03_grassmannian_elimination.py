"""
Reducing a homogeneous-space model
==================================

The Borel model of the Grassmannian of complex lines in TCP^n starts with
one odd generator per Chern class.  Cancelling contractible pairs leaves a
two-generator model whose substitutions have a closed form.
"""

from sullivan import catalog as cat
from sullivan.homology import betti_numbers

n = 3
raw = cat.gr1c_raw(n)
print(raw.describe())

reduced, images = cat.eliminate_cbar(n)
print(reduced.describe())
for p in range(1, n):
    print(f"cbar_{p} =", images[f"cbar_{p}"])
    assert images[f"cbar_{p}"] == cat.barc_closed_form(n, p)

# same cohomology before and after
print(betti_numbers(raw, (0, 12)))
print(betti_numbers(reduced, (0, 12)))
