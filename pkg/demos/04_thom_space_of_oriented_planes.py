"""
Thom space of oriented 2-planes
===============================

Compare the minimal model ΛV with the ideal generated by the Euler class.
The map φ is a chain map for one sign of d(z) only, and even then one
degree-(4n+1) class of ΛV is missed.
"""

from sullivan import gr2
from sullivan.algebra import check_chain_map
from sullivan.homology import is_quasi_iso

n = 2
for sign in gr2.DZ_SIGNS:
    print(sign, check_chain_map(gr2.phi(n, sign)))

f = gr2.phi(n, relative=False)
rep = is_quasi_iso(f, (0, 4 * n + 2))
for k, row in rep.degrees.items():
    if row["source"] or row["target"]:
        print(k, row)

# the extra cocycle: d(t) = u·d(z), so t - u·z is closed, and φ kills it
V = f.source
extra = V.gen("t") - V.gen("u") * V.gen("z")
print("d(t - u z) =", V.d(extra), "  φ(t - u z) =", f(extra))
