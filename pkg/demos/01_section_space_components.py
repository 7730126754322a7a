"""
Components of a space of sections
=================================

Build the Thom-space bundle over CP^2, form its section-space model from the
dual coalgebra of the base, and look at one connected component.
"""

from sullivan import catalog as cat
from sullivan.homology import betti_numbers

n, d = 2, 3

# relative model  Λ(b, y) -> Λ(u, t, b, y)
R = cat.thom_complex_models(n).rel
print(R.total.describe())

# section model; degree -1 generators become degree-0 relations
S = cat.thom_section_model(n)
print(len(S.algebra.generators), "section generators")
for g, rel in S.relations.items():
    print(f"relation from {g}: {rel}")

# fix the degree and solve the relations for the other degree-0 generators
eps = cat.degree_augmentation(S, d)
print("augmentation:", {k: str(v) for k, v in eps.values.items()})

A = cat.component_model(S, eps)
print(A.describe())
assert A == cat.sections_closed_form(n, d)

# Λ(x_3, x_5), the rational cohomology of PU(3)
print(betti_numbers(A, (0, 8)))

# at d = 1 the component looks like CP^2 x U(2) instead
print(betti_numbers(cat.sections_closed_form(n, 1), (0, 6)))
