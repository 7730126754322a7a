from fractions import Fraction

from hypothesis import settings, strategies as st

from sullivan.algebra import CDGA, Generator, Polynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# mixed parities, two odd generators so signs matter
GENS = [Generator("a", 2), Generator("b", 3), Generator("c", 4), Generator("x", 1), Generator("y", 5)]
FREE = CDGA(GENS)


def monomial(exps) -> Polynomial:
    """Product of generator powers, taken in the (non-canonical) order of GENS."""
    out = Polynomial.const(1)
    for g, e in zip(GENS, exps):
        if g.degree % 2:
            e = min(e, 1)
        out = out * Polynomial.gen(g) ** e
    return out


exponents = st.tuples(*[st.integers(0, 2) for _ in GENS])
coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polynomials(draw, max_terms=4):
    terms = draw(st.lists(st.tuples(exponents, coefficients), max_size=max_terms))
    p = Polynomial()
    for exps, c in terms:
        p = p + monomial(exps) * c
    return p


@st.composite
def homogeneous(draw):
    exps = draw(exponents)
    c = draw(coefficients.filter(bool))
    return monomial(exps) * c


def frac(x):
    return Fraction(x)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
