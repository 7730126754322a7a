import pytest
from hypothesis import given, strategies as st

from conftest import GENS
from sullivan.algebra import CDGA, Polynomial, parse
from sullivan.catalog import cpn_model, gen, thom_complex_models
from sullivan.coalgebra import (SECTION_3, SECTION_4, alpha, alpha_sign, cpn_namer, divide, dualize,
                                iterated_splittings, splittings)

A = CDGA(GENS, {"b": parse("a^2", {"a": 2}), "y": parse("a*c", {"a": 2, "c": 4})})
C = dualize(A, (0, 9))
ELEMS = C.elements()
elements = st.sampled_from(ELEMS)


def _triples(m, left):
    out = {}
    for m1, m2, s in splittings(m):
        inner = splittings(m1) if left else splittings(m2)
        for a, b, t in inner:
            key = (a, b, m2) if left else (m1, a, b)
            out[key] = out.get(key, 0) + s * t
    return {k: v for k, v in out.items() if v}


@given(elements)
def test_coassociativity(m):
    left, right = _triples(m, True), _triples(m, False)
    assert left == right
    assert left == {tuple(parts): s for parts, s in iterated_splittings(m, 3)}


@given(elements)
def test_counit(m):
    left = [(m2, s) for m1, m2, s in splittings(m) if not m1]
    right = [(m1, s) for m1, m2, s in splittings(m) if not m2]
    assert left == [(m, 1)] and right == [(m, 1)]


@given(elements)
def test_dual_differential_squares_to_zero(m):
    assert C.dual_differential(C.dual_differential({m: 1})) == {}


@given(elements, elements)
def test_dual_differential_is_transpose(m, p):
    lhs = C.pair(C.dual_differential({m: 1}), Polynomial.mono(p))
    rhs = C.pair({m: 1}, A.d(Polynomial.mono(p)))
    assert lhs == rhs


@given(elements, elements, elements)
def test_cap_is_a_right_action(m, b1, b2):
    P1, P2 = Polynomial.mono(b1), Polynomial.mono(b2)
    assert C.cap(C.cap({m: 1}, P1), P2) == C.cap({m: 1}, P1 * P2)


@given(elements, elements, elements)
def test_cap_pairing(m, b, q):
    lhs = C.pair(C.cap({m: 1}, Polynomial.mono(b)), Polynomial.mono(q))
    rhs = C.pair({m: 1}, Polynomial.mono(b) * Polynomial.mono(q))
    assert lhs == rhs


def test_divide():
    x, b = ("x", 1, 1), ("b", 3, 1)
    s, q = divide((x, b), (b,))
    assert q == (x,) and s == -1
    assert divide((x,), (b,)) is None


def test_alpha_values():
    assert [alpha_sign(r) for r in range(5)] == [1, -1, -1, 1, 1]
    assert all(alpha_sign(2 * k) == (-1) ** k for k in range(6))
    assert all(alpha(r, SECTION_4) == alpha(r, SECTION_3) + 1 for r in range(8))
    with pytest.raises(ValueError):
        alpha(-1)
    with pytest.raises(ValueError):
        alpha(2, "other")


def test_cpn_homology_cap_and_boundary():
    n = 2
    C2 = dualize(cpn_model(n), (0, 10), cpn_namer(n))
    beta = lambda j: {C2.by_name(f"beta_{j}") if j else (): 1}
    for j in range(4):
        for k in range(4):
            got = C2.cap(beta(j), gen("b", 2) ** k)
            assert got == (beta(j - k) if j >= k else {})
    assert C2.chain_str(C2.dual_differential(beta(3))) == "gamma_5"
    assert C2.chain_str(C2.cap({C2.by_name("gamma_7"): 1}, gen("b", 2))) == "gamma_5"


def test_relative_base_boundary_signs():
    n = 2
    R = thom_complex_models(n).borel
    C2 = dualize(R.base, (0, 8), cpn_namer(n))
    for j, q in [(1, 2), (2, 1), (0, 3), (1, 3), (2, 2)]:
        name = (f"beta_{j}(x)" if j else "") + f"theta[c_{q}]"
        got = C2.chain_str(C2.dual_differential({C2.by_name(name): 1}))
        want = f"gamma_{2 * (q + j) - 1}"
        assert got == (want if q % 2 == 0 else "-" + want)


def test_to_dict_shape():
    C2 = dualize(cpn_model(1), (0, 4), cpn_namer(1))
    d = C2.to_dict()
    assert d["window"] == [0, 4]
    assert {"name": "beta_1", "degree": 2} in d["basis"]
    assert d["dualDifferential"]["beta_2"] == [["gamma_3", 1, 1]]
