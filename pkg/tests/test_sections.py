from math import comb

import pytest

from sullivan import catalog as cat
from sullivan.algebra import AlgebraError, CDGA, Generator, Polynomial, cdga
from sullivan.coalgebra import SECTION_3, SECTION_4, alpha_sign, cpn_namer, dualize
from sullivan.sections import (InconsistentAugmentation, RelativeModel, SectionError, _Builder,
                               brown_szczarba, check_evaluation, check_section_model, component_model,
                               evaluation_map_model, extend_augmentation,
                               pushforward_p_beta, reduce_mod_relations, section_name)

U1, TB = cat.U1, cat.tb


def _thom(n):
    R = cat.thom_complex_models(n).rel
    return R, cat.thom_coalgebra(R, n)


def _beta(j):
    return (("b", 2, j),) if j else ()


def test_relative_model_validation():
    base = cdga({"b": 2})
    with pytest.raises(AlgebraError):
        RelativeModel(base, cdga({"b": 2, "y": 3}, {"b": "0", "y": "b^2"}), ["x"])
    with pytest.raises(AlgebraError):
        RelativeModel(cdga({"b": 2, "y": 3}, {"y": "b^2"}), cdga({"b": 2, "y": 3, "x": 3}), ["x"])


def test_brown_szczarba_refuses_group_generators():
    R = cat.thom_complex_models(2).borel
    C = dualize(R.base, (0, 6), cpn_namer(2))
    with pytest.raises(SectionError):
        brown_szczarba(R, C)


def test_coalgebra_window_must_cover_fiber():
    R, _ = _thom(2)
    with pytest.raises(SectionError):
        brown_szczarba(R, dualize(R.base, (0, 4)))


@pytest.mark.parametrize("conv,sign", [(SECTION_4, lambda k: (-1) ** (k + 1)), (SECTION_3, lambda k: (-1) ** k)])
def test_base_absorption_sign(conv, sign):
    R, C = _thom(2)
    b = _Builder(R, C, conv)
    for k in range(3):
        for j in range(4):
            m = cat.gen("u", 2) * cat.gen("b", 2) ** k
            got = b.normal_form(m, _beta(j))
            want = b.gen_poly("u", _beta(j - k)) * sign(k) if j >= k else Polynomial()
            assert got == want


def test_fiber_power_splitting():
    R, C = _thom(3)
    b = _Builder(R, C, SECTION_3)
    e = Polynomial.mono(((section_name("u", "beta_1"), 0, 1),))
    U = Polynomial.mono(((U1, 2, 1),))
    for k in range(1, 5):
        for j in range(k + 1):
            got = b.normal_form(Polynomial.mono((("u", 2, k),)), _beta(j))
            assert got == e ** j * U ** (k - j) * comb(k, j)


def test_thom_sections_before_augmentation():
    S = cat.thom_section_model(2, SECTION_3)
    e = S.gen(section_name("u", "beta_1"))
    U = S.gen(U1)
    for j in range(3):
        want = (e - 1) ** j * U ** (3 - j) * (-comb(3, j))
        assert S.d_of(TB(j)) == want


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("conv", [SECTION_3, SECTION_4])
def test_section_models_square_to_zero_mod_relations(n, conv):
    assert check_section_model(cat.thom_section_model(n, conv)).ok
    if n >= 2:
        assert check_section_model(cat.thom_borel_section_model(n, conv)).ok


def test_component_model_examples():
    assert cat.sections_via_bs(2, 3).d_of(TB(2)) == Polynomial.mono(((U1, 2, 1),), -12)
    A = cat.sections_via_bs(2, 1)
    assert not A.d_of(TB(1)) and not A.d_of(TB(2))
    assert A.d_of(TB(0)) == -Polynomial.mono(((U1, 2, 3),))


def test_augmentation_extension_and_errors():
    S = cat.thom_section_model(2)
    eps = extend_augmentation(S, {section_name("u", "beta_1"): 3})
    assert eps[section_name("t", "gamma_5")] == (1 - 3) ** 3 - 1
    with pytest.raises(SectionError):
        extend_augmentation(S, {"u(x)1": 1})
    with pytest.raises(InconsistentAugmentation):
        component_model(S, type(eps)({**eps.values, section_name("t", "gamma_5"): 0}))
    with pytest.raises(SectionError):
        extend_augmentation(S, {})


def test_relations_reduce_to_zero():
    S = cat.thom_section_model(2)
    for rel in S.relations.values():
        assert not reduce_mod_relations(S, rel)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_evaluation_map_is_chain_map_mod_relations(n):
    R, C = _thom(n)
    S = brown_szczarba(R, C, convention=SECTION_3)
    assert check_evaluation(evaluation_map_model(S, R, C), S).ok


def test_evaluation_of_odd_class_over_cp1():
    base = cat.cpn_model(1, truncated=True)
    total = CDGA([Generator("x", 3), Generator("b", 2)], truncation={"b": 2})
    R = RelativeModel(base, total, ["x"])
    C = dualize(base, (0, 4), cpn_namer(1))
    for conv in (SECTION_3, SECTION_4):
        S = brown_szczarba(R, C, convention=conv)
        ev = evaluation_map_model(S, R, C)
        x1 = Polynomial.mono((("x(x)1", 3, 1),))
        xb = cat.gen("x(x)beta_1", 1) * cat.gen("b", 2)
        assert ev.images["x"] == x1 * alpha_sign(0, conv) + xb * alpha_sign(2, conv)
        assert check_evaluation(ev, S).ok


def test_pushforward_extracts_section_generator():
    R, C = _thom(2)
    S = brown_szczarba(R, C, convention=SECTION_4)
    ev = evaluation_map_model(S, R, C)
    p = pushforward_p_beta(ev.images["t"], _beta(1), R.base.names)
    assert p * (-1) ** 2 == S.gen(TB(1))


def test_smooth_case_leading_term():
    from sullivan.gr2 import smooth_section_model
    S = smooth_section_model(2, SECTION_3)
    assert S.d_of("w_x(x)1") == S.gen("u(x)1") * S.gen("w_f(x)1")
    assert check_section_model(S).ok


def test_section_model_json_has_provenance():
    d = cat.thom_section_model(2).to_dict()
    assert d["provenance"]["signConvention"] == SECTION_3
    assert d["provenance"]["window"] == [0, 5]
    assert set(d["relations"]) == {section_name("t", "beta_3")}


def test_conjugation_borel_relation_for_n2_under_section_4():
    S = cat.thom_borel_section_model(2, SECTION_4)
    assert S.relations[section_name("t", "beta_3")] == cat.sections_borel_relation(2)



def test_normal_form_ij_matches_model_differential():
    from sullivan import catalog as cat
    from sullivan.coalgebra import SECTION_3
    from sullivan.sections import normal_form_IJ, section_name
    R = cat.thom_complex_models(2).rel
    C = cat.thom_coalgebra(R, 2)
    S = cat.thom_section_model(2, SECTION_3)
    for beta in C.elements():
        for v in R.fiber:
            name = section_name(v, C.name(beta))
            if name in S.algebra.names:
                assert normal_form_IJ(R.total.d_of(v), beta, C, R) == S.algebra.d_of(name)
