import pytest

from sullivan import catalog as cat
from sullivan.algebra import Polynomial, check_chain_map, check_d_squared
from sullivan.coalgebra import SECTION_3, SECTION_4
from sullivan.homology import DegreeWindow

H, C = cat.chat(), cat.ccheck()


def test_chern_tensor_line_rank2():
    cs = [cat.gen("c_1", 2), cat.gen("c_2", 4)]
    ell = cat.gen("l", 2)
    assert cat.chern_tensor_line(cs, 2, ell)[1] == cs[1] + cs[0] * ell + ell ** 2
    with pytest.raises(ValueError):
        cat.chern_tensor_line(cs, 3, ell)


def test_h_images():
    for n in (2, 3, 4):
        assert cat.h_images(n)["c_1"] == H * (n + 1) + C + cat.cbar(n, 1)
    c1 = cat.cbar(2, 1)
    assert cat.h_images(2)["c_3"] == H ** 3 + H ** 2 * C + H ** 2 * c1 + H * C * c1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_h_two_constructions_agree(n):
    assert cat.h_images(n) == cat.h_images_composite(n)


def test_gr1c_absolute_differentials():
    A = cat.gr1c_models(2).absolute
    assert A.d_of("s^-1 c_2") == C ** 2 + H * C * 3 + H ** 2 * 3
    assert A.d_of("s^-1 c_3") == -(H ** 3 * 2 + H * C ** 2 + H ** 2 * C * 3)


def test_gr1c_models_close():
    for n in (2, 3, 4):
        M = cat.gr1c_models(n)
        assert check_d_squared(M.absolute).ok and check_d_squared(M.borel.total).ok
        assert check_chain_map(cat.h_map(n)).ok


def test_elimination_examples():
    _, img = cat.eliminate_cbar(2)
    assert img["cbar_1"] == -(C + H * 3)
    _, img = cat.eliminate_cbar(3, relative=True)
    assert img["cbar_1"] == cat.c(1) - C - H * 4
    for n in (3, 4):
        assert cat.barc_closed_form(n, 1) == -(C + H * (n + 1))


def test_elimination_matches_closed_form_n4():
    _, img = cat.eliminate_cbar(4)
    for p in range(1, 4):
        assert img[f"cbar_{p}"] == cat.barc_closed_form(4, p)


def test_elimination_reproduces_closed_form_differentials():
    # the closed-form absolute d(s^-1 c_n) is the negative of the eliminated one
    for n in (2, 3):
        E, _ = cat.eliminate_cbar(n)
        M = cat.gr1c_models(n)
        assert E.d_of(cat.desusp(f"c_{n}")) == -M.absolute.d_of(cat.desusp(f"c_{n}"))
        assert E.d_of(cat.desusp(f"c_{n + 1}")) == M.absolute.d_of(cat.desusp(f"c_{n + 1}"))
        B, _ = cat.eliminate_cbar(n, relative=True)
        for q in (n, n + 1):
            assert B.d_of(cat.desusp(f"c_{q}")) == M.borel.total.d_of(cat.desusp(f"c_{q}"))


def test_barc_closed_form_range():
    with pytest.raises(ValueError):
        cat.barc_closed_form(3, 3)


def test_combinatorial_identities():
    r = cat.combinatorial_identities_check(10)
    assert r["ok"]
    with pytest.raises(ValueError):
        cat.combinatorial_identities_check(65)


def test_thom_models():
    rel = cat.thom_complex_models(1).rel.total
    b, u = cat.gen("b", 2), cat.gen("u", 2)
    assert rel.d_of("t") == -(u ** 2 + b * u * 2)
    assert rel.d_of("y") == b ** 2
    alt = cat.thom_complex_models(2, alternating_sign=True).rel.total
    assert alt.d_of("t") == u ** 3 + b * u ** 2 * 3 + b ** 2 * u * 3
    borel = cat.thom_complex_models(2).borel.total
    assert borel.d_of("y") == b ** 3 - cat.c(1) * b ** 2 + cat.c(2) * b - cat.c(3)


def test_thom_ideal_matches_direct_model():
    for n in (2, 3):
        assert cat.thom_from_ideal(n).total.to_json() == cat.thom_complex_models(n).borel.total.to_json()


def test_sections_closed_form():
    A = cat.sections_closed_form(3, 2)
    assert A.d_of(cat.tb(3)) == Polynomial.mono(((cat.U1, 2, 1),), -4)
    assert check_d_squared(A).ok


@pytest.mark.parametrize("n,d", [(2, 3), (2, -1), (3, 2), (4, 2), (4, 5)])
def test_explicit_cocycles_close(n, d):
    A = cat.sections_closed_form(n, d)
    assert all(not A.d(x) for x in cat.explicit_pu_cocycles(n, d))


def test_reversed_binomial_coefficient_does_not_close():
    A = cat.sections_closed_form(2, 3)
    rev = cat.explicit_pu_cocycles(2, 3, reversed_binomial=True)
    assert A.d(rev[1]) == Polynomial.mono(((cat.U1, 2, 2),), 6)
    with pytest.raises(ValueError):
        cat.explicit_pu_cocycles(2, 1)


def test_sections_borel_constant_terms():
    # the ((1-d)^(n+1) - 1) c_(n-k+1) term plus the u^0 part of the triple sum
    # add up to the orbit-map coefficient
    for n in (2, 3):
        for d in (-1, 2, 3):
            A = cat.sections_borel(n, d)
            for k in range(n + 1):
                q = n - k + 1
                got = A.d_of(cat.tb(k)).coefficient(((f"c_{q}", 2 * q, 1),))
                assert got == cat.orbit_coefficient(n, d, k)
            assert check_d_squared(A).ok
    assert cat.sections_borel(2, 3).d_of(cat.tb(0)).coefficient((("c_3", 6, 1),)) == -9


def test_sections_borel_engine_n2_section4():
    for d in range(-1, 5):
        comp, eps, S = cat.sections_borel_via_conjugation(2, d, SECTION_4)
        assert comp.to_json() == cat.sections_borel(2, d).to_json()
        assert eps[cat.section_name("t", "gamma_5")] == (1 - d) ** 3 - 1


def test_sections_borel_engine_n3_up_to_gamma_sign():
    g = cat.section_name("t", "gamma_7")
    for d in range(-1, 5):
        comp, eps, S = cat.sections_borel_via_conjugation(3, d, SECTION_3)
        assert comp.to_json() == cat.sections_borel(3, d).to_json()
        assert eps[g] == -((1 - d) ** 4 - 1)
        flipped = S.relations[cat.section_name("t", "beta_4")].substitute(
            {g: -Polynomial.mono(((g, 0, 1),))})
        assert flipped == cat.sections_borel_relation(3)


def test_orbit_map_examples():
    psi = cat.orbit_map(2, 3)
    assert check_chain_map(psi).ok
    assert psi.images[cat.tb(1)] == cat.gen("s^-1 c_2", 3) * -6
    assert psi.images[cat.tb(2)] == cat.gen("s^-1 c_1", 1) * -12
    assert cat.borel_compatible(psi, 2, 3)["ok"]
    wrong = cat.orbit_map(2, 3, coefficient=lambda n, d, k: (1 - d) ** (n + 1))
    assert check_chain_map(wrong).ok
    assert not cat.borel_compatible(wrong, 2, 3)["ok"]


def test_orbit_coefficient_at_d2():
    for n in range(2, 6):
        for k in range(n + 1):
            c = cat.orbit_coefficient(n, 2, k)
            assert c == (-1) ** (n + 1) - (-1) ** k
            assert (c == 0) == ((n - k + 1) % 2 == 0)


def test_orbit_decisions():
    assert cat.orbit_iso_decision(3, 4).iso
    dec = cat.orbit_iso_decision(2, 1)
    assert not dec.iso and dec.kernel_degrees == list(range(1, 7))
    dec = cat.orbit_iso_decision(2, 2)
    assert not dec.iso and dec.kernel_degrees == [3]


def test_h1_torsion_and_characteristic():
    assert cat.h1_torsion_order(2, 3) == 12
    assert cat.h1_torsion_order(3, 2) == 4
    with pytest.raises(ValueError):
        cat.h1_torsion_order(2, 0)
    assert all(cat.characteristic_of_degree(1, d) == d for d in range(1, 11))
    assert cat.characteristic_of_degree(2, 1) == -4


def test_eta_matches_explicit_cocycles_under_section_4():
    for n in (1, 2, 3):
        E = cat.eta_classes(n, 3, SECTION_4)
        X = cat.explicit_pu_cocycles(n, 3, reversed_binomial=True)
        for j in range(n):
            assert E.eta[2 * n + 1 - 2 * j] == X[j] * (n + 1)
    E = cat.eta_classes(2, 3, SECTION_4)
    assert E.eta[3] == E.eta_t[1] * 3 - E.kappa_u * E.eta_t[2] * 3


def test_invariant_report():
    r = cat.invariant_report(2, 3, DegreeWindow(0, 8)).to_dict()
    assert r["h1TorsionOrder"] == 12 and r["orbitIso"] is True
    assert r["betti"] == {"0": 1, "3": 1, "5": 1, "8": 1}
    assert r["characteristic"] == -18
    assert cat.invariant_report(2, -1).to_dict()["h1TorsionOrder"] is None
