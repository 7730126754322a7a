"""Acceptance runner: one deterministic PASS/FAIL line per criterion.

The log never contains timings, so two runs give byte-identical output.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

from . import catalog as cat
from . import gr2
from .algebra import CDGA, Generator, Polynomial, check_chain_map, tensor
from .coalgebra import SECTION_3, SECTION_4
from .homology import DegreeWindow, betti_numbers, is_quasi_iso
from .registry import keys, lookup
from .sections import check_section_model, section_name

# pinned by criteria 2 and 9
PINNED_CONVENTION = SECTION_3
PINNED_DZ_SIGN = gr2.MINUS


@dataclass
class Result:
    number: int
    title: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.number:>2} {self.title}: {self.detail}"


def _ns(lo, hi, n_max):
    return range(lo, min(hi, n_max) + 1 if n_max is not None else hi + 1)


def criterion_1(n_max=None) -> Result:
    checked, bad = 0, []
    for n in _ns(1, 4, n_max):
        for key in keys(n, range(-2, 6)):
            e = lookup(key)
            checked += 1
            if not e.check_d_squared():
                bad.append(key)
        for conv in (SECTION_3, SECTION_4):
            checked += 1
            if not check_section_model(cat.thom_section_model(n, conv)):
                bad.append(f"thom-sections:n={n}:{conv}")
            if n >= 2:
                checked += 1
                if not check_section_model(cat.thom_borel_section_model(n, conv)):
                    bad.append(f"thom-borel-sections:n={n}:{conv}")
    return Result(1, "d^2=0 on every catalog model", not bad,
                  f"{checked} models checked" + (f"; failing {bad}" if bad else ""))


def criterion_2(n_max=None) -> Result:
    bad = []
    other = 0
    for n in _ns(2, 4, n_max):
        for d in range(-2, 6):
            want = cat.sections_closed_form(n, d).to_json()
            if cat.sections_via_bs(n, d, PINNED_CONVENTION).to_json() != want:
                bad.append((n, d))
            if cat.sections_via_bs(n, d, SECTION_4 if PINNED_CONVENTION == SECTION_3 else SECTION_3).to_json() == want:
                other += 1
    ok = not bad and other == 0
    return Result(2, "section model equals closed form", ok,
                  f"convention {PINNED_CONVENTION}; mismatches {bad}; other convention matches {other}")


def criterion_3(n_max=None, convention=PINNED_CONVENTION) -> Result:
    bad = []
    for n in _ns(2, 3, n_max):
        S = cat.thom_borel_section_model(n, convention)
        rel_key = section_name("t", f"beta_{n + 1}")
        if S.relations.get(rel_key) != cat.sections_borel_relation(n):
            bad.append(f"n={n} relation {S.relations.get(rel_key)}")
        g = section_name("t", f"gamma_{2 * n + 1}")
        for d in range(-1, 5):
            eps = cat.degree_augmentation(S, d)
            comp = cat.component_model(S, eps)
            if comp.to_json() != cat.sections_borel(n, d).to_json():
                bad.append(f"n={n},d={d} differential")
            if eps[g] != (1 - d) ** (n + 1) - 1:
                bad.append(f"n={n},d={d} eps({g})={eps[g]}")
    shown = bad[:4] + (["..."] if len(bad) > 4 else [])
    return Result(3, "conjugation Borel model equals closed form", not bad,
                  f"convention {convention}; " + ("all terms match" if not bad
                                                  else f"{len(bad)} mismatches: " + "; ".join(shown)))


def criterion_4(n_max=None) -> Result:
    bad = []
    for n in _ns(2, 4, n_max):
        for d in range(-2, 7):
            dec = cat.orbit_iso_decision(n, d)
            if dec.iso != (d not in (0, 1, 2)):
                bad.append((n, d))
        psi = cat.orbit_map(n, 2, projective=True)
        for k in range(n):
            q = n - k + 1
            alive = bool(psi.images[cat.tb(k)])
            if alive != (q % 2 == 1) or (alive and (2 * q - 1) % 4 != 1):
                bad.append((n, 2, k))
    return Result(4, "orbit map iso exactly for d not in {0,1,2}", not bad,
                  f"window [0,2n+2]; failures {bad}")


def _exterior(degrees) -> CDGA:
    return CDGA([Generator(f"x_{k}", k) for k in degrees])


def expected_sections_betti(n: int, d: int, w) -> List[int]:
    if d == 1:
        ref = tensor(cat.cpn_model(n, truncated=True), _exterior(range(1, 2 * n, 2)))
    else:
        ref = _exterior(range(3, 2 * n + 2, 2))
    return betti_numbers(ref, w).as_list()


def criterion_5(n_max=None) -> Result:
    bad = []
    for n in _ns(2, 3, n_max):
        w = DegreeWindow(0, 2 * n + 2)
        for d in range(-2, 6):
            if betti_numbers(cat.sections_closed_form(n, d), w).as_list() != expected_sections_betti(n, d, w):
                bad.append((n, d))
    return Result(5, "component Betti numbers", not bad, f"d=-2..5; failures {bad}")


def criterion_6(n_max=None) -> Result:
    bad = []
    u1 = ((cat.U1, 2, 1),)
    for n in _ns(2, 4, n_max):
        for d in range(1, 7):
            want = (n + 1) * (d - 1) ** n
            closed = abs(cat.sections_closed_form(n, d).d_of(cat.tb(n)).coefficient(u1))
            engine = abs(cat.sections_via_bs(n, d, PINNED_CONVENTION).d_of(cat.tb(n)).coefficient(u1))
            if not closed == engine == want == cat.h1_torsion_order(n, d):
                bad.append((n, d))
    spot = cat.h1_torsion_order(2, 3)
    return Result(6, "H_1 torsion order", not bad and spot == 12, f"n=2,d=3 -> {spot}; failures {bad}")


def criterion_7(n_max=None) -> Result:
    bad = []
    for n in _ns(2, 5, n_max):
        for relative in (False, True):
            _, images = cat.eliminate_cbar(n, relative)
            for p in range(1, n):
                if images[f"cbar_{p}"] != cat.barc_closed_form(n, p, relative):
                    bad.append((n, p, relative))
    return Result(7, "elimination equals closed form", not bad, f"failures {bad}")


def criterion_8(n_max=None) -> Result:
    r = cat.combinatorial_identities_check(64)
    return Result(8, "combinatorial identities", r["ok"], f"{r['checked'][0]}+{r['checked'][1]} cases")


def criterion_9(n_max=None, dz_sign=PINNED_DZ_SIGN) -> Result:
    parts, ok = [], True
    for n in _ns(2, 3, n_max):
        good_signs = [s for s in gr2.DZ_SIGNS if check_chain_map(gr2.phi(n, s))]
        f = gr2.phi(n, dz_sign)
        chain = check_chain_map(f).ok
        rep = is_quasi_iso(f, DegreeWindow(0, 4 * n + 2))
        ok = ok and chain and rep.ok and good_signs == [dz_sign]
        parts.append(f"n={n} chain map {'ok' if chain else 'no'} (signs {good_signs}), "
                     f"quasi-iso failing degrees {rep.failing_degrees()}")
    return Result(9, f"Thom space map phi (dz sign {dz_sign})", ok, "; ".join(parts))


def _roots(r):
    import sympy
    return sympy.symbols(f"x1:{r + 1}")


def _poly_to_sympy(p: Polynomial, env):
    import sympy
    out = sympy.Integer(0)
    for m, coef in p.terms.items():
        t = sympy.Rational(coef.numerator, coef.denominator)
        for name, _, e in m:
            t *= env[name] ** e
        out += t
    return sympy.expand(out)


def splitting_oracle(max_rank: int = 4) -> List[tuple]:
    """Brute-force expansion over formal roots; returns the failing cases."""
    import sympy
    bad = []
    ell = sympy.Symbol("l")
    for r in range(1, max_rank + 1):
        xs = _roots(r)
        t = sympy.Symbol("T")
        total = sympy.Poly(sympy.prod([1 + x * t for x in xs]), t)
        chern = [total.coeff_monomial(t ** k) for k in range(1, r + 1)]
        env = {f"c_{k}": chern[k - 1] for k in range(1, r + 1)}
        env["l"] = ell
        cs = [cat.gen(f"c_{k}", 2 * k) for k in range(1, r + 1)]
        twisted = cat.chern_tensor_line(cs, r, cat.gen("l", 2))
        want = sympy.Poly(sympy.prod([1 + (x + ell) * t for x in xs]), t)
        for k in range(1, r + 1):
            if sympy.expand(_poly_to_sympy(twisted[k - 1], env) - want.coeff_monomial(t ** k)) != 0:
                bad.append(("tensor", r, k))
        ps, e = gr2.real_pontryagin_of_complex(cs, r)
        folded = gr2.real_pontryagin_folded(cs, r)
        sq = sympy.Poly(sympy.prod([1 + x ** 2 * t for x in xs]), t)
        for i in range(1, r + 1):
            want_p = sq.coeff_monomial(t ** i)
            if sympy.expand(_poly_to_sympy(ps[i - 1], env) - want_p) != 0:
                bad.append(("pontryagin", r, i))
            if sympy.expand(_poly_to_sympy(folded[i - 1], env) - want_p) != 0:
                bad.append(("folded", r, i))
        if sympy.expand(_poly_to_sympy(e, env) - sympy.prod(xs)) != 0:
            bad.append(("euler", r))
    return bad


def criterion_10(n_max=None) -> Result:
    bad = []
    for n in range(1, 9):
        for d in range(-10, 11):
            v = cat.characteristic_of_degree(n, d)
            if not isinstance(v, int):
                bad.append((n, d))
            elif d != 0:
                closed = Fraction((-1) ** (n - 1)) * ((d + 1) ** (n + 1) - 1 - (n + 1) * d) / d
                if closed != v:
                    bad.append((n, d))
    linear = all(cat.characteristic_of_degree(1, d) == d for d in range(1, 11))
    return Result(10, "characteristic of degree", not bad and linear,
                  f"n=1..8, d=-10..10; chi(1,d)=d: {linear}; failures {bad}")


def criterion_11(n_max=None) -> Result:
    bad = splitting_oracle(4)
    return Result(11, "splitting-principle oracles", not bad, f"ranks 1..4; failures {bad}")


CRITERIA: List[Callable[..., Result]] = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run(n_max: Optional[int] = None) -> List[Result]:
    return [c(n_max) for c in CRITERIA]


def render(results: List[Result]) -> str:
    return "\n".join(r.line() for r in results) + "\n"


def run_all(n_max: Optional[int] = None) -> List[Result]:
    """Criteria 1..11, then a second pass compared byte for byte (criterion 12)."""
    first = run(n_max)
    second = render(run(n_max))
    same = render(first) == second
    return first + [Result(12, "determinism", same,
                           "second run byte-identical" if same else "second run differs")]
