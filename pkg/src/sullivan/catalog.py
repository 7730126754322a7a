"""Named models, maps and closed-form invariants for the CP^n families.

Every model here has an independent second construction somewhere in the
package (elimination, ideal restriction, section-space machinery); the
acceptance suite compares the two.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence

from .algebra import CDGA, Generator, Morphism, Polynomial, eliminate_pair
from .coalgebra import SECTION_3, cpn_namer, dualize
from .homology import DegreeWindow, betti_numbers, is_quasi_iso
from .sections import (Augmentation, RelativeModel, SectionModel, brown_szczarba, component_model,
                       conjugation_borel, evaluation_map_model, extend_augmentation,
                       pushforward_p_beta, section_name)


def gen(name: str, degree: int) -> Polynomial:
    return Polynomial.mono(((name, degree, 1),))


def c(q: int) -> Polynomial:
    """Chern class c_q of BU(n+1); c_0 = 1."""
    if q == 0:
        return Polynomial.const(1)
    return gen(f"c_{q}", 2 * q)


def w_generators(n: int) -> List[Generator]:
    return [Generator(f"c_{q}", 2 * q) for q in range(1, n + 2)]


def desusp(name: str) -> str:
    return f"s^-1 {name}"


# classifying spaces and CP^n

def bu_model(n: int) -> CDGA:
    return CDGA([Generator(f"c_{q}", 2 * q) for q in range(1, n + 1)], name=f"BU({n})")


def bso_model(n: int) -> CDGA:
    gens = [Generator(f"p_{4 * i}", 4 * i) for i in range(1, n)] + [Generator(f"e_{2 * n}", 2 * n)]
    return CDGA(gens, name=f"BSO({2 * n})")


def cpn_model(n: int, truncated: bool = False) -> CDGA:
    """Λ(b, y) with d(y) = b^(n+1), or the formal model Q[b]/b^(n+1)."""
    if truncated:
        return CDGA([Generator("b", 2)], truncation={"b": n + 1}, name=f"H(CP^{n})")
    return CDGA([Generator("b", 2), Generator("y", 2 * n + 1)], {"y": gen("b", 2) ** (n + 1)},
                name=f"CP^{n}")


def unitary_model(n: int, skip_first: bool = False) -> CDGA:
    """Λ(s^-1 c_1, ..., s^-1 c_n), zero differential; without s^-1 c_1 for PU(n)."""
    start = 2 if skip_first else 1
    return CDGA([Generator(desusp(f"c_{q}"), 2 * q - 1) for q in range(start, n + 1)],
                name=f"{'P' if skip_first else ''}U({n})")


# characteristic classes

def chern_tensor_line(cs: Sequence[Polynomial], r: int, ell: Polynomial) -> List[Polynomial]:
    """Chern classes c_1..c_r of E⊗L from those of E (rank r) and c_1(L)."""
    if len(cs) != r:
        raise ValueError(f"expected {r} Chern classes, got {len(cs)}")
    full = [Polynomial.const(1)] + list(cs)
    return [sum((full[i] * ell ** (p - i) * comb(r - i, p - i) for i in range(p + 1)), Polynomial())
            for p in range(1, r + 1)]


def whitney(c1: Sequence[Polynomial], c2: Sequence[Polynomial]) -> List[Polynomial]:
    """Chern classes of a direct sum: the degree parts of (1 + Σ c1)(1 + Σ c2)."""
    a = [Polynomial.const(1)] + list(c1)
    b = [Polynomial.const(1)] + list(c2)
    out = []
    for p in range(1, len(a) + len(b) - 1):
        out.append(sum((a[i] * b[p - i] for i in range(p + 1) if i < len(a) and p - i < len(b)),
                       Polynomial()))
    return out


CHAT, CCHECK = "chat", "ccheck"


def chat() -> Polynomial:
    return gen(CHAT, 2)


def ccheck() -> Polynomial:
    return gen(CCHECK, 2)


def cbar(n: int, i: int) -> Polynomial:
    if i == 0:
        return Polynomial.const(1)
    if i < 0 or i > n - 1:
        return Polynomial()
    return gen(f"cbar_{i}", 2 * i)


def h_images(n: int) -> Dict[str, Polynomial]:
    """h(c_p) = Σ_i C(n+1-i, p-i) ĉ^(p-i) (c̄_i + č c̄_(i-1))."""
    out = {}
    for p in range(1, n + 2):
        out[f"c_{p}"] = sum((chat() ** (p - i) * (cbar(n, i) + ccheck() * cbar(n, i - 1))
                             * comb(n + 1 - i, p - i) for i in range(p + 1)), Polynomial())
    return out


def h_images_composite(n: int) -> Dict[str, Polynomial]:
    """Same map rebuilt as L1 ⊕ L1⊗(L2 ⊕ E) from the tensor and Whitney formulas."""
    e_prime = whitney([ccheck()], [cbar(n, i) for i in range(1, n)])[:n]
    twisted = chern_tensor_line(e_prime, n, chat())
    total = whitney([chat()], twisted)
    return {f"c_{p}": total[p - 1] for p in range(1, n + 2)}


def _hat_check_cbar(n: int) -> List[Generator]:
    return [Generator(CHAT, 2), Generator(CCHECK, 2)] + [Generator(f"cbar_{i}", 2 * i) for i in range(1, n)]


def h_map(n: int) -> Morphism:
    if n < 2:
        raise ValueError("h_map needs n >= 2")
    src = bu_model(n + 1)
    tgt = CDGA(_hat_check_cbar(n), name="BU(1)xBU(1)xBU(n-1)")
    return Morphism(src, tgt, h_images(n), name="h")


def gr1c_raw(n: int, relative: bool = False) -> CDGA:
    """Homogeneous-space model before removing the contractible pairs."""
    gens = [Generator(desusp(f"c_{p}"), 2 * p - 1) for p in range(1, n + 2)] + _hat_check_cbar(n)
    h = h_images(n)
    diff = {}
    for p in range(1, n + 2):
        diff[desusp(f"c_{p}")] = h[f"c_{p}"] - (c(p) if relative else 0)
    if relative:
        gens += w_generators(n)
    return CDGA(gens, diff, name="Gr1C raw" + (" Borel" if relative else ""))


def eliminate_cbar(n: int, relative: bool = False):
    """Cancel (s^-1 c_p, c̄_p) for p = 1..n-1; returns the reduced model and c̄_p images."""
    A = gr1c_raw(n, relative)
    images = {f"cbar_{p}": A.gen(f"cbar_{p}") for p in range(1, n)}
    for p in range(1, n):
        A, rho = eliminate_pair(A, desusp(f"c_{p}"), f"cbar_{p}")
        images = {k: rho(v) for k, v in images.items()}
    return A, images


def barc_closed_form(n: int, p: int, relative: bool = False) -> Polynomial:
    if not 1 <= p < n:
        raise ValueError("barc_closed_form needs 1 <= p < n")
    sign = -1 if p % 2 else 1
    if not relative:
        return sum((chat() ** j * ccheck() ** (p - j) * comb(n + 1, j) for j in range(p + 1)),
                   Polynomial()) * sign
    out = Polynomial()
    for q in range(p + 1):
        inner = sum((chat() ** i * ccheck() ** (p - q - i) * comb(n - q + 1, i)
                     for i in range(p - q + 1)), Polynomial())
        out = out + c(q) * inner * (-1 if q % 2 else 1)
    return out * sign


def combinatorial_identities_check(n_max: int = 64) -> dict:
    if n_max > 64:
        raise ValueError("n_max is capped at 64")
    first = second = 0
    bad = []
    for n in range(n_max + 1):
        for k in range(n + 1):
            for j in range(n - k + 1):
                first += 1
                if comb(n, k) * comb(n - k, j) != comb(n, k + j) * comb(k + j, j):
                    bad.append(("product", n, k, j))
    for p in range(1, n_max + 1):
        second += 1
        if sum((-1) ** i * comb(p, i) for i in range(p + 1)) != 0:
            bad.append(("alternating", p))
    return {"ok": not bad, "checked": [first, second], "failures": bad}


@dataclass
class Gr1CModels:
    absolute: CDGA
    borel: RelativeModel


def gr1c_models(n: int) -> Gr1CModels:
    """Closed-form minimal models of Gr_1^C(TCP^n) and of its Borel construction."""
    if n < 2:
        raise ValueError("gr1c_models needs n >= 2")
    gens = [Generator(desusp(f"c_{n}"), 2 * n - 1), Generator(desusp(f"c_{n + 1}"), 2 * n + 1),
            Generator(CCHECK, 2), Generator(CHAT, 2)]
    sn = (-1) ** n
    d1 = sum((chat() ** j * ccheck() ** (n - j) * comb(n + 1, j) for j in range(n + 1)),
             Polynomial()) * sn
    d2 = (chat() ** (n + 1) * n + sum((chat() ** (j + 1) * ccheck() ** (n - j) * comb(n + 1, j)
                                       for j in range(n)), Polynomial())) * (-sn)
    absolute = CDGA(gens, {desusp(f"c_{n}"): d1, desusp(f"c_{n + 1}"): d2}, name="Gr1C(TCP^n)")
    d3 = Polynomial()
    d4 = Polynomial()
    for q in range(n + 1):
        inner = sum((chat() ** j * ccheck() ** (n - q - j) * comb(n - q + 1, j)
                     for j in range(n - q + 1)), Polynomial())
        d3 = d3 + c(q) * inner * (-1) ** (n + q - 1)
    for q in range(n + 2):
        inner = chat() ** (n - q + 1) * (n - q) + sum(
            (chat() ** (j + 1) * ccheck() ** (n - q - j) * comb(n - q + 1, j) for j in range(n - q)),
            Polynomial())
        d4 = d4 + c(q) * inner * (-1) ** (n + q + 1)
    base = CDGA(w_generators(n), name="BU(n+1)")
    total = CDGA(gens + w_generators(n), {desusp(f"c_{n}"): d3, desusp(f"c_{n + 1}"): d4},
                 name="Gr1C(TCP^n) Borel")
    return Gr1CModels(absolute, RelativeModel(base, total, [g.name for g in gens], name="gr1c-borel"))


def gr1c_over_cpn(n: int) -> RelativeModel:
    """Λ(b,y)⊗ΛW -> Λ(a,x,b,y)⊗ΛW via b = ĉ, a = č, x = ±s^-1 c_n, y = ±(s^-1 c_(n+1) - ĉ s^-1 c_n)."""
    B = gr1c_models(n).borel.total
    sn = (-1) ** n
    d3 = B.d_of(desusp(f"c_{n}"))
    d4 = B.d_of(desusp(f"c_{n + 1}"))
    ren = {CHAT: gen("b", 2), CCHECK: gen("a", 2)}
    dx = d3.substitute(ren) * sn
    dy = (d4 - chat() * d3).substitute(ren) * sn
    base = CDGA([Generator("b", 2), Generator("y", 2 * n + 1)] + w_generators(n), {"y": dy},
                name="CP^n Borel")
    total = CDGA([Generator("a", 2), Generator("x", 2 * n - 1), Generator("b", 2),
                  Generator("y", 2 * n + 1)] + w_generators(n), {"x": dx, "y": dy},
                 name="Gr1C(TCP^n)->CP^n Borel")
    return RelativeModel(base, total, ["a", "x"], group=[f"c_{q}" for q in range(1, n + 2)],
                         name="gr1c-over-cpn")


# Thom space models over CP^n

@dataclass
class ThomModels:
    rel: RelativeModel
    borel: RelativeModel


def thom_dt(n: int, alternating_sign: bool = False) -> Polynomial:
    b, u = gen("b", 2), gen("u", 2)
    s = (-1) ** n if alternating_sign else -1
    return sum((b ** i * u ** (n - i + 1) * comb(n + 1, i) for i in range(n + 1)), Polynomial()) * s


def thom_complex_models(n: int, alternating_sign: bool = False) -> ThomModels:
    """Relative models of P_1(TCP^n) -> CP^n and of its Borel construction.

    d(t) = -Σ_{i<=n} C(n+1,i) b^i u^(n-i+1) is the sign produced by the
    ideal (u = a, t = a·x); ``alternating_sign`` uses (-1)^n instead.
    """
    if n < 1:
        raise ValueError("thom_complex_models needs n >= 1")
    b, u = gen("b", 2), gen("u", 2)
    base = cpn_model(n)
    fiber = [Generator("u", 2), Generator("t", 2 * n + 1)]
    total = CDGA(fiber + list(base.generators), {"y": base.d_of("y"), "t": thom_dt(n, alternating_sign)},
                 name="Thom rel")
    rel = RelativeModel(base, total, ["u", "t"], name="thom-rel")
    dy = sum((c(q) * b ** (n + 1 - q) * (-1) ** q for q in range(n + 2)), Polynomial())
    dt = Polynomial()
    for q in range(n + 1):
        inner = sum((b ** j * u ** (n - q - j + 1) * comb(n - q + 1, j) for j in range(n - q + 1)),
                    Polynomial())
        dt = dt + c(q) * inner * (-1) ** (q - 1)
    bbase = CDGA(list(base.generators) + w_generators(n), {"y": dy}, name="CP^n Borel")
    btotal = CDGA(fiber + list(bbase.generators), {"y": dy, "t": dt}, name="Thom Borel")
    borel = RelativeModel(bbase, btotal, ["u", "t"], group=[f"c_{q}" for q in range(1, n + 2)],
                          name="thom-borel")
    return ThomModels(rel, borel)


def thom_from_ideal(n: int) -> RelativeModel:
    """Thom model as the subalgebra generated by u = a and t = a·x."""
    G = gr1c_over_cpn(n)
    a = gen("a", 2)
    dt = (a * G.total.d_of("x")).substitute({"a": gen("u", 2)})
    base = G.base
    fiber = [Generator("u", 2), Generator("t", 2 * n + 1)]
    total = CDGA(fiber + list(base.generators), {**base.differential, "t": dt}, name="Thom Borel")
    return RelativeModel(base, total, ["u", "t"], group=G.group, name="thom-ideal")


# section spaces

def section_window(n: int) -> DegreeWindow:
    return DegreeWindow(0, 2 * n + 2)


def thom_coalgebra(R: RelativeModel, n: int):
    return dualize(R.base, section_window(n), cpn_namer(n))


def thom_section_model(n: int, convention: str = SECTION_3, alternating_sign: bool = False) -> SectionModel:
    R = thom_complex_models(n, alternating_sign).rel
    return brown_szczarba(R, thom_coalgebra(R, n), convention=convention)


def degree_augmentation(S: SectionModel, d: int) -> Augmentation:
    return extend_augmentation(S, {section_name("u", "beta_1"): d})


def sections_via_bs(n: int, d: int, convention: str = SECTION_3, alternating_sign: bool = False) -> CDGA:
    S = thom_section_model(n, convention, alternating_sign)
    return component_model(S, degree_augmentation(S, d))


U1 = section_name("u", "1")


def tb(j: int) -> str:
    return section_name("t", "1" if j == 0 else f"beta_{j}")


def sections_closed_form(n: int, d: int) -> CDGA:
    gens = [Generator(U1, 2)] + [Generator(tb(j), 2 * n + 1 - 2 * j) for j in range(n + 1)]
    U = gen(U1, 2)
    diff = {tb(j): U ** (n - j + 1) * (-comb(n + 1, j) * (d - 1) ** j) for j in range(n + 1)}
    return CDGA(gens, {k: v for k, v in diff.items() if v}, name=f"sections n={n} d={d}")


def explicit_pu_cocycles(n: int, d: int, reversed_binomial: bool = False) -> List[Polynomial]:
    """Cocycles x_{2(n-j)+1}, j = 0..n-1, of sections_closed_form(n, d).

    The default coefficient C(n+1,j)(d-1)^(j-n)/(n+1) is the one that makes
    d(x) vanish; ``reversed_binomial=True`` uses C(n+1,n-j)/(n+1).
    """
    if d == 1:
        raise ValueError("explicit_pu_cocycles needs d != 1")
    U = gen(U1, 2)
    out = []
    for j in range(n):
        if reversed_binomial:
            coef = Fraction(comb(n + 1, n - j), n + 1)
        else:
            coef = Fraction(comb(n + 1, j), n + 1) * Fraction(d - 1) ** (j - n)
        out.append(gen(tb(j), 2 * n + 1 - 2 * j) - U ** (n - j) * gen(tb(n), 1) * coef)
    return out


def sections_borel(n: int, d: int) -> CDGA:
    """Closed-form relative model of U(n+1) acting on the degree-d component."""
    if n < 2:
        raise ValueError("sections_borel needs n >= 2")
    A = sections_closed_form(n, d)
    U = gen(U1, 2)
    diff = {}
    for k in range(n + 1):
        acc = Polynomial()
        for q in range(n + 1):
            e = n - q - k + 1
            if e < 0:
                continue
            s = sum(((-1) ** (j + 1) * comb(k, j) * Fraction(d) ** (k - j) for j in range(min(k, n - q) + 1)),
                    Fraction(0))
            acc = acc + c(q) * U ** e * ((-1) ** (q - 1) * comb(n - q + 1, k) * s)
        acc = acc * (-1) ** n
        acc = acc + c(n - k + 1) * ((1 - d) ** (n + 1) - 1)
        diff[tb(k)] = acc
    gens = list(A.generators) + w_generators(n)
    return CDGA(gens, {k: v for k, v in diff.items() if v}, name=f"sections Borel n={n} d={d}")


def sections_borel_relation(n: int) -> Polynomial:
    """Closed-form degree-0 relation 1 - (1 - u⊗β_1)^(n+1) + t⊗γ_(2n+1)."""
    e = gen(section_name("u", "beta_1"), 0)
    g = gen(section_name("t", f"gamma_{2 * n + 1}"), 0)
    return Polynomial.const(1) - (Polynomial.const(1) - e) ** (n + 1) + g


def thom_borel_section_model(n: int, convention: str = SECTION_3) -> SectionModel:
    R = thom_complex_models(n).borel
    C = dualize(R.base, section_window(n), cpn_namer(n))
    return conjugation_borel(R, C, convention=convention)


def sections_borel_via_conjugation(n: int, d: int, convention: str = SECTION_3):
    """(component model, augmentation, section model) of the conjugation Borel model."""
    S = thom_borel_section_model(n, convention)
    eps = degree_augmentation(S, d)
    return component_model(S, eps), eps, S


# orbit map

def orbit_coefficient(n: int, d: int, k: int) -> int:
    return (1 - d) ** (n + 1) - (1 - d) ** k


def orbit_map(n: int, d: int, projective: bool = False, coefficient=None) -> Morphism:
    """Ψ(u⊗1) = 0, Ψ(t⊗β_k) = ((1-d)^(n+1) - (1-d)^k) s^-1 c_(n-k+1).

    ``projective`` drops s^-1 c_1 from the target (PU(n+1)); ``coefficient``
    overrides the scalar, for negative checks.
    """
    src = sections_closed_form(n, d)
    tgt = unitary_model(n + 1, skip_first=projective)
    coef = coefficient or orbit_coefficient
    images = {U1: Polynomial()}
    for k in range(n + 1):
        q = n - k + 1
        if projective and q == 1:
            images[tb(k)] = Polynomial()
        else:
            images[tb(k)] = gen(desusp(f"c_{q}"), 2 * q - 1) * coef(n, d, k)
    return Morphism(src, tgt, images, name="orbit")


def borel_compatible(psi: Morphism, n: int, d: int) -> dict:
    """Compare Ψ(t⊗β_k) with the c_(n-k+1) coefficient of d(t⊗β_k) at u⊗1 = 0."""
    A = sections_borel(n, d)
    bad = {}
    for k in range(n + 1):
        q = n - k + 1
        kappa = A.d_of(tb(k)).substitute({U1: Polynomial()}).coefficient(((f"c_{q}", 2 * q, 1),))
        target = desusp(f"c_{q}")
        got = psi.images[tb(k)].coefficient(((target, 2 * q - 1, 1),)) if psi.target.has(target) else None
        if got is not None and got != kappa:
            bad[tb(k)] = {"expected": kappa, "got": got}
    return {"ok": not bad, "failures": bad}


@dataclass
class OrbitDecision:
    iso: bool
    kernel_degrees: List[int]
    by_coefficients: bool
    report: object = None


def orbit_iso_decision(n: int, d: int) -> OrbitDecision:
    psi = orbit_map(n, d, projective=True)
    rep = is_quasi_iso(psi, DegreeWindow(0, 2 * n + 2))
    by_coef = d != 1 and all(orbit_coefficient(n, d, k) != 0 for k in range(n))
    return OrbitDecision(rep.ok, rep.kernel_degrees(), by_coef, rep)


# closed-form invariants

def h1_torsion_order(n: int, d: int) -> int:
    if d < 1:
        raise ValueError("h1_torsion_order needs d >= 1")
    return abs((n + 1) * (d - 1) ** n)


def characteristic_of_degree(n: int, d: int) -> int:
    s = 1 if (n - 1) % 2 == 0 else -1
    return s * sum(comb(n + 1, k) * d ** (k - 1) for k in range(2, n + 2))


# pushforward cochains

@dataclass
class EtaClasses:
    n: int
    convention: str
    eta_u: Polynomial
    eta_t: Dict[int, Polynomial]
    eta: Dict[int, Polynomial]
    kappa_u: Polynomial


def eta_classes(n: int, d: Optional[int] = None, convention: str = SECTION_3) -> EtaClasses:
    """η cochains built from pushforwards of the evaluation map.

    η_u = -p_{β_0}(u), η_{t,j} = (-1)^(j+1) p_{β_j}(t) and
    η_{2n+1-2j} = (n+1) η_{t,j} - C(n+1,n-j) κ_u^(n-j) η_{t,n}, with κ_u = η_u
    the image of u⊗1.  With ``d`` the degree-0 generators are evaluated.
    """
    R = thom_complex_models(n).rel
    C = thom_coalgebra(R, n)
    S = brown_szczarba(R, C, convention=convention)
    ev = evaluation_map_model(S, R, C)
    base = R.base.names
    subst = {}
    if d is not None:
        subst = {k: Polynomial.const(v) for k, v in degree_augmentation(S, d).values.items()}

    def p(v: str, j: int) -> Polynomial:
        beta = (("b", 2, j),) if j else ()
        return pushforward_p_beta(ev.images[v], beta, base).substitute(subst)

    eta_u = -p("u", 0)
    eta_t = {j: p("t", j) * (-1) ** (j + 1) for j in range(n + 1)}
    kappa = eta_u
    eta = {2 * n + 1 - 2 * j: eta_t[j] * (n + 1) - kappa ** (n - j) * eta_t[n] * comb(n + 1, n - j)
           for j in range(n)}
    return EtaClasses(n, convention, eta_u, eta_t, eta, kappa)


# reports

@dataclass
class InvariantReport:
    n: int
    d: int
    h1_torsion_order: Optional[int]
    betti: object
    orbit_iso: bool
    orbit_kernel_degrees: List[int]
    characteristic: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "h1TorsionOrder": self.h1_torsion_order,
            "orbitIso": self.orbit_iso,
            "orbitKernelDegrees": self.orbit_kernel_degrees,
            "characteristic": self.characteristic,
            "betti": self.betti.nonzero(),
            "bettiWindow": self.betti.to_dict(),
        }


def invariant_report(n: int, d: int, window=None) -> InvariantReport:
    w = window or DegreeWindow(0, 2 * n + 2)
    dec = orbit_iso_decision(n, d)
    return InvariantReport(
        n=n, d=d,
        h1_torsion_order=h1_torsion_order(n, d) if d >= 1 else None,
        betti=betti_numbers(sections_closed_form(n, d), w),
        orbit_iso=dec.iso,
        orbit_kernel_degrees=dec.kernel_degrees,
        characteristic=characteristic_of_degree(n, d),
    )
