"""Oriented Grassmannian of 2-planes in R^2n, its Thom space, and the CP^n pullback.

Notation: e = ê_2 (deg 2), f = ē_(2n-2), x = s^-1 e_2n (deg 2n-1),
y = s^-1 p_(4n-4) (deg 4n-5).  Thom generators u, w_f, w_x, w_fx, z, v, t.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence

from .algebra import CDGA, Generator, Morphism, Polynomial, eliminate_pair
from .catalog import bso_model, desusp, gen
from .coalgebra import SECTION_3, cpn_namer, dualize
from .sections import RelativeModel, brown_szczarba

MINUS, PLUS = "minus", "plus"
DZ_SIGNS = (MINUS, PLUS)


def real_pontryagin_of_complex(cs: Sequence[Polynomial], n: int):
    """Pontryagin classes p_1..p_n and Euler class of the realification of a rank-n bundle.

    p_i = Σ_{k=0}^{2i} (-1)^(i+k) c_k c_(2i-k), with c_0 = 1 and c_k = 0 for k > n.
    """
    if len(cs) != n:
        raise ValueError(f"expected {n} Chern classes")
    full = [Polynomial.const(1)] + list(cs)

    def cc(k):
        return full[k] if 0 <= k <= n else Polynomial()

    ps = []
    for i in range(1, n + 1):
        ps.append(sum((cc(k) * cc(2 * i - k) * (-1) ** (i + k) for k in range(2 * i + 1)), Polynomial()))
    euler = full[n] if n else Polynomial.const(1)
    return ps, euler


def real_pontryagin_folded(cs: Sequence[Polynomial], n: int) -> List[Polynomial]:
    """Same classes as c_i^2 + 2 Σ_{j=max(0,2i-n)}^{i-1} (-1)^(i+j) c_j c_(2i-j)."""
    full = [Polynomial.const(1)] + list(cs)

    def cc(k):
        return full[k] if 0 <= k <= n else Polynomial()

    out = []
    for i in range(1, n + 1):
        acc = cc(i) * cc(i)
        for j in range(max(0, 2 * i - n), i):
            acc = acc + cc(j) * cc(2 * i - j) * (2 * (-1) ** (i + j))
        out.append(acc)
    return out


def p(n: int, i: int) -> Polynomial:
    """Pontryagin class p_(4i) of BSO(2n); p_0 = 1."""
    if i == 0:
        return Polynomial.const(1)
    if i < 0 or i > n - 1:
        return Polynomial()
    return gen(f"p_{4 * i}", 4 * i)


def euler(n: int) -> Polynomial:
    return gen(f"e_{2 * n}", 2 * n)


E, F, X, Y = "e", "f", "x", "y"


def _e():
    return gen(E, 2)


def _f(n):
    return gen(F, 2 * n - 2)


def pbar(n: int, i: int) -> Polynomial:
    if i == 0:
        return Polynomial.const(1)
    if i < 0 or i > n - 2:
        return Polynomial()
    return gen(f"pbar_{4 * i}", 4 * i)


def iota(n: int) -> Morphism:
    """BSO(2) x BSO(2n-2) -> BSO(2n) on models."""
    src = bso_model(n)
    tgt = CDGA([Generator(E, 2), Generator(F, 2 * n - 2)]
               + [Generator(f"pbar_{4 * i}", 4 * i) for i in range(1, n - 1)], name="BSO(2)xBSO(2n-2)")
    images = {}
    for i in range(1, n):
        if i == n - 1:
            images[f"p_{4 * i}"] = _f(n) ** 2 + pbar(n, n - 2) * _e() ** 2
        else:
            images[f"p_{4 * i}"] = pbar(n, i) + pbar(n, i - 1) * _e() ** 2
    images[f"e_{2 * n}"] = _f(n) * _e()
    return Morphism(src, tgt, images, name="iota")


def dy_gr2(n: int) -> Polynomial:
    return _f(n) ** 2 - sum((_e() ** (2 * j) * p(n, n - 1 - j) * (-1) ** j for j in range(n)), Polynomial())


def gr2_borel(n: int) -> RelativeModel:
    base = bso_model(n)
    fiber = [Generator(Y, 4 * n - 5), Generator(X, 2 * n - 1), Generator(F, 2 * n - 2), Generator(E, 2)]
    total = CDGA(fiber + list(base.generators),
                 {Y: dy_gr2(n), X: _e() * _f(n) - euler(n)}, name="Gr2 Borel")
    return RelativeModel(base, total, [g.name for g in fiber], name="gr2-borel")


def gr2_raw(n: int) -> CDGA:
    """Homogeneous-space Borel model Λ(s^-1 W) ⊗ BSO(2)xBSO(2n-2) ⊗ BSO(2n), d(s^-1 w) = ι(w) - w."""
    i = iota(n)
    gens = list(i.target.generators) + list(i.source.generators)
    gens += [Generator(desusp(g.name), g.degree - 1) for g in i.source.generators]
    diff = {desusp(g.name): i.images[g.name] - i.source.gen(g.name) for g in i.source.generators}
    return CDGA(gens, diff, name="Gr2 raw")


def gr2_borel_by_elimination(n: int) -> CDGA:
    A = gr2_raw(n)
    for i in range(1, n - 1):
        A, _ = eliminate_pair(A, desusp(f"p_{4 * i}"), f"pbar_{4 * i}")
    ren = {desusp(f"p_{4 * (n - 1)}"): Y, desusp(f"e_{2 * n}"): X}
    gens = [Generator(ren.get(g.name, g.name), g.degree) for g in A.generators]
    diff = {ren.get(k, k): v for k, v in A.differential.items()}
    return CDGA(gens, diff, name="Gr2 Borel")


THOM_DEGREES = lambda n: {"u": 2, "w_f": 2 * n, "w_x": 2 * n + 1, "w_fx": 4 * n - 1,
                          "z": 4 * n - 1, "v": 4 * n, "t": 4 * n + 1}


def _dz_sign(dz_sign: str) -> int:
    if dz_sign not in DZ_SIGNS:
        raise ValueError(f"gr2 dz sign must be one of {DZ_SIGNS}")
    return -1 if dz_sign == MINUS else 1


def _thom_fiber(n: int, dz_sign: str, euler_class: Polynomial, pont) -> Dict[str, Polynomial]:
    deg = THOM_DEGREES(n)
    g = {k: gen(k, v) for k, v in deg.items()}
    s = _dz_sign(dz_sign)
    dz = g["w_f"] ** 2 + sum((pont(n - 1 - j) * g["u"] ** (2 * j + 2) * (-1) ** j for j in range(n)),
                             Polynomial()) * s
    return {
        "w_x": g["u"] * g["w_f"] - g["u"] * euler_class,
        "w_fx": g["w_f"] ** 2 - g["w_f"] * euler_class,
        "z": dz,
        "v": g["w_f"] * g["w_x"] - g["u"] * g["w_fx"],
        "t": g["u"] * dz,
    }


def thom_minimal(n: int, dz_sign: str = MINUS, relative: bool = True) -> CDGA:
    """ΛV; relative over the BSO(2n) model, or with p and e_2n set to zero."""
    deg = THOM_DEGREES(n)
    gens = [Generator(k, v) for k, v in deg.items()]
    if relative:
        diff = _thom_fiber(n, dz_sign, euler(n), lambda i: p(n, i))
        return CDGA(gens + list(bso_model(n).generators), diff, name="Gr2 Thom minimal")
    diff = _thom_fiber(n, dz_sign, Polynomial(), lambda i: Polynomial.const(1) if i == 0 else Polynomial())
    return CDGA(gens, diff, name="Gr2 Thom minimal")


def _in_ideal_or_base(base_names):
    base_names = set(base_names)

    def keep(m) -> bool:
        return any(f[0] == E for f in m) or all(f[0] in base_names for f in m)

    return keep


def thom_ideal(n: int, relative: bool = True) -> CDGA:
    """𝒜[e] ⊕ base: monomials divisible by e, plus the base (or Q)."""
    A = gr2_borel(n).total
    if not relative:
        A = A.set_zero(bso_model(n).names)
        return CDGA(A.generators, A.differential, basis_filter=_in_ideal_or_base(()),
                    name="Gr2 Thom ideal")
    return CDGA(A.generators, A.differential, basis_filter=_in_ideal_or_base(bso_model(n).names),
                name="Gr2 Thom ideal")


def phi(n: int, dz_sign: str = MINUS, relative: bool = True) -> Morphism:
    src = thom_minimal(n, dz_sign, relative)
    tgt = thom_ideal(n, relative)
    e, f, x, y = _e(), _f(n), gen(X, 2 * n - 1), gen(Y, 4 * n - 5)
    images = {"u": e, "w_f": e * f, "w_x": e * x, "w_fx": e * f * x, "z": e ** 2 * y,
              "v": Polynomial(), "t": e ** 3 * y}
    if relative:
        images.update({g: tgt.gen(g) for g in bso_model(n).names})
    return Morphism(src, tgt, images, name="phi")


def tangent_pontryagin(n: int) -> List[Polynomial]:
    """p_(4i)(TCP^n) = C(n+1, i) b^(2i), i = 0..n-1."""
    b = gen("b", 2)
    return [b ** (2 * i) * comb(n + 1, i) for i in range(n)]


def over_cpn(n: int, dz_sign: str = MINUS, pontryagin: Optional[Sequence[Polynomial]] = None) -> RelativeModel:
    """Relative model of the Thom-space bundle pulled back to CP^n along TCP^n."""
    b = gen("b", 2)
    pont = list(pontryagin) if pontryagin is not None else tangent_pontryagin(n)
    if len(pont) != n:
        raise ValueError(f"expected {n} Pontryagin classes p_0..p_(4(n-1))")
    base = CDGA([Generator("b", 2), Generator("y", 2 * n + 1)], {"y": b ** (n + 1)}, name=f"CP^{n}")
    diff = _thom_fiber(n, dz_sign, b ** n * (n + 1), lambda i: pont[i])
    deg = THOM_DEGREES(n)
    total = CDGA([Generator(k, v) for k, v in deg.items()] + list(base.generators),
                 {**diff, "y": base.d_of("y")}, name="Gr2 Thom over CP^n")
    return RelativeModel(base, total, list(deg), name="gr2-over-cpn")


@dataclass
class Gr2Models:
    borel: RelativeModel
    iota: Morphism
    thom_minimal: CDGA
    thom_ideal: CDGA
    phi: Morphism
    over_cpn: RelativeModel


def gr2_models(n: int, dz_sign: str = MINUS, relative: bool = True) -> Gr2Models:
    if n < 2:
        raise ValueError("Gr2 models need n >= 2")
    f = phi(n, dz_sign, relative)
    return Gr2Models(gr2_borel(n), iota(n), f.source, f.target, f, over_cpn(n, dz_sign))


def smooth_section_window(n: int):
    return (0, max(THOM_DEGREES(n).values()) + 1)


def smooth_section_model(n: int, convention: str = SECTION_3, dz_sign: str = MINUS):
    """Section-space model of the Thom-space bundle over CP^n."""
    R = over_cpn(n, dz_sign)
    return brown_szczarba(R, dualize(R.base, smooth_section_window(n), cpn_namer(n)), convention=convention)
