"""Models of section spaces and of the conjugation action on them.

Section generators are named ``"v(x)beta"`` where ``beta`` is the name the
coalgebra gives to a dual basis element (``"1"`` for the counit dual).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (CDGA, ONE, AlgebraError, Generator, Monomial, Morphism, Polynomial,
                      check_chain_map, mono_degree, mono_mul, tensor)
from .coalgebra import SECTION_3, Coalgebra, alpha_sign, divide, splittings
from .homology import DegreeWindow, as_window, basis_in_degree


class SectionError(ValueError):
    pass


class InconsistentAugmentation(SectionError):
    def __init__(self, generator: str, residue):
        super().__init__(f"augmentation violates the relation d({generator}) = 0 (value {residue})")
        self.generator = generator
        self.residue = residue


class RelativeModel:
    """``base -> total`` with fiber generators ``fiber``.

    ``group`` lists base generators that model a classifying space BG; they
    pass through section constructions untouched instead of being capped.
    """

    def __init__(self, base: CDGA, total: CDGA, fiber: Sequence[str], group: Sequence[str] = (),
                 name: str = ""):
        self.base = base
        self.total = total
        self.fiber = [g for g in total.names if g in set(fiber)]
        self.group = list(group)
        self.name = name
        missing = set(fiber) - set(total.names)
        if missing:
            raise AlgebraError(f"fiber generators {sorted(missing)} not in total algebra")
        for g in base.generators:
            if not total.has(g.name) or total.degree_of(g.name) != g.degree:
                raise AlgebraError(f"base generator {g.name} missing from total algebra")
            if base.d_of(g.name) != total.d_of(g.name):
                raise AlgebraError(f"base is not a sub-CDGA at {g.name}")
        if set(self.fiber) | set(base.names) != set(total.names):
            raise AlgebraError("total generators must be base plus fiber")

    def fiber_model(self) -> CDGA:
        return self.total.set_zero(self.base.names)

    def restrict_group(self) -> "RelativeModel":
        """Setting the group generators to zero."""
        if not self.group:
            return self
        return RelativeModel(self.base.set_zero(self.group), self.total.set_zero(self.group),
                             self.fiber, (), self.name)

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict(), "fiber": list(self.fiber), "group": list(self.group),
                "total": self.total.to_dict()}


def section_name(v: str, beta_name: str) -> str:
    return f"{v}(x){beta_name}"


@dataclass
class SectionModel:
    """Λ(V⊗B_*)/K, optionally tensored with the group generators.

    ``algebra`` holds every generator of degree >= 0; ``relations`` maps each
    degree -1 generator to its (degree 0) differential, which K sets to zero.
    """

    algebra: CDGA
    relations: Dict[str, Polynomial]
    window: DegreeWindow
    convention: str
    source: Optional[RelativeModel] = None
    keys: Dict[str, Tuple[str, Monomial]] = field(default_factory=dict)

    def degree_zero(self) -> List[str]:
        return [g.name for g in self.algebra.generators if g.degree == 0]

    def gen(self, name: str) -> Polynomial:
        return self.algebra.gen(name)

    def d_of(self, name: str) -> Polynomial:
        if name in self.relations:
            return self.relations[name]
        return self.algebra.d_of(name)

    def to_dict(self) -> dict:
        out = self.algebra.to_dict()
        out["relations"] = {k: self.relations[k].to_json() for k in sorted(self.relations)}
        prov = {"window": self.window.to_list(), "signConvention": self.convention}
        if self.source is not None:
            prov["base"] = self.source.base.to_dict()
            prov["fiber"] = list(self.source.fiber)
        out["provenance"] = prov
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


class _Builder:
    def __init__(self, R: RelativeModel, C: Coalgebra, convention: str):
        self.R = R
        self.C = C
        self.convention = convention
        self.fiber = set(R.fiber)
        self.group = set(R.group)
        self.base_only = set(R.base.names) - self.group
        self.cache: Dict[Tuple[Monomial, Monomial], Polynomial] = {}

    def beta_ok(self, beta: Monomial) -> bool:
        return all(f[0] in self.base_only for f in beta)

    def gen(self, v: str, beta: Monomial) -> Optional[Tuple[str, int]]:
        deg = self.R.total.degree_of(v) - mono_degree(beta)
        if deg < 0:
            return None
        return section_name(v, self.C.name(beta)), deg

    def gen_poly(self, v: str, beta: Monomial) -> Polynomial:
        g = self.gen(v, beta)
        if g is None:
            return Polynomial()
        return Polynomial.mono(((g[0], g[1], 1),))

    def normal_form(self, p: Polynomial, beta: Monomial) -> Polynomial:
        out = Polynomial()
        for m, c in p.terms.items():
            key = (m, beta)
            nf = self.cache.get(key)
            if nf is None:
                nf = self.cache[key] = self._monomial(m, beta)
            if nf:
                out = out + nf * c
        return out

    def _monomial(self, m: Monomial, beta: Monomial) -> Polynomial:
        fib = tuple(f for f in m if f[0] in self.fiber)
        base = tuple(f for f in m if f[0] in self.base_only)
        grp = tuple(f for f in m if f[0] in self.group)
        s1, fb = mono_mul(fib, base)
        s2, full = mono_mul(fb, grp)
        if not (s1 and s2) or full != m:
            raise AlgebraError("monomial reordering failed")
        sign = s1 * s2
        # J: (a·b)⊗β = (-1)^α(b) a⊗cap(β, b)
        r = divide(beta, base)
        if r is None:
            return Polynomial()
        s3, rest = r
        sign *= s3 * alpha_sign(mono_degree(base), self.convention)
        pieces = [(name, deg) for name, deg, e in fib for _ in range(e)]
        body = self._split(pieces, rest)
        if not body:
            return Polynomial()
        return body * Polynomial.mono(grp, sign)

    def _split(self, pieces: List[Tuple[str, int]], beta: Monomial) -> Polynomial:
        """I-relation: x_1···x_k ⊗ β = Σ ± (x_1⊗β_1)···(x_k⊗β_k)."""
        if not pieces:
            return Polynomial.const(1) if not beta else Polynomial()
        (x, xdeg), tail = pieces[0], pieces[1:]
        tail_deg = sum(d for _, d in tail)
        out = Polynomial()
        for b1, b2, s in splittings(beta):
            d1 = mono_degree(b1)
            if d1 > xdeg:
                continue
            head = self.gen_poly(x, b1)
            if not head:
                continue
            rest = self._split(tail, b2)
            if not rest:
                continue
            # Koszul sign (-1)^{|x_j||β_1|} for every later x_j passing β_1
            sgn = s * (-1 if (tail_deg * d1) % 2 else 1)
            out = out + head * rest * sgn
        return out


def _section_generators(R: RelativeModel, C: Coalgebra, b: _Builder, lo: int = -1):
    gens = []
    for v in R.fiber:
        vdeg = R.total.degree_of(v)
        for beta in C.elements():
            if not b.beta_ok(beta):
                continue
            deg = vdeg - mono_degree(beta)
            if deg >= lo:
                gens.append((v, beta, section_name(v, C.name(beta)), deg))
    return gens


def conjugation_borel(R: RelativeModel, C: Coalgebra, w=None,
                      convention: str = SECTION_3) -> SectionModel:
    """Relative model of the conjugation action on sections.

    d(v⊗β) = d(v)⊗β + (-1)^|v| Σ_a (-1)^α(a) v⊗[∂^∨(β⊗a*)]⊗a, the sum over the
    canonical monomial basis a of the group algebra.  With no group
    generators only a = 1 survives and this is the plain section model.
    """
    vmax = max((R.total.degree_of(v) for v in R.fiber), default=0)
    w = as_window(w) if w is not None else DegreeWindow(0, vmax)
    if C.window.lo != 0 or C.window.hi < vmax + 1:
        raise SectionError(f"coalgebra window must cover [0,{vmax + 1}]")
    b = _Builder(R, C, convention)
    gens = _section_generators(R, C, b)
    group_alg = CDGA([g for g in R.base.generators if g.name in b.group],
                     {k: v for k, v in R.base.differential.items() if k in b.group})
    group_basis: List[Monomial] = [ONE]
    if group_alg.generators:
        for k in range(1, vmax + 2):
            group_basis.extend(basis_in_degree(group_alg, k))
    diff: Dict[str, Polynomial] = {}
    relations: Dict[str, Polynomial] = {}
    keys = {}
    for v, beta, name, deg in gens:
        keys[name] = (v, beta)
        vdeg = R.total.degree_of(v)
        dv = b.normal_form(R.total.d_of(v), beta)
        corr = Polynomial()
        for a in group_basis:
            adeg = mono_degree(a)
            if vdeg - mono_degree(beta) - adeg + 1 < 0:
                continue
            s, ba = mono_mul(beta, a)
            if not s:
                continue
            image = C.dual_differential({ba: Fraction(s)})
            for m, c in image.items():
                if not b.beta_ok(m):
                    continue
                term = b.gen_poly(v, m)
                if term:
                    corr = corr + term * Polynomial.mono(a, c * alpha_sign(adeg, convention))
        total = dv + corr * (-1 if vdeg % 2 else 1)
        if deg == -1:
            relations[name] = total
        else:
            diff[name] = total
    out_gens = [Generator(name, deg) for _, _, name, deg in gens if deg >= 0]
    out_gens += list(group_alg.generators)
    diff.update(group_alg.differential)
    alg = CDGA(out_gens, {k: v for k, v in diff.items() if v},
               name=f"sections({R.name})" if R.name else "sections")
    return SectionModel(alg, relations, w, convention, R, keys)


def normal_form_IJ(a: Polynomial, beta: Monomial, C: Coalgebra, R: RelativeModel,
                   convention: str = SECTION_3) -> Polynomial:
    """Rewrite a⊗β as a polynomial in the generators v⊗β' (negative degrees drop out)."""
    return _Builder(R, C, convention).normal_form(a, beta)


def brown_szczarba(R: RelativeModel, C: Coalgebra, w=None, convention: str = SECTION_3) -> SectionModel:
    if R.group:
        raise SectionError("brown_szczarba takes a model without group generators")
    return conjugation_borel(R, C, w, convention)


@dataclass
class Augmentation:
    values: Dict[str, Fraction]

    def __getitem__(self, name):
        return self.values[name]

    def violations(self, S: SectionModel) -> Dict[str, Fraction]:
        bad = {}
        for g, rel in S.relations.items():
            val = rel.substitute({k: Polynomial.const(v) for k, v in self.values.items()})
            if val:
                bad[g] = val
        return bad

    def to_dict(self) -> dict:
        return {k: [v.numerator, v.denominator] for k, v in sorted(self.values.items())}


def extend_augmentation(S: SectionModel, values: Dict[str, object],
                        fill_zero: bool = False) -> Augmentation:
    """Solve the degree-0 relations for the remaining degree-0 generators."""
    known = {k: Fraction(v) for k, v in values.items()}
    zero_gens = set(S.degree_zero())
    unknown_names = set(known) - zero_gens
    if unknown_names:
        raise SectionError(f"not degree-0 generators: {sorted(unknown_names)}")
    progress = True
    while progress:
        progress = False
        for g, rel in sorted(S.relations.items()):
            r = rel.substitute({k: Polynomial.const(v) for k, v in known.items()})
            free = r.generator_names()
            if len(free) != 1:
                continue
            x = free.pop()
            xm = ((x, 0, 1),)
            lin = r.coefficient(xm)
            if not lin or set(r.terms) - {xm, ONE}:
                continue
            known[x] = -r.constant_term() / lin
            progress = True
    missing = zero_gens - set(known)
    if missing:
        if not fill_zero:
            raise SectionError(f"augmentation undetermined on {sorted(missing)}")
        for x in missing:
            known[x] = Fraction(0)
    aug = Augmentation(known)
    bad = aug.violations(S)
    if bad:
        g = sorted(bad)[0]
        raise InconsistentAugmentation(g, bad[g])
    return aug


def component_model(S: SectionModel, eps: Augmentation, check: bool = True) -> CDGA:
    """Replace degree-0 generators by their augmentation values."""
    if check:
        bad = eps.violations(S)
        if bad:
            g = sorted(bad)[0]
            raise InconsistentAugmentation(g, bad[g])
    zero = set(S.degree_zero())
    missing = zero - set(eps.values)
    if missing:
        raise SectionError(f"augmentation missing values for {sorted(missing)}")
    subst = {k: Polynomial.const(eps.values[k]) for k in zero}
    gens = [g for g in S.algebra.generators if g.degree > 0]
    diff = {k: v.substitute(subst) for k, v in S.algebra.differential.items() if k not in zero}
    return CDGA(gens, diff, name=S.algebra.name)


def evaluation_map_model(S: SectionModel, R: RelativeModel, C: Coalgebra,
                         convention: Optional[str] = None) -> Morphism:
    """v ↦ Σ_b (-1)^α(b) (v⊗b_*)⊗b on the fiber, identity on the base."""
    convention = convention or S.convention
    target = tensor(S.algebra, R.base)
    b = _Builder(R, C, convention)
    images = {}
    for v in R.fiber:
        img = Polynomial()
        vdeg = R.total.degree_of(v)
        for beta in C.elements():
            if not b.beta_ok(beta) or mono_degree(beta) > vdeg:
                continue
            term = b.gen_poly(v, beta)
            if term and target.has(next(iter(term.terms))[0][0]):
                img = img + term * Polynomial.mono(beta, alpha_sign(mono_degree(beta), convention))
        images[v] = img
    for g in R.base.names:
        images[g] = target.gen(g)
    return Morphism(R.total, target, images, name="evaluation")


def pushforward_p_beta(p: Polynomial, beta: Monomial, base_names: Iterable[str]) -> Polynomial:
    """Cap against β on the base tensor factor: a⊗b ↦ <β, b> a."""
    base_names = set(base_names)
    out = Polynomial()
    for m, c in p.terms.items():
        rest = tuple(f for f in m if f[0] not in base_names)
        bpart = tuple(f for f in m if f[0] in base_names)
        if bpart != beta:
            continue
        s, full = mono_mul(rest, bpart)
        if not s or full != m:
            raise AlgebraError("monomial reordering failed")
        out = out + Polynomial.mono(rest, c * s)
    return out


def relation_substitution(S: SectionModel) -> Dict[str, Polynomial]:
    """Solve the degree-0 relations for generators occurring linearly with a constant coefficient."""
    subst: Dict[str, Polynomial] = {}
    pending = dict(S.relations)
    progress = True
    while progress:
        progress = False
        for g in sorted(pending):
            rel = _close(pending[g], subst)
            if not rel:
                del pending[g]
                progress = True
                break
            for x in sorted(rel.generator_names()):
                xm = ((x, 0, 1),)
                lin = rel.coefficient(xm)
                if not lin or any(x in {f[0] for f in m} for m in rel.terms if m != xm):
                    continue
                subst[x] = -(rel - Polynomial.mono(xm, lin)) / lin
                subst = {k: _close(v, subst) for k, v in subst.items()}
                del pending[g]
                progress = True
                break
            if progress:
                break
    return subst


def _close(p: Polynomial, subst: Dict[str, Polynomial]) -> Polynomial:
    for _ in range(len(subst) + 1):
        if not (p.generator_names() & set(subst)):
            return p
        p = p.substitute(subst)
    return p


def reduce_mod_relations(S: SectionModel, p: Polynomial) -> Polynomial:
    return _close(p, relation_substitution(S))


def check_section_model(S: SectionModel):
    """d² on every generator, modulo the degree-0 relations of K."""
    from .algebra import CheckReport

    subst = relation_substitution(S)
    failures = {}
    for g in S.algebra.generators:
        r = _close(S.algebra.d(S.algebra.d_of(g.name)), subst)
        if r:
            failures[g.name] = r
    return CheckReport(not failures, failures)


def check_evaluation(phi: Morphism, S: SectionModel):
    """Chain-map check of the evaluation morphism, modulo the degree-0 relations."""
    from .algebra import CheckReport

    subst = relation_substitution(S)
    failures = {}
    for name, r in check_chain_map(phi).failures.items():
        r = _close(r, subst)
        if r:
            failures[name] = r
    return CheckReport(not failures, failures)
