"""Graded dual coalgebra of a CDGA, truncated to a degree window.

A chain is a dict ``{monomial: coefficient}`` where a monomial key stands for
its dual basis element.  The dual differential is the plain transpose of the
differential of the algebra.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .algebra import CDGA, ONE, AlgebraError, Monomial, Polynomial, mono_degree, mono_mul, mono_str
from .homology import as_window, basis_in_degree

Chain = Dict[Monomial, Fraction]

SECTION_3 = "section-3"
SECTION_4 = "section-4"
CONVENTIONS = (SECTION_3, SECTION_4)


def alpha(r: int, convention: str = SECTION_3) -> int:
    """Exponent of the J-relation sign for an element of degree ``r``.

    ``section-3`` is floor((r+1)/2); ``section-4`` adds one.
    """
    if r < 0:
        raise ValueError("alpha is defined for r >= 0")
    a = (r + 1) // 2
    if convention == SECTION_3:
        return a
    if convention == SECTION_4:
        return a + 1
    raise ValueError(f"unknown sign convention {convention!r}")


def alpha_sign(r: int, convention: str = SECTION_3) -> int:
    return -1 if alpha(r, convention) % 2 else 1


def default_namer(m: Monomial) -> str:
    return "1" if not m else f"dual[{mono_str(m)}]"


def cpn_namer(n: int, b: str = "b", y: str = "y") -> Callable[[Monomial], str]:
    """beta_j for b^j, gamma_{2(n+j)+1} for b^j y, theta[...] for the rest."""

    def name(m: Monomial) -> str:
        if not m:
            return "1"
        base = [f for f in m if f[0] in (b, y)]
        rest = [f for f in m if f[0] not in (b, y)]
        j = sum(e for nm, _, e in base if nm == b)
        has_y = any(nm == y for nm, _, _ in base)
        if has_y:
            head = f"gamma_{2 * (n + j) + 1}"
        elif j:
            head = f"beta_{j}"
        else:
            head = ""
        if rest:
            tail = "theta[" + mono_str(tuple(rest)) + "]"
            return f"{head}(x){tail}" if head else tail
        return head

    return name


def divide(m: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Monomial q and sign s with b·q = s·m, or None if b does not divide m."""
    exps = {name: e for name, _, e in b}
    q = []
    for name, deg, e in m:
        r = e - exps.pop(name, 0)
        if r < 0:
            return None
        if r:
            q.append((name, deg, r))
    if exps:
        return None
    q = tuple(q)
    s, prod = mono_mul(b, q)
    if not s:
        return None
    return s, q


def splittings(m: Monomial) -> Iterator[Tuple[Monomial, Monomial, int]]:
    """All (m1, m2, s) with m1·m2 = s·m and s = ±1."""
    ranges = [range(e + 1) if deg % 2 == 0 else range(2) for _, deg, e in m]
    for exps in product(*ranges):
        m1 = tuple((name, deg, k) for (name, deg, _), k in zip(m, exps) if k)
        m2 = tuple((name, deg, e - k) for (name, deg, e), k in zip(m, exps) if e - k)
        s, prod = mono_mul(m1, m2)
        if s:
            yield m1, m2, s


def iterated_splittings(m: Monomial, k: int) -> Iterator[Tuple[Tuple[Monomial, ...], int]]:
    """All ordered k-fold factorizations m_1···m_k = s·m (the k-fold coproduct)."""
    if k == 1:
        yield (m,), 1
        return
    for m1, rest, s in splittings(m):
        for tail, s2 in iterated_splittings(rest, k - 1):
            yield (m1,) + tail, s * s2


class Coalgebra:
    """Dual of the monomial basis of ``B`` in degrees ``window``."""

    def __init__(self, B: CDGA, window, namer: Optional[Callable[[Monomial], str]] = None):
        self.algebra = B
        self.window = as_window(window)
        self.namer = namer or default_namer
        self.basis: Dict[int, List[Monomial]] = {k: basis_in_degree(B, k) for k in self.window}
        self._index = {m for ms in self.basis.values() for m in ms}
        self._names: Dict[Monomial, str] = {}
        self._ddual: Dict[Monomial, Chain] = {}

    # basis
    def elements(self) -> List[Monomial]:
        return [m for k in self.window for m in self.basis[k]]

    def contains(self, m: Monomial) -> bool:
        return m in self._index

    def name(self, m: Monomial) -> str:
        nm = self._names.get(m)
        if nm is None:
            nm = self._names[m] = self.namer(m)
        return nm

    @staticmethod
    def degree(m: Monomial) -> int:
        return mono_degree(m)

    def by_name(self, name: str) -> Monomial:
        for m in self.elements():
            if self.name(m) == name:
                return m
        raise KeyError(name)

    # structure maps
    def coproduct(self, m: Monomial) -> List[Tuple[Monomial, Monomial, int]]:
        """Δ(m*) = Σ s · m1* ⊗ m2* over factorizations m1·m2 = s·m."""
        if not self.algebra.monomial_allowed(m):
            raise AlgebraError(f"{mono_str(m)} is not a basis monomial")
        return list(splittings(m))

    def counit(self, chain: Chain) -> Fraction:
        return Fraction(chain.get(ONE, 0))

    def pair(self, chain: Chain, p: Polynomial) -> Fraction:
        return sum((c * p.coefficient(m) for m, c in chain.items()), Fraction(0))

    def dual_differential_basis(self, m: Monomial) -> Chain:
        """∂^∨(m*) = Σ_{m'} <m*, d m'> m'*, over m' one degree lower."""
        cached = self._ddual.get(m)
        if cached is not None:
            return cached
        k = mono_degree(m)
        out: Chain = {}
        if k - 1 >= 0:
            for m2 in basis_in_degree(self.algebra, k - 1):
                c = self.algebra.d(Polynomial.mono(m2)).coefficient(m)
                if c:
                    out[m2] = c
        self._ddual[m] = out
        return out

    def dual_differential(self, chain: Chain) -> Chain:
        out: Chain = {}
        for m, c in chain.items():
            for m2, c2 in self.dual_differential_basis(m).items():
                v = out.get(m2, 0) + c * c2
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
        return out

    def cap(self, chain: Chain, b: Polynomial) -> Chain:
        """Chain with <cap(β, b), m> = <β, b·m> for every basis monomial m."""
        out: Chain = {}
        for mu, c in chain.items():
            for bm, cb in b.terms.items():
                r = divide(mu, bm)
                if r is None:
                    continue
                s, q = r
                v = out.get(q, 0) + s * c * cb
                if v:
                    out[q] = v
                else:
                    out.pop(q, None)
        return out

    # output
    def chain_str(self, chain: Chain) -> str:
        if not chain:
            return "0"
        parts = []
        for m in sorted(chain, key=lambda x: (mono_degree(x), self.name(x))):
            c = chain[m]
            nm = self.name(m)
            parts.append(nm if c == 1 else ("-" + nm if c == -1 else f"{c}*{nm}"))
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        elems = self.elements()
        return {
            "window": self.window.to_list(),
            "basis": [{"name": self.name(m), "degree": mono_degree(m)} for m in elems],
            "comultiplication": {
                self.name(m): [[self.name(a), self.name(b), s] for a, b, s in self.coproduct(m)]
                for m in elems
            },
            "dualDifferential": {
                self.name(m): [[self.name(k), v.numerator, v.denominator]
                               for k, v in sorted(self.dual_differential_basis(m).items(),
                                                  key=lambda kv: self.name(kv[0]))]
                for m in elems if self.dual_differential_basis(m)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def dualize(B: CDGA, window, namer=None) -> Coalgebra:
    return Coalgebra(B, window, namer)
