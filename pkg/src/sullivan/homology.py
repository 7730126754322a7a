"""Cohomology of CDGAs in a bounded degree window."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .algebra import CDGA, AlgebraError, Monomial, Morphism, Polynomial, mono_sort_key
from .linalg import nullspace, rank

WINDOW_CAP = 64
BASIS_LIMIT = 2_000_000


class WindowError(ValueError):
    pass


class BasisTooLarge(RuntimeError):
    """Raised instead of truncating when a degree has too many monomials."""

    def __init__(self, degree: int, limit: int):
        super().__init__(f"more than {limit} monomials in degree {degree}")
        self.degree = degree
        self.limit = limit


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int
    cap: int = WINDOW_CAP

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise WindowError(f"bad window [{self.lo},{self.hi}]")
        if self.hi - self.lo > self.cap:
            raise WindowError(f"window [{self.lo},{self.hi}] exceeds cap {self.cap}")

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        try:
            lo, hi = (int(x) for x in text.split(":"))
        except ValueError as e:
            raise WindowError(f"window must look like LO:HI, got {text!r}") from e
        return cls(lo, hi)

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def to_list(self):
        return [self.lo, self.hi]


def as_window(w) -> DegreeWindow:
    if isinstance(w, DegreeWindow):
        return w
    lo, hi = w
    return DegreeWindow(lo, hi)


def basis_in_degree(A: CDGA, k: int, limit: int = BASIS_LIMIT) -> List[Monomial]:
    """All canonical monomials of ``A`` in degree ``k``, sorted canonically."""
    cached = A._basis_cache.get(k)
    if cached is not None:
        return cached
    for g in A.generators:
        if g.degree <= 0:
            raise AlgebraError(f"generator {g.name} has degree {g.degree}; basis would be infinite")
    if k < 0:
        return []
    gens = A.generators
    trunc = A.truncation
    out: List[Monomial] = []

    def rec(i: int, remaining: int, acc: list):
        if remaining == 0:
            m = tuple(acc)
            if A.basis_filter is None or A.basis_filter(m):
                out.append(m)
                if len(out) > limit:
                    raise BasisTooLarge(k, limit)
            return
        if i == len(gens):
            return
        g = gens[i]
        rec(i + 1, remaining, acc)
        emax = remaining // g.degree
        if g.degree % 2:
            emax = min(emax, 1)
        if g.name in trunc:
            emax = min(emax, trunc[g.name] - 1)
        for e in range(1, emax + 1):
            acc.append((g.name, g.degree, e))
            rec(i + 1, remaining - e * g.degree, acc)
            acc.pop()

    rec(0, k, [])
    out.sort(key=mono_sort_key)
    A._basis_cache[k] = out
    return out


def coordinates(p: Polynomial, basis: Sequence[Monomial], index: Optional[Dict] = None) -> List[Fraction]:
    index = index if index is not None else {m: i for i, m in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    for m, c in p.terms.items():
        if m not in index:
            raise AlgebraError(f"monomial {m} is outside the basis")
        v[index[m]] = c
    return v


def from_coordinates(v: Sequence[Fraction], basis: Sequence[Monomial]) -> Polynomial:
    return Polynomial({m: c for m, c in zip(basis, v) if c})


def differential_matrix(A: CDGA, k: int) -> List[List[Fraction]]:
    """Rows are the images d(m) of the degree-k basis in degree-(k+1) coordinates."""
    src = basis_in_degree(A, k)
    tgt = basis_in_degree(A, k + 1)
    index = {m: i for i, m in enumerate(tgt)}
    return [coordinates(A.d(Polynomial.mono(m)), tgt, index) for m in src]


def d_rank(A: CDGA, k: int, method: str = "row") -> int:
    if k < 0:
        return 0
    rows = differential_matrix(A, k)
    return rank(rows, len(basis_in_degree(A, k + 1)), method)


@dataclass
class BettiTable:
    window: DegreeWindow
    ranks: Dict[int, int]

    def to_dict(self) -> dict:
        return {"window": self.window.to_list(),
                "ranks": {str(k): self.ranks[k] for k in sorted(self.ranks)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def nonzero(self) -> Dict[str, int]:
        return {str(k): v for k, v in sorted(self.ranks.items()) if v}

    def as_list(self) -> List[int]:
        return [self.ranks[k] for k in self.window]

    def __str__(self):
        return " ".join(f"H^{k}={v}" for k, v in sorted(self.ranks.items()))


def betti_numbers(A: CDGA, w, method: str = "row") -> BettiTable:
    w = as_window(w)
    ranks = {}
    prev = d_rank(A, w.lo - 1, method)
    for k in w:
        cur = d_rank(A, k, method)
        ranks[k] = len(basis_in_degree(A, k)) - cur - prev
        prev = cur
    return BettiTable(w, ranks)


def cocycle_basis(A: CDGA, k: int) -> List[Polynomial]:
    basis = basis_in_degree(A, k)
    rows = differential_matrix(A, k)
    ntgt = len(basis_in_degree(A, k + 1))
    # kernel of x -> x·D, i.e. right kernel of D^T
    cols = [[row[j] for row in rows] for j in range(ntgt)]
    if not cols:
        vecs = [[Fraction(int(i == j)) for j in range(len(basis))] for i in range(len(basis))]
    else:
        vecs = nullspace(cols, len(basis))
    return [from_coordinates(v, basis) for v in vecs]


def class_rank(A: CDGA, k: int, elements: Sequence[Polynomial]) -> int:
    """Dimension of the span of the classes of the given cocycles in H^k(A)."""
    basis = basis_in_degree(A, k)
    index = {m: i for i, m in enumerate(basis)}
    bnd = differential_matrix(A, k - 1) if k > 0 else []
    rows = [coordinates(p, basis, index) for p in elements]
    return rank(rows + bnd, len(basis)) - rank(bnd, len(basis))


@dataclass
class QuasiIsoReport:
    ok: bool
    degrees: Dict[int, dict] = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def failing_degrees(self) -> List[int]:
        return [k for k, v in self.degrees.items() if not v["iso"]]

    def kernel_degrees(self) -> List[int]:
        return [k for k, v in self.degrees.items() if v["rank"] < v["source"]]


def induced_rank(phi: Morphism, k: int) -> int:
    Z = cocycle_basis(phi.source, k)
    return class_rank(phi.target, k, [phi(z) for z in Z])


def is_quasi_iso(phi: Morphism, w) -> QuasiIsoReport:
    w = as_window(w)
    degrees = {}
    ok = True
    hs = betti_numbers(phi.source, w).ranks
    ht = betti_numbers(phi.target, w).ranks
    for k in w:
        r = induced_rank(phi, k)
        iso = hs[k] == ht[k] == r
        degrees[k] = {"source": hs[k], "target": ht[k], "rank": r, "iso": iso}
        ok = ok and iso
    return QuasiIsoReport(ok, degrees)
