"""Graded-commutative polynomial algebra over Q.

Monomials are tuples of ``(name, degree, exponent)`` factors sorted by
``(degree, name)``.  A monomial stands for the ordered product of its
factors, so the canonical form carries no hidden sign.  Odd generators
square to zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

Factor = Tuple[str, int, int]
Monomial = Tuple[Factor, ...]

ONE: Monomial = ()


class AlgebraError(ValueError):
    """Raised on malformed algebraic input (unknown generators, bad degrees)."""


@dataclass(frozen=True, order=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int):
            raise AlgebraError(f"degree of {self.name!r} must be an int")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def key(self):
        return (self.degree, self.name)


def factor_key(f: Factor):
    return (f[1], f[0])


def mono_degree(m: Monomial) -> int:
    return sum(deg * e for _, deg, e in m)


def mono_sort_key(m: Monomial):
    return (mono_degree(m), tuple((deg, name, e) for name, deg, e in m))


def mono_mul(a: Monomial, b: Monomial) -> Tuple[int, Monomial]:
    """Product of two canonical monomials as ``(sign, monomial)``; sign 0 means zero."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    out: List[Factor] = []
    sign = 1
    i = j = 0
    # odd factors of ``a`` not yet emitted; each odd factor of b passes them
    odd_left = sum(1 for _, deg, _ in a if deg % 2)
    while i < len(a) and j < len(b):
        fa, fb = a[i], b[j]
        ka, kb = factor_key(fa), factor_key(fb)
        if ka < kb:
            out.append(fa)
            if fa[1] % 2:
                odd_left -= 1
            i += 1
        elif kb < ka:
            if fb[1] % 2 and odd_left % 2:
                sign = -sign
            out.append(fb)
            j += 1
        else:
            if fa[1] % 2:
                return 0, ONE
            out.append((fa[0], fa[1], fa[2] + fb[2]))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, _, e in m)


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class Polynomial:
    """Finite Q-linear combination of canonical monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, object]] = None):
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    # constructors
    @classmethod
    def gen(cls, g: Generator, coef=1) -> "Polynomial":
        return cls({((g.name, g.degree, 1),): coef})

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def mono(cls, m: Monomial, coef=1) -> "Polynomial":
        return cls({m: coef})

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {mono_degree(m) for m in self.terms}

    def degree(self) -> int:
        """Degree of a homogeneous nonzero polynomial."""
        ds = self.degrees()
        if len(ds) != 1:
            raise AlgebraError(f"polynomial is not homogeneous: {self}")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_components(self) -> Dict[int, "Polynomial"]:
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            out.setdefault(mono_degree(m), {})[m] = c
        return {k: Polynomial(v) for k, v in sorted(out.items())}

    def generator_names(self) -> set:
        return {name for m in self.terms for name, _, _ in m}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_sort_key(mc[0]))

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return Polynomial()
            return Polynomial._raw({m: v * c for m, v in self.terms.items()})
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = mono_mul(m1, m2)
                if not s:
                    continue
                v = out.get(m, 0) + s * c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative power")
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, images: Mapping[str, "Polynomial"],
                   keep_missing: bool = True) -> "Polynomial":
        """Replace generators by polynomials (or constants); unmapped generators stay."""
        out = Polynomial()
        cache: Dict[Tuple[str, int], Polynomial] = {}
        for m, c in self.terms.items():
            acc = Polynomial.const(c)
            for name, deg, e in m:
                if name in images:
                    key = (name, e)
                    if key not in cache:
                        cache[key] = _as_poly(images[name]) ** e
                    acc = acc * cache[key]
                elif keep_missing:
                    acc = acc * Polynomial.mono(((name, deg, e),))
                else:
                    raise AlgebraError(f"no image for generator {name!r}")
                if not acc:
                    break
            out = out + acc
        return out

    def map_coefficients(self, f: Callable[[Fraction], Fraction]) -> "Polynomial":
        return Polynomial({m: f(c) for m, c in self.terms.items()})

    # io
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(_coef_str(c))
            elif c == 1:
                parts.append(mono_str(m))
            elif c == -1:
                parts.append("-" + mono_str(m))
            else:
                parts.append(f"{_coef_str(c)}*{mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self) -> list:
        return [[c.numerator, c.denominator, [[name, e] for name, _, e in m]]
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list, degrees: Mapping[str, int]) -> "Polynomial":
        out = Polynomial()
        for num, den, factors in data:
            p = Polynomial.const(Fraction(num, den))
            for name, e in factors:
                if name not in degrees:
                    raise AlgebraError(f"unknown generator {name!r}")
                p = p * Polynomial.mono(((name, degrees[name], 1),)) ** e
            out = out + p
        return out

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Generator):
        return Polynomial.gen(x)
    return Polynomial.const(x)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return _as_poly(p) * _as_poly(q)


@dataclass
class CheckReport:
    ok: bool
    failures: Dict[str, Polynomial] = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "; ".join(f"{k}: {v}" for k, v in self.failures.items())


class CDGA:
    """Free graded-commutative algebra on ``generators`` with a differential.

    ``truncation`` maps an even generator to the exponent at which its powers
    vanish (``b^(n+1) = 0`` for the cohomology of CP^n).  ``basis_filter``
    optionally restricts the monomial basis to a sub-complex; it is used for
    ideal-type sub-algebras and is not serialized.
    """

    def __init__(self, generators: Iterable[Generator],
                 differential: Optional[Mapping[str, Polynomial]] = None,
                 truncation: Optional[Mapping[str, int]] = None,
                 basis_filter: Optional[Callable[[Monomial], bool]] = None,
                 name: str = ""):
        gens = sorted(set(generators), key=Generator.key)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate generator names with different degrees")
        self.generators: Tuple[Generator, ...] = tuple(gens)
        self._deg = {g.name: g.degree for g in gens}
        self.truncation = dict(truncation or {})
        for t, e in self.truncation.items():
            if t not in self._deg or self._deg[t] % 2 or e < 1:
                raise AlgebraError(f"bad truncation {t}^{e}")
        self.basis_filter = basis_filter
        self.name = name
        diff = {}
        for nm, p in (differential or {}).items():
            if nm not in self._deg:
                raise AlgebraError(f"differential given for unknown generator {nm!r}")
            p = self.reduce(_as_poly(p))
            unknown = p.generator_names() - set(self._deg)
            if unknown:
                raise AlgebraError(f"d({nm}) uses unknown generators {sorted(unknown)}")
            for m in p.terms:
                if mono_degree(m) != self._deg[nm] + 1:
                    raise AlgebraError(f"d({nm}) = {p} does not have degree {self._deg[nm] + 1}")
            if p:
                diff[nm] = p
        self.differential: Dict[str, Polynomial] = diff
        self._basis_cache: Dict[int, list] = {}

    # generators
    def degree_of(self, name: str) -> int:
        try:
            return self._deg[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def has(self, name: str) -> bool:
        return name in self._deg

    def gen(self, name: str) -> Polynomial:
        return Polynomial.mono(((name, self.degree_of(name), 1),))

    def __getitem__(self, name: str) -> Polynomial:
        return self.gen(name)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def d_of(self, name: str) -> Polynomial:
        self.degree_of(name)
        return self.differential.get(name, Polynomial())

    # arithmetic in the algebra
    def reduce(self, p: Polynomial) -> Polynomial:
        if not self.truncation:
            return p
        out = {}
        for m, c in p.terms.items():
            if all(e < self.truncation.get(name, e + 1) for name, _, e in m):
                out[m] = c
        return Polynomial._raw(out)

    def mul(self, p: Polynomial, q: Polynomial) -> Polynomial:
        return self.reduce(_as_poly(p) * _as_poly(q))

    def d(self, p: Polynomial) -> Polynomial:
        return apply_differential(self, p)

    def monomial_allowed(self, m: Monomial) -> bool:
        for name, deg, e in m:
            if deg % 2 and e > 1:
                return False
            if e >= self.truncation.get(name, e + 1):
                return False
        return self.basis_filter is None or self.basis_filter(m)

    # derived algebras
    def with_differential(self, differential: Mapping[str, Polynomial], **kw) -> "CDGA":
        return CDGA(self.generators, differential, kw.get("truncation", self.truncation),
                    kw.get("basis_filter", self.basis_filter), kw.get("name", self.name))

    def set_zero(self, names: Iterable[str]) -> "CDGA":
        """Quotient by the ideal generated by ``names`` (assumed to be a dg-ideal)."""
        names = set(names)
        zero = {n: Polynomial() for n in names}
        gens = [g for g in self.generators if g.name not in names]
        diff = {k: v.substitute(zero) for k, v in self.differential.items() if k not in names}
        trunc = {k: v for k, v in self.truncation.items() if k not in names}
        return CDGA(gens, diff, trunc, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, CDGA):
            return NotImplemented
        return (self.generators == other.generators and self.differential == other.differential
                and self.truncation == other.truncation)

    def __repr__(self):
        gens = ", ".join(f"{g.name}({g.degree})" for g in self.generators)
        return f"CDGA[{gens}]"

    def describe(self) -> str:
        lines = [repr(self)]
        for g in self.generators:
            if g.name in self.differential:
                lines.append(f"  d({g.name}) = {self.differential[g.name]}")
        return "\n".join(lines)

    # serialization
    def to_dict(self) -> dict:
        out = {
            "generators": [{"name": g.name, "degree": g.degree} for g in self.generators],
            "differential": {g.name: self.differential[g.name].to_json()
                             for g in self.generators if g.name in self.differential},
        }
        if self.truncation:
            out["truncation"] = {k: self.truncation[k] for k in sorted(self.truncation)}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "CDGA":
        gens = [Generator(g["name"], int(g["degree"])) for g in data["generators"]]
        degs = {g.name: g.degree for g in gens}
        diff = {k: Polynomial.from_json(v, degs) for k, v in data.get("differential", {}).items()}
        return cls(gens, diff, data.get("truncation"))

    @classmethod
    def from_json(cls, text: str) -> "CDGA":
        return cls.from_dict(json.loads(text))


def cdga(degrees: Mapping[str, int], differential: Optional[Mapping[str, object]] = None,
         **kw) -> CDGA:
    """Convenience constructor; differential values may be strings parsed by :func:`parse`."""
    gens = [Generator(n, d) for n, d in degrees.items()]
    diff = {}
    for k, v in (differential or {}).items():
        diff[k] = parse(v, degrees) if isinstance(v, str) else _as_poly(v)
    return CDGA(gens, diff, **kw)


def parse(text: str, degrees: Mapping[str, int]) -> Polynomial:
    """Parse a small polynomial language: ``2*a^2*b - 1/3*c + 1``."""
    import re

    text = text.replace(" ", "")
    if text in ("", "0"):
        return Polynomial()
    if text[0] not in "+-":
        text = "+" + text
    out = Polynomial()
    for sign, body in re.findall(r"([+-])([^+-]+)", text):
        term = Polynomial.const(-1 if sign == "-" else 1)
        for piece in body.split("*"):
            base, _, exp = piece.partition("^")
            e = int(exp) if exp else 1
            if re.fullmatch(r"\d+(/\d+)?", base):
                term = term * (Fraction(base) ** e)
            else:
                if base not in degrees:
                    raise AlgebraError(f"unknown generator {base!r}")
                term = term * Polynomial.mono(((base, degrees[base], 1),)) ** e
        out = out + term
    return out


def apply_differential(A: CDGA, p: Polynomial) -> Polynomial:
    """Extend the generator differential of ``A`` to ``p`` by the graded Leibniz rule."""
    out: Dict[Monomial, Fraction] = {}
    for m, c in _as_poly(p).terms.items():
        prefix_deg = 0
        for i, (name, deg, e) in enumerate(m):
            if name not in A._deg:
                raise AlgebraError(f"unknown generator {name!r}")
            dg = A.differential.get(name)
            if dg is not None:
                # d(x^e) = e x^(e-1) dx for even x; odd x has e = 1
                inner = dg if e == 1 else Polynomial.mono(((name, deg, e - 1),)) * dg * e
                left = Polynomial.mono(m[:i], -c if prefix_deg % 2 else c)
                term = left * inner * Polynomial.mono(m[i + 1:])
                for mm, cc in term.terms.items():
                    v = out.get(mm, 0) + cc
                    if v:
                        out[mm] = v
                    else:
                        out.pop(mm, None)
            prefix_deg += deg * e
    return A.reduce(Polynomial._raw(out))


def check_d_squared(A: CDGA) -> CheckReport:
    failures = {}
    for g in A.generators:
        r = A.d(A.d_of(g.name))
        if r:
            failures[g.name] = r
    return CheckReport(not failures, failures)


class Morphism:
    """CDGA map given by generator images."""

    def __init__(self, source: CDGA, target: CDGA, images: Mapping[str, object], name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        imgs = {}
        for g in source.generators:
            if g.name not in images:
                raise AlgebraError(f"no image for generator {g.name!r}")
            p = target.reduce(_as_poly(images[g.name]))
            for m in p.terms:
                if mono_degree(m) != g.degree:
                    raise AlgebraError(f"image of {g.name} has wrong degree: {p}")
            imgs[g.name] = p
        self.images: Dict[str, Polynomial] = imgs

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.target.reduce(_as_poly(p).substitute(self.images, keep_missing=False))

    def compose(self, other: "Morphism") -> "Morphism":
        """``self ∘ other``."""
        return Morphism(other.source, self.target,
                        {k: self(v) for k, v in other.images.items()})

    @classmethod
    def identity(cls, A: CDGA) -> "Morphism":
        return cls(A, A, {g.name: A.gen(g.name) for g in A.generators})


def check_chain_map(phi: Morphism) -> CheckReport:
    failures = {}
    for g in phi.source.generators:
        r = phi(phi.source.d_of(g.name)) - phi.target.d(phi.images[g.name])
        if r:
            failures[g.name] = r
    return CheckReport(not failures, failures)


def rescale_generator(A: CDGA, name: str, factor) -> Tuple[CDGA, Morphism]:
    """Replace generator ``name`` by ``factor * name``; returns the new algebra and the iso."""
    factor = Fraction(factor)
    if not factor:
        raise AlgebraError("rescaling factor must be nonzero")
    g = A.gen(name)
    old_in_new = {name: g / factor}
    diff = {}
    for k, v in A.differential.items():
        w = v.substitute(old_in_new)
        diff[k] = w * factor if k == name else w
    B = A.with_differential(diff)
    return B, Morphism(A, B, {k: (old_in_new[k] if k == name else B.gen(k)) for k in A.names})


def eliminate_pair(A: CDGA, x: str, y: str) -> Tuple[CDGA, Morphism]:
    """Cancel a contractible pair ``d(x) = ±y + r``.

    Returns the quotient algebra without ``x, y`` (with ``y`` replaced by
    ``∓r`` everywhere) and the projection, a quasi-isomorphism.
    """
    dx = A.d_of(x)
    ydeg = A.degree_of(y)
    if ydeg != A.degree_of(x) + 1:
        raise AlgebraError(f"|{y}| must equal |{x}| + 1")
    ymono = ((y, ydeg, 1),)
    c = dx.coefficient(ymono)
    if c not in (1, -1):
        raise AlgebraError(f"{y} does not occur in d({x}) with unit coefficient (got {c})")
    r = dx - Polynomial.mono(ymono, c)
    if y in r.generator_names():
        raise AlgebraError(f"{y} occurs nonlinearly in d({x})")
    if x in r.generator_names():
        raise AlgebraError(f"{x} occurs in its own differential")
    subst = {x: Polynomial(), y: -r / c}
    gens = [g for g in A.generators if g.name not in (x, y)]
    diff = {k: v.substitute(subst) for k, v in A.differential.items() if k not in (x, y)}
    for k, v in diff.items():
        if y in v.generator_names():
            raise AlgebraError(f"substitution for {y} did not terminate in d({k})")
    B = CDGA(gens, diff, {k: e for k, e in A.truncation.items() if k not in (x, y)}, name=A.name)
    rho = Morphism(A, B, {g.name: subst.get(g.name, B.gen(g.name) if B.has(g.name) else None)
                          for g in A.generators})
    return B, rho


def tensor(*algebras: CDGA, name: str = "") -> CDGA:
    gens, diff, trunc = [], {}, {}
    for A in algebras:
        gens.extend(A.generators)
        diff.update(A.differential)
        trunc.update(A.truncation)
    return CDGA(gens, diff, trunc, name=name)
