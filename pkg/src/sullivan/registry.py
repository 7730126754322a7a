"""String keys for catalog models, e.g. ``gr1c-borel:n=3`` or ``sections:n=2,d=3``."""
from __future__ import annotations

import json
import re
from pathlib import Path
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from . import catalog as cat
from . import gr2
from .algebra import CDGA, Morphism, check_d_squared
from .coalgebra import SECTION_3
from .sections import SectionModel, check_section_model


class UnknownKey(KeyError):
    pass


@dataclass
class Entry:
    key: str
    algebra: CDGA
    maps: List[Morphism] = field(default_factory=list)
    section: Optional[SectionModel] = None

    def check_d_squared(self):
        """Plain d^2 = 0, or modulo the degree-0 relations for a section model."""
        if self.section is not None:
            return check_section_model(self.section)
        return check_d_squared(self.algebra)


@dataclass(frozen=True)
class Family:
    name: str
    needs_d: bool
    n_min: int
    build: Callable


def _sections_bs(n, d, convention=SECTION_3, **_):
    return Entry("", cat.sections_via_bs(n, d, convention))


def _gr2(which):
    def build(n, dz_sign=gr2.MINUS, convention=SECTION_3, **_):
        if which == "thom":
            f = gr2.phi(n, dz_sign)
            return Entry("", f.source, [f])
        if which == "thom-ideal":
            return Entry("", gr2.thom_ideal(n))
        if which == "borel":
            return Entry("", gr2.gr2_borel(n).total, [gr2.iota(n)])
        if which == "sections":
            S = gr2.smooth_section_model(n, convention, dz_sign)
            return Entry("", S.algebra, section=S)
        if which == "raw":
            return Entry("", gr2.gr2_raw(n))
        return Entry("", gr2.over_cpn(n, dz_sign).total)
    return build


FAMILIES: Dict[str, Family] = {f.name: f for f in [
    Family("bu", False, 1, lambda n, **_: Entry("", cat.bu_model(n))),
    Family("bso", False, 1, lambda n, **_: Entry("", cat.bso_model(n))),
    Family("cpn", False, 1, lambda n, **_: Entry("", cat.cpn_model(n))),
    Family("cpn-formal", False, 1, lambda n, **_: Entry("", cat.cpn_model(n, truncated=True))),
    Family("unitary", False, 1, lambda n, **_: Entry("", cat.unitary_model(n))),
    Family("pu", False, 2, lambda n, **_: Entry("", cat.unitary_model(n, skip_first=True))),
    Family("gr1c-raw", False, 2, lambda n, **_: Entry("", cat.gr1c_raw(n), [cat.h_map(n)])),
    Family("gr1c-raw-borel", False, 2, lambda n, **_: Entry("", cat.gr1c_raw(n, True), [cat.h_map(n)])),
    Family("gr1c", False, 2, lambda n, **_: Entry("", cat.gr1c_models(n).absolute, [cat.h_map(n)])),
    Family("gr1c-borel", False, 2, lambda n, **_: Entry("", cat.gr1c_models(n).borel.total, [cat.h_map(n)])),
    Family("gr1c-over-cpn", False, 2, lambda n, **_: Entry("", cat.gr1c_over_cpn(n).total)),
    Family("thom-rel", False, 1, lambda n, **_: Entry("", cat.thom_complex_models(n).rel.total)),
    Family("thom-borel", False, 1, lambda n, **_: Entry("", cat.thom_complex_models(n).borel.total)),
    Family("thom-ideal", False, 2, lambda n, **_: Entry("", cat.thom_from_ideal(n).total)),
    Family("sections", True, 1, lambda n, d, **_: Entry("", cat.sections_closed_form(n, d))),
    Family("sections-bs", True, 1, _sections_bs),
    Family("sections-borel", True, 2, lambda n, d, **_: Entry("", cat.sections_borel(n, d))),
    Family("orbit", True, 2, lambda n, d, **_: Entry("", cat.sections_closed_form(n, d),
                                                      [cat.orbit_map(n, d), cat.orbit_map(n, d, True)])),
    Family("gr2-borel", False, 2, _gr2("borel")),
    Family("gr2-raw", False, 2, _gr2("raw")),
    Family("gr2-thom", False, 2, _gr2("thom")),
    Family("gr2-thom-ideal", False, 2, _gr2("thom-ideal")),
    Family("gr2-over-cpn", False, 2, _gr2("over-cpn")),
    Family("gr2-sections", False, 2, _gr2("sections")),
]}

_KEY = re.compile(r"^([a-z0-9-]+):(.*)$")


def parse_key(key: str):
    m = _KEY.match(key.strip())
    if not m or m.group(1) not in FAMILIES:
        raise UnknownKey(f"unknown catalog key {key!r}")
    fam = FAMILIES[m.group(1)]
    params = {}
    for part in filter(None, m.group(2).split(",")):
        k, _, v = part.partition("=")
        if k not in ("n", "d") or not re.fullmatch(r"-?\d+", v):
            raise UnknownKey(f"bad parameter {part!r} in {key!r}")
        params[k] = int(v)
    if "n" not in params or fam.needs_d != ("d" in params):
        raise UnknownKey(f"{fam.name} needs n{' and d' if fam.needs_d else ''}: {key!r}")
    if params["n"] < fam.n_min:
        raise UnknownKey(f"{fam.name} needs n >= {fam.n_min}")
    return fam, params


def make_key(family: str, n: int, d: Optional[int] = None) -> str:
    return f"{family}:n={n}" + (f",d={d}" if d is not None else "")


def lookup(key: str, **options) -> Entry:
    fam, params = parse_key(key)
    entry = fam.build(**params, **options)
    entry.key = make_key(fam.name, params["n"], params.get("d"))
    return entry


def keys(n: int, ds=(), families=None) -> List[str]:
    """Every key valid at ``n``; families with a d parameter expand over ``ds``."""
    out = []
    for fam in FAMILIES.values():
        if families is not None and fam.name not in families:
            continue
        if n < fam.n_min:
            continue
        if fam.needs_d:
            out.extend(make_key(fam.name, n, d) for d in ds)
        else:
            out.append(make_key(fam.name, n))
    return out


GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN_DS = range(-1, 4)


def golden_data(n: int) -> dict:
    """Canonical JSON of every key at ``n`` under the default options."""
    out = {}
    for k in keys(n, GOLDEN_DS):
        e = lookup(k)
        out[k] = e.section.to_dict() if e.section is not None else e.algebra.to_dict()
    return out


def golden_path(n: int, directory=None) -> Path:
    return Path(directory or GOLDEN_DIR) / f"models_n{n}.json"


def write_golden(directory=None, ns=range(1, 5)):
    for n in ns:
        path = golden_path(n, directory)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(golden_data(n), indent=1) + "\n")
