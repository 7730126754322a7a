"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 failed check.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from . import catalog as cat
from . import gr2
from .algebra import AlgebraError, check_chain_map
from .coalgebra import CONVENTIONS
from .homology import DegreeWindow, WindowError, betti_numbers
from .registry import UnknownKey, lookup
from .sections import InconsistentAugmentation, SectionError
from .verify import PINNED_CONVENTION, PINNED_DZ_SIGN, render, run_all

COMMANDS = ("model", "check", "cohomology", "sections", "orbit", "invariants", "verify-all")
CACHE_ENV = "RHT_CACHE_DIR"


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


def _window_arg(text):
    try:
        return DegreeWindow.parse(text)
    except WindowError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--model", help="catalog key such as gr1c-borel:n=3")
    common.add_argument("--window", type=_window_arg, metavar="LO:HI")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--sign-convention", choices=CONVENTIONS, default=PINNED_CONVENTION)
    common.add_argument("--gr2-dz-sign", choices=gr2.DZ_SIGNS, default=PINNED_DZ_SIGN)
    p = argparse.ArgumentParser(prog="sullivan", description="rational models of section spaces")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify-all":
            sp.add_argument("--n-max", type=int)
    return p


def _need(args, *names):
    for nm in names:
        if getattr(args, nm) is None:
            raise UsageError(f"{args.command} needs --{nm}")


def _window(args, default_hi):
    return args.window or DegreeWindow(0, default_hi)


def _entry(args):
    if args.model is None:
        raise UsageError(f"{args.command} needs --model")
    return lookup(args.model, convention=args.sign_convention, dz_sign=args.gr2_dz_sign)


def _cache_path(key: str, args):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    slug = re.sub(r"[^A-Za-z0-9=,.-]+", "_", key)
    return Path(root) / f"{slug}.{args.sign_convention}.{args.gr2_dz_sign}.json"


def cmd_model(args):
    entry = _entry(args)
    path = _cache_path(entry.key, args)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
    else:
        data = {"key": entry.key, "model": entry.algebra.to_dict()}
        if entry.section is not None:
            data["relations"] = entry.section.to_dict()["relations"]
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(data, separators=(",", ":")) + "\n")
    if args.format == "text":
        from .algebra import CDGA
        return f"{data['key']}\n" + CDGA.from_dict(data["model"]).describe()
    return data


def cmd_check(args):
    entry = _entry(args)
    d2 = entry.check_d_squared()
    maps = {f.name or f"map{i}": check_chain_map(f) for i, f in enumerate(entry.maps)}
    chain_ok = all(r.ok for r in maps.values())
    report = {
        "key": entry.key,
        "dSquared": {"ok": d2.ok, "residues": {k: str(v) for k, v in d2.failures.items()}},
        "chainMaps": {k: {"ok": r.ok, "residues": {g: str(v) for g, v in r.failures.items()}}
                      for k, r in maps.items()},
    }
    text = f"d²=0: {d2}; chain maps: {'ok' if chain_ok else '; '.join(f'{k}: {r}' for k, r in maps.items() if not r.ok)}"
    out = text if args.format == "text" else report
    if not (d2.ok and chain_ok):
        raise CheckFailed(out)
    return out


def cmd_cohomology(args):
    if args.model is not None:
        entry = _entry(args)
        A = entry.algebra
        n = args.n
    else:
        _need(args, "n", "d")
        A = cat.sections_closed_form(args.n, args.d)
        n = args.n
    hi = 2 * n + 2 if n is not None else 8
    table = betti_numbers(A, _window(args, hi))
    return str(table) if args.format == "text" else table.to_dict()


def cmd_sections(args):
    _need(args, "n", "d")
    S = cat.thom_section_model(args.n, args.sign_convention)
    eps = cat.degree_augmentation(S, args.d)
    comp = cat.component_model(S, eps)
    if args.format == "text":
        return "\n".join([f"sections n={args.n} d={args.d} ({args.sign_convention})",
                          comp.describe(),
                          "augmentation: " + ", ".join(f"{k}={v}" for k, v in sorted(eps.values.items()))])
    return {"n": args.n, "d": args.d, "signConvention": args.sign_convention,
            "sectionModel": S.to_dict(), "augmentation": eps.to_dict(), "component": comp.to_dict()}


def cmd_orbit(args):
    _need(args, "n", "d")
    n, d = args.n, args.d
    dec = cat.orbit_iso_decision(n, d)
    psi = cat.orbit_map(n, d, projective=True)
    trivial = all(v["rank"] == 0 for k, v in dec.report.degrees.items() if k > 0)
    data = {"n": n, "d": d, "iso": dec.iso, "trivial": trivial,
            "kernelDegrees": dec.kernel_degrees,
            "images": {k: str(psi.images[k]) for k in sorted(psi.images)}}
    if args.format == "json":
        return data
    if trivial:
        return f"orbit map is trivial on rational cohomology (d={d})"
    if dec.iso:
        return f"orbit map is an isomorphism on rational cohomology (d={d})"
    return f"orbit map is not injective on rational cohomology (d={d}); kernel in degrees {dec.kernel_degrees}"


def cmd_invariants(args):
    _need(args, "n", "d")
    n = args.n
    # default reaches the top class of Λ(x_3, ..., x_(2n+1))
    w = _window(args, max(2 * n + 2, n * (n + 2)))
    rep = cat.invariant_report(n, args.d, w).to_dict()
    if args.format == "json":
        return rep
    return "\n".join(f"{k}: {json.dumps(v, separators=(',', ':'))}" for k, v in rep.items())


def cmd_verify_all(args):
    results = run_all(args.n_max)
    log = render(results).rstrip("\n")
    if args.format == "json":
        log = {"results": [{"criterion": r.number, "title": r.title, "ok": r.ok, "detail": r.detail}
                           for r in results]}
    if not all(r.ok for r in results):
        raise CheckFailed(log)
    return log


HANDLERS = {
    "model": cmd_model, "check": cmd_check, "cohomology": cmd_cohomology, "sections": cmd_sections,
    "orbit": cmd_orbit, "invariants": cmd_invariants, "verify-all": cmd_verify_all,
}


def _emit(out, stream):
    if isinstance(out, (dict, list)):
        out = json.dumps(out, separators=(",", ":"))
    stream.write(out + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        _emit(HANDLERS[args.command](args), stdout)
        return 0
    except CheckFailed as e:
        _emit(e.report, stdout)
        return 2
    except InconsistentAugmentation as e:
        stderr.write(f"error: {e}\n")
        return 2
    except (UsageError, UnknownKey, WindowError, SectionError, AlgebraError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        stderr.write(f"error: {msg}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
