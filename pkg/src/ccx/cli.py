"""Command-line interface: ``ccx --fixture DIR [options] <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 fixture or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import exact_linalg as la
from .character import CharacterEngine, PreconditionError
from .fixtures import DEFAULT_PRIME, Fixture, FixtureError, RunConfig, bundled_fixture, load_fixture
from .frobenius import CategoryError
from .grassmann import DEFAULT_CAP, DEFAULT_PRIMES, GrassmannError
from .modules import ModuleError, direct_sum, ext1_dim, hom_dim, zero_module
from .tilting import TiltingError
from .verify import GROUPS, SELECTIONS, Report, run_verify

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _primes(text: str) -> tuple:
    try:
        out = tuple(int(x) for x in text.split(",") if x.strip())
        for q in out:
            la.check_prime(q)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid prime list {text!r}: {exc}") from exc
    if not out:
        raise argparse.ArgumentTypeError("prime list is empty")
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ccx", description=__doc__.splitlines()[0])
    ap.add_argument("--fixture", default=None, help="fixture directory (default: bundled a2_preprojective)")
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="characteristic of the base field")
    ap.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES, help="point-counting primes, e.g. 2,3,5,7,11")
    ap.add_argument("--enum-cap", type=int, default=DEFAULT_CAP, help="largest module dimension to enumerate")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("character", help="cluster character of a module")
    c.add_argument("module", help="catalog name or sum such as T2+2")
    c.add_argument("--formula", choices=("x", "fu", "palu"), default="x")

    c = sub.add_parser("index", help="index of a module with respect to T")
    c.add_argument("module")
    c.add_argument("--op", action="store_true", help="opposite index")

    c = sub.add_parser("theta", help="theta class of a module")
    c.add_argument("module")

    sub.add_parser("phi", help="matrix of phi on the simples of C")
    sub.add_parser("catalog", help="catalog objects with Hom and Ext^1 tables")

    c = sub.add_parser("verify", help="run invariant suites")
    for flag in ("multiplication", "condition-tt", "specialize", "all"):
        c.add_argument(f"--{flag}", action="store_true")
    c.add_argument("--cross-prime", type=int, default=None,
                   help="also verify at this prime and require identical integer outputs")
    return ap


def _module(fx: Fixture, expr: str):
    expr = expr.strip()
    if expr in ("0", ""):
        return zero_module(fx.algebra)
    parts = [fx.module(s.strip()) for s in expr.split("+")]
    if len(parts) == 1:
        return parts[0]
    return direct_sum(*parts).renamed(expr)


def _emit(fmt: str, data: dict, text: str):
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def _strip_prime(d: dict) -> dict:
    d = json.loads(json.dumps(d))
    d["config"].pop("prime", None)
    return d


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        la.check_prime(args.prime)
        path = args.fixture or str(bundled_fixture())
        config = RunConfig(path, args.prime, tuple(args.primes), args.enum_cap, args.seed, args.format)
        fx = load_fixture(path, args.prime, args.seed)
    except (FixtureError, CategoryError, TiltingError, ValueError) as exc:
        pair = getattr(exc, "pair", None)
        print(f"error: {exc}" + (f" [objects: {', '.join(pair)}]" if pair else ""), file=sys.stderr)
        return EXIT_INPUT
    try:
        return _dispatch(args, config, fx)
    except (FixtureError, ModuleError, PreconditionError, GrassmannError, TiltingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc, (FixtureError, ModuleError)) else EXIT_FAIL


def _dispatch(args, config: RunConfig, fx: Fixture) -> int:
    td = fx.tilting
    fmt = args.format
    if args.command == "character":
        M = _module(fx, args.module)
        eng = CharacterEngine(fx, config.primes, config.enum_cap)
        fn = {"x": eng.cluster_character, "fu": eng.fu_keller_character, "palu": eng.palu_character}[args.formula]
        value = fn(M)
        _emit(fmt, {"module": args.module, "formula": args.formula, "character": str(value)}, str(value))
    elif args.command == "index":
        M = _module(fx, args.module)
        v = td.op_index(M) if args.op else td.index(M)
        _emit(fmt, {"module": args.module, "opposite": args.op, "coords": list(v.coords)}, str(v))
    elif args.command == "theta":
        M = _module(fx, args.module)
        v = td.theta(M)
        _emit(fmt, {"module": args.module, "coords": list(v.coords)}, str(v))
    elif args.command == "phi":
        phi = td.phi_matrix
        rows = [[int(x) for x in row] for row in phi]
        text = "\n".join(
            f"Phi[S'{j + 1}] = " + str(td.k0(phi[:, j])) for j in range(td.r)
        )
        _emit(fmt, {"phi": rows, "summands": list(td.names)}, text)
    elif args.command == "catalog":
        cat = fx.category
        entries = []
        for k, (name, M) in enumerate(zip(cat.names, cat.catalog)):
            entries.append({
                "name": name,
                "dims": list(M.dim_vector),
                "projective": bool(cat.projective[k]),
                "in_T": k in td.indices,
                "hom": [hom_dim(M, N) for N in cat.catalog],
                "ext1": [cat.ext1_dim(k, j) for j in range(len(cat.catalog))],
            })
        lines = [f"{'name':>6} {'dims':>10} proj  T  hom | ext1"]
        for e in entries:
            lines.append(f"{e['name']:>6} {str(tuple(e['dims'])):>10} {'y' if e['projective'] else 'n':>4} "
                         f"{'y' if e['in_T'] else 'n':>2}  {e['hom']} | {e['ext1']}")
        _emit(fmt, {"catalog": entries}, "\n".join(lines))
    elif args.command == "verify":
        chosen = [f for f in ("multiplication", "condition-tt", "specialize", "all") if getattr(args, f.replace("-", "_"))]
        groups = set()
        for f in chosen:
            groups |= set(SELECTIONS[f])
        if not groups:
            groups = set(GROUPS)
        report = run_verify(config, groups, fx)
        ok = report.ok
        out = report.to_json() if fmt == "json" else report.to_text()
        if args.cross_prime is not None:
            other_cfg = RunConfig(config.fixture, args.cross_prime, config.primes, config.enum_cap, config.seed, fmt)
            other = run_verify(other_cfg, groups)
            same = _strip_prime(report.as_dict()) == _strip_prime(other.as_dict())
            ok = ok and other.ok and same
            out += ("\n" if fmt == "text" else "\n") + (
                f"cross-check at prime {args.cross_prime}: {'identical' if same else 'DIFFERENT'}"
                if fmt == "text"
                else json.dumps({"cross_prime": args.cross_prime, "identical": same}, sort_keys=True)
            )
        print(out)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK
