"""Command-line interface: ``macbranch <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage
errors (bad arguments, parse errors, bounds).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import identities
from .core import (
    MACDONALD_RULE,
    SCHUR_RULE,
    STRUCTURE_CACHE,
    branch_build,
    phi,
    principal_P,
    psi,
    psi_prime,
    qbinom,
)
from .families import R_principal, family_M, family_O, family_R_ab, R_exact
from .partitions import Partition
from .ring import RatFunc, parse, var

MAX_N = 4
MAX_DEGREE = 6
MAX_WEIGHT = 8

FAMILY_PARAMS = {
    "P": (),
    "schur": (),
    "M": ("a", "b"),
    "O": ("a", "b"),
    "Rab": ("a", "b"),
    "R": ("b",),
}


class UsageError(Exception):
    pass


def _partition(text: str) -> Partition:
    try:
        lam = Partition.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if lam.weight > MAX_WEIGHT:
        raise UsageError(f"partition {lam} has weight above {MAX_WEIGHT}")
    return lam


def _n(value: int) -> int:
    if not 1 <= value <= MAX_N:
        raise UsageError(f"--n must be in 1..{MAX_N}, got {value}")
    return value


def _bindings(items) -> dict[str, RatFunc]:
    out = {}
    for item in items or []:
        name, sep, expr = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"--param expects name=expression, got {item!r}")
        try:
            out[name] = parse(expr)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse parameter {name}={expr!r}: {exc}") from None
    return out


def _value_record(value: RatFunc) -> dict:
    return {"numerator": value.num.to_text(), "denominator": value.den.to_text()}


def _emit(args, record: dict, text: str):
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _params_out(params: dict) -> dict:
    return {k: v.to_text() for k, v in sorted(params.items())}


# ---------------------------------------------------------------------------
# commands


def cmd_expand(args) -> int:
    lam, n = _partition(args.lam), _n(args.n)
    given = _bindings(args.param)
    names = FAMILY_PARAMS[args.family]
    unknown = set(given) - set(names)
    if unknown:
        raise UsageError(f"family {args.family} has no parameter(s) {', '.join(sorted(unknown))}")
    params = {k: given.get(k, var(k)) for k in names}
    xs = [var(f"x{i}") for i in range(1, n + 1)]
    if args.family == "P":
        value = branch_build(MACDONALD_RULE, lam, xs)
    elif args.family == "schur":
        value = branch_build(SCHUR_RULE, lam, xs)
    elif args.family == "M":
        value = family_M(lam, xs, params["a"], params["b"])
    elif args.family == "O":
        if params["b"].is_zero():
            raise UsageError("family O needs b != 0")
        value = family_O(lam, xs, params["a"], params["b"])
    elif args.family == "Rab":
        value = family_R_ab(lam, xs, params["a"], params["b"])
    else:
        value = R_exact(lam, xs, params["b"])
    record = {"family": args.family, "lambda": str(lam), "n": n, "params": _params_out(params)}
    record.update(_value_record(value))
    _emit(args, record, str(value))
    return 0


def cmd_psi(args) -> int:
    lam, mu = _partition(args.lam), _partition(args.mu)
    fn = {"psi": psi, "phi": phi, "psi-prime": psi_prime}[args.kind]
    value = fn(lam, mu)
    record = {"kind": args.kind, "lambda": str(lam), "mu": str(mu)}
    record.update(_value_record(value))
    _emit(args, record, str(value))
    return 0


def cmd_qbinom(args) -> int:
    lam, mu = _partition(args.lam), _partition(args.mu)
    n = _n(args.n) if args.n is not None else None
    try:
        value = qbinom(lam, mu, args.method, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = {"lambda": str(lam), "mu": str(mu), "method": args.method}
    record.update(_value_record(value))
    _emit(args, record, str(value))
    return 0


def cmd_principal(args) -> int:
    lam, n = _partition(args.lam), _n(args.n)
    if len(lam) > n:
        raise UsageError(f"l({lam}) exceeds n={n}")
    params = _bindings(args.param)
    if args.family == "P":
        if params:
            raise UsageError("family P takes no parameters")
        value = principal_P(lam, n)
    else:
        unknown = set(params) - {"b"}
        if unknown:
            raise UsageError(f"family R has no parameter(s) {', '.join(sorted(unknown))}")
        params.setdefault("b", var("b"))
        value = R_principal(lam, n, params["b"])
    record = {"family": args.family, "lambda": str(lam), "n": n, "params": _params_out(params)}
    record.update(_value_record(value))
    _emit(args, record, str(value))
    return 0


def _verify_config(args) -> dict:
    config = {}
    if args.n is not None:
        config["n"] = _n(args.n)
    if args.degree is not None:
        if not 0 <= args.degree <= MAX_DEGREE:
            raise UsageError(f"--degree must be in 0..{MAX_DEGREE}")
        config["D"] = args.degree
    if args.mu is not None:
        config["mu"] = _partition(args.mu)
    if args.nu is not None:
        config["nu"] = _partition(args.nu)
    if args.weight is not None:
        config["weight"] = args.weight
    params = _bindings(args.param)
    if params:
        config["params"] = params
    if args.mutate:
        config["mutate"] = True
    return config


def _jsonable(value):
    if isinstance(value, RatFunc):
        return value.to_text()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def cmd_verify(args) -> int:
    if args.all == bool(args.identity):
        raise UsageError("verify needs exactly one of --identity or --all")
    ids = list(identities.CATALOG) if args.all else args.identity
    config = _verify_config(args)
    results = []
    try:
        for ident in ids:
            # per-entry defaults apply unless a flag overrides them
            results.append(identities.check(ident, dict(config)))
    except identities.IdentityError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(json.dumps([_jsonable(r) for r in results], sort_keys=True))
    else:
        width = max(len(r["id"]) for r in results)
        for r in results:
            status = "pass" if r["pass"] else "FAIL"
            print(f"{r['id']:<{width}}  {status}  {r['millis']:>7} ms")
            if not r["pass"]:
                w = r["witness"]
                print(f"    witness: {w.get('monomial')} (degree {w.get('degree')}) case {w.get('case')}")
                print(f"      lhs: {w['lhs']}")
                print(f"      rhs: {w['rhs']}")
        passed = sum(r["pass"] for r in results)
        print(f"{passed}/{len(results)} passed")
    return 0 if all(r["pass"] for r in results) else 1


def cmd_cache(args) -> int:
    if args.action == "clear":
        STRUCTURE_CACHE.clear(disk=True)
    stats = STRUCTURE_CACHE.stats()
    if args.format == "json":
        print(json.dumps(stats, sort_keys=True))
    else:
        for key in sorted(stats):
            print(f"{key}: {stats[key]}")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir", help="directory for the structure-constant cache")

    parser = argparse.ArgumentParser(
        prog="macbranch", description="Macdonald-type symmetric functions by branching rules."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand a family member as a rational function")
    p.add_argument("--family", choices=tuple(FAMILY_PARAMS), required=True)
    p.add_argument("--lambda", dest="lam", required=True, help='partition such as "2,1"')
    p.add_argument("--n", type=int, required=True, help="number of letters")
    p.add_argument("--param", action="append", metavar="NAME=EXPR")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("psi", parents=[common], help="branching coefficients psi, phi, psi'")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--kind", choices=("psi", "phi", "psi-prime"), default="psi")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("qbinom", parents=[common], help="generalised q,t-binomial coefficient")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument(
        "--method", choices=("skewQ", "recursion", "closed-t=q", "closed-t=1"), default="skewQ"
    )
    p.add_argument("--n", type=int, help="working number of letters")
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("principal", parents=[common], help="principal specialisation")
    p.add_argument("--family", choices=("R", "P"), default="R")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--param", action="append", metavar="NAME=EXPR")
    p.set_defaults(func=cmd_principal)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("--identity", action="append", help="catalog id (repeatable)")
    p.add_argument("--all", action="store_true", help="run the whole catalog")
    p.add_argument("--n", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--mu")
    p.add_argument("--nu")
    p.add_argument("--weight", type=int)
    p.add_argument("--param", action="append", metavar="NAME=EXPR")
    p.add_argument("--mutate", action="store_true", help="run the mutation canary instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", parents=[common], help="structure-constant cache")
    p.add_argument("action", choices=("stats", "clear"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir:
        STRUCTURE_CACHE.set_directory(args.cache_dir)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"macbranch: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
