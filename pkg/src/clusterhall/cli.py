"""Command-line front end.

Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on
usage, parse or resource-limit errors.  Each numeric option falls back to
an environment variable of the same name (``--seed-budget`` reads
``SEED_BUDGET``) before its built-in default.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import bridge
from .algebra import LaurentPolynomial, NonExactDivisionError
from .ccmap import cc_all, cc_indecomposable
from .frieze import (
    FriezeError,
    build_frieze,
    compare_friezes,
    frieze_from_ar,
    m_sequence,
    parse_triangulation,
    quiver_from_triangulation,
    triangulation_problems,
)
from .mfree import (
    ClusterQuiverWithRelations,
    ConjectureViolation,
    mfree_conjecture,
    parse_module_spec,
    parse_relations,
)
from .mutation import DEFAULT_SEED_BUDGET, ExplorationBudgetError, explore, initial_seed, mutate_sequence
from .quiver import Quiver, QuiverError, QuiverParseError, is_root, parse_quiver, positive_roots
from .repmod import DEFAULT_BUDGET, EnumerationBudgetError, set_prime_pool

VERIFY_CHECKS = ["main", "projective", "almost-split", "exchange-pairs", "serre-duality",
                 "denominators", "positivity"]


class UsageError(Exception):
    pass


def _env_default(name: str, fallback):
    return os.environ.get(name, fallback)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_quiver(path: str, dynkin: bool = True) -> Quiver:
    try:
        return parse_quiver(_read(path), dynkin=dynkin)
    except QuiverParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _parse_vector(text: str, n: int) -> tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if len(vec) != n:
        raise UsageError(f"dimension vector {text!r} needs {n} entries")
    return vec


def _emit(args, payload, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


# -- subcommands ---------------------------------------------------------------

def cmd_cc(args) -> int:
    q = _load_quiver(args.quiver)
    if args.target == "all":
        values = cc_all(q, jobs=args.jobs, budget=args.budget)
    else:
        d = _parse_vector(args.target, q.n)
        if not is_root(q, d):
            raise UsageError(f"{d} is not a positive root of {q.dynkin_type}")
        values = {d: cc_indecomposable(q, d, args.budget)}
    rows, lines = [], []
    for d, x in values.items():
        rows.append({
            "root": list(d),
            "value": x.fraction_str(),
            "canonical": str(x),
            "denominator": list(x.denominator_vector()),
            "value_at_one": x.eval_ones(),
        })
        lines.append(f"{','.join(map(str, d))}\tX = {x.fraction_str()}\t"
                     f"denominator = {x.denominator_vector()}\tX(1) = {x.eval_ones()}")
    _emit(args, rows, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    q = _load_quiver(args.quiver)
    names = VERIFY_CHECKS if args.check == "all" else [args.check]
    reports = bridge.run_checks(q, names, jobs=args.jobs, budget=args.budget, seed_budget=args.seed_budget)
    payload = [r.to_dict() for r in reports]
    print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    return 0 if all(r.verdict for r in reports) else 1


def _parse_directions(text: str, n: int) -> list[int]:
    if text.strip() in ("", "-"):
        return []
    try:
        dirs = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated directions, got {text!r}") from None
    bad = [k for k in dirs if not 1 <= k <= n]
    if bad:
        raise UsageError(f"directions {bad} out of range 1..{n}")
    return dirs


def cmd_mutate(args) -> int:
    q = _load_quiver(args.quiver, dynkin=False)
    dirs = _parse_directions(args.directions, q.n)
    start = initial_seed(q)
    seed = mutate_sequence(start, dirs)
    changed = {i for i in range(q.n) if seed.variables[i] != start.variables[i]}
    names = [f"x{i + 1}" + ("'" if i in changed else "") for i in range(q.n)]
    payload = {
        "directions": dirs,
        "variables": [x.fraction_str() for x in seed.variables],
        "matrix": [list(r) for r in seed.matrix],
        "initial": seed.cluster() == start.cluster(),
    }
    lines = [f"{name} = {x.fraction_str()}" for name, x in zip(names, seed.variables)]
    lines.append("B = " + " ".join("[" + " ".join(f"{b:2d}" for b in r) + "]" for r in seed.matrix))
    if payload["initial"]:
        lines.append("back at the initial cluster")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_explore(args) -> int:
    q = _load_quiver(args.quiver, dynkin=False)
    result = explore(q, budget=args.seed_budget)
    variables = sorted(result.variables, key=LaurentPolynomial.sort_key)
    payload = {
        "variables": len(result.variables),
        "clusters": len(result.clusters),
        "seeds_visited": result.seeds_visited,
        "values": [x.fraction_str() for x in variables],
    }
    text = f"{len(result.variables)} variables, {len(result.clusters)} clusters"
    if args.list:
        text += "\n" + "\n".join(x.fraction_str() for x in variables)
    _emit(args, payload, text)
    return 0


def cmd_frieze(args) -> int:
    if args.from_ar:
        q = _load_quiver(args.file)
        f = frieze_from_ar(q)
        _emit(args, {"rows": [list(r) for r in f.rows], "valid": f.is_valid()}, f.render())
        return 0 if f.is_valid() else 1
    try:
        t = parse_triangulation(_read(args.file))
    except FriezeError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    problems = triangulation_problems(t)
    if problems:
        raise UsageError(f"{args.file}: invalid triangulation: " + "; ".join(problems))
    f = build_frieze(m_sequence(t))
    payload: dict = {"m": list(m_sequence(t)), "rows": [list(r) for r in f.rows], "valid": f.is_valid()}
    text = [f.render()]
    verdict = f.is_valid()
    q = quiver_from_triangulation(t)
    if q.dynkin_type and q.dynkin_type.startswith("A"):
        match = compare_friezes(f, frieze_from_ar(q))
        payload["quiver_arrows"] = [list(a) for a in q.arrows]
        payload["matches_ar"] = match
        text.append(f"AR frieze of {q.dynkin_type} ({' '.join(f'{a}->{b}' for a, b in q.arrows)}) matches: {str(match).lower()}")
        verdict = verdict and match
    else:
        payload["matches_ar"] = None
        text.append("quiver of the triangulation is not of type A; AR comparison skipped")
    _emit(args, payload, "\n".join(text))
    return 0 if verdict else 1


def cmd_mfree(args) -> int:
    q = _load_quiver(args.quiver, dynkin=False)
    try:
        m = parse_module_spec(args.module)
        rels = parse_relations(_read(args.relations)) if args.relations else ()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cq = ClusterQuiverWithRelations(q, rels)
    try:
        x = mfree_conjecture(cq, m)
    except ConjectureViolation as exc:
        _emit(args, {"value": None, "violation": str(exc)}, f"no Laurent polynomial: {exc}")
        return 1
    except (QuiverError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    payload: dict = {"value": x.fraction_str(), "canonical": str(x)}
    text = [x.fraction_str()]
    verdict = True
    try:
        q.require_dynkin()
        dynkin = not m.zero_arrows
    except QuiverError:
        dynkin = False
    d = m.dimension_vector(q.n)
    if dynkin and d in positive_roots(q):
        same = cc_indecomposable(q, d, args.budget) == x
        payload["matches_cc"] = same
        text.append(f"matches X_M from Grassmannians: {str(same).lower()}")
        verdict = same
    _emit(args, payload, "\n".join(text))
    return 0 if verdict else 1


# -- parser ---------------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _prime_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=_positive_int, default=_env_default("JOBS", 1),
                        help="worker processes for X_M computation (env JOBS, default 1)")
    common.add_argument("--primes", type=_prime_list, default=_env_default("PRIMES", None),
                        help="comma-separated sample primes for point counting (env PRIMES, default 2,3,5,...)")
    common.add_argument("--budget", type=_positive_int, default=_env_default("BUDGET", DEFAULT_BUDGET),
                        help=f"subspace enumeration cap per count (env BUDGET, default {DEFAULT_BUDGET})")
    common.add_argument("--seed-budget", type=_positive_int,
                        default=_env_default("SEED_BUDGET", DEFAULT_SEED_BUDGET),
                        help=f"cap on explored seeds (env SEED_BUDGET, default {DEFAULT_SEED_BUDGET})")

    parser = argparse.ArgumentParser(prog="clusterhall", description="Cluster variables from quiver representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cc", parents=[common], help="X_M for one root or all roots")
    p.add_argument("quiver")
    p.add_argument("target", help="'all' or a dimension vector such as 1,2,1,1")
    p.set_defaults(func=cmd_cc)

    p = sub.add_parser("verify", parents=[common], help="cross-checks, printed as a JSON report")
    p.add_argument("quiver")
    p.add_argument("check", choices=VERIFY_CHECKS + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mutate", parents=[common], help="mutate the initial seed along directions")
    p.add_argument("quiver")
    p.add_argument("directions", help="comma-separated, e.g. 1,2,1")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("explore", parents=[common], help="count cluster variables and clusters")
    p.add_argument("quiver")
    p.add_argument("--list", action="store_true", help="also print every variable")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("frieze", parents=[common], help="frieze of a triangulation or of a type A quiver")
    p.add_argument("file", help="triangulation file, or a quiver file with --from-ar")
    p.add_argument("--from-ar", action="store_true", help="read a quiver and build its frieze from the AR quiver")
    p.set_defaults(func=cmd_frieze)

    p = sub.add_parser("mfree", parents=[common], help="closed formula for a multiplicity-free module")
    p.add_argument("quiver")
    p.add_argument("--module", required=True, help="e.g. 'support: 1,2,3,4; zero_arrows: (4,1)'")
    p.add_argument("--relations", help="file of zero compositions, one 'a b c' per line")
    p.set_defaults(func=cmd_mfree)
    return parser


def _coerce(args) -> None:
    # environment defaults arrive as strings
    try:
        args.jobs = _positive_int(str(args.jobs))
        args.budget = _positive_int(str(args.budget))
        args.seed_budget = _positive_int(str(args.seed_budget))
        if isinstance(args.primes, str):
            args.primes = _prime_list(args.primes)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"bad environment setting: {exc}") from None


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        _coerce(args)
        try:
            set_prime_pool(args.primes)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EnumerationBudgetError, ExplorationBudgetError, NonExactDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        set_prime_pool(None)


if __name__ == "__main__":
    sys.exit(main())
