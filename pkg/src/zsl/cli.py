"""Command-line front end.

Every subcommand reads exact JSON inputs, computes one report, and writes it
as JSON (default), CSV, or an aligned table.  All numeric output is exact:
integers stay integers and rationals are rendered as "p/q" strings.  Exit
status: 0 on success, 1 when a computed invariant fails (the message carries
the witness), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from itertools import combinations

from .atoms import (
    davenport,
    davenport_upper_bounds,
    circuit_length,
    elementary_davenport,
    enumerate_atoms,
    rational_elementary_decomposition,
)
from .certify import run_suite
from .constructions import fibonacci, fibonacci_witness, hypercube_plus, hypercube_pm
from .ground import GroundSet, RationalSequence, Sequence
from .invariants import (
    block_monoid,
    catenary_element,
    factorizations,
    omega,
    set_of_lengths,
    tame_degree,
    tau,
    union_of_lengths,
)
from .models import (
    AcmSpec,
    FiniteAbelianGroup,
    MonextModel,
    TowerData,
    acm_report,
    fp_rank1_invariants,
    hnp_report,
    monext_catenary,
    monext_invariants,
    monext_theta_check,
)
from .invariants import elements_up_to


class InputError(Exception):
    """Malformed input: reported on stderr with exit status 2."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_ground(args) -> GroundSet:
    data = _load_json(args.input)
    try:
        return GroundSet.from_json(data, canonicalize=args.canonicalize)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from exc


def _load_sequence(ground: GroundSet, path: str, rational: bool = False):
    data = _load_json(path)
    try:
        if rational:
            return RationalSequence.from_json(ground, data)
        return Sequence.from_json(ground, data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _encode(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, (set, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, list):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


def _flatten(report, prefix=""):
    rows = []
    if isinstance(report, dict):
        for key in sorted(report):
            rows.extend(_flatten(report[key], f"{prefix}{key}." if prefix else f"{key}."))
        if not report:
            rows.append((prefix.rstrip("."), "{}"))
    else:
        rendered = json.dumps(_encode(report), sort_keys=True)
        rows.append((prefix.rstrip("."), rendered))
    return rows


def _emit(report: dict, args) -> None:
    report = _encode(report)
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        lines = ["key,value"]
        for key, value in _flatten(report):
            quoted = value.replace('"', '""')
            lines.append(f'{key},"{quoted}"')
        text = "\n".join(lines) + "\n"
    else:
        rows = _flatten(report)
        width = max((len(k) for k, _ in rows), default=0)
        text = "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(parser: argparse.ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        parser.add_argument("-i", "--input", required=True,
                            help="ground set JSON: {\"rank\": r, \"elements\": [[..], ..]}")
    parser.add_argument("-o", "--output", help="write the report to this file")
    parser.add_argument("--format", choices=("json", "csv", "table"), default="json")
    parser.add_argument("--threads", type=int,
                        default=int(os.environ.get("ZSL_THREADS", "1")),
                        help="worker count; results are identical for any value")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    parser.add_argument("--canonicalize", action="store_true",
                        help="sort ground elements lexicographically before indexing")
    parser.add_argument("--budget", type=int, default=None,
                        help="search length cap where applicable")


def _check_threads(args) -> None:
    if args.threads < 1:
        raise InputError("--threads must be at least 1")


def _parse_group(text: str) -> FiniteAbelianGroup:
    text = text.strip()
    if text in ("", "0", "trivial"):
        return FiniteAbelianGroup.from_factors([])
    try:
        return FiniteAbelianGroup.from_factors([int(x) for x in text.split(",")])
    except ValueError as exc:
        raise InputError(f"bad group spec {text!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def cmd_atoms(args) -> dict:
    ground = _load_ground(args)
    atom_set = enumerate_atoms(ground, args.budget)
    report = atom_set.to_json()
    dav = davenport(atom_set)
    report.update(dav.to_json())
    return report


def cmd_davenport(args) -> dict:
    ground = _load_ground(args)
    return davenport(ground, args.budget).to_json()


def cmd_delm(args) -> dict:
    ground = _load_ground(args)
    if args.method == "both":
        value = elementary_davenport(ground, "both", args.budget)
        return {"elementary_davenport": value, "method": "both",
                "certifies": "determinant-formula-matches-enumeration"}
    value = elementary_davenport(ground, args.method, args.budget)
    return {"elementary_davenport": value, "method": args.method}


def cmd_bounds(args) -> dict:
    ground = _load_ground(args)
    return davenport_upper_bounds(ground)


def cmd_decompose(args) -> dict:
    ground = _load_ground(args)
    seq = _load_sequence(ground, args.seq, rational=True)
    if not seq.is_zero_sum():
        raise InputError(f"{args.seq}: the sequence must be zero-sum")
    dec = rational_elementary_decomposition(seq)
    report = dec.to_json()
    report["parts_count"] = dec.ell
    report["reconstructs"] = dec.reassemble() == seq
    return report


def _monoid_for(args, ground: GroundSet):
    atom_set = enumerate_atoms(ground, args.budget)
    if not atom_set.complete:
        raise InputError("atom enumeration hit the budget; raise --budget")
    return block_monoid(atom_set)


def cmd_lengths(args) -> dict:
    ground = _load_ground(args)
    monoid = _monoid_for(args, ground)
    seq = _load_sequence(ground, args.element)
    zs = factorizations(monoid, seq.mult)
    return {
        "lengths": list(set_of_lengths(monoid, seq.mult)),
        "factorizations": [list(z.counts) for z in zs],
        "in_monoid": bool(zs),
    }


def cmd_unions(args) -> dict:
    ground = _load_ground(args)
    monoid = _monoid_for(args, ground)
    result = union_of_lengths(monoid, args.k, args.strategy)
    return result.to_json()


def cmd_catenary(args) -> dict:
    ground = _load_ground(args)
    monoid = _monoid_for(args, ground)
    seq = _load_sequence(ground, args.element)
    zs = factorizations(monoid, seq.mult)
    if not zs:
        raise InputError("element is not a zero-sum sequence over the ground set")
    return {
        "catenary": catenary_element(monoid, seq.mult),
        "lengths": list(set_of_lengths(monoid, seq.mult)),
        "factorizations": [list(z.counts) for z in zs],
    }


def cmd_omega(args) -> dict:
    ground = _load_ground(args)
    monoid = _monoid_for(args, ground)
    if not 0 <= args.atom < monoid.atom_count:
        raise InputError(f"--atom must index the {monoid.atom_count} canonical atoms")
    report = {"atom": list(monoid.atoms[args.atom]), "mode": args.mode}
    if args.mode == "both":
        report["omega"] = omega(monoid, args.atom, "both", args.budget)
        report["modes_agree"] = True
    else:
        report["omega"] = omega(monoid, args.atom, args.mode, args.budget)
    return report


def cmd_tame(args) -> dict:
    ground = _load_ground(args)
    monoid = _monoid_for(args, ground)
    if not 0 <= args.atom < monoid.atom_count:
        raise InputError(f"--atom must index the {monoid.atom_count} canonical atoms")
    w = omega(monoid, args.atom, "minimal-cover")
    report = {"atom": list(monoid.atoms[args.atom]), "omega": w}
    if w == 1:
        report.update({"tame": 0, "tau": 0, "note": "prime atom, tame degree 0"})
    else:
        report.update({"tau": tau(monoid, args.atom),
                       "tame": tame_degree(monoid, args.atom)})
    return report


def cmd_fib(args) -> dict:
    limit = args.rank if args.verify else None
    witness = fibonacci_witness(args.rank, verify_limit=limit or 8)
    report = witness.to_json()
    report["stack"] = witness.stack.to_json()
    report["atom"] = witness.atom.to_json()
    report["ground"] = hypercube_pm(args.rank).to_json()
    return report


def cmd_hypercube(args) -> dict:
    ground = hypercube_pm(args.rank) if args.signed else hypercube_plus(args.rank)
    return ground.to_json()


def cmd_fp(args) -> dict:
    group = _parse_group(args.group)
    return fp_rank1_invariants(group, args.budget or 6)


def cmd_monext(args) -> dict:
    ground = GroundSet.from_json(_load_json(args.h0), canonicalize=args.canonicalize)
    atom_set = enumerate_atoms(ground, args.budget)
    if not atom_set.complete:
        raise InputError("atom enumeration hit the budget; raise --budget")
    h0 = block_monoid(atom_set)
    kind, _, payload = args.d.partition(":")
    if kind == "group":
        model = MonextModel(h0, group=_parse_group(payload))
    elif kind == "free":
        model = MonextModel(h0, free_rank=int(payload or "1"))
    else:
        raise InputError("--d must look like group:2,2 or free:1")
    report: dict = {"h0_atoms": h0.atom_count, "d": args.d}
    checks = args.check.split(",") if args.check != "all" else ["theta", "invariants", "catenary"]
    if "theta" in checks:
        report["theta"] = monext_theta_check(model, samples=args.samples, seed=args.seed)
    if "invariants" in checks and model.d_is_group:
        stats = []
        for i in range(h0.atom_count):
            for d in model.group.elements():
                inv = monext_invariants(model, i, d)
                stats.append({"atom": i, "d": list(d), **inv["formula"]})
        report["atom_invariants"] = stats
    if "catenary" in checks and model.d_is_group:
        classified = 0
        for x in sorted(elements_up_to(h0, 2)):
            zs = factorizations(h0, x)
            if not zs or max(z.length for z in zs) < 2:
                continue
            for d in model.group.elements():
                monext_catenary(model, x, d)
                classified += 1
        report["catenary_elements_checked"] = classified
    return report


def cmd_acm(args) -> dict:
    try:
        spec = AcmSpec.from_json(_load_json(args.spec))
    except ValueError as exc:
        raise InputError(f"{args.spec}: {exc}") from exc
    return acm_report(spec, level_budget=args.budget or 4)


def cmd_hnp(args) -> dict:
    try:
        data = TowerData.from_json(_load_json(args.towers))
    except ValueError as exc:
        raise InputError(f"{args.towers}: {exc}") from exc
    return hnp_report(data, level_budget=args.budget or 4)


def cmd_certify(args) -> int:
    names = None if args.suite == "all" else args.suite.split(",")
    results = run_suite(names)
    if not results:
        raise InputError(f"no criteria match {args.suite!r}")
    report = {}
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        line = f"{status} {res.name} ({res.seconds:.2f}s)"
        if res.error:
            line += f" :: {res.error}"
        print(line)
        report[res.name] = {"passed": res.passed, "seconds": round(res.seconds, 3),
                            **({"error": res.error} if res.error else {}),
                            **res.details}
        failed += 0 if res.passed else 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(_encode(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 1 if failed else 0


def cmd_probe_r4(args) -> dict:
    """Certified lower bounds for the rank-4 signed hypercube.

    The determinant formula is swept exhaustively over the positive vertex
    tuples (sign flips never change the value), giving the elementary
    Davenport constant exactly; whether the full Davenport constant exceeds
    it stays open and is not claimed either way.
    """
    plus = hypercube_plus(4)
    best = 0
    witness = None
    for combo in combinations(plus.elements, 5):
        d = circuit_length(combo)
        if d > best:
            best = d
            witness = combo
    fib_lb = fibonacci(6)
    budget = args.budget or 4
    partial = enumerate_atoms(hypercube_pm(4), budget=budget)
    longest = max((a.length for a in partial.atoms), default=0)
    return {
        "rank": 4,
        "elementary_davenport": best,
        "elementary_witness_support": [list(v) for v in witness],
        "fibonacci_lower_bound": fib_lb,
        "partial_enumeration_budget": budget,
        "partial_enumeration_longest_atom": longest,
        "davenport_lower_bound": max(best, fib_lb, longest),
        "davenport_exact": None,
        "note": "lower bounds only; no equality claim at rank 4",
    }


_EXAMPLES = """\
examples:
  zsl hypercube --rank 2 --signed -o g0.json
  zsl atoms -i g0.json --budget 10 -o atoms.json
  zsl davenport -i g0.json
  zsl delm -i g0.json --method both
  zsl bounds -i g0.json
  zsl lengths -i g0.json --element seq.json
  zsl unions -i g0.json --k 4
  zsl catenary -i g0.json --element seq.json
  zsl omega -i g0.json --atom 0 --mode both
  zsl tame -i g0.json --atom 0
  zsl decompose -i g0.json --seq rational_seq.json
  zsl fib --rank 5 --verify
  zsl fp --group 2,2 --budget 6
  zsl monext --h0 g0.json --d group:2 --check all --samples 200
  zsl acm --spec acm.json
  zsl hnp --towers towers.json
  zsl certify --suite all
  zsl probe-r4
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsl",
        description="Exact factorization invariants of zero-sum monoids over Z^r.",
        epilog=_EXAMPLES,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atoms", help="enumerate the minimal zero-sum sequences")
    _add_common(p)
    p.set_defaults(handler=cmd_atoms)

    p = sub.add_parser("davenport", help="largest atom length, with witnesses")
    _add_common(p)
    p.set_defaults(handler=cmd_davenport)

    p = sub.add_parser("delm", help="largest elementary atom length")
    _add_common(p)
    p.add_argument("--method", choices=("enumerate", "formula", "both"),
                   default="both")
    p.set_defaults(handler=cmd_delm)

    p = sub.add_parser("bounds", help="certified Davenport upper bounds")
    _add_common(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("decompose", help="rational elementary decomposition")
    _add_common(p)
    p.add_argument("--seq", required=True, help="sequence JSON {\"mult\": [..]}")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("lengths", help="set of lengths of an element")
    _add_common(p)
    p.add_argument("--element", required=True, help="sequence JSON {\"mult\": [..]}")
    p.set_defaults(handler=cmd_lengths)

    p = sub.add_parser("unions", help="union of sets of lengths through k")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=("auto", "exhaustive", "extremes"),
                   default="auto")
    p.set_defaults(handler=cmd_unions)

    p = sub.add_parser("catenary", help="catenary degree of an element")
    _add_common(p)
    p.add_argument("--element", required=True)
    p.set_defaults(handler=cmd_catenary)

    p = sub.add_parser("omega", help="omega invariant of an atom")
    _add_common(p)
    p.add_argument("--atom", type=int, required=True,
                   help="index into the canonical (sorted) atom list")
    p.add_argument("--mode", choices=("minimal-cover", "definition-budget", "both"),
                   default="both")
    p.set_defaults(handler=cmd_omega)

    p = sub.add_parser("tame", help="tame degree of an atom")
    _add_common(p)
    p.add_argument("--atom", type=int, required=True)
    p.set_defaults(handler=cmd_tame)

    p = sub.add_parser("fib", help="Fibonacci witness for a rank")
    _add_common(p, needs_input=False)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="force the minimality check at this rank")
    p.set_defaults(handler=cmd_fib)

    p = sub.add_parser("hypercube", help="hypercube vertex ground set")
    _add_common(p, needs_input=False)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--signed", action="store_true",
                   help="include the negated vertices")
    p.set_defaults(handler=cmd_hypercube)

    p = sub.add_parser("fp", help="rank-1 finitely primary monoid invariants")
    _add_common(p, needs_input=False)
    p.add_argument("--group", default="trivial",
                   help="invariant factors, e.g. 2,2 (or 'trivial')")
    p.set_defaults(handler=cmd_fp)

    p = sub.add_parser("monext", help="unit-pinned product checks")
    _add_common(p, needs_input=False)
    p.add_argument("--h0", required=True, help="ground set JSON for the base monoid")
    p.add_argument("--d", required=True, help="group:2,2 or free:1")
    p.add_argument("--check", default="all",
                   help="comma list from theta,invariants,catenary")
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(handler=cmd_monext)

    p = sub.add_parser("acm", help="almost-constant vector monoid report")
    _add_common(p, needs_input=False)
    p.add_argument("--spec", required=True,
                   help='JSON {"omega": n, "c": ["1", "3/2", ..], "lambda": [[..]]}')
    p.set_defaults(handler=cmd_acm)

    p = sub.add_parser("hnp", help="stable-class monoid report from tower data")
    _add_common(p, needs_input=False)
    p.add_argument("--towers", required=True, help="tower data JSON")
    p.set_defaults(handler=cmd_hnp)

    p = sub.add_parser("certify", help="replay the acceptance suite")
    _add_common(p, needs_input=False)
    p.add_argument("--suite", default="all",
                   help="'all' or a comma list of criterion names/numbers")
    p.set_defaults(handler=cmd_certify, is_certify=True)

    p = sub.add_parser("probe-r4", help="rank-4 lower bounds (never equality)")
    _add_common(p, needs_input=False)
    p.set_defaults(handler=cmd_probe_r4)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_threads(args)
        if getattr(args, "is_certify", False):
            return args.handler(args)
        report = args.handler(args)
        _emit(report, args)
        return 0
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
