"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 infeasible (incompatible pairs),
3 internal invariant violation, 4 capacity exceeded, 5 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import oracle as bf
from .core import (
    BasisPairInstance,
    CapacityError,
    InfeasibleError,
    InputError,
    InternalError,
    compatible,
    verify_sequence,
)
from .generators import FAMILIES, GeneratorConfig, gen_compatible_pairs, generate, rep_bases
from .harness import SCALES, run_acceptance
from .io import InstanceFile, dumps_instance, dumps_report, load_instance, sequence_to_list, solve_record
from .solver import solve
from .split import validate_representation

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_INTERNAL, EXIT_CAPACITY, EXIT_SELFTEST = range(6)

log = logging.getLogger("splitex")


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_valid(path) -> InstanceFile:
    inst = load_instance(path)
    problems = validate_representation(inst.rep)
    if problems:
        raise InputError("representation violates (H1)/(H2):\n  " + "\n  ".join(problems))
    for k, P in enumerate(inst.pairs):
        for label, X in zip(("A1", "A2", "B1", "B2"), P.sets()):
            if not inst.rep.is_basis(X):
                raise InputError(f"pair {k}: {label} = {sorted(X)} is not a basis")
    return inst


def _pair_dict(P: BasisPairInstance) -> dict:
    return {"A1": sorted(P.A1), "A2": sorted(P.A2), "B1": sorted(P.B1), "B2": sorted(P.B2)}


def _witness(args, inst: InstanceFile, P, kind: str) -> str:
    path = Path(args.output or ".").with_suffix("") if args.output else Path(".")
    target = Path(f"{path}-{kind}-witness.json") if args.output else Path(f"{inst.name or 'instance'}-{kind}-witness.json")
    target.write_text(dumps_instance(InstanceFile(inst.name, inst.rep, [P] if P else [], {"witness": kind})))
    return str(target)


def cmd_solve(args) -> int:
    inst = _load_valid(args.instance)
    if not inst.pairs:
        raise InputError("instance has no basis pairs to solve")
    records = []
    for k, P in enumerate(inst.pairs):
        if not compatible(P):
            raise InfeasibleError(f"pair {k} is not compatible")
        t0 = time.perf_counter_ns()
        result = solve(inst.rep, P)
        micros = (time.perf_counter_ns() - t0) // 1000
        checks = {"verified": verify_sequence(inst.rep.oracle, P, result.sequence)}
        if args.check_bf:
            dist = bf.bf_exchange_distance(inst.rep.oracle, P, args.cap_nodes)
            checks["bfs_distance"] = None if dist == bf.INF else int(dist)
            checks["bfs_agrees"] = dist == result.distance
            if dist != result.distance:
                raise InternalError(f"pair {k}: solver distance {result.distance} != BFS distance {dist}")
        if not checks["verified"]:
            raise InternalError(f"pair {k}: solver sequence does not re-verify")
        records.append(solve_record(k, P, result, checks, micros))
    _emit(dumps_report({"instance": inst.name, "command": "solve", "records": records}), args.output)
    return EXIT_OK


def cmd_distance_bf(args) -> int:
    inst = _load_valid(args.instance)
    records = []
    for k, P in enumerate(inst.pairs):
        path = bf.bf_shortest_path(inst.rep.oracle, P, args.cap_nodes)
        records.append(
            {
                "pair": k,
                **_pair_dict(P),
                "compatible": compatible(P),
                "distance": None if path is None else len(path),
                "sequence": None if path is None else [{"x": x, "y": y} for x, y in path],
            }
        )
    _emit(dumps_report({"instance": inst.name, "command": "distance-bf", "records": records}), args.output)
    return EXIT_OK


def cmd_longest_monotone(args) -> int:
    from .solver import longest_monotone

    inst = _load_valid(args.instance)
    records = []
    for k, P in enumerate(inst.pairs):
        if not compatible(P):
            raise InfeasibleError(f"pair {k} is not compatible")
        seq = longest_monotone(inst.rep, P)
        brute = bf.bf_longest_monotone(inst.rep.oracle, P, args.cap_rank)
        if brute != len(seq):
            raise InternalError(f"pair {k}: monotone length {len(seq)} != brute force {brute}")
        records.append({"pair": k, **_pair_dict(P), "length": len(seq), "brute_force": brute, "sequence": sequence_to_list(seq)})
    _emit(dumps_report({"instance": inst.name, "command": "longest-monotone", "records": records}), args.output)
    return EXIT_OK


def _base_pairs(inst: InstanceFile):
    if inst.pairs:
        return [(P.A1, P.A2) for P in inst.pairs]
    bases = rep_bases(inst.rep)
    return [(A, B) for A in bases for B in bases]


def cmd_check_gabow(args) -> int:
    inst = _load_valid(args.instance)
    M = inst.rep.oracle
    records = []
    for A, B in _base_pairs(inst):
        found = bf.gabow_ordering(M, A, B, args.cap_rank)
        rec = {"A": sorted(A), "B": sorted(B), "ok": found is not None}
        if found is not None:
            rec["a"], rec["b"] = list(found.a), list(found.b)
        else:
            rec["witness"] = _witness(args, inst, BasisPairInstance(A, B, B, A), "gabow")
            log.error("potential counterexample to the Gabow ordering property: A=%s B=%s", sorted(A), sorted(B))
        records.append(rec)
    _emit(dumps_report({"instance": inst.name, "command": "check-gabow", "records": records}), args.output)
    return EXIT_OK if all(r["ok"] for r in records) else EXIT_INTERNAL


def cmd_check_white2(args) -> int:
    inst = _load_valid(args.instance)
    if not inst.pairs:
        pairs = gen_compatible_pairs(inst.rep, exhaustive=True)
    else:
        pairs = inst.pairs
    records = []
    for k, P in enumerate(pairs):
        equivalent = bf.white2_equivalent(inst.rep.oracle, P, args.cap_nodes)
        ok = equivalent == compatible(P)
        rec = {"pair": k, **_pair_dict(P), "compatible": compatible(P), "equivalent": equivalent, "ok": ok}
        if not ok:
            rec["witness"] = _witness(args, inst, P, "white2")
            log.error("potential counterexample to length-two equivalence: %s", _pair_dict(P))
        records.append(rec)
    _emit(dumps_report({"instance": inst.name, "command": "check-white2", "records": records}), args.output)
    return EXIT_OK if all(r["ok"] for r in records) else EXIT_INTERNAL


def cmd_check_equitable(args) -> int:
    inst = _load_valid(args.instance)
    result = bf.equitable_check(inst.rep.oracle)
    report = {"instance": inst.name, "command": "check-equitable", "partitionable": result.partitionable}
    if not result.partitionable:
        report["skipped"] = "not partitionable"
        log.warning("ground set does not split into two bases; equitability check skipped")
        _emit(dumps_report(report), args.output)
        return EXIT_OK
    report["equitable"] = result.equitable
    report["witnesses"] = [{"X": sorted(X), "B": sorted(B)} for X, B in sorted(result.witnesses.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    if not result.equitable:
        report["violating"] = sorted(result.violating)
        report["witness"] = _witness(args, inst, None, "equitable")
        log.error("potential counterexample to equitability: X=%s", sorted(result.violating))
    _emit(dumps_report(report), args.output)
    return EXIT_OK if result.equitable else EXIT_INTERNAL


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(args.family, args.n, args.r, args.seed, args.density)
    rep = generate(cfg)
    pairs = []
    if args.pairs:
        pairs = gen_compatible_pairs(rep, seed=args.seed, count=args.pairs)
    inst = InstanceFile(rep.name, rep, pairs, cfg.header())
    _emit(dumps_instance(inst), args.output)
    return EXIT_OK


def cmd_selftest(args, solve_fn=solve) -> int:
    results = run_acceptance(args.scale, solve_fn=solve_fn, progress=args.verbose)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    if not failed:
        print(f"selftest ({args.scale}): all {len(results)} criteria passed")
        return EXIT_OK
    first = failed[0]
    replay = Path(args.output or "selftest-failure.json")
    replay.write_text(json.dumps({"criterion": first.number, **(first.failure or {})}, indent=2) + "\n")
    print(f"selftest ({args.scale}): {len(failed)} criteria failed; first failing case written to {replay}")
    return EXIT_SELFTEST


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitex", description="Symmetric basis exchange in split matroids.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        return sp

    for name, fn, help_ in (
        ("solve", cmd_solve, "shortest exchange sequence for every pair in an instance"),
        ("distance-bf", cmd_distance_bf, "brute-force exchange distance"),
        ("longest-monotone", cmd_longest_monotone, "longest strictly monotone sequence, cross-checked"),
        ("check-gabow", cmd_check_gabow, "search Gabow orderings"),
        ("check-white2", cmd_check_white2, "length-two equivalence versus compatibility"),
        ("check-equitable", cmd_check_equitable, "equitability of a partitionable matroid"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("--instance", "-i", required=True)
        sp.add_argument("--cap-nodes", type=int, default=bf.DEFAULT_CAP_NODES)
        sp.add_argument("--cap-rank", type=int, default=bf.DEFAULT_CAP_RANK)
        if name == "solve":
            sp.add_argument("--check-bf", action="store_true", help="cross-check each distance by BFS")

    g = add("gen", cmd_gen, "generate a seeded instance file")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--r", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", type=int, default=0)
    g.add_argument("--pairs", type=int, default=0, help="number of compatible pairs to sample")

    s = add("selftest", cmd_selftest, "run the acceptance suite")
    s.add_argument("--scale", choices=SCALES, default="small")
    s.add_argument("--seed", type=int, default=0, help="unused; the suite is fixed")
    return p


def main(argv=None, solve_fn=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "selftest" and solve_fn is not None:
            return cmd_selftest(args, solve_fn)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InternalError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
