"""Acceptance harness: runs every exit criterion against brute-force ground truth.

``run_acceptance(scale)`` builds a deterministic instance suite, evaluates the
nine criteria and returns one :class:`CriterionResult` per criterion.  The CLI
``selftest`` command and ``tests/test_acceptance.py`` both drive it.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from .core import (
    BasisPairInstance,
    ExchangeStep,
    compatible,
    contract_oracle,
    oracle_rank,
    verify_sequence,
)
from .generators import GeneratorConfig, basis_pair_classes, generate, k4, rep_bases
from .oracle import (
    bf_longest_monotone,
    bfs_pair_distances,
    equitable_check,
    gabow_ordering,
    is_base_orderable,
    is_gabow_ordering,
)
from .solver import MONOTONE_BOUNDS, longest_monotone, solve
from .split import contract_representation, rep_rank, tight_hyperedges

log = logging.getLogger(__name__)

SCALES = ("smoke", "small", "full")

CRITERIA = {
    1: "solver distance equals BFS distance on all compatible pairs",
    2: "K4 attains r - |A1 & B1| + 1 and the solver matches",
    3: "longest monotone sequence matches brute force",
    4: "(A,B) -> (B,A) yields a Gabow ordering; backtracking agrees",
    5: "finite BFS distance iff compatible",
    6: "equitability on partitionable instances",
    7: "monotone length bounds for split / base orderable / paving",
    8: "rank formula, tightness sandwich, contraction rule",
    9: "blocking certificate integrity",
}


@dataclass
class CriterionResult:
    number: int
    passed: bool = True
    checked: int = 0
    detail: str = ""
    failure: Optional[dict] = None
    seconds: float = 0.0

    @property
    def title(self) -> str:
        return CRITERIA[self.number]

    def fail(self, case: dict, why: str) -> None:
        if self.passed:
            self.failure = {"why": why, **case}
        self.passed = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] criterion {self.number}: {self.title}; {self.checked} checks{extra}"


def suite_configs(scale: str) -> list[GeneratorConfig]:
    """Deterministic instance suite; every instance has n <= 8 and r <= 4."""
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}")
    count = {"smoke": 12, "small": 200, "full": 400}[scale]
    max_n = 6 if scale == "smoke" else 8
    rng = random.Random(20230101)
    families = ("elementary-split", "sparse-paving", "paving", "elementary-split", "sparse-paving")
    configs = []
    for i in range(count):
        family = families[i % len(families)]
        n = rng.randint(4, max_n)
        r = rng.randint(2, min(4, n - 1))
        density = rng.randint(1, 2 * n)
        configs.append(GeneratorConfig(family, n, r, seed=1000 + i, density=density))
    return configs


def case_of(rep, P: Optional[BasisPairInstance] = None, **extra) -> dict:
    case = {
        "name": rep.name,
        "ground_set_size": rep.n,
        "rank": rep.rank,
        "hyperedges": [{"elements": sorted(c.elements), "bound": c.bound} for c in rep.constraints],
    }
    if P is not None:
        case["pairs"] = [{"A1": sorted(P.A1), "A2": sorted(P.A2), "B1": sorted(P.B1), "B2": sorted(P.B2)}]
    case.update(extra)
    return case


def _is_paving(rep) -> bool:
    return all(c.bound == rep.rank - 1 for c in rep.constraints)


def check_certificate(rep, P: BasisPairInstance, result) -> list[str]:
    """Independent re-check of a blocked-path certificate; returns failed items."""
    cert = result.certificate
    problems = []
    crep = cert.rep
    h = cert.hyperedges
    if len(set(h)) != 4:
        problems.append("hyperedges not distinct")
    H = [crep.constraints[i] for i in h]
    T = P.A1 & P.A2
    prefix = cert.monotone_steps
    A1p, A2p = P.A1 - T, P.A2 - T
    for st in prefix:
        A1p, A2p = (A1p - {st.x}) | {st.y}, (A2p - {st.y}) | {st.x}
    B1, B2 = P.B1 - T, P.B2 - T
    tight = lambda X, c: len(X & c.elements) == c.bound
    if not (tight(A1p, H[0]) and tight(A1p, H[2]) and tight(A2p, H[1]) and tight(A2p, H[3])):
        problems.append("tightness of the stuck pair")
    d = cert.d
    if d <= 0 or d % 2:
        problems.append("d not even and positive")
    if d != len(A1p - B1):
        problems.append("d differs from |A1' - B1|")
    sizes = [len(C) for C in (cert.E, cert.F, cert.G, cert.Hc)]
    if any(s * 2 != d for s in sizes):
        problems.append(f"class sizes {sizes} differ from d/2")
    if cert.E | cert.G != (cert.start[0] & cert.target[1]) or cert.F | cert.Hc != (cert.start[1] & cert.target[0]):
        problems.append("classes do not cover the stuck elements")
    if d > 2 * len((P.A1 & P.B1) - T):
        problems.append("d exceeds 2|A1 & B1|")
    members = sum(cert.z in c.elements for c in H)
    if cert.z not in (A1p & B1) | (A2p & B2):
        problems.append("pivot outside the settled elements")
    if members % 2 != 1:
        problems.append(f"pivot lies in {members} blocking hyperedges (even)")
    if len(result.sequence) - len(prefix) != d + 1:
        problems.append("closing schedule length differs from d + 1")
    return problems


def _criterion8(rep, res: CriterionResult) -> None:
    M = rep.oracle
    elems = sorted(rep.ground)
    subsets = [frozenset(c) for k in range(len(elems) + 1) for c in combinations(elems, k)]
    for Z in subsets:
        res.checked += 1
        if rep_rank(rep, Z) != oracle_rank(M, Z):
            res.fail(case_of(rep, Z=sorted(Z)), "rank formula disagrees with greedy rank")
            return
    for c in combinations(elems, rep.rank):
        F = frozenset(c)
        tight = tight_hyperedges(rep, F).tight_indices
        if not tight:
            continue
        res.checked += 1
        if not rep.is_independent(F):
            res.fail(case_of(rep, F=sorted(F)), "tight size-r set is not a basis")
            return
        for i, j in combinations(tight, 2):
            Hi, Hj = rep.constraints[i].elements, rep.constraints[j].elements
            if not (Hi & Hj <= F <= Hi | Hj):
                res.fail(case_of(rep, F=sorted(F), pair=[i, j]), "sandwich property fails")
                return
    for k in range(3):
        for t in combinations(elems, k):
            T = frozenset(t)
            if not rep.is_independent(T):
                continue
            crep = contract_representation(rep, T)
            cM = contract_oracle(M, T)
            rest = sorted(rep.ground - T)
            for m in range(len(rest) + 1):
                for x in combinations(rest, m):
                    X = frozenset(x)
                    res.checked += 1
                    if crep.is_independent(X) != cM.is_independent_fn(X):
                        res.fail(case_of(rep, T=sorted(T), X=sorted(X)), "contraction rule disagrees with oracle")
                        return


def evaluate_instance(rep, results: dict, solve_fn: Callable = solve, timers: Optional[dict] = None) -> None:
    """Run criteria 1, 3-9 on one instance, accumulating into ``results``."""
    timers = timers if timers is not None else {}
    M = rep.oracle
    r = rep.rank
    c1, c3, c4, c5, c6, c7, c8, c9 = (results[i] for i in (1, 3, 4, 5, 6, 7, 8, 9))
    t0 = time.perf_counter()
    paving = _is_paving(rep)
    base_orderable = is_base_orderable(M)
    classes = basis_pair_classes(rep)
    for members in classes.values():
        member_set = set(members)
        for A1, A2 in members:
            dist = bfs_pair_distances(M, A1, A2)
            c5.checked += 1
            if set(dist) != member_set:
                c5.fail(case_of(rep, A1=sorted(A1), A2=sorted(A2)), "reachable pairs differ from the compatible class")
            for B1, B2 in members:
                P = BasisPairInstance(A1, A2, B1, B2)
                t1 = time.perf_counter()
                try:
                    result = solve_fn(rep, P)
                except Exception as exc:  # any solver failure is an acceptance failure
                    c1.fail(case_of(rep, P), f"solver raised {type(exc).__name__}: {exc}")
                    c1.checked += 1
                    continue
                timers["c1"] = timers.get("c1", 0.0) + time.perf_counter() - t1
                c1.checked += 1
                lower = r - len(A1 & B1)
                if result.distance != dist[(B1, B2)]:
                    c1.fail(case_of(rep, P, solver=result.distance, bfs=dist[(B1, B2)]), "distance differs from BFS")
                elif len(result.sequence) != result.distance or not verify_sequence(M, P, result.sequence):
                    c1.fail(case_of(rep, P), "sequence does not re-verify")
                elif result.distance > min(r, lower + 1):
                    c1.fail(case_of(rep, P), "distance exceeds min(r, r - |A1 & B1| + 1)")

                mono = len(longest_monotone(rep, P))
                brute = bf_longest_monotone(M, P)
                c3.checked += 1
                if mono != brute:
                    c3.fail(case_of(rep, P, solver=mono, brute=brute), "longest monotone length differs")

                k = len(A1 & B1)
                c7.checked += 1
                if mono < MONOTONE_BOUNDS["split"](r, k):
                    c7.fail(case_of(rep, P, length=mono), "split bound r - 3|A1 & B1| violated")
                if base_orderable:
                    c7.checked += 1
                    if mono < MONOTONE_BOUNDS["base_orderable_split"](r, k):
                        c7.fail(case_of(rep, P, length=mono), "base orderable bound r - 2|A1 & B1| violated")
                if paving:
                    c7.checked += 1
                    if mono < MONOTONE_BOUNDS["paving"](r, k):
                        c7.fail(case_of(rep, P, length=mono), "paving bound r - |A1 & B1| - 2 violated")

                if result.certificate is not None:
                    c9.checked += 1
                    problems = check_certificate(rep, P, result)
                    if problems:
                        results.setdefault("c9_problems", {})
                        for p in problems:
                            key = p.split(" (")[0]
                            results["c9_problems"][key] = results["c9_problems"].get(key, 0) + 1
                        c9.fail(case_of(rep, P, certificate=result.certificate.summary()), "; ".join(problems))

    bases = rep_bases(rep)
    for A in bases:
        for B in bases:
            P = BasisPairInstance(A, B, B, A)
            c4.checked += 1
            try:
                result = solve_fn(rep, P)
            except Exception as exc:
                c4.fail(case_of(rep, P), f"solver raised {type(exc).__name__}: {exc}")
                continue
            common = sorted(A & B)
            if result.distance != r - len(common):
                c4.fail(case_of(rep, P, distance=result.distance), "(A,B) -> (B,A) is not a |A - B| step sequence")
                continue
            a = tuple(common) + tuple(s.x for s in result.sequence)
            b = tuple(common) + tuple(s.y for s in result.sequence)
            if not is_gabow_ordering(M, a, b):
                c4.fail(case_of(rep, P, a=list(a), b=list(b)), "solver sequence is not a Gabow ordering")
            elif gabow_ordering(M, A, B) is None:
                c4.fail(case_of(rep, P), "backtracking found no Gabow ordering")

    eq = equitable_check(M)
    if eq.partitionable:
        c6.checked += 1
        if not eq.equitable:
            c6.fail(case_of(rep, X=sorted(eq.violating)), "no balanced basis partition for X")

    _criterion8(rep, c8)
    timers["total"] = timers.get("total", 0.0) + time.perf_counter() - t0


def check_k4_tightness(res: CriterionResult, solve_fn: Callable = solve) -> None:
    rep = k4()
    M = rep.oracle
    hits = 0
    for members in basis_pair_classes(rep).values():
        for A1, A2 in members:
            dist = bfs_pair_distances(M, A1, A2)
            for (B1, B2), dv in dist.items():
                lower = rep.rank - len(A1 & B1)
                if dv != lower + 1:
                    continue
                hits += 1
                P = BasisPairInstance(A1, A2, B1, B2)
                res.checked += 1
                result = solve_fn(rep, P)
                if result.distance != dv or result.certificate is None:
                    res.fail(case_of(rep, P, solver=result.distance, bfs=dv), "solver misses the +1 case")
    if hits == 0:
        res.fail(case_of(rep), "brute force found no pair at distance r - |A1 & B1| + 1")
    res.detail = f"{hits} pairs at lower bound + 1"


def run_acceptance(scale: str = "small", solve_fn: Callable = solve, progress: bool = False) -> list[CriterionResult]:
    results = {i: CriterionResult(i) for i in CRITERIA}
    t0 = time.perf_counter()
    check_k4_tightness(results[2], solve_fn)
    results[2].seconds = time.perf_counter() - t0

    reps = [generate(cfg) for cfg in suite_configs(scale)] + [k4()]
    timers: dict = {}
    t0 = time.perf_counter()
    for idx, rep in enumerate(reps):
        evaluate_instance(rep, results, solve_fn, timers)
        if progress:
            log.info("instance %d/%d %s done (%.1fs)", idx + 1, len(reps), rep.name, time.perf_counter() - t0)
    for i in (1, 3, 4, 5, 6, 7, 8, 9):
        results[i].seconds = time.perf_counter() - t0

    c1 = results[1]
    c1.detail = f"{len(reps)} instances, solver time {timers.get('c1', 0.0):.1f}s"
    if len(reps) < 200 and scale != "smoke":
        c1.fail({}, f"only {len(reps)} instances")
    if timers.get("c1", 0.0) > 300:
        c1.fail({}, "solver time over the 5 minute budget")
    if results[9].checked == 0:
        results[9].fail({}, "no run took the blocked path")
    problems = results.pop("c9_problems", {})
    if problems:
        results[9].detail = ", ".join(f"{k}: {v}/{results[9].checked}" for k, v in sorted(problems.items()))
    else:
        results[9].detail = f"{results[9].checked} blocked runs"
    return [results[i] for i in sorted(CRITERIA)]
