"""Hypergraph representations of elementary split matroids.

A representation is a ground set, a rank ``r`` and hyperedge constraints
``(H, b)``; a set ``X`` is independent iff ``|X| <= r`` and ``|X & H| <= b``
for every constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

from .core import InputError, InternalError, MatroidOracle


@dataclass(frozen=True)
class HyperedgeConstraint:
    elements: frozenset
    bound: int

    @classmethod
    def of(cls, elements: Iterable[int], bound: int) -> "HyperedgeConstraint":
        return cls(frozenset(elements), int(bound))


@dataclass(frozen=True)
class SplitRepresentation:
    ground: frozenset
    rank: int
    constraints: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rank < 0:
            raise InputError("rank must be non-negative")
        if len(self.ground) < self.rank:
            raise InputError(f"ground set of size {len(self.ground)} is smaller than rank {self.rank}")
        for i, c in enumerate(self.constraints):
            if c.bound < 0:
                raise InputError(f"hyperedge {i} has negative bound")
            if not c.elements:
                raise InputError(f"hyperedge {i} is empty")
            if not c.elements < self.ground:
                raise InputError(f"hyperedge {i} is not a proper subset of the ground set")

    @classmethod
    def build(cls, n: int, rank: int, constraints: Iterable = (), name: str = "") -> "SplitRepresentation":
        cons = tuple(
            c if isinstance(c, HyperedgeConstraint) else HyperedgeConstraint.of(*c) for c in constraints
        )
        return cls(frozenset(range(n)), rank, cons, name)

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def q(self) -> int:
        return len(self.constraints)

    def check(self, X: Iterable[int]) -> frozenset:
        X = frozenset(X)
        if not X <= self.ground:
            raise InputError(f"elements {sorted(X - self.ground)} are outside the ground set")
        return X

    def is_independent(self, X: frozenset) -> bool:
        # hot path: no range check
        if len(X) > self.rank:
            return False
        for c in self.constraints:
            if len(X & c.elements) > c.bound:
                return False
        return True

    def is_basis(self, X: frozenset) -> bool:
        return len(X) == self.rank and self.is_independent(X)

    @cached_property
    def oracle(self) -> MatroidOracle:
        return MatroidOracle(self.ground, self.is_independent)

    def with_name(self, name: str) -> "SplitRepresentation":
        return SplitRepresentation(self.ground, self.rank, self.constraints, name)


def validate_representation(rep: SplitRepresentation) -> list[str]:
    """Human-readable list of (H1)/(H2) violations; empty for a valid representation."""
    return list(_violations(rep))


@lru_cache(maxsize=4096)
def _violations(rep: SplitRepresentation) -> tuple:
    violations = []
    r = rep.rank
    cons = rep.constraints
    for i, j in combinations(range(len(cons)), 2):
        inter = len(cons[i].elements & cons[j].elements)
        limit = cons[i].bound + cons[j].bound - r
        if inter > limit:
            violations.append(f"(H1) violated on pair ({i},{j}): |H_i & H_j| = {inter} > {limit}")
    for i, c in enumerate(cons):
        lhs = len(rep.ground - c.elements) + c.bound
        if lhs < r:
            violations.append(f"(H2) violated on hyperedge {i}: |S - H_i| + r_i = {lhs} < {r}")
    return tuple(violations)


def h1_violations(rep: SplitRepresentation) -> list[tuple[int, int]]:
    cons = rep.constraints
    return [
        (i, j)
        for i, j in combinations(range(len(cons)), 2)
        if len(cons[i].elements & cons[j].elements) > cons[i].bound + cons[j].bound - rep.rank
    ]


def is_redundant(rep: SplitRepresentation, c: HyperedgeConstraint) -> bool:
    return c.bound >= rep.rank or len(c.elements) <= c.bound


def normalize_nonredundant(rep: SplitRepresentation) -> SplitRepresentation:
    """Drop constraints that never bind; the independent sets are unchanged."""
    problems = validate_representation(rep)
    if problems:
        raise InputError("invalid representation: " + "; ".join(problems))
    out = _normalize(rep)
    return out if out.name == rep.name else out.with_name(rep.name)


@lru_cache(maxsize=4096)
def _normalize(rep: SplitRepresentation) -> SplitRepresentation:
    kept = tuple(c for c in rep.constraints if not is_redundant(rep, c))
    return SplitRepresentation(rep.ground, rep.rank, kept, rep.name)


def is_nonredundant(rep: SplitRepresentation) -> bool:
    return not validate_representation(rep) and not any(is_redundant(rep, c) for c in rep.constraints)


def rep_is_independent(rep: SplitRepresentation, X: Iterable[int]) -> bool:
    return rep.is_independent(rep.check(X))


def rep_rank(rep: SplitRepresentation, Z: Iterable[int]) -> int:
    Z = rep.check(Z)
    value = min(rep.rank, len(Z))
    for c in rep.constraints:
        value = min(value, len(Z - c.elements) + c.bound)
    return value


@dataclass(frozen=True)
class TightnessReport:
    F: frozenset
    tight_indices: tuple


def tight_hyperedges(rep: SplitRepresentation, F: Iterable[int]) -> TightnessReport:
    F = rep.check(F)
    tight = tuple(i for i, c in enumerate(rep.constraints) if len(F & c.elements) == c.bound)
    if __debug__ and len(F) == rep.rank and tight and is_nonredundant(rep):
        assert rep.is_independent(F), "size-r tight set is not a basis"
        for i, j in combinations(tight, 2):
            Hi, Hj = rep.constraints[i].elements, rep.constraints[j].elements
            assert Hi & Hj <= F <= Hi | Hj, f"sandwich property fails for hyperedges {i}, {j}"
    return TightnessReport(F, tight)


def contract_representation(rep: SplitRepresentation, T: Iterable[int]) -> SplitRepresentation:
    return _contract(rep, rep.check(T))


@lru_cache(maxsize=4096)
def _contract(rep: SplitRepresentation, T: frozenset) -> SplitRepresentation:
    if not rep.is_independent(T):
        raise InputError("cannot contract a dependent set")
    cons = []
    for c in rep.constraints:
        bound = c.bound - len(c.elements & T)
        if bound < 0:
            raise InternalError("contracting an independent set produced a negative bound")
        rest = c.elements - T
        if not rest:
            continue  # an emptied hyperedge constrains nothing
        cons.append(HyperedgeConstraint(rest, bound))
    ground = rep.ground - T
    # hyperedges that became the whole ground set are redundant: |X & H| = |X| <= r' <= bound by (H2)
    cons = [c for c in cons if c.elements < ground]
    out = SplitRepresentation(ground, rep.rank - len(T), tuple(cons), rep.name)
    return normalize_nonredundant(out)
