"""Ground sets, independence oracles and the generic basis-exchange predicates.

Elements are plain integers and element sets are ``frozenset[int]``.  A
:class:`MatroidOracle` is nothing more than a ground set plus an independence
predicate; everything else in this module is derived from those two.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

ElementSet = frozenset


class SplitexError(Exception):
    """Base class for all errors raised by the package."""


class InputError(SplitexError, ValueError):
    """Malformed or out-of-contract input."""


class InfeasibleError(SplitexError):
    """The requested transformation cannot exist (e.g. incompatible pairs)."""


class InternalError(SplitexError, RuntimeError):
    """An invariant that the theory guarantees was violated."""


class CapacityError(SplitexError):
    """A brute-force routine exceeded its configured size cap."""


def eset(items: Iterable[int] = ()) -> frozenset:
    return frozenset(items)


def ordered(X: Iterable[int]) -> list[int]:
    return sorted(X)


@dataclass(frozen=True)
class MatroidOracle:
    ground: frozenset
    is_independent_fn: Callable[[frozenset], bool]

    def check(self, X: Iterable[int]) -> frozenset:
        X = frozenset(X)
        if not X <= self.ground:
            raise InputError(f"elements {sorted(X - self.ground)} are outside the ground set")
        return X

    def is_independent(self, X: Iterable[int]) -> bool:
        return self.is_independent_fn(self.check(X))

    @property
    def n(self) -> int:
        return len(self.ground)


@dataclass(frozen=True)
class BasisPairInstance:
    A1: frozenset
    A2: frozenset
    B1: frozenset
    B2: frozenset

    @classmethod
    def of(cls, A1, A2, B1, B2) -> "BasisPairInstance":
        return cls(frozenset(A1), frozenset(A2), frozenset(B1), frozenset(B2))

    def sets(self) -> tuple[frozenset, frozenset, frozenset, frozenset]:
        return self.A1, self.A2, self.B1, self.B2

    def reversed(self) -> "BasisPairInstance":
        return BasisPairInstance(self.B1, self.B2, self.A1, self.A2)


@dataclass(frozen=True)
class ExchangeStep:
    x: int
    y: int

    def __post_init__(self):
        if self.x == self.y:
            raise InputError(f"exchange step with x == y == {self.x}")


ExchangeSequence = Sequence[ExchangeStep]


def steps(pairs: Iterable[tuple[int, int]]) -> list[ExchangeStep]:
    return [ExchangeStep(x, y) for x, y in pairs]


def uniform_oracle(n: int, r: int) -> MatroidOracle:
    return MatroidOracle(frozenset(range(n)), lambda X: len(X) <= r)


def is_basis(M: MatroidOracle, X: Iterable[int]) -> bool:
    X = M.check(X)
    if not M.is_independent_fn(X):
        return False
    return not any(M.is_independent_fn(X | {e}) for e in M.ground - X)


def oracle_rank(M: MatroidOracle, Z: Iterable[int]) -> int:
    # greedy is exact for matroids regardless of the scan order
    Z = M.check(Z)
    current: frozenset = frozenset()
    for e in sorted(Z):
        if M.is_independent_fn(current | {e}):
            current = current | {e}
    return len(current)


def matroid_rank(M: MatroidOracle) -> int:
    return oracle_rank(M, M.ground)


def all_bases(M: MatroidOracle) -> list[frozenset]:
    r = matroid_rank(M)
    return [frozenset(c) for c in combinations(sorted(M.ground), r) if M.is_independent_fn(frozenset(c))]


def compatible(P: BasisPairInstance) -> bool:
    return (P.A1 & P.A2) == (P.B1 & P.B2) and (P.A1 | P.A2) == (P.B1 | P.B2)


def apply_step(A1: frozenset, A2: frozenset, x: int, y: int) -> tuple[frozenset, frozenset]:
    return (A1 - {x}) | {y}, (A2 - {y}) | {x}


def symmetric_exchange_valid(M: MatroidOracle, A1, A2, x: int, y: int) -> bool:
    A1, A2 = M.check(A1), M.check(A2)
    if x not in A1 - A2:
        raise InputError(f"{x} is not in A1 - A2")
    if y not in A2 - A1:
        raise InputError(f"{y} is not in A2 - A1")
    new1, new2 = apply_step(A1, A2, x, y)
    return is_basis(M, new1) and is_basis(M, new2)


def co_exchange_find(M: MatroidOracle, A, B, f: int) -> int:
    """Smallest ``e`` in ``A - B`` such that ``A - e + f`` is a basis."""
    A, B = M.check(A), M.check(B)
    if f not in B - A:
        raise InputError(f"{f} is not in B - A")
    for e in sorted(A - B):
        if is_basis(M, (A - {e}) | {f}):
            return e
    raise InternalError("co-exchange axiom failed; the oracle is not a matroid or A, B are not bases")


def verify_sequence(M: MatroidOracle, P: BasisPairInstance, seq: ExchangeSequence) -> bool:
    A1, A2 = P.A1, P.A2
    for step in seq:
        x, y = step.x, step.y
        if x not in M.ground or y not in M.ground:
            raise InputError(f"step ({x}, {y}) references elements outside the ground set")
        if x not in A1 - A2 or y not in A2 - A1:
            return False
        A1, A2 = apply_step(A1, A2, x, y)
        if not (is_basis(M, A1) and is_basis(M, A2)):
            return False
    return A1 == P.B1 and A2 == P.B2


def _circuits(M: MatroidOracle) -> list[frozenset]:
    found: list[frozenset] = []
    elems = sorted(M.ground)
    for k in range(1, len(elems) + 1):
        for c in combinations(elems, k):
            C = frozenset(c)
            if M.is_independent_fn(C):
                continue
            if any(D <= C for D in found):
                continue
            found.append(C)
    return found


def connected_components(M: MatroidOracle, cap: int = 16) -> list[frozenset]:
    """Classes of the relation "lie on a common circuit", sorted by smallest element.

    Brute force over all subsets; ``cap`` bounds the ground-set size.
    """
    if M.n > cap:
        raise CapacityError(f"ground set of size {M.n} exceeds component cap {cap}")
    parent = {e: e for e in M.ground}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for C in _circuits(M):
        first, *rest = sorted(C)
        for e in rest:
            a, b = find(first), find(e)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set] = {}
    for e in M.ground:
        groups.setdefault(find(e), set()).add(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def contract_oracle(M: MatroidOracle, T: Iterable[int]) -> MatroidOracle:
    T = M.check(T)
    if not M.is_independent_fn(T):
        raise InputError("cannot contract a dependent set")
    inner = M.is_independent_fn
    return MatroidOracle(M.ground - T, lambda X: inner(X | T))


def restrict_oracle(M: MatroidOracle, S: Iterable[int]) -> MatroidOracle:
    S = M.check(S)
    return MatroidOracle(S, M.is_independent_fn)


def direct_sum(*parts: MatroidOracle) -> MatroidOracle:
    for a, b in combinations(parts, 2):
        if a.ground & b.ground:
            raise InputError("direct sum needs disjoint ground sets")
    ground = frozenset().union(*(p.ground for p in parts))

    def indep(X):
        return all(p.is_independent_fn(X & p.ground) for p in parts)

    return MatroidOracle(ground, indep)
