"""Brute-force ground truth over an independence oracle.

Everything here is exponential and only meant for small instances; each
routine takes an explicit cap and raises :class:`CapacityError` beyond it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

import networkx as nx

from .core import (
    BasisPairInstance,
    CapacityError,
    MatroidOracle,
    apply_step,
    compatible,
    matroid_rank,
)

INF = float("inf")
DEFAULT_CAP_NODES = 10**6
DEFAULT_CAP_RANK = 6


def _basis_test(M: MatroidOracle):
    r = matroid_rank(M)
    indep = M.is_independent_fn
    return r, lambda X: len(X) == r and indep(X)


def exchange_neighbours(is_basis, X1: frozenset, X2: frozenset):
    for x in sorted(X1 - X2):
        for y in sorted(X2 - X1):
            n1, n2 = apply_step(X1, X2, x, y)
            if is_basis(n1) and is_basis(n2):
                yield (x, y), (n1, n2)


def bfs_pair_distances(M: MatroidOracle, A1, A2, cap_nodes: int = DEFAULT_CAP_NODES) -> dict:
    """Exchange distance from ``(A1, A2)`` to every reachable ordered basis pair."""
    _, is_basis = _basis_test(M)
    start = (frozenset(A1), frozenset(A2))
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for _, nxt in exchange_neighbours(is_basis, *node):
            if nxt not in dist:
                if len(dist) >= cap_nodes:
                    raise CapacityError(f"pair graph exceeds {cap_nodes} nodes")
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
    return dist


def bf_exchange_distance(M: MatroidOracle, P: BasisPairInstance, cap_nodes: int = DEFAULT_CAP_NODES):
    """Shortest number of symmetric exchanges, or ``inf`` if unreachable."""
    if not compatible(P):
        return INF
    _, is_basis = _basis_test(M)
    start, goal = (P.A1, P.A2), (P.B1, P.B2)
    if start == goal:
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for _, nxt in exchange_neighbours(is_basis, *node):
            if nxt in dist:
                continue
            if nxt == goal:
                return dist[node] + 1
            if len(dist) >= cap_nodes:
                raise CapacityError(f"pair graph exceeds {cap_nodes} nodes")
            dist[nxt] = dist[node] + 1
            queue.append(nxt)
    return INF


def bf_shortest_path(M: MatroidOracle, P: BasisPairInstance, cap_nodes: int = DEFAULT_CAP_NODES):
    """A shortest exchange sequence as ``(x, y)`` tuples, or ``None`` if unreachable."""
    if not compatible(P):
        return None
    _, is_basis = _basis_test(M)
    start, goal = (P.A1, P.A2), (P.B1, P.B2)
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            path = []
            while parent[node] is not None:
                node, step = parent[node]
                path.append(step)
            return path[::-1]
        for step, nxt in exchange_neighbours(is_basis, *node):
            if nxt not in parent:
                if len(parent) >= cap_nodes:
                    raise CapacityError(f"pair graph exceeds {cap_nodes} nodes")
                parent[nxt] = (node, step)
                queue.append(nxt)
    return None


def bf_longest_monotone(M: MatroidOracle, P: BasisPairInstance, cap_rank: int = DEFAULT_CAP_RANK) -> int:
    """Length of a longest strictly monotone exchange sequence, by memoised search.

    A strictly monotone step moves some ``x`` in ``A1 & B2`` out of the first
    member and some ``y`` in ``A2 & B1`` into it, so a state is determined by
    the current first member alone.
    """
    r, is_basis = _basis_test(M)
    if r > cap_rank:
        raise CapacityError(f"rank {r} exceeds monotone-search cap {cap_rank}")
    union, inter = P.A1 | P.A2, P.A1 & P.A2
    out1, in1 = P.A1 & P.B2 - inter, P.A2 & P.B1 - inter

    @lru_cache(maxsize=None)
    def best(X1: frozenset) -> int:
        X2 = (union - X1) | inter
        top = 0
        for x in X1 & out1:
            for y in X2 & in1:
                n1, n2 = apply_step(X1, X2, x, y)
                if is_basis(n1) and is_basis(n2):
                    top = max(top, 1 + best(n1))
        return top

    return best(P.A1)


def is_gabow_ordering(M: MatroidOracle, a, b) -> bool:
    _, is_basis = _basis_test(M)
    r = len(a)
    if len(b) != r:
        return False
    for i in range(r + 1):
        if not is_basis(frozenset(a[:i]) | frozenset(b[i:])):
            return False
        if not is_basis(frozenset(b[:i]) | frozenset(a[i:])):
            return False
    return True


@dataclass(frozen=True)
class CyclicOrdering:
    a: tuple
    b: tuple


def gabow_ordering(M: MatroidOracle, A, B, cap_rank: int = DEFAULT_CAP_RANK) -> Optional[CyclicOrdering]:
    """Backtracking search for orderings making every mixed prefix/suffix a basis."""
    r, is_basis = _basis_test(M)
    A, B = frozenset(A), frozenset(B)
    if r > cap_rank:
        raise CapacityError(f"rank {r} exceeds ordering-search cap {cap_rank}")
    if not (is_basis(A) and is_basis(B)):
        return None
    dead: set = set()

    def extend(a: tuple, b: tuple):
        if len(a) == r:
            return a, b
        key = (frozenset(a), frozenset(b))
        if key in dead:
            return None
        restA, restB = sorted(A - set(a)), sorted(B - set(b))
        for ai in restA:
            for bi in restB:
                na, nb = a + (ai,), b + (bi,)
                if is_basis(frozenset(na) | (B - set(nb))) and is_basis(frozenset(nb) | (A - set(na))):
                    found = extend(na, nb)
                    if found:
                        return found
        dead.add(key)
        return None

    found = extend((), ())
    if found is None:
        return None
    return CyclicOrdering(*found)


def white2_equivalent(M: MatroidOracle, P: BasisPairInstance, cap_nodes: int = DEFAULT_CAP_NODES) -> bool:
    return bf_exchange_distance(M, P, cap_nodes) != INF


@dataclass
class EquitableResult:
    partitionable: bool
    equitable: bool = False
    witnesses: dict = field(default_factory=dict)
    violating: Optional[frozenset] = None


def equitable_check(M: MatroidOracle, cap_n: int = 12) -> EquitableResult:
    """Search, for every ``X``, a basis ``B`` with complementary basis and balanced ``|B & X|``."""
    if M.n > cap_n:
        raise CapacityError(f"ground set of size {M.n} exceeds equitability cap {cap_n}")
    r, is_basis = _basis_test(M)
    S = M.ground
    if len(S) != 2 * r:
        return EquitableResult(partitionable=False)
    splits = [
        frozenset(c) for c in combinations(sorted(S), r) if is_basis(frozenset(c)) and is_basis(S - frozenset(c))
    ]
    if not splits:
        return EquitableResult(partitionable=False)
    elems = sorted(S)
    witnesses = {}
    for k in range(len(elems) + 1):
        for xs in combinations(elems, k):
            X = frozenset(xs)
            comp = S - X
            # a witness for X also serves S - X
            if comp in witnesses:
                continue
            lo, hi = k // 2, (k + 1) // 2
            for B in splits:
                if lo <= len(B & X) <= hi:
                    witnesses[X] = B
                    break
            else:
                return EquitableResult(True, False, witnesses, X)
    return EquitableResult(True, True, witnesses)


def base_orderable_pair(M: MatroidOracle, A, B) -> Optional[dict]:
    """A bijection ``phi: A -> B`` with ``A - e + phi(e)`` and ``B - phi(e) + e`` bases, if any."""
    _, is_basis = _basis_test(M)
    A, B = frozenset(A), frozenset(B)
    G = nx.Graph()
    left = [("a", e) for e in sorted(A)]
    G.add_nodes_from(left)
    G.add_nodes_from(("b", f) for f in sorted(B))
    for e in sorted(A):
        for f in sorted(B):
            if is_basis((A - {e}) | {f}) and is_basis((B - {f}) | {e}):
                G.add_edge(("a", e), ("b", f))
    matching = nx.bipartite.hopcroft_karp_matching(G, top_nodes=left)
    phi = {e: matching[("a", e)][1] for e in sorted(A) if ("a", e) in matching}
    return phi if len(phi) == len(A) else None


def is_base_orderable(M: MatroidOracle) -> bool:
    r, is_basis = _basis_test(M)
    bases = [frozenset(c) for c in combinations(sorted(M.ground), r) if is_basis(frozenset(c))]
    return all(base_orderable_pair(M, A, B) is not None for A, B in combinations(bases, 2))
