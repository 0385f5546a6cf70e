"""Seeded instance families and compatible basis-pair enumeration.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister), so a
``(family, n, r, seed, density)`` tuple always yields the same instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .core import BasisPairInstance, InputError
from .split import HyperedgeConstraint, SplitRepresentation, normalize_nonredundant

GENERATOR_ID = "splitex/python-random-mt19937/v1"

FAMILIES = ("uniform", "sparse-paving", "paving", "elementary-split", "k4")


@dataclass(frozen=True)
class GeneratorConfig:
    family: str
    n: int = 0
    r: int = 0
    seed: int = 0
    density: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family != "k4" and not 0 <= self.r <= self.n:
            raise InputError(f"need 0 <= r <= n, got n={self.n}, r={self.r}")
        if self.density < 0:
            raise InputError("density must be non-negative")

    def header(self) -> dict:
        return {
            "generator": GENERATOR_ID,
            "family": self.family,
            "n": self.n,
            "r": self.r,
            "seed": self.seed,
            "density": self.density,
        }


def generate(cfg: GeneratorConfig) -> SplitRepresentation:
    if cfg.family == "uniform":
        return gen_uniform(cfg.n, cfg.r)
    if cfg.family == "sparse-paving":
        return gen_sparse_paving(cfg.n, cfg.r, cfg.seed, cfg.density)
    if cfg.family == "paving":
        return gen_paving(cfg.n, cfg.r, cfg.seed, cfg.density)
    if cfg.family == "elementary-split":
        return gen_elementary_split(cfg.n, cfg.r, cfg.seed, cfg.density)
    return k4()


def _name(family, n, r, seed=None, density=None):
    tail = "" if seed is None else f"-s{seed}-d{density}"
    return f"{family}-n{n}-r{r}{tail}"


def gen_uniform(n: int, r: int) -> SplitRepresentation:
    if not 0 <= r <= n:
        raise InputError(f"need 0 <= r <= n, got n={n}, r={r}")
    return SplitRepresentation.build(n, r, (), name=f"U({r},{n})")


def _attempts(density: int) -> int:
    return 60 * density + 200


def gen_sparse_paving(n: int, r: int, seed: int, density: int, forced: Iterable[Iterable[int]] = ()) -> SplitRepresentation:
    """Greedy family of circuit-hyperplanes: r-sets pairwise meeting in <= r-2 elements."""
    if not 2 <= r <= n - 1:
        raise InputError(f"sparse paving generator needs 2 <= r <= n-1, got n={n}, r={r}")
    rng = random.Random(seed)
    accepted: list[frozenset] = []

    def offer(H):
        if len(accepted) < density and all(len(H & K) <= r - 2 for K in accepted):
            accepted.append(H)

    for H in forced:
        H = frozenset(H)
        if len(H) != r:
            raise InputError("forced hyperedges must have size r")
        offer(H)
    for _ in range(_attempts(density)):
        if len(accepted) >= density:
            break
        offer(frozenset(rng.sample(range(n), r)))
    cons = tuple(HyperedgeConstraint(H, r - 1) for H in accepted)
    return SplitRepresentation.build(n, r, cons, name=_name("sparse-paving", n, r, seed, density))


def gen_paving(n: int, r: int, seed: int, density: int) -> SplitRepresentation:
    if not 2 <= r <= n - 1:
        raise InputError(f"paving generator needs 2 <= r <= n-1, got n={n}, r={r}")
    rng = random.Random(seed)
    accepted: list[frozenset] = []
    for _ in range(_attempts(density)):
        if len(accepted) >= density:
            break
        size = rng.randint(r, n - 1)
        H = frozenset(rng.sample(range(n), size))
        if all(len(H & K) <= r - 2 for K in accepted):
            accepted.append(H)
    cons = tuple(HyperedgeConstraint(H, r - 1) for H in accepted)
    return SplitRepresentation.build(n, r, cons, name=_name("paving", n, r, seed, density))


def gen_elementary_split(n: int, r: int, seed: int, density: int) -> SplitRepresentation:
    if not 1 <= r <= n:
        raise InputError(f"elementary split generator needs 1 <= r <= n, got n={n}, r={r}")
    rng = random.Random(seed)
    accepted: list[HyperedgeConstraint] = []
    if r >= 2 and n >= 3:
        for _ in range(_attempts(density)):
            if len(accepted) >= density:
                break
            bound = rng.randint(1, r - 1)
            if bound + 1 > n - 1:
                continue
            size = rng.randint(bound + 1, n - 1)
            if n - size + bound < r:  # (H2)
                continue
            H = frozenset(rng.sample(range(n), size))
            if all(len(H & c.elements) <= bound + c.bound - r for c in accepted):  # (H1)
                accepted.append(HyperedgeConstraint(H, bound))
    rep = SplitRepresentation.build(n, r, accepted, name=_name("elementary-split", n, r, seed, density))
    return normalize_nonredundant(rep)


def k4() -> SplitRepresentation:
    """Graphic matroid of K4; edges 0=ab 1=ac 2=ad 3=bc 4=bd 5=cd, triangles as circuit-hyperplanes."""
    triangles = [(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)]
    return SplitRepresentation.build(6, 3, [(t, 2) for t in triangles], name="K4")


K4_EDGES = {0: ("a", "b"), 1: ("a", "c"), 2: ("a", "d"), 3: ("b", "c"), 4: ("b", "d"), 5: ("c", "d")}


def rep_bases(rep: SplitRepresentation) -> list[frozenset]:
    return [
        frozenset(c) for c in combinations(sorted(rep.ground), rep.rank) if rep.is_independent(frozenset(c))
    ]


def basis_pair_classes(rep: SplitRepresentation) -> dict:
    """Ordered basis pairs ``(A1, A2)`` grouped by ``(A1 | A2, A1 & A2)``.

    Two ordered pairs are compatible exactly when they fall in the same class.
    """
    bases = rep_bases(rep)
    classes: dict = {}
    for A1 in bases:
        for A2 in bases:
            classes.setdefault((A1 | A2, A1 & A2), []).append((A1, A2))
    return classes


def gen_compatible_pairs(
    rep: SplitRepresentation,
    seed: int = 0,
    count: Optional[int] = None,
    exhaustive: bool = False,
    disjoint_only: bool = False,
) -> list[BasisPairInstance]:
    if count == 0:
        return []
    classes = basis_pair_classes(rep)
    keys = sorted(classes, key=lambda k: (sorted(k[0]), sorted(k[1])))
    if disjoint_only:
        keys = [k for k in keys if not k[1]]
    if exhaustive:
        out = [
            BasisPairInstance(A1, A2, B1, B2)
            for k in keys
            for (A1, A2) in classes[k]
            for (B1, B2) in classes[k]
        ]
        return out if count is None else out[:count]
    if not keys:
        return []
    rng = random.Random(seed)
    total = sum(len(classes[k]) ** 2 for k in keys)
    want = total if count is None else min(count, total)
    seen: set = set()
    out = []
    # sample a class weighted by its number of pairs, then two members of it
    weights = [len(classes[k]) ** 2 for k in keys]
    while len(out) < want:
        k = rng.choices(keys, weights)[0]
        members = classes[k]
        P = BasisPairInstance(*rng.choice(members), *rng.choice(members))
        if P in seen:
            continue
        seen.add(P)
        out.append(P)
    return out
