from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from splitex.core import BasisPairInstance
from splitex.generators import GeneratorConfig, gen_compatible_pairs, gen_sparse_paving, generate, k4
from splitex.solver import solve
from splitex.split import HyperedgeConstraint, SplitRepresentation

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def e1():
    return gen_sparse_paving(6, 3, seed=0, density=1, forced=[(0, 1, 2)])


@pytest.fixture(scope="session")
def k4rep():
    return k4()


@pytest.fixture(scope="session")
def e1_pair():
    return BasisPairInstance.of({0, 1, 3}, {2, 4, 5}, {0, 1, 4}, {2, 3, 5})


@pytest.fixture(scope="session")
def k4_blocked(k4rep):
    for P in gen_compatible_pairs(k4rep, exhaustive=True):
        if solve(k4rep, P).certificate is not None:
            return P
    raise AssertionError("K4 has no blocked pair")


def permuted(rep: SplitRepresentation, perm: dict) -> SplitRepresentation:
    cons = tuple(HyperedgeConstraint(frozenset(perm[e] for e in c.elements), c.bound) for c in rep.constraints)
    return SplitRepresentation(frozenset(perm[e] for e in rep.ground), rep.rank, cons)


@st.composite
def small_reps(draw, max_n: int = 7):
    family = draw(st.sampled_from(["sparse-paving", "paving", "elementary-split", "uniform"]))
    n = draw(st.integers(3, max_n))
    r = draw(st.integers(2, n - 1))
    seed = draw(st.integers(0, 10_000))
    density = draw(st.integers(0, 5))
    return generate(GeneratorConfig(family, n, r, seed, density))


@st.composite
def rep_with_pair(draw, max_n: int = 7):
    rep = draw(small_reps(max_n))
    pairs = gen_compatible_pairs(rep, seed=draw(st.integers(0, 1000)), count=1)
    P = pairs[0]
    return rep, P
