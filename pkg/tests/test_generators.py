from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from splitex.core import InputError, compatible
from splitex.generators import (
    K4_EDGES,
    GeneratorConfig,
    basis_pair_classes,
    gen_compatible_pairs,
    gen_elementary_split,
    gen_paving,
    gen_sparse_paving,
    gen_uniform,
    generate,
    k4,
    rep_bases,
)
from splitex.split import validate_representation


def test_uniform():
    assert gen_uniform(4, 2).constraints == () and gen_uniform(4, 2).name == "U(2,4)"
    assert rep_bases(gen_uniform(3, 0)) == [frozenset()]
    assert rep_bases(gen_uniform(5, 5)) == [frozenset(range(5))]
    with pytest.raises(InputError):
        gen_uniform(2, 3)


def test_forced_sample_gives_e1(e1):
    assert e1.n == 6 and e1.rank == 3
    assert [(set(c.elements), c.bound) for c in e1.constraints] == [({0, 1, 2}, 2)]


def test_density_zero_is_uniform():
    assert gen_sparse_paving(6, 3, 1, 0).constraints == ()
    assert gen_paving(6, 3, 1, 0).constraints == ()


def test_bad_parameters():
    with pytest.raises(InputError):
        gen_sparse_paving(4, 4, 0, 1)
    with pytest.raises(InputError):
        GeneratorConfig("nonsense", 4, 2)
    with pytest.raises(InputError):
        GeneratorConfig("paving", 4, 2, density=-1)


def test_paving_shape():
    rep = gen_paving(7, 3, 5, 2)
    assert validate_representation(rep) == []
    for c in rep.constraints:
        assert 3 <= len(c.elements) <= 6 and c.bound == 2
    for a, b in combinations(rep.constraints, 2):
        assert len(a.elements & b.elements) <= 1


@pytest.mark.parametrize("family", ["sparse-paving", "paving", "elementary-split"])
def test_deterministic(family):
    cfg = GeneratorConfig(family, 8, 4, seed=17, density=4)
    assert generate(cfg) == generate(cfg)
    assert gen_compatible_pairs(generate(cfg), seed=3, count=10) == gen_compatible_pairs(generate(cfg), seed=3, count=10)


@given(st.integers(4, 8), st.data())
def test_sparse_paving_sets_are_bases_or_circuits(n, data):
    r = data.draw(st.integers(2, n - 1))
    rep = gen_sparse_paving(n, r, data.draw(st.integers(0, 999)), data.draw(st.integers(0, 6)))
    assert validate_representation(rep) == []
    hyper = {c.elements for c in rep.constraints}
    for c in combinations(range(n), r):
        X = frozenset(c)
        if X in hyper:
            # a circuit: dependent but every proper subset independent
            assert not rep.is_independent(X)
            assert all(rep.is_independent(X - {e}) for e in X)
        else:
            assert rep.is_basis(X)


@given(st.integers(3, 8), st.data())
def test_elementary_split_is_valid(n, data):
    r = data.draw(st.integers(1, n))
    rep = gen_elementary_split(n, r, data.draw(st.integers(0, 999)), data.draw(st.integers(0, 6)))
    assert validate_representation(rep) == []


def test_k4_is_graphic():
    rep = k4()
    assert validate_representation(rep) == []
    for k in range(7):
        for c in combinations(range(6), k):
            G = nx.Graph()
            G.add_nodes_from("abcd")
            G.add_edges_from(K4_EDGES[e] for e in c)
            acyclic = nx.is_forest(G)
            assert rep.is_independent(frozenset(c)) == acyclic


def test_sparse_paving_can_yield_k4():
    found = None
    for seed in range(500):
        rep = gen_sparse_paving(6, 3, seed, 4)
        if len(rep.constraints) == 4:
            found = rep
            break
    assert found is not None
    assert validate_representation(found) == []
    # any four pairwise-compatible triangles on six points give a graphic K4 up to relabeling
    assert len(rep_bases(found)) == len(rep_bases(k4())) == 16


def test_pairs_are_compatible_bases(k4rep):
    pairs = gen_compatible_pairs(k4rep, exhaustive=True)
    assert pairs and all(compatible(P) for P in pairs)
    assert all(k4rep.is_basis(X) for P in pairs for X in P.sets())
    total = sum(len(v) ** 2 for v in basis_pair_classes(k4rep).values())
    assert len(pairs) == total
    assert all(not (P.A1 & P.A2) for P in gen_compatible_pairs(k4rep, seed=2, count=20, disjoint_only=True))
