from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from splitex.core import InputError, all_bases, contract_oracle, oracle_rank
from splitex.split import (
    HyperedgeConstraint,
    SplitRepresentation,
    contract_representation,
    is_nonredundant,
    normalize_nonredundant,
    rep_is_independent,
    rep_rank,
    tight_hyperedges,
    validate_representation,
)

from conftest import small_reps


def subsets(S):
    S = sorted(S)
    for k in range(len(S) + 1):
        for c in combinations(S, k):
            yield frozenset(c)


def test_e1_valid(e1):
    assert validate_representation(e1) == []
    assert normalize_nonredundant(e1) == e1
    assert is_nonredundant(e1)


def test_h1_violation_reported():
    rep = SplitRepresentation.build(5, 3, [({0, 1, 2}, 2), ({0, 1, 3}, 2)])
    problems = validate_representation(rep)
    assert len(problems) == 1 and problems[0].startswith("(H1)")


def test_h2_violation_reported():
    rep = SplitRepresentation.build(4, 3, [({0, 1, 2}, 1)])
    assert any(p.startswith("(H2)") for p in validate_representation(rep))


@pytest.mark.parametrize(
    "n, r, cons",
    [(3, 4, []), (4, 2, [(set(), 1)]), (4, 2, [({0, 1, 2, 3}, 1)]), (4, 2, [({0}, -1)])],
)
def test_malformed_rejected(n, r, cons):
    with pytest.raises(InputError):
        SplitRepresentation.build(n, r, cons)


def test_independence(e1, k4rep):
    assert rep_is_independent(e1, {0, 1, 3})
    assert not rep_is_independent(e1, {0, 1, 2})
    assert not rep_is_independent(k4rep, {0, 1, 3})
    with pytest.raises(InputError):
        rep_is_independent(e1, {0, 7})


def test_rank(e1):
    assert rep_rank(e1, {0, 1, 2}) == 2
    assert rep_rank(e1, range(6)) == 3
    assert rep_rank(e1, {0, 1}) == 2


def test_tightness(e1):
    assert tight_hyperedges(e1, {0, 1, 3}).tight_indices == (0,)
    assert tight_hyperedges(e1, {0, 3, 4}).tight_indices == ()


def test_contraction_examples(e1):
    assert contract_representation(e1, set()) == e1
    c0 = contract_representation(e1, {0})
    assert c0.ground == frozenset({1, 2, 3, 4, 5}) and c0.rank == 2
    assert c0.constraints == (HyperedgeConstraint.of({1, 2}, 1),)
    c3 = contract_representation(e1, {3})
    assert c3.ground == frozenset({0, 1, 2, 4, 5}) and c3.rank == 2 and c3.constraints == ()


def test_normalization_drops_redundant():
    rep = SplitRepresentation.build(6, 3, [({0, 1, 2}, 2), ({3, 4}, 2), ({0, 5}, 3)])
    out = normalize_nonredundant(rep)
    assert out.constraints == (HyperedgeConstraint.of({0, 1, 2}, 2),)


@given(small_reps(max_n=7))
def test_rank_formula_matches_oracle(rep):
    for Z in subsets(rep.ground):
        assert rep_rank(rep, Z) == oracle_rank(rep.oracle, Z)


@given(small_reps(max_n=7))
def test_normalization_preserves_family(rep):
    out = normalize_nonredundant(rep)
    assert is_nonredundant(out)
    assert all(rep.is_independent(X) == out.is_independent(X) for X in subsets(rep.ground))


@given(small_reps(max_n=7))
def test_tight_pairs_sandwich(rep):
    # two hyperedges tight at a basis F satisfy H_i & H_j <= F <= H_i | H_j
    rep = normalize_nonredundant(rep)
    for F in all_bases(rep.oracle):
        tight = tight_hyperedges(rep, F).tight_indices
        for i, j in combinations(tight, 2):
            Hi, Hj = rep.constraints[i].elements, rep.constraints[j].elements
            assert Hi & Hj <= F <= Hi | Hj


@given(small_reps(max_n=7), st.data())
def test_contraction_commutes_with_oracle(rep, data):
    basis = sorted(all_bases(rep.oracle)[0])
    T = frozenset(data.draw(st.lists(st.sampled_from(basis), unique=True, max_size=len(basis))))
    crep = contract_representation(rep, T)
    assert validate_representation(crep) == []
    M = contract_oracle(rep.oracle, T)
    assert all(crep.is_independent(X) == M.is_independent(X) for X in subsets(crep.ground))
