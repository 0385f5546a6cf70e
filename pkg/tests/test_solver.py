from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given

from splitex import split as split_mod
from splitex import solver as solver_mod
from splitex.core import BasisPairInstance, InfeasibleError, InputError, InternalError, verify_sequence
from splitex.generators import GeneratorConfig, gen_compatible_pairs, gen_uniform, generate
from splitex.oracle import bf_exchange_distance, bf_longest_monotone
from splitex.solver import (
    MonotoneState,
    build_certificate,
    check_blocked_structure,
    extend_plus_two,
    final_schedule,
    find_blocking_quadruple,
    greedy_monotone,
    longest_monotone,
    monotone_bound,
    monotone_bound_check,
    monotone_fixpoint,
    solve,
    star_holds,
)
from splitex.split import SplitRepresentation

from conftest import rep_with_pair


def blocked_state(rep, P):
    _, _, state = solver_mod._prepare(rep, P)
    state = monotone_fixpoint(state)
    assert not state.done
    return state


def generated_pair(family, n, r, seed, index, density=6):
    rep = generate(GeneratorConfig(family, n, r, seed, density))
    return rep, gen_compatible_pairs(rep, seed=seed, count=60)[index]


def test_e1_solve(e1, e1_pair):
    res = solve(e1, e1_pair)
    assert res.distance == 1 and res.pairs() == [(3, 4)] and res.certificate is None


def test_identity_pair(e1):
    P = BasisPairInstance.of({0, 1, 3}, {2, 4, 5}, {0, 1, 3}, {2, 4, 5})
    res = solve(e1, P)
    assert res.distance == 0 and res.sequence == ()
    assert longest_monotone(e1, P) == []


def test_uniform_distance():
    P = BasisPairInstance.of({0, 1}, {2, 3}, {2, 3}, {0, 1})
    assert solve(gen_uniform(4, 2), P).distance == 2


def test_overlapping_pair_contracts():
    rep = gen_uniform(5, 3)
    P = BasisPairInstance.of({0, 1, 2}, {0, 3, 4}, {0, 3, 2}, {0, 1, 4})
    res = solve(rep, P)
    assert res.distance == 1 and verify_sequence(rep.oracle, P, res.sequence)


def test_input_errors(e1):
    with pytest.raises(InfeasibleError):
        solve(gen_uniform(4, 2), BasisPairInstance.of({0, 1}, {2, 3}, {0, 1}, {0, 3}))
    with pytest.raises(InputError):
        solve(e1, BasisPairInstance.of({0, 1, 2}, {3, 4, 5}, {0, 1, 2}, {3, 4, 5}))
    bad = SplitRepresentation.build(5, 3, [({0, 1, 2}, 2), ({0, 1, 3}, 2)])
    with pytest.raises(InputError):
        solve(bad, BasisPairInstance.of({0, 3, 4}, {1, 2, 4}, {0, 3, 4}, {1, 2, 4}))


def test_greedy_on_e1(e1, e1_pair):
    _, _, state = solver_mod._prepare(e1, e1_pair)
    out = greedy_monotone(state)
    assert out.xs == (3,) and out.ys == (4,) and out.done


def test_extend_requires_unfinished(e1, e1_pair):
    _, _, state = solver_mod._prepare(e1, e1_pair)
    with pytest.raises(InputError):
        extend_plus_two(greedy_monotone(state))


def test_extend_adds_two():
    rep, P = generated_pair("paving", 7, 3, 26, 37)
    _, _, state = solver_mod._prepare(rep, P)
    g = greedy_monotone(state)
    ext = extend_plus_two(g)
    assert ext is not None and ext.s == g.s + 2
    assert star_holds(ext, ext.xs, ext.ys)


class TestK4Blocked:
    def test_distance(self, k4rep, k4_blocked):
        res = solve(k4rep, k4_blocked)
        assert res.distance == 3 == res.lower_bound + 1
        assert bf_exchange_distance(k4rep.oracle, k4_blocked) == 3
        assert verify_sequence(k4rep.oracle, k4_blocked, res.sequence)

    def test_extend_blocked(self, k4rep, k4_blocked):
        assert extend_plus_two(blocked_state(k4rep, k4_blocked)) is None

    def test_quadruple(self, k4rep, k4_blocked):
        quad = find_blocking_quadruple(blocked_state(k4rep, k4_blocked))
        assert sorted(quad.h) == [0, 1, 2, 3]

    def test_certificate(self, k4rep, k4_blocked):
        state = blocked_state(k4rep, k4_blocked)
        cert = build_certificate(state, find_blocking_quadruple(state))
        assert cert.d == 2
        assert all(len(C) == 1 for C in (cert.E, cert.F, cert.G, cert.Hc))
        assert cert.z_case in ("Z1", "Z2")
        assert len(final_schedule(cert)) == 3

    def test_monotone_length(self, k4rep, k4_blocked):
        state = blocked_state(k4rep, k4_blocked)
        cert = build_certificate(state, find_blocking_quadruple(state))
        lm = len(longest_monotone(k4rep, k4_blocked))
        assert lm == k4rep.rank - len(k4_blocked.A1 & k4_blocked.B1) - cert.d
        assert lm == bf_longest_monotone(k4rep.oracle, k4_blocked)

    def test_quadruple_needs_blocked_state(self, e1, e1_pair):
        _, _, state = solver_mod._prepare(e1, e1_pair)
        with pytest.raises(InputError):
            find_blocking_quadruple(state)

    def test_class_size_violation(self, k4rep, k4_blocked):
        state = blocked_state(k4rep, k4_blocked)
        quad = find_blocking_quadruple(state)
        # wrong target: the stuck elements no longer fill classes of size d/2
        broken = MonotoneState(state.rep, state.A1, state.A2, state.B2, state.B1, state.xs, state.ys)
        with pytest.raises(InternalError):
            check_blocked_structure(broken, quad)
        cert = build_certificate(state, quad)
        with pytest.raises(InternalError, match="d/2"):
            final_schedule(dataclasses.replace(cert, E=cert.E | cert.G))

    def test_swapped_classes(self, k4rep, k4_blocked):
        state = blocked_state(k4rep, k4_blocked)
        cert = build_certificate(state, find_blocking_quadruple(state))
        with pytest.raises(InternalError):
            final_schedule(dataclasses.replace(cert, F=cert.Hc, Hc=cert.F))


@pytest.mark.parametrize(
    "family, n, r, seed, index",
    [("sparse-paving", 8, 4, 10, 40), ("paving", 7, 3, 14, 51), ("elementary-split", 7, 3, 48, 51)],
)
def test_generated_blocked(family, n, r, seed, index):
    rep, P = generated_pair(family, n, r, seed, index)
    res = solve(rep, P)
    cert = res.certificate
    assert cert is not None and res.distance == res.lower_bound + 1
    assert len(res.sequence) - res.monotone_length == cert.d + 1
    assert bf_exchange_distance(rep.oracle, P) == res.distance
    if family == "paving":
        assert cert.d == 2


@given(rep_with_pair(max_n=7))
def test_distance_invariants(case):
    rep, P = case
    res = solve(rep, P)
    lb = rep.rank - len(P.A1 & P.B1)
    assert verify_sequence(rep.oracle, P, res.sequence)
    assert res.distance in (lb, lb + 1) and res.distance <= min(rep.rank, lb + 1)
    assert res.distance == bf_exchange_distance(rep.oracle, P)
    assert res.monotone_length == bf_longest_monotone(rep.oracle, P)


@given(rep_with_pair(max_n=7))
def test_monotone_bounds(case):
    rep, P = case
    assert monotone_bound_check(rep, P, "split")
    if all(c.bound == rep.rank - 1 for c in rep.constraints):
        assert monotone_bound_check(rep, P, "paving")


def test_monotone_bound_tags(e1, e1_pair, k4rep):
    assert monotone_bound(e1, e1_pair, "split") == 3 - 3 * 2
    with pytest.raises(InputError):
        monotone_bound(e1, e1_pair, "matroid")
    P = BasisPairInstance.of({0, 1}, {2, 3}, {2, 3}, {0, 1})
    assert len(longest_monotone(gen_uniform(4, 2), P)) == 2


def test_oracle_call_budget(monkeypatch):
    for fn in (split_mod._violations, split_mod._normalize, split_mod._contract, solver_mod._components):
        fn.cache_clear()
    calls = [0]
    original = SplitRepresentation.is_independent

    def counted(self, X):
        calls[0] += 1
        return original(self, X)

    monkeypatch.setattr(SplitRepresentation, "is_independent", counted)
    for family, n, r, seed in (("sparse-paving", 8, 4, 10), ("paving", 7, 3, 14), ("elementary-split", 8, 3, 5)):
        rep = generate(GeneratorConfig(family, n, r, seed, 6))
        q = max(1, len(rep.constraints))
        for P in gen_compatible_pairs(rep, seed=seed, count=40):
            for fn in (split_mod._contract, solver_mod._components):
                fn.cache_clear()
            calls[0] = 0
            solve(rep, P)
            assert 0 < calls[0] <= n**6 * q


def test_z1_pivot_case():
    # found by scripts/pivot_parity.py; the only Z1 run among ~150 blocked ones
    rep = generate(GeneratorConfig("elementary-split", 8, 4, 260494, 7))
    P = BasisPairInstance.of({0, 2, 5, 7}, {1, 3, 4, 6}, {4, 5, 6, 7}, {0, 1, 2, 3})
    res = solve(rep, P)
    assert res.certificate.z_case == "Z1" and res.certificate.membership == 1
    assert res.distance == bf_exchange_distance(rep.oracle, P) == res.lower_bound + 1
