from __future__ import annotations

import json

import pytest
from hypothesis import given

from splitex.core import InputError
from splitex.generators import gen_compatible_pairs
from splitex.io import InstanceFile, dumps_instance, dumps_report, load_instance, parse_instance, save_instance, solve_record
from splitex.solver import solve

from conftest import small_reps


@given(small_reps(max_n=7))
def test_round_trip_bytes(rep):
    inst = InstanceFile(rep.name, rep, gen_compatible_pairs(rep, seed=1, count=3), {"family": "x", "seed": 1})
    text = dumps_instance(inst)
    again = parse_instance(text)
    assert again.rep == rep and again.pairs == inst.pairs
    assert dumps_instance(again) == text


def test_file_round_trip(tmp_path, k4rep):
    inst = InstanceFile("K4", k4rep, gen_compatible_pairs(k4rep, seed=0, count=2))
    path = tmp_path / "k4.json"
    save_instance(inst, path)
    assert dumps_instance(load_instance(path)) == path.read_text()


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"ground_set_size": "6", "rank": 3}',
        '{"ground_set_size": 4, "rank": 2, "hyperedges": [{"elements": [0, 9], "bound": 1}]}',
        '{"ground_set_size": 4, "rank": 2, "hyperedges": [{"elements": [0, 0], "bound": 1}]}',
        '{"ground_set_size": 4, "rank": 2, "pairs": [{"A1": [0, 1], "A2": [2, 3], "B1": [0, 1]}]}',
    ],
)
def test_malformed(text):
    with pytest.raises(InputError):
        parse_instance(text)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_instance(tmp_path / "nope.json")


def test_report_integers(k4rep, k4_blocked):
    rec = solve_record(0, k4_blocked, solve(k4rep, k4_blocked), {"verified": True}, 12)
    data = json.loads(dumps_report({"records": [rec]}))
    r = data["records"][0]
    assert r["distance"] == 3 and len(r["sequence"]) == 3
    assert r["certificate"]["d"] == 2 and isinstance(r["timings"]["solve_us"], int)
