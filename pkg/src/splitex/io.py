"""JSON instance and report files.

Keys are emitted in a fixed order and every number is an integer, so
``dumps_instance(parse_instance(text)) == text`` for any file this module wrote.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .core import BasisPairInstance, InputError
from .split import HyperedgeConstraint, SplitRepresentation


@dataclass
class InstanceFile:
    name: str
    rep: SplitRepresentation
    pairs: list = field(default_factory=list)
    header: Optional[dict] = None

    @property
    def ground_set_size(self) -> int:
        return self.rep.n

    @property
    def rank(self) -> int:
        return self.rep.rank


def _int_list(value, what) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InputError(f"{what} must be a list of integers")
    return value


def _expect_int(data: dict, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"field {key!r} must be an integer")
    return v


def instance_from_dict(data: dict) -> InstanceFile:
    if not isinstance(data, dict):
        raise InputError("instance must be a JSON object")
    n = _expect_int(data, "ground_set_size")
    r = _expect_int(data, "rank")
    if n < 0:
        raise InputError("ground_set_size must be non-negative")
    cons = []
    for i, h in enumerate(data.get("hyperedges", [])):
        elems = _int_list(h.get("elements"), f"hyperedge {i} elements")
        if any(not 0 <= e < n for e in elems):
            raise InputError(f"hyperedge {i} has elements outside 0..{n - 1}")
        if len(set(elems)) != len(elems):
            raise InputError(f"hyperedge {i} repeats an element")
        bound = h.get("bound")
        if not isinstance(bound, int):
            raise InputError(f"hyperedge {i} bound must be an integer")
        cons.append(HyperedgeConstraint.of(elems, bound))
    name = data.get("name", "")
    rep = SplitRepresentation.build(n, r, cons, name=name)
    pairs = []
    for k, p in enumerate(data.get("pairs", [])):
        sets = []
        for key in ("A1", "A2", "B1", "B2"):
            vals = _int_list(p.get(key), f"pair {k} {key}")
            if any(not 0 <= e < n for e in vals):
                raise InputError(f"pair {k} {key} has elements outside 0..{n - 1}")
            sets.append(frozenset(vals))
        pairs.append(BasisPairInstance(*sets))
    return InstanceFile(name, rep, pairs, data.get("comment"))


def instance_to_dict(inst: InstanceFile) -> dict:
    out: dict = {"name": inst.name}
    if inst.header is not None:
        out["comment"] = inst.header
    out["ground_set_size"] = inst.rep.n
    out["rank"] = inst.rep.rank
    out["hyperedges"] = [{"elements": sorted(c.elements), "bound": c.bound} for c in inst.rep.constraints]
    if inst.pairs:
        out["pairs"] = [
            {"A1": sorted(P.A1), "A2": sorted(P.A2), "B1": sorted(P.B1), "B2": sorted(P.B2)} for P in inst.pairs
        ]
    return out


def dumps_instance(inst: InstanceFile) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def parse_instance(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"instance is not valid JSON: {exc}") from exc
    return instance_from_dict(data)


def load_instance(path) -> InstanceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read instance {path}: {exc}") from exc
    return parse_instance(text)


def save_instance(inst: InstanceFile, path) -> None:
    Path(path).write_text(dumps_instance(inst))


def sequence_to_list(seq) -> list[dict]:
    return [{"x": s.x, "y": s.y} for s in seq]


def solve_record(index: int, P: BasisPairInstance, result, oracle: Optional[dict] = None, micros: int = 0) -> dict:
    return {
        "pair": index,
        "A1": sorted(P.A1),
        "A2": sorted(P.A2),
        "B1": sorted(P.B1),
        "B2": sorted(P.B2),
        "distance": result.distance,
        "lower_bound": result.lower_bound,
        "sequence": sequence_to_list(result.sequence),
        "monotone_length": result.monotone_length,
        "certificate": None if result.certificate is None else result.certificate.summary(),
        "oracle": oracle or {},
        "timings": {"solve_us": micros},
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
