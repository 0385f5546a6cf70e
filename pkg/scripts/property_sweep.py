"""Check the Gabow, length-two White and equitability properties on generated instances.

Any failure is printed as a potential counterexample together with a
replayable instance file.
"""

from __future__ import annotations

import argparse
import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from splitex.core import BasisPairInstance, compatible
from splitex.generators import FAMILIES, GeneratorConfig, gen_compatible_pairs, generate, rep_bases
from splitex.io import InstanceFile, save_instance
from splitex.oracle import equitable_check, gabow_ordering, white2_equivalent


@dataclass
class SweepConfig:
    instances: int = 60
    max_n: int = 8
    seed: int = 11
    pairs: int = 40
    out_dir: str = "witnesses"


def _witness(cfg: SweepConfig, rep, P, kind: str) -> str:
    path = Path(cfg.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    target = path / f"{rep.name}-{kind}.json"
    save_instance(InstanceFile(rep.name, rep, [P] if P else [], {"witness": kind}), target)
    return str(target)


def run(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    counts = {"gabow": 0, "white2": 0, "equitable": 0, "not_partitionable": 0}
    failures = []
    families = [f for f in FAMILIES if f not in ("uniform", "k4")]
    for i in range(cfg.instances):
        n = rng.randint(4, cfg.max_n)
        r = rng.randint(2, min(4, n - 1))
        rep = generate(GeneratorConfig(families[i % len(families)], n, r, rng.randrange(10**6), rng.randint(1, 2 * n)))
        M = rep.oracle
        bases = rep_bases(rep)
        for _ in range(min(cfg.pairs, len(bases) ** 2)):
            A, B = rng.choice(bases), rng.choice(bases)
            counts["gabow"] += 1
            if gabow_ordering(M, A, B) is None:
                failures.append(("gabow", _witness(cfg, rep, BasisPairInstance(A, B, B, A), "gabow")))
        for P in gen_compatible_pairs(rep, seed=i, count=cfg.pairs):
            counts["white2"] += 1
            if white2_equivalent(M, P) != compatible(P):
                failures.append(("white2", _witness(cfg, rep, P, "white2")))
        eq = equitable_check(M)
        if not eq.partitionable:
            counts["not_partitionable"] += 1
        else:
            counts["equitable"] += 1
            if not eq.equitable:
                failures.append(("equitable", _witness(cfg, rep, None, "equitable")))
    return {"config": asdict(cfg), "checked": counts, "potential_counterexamples": failures}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = SweepConfig(**vars(p.parse_args()))
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
