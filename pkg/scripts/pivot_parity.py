"""Tally pivot case and membership parity over blocked solver runs.

Usage: python scripts/pivot_parity.py --instances 200 --max-n 9 --pairs 200
"""

from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from splitex.generators import GeneratorConfig, gen_compatible_pairs, generate, k4
from splitex.solver import solve


@dataclass
class ParityConfig:
    instances: int = 200
    min_n: int = 6
    max_n: int = 9
    pairs: int = 200
    seed: int = 7


def sweep(cfg: ParityConfig) -> dict:
    import random

    rng = random.Random(cfg.seed)
    tally: Counter = Counter()
    odd_examples = []
    reps = [k4()]
    for i in range(cfg.instances):
        family = ("sparse-paving", "paving", "elementary-split")[i % 3]
        n = rng.randint(cfg.min_n, cfg.max_n)
        r = rng.randint(3, min(5, n - 2))
        reps.append(generate(GeneratorConfig(family, n, r, seed=rng.randrange(10**6), density=rng.randint(2, 3 * n))))
    blocked = 0
    for rep in reps:
        for P in gen_compatible_pairs(rep, seed=cfg.seed, count=cfg.pairs, disjoint_only=True):
            cert = solve(rep, P).certificate
            if cert is None:
                continue
            blocked += 1
            tally[(cert.z_case, cert.membership, cert.d)] += 1
            if cert.membership % 2 and len(odd_examples) < 5:
                odd_examples.append({"instance": rep.name, "A1": sorted(P.A1), "A2": sorted(P.A2),
                                     "B1": sorted(P.B1), "B2": sorted(P.B2), "certificate": cert.summary()})
    return {
        "config": asdict(cfg),
        "blocked_runs": blocked,
        "by_case_membership_d": {f"{c}/m{m}/d{d}": k for (c, m, d), k in sorted(tally.items())},
        "odd_examples": odd_examples,
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(ParityConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    args = p.parse_args()
    print(json.dumps(sweep(ParityConfig(**vars(args))), indent=2))


if __name__ == "__main__":
    main()
