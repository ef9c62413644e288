"""Verdict statistics for random pairs by dimension and scale.

Odd n should never certify; even n certifies for a positive fraction of generic draws.
"""
import argparse
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from plurikit import plurilinear as pl


@dataclass
class StatsConfig:
    ns: tuple = (1, 2, 3, 4)
    scales: tuple = (Fraction(1, 4), Fraction(1), Fraction(4))
    samples: int = 200
    seed: int = 0
    structured: bool = False


def stats(cfg: StatsConfig) -> dict:
    out = {}
    for n in cfg.ns:
        for sc in cfg.scales:
            rng = np.random.default_rng([cfg.seed, n, sc.numerator, sc.denominator])
            c = Counter()
            for _ in range(cfg.samples):
                pair = pl.sample_pair(rng, n, sc, structured=cfg.structured and n % 2 == 0)
                c[pl.validate(pair, samples=512).status] += 1
            out[(n, sc)] = c
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--structured", action="store_true", help="use the conjugated hypercomplex sampler for even n")
    args = ap.parse_args()
    cfg = StatsConfig(samples=args.samples, seed=args.seed, structured=args.structured)
    print(f"{'n':>3} {'scale':>6} {'certified':>10} {'invalid':>8} {'unknown':>8}")
    for (n, sc), c in stats(cfg).items():
        print(f"{n:>3} {str(sc):>6} {c['certified']:>10} {c['invalid']:>8} {c['unknown']:>8}")


if __name__ == "__main__":
    main()
