"""Sweep strong regularity over many certified pairs, recording the largest m checked.

Every pair should give h*(F(m-1,-m-1)) = 0 and the mirrored twist for all m <= m_max.
"""
import argparse
import time
from dataclasses import asdict, dataclass

from plurikit import p1p1coh, plurilinear as pl


@dataclass
class SweepConfig:
    n: int = 2
    pairs: int = 20
    m_max: int = 6
    seed: int = 0


def sweep(cfg: SweepConfig):
    failures = []
    t0 = time.perf_counter()
    for i in range(cfg.pairs):
        s = cfg.seed * 100003 + i
        pair = pl.random_pair(cfg.n, seed=s)
        res = p1p1coh.Resolution.from_pair(pair)
        r = p1p1coh.verify_regularity(res, cfg.m_max)
        w = [p1p1coh.kernel_recursion_witness(pair, m)["injective"] for m in range(1, min(cfg.m_max, 4) + 1)]
        if not (r["ok"] and all(w)):
            failures.append(s)
    return failures, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, v in asdict(SweepConfig()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(v), default=v)
    cfg = SweepConfig(**vars(ap.parse_args()))
    failures, dt = sweep(cfg)
    print(f"n={cfg.n} pairs={cfg.pairs} m_max={cfg.m_max}: {len(failures)} failures in {dt:.1f}s")
    if failures:
        print("failing seeds:", failures)


if __name__ == "__main__":
    main()
