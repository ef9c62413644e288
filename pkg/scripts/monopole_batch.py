"""Batch of axially symmetric and massless monopole checks.

For each charge k: random valid root sets, the lambda-kernel verdict, and the
massless splitting type of random coprime pairs.
"""
import argparse
import time
from dataclasses import dataclass

import numpy as np

from plurikit import curvecoh, monopole


@dataclass
class BatchConfig:
    charges: tuple = (2, 3, 4, 5)
    per_k: int = 20
    massless_charges: tuple = (1, 2, 3)
    seed: int = 0


def axisym_rows(cfg: BatchConfig, rng):
    for k in cfg.charges:
        t = time.perf_counter()
        ok = 0
        kdims = set()
        for _ in range(cfg.per_k):
            m, roots = monopole.random_axisym_roots(k, rng)
            mono, S = monopole.axisym_build(k, m, roots, check_antidiagonal=False)
            lk = monopole.lambda_kernel(mono)
            kdims.add(lk["kernel_dim"])
            ok += lk["b_zero_on_kernel"] and curvecoh.h_curve(S, k - 2, k)[0] == k * k
        yield k, ok, sorted(kdims), time.perf_counter() - t


def massless_rows(cfg: BatchConfig, rng):
    for k in cfg.massless_charges:
        seen = set()
        for i in range(cfg.per_k):
            pair = monopole.random_massless_pair(k, rng)
            seen.add(tuple(monopole.massless_splitting(pair, seed=i)["degrees"]))
        yield k, sorted(seen)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--per-k", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = BatchConfig(per_k=args.per_k, seed=args.seed)
    rng = np.random.default_rng(cfg.seed)
    print("axially symmetric: k, passing/total, kernel dims, seconds")
    for k, ok, dims, dt in axisym_rows(cfg, rng):
        print(f"  k={k}: {ok}/{cfg.per_k}  kernel dims {dims}  {dt:.2f}s")
    print("massless: k, splitting types seen")
    for k, seen in massless_rows(cfg, rng):
        print(f"  k={k}: {seen}")


if __name__ == "__main__":
    main()
