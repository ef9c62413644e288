import numpy as np

from plurikit import checks, monopole
from plurikit import plurilinear as pl


def test_crashing_check_is_a_failure():
    def boom():
        raise ValueError("bad point")

    r = checks._timed("boom", boom)
    assert not r.passed and "bad point" in r.detail["error"]
    assert r.line().startswith("[FAIL] boom")


def test_time_limit_enforced():
    r = checks._timed("slow", lambda: (True, {}, None), limit_s=0.0)
    assert not r.passed and r.detail["time_limit_exceeded"] == 0.0


def test_splitting_skips_inadmissible_points():
    hc = pl.hypercomplex_pair(2)
    seen = []

    def frame(z):
        seen.append(z)
        return pl.frame_at(hc, z)

    ok = lambda z: z.re > 0
    pl.splitting_profile(frame, n_points=4, seed=3, admissible=ok)
    assert seen and all(z.re > 0 for z in seen)


def test_massless_seed_that_hit_a_root():
    # seed 7 once drew a sample point at a root of p1
    assert checks.run_criterion(11, 7).passed


def test_selftest_smoke_report_shape():
    rep = checks.selftest("smoke", 0)
    assert rep["passed"] and len(rep["checks"]) == 5
