from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plurikit import p1p1coh as pc
from plurikit import plurilinear as pl
from plurikit.exactnum import GR, ONE, BiPoly, PolyMatrix, exact
from plurikit.exactnum import linalg
from plurikit.exactnum.mobius import INF
from plurikit.oracle import cech_h_line, cech_mult_map

twist = st.integers(-4, 4)


@pytest.fixture(scope="module")
def pairs():
    return [pl.hypercomplex_pair(2)] + [pl.random_pair(2, seed=s) for s in range(3)] + [pl.random_pair(4, seed=0)]


# ------------------------------------------------------------ line bundles


def test_h_line_examples():
    assert pc.h_line(1, 1) == (4, 0, 0)
    for b in range(-5, 6):
        assert pc.h_line(-1, b) == (0, 0, 0)
    for m in range(7):
        assert pc.h_line(m - 1, -m - 1) == (0, m * m, 0)


@given(twist, twist)
def test_h_line_matches_cech(a, b):
    assert pc.h_line(a, b) == cech_h_line(a, b)


@given(twist, twist)
def test_euler_characteristic(a, b):
    h0, h1, h2 = pc.h_line(a, b)
    assert h0 - h1 + h2 == (a + 1) * (b + 1)


@given(twist, twist)
def test_serre_duality(a, b):
    h = pc.h_line(a, b)
    assert pc.h_line(-2 - a, -2 - b) == h[::-1]


# ------------------------------------------------------------ multiplication maps


def test_mult_map_identity():
    M = pc.mult_map([[BiPoly.const(1)]], [(2, -3)], [(2, -3)], 1).dense()
    assert linalg.is_zero_matrix(M - linalg.identity(M.shape[0]))


def test_mult_map_laurent_window():
    # zeta : H^1(O(-3)) -> H^1(O(-2)) on P^1, embedded as O(-3, 0) -> O(-2, 0)
    S = pc.mult_map([[BiPoly.zeta()]], [(-3, 0)], [(-2, 0)], 1)
    assert S.col_keys == [(0, (-2, 0)), (0, (-1, 0))]
    assert S.row_keys == [(0, (-1, 0))]
    D = S.dense()
    assert D[0, 0] == ONE and D[0, 1] == 0


def test_mult_map_m1_formula(rng):
    # R = R0 + eta R1 on H^1 at m = 1: (v0 + v1 eta) -> R0 v0 + R1 v1 (source O(-1, -2) -> O(-1, -1))
    # only the eta^-1 slot survives; the window of O(-2) is {-1} so use a (0,-2)->(0,-1) model
    R0, R1 = GR(2, 1), GR(-1, 3)
    R = [[BiPoly.const(R0) + BiPoly.eta().scale(R1)]]
    S = pc.mult_map(R, [(0, -3)], [(0, -2)], 1)
    D = S.dense()
    cols = {k: j for j, k in enumerate(S.col_keys)}
    rows = {k: i for i, k in enumerate(S.row_keys)}
    assert D[rows[(0, (0, -1))], cols[(0, (0, -1))]] == R0
    assert D[rows[(0, (0, -1))], cols[(0, (0, -2))]] == R1


def test_mult_map_rejects_bidegree_overflow():
    with pytest.raises(ValueError):
        pc.mult_map([[BiPoly.zeta() * BiPoly.zeta()]], [(0, 0)], [(1, 0)], 0)


def _rand_poly(rng, da, db):
    terms = {}
    for i in range(da + 1):
        for j in range(db + 1):
            if rng.random() < 0.7:
                terms[(i, j)] = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))
    return terms


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_mult_map_matches_cech(degree):
    rng = np.random.default_rng(degree)
    for _ in range(25):
        a, b = (int(x) for x in rng.integers(-4, 5, size=2))
        da, db = (int(x) for x in rng.integers(0, 3, size=2))
        terms = _rand_poly(rng, da, db)
        P = BiPoly({k: GR(v) for k, v in terms.items() if v}, (da, db))
        S = pc.mult_map([[P]], [(a, b)], [(a + da, b + db)], degree)
        ref, rows, cols = cech_mult_map(terms, (a, b), (a + da, b + db), degree)
        assert [k for _, k in S.row_keys] == rows and [k for _, k in S.col_keys] == cols
        D = S.dense()
        for i in range(len(rows)):
            for j in range(len(cols)):
                assert D[i, j] == GR(ref[i][j])


def test_mult_map_functorial(rng):
    # H(PQ) = H(P) H(Q)
    P = BiPoly.zeta() + BiPoly.const(GR(1, 2))
    Q = BiPoly.eta().scale(GR(3)) + BiPoly.const(GR(0, 1))
    for deg, src in ((0, (1, 1)), (1, (-3, 2)), (1, (2, -4)), (2, (-3, -3))):
        mid = (src[0] + 1, src[1])
        dst = (src[0] + 1, src[1] + 1)
        A = pc.mult_map([[Q]], [mid], [dst], deg).dense()
        B = pc.mult_map([[P]], [src], [mid], deg).dense()
        C = pc.mult_map([[P * Q]], [src], [dst], deg).dense()
        if C.size:
            assert linalg.is_zero_matrix(linalg.matmul(A, B) - C)


# ------------------------------------------------------------ sheaf cohomology


def test_base_vanishings(pairs):
    for pair in pairs:
        res = pc.Resolution.from_pair(pair)
        assert pc.sheaf_cohomology(res, 0, 0) == (2 * pair.n, 0)
        for tw in ((-1, -1), (-2, 0), (0, -2)):
            assert pc.sheaf_cohomology(res, *tw) == (0, 0)


def test_euler_characteristic_of_F(pairs):
    # chi(F(p, q)) from the resolution: chi(O(p,q))^2n - sum chi(O(p-a, q-b))
    for pair in pairs[:3]:
        res = pc.Resolution.from_pair(pair)
        for p, q in ((1, 0), (2, -1), (-3, 1), (1, 1)):
            d = pc.sheaf_cohomology(res, p, q, detail=True)
            chi_O = 2 * pair.n * (p + 1) * (q + 1)
            chi_W = sum((p - a + 1) * (q - b + 1) for a, b in res.tags)
            assert d["h0"] - d["h1"] + d["h2"] == chi_O - chi_W


def test_regularity(pairs):
    for pair in pairs:
        r = pc.verify_regularity(pc.Resolution.from_pair(pair), m_max=4)
        assert r["ok"]


def test_kernel_recursion(pairs):
    hc = pairs[0]
    assert pc.kernel_recursion_witness(hc, 0)["injective"]
    for pair in pairs:
        for m in (1, 2, 3):
            w = pc.kernel_recursion_witness(pair, m)
            assert w["injective"] and w["lead_invertible"]


def test_resolution_is_injective(pairs):
    for pair in pairs:
        assert pc.Resolution.from_pair(pair).check_injective()


# ------------------------------------------------------------ sheaf -> sphere


def test_sphere_round_trip(pairs):
    for pair in pairs[:3]:
        F = pc.sphere_from_resolution(pl.resolution_matrix(pair))
        back = pl.from_three_structures(F.at(ONE), F.at(INF))
        assert pl.char_poly(back) == pl.char_poly(pair)


def test_sphere_from_singular_resolution_errors():
    z = BiPoly.const(0)
    M = PolyMatrix([[z, z], [z, z]], ((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        pc.sphere_from_resolution(M)


def test_sigma_compat(pairs):
    M = pl.resolution_matrix(pairs[1])
    assert pc.sigma_compat_check(M)
    ent = [list(r) for r in M.entries]
    ent[0][0] = ent[0][0] + BiPoly.const(GR(1, 1))
    assert not pc.sigma_compat_check(PolyMatrix(ent, M.col_tags))
    assert pc.sigma_compat_check(PolyMatrix([], ()))


def test_stalk_rank(pairs):
    hc = pc.Resolution.from_pair(pairs[0])
    assert pc.stalk_rank(hc, 0.3 + 0.2j, 0.3 + 0.2j) == 2
    assert pc.stalk_rank(hc, 0.3, 1.7) == 0
    gen = pairs[1]
    sc = pl.support_curve(gen)
    z0, w0 = sc["points"][0]
    assert pc.stalk_rank(pc.Resolution.from_pair(gen), z0, w0) == 1
