import cmath
from fractions import Fraction

import numpy as np
import pytest

from plurikit import monopole as mp
from plurikit.exactnum import GR, ONE, BiPoly, Poly1
from plurikit.exactnum import linalg

W = cmath.exp(1j * cmath.pi / 3)
K2_ROOTS = [W.conjugate(), W]


@pytest.fixture(scope="module")
def k2():
    return mp.axisym_build(2, Fraction(1, 2), K2_ROOTS)


# ------------------------------------------------------------ axially symmetric


def test_build_examples(k2):
    mono, S = k2
    assert S.sigma_invariant and mono.N == 3
    w = cmath.exp(2j * cmath.pi / 3)
    mono3, S3 = mp.axisym_build(3, 0, [1, w, w.conjugate()])
    assert S3.sigma_invariant
    with pytest.raises(ValueError):
        mp.axisym_build(2, Fraction(1, 2), [1, -1])


def test_delta_classes(k2):
    mono, _ = k2
    a1, a2 = K2_ROOTS
    c = mp.delta_classes(mono)["c"]
    assert abs(c[0] - 3 / (a1 * (a1 - a2))) < 1e-12
    a = GR(2, 1)
    m = Fraction(3, 2)
    one = mp.delta_classes(mp.axisym_build(1, m, [a])[0])["c"][0]
    assert abs(complex(one) - (2 * m + 1) / complex(a)) < 1e-12


def test_delta_classes_permutation_invariant_sum(k2):
    mono, _ = k2
    swapped = mp.axisym_build(2, Fraction(1, 2), K2_ROOTS[::-1])[0]
    assert abs(mp.delta_classes(mono)["sum"] - mp.delta_classes(swapped)["sum"]) < 1e-12


def test_lambda_kernel(k2):
    mono, _ = k2
    lk = mp.lambda_kernel(mono)
    assert lk["domain_dim"] == 4 and lk["b_zero_on_kernel"]
    w = cmath.exp(2j * cmath.pi / 3)
    lk3 = mp.lambda_kernel(mp.axisym_build(3, 0, [1, w, w.conjugate()])[0])
    assert lk3["domain_dim"] == 9 and lk3["b_zero_on_kernel"]


def test_vanishing_reports(k2):
    mono, S = k2
    rep = mp.vanishing_report(mono, S)
    assert rep["conclusion"] == "vanishing holds"
    assert {l["source"] for l in rep["links"]} == {"computed", "paper-cited"}
    roots = [cmath.exp(1j * cmath.pi * (1 + 2 * j) / 5) for j in range(4)]
    m4 = mp.axisym_build(4, Fraction(1, 2), roots)
    assert mp.vanishing_report(*m4)["conclusion"] == "vanishing holds"


def test_random_roots_are_valid():
    rng = np.random.default_rng(3)
    for k in (2, 3, 4):
        m, roots = mp.random_axisym_roots(k, rng)
        mono, S = mp.axisym_build(k, m, roots)
        assert S.sigma_invariant


# ------------------------------------------------------------ massless


def test_massless_k1():
    pair = mp.MasslessPair.from_coeffs([0, 1], [1])
    A, S = mp.massless_build(pair)
    assert S.sigma_invariant
    assert S.P.proportional_factor(BiPoly.zeta() - BiPoly.eta()) is not None
    t = mp.massless_trivial_section(pair)
    assert t["h0"] >= 1 and t["matches_p1_over_p2"]
    assert mp.massless_splitting(pair)["degrees"] == [1, 1]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_massless_random(k):
    rng = np.random.default_rng(100 + k)
    pair = mp.random_massless_pair(k, rng)
    A, S = mp.massless_build(pair)
    assert S.sigma_invariant and S.antidiagonal.status != "invalid"
    assert mp.massless_trivial_section(pair)["matches_p1_over_p2"]
    z0, z1 = GR(Fraction(1, 3), Fraction(1, 5)), GR(Fraction(-2, 7), Fraction(3, 4))
    F0 = mp.massless_tangent_frames(pair, z0)
    assert linalg.rank(F0) == 2 * k
    again = mp.massless_tangent_frames(pair, z0)
    assert all(a == b for a, b in zip(F0.flat, again.flat))
    assert mp.massless_intersection(pair, z0, z1) == 2 * k - 2
    prof = mp.massless_splitting(pair)
    assert prof["d"][:2] == [4 * k, 2 * k]
    assert sorted(prof["degrees"], reverse=True) == [k, k] + [0] * (2 * k - 2)


def test_sharp_is_involution():
    r = Poly1([GR(1, 2), GR(0, 1), GR(3)])
    assert mp.sharp(mp.sharp(r, 2), 2) == r


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_lambda_twists(k):
    d = mp.lambda_twist_ingredients(k)
    assert d["acyclic"] and d["forced_dimension"] == k * k
