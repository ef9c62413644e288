import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plurikit import curvecoh as cc
from plurikit.checks import random_sigma_curve
from plurikit.exactnum import GR, ONE, BiPoly, sigma_transform

z, e = BiPoly.zeta(), BiPoly.eta()


def graphs(slopes):
    P = BiPoly.const(ONE)
    for a in slopes:
        P = P * (e - z.scale(a))
    return P


@pytest.fixture(scope="module")
def curves():
    rng = np.random.default_rng(7)
    return {k: cc.curve_from_poly(random_sigma_curve(k, rng), k, check_antidiagonal=False) for k in (1, 2, 3)}


# ------------------------------------------------------------ building curves


def test_diagonal_curve():
    S = cc.curve_from_poly(z - e)
    assert S.k == 1 and S.sigma_invariant and S.antidiagonal_clear == "certified"
    assert sigma_transform(z - e, 1) == -(z - e)


def test_conjugation_closed_graphs():
    S = cc.curve_from_poly(graphs([GR(1, 1), GR(1, -1), GR(2)]))
    assert S.k == 3 and S.sigma_invariant
    assert S.antidiagonal.status == "certified"


def test_negative_slope_hits_antidiagonal():
    S = cc.curve_from_poly(e + z.scale(GR(2)))
    assert S.antidiagonal.status == "invalid"
    w = S.antidiagonal.witness
    zeta, eta = complex(w["zeta"]), complex(w["eta"])
    assert abs(eta + 1 / zeta.conjugate()) < 1e-6
    assert abs(eta + 2 * zeta) < 1e-6


# ------------------------------------------------------------ cohomology


def test_structure_sheaf(curves):
    for k, S in curves.items():
        assert cc.h_curve(S, 0, 0) == (1, (k - 1) ** 2)


def test_named_twists(curves):
    for k, S in curves.items():
        assert cc.h_curve(S, k - 2, k)[0] == k * k
        assert cc.h_curve(S, k - 1, k - 1)[0] == k * k


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([1, 2, 3]), st.integers(-5, 5), st.integers(-5, 5))
def test_riemann_roch(k, a, b):
    S = _CURVES[k]
    h0, h1 = cc.h_curve(S, a, b)
    # chi(O_S(a,b)) = chi(O(a,b)) - chi(O(a-k,b-k))
    chi = (a + 1) * (b + 1) - (a - k + 1) * (b - k + 1)
    assert h0 - h1 == chi == cc.riemann_roch(k, a, b)


_CURVES = {k: cc.curve_from_poly(random_sigma_curve(k, np.random.default_rng(11 + k)), k, check_antidiagonal=False) for k in (1, 2, 3)}


def test_sections_count(curves):
    S = curves[2]
    for a, b in ((0, 0), (0, 2), (1, -1), (2, 1)):
        assert len(cc.curve_sections(S, a, b)) == cc.h_curve(S, a, b)[0]


# ------------------------------------------------------------ triviality


def _roots(k, power, base_arg):
    # a_j^power all equal: a_j = exp(i (base_arg + 2 pi j)/power)
    return [cmath.exp(1j * (base_arg + 2 * cmath.pi * j) / power) for j in range(k)]


def test_triviality_equal_powers():
    S = cc.curve_from_poly(graphs([cmath.exp(-1j * cmath.pi / 3), cmath.exp(1j * cmath.pi / 3)]), 2, check_antidiagonal=False)
    h0, reps = cc.triviality_check(S, 3)
    assert h0 >= 1 and reps


def test_triviality_unequal_powers():
    S = cc.curve_from_poly(graphs([GR(1), GR(2)]), 2, check_antidiagonal=False)
    for a in (1, 2, 3):
        assert cc.triviality_check(S, a)[0] == 0


def test_triviality_rejects_nonpositive():
    with pytest.raises(ValueError):
        cc.triviality_check(cc.curve_from_poly(z - e), 0)


# ------------------------------------------------------------ connecting maps


def test_connecting_examples(curves):
    S = curves[2]
    basis = cc.curve_sections(S, 0, 2)
    for s in basis:
        d = cc.connecting(S, s)
        if s.lift is not None:
            assert d == {}
        else:
            assert d == s.obstruction


def test_connecting_matrix_has_full_rank_on_obstructions(curves):
    from plurikit.exactnum import linalg

    S = curves[2]
    M, basis, keys = cc.connecting_matrix(S, 0, 2)
    n_obs = sum(1 for s in basis if s.lift is None)
    assert linalg.rank(M) == n_obs


def test_product_rule(curves):
    S = curves[2]
    for s in cc.curve_sections(S, 1, 0):
        for t in cc.curve_sections(S, 0, 1):
            assert cc.product_rule_residual(S, s, t) == {}
    # with an obstruction factor
    obs = [s for s in cc.curve_sections(S, 0, 2) if s.lift is None]
    lin = cc.curve_sections(S, 1, 0)
    for s in obs:
        for t in lin:
            assert cc.product_rule_residual(S, s, t) == {}


def test_component_cech():
    comps = [e - z.scale(GR(2)), e - z]
    assert cc.component_cech(comps, [{0: 5}, {0: 1}], (0, 0)) == [{}, {}]
    assert cc.component_cech(comps, [{-1: 3}, {-1: 7}], (-2, 0)) == [{-1: 3}, {-1: 7}]
    assert cc.component_cech(comps[:1], [{1: 1, -1: 4, -2: 9}], (-2, 0)) == [{-1: 4}]
    with pytest.raises(ValueError):
        cc.component_cech([z * e], [{}], (0, 0))


# ------------------------------------------------------------ numerology


def test_numerology_examples():
    d = cc.pw_numerology(2)
    assert (d["genus"], d["canonical_twist"], d["required_degree"]) == (1, [0, 0], 4)
    d = cc.pw_numerology(1)
    assert (d["genus"], d["required_degree"]) == (0, 0)
    d = cc.pw_numerology(3)
    assert (d["genus"], d["required_degree"]) == (4, 12)


@given(st.integers(1, 8), st.integers(1, 4), st.integers(1, 4))
def test_numerology_consistent(k, l, r):
    d = cc.pw_numerology(k, l, r)
    assert d["consistent"]
    assert d["genus"] == (k - 1) ** 2
    assert d["hom_degree"] == l * r * (d["genus"] - 1)


def test_sigma_essential():
    ex = cc.sigma_essential_example()
    assert not ex["sigma_invariant"]
    assert all(v == (0, 0) for v in ex["base_vanishings"].values())
    assert ex["essential"]
