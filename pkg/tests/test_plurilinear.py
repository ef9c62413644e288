from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from plurikit import plurilinear as pl
from plurikit.exactnum import GR, ONE, ZERO, BiPoly, Mobius, exact, sigma_transform
from plurikit.exactnum import linalg
from plurikit.exactnum.mobius import INF

from conftest import ZS, ES, to_sympy, gr_matrix_to_sympy, rand_gr


@pytest.fixture(scope="module")
def hc():
    return pl.hypercomplex_pair(2)


@pytest.fixture(scope="module")
def generic():
    return pl.random_pair(2, seed=1)


def _eye(n):
    return linalg.identity(n)


# ------------------------------------------------------------ validation


def test_hypercomplex_certified(hc):
    assert pl.validate(hc).certified


def test_sphere_function_of_hypercomplex_pair(hc):
    # q(zeta) = (1 + |zeta|^2)^2 ; Q0 is a polynomial in (z, conj z)
    Q0, _ = pl.sphere_function(hc)
    assert sp.expand(to_sympy(Q0) - (1 + ZS * ES) ** 2) == 0


def test_n1_identity_invalid_with_witness():
    v = pl.validate(pl.PluriPair(1, exact([[1]]), exact([[0]])))
    assert v.status == pl.INVALID
    z = v.witness["zeta"]
    # witness satisfies X v = conj(z) conj(v) at |z| = 1
    assert z * z.conjugate() == ONE


@pytest.mark.parametrize("n", [1, 3])
def test_odd_never_certified(n):
    rng = np.random.default_rng(n)
    assert not any(pl.validate(pl.sample_pair(rng, n), samples=256).certified for _ in range(40))


def test_random_pair_contract():
    a = pl.random_pair(2, seed=1)
    assert pl.validate(a).certified
    b = pl.random_pair(2, seed=1)
    assert all(x == y for x, y in zip(a.X.flat, b.X.flat)) and all(x == y for x, y in zip(a.Y.flat, b.Y.flat))
    with pytest.raises(pl.GenerationError):
        pl.random_pair(3, seed=0, max_tries=5, samples=128)


def test_validity_invariant_under_conjugation(generic, rng):
    # (X, Y) -> (S X conj(S)^-1, S Y conj(S)^-1) preserves the sphere
    S = exact([[rand_gr(rng) + GR(3), rand_gr(rng)], [rand_gr(rng), rand_gr(rng) + GR(0, 3)]])
    Sb = linalg.inv(linalg.conj(S))
    moved = pl.PluriPair(2, linalg.matmul(linalg.matmul(S, generic.X), Sb), linalg.matmul(linalg.matmul(S, generic.Y), Sb))
    assert pl.validate(moved).certified


# ------------------------------------------------------------ complex structures


def test_j_examples(hc):
    J0 = pl.j_at(hc, ZERO)
    i = GR(0, 1)
    expect = np.diag([i, i, -i, -i])
    assert all(a == b for a, b in zip(J0.flat, expect.flat))
    Jinf = pl.j_at(hc, INF)
    assert all(a == -b for a, b in zip(Jinf.flat, J0.flat))


def test_j_squares_to_minus_one(generic, rng):
    for _ in range(5):
        J = pl.j_at(generic, rand_gr(rng))
        assert linalg.is_zero_matrix(linalg.matmul(J, J) + _eye(4))


def test_j_antipodal_sign_hypercomplex(hc, rng):
    # only a hypercomplex sphere is a full twistor line; general pairs use the extension
    for _ in range(5):
        z = rand_gr(rng)
        if z.is_zero():
            continue
        Ja, Jb = pl.j_at(hc, z), pl.j_at(hc, pl.antipode(z))
        assert linalg.is_zero_matrix(Ja + Jb)


def test_extension(generic, hc):
    for pair in (hc, generic):
        for z in (ONE, GR(Fraction(1, 2), 2)):
            J = pl.extension_j(pair, z)
            assert linalg.is_zero_matrix(linalg.matmul(J, J) + _eye(4))
            assert linalg.is_zero_matrix(J + pl.extension_j(pair, pl.antipode(z)))
            assert pl.real_eigenvector_kernel(pair, z) == 0


# ------------------------------------------------------------ frames and reparameterization


def test_frame_round_trip(generic):
    back = pl.from_three_structures(pl.frame_at(generic, ONE), pl.frame_at(generic, INF))
    assert pl.char_poly(back) == pl.char_poly(generic)


def test_y_zero_round_trip(hc):
    n = 2
    W1 = linalg.vstack([hc.X, _eye(n)])
    Winf = linalg.vstack([linalg.zeros(n, n), _eye(n)])
    back = pl.from_three_structures(W1, Winf)
    assert linalg.is_zero_matrix(back.Y) and linalg.is_zero_matrix(back.X - hc.X)


def _proportional(P, Q):
    return sp.cancel(to_sympy(P) / to_sympy(Q)).free_symbols == set()


def test_reparameterize_identity_and_inverse(generic):
    ident = Mobius.identity()
    assert _proportional(pl.char_poly(pl.reparameterize(generic, ident)), pl.char_poly(generic))
    g = Mobius(exact([[1, 1], [GR(0, 1), 2]]))
    there = pl.reparameterize(generic, g)
    back = pl.reparameterize(there, g.inverse())
    assert _proportional(pl.char_poly(back), pl.char_poly(generic))


def test_reparameterized_hypercomplex_is_degree_one(hc):
    g = Mobius(exact([[2, 1], [GR(0, 1), 1]]))
    moved = pl.reparameterize(hc, g)
    sc = pl.support_curve(moved)
    assert sc["k"] == 1 and sc["consistent"]
    assert pl.validate(moved).certified


# ------------------------------------------------------------ characteristic curve


def test_char_poly_hypercomplex(hc):
    assert sp.expand(to_sympy(pl.char_poly(hc)) - (ZS - ES) ** 2) == 0


def test_char_poly_matches_determinant_formula(generic):
    # det((eta conj X - conj Y)(X + zeta Y) + zeta I)
    X, Y = gr_matrix_to_sympy(generic.X), gr_matrix_to_sympy(generic.Y)
    ref = ((ES * X.conjugate() - Y.conjugate()) * (X + ZS * Y) + ZS * sp.eye(2)).det()
    assert sp.expand(to_sympy(pl.char_poly(generic)) - ref) == 0


def test_n1_char_poly_is_bilinear():
    P = pl.char_poly(pl.PluriPair(1, exact([[GR(1, 2)]]), exact([[GR(3)]])))
    assert P.bidegree == (1, 1)


def test_char_poly_sigma_invariant(generic):
    P = pl.char_poly(generic)
    assert _proportional(sigma_transform(P, 2), P)


def test_support_curve(hc, generic):
    s = pl.support_curve(hc)
    assert (s["k"], s["rank"], s["consistent"]) == (1, 2, True)
    s = pl.support_curve(generic)
    assert (s["k"], s["rank"], s["consistent"]) == (2, 1, True)


def test_is_hypercomplex_examples(generic):
    assert pl.is_hypercomplex(pl.PluriPair(2, exact([[0, 1], [-1, 0]]), exact([[0, 0], [0, 0]])))
    i = GR(0, 1)
    assert not pl.is_hypercomplex(pl.PluriPair(2, exact([[i, 0], [0, i]]), exact([[0, 0], [0, 0]])))
    assert not pl.is_hypercomplex(generic)


# ------------------------------------------------------------ normalization


def test_normalize_identity(hc):
    g, norm = pl.normalize_degree_one(hc)
    assert g.equals(Mobius.identity(False), tol=1e-9)
    assert pl.hypercomplex_residual(norm) < 1e-9


def test_normalize_recovers_known_map(hc):
    g0 = Mobius(exact([[2, 1], [GR(0, 1), 1]]))
    moved = pl.reparameterize(hc, g0)
    g, norm = pl.normalize_degree_one(moved)
    assert pl.hypercomplex_residual(norm) < 1e-9


def test_normalize_rejects_degree_two(generic):
    with pytest.raises(ValueError):
        pl.normalize_degree_one(generic)


# ------------------------------------------------------------ splitting profile


def test_decode_profile():
    assert pl.decode_profile([4, 2, 0]) == ([1, 1], True)
    deg, ok = pl.decode_profile([8, 4, 2, 0])
    assert ok and sorted(deg, reverse=True) == [2, 2, 0, 0]


def test_pair_profile(hc, generic):
    for p in (hc, generic):
        prof = pl.pair_splitting(p)
        assert prof["d"] == [4, 2, 0] and sorted(prof["degrees"]) == [1, 1]


# ------------------------------------------------------------ metrics


def test_metric_hypercomplex(hc):
    m = pl.metric_from_form(hc, pl.standard_symplectic(2))
    assert m["positive_definite"] and m["anti_tautological"]
    assert all(m["hyperhermitian"].values())


def test_metric_generic_is_anti_tautological(generic):
    m = pl.metric_from_form(generic, pl.standard_symplectic(2))
    assert m["anti_tautological"]
