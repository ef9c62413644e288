from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from plurikit.exactnum import (
    GR, BiPoly, Mobius, Poly1, PolyMatrix, ZERO, ONE,
    bipoly_det, exact, mobius_hermitian_factor, sigma_transform, squarefree_part,
)
from plurikit.exactnum import linalg
from plurikit.exactnum.mobius import hermitian_residual
from plurikit.exactnum.poly import poly1_gcd, resultant

from conftest import ZS, ES, to_sympy, gr_matrix_to_sympy

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
grs = st.builds(GR, fracs, fracs)


# ------------------------------------------------------------ scalars


@given(grs, grs, grs)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if not a.is_zero():
        assert a * a.inverse() == ONE


def test_mod_p_image_is_ring_hom():
    p, s = 2147483629, 629208553
    assert (s * s + 1) % p == 0
    a, b = GR(Fraction(1, 3), 2), GR(-5, Fraction(7, 2))
    assert (a * b).mod(p, s) == a.mod(p, s) * b.mod(p, s) % p
    assert (a + b).mod(p, s) == (a.mod(p, s) + b.mod(p, s)) % p


# ------------------------------------------------------------ linear algebra


def test_rank_nullspace_examples():
    r, basis = linalg.rref_nullspace(exact([[1, 0], [0, 1]]))
    assert r == 2 and basis == []
    r, basis = linalg.rref_nullspace(exact([[0] * 3] * 3))
    assert r == 0 and len(basis) == 3
    r, basis = linalg.rref_nullspace(exact([[1, 1], [1, 1]]))
    assert r == 1 and list(basis[0]) == [ONE, -ONE]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_and_det_match_sympy(r, c, data):
    rows = [[data.draw(grs) for _ in range(c)] for _ in range(r)]
    A = exact(rows)
    S = gr_matrix_to_sympy(A)
    assert linalg.rank(A) == S.rank()
    for v in linalg.nullspace(A):
        assert linalg.is_zero_matrix(linalg.matmul(A, np.array(v, dtype=object).reshape(-1, 1)))
    if r == c:
        d = linalg.det(A)
        assert sp.simplify(sp.Rational(d.re.numerator, d.re.denominator) + sp.I * sp.Rational(d.im.numerator, d.im.denominator) - S.det()) == 0


def test_modular_rank_agrees_with_exact(rng):
    for _ in range(20):
        A = exact([[GR(int(rng.integers(-3, 4)), int(rng.integers(-3, 4))) for _ in range(5)] for _ in range(4)])
        A[3] = A[0] + A[1]
        p, r = linalg.PRIMES[0]
        assert linalg.rank_mod_p(linalg._to_mod(A, p, r), p) == linalg.rank(A) == 3


# ------------------------------------------------------------ polynomials


def test_det_examples(zeta, eta):
    assert bipoly_det(PolyMatrix([[zeta, BiPoly.const(0)], [BiPoly.const(0), eta]])) == zeta * eta
    M = PolyMatrix([[zeta, BiPoly.const(-1)], [BiPoly.const(1), eta]])
    assert to_sympy(bipoly_det(M)) == sp.expand(ZS * ES + 1)
    assert bipoly_det(PolyMatrix([[BiPoly.const(GR(3, 1))]])) == BiPoly.const(GR(3, 1))


def test_det_against_sympy(rng, zeta, eta):
    for _ in range(5):
        ent = [[BiPoly.const(GR(int(rng.integers(-2, 3)), int(rng.integers(-2, 3)))) + zeta * BiPoly.const(int(rng.integers(-2, 3))) + eta * BiPoly.const(int(rng.integers(-2, 3))) for _ in range(3)] for _ in range(3)]
        ref = sp.Matrix([[to_sympy(e) for e in row] for row in ent]).det()
        assert sp.expand(to_sympy(bipoly_det(PolyMatrix(ent))) - ref) == 0


def _assoc(a, b):
    """Equal up to a nonzero constant."""
    q = sp.cancel(a / b)
    return q.free_symbols == set() and q != 0


def test_squarefree_examples(zeta, eta):
    d = zeta - eta
    q = zeta * eta + BiPoly.const(1)
    assert _assoc(to_sympy(squarefree_part(d * d)), ZS - ES)
    assert _assoc(to_sympy(squarefree_part(q)), ZS * ES + 1)
    assert _assoc(to_sympy(squarefree_part(d * d * q)), (ZS - ES) * (ZS * ES + 1))


def test_squarefree_against_sympy(rng, zeta, eta):
    for _ in range(4):
        f = zeta + eta * BiPoly.const(int(rng.integers(1, 4))) + BiPoly.const(int(rng.integers(-3, 4)))
        g = zeta * eta + BiPoly.const(GR(int(rng.integers(1, 4)), 1))
        P = f * f * g
        ref = sp.sqf_part(to_sympy(P), ZS, ES)
        assert _assoc(to_sympy(squarefree_part(P)), ref)


def test_sigma_examples(zeta, eta):
    assert sigma_transform(zeta - eta, 1) == eta - zeta
    a = GR(2, 1)
    assert sigma_transform(eta - zeta.scale(a), 1) == -(eta - zeta.scale(a.conjugate()))
    assert sigma_transform(BiPoly.const(1), 0) == BiPoly.const(1)


def _sigma_sympy(expr, k):
    """P^sigma(zeta, eta) = zeta^k eta^k conj(P(-1/conj(eta), -1/conj(zeta)))."""
    zb, eb = sp.symbols("zb eb")
    conj = sp.conjugate(expr.subs({ZS: zb, ES: eb}))
    conj = conj.subs({sp.conjugate(zb): -1 / ES, sp.conjugate(eb): -1 / ZS})
    return sp.expand(sp.cancel(ZS**k * ES**k * conj))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(grs, min_size=3, max_size=3), min_size=3, max_size=3))
def test_sigma_matches_substitution_and_is_involution(table):
    P = BiPoly.from_table(table, (2, 2))
    S = sigma_transform(P, 2)
    assert sp.expand(to_sympy(S) - _sigma_sympy(to_sympy(P), 2)) == 0
    assert sigma_transform(S, 2) == P


def test_poly1_gcd_and_resultant():
    t = Poly1.t()
    a = (t - Poly1([2])) * (t - Poly1([GR(0, 1)]))
    b = (t - Poly1([2])) * (t + Poly1([5]))
    g = poly1_gcd(a, b)
    assert g.degree == 1 and g.monic() == (t - Poly1([2])).monic()
    assert poly1_gcd(t, t + Poly1([1])).degree == 0
    assert resultant(a, b) == 0
    assert resultant(t, t + Poly1([1])) != 0


# ------------------------------------------------------------ Mobius


def test_hermitian_factor_examples():
    g = mobius_hermitian_factor(np.eye(2))
    assert g.equals(Mobius.identity(False), tol=1e-12)
    g = mobius_hermitian_factor(np.diag([4.0, 1.0]))
    m = g.matrix / g.matrix[1, 1]
    assert np.allclose(np.abs(m), np.diag([2.0, 1.0]))
    H = np.array([[2.0, 1.0], [1.0, 1.0]])
    assert hermitian_residual(mobius_hermitian_factor(H), H) < 1e-12


def test_mobius_group_law():
    g = Mobius([[GR(1), GR(2)], [GR(0), GR(1)]])
    h = Mobius([[GR(0), GR(1)], [GR(-1), GR(3, 1)]])
    z = GR(Fraction(1, 3), 2)
    assert (g @ h)(z) == g(h(z))
    assert g.inverse()(g(z)) == z
