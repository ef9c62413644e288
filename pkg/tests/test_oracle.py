"""Sanity checks of the independent oracles themselves."""
from fractions import Fraction

import sympy as sp
from hypothesis import given, settings, strategies as st

from plurikit.oracle import cech_h_line, cech_mult_map, cofactor_det


def test_cech_projective_line_values():
    # O(a, 0) on P1 x P1 has the P1 cohomology of O(a)
    assert cech_h_line(2, 0) == (3, 0, 0)
    assert cech_h_line(-3, 0) == (0, 2, 0)
    assert cech_h_line(-2, -2) == (0, 0, 1)
    assert cech_h_line(-1, 5) == (0, 0, 0)


def test_cech_identity_map():
    M, rows, cols = cech_mult_map({(0, 0): 1}, (-3, 1), (-3, 1), 1)
    assert rows == cols
    assert M == [[1 if i == j else 0 for j in range(len(cols))] for i in range(len(rows))]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.fractions(-4, 4, max_denominator=3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_cofactor_det_matches_sympy(rows):
    assert cofactor_det(rows) == sp.Matrix(rows).det()
