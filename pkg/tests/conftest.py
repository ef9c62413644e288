from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from plurikit.exactnum import BiPoly, GR
from plurikit.exactnum.scalars import GaussianRational

ZS, ES = sp.symbols("zeta eta")


def to_sympy(P: BiPoly):
    """BiPoly -> sympy expression in zeta, eta (exact)."""
    out = 0
    for i, row in enumerate(P.table()):
        for j, c in enumerate(row):
            if isinstance(c, GaussianRational):
                c = sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(c.im.numerator, c.im.denominator)
            else:
                c = sp.nsimplify(complex(c).real) + sp.I * sp.nsimplify(complex(c).imag)
            out += c * ZS**i * ES**j
    return sp.expand(out)


def gr_matrix_to_sympy(A):
    return sp.Matrix([[sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator) for x in row] for row in A])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def zeta():
    return BiPoly.zeta()


@pytest.fixture(scope="session")
def eta():
    return BiPoly.eta()


def rand_gr(rng, spread=3, den=2):
    def part():
        return Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, den + 1)))

    return GR(part(), part())
