import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from plurikit import jsonio
from plurikit import plurilinear as pl
from plurikit.exactnum import GR, BiPoly


def test_pair_round_trip():
    pair = pl.random_pair(2, seed=4)
    back = jsonio.pair_from_json(json.loads(jsonio.dumps(jsonio.pair_to_json(pair))))
    assert all(a == b for a, b in zip(pair.X.flat, back.X.flat))
    assert all(a == b for a, b in zip(pair.Y.flat, back.Y.flat))


def test_float_pair_detected():
    pair = jsonio.pair_from_json({"n": 1, "X": [[0.5]], "Y": [[0]]})
    assert not pair.is_exact()


def test_bipoly_round_trip():
    P = BiPoly.zeta() * BiPoly.eta() + BiPoly.const(GR(Fraction(1, 3), -2))
    assert jsonio.bipoly_from_json(json.loads(jsonio.dumps(P))) == P


def test_bipoly_bidegree_overflow():
    with pytest.raises(jsonio.InputError):
        jsonio.bipoly_from_json({"bidegree": [0, 0], "coeffs": [[1, 1]]})


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip_losslessly(x):
    assert json.loads(jsonio.dumps(x)) == x


def test_nonfinite_floats():
    assert jsonio.to_jsonable(math.inf) == "inf" and jsonio.to_jsonable(math.nan) == "nan"


def test_roots():
    r = jsonio.root_from_json({"mod": 2, "arg_pi": "1/2"})
    assert abs(r - 2j) < 1e-12
    assert jsonio.root_from_json("1/2") == GR(Fraction(1, 2))
    assert jsonio.root_from_json("1+2i") == 1 + 2j


def test_exact_mode_rejects_floats():
    with pytest.raises(jsonio.InputError):
        jsonio.scalar_from_json(0.5, exact_mode=True)
