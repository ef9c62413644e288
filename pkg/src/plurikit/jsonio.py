"""JSON encodings of scalars, matrices, polynomials, pairs and reports."""

from __future__ import annotations

import cmath
import dataclasses
import json
import math
from fractions import Fraction

import numpy as np

from .exactnum import linalg
from .exactnum.mobius import INF, Mobius
from .exactnum.poly import BiPoly, Poly1, PolyMatrix
from .exactnum.scalars import GaussianRational, as_gr, parse_rational

SCHEMA_VERSION = "plurikit-v1"

__all__ = [
    "SCHEMA_VERSION",
    "REPORT_SCHEMA",
    "InputError",
    "to_jsonable",
    "dumps",
    "loads",
    "scalar_from_json",
    "matrix_from_json",
    "bipoly_to_json",
    "bipoly_from_json",
    "poly1_from_json",
    "pair_to_json",
    "pair_from_json",
    "resolution_to_json",
    "resolution_from_json",
    "curve_from_json",
    "root_from_json",
    "validate_report",
]


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_jsonable(obj):
    """Recursively convert library objects to JSON-ready values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(obj, Fraction):
        return _rat(obj)
    if isinstance(obj, GaussianRational):
        return {"re": _rat(obj.re), "im": _rat(obj.im)}
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(obj.real), "im": to_jsonable(obj.imag)}
    if obj is INF:
        return "inf"
    if isinstance(obj, BiPoly):
        return bipoly_to_json(obj)
    if isinstance(obj, Poly1):
        return [to_jsonable(c) for c in obj.coeffs]
    if isinstance(obj, Mobius):
        return to_jsonable(obj.matrix)
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()] if obj.dtype != object else [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, **kw) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=False, **kw)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON at line {e.lineno} column {e.colno} (char {e.pos}): {e.msg}") from e


# ---------------------------------------------------------------- decoding


def scalar_from_json(x, exact_mode: bool = True):
    """Exact: ints, "p/q" strings, {"re", "im"}.  Float: numbers or {"re", "im"} numbers."""
    try:
        if exact_mode:
            if isinstance(x, float):
                raise InputError(f"float {x!r} in exact mode; use a rational string")
            if isinstance(x, dict) and any(isinstance(v, float) for v in x.values()):
                raise InputError(f"float entry {x!r} in exact mode")
            return as_gr(x)
        if isinstance(x, dict):
            return complex(_real(x.get("re", 0)), _real(x.get("im", 0)))
        if isinstance(x, str):
            return complex(x.replace(" ", "").replace("i", "j")) if "j" in x or "i" in x else float(parse_rational(x))
        if isinstance(x, bool):
            raise InputError("bool is not a scalar")
        return complex(x)
    except InputError:
        raise
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad scalar {x!r}: {e}") from e


def _real(v) -> float:
    if isinstance(v, str):
        return float(parse_rational(v))
    return float(v)


def _detect_exact(doc) -> bool:
    """Exact unless some leaf is a float."""
    if isinstance(doc, float):
        return False
    if isinstance(doc, dict):
        return all(_detect_exact(v) for v in doc.values())
    if isinstance(doc, list):
        return all(_detect_exact(v) for v in doc)
    return True


def matrix_from_json(rows, exact_mode: bool = True) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a list of rows")
    width = {len(r) for r in rows}
    if len(width) > 1:
        raise InputError("ragged matrix rows")
    if exact_mode:
        M = np.empty((len(rows), width.pop() if width else 0), dtype=object)
    else:
        M = np.zeros((len(rows), width.pop() if width else 0), dtype=complex)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            M[i, j] = scalar_from_json(x, exact_mode)
    return M


def bipoly_to_json(P: BiPoly) -> dict:
    return {"bidegree": list(P.bidegree), "coeffs": [[to_jsonable(c) for c in row] for row in P.table()]}


def bipoly_from_json(doc, exact_mode: bool | None = None) -> BiPoly:
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise InputError("BiPoly must be {'bidegree': [k1, k2], 'coeffs': [[...]]}")
    if exact_mode is None:
        exact_mode = _detect_exact(doc["coeffs"])
    table = doc["coeffs"]
    terms = {}
    for i, row in enumerate(table):
        for j, c in enumerate(row):
            v = scalar_from_json(c, exact_mode)
            if v:
                terms[(i, j)] = v
    bd = doc.get("bidegree")
    if bd is None:
        bd = (len(table) - 1, max((len(r) for r in table), default=1) - 1)
    try:
        bd = tuple(int(x) for x in bd)
        return BiPoly(terms, bd)
    except (TypeError, ValueError) as e:
        raise InputError(f"bad BiPoly: {e}") from e


def poly1_from_json(coeffs, exact_mode: bool | None = None) -> Poly1:
    if not isinstance(coeffs, list):
        raise InputError("polynomial must be a coefficient list, constant term first")
    if exact_mode is None:
        exact_mode = _detect_exact(coeffs)
    return Poly1([scalar_from_json(c, exact_mode) for c in coeffs])


def pair_to_json(pair) -> dict:
    return {"schema": SCHEMA_VERSION, "n": pair.n, "X": to_jsonable(pair.X), "Y": to_jsonable(pair.Y)}


def pair_from_json(doc, mode: str | None = None):
    from .plurilinear import PluriPair

    if not isinstance(doc, dict) or not {"n", "X", "Y"} <= set(doc):
        raise InputError("pair file needs keys n, X, Y")
    exact_mode = _detect_exact([doc["X"], doc["Y"]]) if mode is None else mode == "exact"
    X = matrix_from_json(doc["X"], exact_mode)
    Y = matrix_from_json(doc["Y"], exact_mode)
    n = doc["n"]
    if not isinstance(n, int) or X.shape != (n, n) or Y.shape != (n, n):
        raise InputError(f"X and Y must be {n} x {n}")
    if exact_mode:
        X, Y = linalg.exact(X), linalg.exact(Y)
    return PluriPair(n, X, Y)


def resolution_to_json(M: PolyMatrix, n: int) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "n": n,
        "M": [[bipoly_to_json(e) for e in row] for row in M.entries],
        "col_tags": [list(t) for t in M.col_tags],
    }


def resolution_from_json(doc) -> PolyMatrix:
    if not isinstance(doc, dict) or "M" not in doc:
        raise InputError("resolution file needs key M")
    exact_mode = _detect_exact(doc["M"])
    entries = [[bipoly_from_json(e, exact_mode) for e in row] for row in doc["M"]]
    n = doc.get("n", len(entries) // 2)
    tags = doc.get("col_tags")
    if tags is None:
        tags = [(1, 0)] * n + [(0, 1)] * n
    return PolyMatrix(entries, tuple(tuple(t) for t in tags))


def curve_from_json(doc):
    from .curvecoh import curve_from_poly

    if not isinstance(doc, dict) or "P" not in doc:
        raise InputError("curve file needs key P")
    P = bipoly_from_json(doc["P"])
    comps = doc.get("components")
    if comps is not None:
        comps = [bipoly_from_json(c, P.is_exact()) for c in comps]
    return curve_from_poly(P, doc.get("k"), components=comps)


def root_from_json(x):
    """Monopole root: exact scalar, number, complex string, or {"mod": r, "arg_pi": "p/q"}."""
    if isinstance(x, dict) and "arg_pi" in x:
        r = _real(x.get("mod", 1))
        t = float(parse_rational(str(x["arg_pi"])))
        return r * cmath.exp(1j * math.pi * t)
    if isinstance(x, str) and ("j" in x or "i" in x) and "/" not in x:
        return scalar_from_json(x, False)
    if _detect_exact(x):
        try:
            return as_gr(x)
        except (TypeError, ValueError) as e:
            raise InputError(f"bad root {x!r}: {e}") from e
    return scalar_from_json(x, False)


# ---------------------------------------------------------------- report schema

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "command", "outcome", "exit_code", "result"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "command": {
            "type": "object",
            "required": ["verb", "options"],
            "properties": {"verb": {"type": "string"}, "options": {"type": "object"}},
        },
        "outcome": {"enum": ["computed", "invalid-input", "violation", "unknown"]},
        "exit_code": {"enum": [0, 1, 2, 3]},
        "result": {},
        "notes": {"type": "array", "items": {"type": "string"}},
        "error": {"type": "string"},
        "timing_s": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}


def validate_report(doc) -> None:
    """Raise jsonschema.ValidationError if ``doc`` is not a well-formed report."""
    import jsonschema

    jsonschema.validate(doc, REPORT_SCHEMA)
