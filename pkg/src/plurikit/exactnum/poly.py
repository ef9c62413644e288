"""Univariate and bivariate polynomials over Q(i) (or over C in float mode).

``BiPoly`` stores the nonzero terms ``{(i, j): c}`` of ``sum c zeta^i eta^j``
together with a bidegree bound.  Coefficients are GaussianRationals in exact
mode and Python complex numbers in float mode; the code only relies on ring
operations, ``conjugate`` and truthiness for zero tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .scalars import GaussianRational, ZERO, ONE, as_gr

__all__ = [
    "Poly1",
    "BiPoly",
    "PolyMatrix",
    "bipoly_det",
    "sigma_transform",
    "bipoly_gcd",
    "squarefree_part",
    "interpolate",
]


def _is_exact_coeff(c) -> bool:
    return isinstance(c, GaussianRational)


def _coerce(c):
    if isinstance(c, (GaussianRational, complex, float)):
        return c
    if isinstance(c, np.complexfloating) or isinstance(c, np.floating):
        return complex(c)
    return as_gr(c)


# ---------------------------------------------------------------- Poly1


class Poly1:
    """Dense univariate polynomial ``sum coeffs[k] t^k``, trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> "Poly1":
        return cls([ZERO, ONE])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly1({list(self.coeffs)})"

    def __add__(self, other):
        other = _as_poly1(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly1(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly1(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly1(other))

    def __rsub__(self, other):
        return _as_poly1(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            return Poly1(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly1()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly1(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly1([ONE])
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly1":
        return Poly1(c * k for k, c in enumerate(self.coeffs) if k)

    def conj(self) -> "Poly1":
        return Poly1(c.conjugate() for c in self.coeffs)

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        inv = 1 / self.lc() if not _is_exact_coeff(self.lc()) else self.lc().inverse()
        return self * inv

    def divmod(self, other: "Poly1"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly1(), self
        lc = other.lc()
        inv = lc.inverse() if _is_exact_coeff(lc) else 1 / lc
        q = [ZERO] * (dq + 1)
        for k in range(dq, -1, -1):
            c = r[k + len(other.coeffs) - 1]
            if not c:
                continue
            f = c * inv
            q[k] = f
            for t, b in enumerate(other.coeffs):
                if b:
                    r[k + t] = r[k + t] - f * b
        return Poly1(q), Poly1(r[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other: "Poly1") -> "Poly1":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def to_complex(self) -> "Poly1":
        return Poly1(complex(c) for c in self.coeffs)


def _as_poly1(x) -> Poly1:
    return x if isinstance(x, Poly1) else Poly1([x])


def _mod_image(a: Poly1, p: int, s: int):
    try:
        out = [c.mod(p, s) for c in a.coeffs]
    except ZeroDivisionError:
        return None
    while out and out[-1] == 0:
        out.pop()
    return out


def _mod_gcd_degree(a: list, b: list, p: int) -> int:
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] * inv % p
            shift = len(r) - len(b)
            for t, x in enumerate(b):
                r[t + shift] = (r[t + shift] - f * x) % p
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return len(a) - 1


def _coprime_mod_p(a: Poly1, b: Poly1) -> bool:
    """True only when gcd(a, b) = 1 is certified by a prime not dividing either lc."""
    for p, s in linalg.PRIMES:
        am, bm = _mod_image(a, p, s), _mod_image(b, p, s)
        if am is None or bm is None or len(am) != len(a.coeffs) or len(bm) != len(b.coeffs):
            continue
        return _mod_gcd_degree(am, bm, p) == 0
    return False


def poly1_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd over the coefficient field."""
    if a.is_zero() or b.is_zero():
        return (b if a.is_zero() else a).monic()
    exact_coeffs = _is_exact_coeff(a.lc()) and _is_exact_coeff(b.lc())
    if exact_coeffs and _coprime_mod_p(a, b):
        return Poly1([ONE])
    while not b.is_zero():
        a, b = b, (a % b).monic() if exact_coeffs else a % b
    return a.monic()


def resultant(p: Poly1, q: Poly1):
    """Resultant via the Sylvester determinant (actual degrees)."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        return ZERO
    if m == 0 and n == 0:
        return ONE
    size = m + n
    rows = []
    for r in range(n):
        row = [ZERO] * size
        for k, c in enumerate(reversed(p.coeffs)):
            row[r + k] = c
        rows.append(row)
    for r in range(m):
        row = [ZERO] * size
        for k, c in enumerate(reversed(q.coeffs)):
            row[r + k] = c
        rows.append(row)
    A = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            A[i, j] = rows[i][j]
    if not all(isinstance(x, GaussianRational) for x in A.flat):
        return complex(np.linalg.det(linalg.to_complex(A)))
    return linalg.det(A)


Poly1.gcd = staticmethod(poly1_gcd)
Poly1.resultant = staticmethod(resultant)


# ---------------------------------------------------------------- BiPoly


class BiPoly:
    """Bivariate polynomial in (zeta, eta) with a bidegree bound."""

    __slots__ = ("terms", "bidegree")

    def __init__(self, terms: dict | None = None, bidegree: tuple[int, int] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = _coerce(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean
        actual = self._actual()
        if bidegree is None:
            bidegree = actual
        else:
            bidegree = (int(bidegree[0]), int(bidegree[1]))
            if actual[0] > bidegree[0] or actual[1] > bidegree[1]:
                raise ValueError(f"terms exceed bidegree bound {bidegree}")
        self.bidegree = bidegree

    def _actual(self):
        if not self.terms:
            return (0, 0)
        return (max(i for i, _ in self.terms), max(j for _, j in self.terms))

    # constructors
    @classmethod
    def const(cls, c, bidegree=(0, 0)) -> "BiPoly":
        return cls({(0, 0): c}, bidegree)

    @classmethod
    def zeta(cls) -> "BiPoly":
        return cls({(1, 0): ONE})

    @classmethod
    def eta(cls) -> "BiPoly":
        return cls({(0, 1): ONE})

    @classmethod
    def from_table(cls, table: Sequence[Sequence], bidegree=None) -> "BiPoly":
        terms = {}
        for i, row in enumerate(table):
            for j, c in enumerate(row):
                terms[(i, j)] = c
        if bidegree is None:
            bidegree = (len(table) - 1, max((len(r) for r in table), default=1) - 1)
        return cls(terms, bidegree)

    @classmethod
    def from_zeta_poly(cls, p: Poly1, degree: int | None = None) -> "BiPoly":
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)}, None if degree is None else (degree, 0))

    @classmethod
    def from_eta_poly(cls, p: Poly1, degree: int | None = None) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(p.coeffs)}, None if degree is None else (0, degree))

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return all(isinstance(c, GaussianRational) for c in self.terms.values())

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), ZERO)

    def table(self):
        k1, k2 = self.bidegree
        return [[self.terms.get((i, j), ZERO) for j in range(k2 + 1)] for i in range(k1 + 1)]

    def trimmed(self) -> "BiPoly":
        return BiPoly(self.terms)

    def with_bidegree(self, bidegree) -> "BiPoly":
        return BiPoly(self.terms, bidegree)

    def leading_key(self):
        return max(self.terms) if self.terms else None

    def normalized(self) -> "BiPoly":
        """Scale so the coefficient at the lex-largest exponent is 1."""
        if not self.terms:
            return self
        lc = self.terms[self.leading_key()]
        inv = lc.inverse() if isinstance(lc, GaussianRational) else 1 / lc
        return self.scale(inv)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mono = "".join(
                s for s in (
                    "" if i == 0 else ("z" if i == 1 else f"z^{i}"),
                    "" if j == 0 else ("w" if j == 1 else f"w^{j}"),
                )
            )
            parts.append(f"({c}){mono}")
        return "BiPoly(" + " + ".join(parts) + f"; {self.bidegree})"

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        bd = (max(self.bidegree[0], other.bidegree[0]), max(self.bidegree[1], other.bidegree[1]))
        return BiPoly(terms, bd)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.bidegree)

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiPoly":
        return BiPoly({k: v * c for k, v in self.terms.items()}, self.bidegree)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        terms: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                v = a * b
                terms[key] = terms[key] + v if key in terms else v
        bd = (self.bidegree[0] + other.bidegree[0], self.bidegree[1] + other.bidegree[1])
        return BiPoly(terms, bd)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = BiPoly.const(ONE)
        for _ in range(e):
            out = out * self
        return out

    def conj(self) -> "BiPoly":
        """Conjugate the coefficients."""
        return BiPoly({k: c.conjugate() for k, c in self.terms.items()}, self.bidegree)

    def d_zeta(self) -> "BiPoly":
        return BiPoly({(i - 1, j): c * i for (i, j), c in self.terms.items() if i}, None)

    def d_eta(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j}, None)

    def to_complex(self) -> "BiPoly":
        return BiPoly({k: complex(c) for k, c in self.terms.items()}, self.bidegree)

    def coeff_l1(self) -> float:
        return float(sum(abs(complex(c)) for c in self.terms.values()))

    # evaluation
    def __call__(self, z, w):
        acc = ZERO
        zp: dict = {}
        wp: dict = {}
        for (i, j), c in self.terms.items():
            if i not in zp:
                zp[i] = z ** i if i else ONE
            if j not in wp:
                wp[j] = w ** j if j else ONE
            acc = acc + c * (zp[i] * wp[j])
        return acc

    def eval_grid(self, z: np.ndarray, w: np.ndarray) -> np.ndarray:
        """Vectorized complex evaluation at broadcastable arrays ``z, w``."""
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for (i, j), c in self.terms.items():
            out = out + complex(c) * z**i * w**j
        return out

    def in_eta(self, z) -> Poly1:
        """Univariate polynomial in eta after substituting zeta = z."""
        cs = [ZERO] * (self.bidegree[1] + 1)
        for (i, j), c in self.terms.items():
            cs[j] = cs[j] + c * (z**i if i else ONE)
        return Poly1(cs)

    def in_zeta(self, w) -> Poly1:
        cs = [ZERO] * (self.bidegree[0] + 1)
        for (i, j), c in self.terms.items():
            cs[i] = cs[i] + c * (w**j if j else ONE)
        return Poly1(cs)

    def zeta_coeffs(self) -> list:
        """List indexed by eta-power of Poly1 coefficients in zeta."""
        k2 = self._actual()[1]
        buckets = [dict() for _ in range(k2 + 1)]
        for (i, j), c in self.terms.items():
            buckets[j][i] = c
        return [Poly1([b.get(i, ZERO) for i in range(max(b, default=-1) + 1)]) for b in buckets]

    @classmethod
    def from_zeta_coeffs(cls, cols: Sequence[Poly1]) -> "BiPoly":
        terms = {}
        for j, p in enumerate(cols):
            for i, c in enumerate(p.coeffs):
                terms[(i, j)] = c
        return cls(terms)

    # division
    def divmod(self, other: "BiPoly"):
        """Lex (zeta first) division; returns ``(q, r)``."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lk = other.leading_key()
        lc = other.terms[lk]
        inv = lc.inverse() if isinstance(lc, GaussianRational) else 1 / lc
        rem = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while rem:
            key = max(rem)
            c = rem.pop(key)
            if key[0] >= lk[0] and key[1] >= lk[1]:
                shift = (key[0] - lk[0], key[1] - lk[1])
                f = c * inv
                q[shift] = f
                for (i, j), b in other.terms.items():
                    if (i, j) == lk:
                        continue
                    t = (i + shift[0], j + shift[1])
                    v = rem.get(t, ZERO) - f * b
                    if v:
                        rem[t] = v
                    else:
                        rem.pop(t, None)
            else:
                r[key] = c
        return BiPoly(q), BiPoly(r)

    def exquo(self, other: "BiPoly") -> "BiPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact bivariate division")
        return q

    def proportional_factor(self, other: "BiPoly", tol: float | None = None):
        """Return ``u`` with ``self == u * other`` or None."""
        if self.is_zero() or other.is_zero():
            return None if (self.is_zero() != other.is_zero()) else ONE
        if tol is None:
            if set(self.terms) != set(other.terms):
                return None
            key = max(other.terms)
            u = self.terms[key] / other.terms[key]
            for k, c in other.terms.items():
                if self.terms[k] != u * c:
                    return None
            return u
        a = self.to_complex()
        b = other.to_complex()
        keys = set(a.terms) | set(b.terms)
        key = max(keys, key=lambda k: abs(b.terms.get(k, 0)))
        if abs(b.terms.get(key, 0)) == 0:
            return None
        u = a.terms.get(key, 0) / b.terms[key]
        scale_ = max(abs(c) for c in a.terms.values())
        for k in keys:
            if abs(a.terms.get(k, 0) - u * b.terms.get(k, 0)) > tol * scale_:
                return None
        return u


# ---------------------------------------------------------------- sigma


def sigma_transform(P: BiPoly, k) -> BiPoly:
    """Coefficient form of P composed with sigma(zeta, eta) = (-1/conj eta, -1/conj zeta).

    ``k`` is either the integer for bidegree (k, k) or a pair (d1, d2); the
    term ``c zeta^i eta^j`` goes to ``(-1)^(i+j) conj(c) zeta^(d2-j) eta^(d1-i)``.
    """
    d1, d2 = (k, k) if isinstance(k, int) else (int(k[0]), int(k[1]))
    act = P._actual()
    if P.terms and (act[0] > d1 or act[1] > d2):
        raise ValueError(f"bidegree {act} exceeds ({d1}, {d2})")
    terms = {}
    for (i, j), c in P.terms.items():
        v = c.conjugate()
        terms[(d2 - j, d1 - i)] = -v if (i + j) % 2 else v
    return BiPoly(terms, (d2, d1))


# ---------------------------------------------------------------- gcd / squarefree


def _content(cols: list[Poly1]) -> Poly1:
    g = Poly1()
    for p in cols:
        if not p.is_zero():
            g = poly1_gcd(g, p) if not g.is_zero() else p.monic()
            if g.degree == 0:
                break
    return g


def _primitive(cols: list[Poly1]):
    c = _content(cols)
    if c.is_zero():
        return c, cols
    return c, [p.exquo(c) if not p.is_zero() else p for p in cols]


def _trim_cols(cols: list[Poly1]) -> list[Poly1]:
    cols = list(cols)
    while cols and cols[-1].is_zero():
        cols.pop()
    return cols


def _prem(a: list[Poly1], b: list[Poly1]) -> list[Poly1]:
    """Pseudo-remainder in eta over Q(i)[zeta] (up to a power of lc(b))."""
    r = _trim_cols(a)
    b = _trim_cols(b)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        new = [p * lb for p in r]
        for t, bp in enumerate(b):
            new[t + shift] = new[t + shift] - lr * bp
        r = _trim_cols(new)
    return r


def bipoly_gcd(P: BiPoly, Q: BiPoly) -> BiPoly:
    """Gcd over Q(i)[zeta, eta], normalized by the lex leading coefficient."""
    if P.is_zero():
        return Q.normalized() if not Q.is_zero() else Q
    if Q.is_zero():
        return P.normalized()
    A = _trim_cols(P.zeta_coeffs())
    B = _trim_cols(Q.zeta_coeffs())
    ca, A = _primitive(A)
    cb, B = _primitive(B)
    cg = poly1_gcd(ca, cb)
    if len(A) < len(B):
        A, B = B, A
    while True:
        if len(B) == 1:
            # primitive and constant in eta means a unit
            G = [Poly1([ONE])]
            break
        R = _prem(A, B)
        if not R:
            G = B
            break
        _, R = _primitive(R)
        A, B = B, R
    G = [p * cg for p in G]
    return BiPoly.from_zeta_coeffs(G).normalized()


def squarefree_part(P: BiPoly) -> BiPoly:
    """P / gcd(P, dP/dzeta, dP/deta), normalized by the lex leading coefficient."""
    if P.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if not P.is_exact():
        raise TypeError("squarefree_part requires exact coefficients")
    g = bipoly_gcd(bipoly_gcd(P, P.d_zeta()), P.d_eta())
    return P.exquo(g).normalized()


# ---------------------------------------------------------------- interpolation / det


def interpolate(xs: Sequence, ys: Sequence) -> list:
    """Exact Newton interpolation; returns coefficients low to high."""
    n = len(xs)
    coef = list(ys)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k])
    # expand Newton form
    poly = [ZERO] * n
    poly[0] = coef[n - 1] if n else ZERO
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (t - xs[k]) + coef[k]
        new = [ZERO] * n
        for i in range(deg + 1):
            new[i + 1] = new[i + 1] + poly[i]
            new[i] = new[i] - poly[i] * xs[k]
        new[0] = new[0] + coef[k]
        poly = new
        deg += 1
    return poly


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix of BiPoly entries with per-column bidegree tags."""

    entries: tuple
    col_tags: tuple

    def __init__(self, entries, col_tags=None):
        rows = tuple(tuple(e if isinstance(e, BiPoly) else BiPoly.const(e) for e in row) for row in entries)
        ncols = len(rows[0]) if rows else (len(col_tags) if col_tags is not None else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged PolyMatrix")
        if col_tags is None:
            tags = []
            for j in range(ncols):
                tags.append(
                    (
                        max((r[j].bidegree[0] for r in rows), default=0),
                        max((r[j].bidegree[1] for r in rows), default=0),
                    )
                )
            col_tags = tags
        col_tags = tuple((int(a), int(b)) for a, b in col_tags)
        for r in rows:
            for j, e in enumerate(r):
                act = e._actual()
                if e.terms and (act[0] > col_tags[j][0] or act[1] > col_tags[j][1]):
                    raise ValueError(f"entry in column {j} exceeds tag {col_tags[j]}")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "col_tags", col_tags)

    @property
    def shape(self):
        return (len(self.entries), len(self.col_tags))

    def is_exact(self) -> bool:
        return all(e.is_exact() for r in self.entries for e in r)

    def __call__(self, z, w) -> np.ndarray:
        nr, nc = self.shape
        exact_mode = self.is_exact() and isinstance(z, GaussianRational | int) and isinstance(
            w, GaussianRational | int
        )
        if exact_mode:
            out = np.empty((nr, nc), dtype=object)
            for i, r in enumerate(self.entries):
                for j, e in enumerate(r):
                    v = e(z, w)
                    out[i, j] = v if isinstance(v, GaussianRational) else as_gr(v)
            return out
        out = np.empty((nr, nc), dtype=complex)
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                out[i, j] = complex(e(complex(z), complex(w)))
        return out

    def columns(self, idx) -> "PolyMatrix":
        return PolyMatrix([[r[j] for j in idx] for r in self.entries], [self.col_tags[j] for j in idx])

    def map_entries(self, f) -> "PolyMatrix":
        return PolyMatrix([[f(e) for e in r] for r in self.entries], self.col_tags)


def bipoly_det(M: PolyMatrix) -> BiPoly:
    """Determinant by evaluation on a grid and interpolation.

    Exact entries use integer nodes and Newton interpolation; float entries use
    roots of unity and an FFT.  The bidegree bound is the sum of column tags.
    """
    nr, nc = M.shape
    if nr != nc:
        raise ValueError("bipoly_det needs a square matrix")
    if nr == 0:
        return BiPoly.const(ONE)
    D1 = sum(t[0] for t in M.col_tags)
    D2 = sum(t[1] for t in M.col_tags)
    if M.is_exact():
        xs = [as_gr(a) for a in range(D1 + 1)]
        ys = [as_gr(b) for b in range(D2 + 1)]
        vals = [[linalg.det(M(x, y)) for y in ys] for x in xs]
        # interpolate in eta for each zeta node, then in zeta per eta-power
        eta_coeffs = [interpolate(ys, row) for row in vals]
        terms = {}
        for j in range(D2 + 1):
            col = interpolate(xs, [eta_coeffs[a][j] for a in range(D1 + 1)])
            for i, c in enumerate(col):
                terms[(i, j)] = c
        return BiPoly(terms, (D1, D2))
    N1, N2 = D1 + 1, D2 + 1
    w1 = np.exp(2j * np.pi * np.arange(N1) / N1)
    w2 = np.exp(2j * np.pi * np.arange(N2) / N2)
    V = np.empty((N1, N2), dtype=complex)
    for a in range(N1):
        for b in range(N2):
            V[a, b] = np.linalg.det(M(complex(w1[a]), complex(w2[b])))
    C = np.fft.fft2(V) / (N1 * N2)
    scale_ = np.max(np.abs(C)) if C.size else 0.0
    terms = {}
    for i in range(N1):
        for j in range(N2):
            if abs(C[i, j]) > 1e-13 * scale_:
                terms[(i, j)] = complex(C[i, j])
    return BiPoly(terms, (D1, D2))
