"""Mobius transformations of P^1 and their action on bidegree curves."""

from __future__ import annotations

import numpy as np

from . import linalg
from .poly import BiPoly, Poly1
from .scalars import GaussianRational, ZERO, ONE, as_gr

__all__ = ["INF", "Mobius", "mobius_hermitian_factor", "pullback", "is_inf"]


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_infinity, ())


def _infinity():
    return INF


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


class Mobius:
    """``z -> (a z + b) / (c z + d)``, stored projectively normalized."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = np.asarray(m)
        if m.shape != (2, 2):
            raise ValueError("Mobius needs a 2x2 matrix")
        if m.dtype != object:
            m = np.asarray(m, dtype=complex)
            d = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if d == 0:
                raise ValueError("singular Mobius matrix")
            first = next(x for x in m.flat if x != 0)
            self.m = m / first
        else:
            m = linalg.exact(m)
            if not (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]):
                raise ValueError("singular Mobius matrix")
            first = next(x for x in m.flat if x)
            inv = first.inverse()
            out = np.empty((2, 2), dtype=object)
            for idx, x in np.ndenumerate(m):
                out[idx] = x * inv
            self.m = out

    @classmethod
    def identity(cls, exact_mode: bool = True) -> "Mobius":
        return cls(linalg.identity(2, exact_mode))

    def is_exact(self) -> bool:
        return self.m.dtype == object

    @property
    def matrix(self) -> np.ndarray:
        return self.m

    def __call__(self, z):
        a, b, c, d = self.m[0, 0], self.m[0, 1], self.m[1, 0], self.m[1, 1]
        if z is INF:
            return a / c if c else INF
        num = a * z + b
        den = c * z + d
        if not den:
            return INF
        return num / den

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(linalg.matmul(self.m, other.m))

    def inverse(self) -> "Mobius":
        a, b, c, d = self.m[0, 0], self.m[0, 1], self.m[1, 0], self.m[1, 1]
        if self.is_exact():
            return Mobius(linalg.exact([[d, -b], [-c, a]]))
        return Mobius(np.array([[d, -b], [-c, a]], dtype=complex))

    def star(self) -> "Mobius":
        """Conjugate transpose."""
        return Mobius(linalg.conj(self.m).T.copy())

    def to_complex(self) -> "Mobius":
        return Mobius(linalg.to_complex(self.m))

    def equals(self, other: "Mobius", tol: float = 0.0) -> bool:
        """Projective equality (matrices up to scalar)."""
        A = linalg.to_complex(self.m) if tol else self.m
        B = linalg.to_complex(other.m) if tol else other.m
        if tol == 0.0 and self.is_exact() and other.is_exact():
            return all(x == y for x, y in zip(A.flat, B.flat))
        A = linalg.to_complex(self.m)
        B = linalg.to_complex(other.m)
        k = int(np.argmax(np.abs(B)))
        u = A.flat[k] / B.flat[k]
        return bool(np.linalg.norm(A - u * B) <= tol * max(1.0, np.linalg.norm(A)))

    def __repr__(self):
        return f"Mobius({self.m.tolist()})"


def mobius_hermitian_factor(H, tol: float = 1e-9) -> Mobius:
    """Float-mode ``g`` with ``g* g`` proportional to ``H``.

    ``H`` must be a nonzero multiple of a Hermitian positive-definite matrix.
    The factor is upper triangular with positive diagonal before projective
    normalization; any other solution differs from it by a unitary on the left.
    """
    H = linalg.to_complex(np.asarray(H)) if np.asarray(H).dtype == object else np.asarray(H, dtype=complex)
    if H.shape != (2, 2):
        raise ValueError("H must be 2x2")
    t = H[0, 0] + H[1, 1]
    if abs(t) <= tol * max(1.0, np.linalg.norm(H)):
        raise ValueError("H is not proportional to a positive-definite Hermitian matrix")
    K = H / t
    if np.linalg.norm(K - K.conj().T) > tol * max(1.0, np.linalg.norm(K)):
        raise ValueError("H is not proportional to a Hermitian matrix")
    K = (K + K.conj().T) / 2
    ev = np.linalg.eigvalsh(K)
    if ev[0] <= tol * ev[-1]:
        raise ValueError("H is not proportional to a positive-definite Hermitian matrix")
    L = np.linalg.cholesky(K)
    g = L.conj().T
    return Mobius(g)


def hermitian_residual(g: Mobius, H) -> float:
    """min over scalars c of ||g* g - c H|| relative to ||g* g||."""
    G = linalg.to_complex(g.m)
    A = G.conj().T @ G
    Hc = linalg.to_complex(np.asarray(H)) if np.asarray(H).dtype == object else np.asarray(H, dtype=complex)
    h = Hc.reshape(-1)
    a = A.reshape(-1)
    c = np.vdot(h, a) / np.vdot(h, h)
    return float(np.linalg.norm(a - c * h) / np.linalg.norm(a))


def _lin(a, b) -> Poly1:
    return Poly1([b, a])


def pullback(P: BiPoly, g: Mobius, h: Mobius, bidegree=None) -> BiPoly:
    """Polynomial of the curve ``{(z, w): (g z, h w) in {P = 0}}``.

    Returns ``P(g z, h w) (c z + d)^d1 (c' w + d')^d2`` for the bidegree
    ``(d1, d2)`` of ``P`` (or the one given).
    """
    d1, d2 = bidegree if bidegree is not None else P.bidegree
    exact_mode = P.is_exact() and g.is_exact() and h.is_exact()
    gm = g.m if exact_mode else linalg.to_complex(g.m)
    hm = h.m if exact_mode else linalg.to_complex(h.m)
    one = ONE if exact_mode else 1.0 + 0j
    num_z = _lin(gm[0, 0], gm[0, 1])
    den_z = _lin(gm[1, 0], gm[1, 1])
    num_w = _lin(hm[0, 0], hm[0, 1])
    den_w = _lin(hm[1, 0], hm[1, 1])
    zp = [(num_z**i) * (den_z ** (d1 - i)) for i in range(d1 + 1)]
    wp = [(num_w**j) * (den_w ** (d2 - j)) for j in range(d2 + 1)]
    terms: dict = {}
    src = P if exact_mode else P.to_complex()
    for (i, j), c in src.terms.items():
        for a, x in enumerate(zp[i].coeffs):
            if not x:
                continue
            for b, y in enumerate(wp[j].coeffs):
                if y:
                    key = (a, b)
                    v = c * x * y * one
                    terms[key] = terms[key] + v if key in terms else v
    return BiPoly(terms, (d1, d2))
