"""Exact and floating matrix routines over Q(i).

Exact matrices are numpy object arrays of :class:`GaussianRational`; float
matrices are ``complex128``.  Rank of large exact matrices is first computed
modulo a prime in which ``-1`` is a square; that rank is a lower bound for the
true rank, so a full-rank answer is final and anything else falls back to
exact elimination.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import GaussianRational, ZERO, ONE, as_gr

__all__ = [
    "PRIMES",
    "exact",
    "is_exact",
    "identity",
    "zeros",
    "conj",
    "matmul",
    "to_complex",
    "rref",
    "rank",
    "rank_mod_p",
    "nullspace",
    "rref_nullspace",
    "det",
    "inv",
    "solve",
    "float_rank",
    "sparse_rank",
    "sparse_to_dense",
    "float_nullspace",
    "hstack",
    "vstack",
    "is_zero_matrix",
]

# (p, s) with s*s = -1 mod p; p = 1 mod 4.
PRIMES = ((2147483629, 629208553), (2147483549, 895500278))


def exact(rows) -> np.ndarray:
    """Build an object array of GaussianRationals from nested sequences."""
    arr = np.asarray(rows, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = as_gr(x)
    return out


def is_exact(A: np.ndarray) -> bool:
    return A.dtype == object


def identity(n: int, exact_mode: bool = True) -> np.ndarray:
    if not exact_mode:
        return np.eye(n, dtype=complex)
    out = np.full((n, n), ZERO, dtype=object)
    for i in range(n):
        out[i, i] = ONE
    return out


def zeros(r: int, c: int, exact_mode: bool = True) -> np.ndarray:
    if not exact_mode:
        return np.zeros((r, c), dtype=complex)
    return np.full((r, c), ZERO, dtype=object)


def conj(A: np.ndarray) -> np.ndarray:
    if A.dtype == object:
        out = np.empty(A.shape, dtype=object)
        for idx, x in np.ndenumerate(A):
            out[idx] = x.conjugate()
        return out
    return np.conj(A)


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product that keeps object entries as GaussianRationals."""
    if A.dtype != object and B.dtype != object:
        return A @ B
    if A.dtype != object or B.dtype != object:
        return to_complex(A) @ to_complex(B)
    r, k = A.shape
    k2, c = B.shape
    if k != k2:
        raise ValueError("shape mismatch")
    out = np.full((r, c), ZERO, dtype=object)
    for i in range(r):
        row = A[i]
        nz = [t for t in range(k) if row[t]]
        if not nz:
            continue
        for j in range(c):
            s = ZERO
            for t in nz:
                b = B[t, j]
                if b:
                    s = s + row[t] * b
            out[i, j] = s
    return out


def to_complex(A: np.ndarray) -> np.ndarray:
    if A.dtype == object:
        return np.array([[complex(x) for x in row] for row in A], dtype=complex).reshape(A.shape)
    return np.asarray(A, dtype=complex)


def hstack(blocks) -> np.ndarray:
    return np.concatenate(blocks, axis=1)


def vstack(blocks) -> np.ndarray:
    return np.concatenate(blocks, axis=0)


def is_zero_matrix(A: np.ndarray, tol: float = 0.0) -> bool:
    if A.dtype == object:
        return all(not x for x in A.flat)
    return bool(np.all(np.abs(A) <= tol))


# -- exact elimination


def _rows(A: np.ndarray):
    return [list(r) for r in A]


def rref(A: np.ndarray):
    """Reduced row echelon form with earliest-nonzero pivoting.

    Returns ``(R, pivots)``; ``R`` is an object array.
    """
    rows = _rows(A)
    nr, nc = A.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv_p = prow[c].inverse()
        prow = [x * inv_p if x else ZERO for x in prow]
        rows[r] = prow
        nzc = [t for t in range(c, nc) if prow[t]]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for t in nzc:
                        ri[t] = ri[t] - f * prow[t]
        pivots.append(c)
        r += 1
    out = np.empty((nr, nc), dtype=object)
    for i in range(nr):
        for j in range(nc):
            out[i, j] = rows[i][j]
    return out, pivots


def _exact_rank(A: np.ndarray) -> int:
    """Row echelon rank without back substitution."""
    rows = [r for r in _rows(A) if any(r)]
    nc = A.shape[1]
    rank_ = 0
    for c in range(nc):
        piv = None
        for i in range(rank_, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank_], rows[piv] = rows[piv], rows[rank_]
        prow = rows[rank_]
        inv_p = prow[c].inverse()
        nzc = [t for t in range(c + 1, nc) if prow[t]]
        for i in range(rank_ + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f * inv_p
                ri = rows[i]
                ri[c] = ZERO
                for t in nzc:
                    ri[t] = ri[t] - f * prow[t]
        rank_ += 1
    return rank_


def _to_mod(A: np.ndarray, p: int, s: int) -> np.ndarray | None:
    out = np.zeros(A.shape, dtype=np.int64)
    inv_cache: dict[int, int] = {}
    for idx, x in np.ndenumerate(A):
        a, b, d = x.parts()
        if a == 0 and b == 0:
            continue
        if d == 1:
            out[idx] = (a + b * s) % p
            continue
        inv = inv_cache.get(d)
        if inv is None:
            if d % p == 0:
                return None
            inv = pow(d, -1, p)
            inv_cache[d] = inv
        out[idx] = (a + b * s) * inv % p
    return out


def rank_mod_p(M: np.ndarray, p: int) -> int:
    """Rank of an int64 matrix over F_p (entries already reduced)."""
    M = M.copy()
    nr, nc = M.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        col = M[r:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        below = M[r + 1 :, c]
        idx = np.flatnonzero(below)
        if idx.size:
            rows = r + 1 + idx
            f = M[rows, c][:, None]
            M[rows] = (M[rows] - (f * M[r][None, :]) % p) % p
        r += 1
    return r


def sparse_to_dense(entries: dict, shape, exact_mode: bool = True) -> np.ndarray:
    out = zeros(shape[0], shape[1], exact_mode)
    for (i, j), c in entries.items():
        out[i, j] = c
    return out


def sparse_rank(entries: dict, shape, tol: float = 1e-8) -> int:
    """Rank of a matrix given as ``{(row, col): value}``."""
    nr, nc = shape
    if nr == 0 or nc == 0 or not entries:
        return 0
    vals = list(entries.values())
    if not all(isinstance(v, GaussianRational) for v in vals):
        return float_rank(sparse_to_dense(entries, shape, False), tol)
    full = min(nr, nc)
    p, s = PRIMES[0]
    M = np.zeros((nr, nc), dtype=np.int64)
    inv_cache: dict[int, int] = {}
    ok = True
    for (i, j), x in entries.items():
        a, b, d = x.parts()
        if d == 1:
            M[i, j] = (a + b * s) % p
            continue
        inv_ = inv_cache.get(d)
        if inv_ is None:
            if d % p == 0:
                ok = False
                break
            inv_ = inv_cache[d] = pow(d, -1, p)
        M[i, j] = (a + b * s) * inv_ % p
    if ok and rank_mod_p(M, p) == full:
        return full
    return _exact_rank(sparse_to_dense(entries, shape, True))


def rank(A: np.ndarray, tol: float = 1e-8) -> int:
    """Rank; exact for object arrays, SVD-thresholded for float arrays."""
    if A.size == 0:
        return 0
    if A.dtype != object:
        return float_rank(A, tol)
    full = min(A.shape)
    for p, s in PRIMES:
        M = _to_mod(A, p, s)
        if M is None:
            continue
        r = rank_mod_p(M, p)
        if r == full:
            return r
        break
    return _exact_rank(A)


def nullspace(A: np.ndarray) -> list:
    """Exact nullspace basis, rows in reduced echelon form."""
    nr, nc = A.shape
    R, pivots = rref(A)
    free = [c for c in range(nc) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * nc
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, f]
        basis.append(v)
    if not basis:
        return []
    B = np.empty((len(basis), nc), dtype=object)
    for i, v in enumerate(basis):
        B[i] = v
    B, piv2 = rref(B)
    return [np.array(B[i], dtype=object) for i in range(len(piv2))]


def rref_nullspace(A: np.ndarray):
    """Return ``(rank, nullspace basis)`` of an exact matrix."""
    if A.dtype != object:
        A = exact_from_complex_strict(A)
    ns = nullspace(A)
    return A.shape[1] - len(ns), ns


def exact_from_complex_strict(A: np.ndarray) -> np.ndarray:
    """Lift a float matrix with exactly representable entries to exact form."""
    out = np.empty(A.shape, dtype=object)
    for idx, x in np.ndenumerate(A):
        z = complex(x)
        out[idx] = GaussianRational(Fraction(z.real), Fraction(z.imag))
    return out


def det(A: np.ndarray):
    """Exact determinant by elimination (object arrays) or numpy (float)."""
    n, m = A.shape
    if n != m:
        raise ValueError("determinant of non-square matrix")
    if A.dtype != object:
        return complex(np.linalg.det(A)) if n else 1 + 0j
    rows = _rows(A)
    result = ONE
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        prow = rows[c]
        pc = prow[c]
        result = result * pc
        inv_p = pc.inverse()
        nzc = [t for t in range(c + 1, n) if prow[t]]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv_p
                ri = rows[i]
                for t in nzc:
                    ri[t] = ri[t] - f * prow[t]
    return result


def inv(A: np.ndarray) -> np.ndarray:
    n, m = A.shape
    if n != m:
        raise ValueError("inverse of non-square matrix")
    if A.dtype != object:
        return np.linalg.inv(A)
    aug = hstack([A, identity(n)])
    R, piv = rref(aug)
    if n and (len(piv) < n or piv[n - 1] != n - 1):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def solve(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Solve ``A X = B`` for square invertible ``A``."""
    if A.dtype != object:
        return np.linalg.solve(A, B)
    return matmul(inv(A), B)


# -- floating helpers


def float_rank(A: np.ndarray, tol: float = 1e-8) -> int:
    A = np.asarray(A, dtype=complex)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def float_nullspace(A: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal nullspace basis as columns."""
    A = np.asarray(A, dtype=complex)
    nr, nc = A.shape
    if nr == 0:
        return np.eye(nc, dtype=complex)
    _, s, vh = np.linalg.svd(A)
    r = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return vh[r:].conj().T
