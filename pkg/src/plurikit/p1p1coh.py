"""Cohomology of line bundles and resolution-presented sheaves on P^1 x P^1.

Bases are monomials.  For O(a) on P^1 put E0(a) = {0..a} (sections) and
E1(a) = {a+1..-1} (the Laurent window spanning H^1); by Kunneth

    H^0(O(a,b)) = E0(a) x E0(b)
    H^1(O(a,b)) = E0(a) x E1(b)  +  E1(a) x E0(b)
    H^2(O(a,b)) = E1(a) x E1(b)

with the pair (i, j) standing for zeta^i eta^j.  Multiplication by a polynomial
shifts exponents and keeps only the terms that land in the target basis; on
Laurent windows this is exactly product-then-truncate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactnum import linalg
from .exactnum.poly import BiPoly, PolyMatrix, bipoly_det, sigma_transform
from .exactnum.scalars import GaussianRational, ZERO, ONE, as_gr
from .plurilinear import Frame, PluriPair, resolution_matrix

__all__ = [
    "Resolution",
    "window",
    "coh_basis",
    "h_line",
    "mult_map",
    "map_rank",
    "sheaf_cohomology",
    "verify_regularity",
    "kernel_recursion_witness",
    "sphere_from_resolution",
    "sigma_compat_check",
    "stalk_rank",
]


def window(a: int, degree: int) -> range:
    """E0(a) for degree 0, E1(a) for degree 1."""
    if degree == 0:
        return range(0, a + 1)
    return range(a + 1, 0)


def coh_basis(a: int, b: int, degree: int) -> list:
    """Sorted exponent pairs spanning H^degree(O(a, b))."""
    if degree == 0:
        out = [(i, j) for i in window(a, 0) for j in window(b, 0)]
    elif degree == 1:
        out = [(i, j) for i in window(a, 0) for j in window(b, 1)]
        out += [(i, j) for i in window(a, 1) for j in window(b, 0)]
    elif degree == 2:
        out = [(i, j) for i in window(a, 1) for j in window(b, 1)]
    else:
        out = []
    return sorted(out)


def h_line(a: int, b: int):
    """(h0, h1, h2) of O(a, b) by Kunneth."""
    e0a, e1a = len(window(a, 0)), len(window(a, 1))
    e0b, e1b = len(window(b, 0)), len(window(b, 1))
    return (e0a * e0b, e0a * e1b + e1a * e0b, e1a * e1b)


@dataclass
class SparseMap:
    """Linear map between direct sums of cohomology spaces, stored sparsely."""

    entries: dict
    shape: tuple
    row_keys: list
    col_keys: list

    def dense(self, exact_mode: bool = True) -> np.ndarray:
        return linalg.sparse_to_dense(self.entries, self.shape, exact_mode)

    def rank(self, tol: float = 1e-8) -> int:
        return linalg.sparse_rank(self.entries, self.shape, tol)


def _entry(R, s, t) -> BiPoly:
    if isinstance(R, PolyMatrix):
        return R.entries[s][t]
    e = R[s][t]
    return e if isinstance(e, BiPoly) else BiPoly.const(e)


def mult_map(R, src: Sequence, dst: Sequence, degree: int) -> SparseMap:
    """Map on H^degree induced by the polynomial matrix ``R`` (len(dst) x len(src)).

    Entry (s, t) of ``R`` must have bidegree at most dst[s] - src[t].
    """
    src = [tuple(t) for t in src]
    dst = [tuple(t) for t in dst]
    row_keys = []
    row_index: dict = {}
    for s, (a, b) in enumerate(dst):
        for key in coh_basis(a, b, degree):
            row_index[(s, key)] = len(row_keys)
            row_keys.append((s, key))
    col_keys = []
    for t, (a, b) in enumerate(src):
        for key in coh_basis(a, b, degree):
            col_keys.append((t, key))
    entries: dict = {}
    for s in range(len(dst)):
        for t in range(len(src)):
            e = _entry(R, s, t)
            if e.is_zero():
                continue
            da, db = dst[s][0] - src[t][0], dst[s][1] - src[t][1]
            for (p, q) in e.terms:
                if p > da or q > db:
                    raise ValueError(
                        f"entry ({s}, {t}) has a term of bidegree {(p, q)} beyond twist difference {(da, db)}"
                    )
    for col, (t, (i, j)) in enumerate(col_keys):
        for s in range(len(dst)):
            e = _entry(R, s, t)
            for (p, q), c in e.terms.items():
                row = row_index.get((s, (i + p, j + q)))
                if row is None:
                    continue
                key = (row, col)
                v = entries[key] + c if key in entries else c
                if v:
                    entries[key] = v
                else:
                    entries.pop(key, None)
    return SparseMap(entries, (len(row_keys), len(col_keys)), row_keys, col_keys)


def map_rank(R, src, dst, degree) -> int:
    return mult_map(R, src, dst, degree).rank()


# ------------------------------------------------------------------ resolutions


@dataclass(frozen=True)
class Resolution:
    """0 -> sum O(-tag_j) --M--> O^{2n} -> F -> 0."""

    n: int
    M: PolyMatrix

    @classmethod
    def from_pair(cls, pair: PluriPair) -> "Resolution":
        return cls(pair.n, resolution_matrix(pair))

    @property
    def tags(self):
        return self.M.col_tags

    def det(self) -> BiPoly:
        return bipoly_det(self.M)

    def check_injective(self) -> bool:
        return not self.det().is_zero()


def _as_resolution(res) -> Resolution:
    if isinstance(res, Resolution):
        return res
    if isinstance(res, PluriPair):
        return Resolution.from_pair(res)
    if isinstance(res, PolyMatrix):
        return Resolution(res.shape[0] // 2, res)
    raise TypeError("expected Resolution, PluriPair or PolyMatrix")


def sheaf_cohomology(res, p: int, q: int, detail: bool = False):
    """(h0, h1) of F(p, q) from the long exact sequence of the resolution."""
    res = _as_resolution(res)
    rows = res.M.shape[0]
    src = [(p - a, q - b) for (a, b) in res.tags]
    dst = [(p, q)] * rows
    dims_src = [sum(h_line(a, b)[i] for a, b in src) for i in range(3)]
    dims_dst = [rows * h_line(p, q)[i] for i in range(3)]
    ranks = []
    for i in range(3):
        if dims_src[i] == 0 or dims_dst[i] == 0:
            ranks.append(0)
        else:
            ranks.append(mult_map(res.M, src, dst, i).rank())
    ker = [dims_src[i] - ranks[i] for i in range(3)]
    coker = [dims_dst[i] - ranks[i] for i in range(3)]
    h0 = coker[0] + ker[1]
    h1 = coker[1] + ker[2]
    if detail:
        return {
            "twist": [p, q],
            "h0": h0,
            "h1": h1,
            "h2": coker[2],
            "ranks": ranks,
            "dims_W": dims_src,
            "dims_O": dims_dst,
        }
    return h0, h1


def verify_regularity(res, m_max: int = 5) -> dict:
    """Check h*(F(m-1, -m-1)) = 0 and the mirrored twists for 0 <= m <= m_max."""
    res = _as_resolution(res)
    n = res.n
    rows = []
    ok = True
    for m in range(m_max + 1):
        for p, q in ((m - 1, -m - 1), (-m - 1, m - 1)):
            d = sheaf_cohomology(res, p, q, detail=True)
            # H^1 dimension balance: both sides 2 n m^2
            balance = (d["dims_W"][1], d["dims_O"][1])
            passed = d["h0"] == 0 and d["h1"] == 0
            ok &= passed and balance[0] == balance[1] == 2 * n * m * m
            rows.append({"m": m, "twist": [p, q], "h0": d["h0"], "h1": d["h1"], "balance": list(balance), "pass": passed})
            if m == 0:
                break  # (-1, -1) is its own mirror
    return {"ok": ok, "m_max": m_max, "rows": rows}


def kernel_recursion_witness(pair: PluriPair, m: int) -> dict:
    """Injectivity of the induced H^1 map via the recursion v_{i+1} = T(zeta) v_i.

    T(zeta) = conj(X)^-1 X conj(Y) + zeta conj(X)^-1 (Y conj(Y) - I).  The map from
    v_0 (degree <= m-1 in zeta) to the coefficients of degree >= m of v_1..v_m must
    be injective; this follows from invertibility of Y conj(Y) - I.
    """
    n = pair.n
    X, Y = pair.X, pair.Y
    Xb, Yb = linalg.conj(X), linalg.conj(Y)
    Xbi = linalg.inv(Xb)
    Id = linalg.identity(n, pair.is_exact())
    T0 = linalg.matmul(Xbi, linalg.matmul(X, Yb))
    lead = linalg.matmul(Y, Yb) - Id
    T1 = linalg.matmul(Xbi, lead)
    lead_det = linalg.det(lead)
    if m == 0:
        return {"m": 0, "unknowns": 0, "rank": 0, "injective": True, "lead_invertible": bool(lead_det)}
    cols = []
    for d0 in range(m):
        for c in range(n):
            # v as list of coefficient vectors by zeta-degree
            v = [[ZERO] * n for _ in range(m)]
            v[d0][c] = ONE
            overflow = []
            for _ in range(m):
                new = [[ZERO] * n for _ in range(len(v) + 1)]
                for d, vec in enumerate(v):
                    if not any(vec):
                        continue
                    for r in range(n):
                        s0 = ZERO
                        s1 = ZERO
                        for k in range(n):
                            if vec[k]:
                                s0 = s0 + T0[r, k] * vec[k]
                                s1 = s1 + T1[r, k] * vec[k]
                        new[d][r] = new[d][r] + s0
                        new[d + 1][r] = new[d + 1][r] + s1
                v = new
                for d in range(m, len(v)):
                    overflow.extend(v[d])
            cols.append(overflow)
    A = np.empty((len(cols[0]), len(cols)), dtype=object)
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            A[i, j] = x
    r = linalg.rank(A)
    return {
        "m": m,
        "unknowns": n * m,
        "rank": r,
        "injective": r == n * m,
        "lead_invertible": bool(lead_det),
    }


def sphere_from_resolution(Mgen: PolyMatrix, check_vanishing: bool = True) -> Frame:
    """Frame pencil given by the (1,0)-tagged columns of Mgen."""
    nr, nc = Mgen.shape
    if nr != nc or nr % 2:
        raise ValueError("Mgen must be 2n x 2n")
    n = nr // 2
    left = [j for j, t in enumerate(Mgen.col_tags) if t == (1, 0)]
    if len(left) != n or sum(1 for t in Mgen.col_tags if t == (0, 1)) != n:
        raise ValueError("column tags must be (1,0)^n and (0,1)^n")
    if bipoly_det(Mgen).is_zero():
        raise ValueError("det M vanishes identically: the map is not injective")
    if check_vanishing:
        h = sheaf_cohomology(Resolution(n, Mgen), -1, -1)
        if h != (0, 0):
            raise ValueError(f"H*(F(-1,-1)) = {h} is not zero: not an O(-1)-structure datum")
    ex = Mgen.is_exact()
    A = linalg.zeros(nr, n, ex)
    B = linalg.zeros(nr, n, ex)
    for i in range(nr):
        for jj, j in enumerate(left):
            e = Mgen.entries[i][j]
            A[i, jj] = e.coeff(0, 0)
            B[i, jj] = e.coeff(1, 0)
    return Frame(A, B)


def sigma_compat_check(Mgen: PolyMatrix, seed: int = 0, attempts: int = 4) -> bool:
    """Is there a constant invertible G with M^sigma C = G M for a tag-compatible C?

    ``M^sigma`` applies the coefficient form of sigma to each column with its tag,
    so (1,0) and (0,1) columns trade places.  The matching problem is linear in
    (G, C); a random element of its solution space is tested for invertibility.
    """
    nr, nc = Mgen.shape
    if nr == 0:
        return True
    tags = list(Mgen.col_tags)
    Ms = [[sigma_transform(Mgen.entries[i][j], tags[j]) for j in range(nc)] for i in range(nr)]
    stags = [(t[1], t[0]) for t in tags]
    c_slots = [(i, j) for i in range(nc) for j in range(nc) if stags[i] == tags[j]]
    nG = nr * nr
    unknowns = nG + len(c_slots)
    eqs: dict = {}
    # (M^sigma C)[r, j] - (G M)[r, j] = 0, coefficientwise
    for r in range(nr):
        for j in range(nc):
            for u, (i, jj) in enumerate(c_slots):
                if jj != j:
                    continue
                for key, c in Ms[r][i].terms.items():
                    eqs.setdefault((r, j, key), {})
                    d = eqs[(r, j, key)]
                    d[nG + u] = d.get(nG + u, ZERO) + c
            for k in range(nr):
                for key, c in Mgen.entries[k][j].terms.items():
                    eqs.setdefault((r, j, key), {})
                    d = eqs[(r, j, key)]
                    d[r * nr + k] = d.get(r * nr + k, ZERO) - c
    A = linalg.zeros(len(eqs), unknowns)
    for row, d in enumerate(eqs.values()):
        for col, c in d.items():
            A[row, col] = as_gr(c) if not isinstance(c, GaussianRational) else c
    ns = linalg.nullspace(A)
    if not ns:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        coeffs = [int(x) for x in rng.integers(-9, 10, size=len(ns))]
        sol = [ZERO] * unknowns
        for c, v in zip(coeffs, ns):
            if c:
                for t in range(unknowns):
                    sol[t] = sol[t] + v[t] * c
        G = np.array(sol[:nG], dtype=object).reshape(nr, nr)
        C = linalg.zeros(nc, nc)
        for u, (i, j) in enumerate(c_slots):
            C[i, j] = sol[nG + u]
        if linalg.det(G) and linalg.det(C):
            return True
    return False


def stalk_rank(res, z0, w0, tol: float = 1e-8) -> int:
    """2n - rank M(z0, w0)."""
    res = _as_resolution(res)
    A = res.M(z0, w0)
    return A.shape[0] - linalg.rank(A, tol)
