"""Brute-force reference computations, kept independent of the main engine.

Cohomology of O(a, b) on P^1 x P^1 is computed from the tensor product of two
two-chart Cech complexes, one exponent pair at a time.  For O(a) on P^1 and a
monomial z^e the complex is

    C^0_e = [e >= 0] (chart z)  +  [e <= a] (chart 1/z),   C^1_e = 1,
    d(x0, x1) = x0 - x1,

and the product complex uses the Koszul sign.  Multiplication by a monomial is
the identity on matching chart components, so induced maps come from solving
``image = lambda * rep + d(beta)`` in each target exponent.  Linear algebra here
is plain Fraction elimination and does not touch exactnum.linalg.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

__all__ = [
    "cech_h_line",
    "cech_mult_map",
    "cofactor_det",
]


# ---------------------------------------------------------------- tiny Q-linear algebra


def _rank(rows: list) -> int:
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _solve_first(cols: list, target: list):
    """Coefficient of cols[0] in any solution of sum x_k cols[k] = target, or None."""
    n = len(target)
    k = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        return None
    if 0 in piv_cols:
        return aug[piv_cols.index(0)][k]
    return Fraction(0)


# ---------------------------------------------------------------- per-exponent complexes


def _factor(a: int, e: int):
    """Chart list of C^0 and the differential row (C^1 is one-dimensional)."""
    charts = [c for c, ok in ((0, e >= 0), (1, e <= a)) if ok]
    d = [1 if c == 0 else -1 for c in charts]
    return charts, d


def _total(a: int, b: int, e: int, f: int):
    """Cells of the product complex by degree and its differentials.

    A cell is (x, y) with x, y in {("0", chart), ("1", None)}.
    """
    cz, dz = _factor(a, e)
    cw, dw = _factor(b, f)
    Z = [("0", c) for c in cz] + [("1", None)]
    W = [("0", c) for c in cw] + [("1", None)]
    deg = lambda cell: (cell[0][0] == "1") + (cell[1][0] == "1")
    cells = {k: [c for c in product(Z, W) if deg(c) == k] for k in range(3)}
    dzmap = dict(zip(cz, dz))
    dwmap = dict(zip(cw, dw))

    def boundary(cell):
        x, y = cell
        out = {}
        if x[0] == "0":
            out[(("1", None), y)] = dzmap[x[1]]
        sign = -1 if x[0] == "1" else 1
        if y[0] == "0":
            out[(x, ("1", None))] = out.get((x, ("1", None)), 0) + sign * dwmap[y[1]]
        return out

    D = {}
    for k in range(2):
        src, dst = cells[k], cells[k + 1]
        idx = {c: i for i, c in enumerate(dst)}
        M = [[0] * len(src) for _ in dst]
        for j, c in enumerate(src):
            for t, v in boundary(c).items():
                M[idx[t]][j] += v
        D[k] = M
    return cells, D


def _cohomology_dims(cells, D):
    dims = [len(cells[k]) for k in range(3)]
    ranks = [_rank(D[0]) if dims[0] and dims[1] else 0, _rank(D[1]) if dims[1] and dims[2] else 0]
    return (
        dims[0] - ranks[0],
        dims[1] - ranks[0] - ranks[1],
        dims[2] - ranks[1],
    )


def _box(a: int) -> range:
    return range(min(a, 0) - 2, max(a, 0) + 3)


def cech_h_line(a: int, b: int):
    """(h0, h1, h2) of O(a, b) summed over exponent pairs."""
    tot = [0, 0, 0]
    for e in _box(a):
        for f in _box(b):
            cells, D = _total(a, b, e, f)
            for k, h in enumerate(_cohomology_dims(cells, D)):
                tot[k] += h
    return tuple(tot)


def _class_rep(a, b, e, f, degree):
    """Cocycle representing the unique class at (e, f) in the given degree, or None.

    Factor representatives: H^0 is 1 on every chart, H^1 is the C^1 generator.
    """
    cz, _ = _factor(a, e)
    cw, _ = _factor(b, f)
    hz0, hz1 = len(cz) == 2, len(cz) == 0
    hw0, hw1 = len(cw) == 2, len(cw) == 0
    cells, _ = _total(a, b, e, f)
    rep = {}
    if degree == 0 and hz0 and hw0:
        for x in cz:
            for y in cw:
                rep[(("0", x), ("0", y))] = 1
    elif degree == 1 and hz0 and hw1:
        for x in cz:
            rep[(("0", x), ("1", None))] = 1
    elif degree == 1 and hz1 and hw0:
        for y in cw:
            rep[(("1", None), ("0", y))] = 1
    elif degree == 2 and hz1 and hw1:
        rep[(("1", None), ("1", None))] = 1
    else:
        return None
    return [rep.get(c, 0) for c in cells[degree]]


def _basis_keys(a, b, degree):
    keys = []
    for e in _box(a):
        for f in _box(b):
            if _class_rep(a, b, e, f, degree) is not None:
                keys.append((e, f))
    return sorted(keys)


def cech_mult_map(terms: dict, src: tuple, dst: tuple, degree: int):
    """Matrix of multiplication by sum c_ij z^i w^j from H^degree(O(src)) to H^degree(O(dst)).

    Rows and columns follow lex-sorted exponent keys.  Returns (matrix, row_keys, col_keys).
    """
    a, b = src
    a2, b2 = dst
    cols = _basis_keys(a, b, degree)
    rows = _basis_keys(a2, b2, degree)
    ridx = {k: i for i, k in enumerate(rows)}
    M = [[0] * len(cols) for _ in rows]
    for j, (e, f) in enumerate(cols):
        rep = _class_rep(a, b, e, f, degree)
        cells_src, _ = _total(a, b, e, f)
        for (i, jj), c in terms.items():
            e2, f2 = e + i, f + jj
            cells_t, D = _total(a2, b2, e2, f2)
            tidx = {cell: t for t, cell in enumerate(cells_t[degree])}
            image = [0] * len(cells_t[degree])
            for cell, v in zip(cells_src[degree], rep):
                if v:
                    if cell not in tidx:
                        raise ValueError("chart component lost under multiplication")
                    image[tidx[cell]] += v
            boundary_cols = []
            if degree > 0:
                Dk = D[degree - 1]
                boundary_cols = [[Dk[r][s] for r in range(len(Dk))] for s in range(len(cells_t[degree - 1]))]
            trep = _class_rep(a2, b2, e2, f2, degree)
            if trep is None:
                lam = _solve_first([[0] * len(image)] + boundary_cols, image) if image else Fraction(0)
                if lam is None:
                    raise ArithmeticError(f"image at {(e2, f2)} is not a coboundary")
                continue
            lam = _solve_first([trep] + boundary_cols, image)
            if lam is None:
                raise ArithmeticError(f"image at {(e2, f2)} is not a cocycle class")
            if lam:
                M[ridx[(e2, f2)]][j] = M[ridx[(e2, f2)]][j] + c * lam
    return M, rows, cols


# ---------------------------------------------------------------- determinants


def cofactor_det(M):
    """Laplace expansion along the first row; entries need + and *."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if not _nonzero(M[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return M[0][0] * 0
    return total


def _nonzero(x) -> bool:
    if hasattr(x, "is_zero"):
        return not x.is_zero()
    return bool(x)
