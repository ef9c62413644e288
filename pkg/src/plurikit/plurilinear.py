"""The (X, Y) matrix model of a linear pluricomplex structure.

A pair ``(X, Y)`` of n x n matrices describes the sphere of complex structures
on ``V`` (real dimension 2n) whose (1,0)-space at ``zeta`` is the column span of
the frame ``[[X + zeta Y], [zeta I]]`` inside ``C^2n``; the real structure is
``tau(v, w) = (conj w, conj v)``.  Everything here is exact over Q(i) when the
pair is, and falls back to complex floats otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .certify import scan_sphere
from .exactnum import linalg
from .exactnum.mobius import INF, Mobius, mobius_hermitian_factor, is_inf
from .exactnum.poly import BiPoly, PolyMatrix, bipoly_det, squarefree_part
from .exactnum.scalars import GaussianRational, ZERO, ONE, as_gr

__all__ = [
    "Frame",
    "PluriPair",
    "Verdict",
    "CERTIFIED",
    "INVALID",
    "UNKNOWN",
    "GenerationError",
    "NotPluricomplexAt",
    "frame_at",
    "pencil",
    "block_swap",
    "validate",
    "j_at",
    "from_three_structures",
    "reparameterize",
    "char_poly",
    "resolution_matrix",
    "support_curve",
    "is_hypercomplex",
    "normalize_degree_one",
    "extension_j",
    "real_eigenvector_kernel",
    "splitting_profile",
    "decode_profile",
    "metric_from_form",
    "standard_symplectic",
    "random_pair",
    "sample_pair",
    "hypercomplex_pair",
    "hypercomplex_residual",
    "pair_splitting",
    "intersection_dims",
    "sphere_function",
    "antipode",
    "curve_mobius",
]

CERTIFIED, INVALID, UNKNOWN = "certified", "invalid", "unknown"


class GenerationError(RuntimeError):
    """Raised when rejection sampling runs out of attempts."""


class NotPluricomplexAt(ValueError):
    """The (1,0)-space at a point meets its conjugate."""

    def __init__(self, zeta, msg="frame is not transverse to its conjugate"):
        super().__init__(f"{msg} at zeta={zeta}")
        self.zeta = zeta


@dataclass(frozen=True)
class PluriPair:
    n: int
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X)
        Y = np.asarray(self.Y)
        if X.shape != (self.n, self.n) or Y.shape != (self.n, self.n):
            raise ValueError("X and Y must be n x n")
        exact_mode = X.dtype == object and Y.dtype == object
        if exact_mode:
            X, Y = linalg.exact(X), linalg.exact(Y)
        else:
            X, Y = linalg.to_complex(X), linalg.to_complex(Y)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @classmethod
    def from_rows(cls, X, Y) -> "PluriPair":
        X = linalg.exact(X)
        Y = linalg.exact(Y)
        return cls(X.shape[0], X, Y)

    def is_exact(self) -> bool:
        return self.X.dtype == object

    def to_complex(self) -> "PluriPair":
        return PluriPair(self.n, linalg.to_complex(self.X), linalg.to_complex(self.Y))


@dataclass
class Verdict:
    status: str
    witness: dict | None = None
    min_modulus: float | None = None
    details: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED


# ------------------------------------------------------------------ frames


def _exact_mode(pair: PluriPair, *points) -> bool:
    if not pair.is_exact():
        return False
    return all(is_inf(p) or isinstance(p, (GaussianRational, int, Fraction)) for p in points)


def _scalar(z, exact_mode):
    return as_gr(z) if exact_mode else complex(z)


def _eye(n, exact_mode):
    return linalg.identity(n, exact_mode)


def _mats(pair, exact_mode):
    if exact_mode:
        return pair.X, pair.Y
    return linalg.to_complex(pair.X), linalg.to_complex(pair.Y)


def frame_at(pair: PluriPair, zeta) -> np.ndarray:
    """2n x n frame of the (1,0)-space at ``zeta`` (``INF`` allowed)."""
    ex = _exact_mode(pair, zeta)
    X, Y = _mats(pair, ex)
    n = pair.n
    if is_inf(zeta):
        return linalg.vstack([Y.copy(), _eye(n, ex)])
    z = _scalar(zeta, ex)
    top = X + Y * z
    return linalg.vstack([top, _eye(n, ex) * z])


def pencil(pair: PluriPair):
    """``(A, B)`` with frame(zeta) = A + zeta B."""
    n = pair.n
    ex = pair.is_exact()
    X, Y = _mats(pair, ex)
    A = linalg.vstack([X.copy(), linalg.zeros(n, n, ex)])
    B = linalg.vstack([Y.copy(), _eye(n, ex)])
    return A, B


@dataclass(frozen=True)
class Frame:
    """Linear pencil of 2n x n frames: ``at(zeta) = A + zeta B``, ``at(INF) = B``."""

    A: np.ndarray
    B: np.ndarray

    @classmethod
    def from_pair(cls, pair: PluriPair) -> "Frame":
        return cls(*pencil(pair))

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def is_exact(self) -> bool:
        return self.A.dtype == object

    def at(self, zeta) -> np.ndarray:
        if is_inf(zeta):
            return self.B.copy()
        if self.is_exact() and not isinstance(zeta, (complex, float)):
            return self.A + self.B * as_gr(zeta)
        return linalg.to_complex(self.A) + complex(zeta) * linalg.to_complex(self.B)

    __call__ = at


def block_swap(n: int, exact_mode: bool = True) -> np.ndarray:
    Z = linalg.zeros(n, n, exact_mode)
    Id = _eye(n, exact_mode)
    return linalg.vstack([linalg.hstack([Z, Id]), linalg.hstack([Id, Z.copy()])])


def _tau_frame(F: np.ndarray) -> np.ndarray:
    n2 = F.shape[0] // 2
    Fb = linalg.conj(F)
    return linalg.vstack([Fb[n2:], Fb[:n2]])


def _split_structure(B: np.ndarray, n: int) -> np.ndarray:
    """``B diag(iI, -iI) B^-1`` for a 2n x 2n basis matrix."""
    ex = B.dtype == object
    if ex:
        iu = as_gr((0, 1))
        D = linalg.zeros(2 * n, 2 * n, True)
        for k in range(n):
            D[k, k] = iu
            D[n + k, n + k] = -iu
        return linalg.matmul(linalg.matmul(B, D), linalg.inv(B))
    d = np.concatenate([np.full(n, 1j), np.full(n, -1j)])
    return (B * d) @ np.linalg.inv(B)


def _is_singular(B: np.ndarray, tol: float = 1e-10) -> bool:
    if B.dtype == object:
        return not linalg.det(B)
    s = np.linalg.svd(B, compute_uv=False)
    return s[-1] <= tol * s[0]


def j_at(pair: PluriPair, zeta) -> np.ndarray:
    """Complex structure J_zeta on C^2n (+i on the frame, -i on its tau image)."""
    F = frame_at(pair, zeta)
    B = linalg.hstack([F, _tau_frame(F)])
    if _is_singular(B):
        raise NotPluricomplexAt(zeta)
    return _split_structure(B, pair.n)


def antipode(zeta):
    """``-1 / conj(zeta)`` on P^1."""
    if is_inf(zeta):
        return ZERO
    if isinstance(zeta, (int, Fraction)):
        zeta = as_gr(zeta)
    if not zeta:
        return INF
    return -1 / zeta.conjugate()


def extension_j(pair: PluriPair, zeta) -> np.ndarray:
    """Complex-linear structure i(v1 - v2) for C^2n = V_zeta + V_{-1/conj zeta}."""
    F1 = frame_at(pair, zeta)
    F2 = frame_at(pair, antipode(zeta))
    B = linalg.hstack([F1, F2])
    if _is_singular(B):
        raise NotPluricomplexAt(zeta, "V_zeta and V_antipode are not complementary")
    return _split_structure(B, pair.n)


def _realify(M: np.ndarray, conj_part: np.ndarray | None = None):
    """Real matrix of ``v -> M v + C conj(v)`` on (Re v, Im v) coordinates.

    Exact input gives a Fraction object array; float gives float64.
    """
    ex = M.dtype == object
    r, c = M.shape
    if conj_part is None:
        conj_part = linalg.zeros(r, c, ex)
    if ex:
        out = np.empty((2 * r, 2 * c), dtype=object)
        for i in range(r):
            for j in range(c):
                a, b = M[i, j].re, M[i, j].im
                p, q = conj_part[i, j].re, conj_part[i, j].im
                # (a+ib)(x+iy) + (p+iq)(x-iy)
                out[i, j] = a + p
                out[i, c + j] = -b + q
                out[r + i, j] = b + q
                out[r + i, c + j] = a - p
        return out
    M = np.asarray(M, dtype=complex)
    C = np.asarray(conj_part, dtype=complex)
    top = np.hstack([M.real + C.real, -M.imag + C.imag])
    bot = np.hstack([M.imag + C.imag, M.real - C.real])
    return np.vstack([top, bot])


def _fraction_rank(A: np.ndarray) -> int:
    return linalg.rank(linalg.exact(A)) if A.size else 0


def real_eigenvector_kernel(pair: PluriPair, zeta) -> int:
    """Dimension of V meet {x - i J~ x}, computed as a real-linear system.

    V is the tau-fixed set {(v, conj v)}; a real eigenvector exists iff some
    nonzero real point lies in the (1,0)-space of J~, i.e. in the frame span.
    """
    F1 = frame_at(pair, zeta)
    n = pair.n
    ex = F1.dtype == object
    # unknowns: c in C^n with F1 c = tau(F1 c) = T conj(F1) conj(c)
    R = _realify(F1, -_tau_frame(F1))
    if ex:
        return 2 * n - _fraction_rank(R)
    return 2 * n - linalg.float_rank(R)


# ------------------------------------------------------------------ curve


def _bilinear_entries(A0, Az, Aw, Azw):
    """Matrix of BiPolys A0 + z Az + w Aw + z w Azw."""
    n = A0.shape[0]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(
                BiPoly(
                    {(0, 0): A0[i, j], (1, 0): Az[i, j], (0, 1): Aw[i, j], (1, 1): Azw[i, j]},
                    (1, 1),
                )
            )
        rows.append(row)
    return rows


def char_poly(pair: PluriPair) -> BiPoly:
    """det((eta conj X - conj Y)(X + zeta Y) + zeta I), bidegree (n, n)."""
    ex = pair.is_exact()
    X, Y = _mats(pair, ex)
    Xb, Yb = linalg.conj(X), linalg.conj(Y)
    Id = _eye(pair.n, ex)
    mm = linalg.matmul
    A0 = -mm(Yb, X)
    Az = Id - mm(Yb, Y)
    Aw = mm(Xb, X)
    Azw = mm(Xb, Y)
    if pair.n == 0:
        return BiPoly.const(ONE)
    M = PolyMatrix(_bilinear_entries(A0, Az, Aw, Azw), [(1, 1)] * pair.n)
    return bipoly_det(M)


def resolution_matrix(pair: PluriPair) -> PolyMatrix:
    """``[[X + zeta Y, -I], [zeta I, eta conj X - conj Y]]`` with tags (1,0)^n, (0,1)^n."""
    n = pair.n
    ex = pair.is_exact()
    X, Y = _mats(pair, ex)
    Xb, Yb = linalg.conj(X), linalg.conj(Y)
    one = ONE if ex else 1.0 + 0j
    rows = []
    for i in range(n):
        row = [BiPoly({(0, 0): X[i, j], (1, 0): Y[i, j]}, (1, 0)) for j in range(n)]
        row += [BiPoly({(0, 0): -one} if i == j else {}, (0, 1)) for j in range(n)]
        rows.append(row)
    for i in range(n):
        row = [BiPoly({(1, 0): one} if i == j else {}, (1, 0)) for j in range(n)]
        row += [BiPoly({(0, 0): -Yb[i, j], (0, 1): Xb[i, j]}, (0, 1)) for j in range(n)]
        rows.append(row)
    return PolyMatrix(rows, [(1, 0)] * n + [(0, 1)] * n)


def sphere_function(pair: PluriPair):
    """Chart polynomials of q(zeta) = det((X+zY)(conj X + conj z conj Y) - |z|^2 I).

    Returns ``(Q0, Qinf)`` with q(z) = Q0(z, conj z) and, for u = 1/zeta,
    q(zeta) |u|^(2n) = Qinf(u, conj u).
    """
    ex = pair.is_exact()
    X, Y = _mats(pair, ex)
    Xb, Yb = linalg.conj(X), linalg.conj(Y)
    Id = _eye(pair.n, ex)
    mm = linalg.matmul
    if pair.n == 0:
        return BiPoly.const(ONE), BiPoly.const(ONE)
    Q0 = bipoly_det(
        PolyMatrix(
            _bilinear_entries(mm(X, Xb), mm(Y, Xb), mm(X, Yb), mm(Y, Yb) - Id), [(1, 1)] * pair.n
        )
    )
    Qi = bipoly_det(
        PolyMatrix(
            _bilinear_entries(mm(Y, Yb) - Id, mm(X, Yb), mm(Y, Xb), mm(X, Xb)), [(1, 1)] * pair.n
        )
    )
    return Q0, Qi


# ------------------------------------------------------------------ validation


def _snap(z: complex, max_den: int = 1000) -> GaussianRational:
    return GaussianRational(
        Fraction(z.real).limit_denominator(max_den), Fraction(z.imag).limit_denominator(max_den)
    )


def _violation_map(pair: PluriPair, zeta, exact_mode: bool):
    """Real matrix of v -> (X + zeta Y) v - conj(zeta) conj(v); at INF v -> Y v - conj v."""
    X, Y = _mats(pair, exact_mode)
    n = pair.n
    if is_inf(zeta):
        M = Y
        C = -_eye(n, exact_mode)
    else:
        z = _scalar(zeta, exact_mode)
        M = X + Y * z
        C = -_eye(n, exact_mode) * (z.conjugate() if exact_mode else np.conj(z))
    return M, C, _realify(M, C)


def _witness_at(pair: PluriPair, zeta, tol: float = 1e-7) -> dict | None:
    """Vector v with (X + zeta Y) v = conj(zeta) conj(v), exact if possible."""
    n = pair.n
    if pair.is_exact() and (is_inf(zeta) or isinstance(zeta, GaussianRational)):
        _, _, R = _violation_map(pair, zeta, True)
        ns = linalg.nullspace(linalg.exact(R))
        if ns:
            x = ns[0]
            v = [GaussianRational(x[k].re, x[n + k].re) for k in range(n)]
            return {"zeta": zeta, "v": v, "exact": True, "residual": 0.0}
        return None
    M, C, R = _violation_map(pair, zeta, False)
    _, s, vh = np.linalg.svd(R)
    x = vh[-1]
    v = x[:n] + 1j * x[n:]
    res = float(np.linalg.norm(M @ v + C @ np.conj(v)))
    scale_ = 1.0 + np.linalg.norm(M)
    if res <= tol * scale_:
        return {"zeta": zeta, "v": list(v), "exact": False, "residual": res}
    return None


def _chart_to_zeta(chart: str, z: complex):
    if chart == "0":
        return z
    return INF if z == 0 else 1 / z


def _bisect_zero(f, a: complex, b: complex, iters: int = 80) -> complex:
    fa = f(a)
    for _ in range(iters):
        m = (a + b) / 2
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return (a + b) / 2


def _numeric_q(pair: PluriPair):
    """Float evaluators of q in the two charts (same sign wherever both are defined)."""
    X, Y = linalg.to_complex(pair.X), linalg.to_complex(pair.Y)
    Xb, Yb = np.conj(X), np.conj(Y)
    Id = np.eye(pair.n)

    def f0(z):
        return np.linalg.det((X + z * Y) @ (Xb + np.conj(z) * Yb) - abs(z) ** 2 * Id).real

    def fi(u):
        return np.linalg.det((X * u + Y) @ (Xb * np.conj(u) + Yb) - Id).real

    return f0, fi


def _quick_sign_points(pair: PluriPair, grid: int = 24):
    """Coarse float sampling of q in both charts; a (pos, neg) pair if q changes sign."""
    X, Y = linalg.to_complex(pair.X), linalg.to_complex(pair.Y)
    c = np.linspace(-1, 1, grid)
    zz = (c[:, None] + 1j * c[None, :]).ravel()
    zz = zz[np.abs(zz) <= 1]
    Id = np.eye(pair.n)
    found = {}
    for chart in ("0", "inf"):
        if chart == "0":
            M = X[None] + zz[:, None, None] * Y[None]
            A = M @ np.conj(M) - (np.abs(zz) ** 2)[:, None, None] * Id
        else:
            M = X[None] * zz[:, None, None] + Y[None]
            A = M @ np.conj(M) - Id
        vals = np.linalg.det(A).real
        scale_ = np.max(np.abs(vals)) if vals.size else 0.0
        for sign, key in ((1, "pos"), (-1, "neg")):
            idx = np.flatnonzero(sign * vals > 1e-8 * scale_)
            if idx.size and key not in found:
                found[key] = (chart, complex(zz[idx[0]]))
    if "pos" in found and "neg" in found:
        return found["pos"], found["neg"]
    return None


def _exact_q(pair: PluriPair, z: GaussianRational):
    X, Y = pair.X, pair.Y
    M = X + Y * z
    A = linalg.matmul(M, linalg.conj(M)) - linalg.identity(pair.n) * (z * z.conjugate())
    return linalg.det(A)


def _locate_sign_change(pair: PluriPair, pos, neg):
    """Bisect between a positive and a negative sample; returns zeta (complex or INF)."""
    f0, fi = _numeric_q(pair)
    (cp, zp), (cn, zn) = pos, neg
    zeta_p = _chart_to_zeta(cp, zp)
    zeta_n = _chart_to_zeta(cn, zn)
    if not is_inf(zeta_p) and not is_inf(zeta_n):
        return _bisect_zero(f0, complex(zeta_p), complex(zeta_n))
    if zeta_p != 0 and zeta_n != 0:
        up = 0j if is_inf(zeta_p) else 1 / complex(zeta_p)
        un = 0j if is_inf(zeta_n) else 1 / complex(zeta_n)
        u = _bisect_zero(fi, up, un)
        return INF if u == 0 else 1 / u
    # one point is 0 and the other is infinity: go through zeta = 1
    v1 = f0(1 + 0j)
    if v1 == 0:
        return 1 + 0j
    z0 = complex(zeta_p) if not is_inf(zeta_p) else complex(zeta_n)
    if (v1 > 0) != (f0(z0) > 0):
        return _bisect_zero(f0, z0, 1 + 0j)
    u = _bisect_zero(fi, 1 + 0j, 0j)
    return INF if u == 0 else 1 / u


def _invalid_with_witness(pair, zeta_float, reason, min_mod=None) -> Verdict:
    wit = None
    if pair.is_exact() and not is_inf(zeta_float):
        for den in (1, 2, 4, 10, 100, 1000):
            zs = _snap(complex(zeta_float), den)
            if abs(complex(zs) - complex(zeta_float)) > 1e-9 * (1 + abs(zeta_float)):
                continue
            if not _exact_q(pair, zs):
                wit = _witness_at(pair, zs)
                if wit:
                    break
    if wit is None:
        wit = _witness_at(pair.to_complex(), zeta_float if is_inf(zeta_float) else complex(zeta_float))
    if wit is None:
        # bisection landed near but not on the zero; widen tolerance is not honest, report unknown
        return Verdict(UNKNOWN, None, min_mod, {"reason": reason + "; witness not confirmed"})
    return Verdict(INVALID, wit, min_mod, {"reason": reason})


def validate(pair: PluriPair, samples: int = 4096, max_depth: int = 8, tol: float = 1e-9) -> Verdict:
    """Tri-state check that (X + zeta Y) v != +-conj(zeta) conj(v) on the whole sphere."""
    n = pair.n
    grid = max(2, int(round(np.sqrt(samples))))
    ex = pair.is_exact()
    X, Y = _mats(pair, ex)
    if n == 0:
        return Verdict(CERTIFIED, None, None, {"reason": "zero-dimensional"})
    # (a) invertibility of X: a kernel vector violates the condition at zeta = 0
    if _is_singular(X, tol):
        zero = ZERO if ex else 0j
        wit = _witness_at(pair if ex else pair.to_complex(), zero)
        return Verdict(INVALID, wit, 0.0, {"reason": "X singular"})
    # (b) the limit at infinity
    YYb = linalg.matmul(Y, linalg.conj(Y)) - _eye(n, ex)
    dinf = linalg.det(YYb)
    if (ex and not dinf) or (not ex and _is_singular(YYb, tol)):
        wit = _witness_at(pair if ex else pair.to_complex(), INF)
        return Verdict(INVALID, wit, 0.0, {"reason": "det(Y conj Y - I) = 0"})
    q0 = complex(linalg.det(X) * linalg.det(X).conjugate()).real
    qinf = complex(dinf).real
    if qinf < 0:
        zeta = _locate_sign_change(pair, ("0", 0j), ("inf", 0j))
        return _invalid_with_witness(pair, zeta, "q changes sign between 0 and infinity", 0.0)
    quick = _quick_sign_points(pair)
    if quick is not None:
        zeta = _locate_sign_change(pair, *quick)
        return _invalid_with_witness(pair, zeta, "q changes sign", 0.0)
    Q0, Qi = sphere_function(pair)
    scan = scan_sphere([("0", Q0), ("inf", Qi)], grid=grid, max_depth=max_depth, real=True)
    pts = scan.sign_points()
    if pts is not None:
        zeta = _locate_sign_change(pair, *pts)
        return _invalid_with_witness(pair, zeta, "q changes sign", scan.min_modulus)
    details = {"q(0)": q0, "q_inf(0)": qinf, "grid": grid, "max_depth": max_depth}
    if scan.certified:
        return Verdict(CERTIFIED, None, scan.min_modulus, details)
    chart, z = scan.argmin
    zeta = _chart_to_zeta(chart, z)
    if scan.min_modulus == 0.0:
        return _invalid_with_witness(pair, zeta, "q vanishes", 0.0)
    if pair.is_exact() and not is_inf(zeta):
        zs = _snap(complex(zeta))
        if not _exact_q(pair, zs):
            wit = _witness_at(pair, zs)
            if wit:
                return Verdict(INVALID, wit, 0.0, {"reason": "exact zero of q"})
    details["argmin"] = {"chart": chart, "z": z}
    return Verdict(UNKNOWN, None, scan.min_modulus, details)


# ------------------------------------------------------------------ reconstruction


def _graph_map(W: np.ndarray, n: int) -> np.ndarray:
    top, bot = W[:n], W[n:]
    if _is_singular(bot):
        raise ValueError("subspace is not a graph over the second factor")
    if W.dtype == object:
        return linalg.matmul(top, linalg.inv(bot))
    return top @ np.linalg.inv(bot)


def from_three_structures(W1: np.ndarray, Winf: np.ndarray) -> PluriPair:
    """Pair whose frames at 1 and infinity span ``W1`` and ``Winf``.

    Both are 2n x n frames in a basis where the (1,0)-space at 0 is C^n + 0.
    """
    n = W1.shape[1]
    ex = W1.dtype == object and Winf.dtype == object
    if not ex:
        W1, Winf = linalg.to_complex(W1), linalg.to_complex(Winf)
    G1 = _graph_map(W1, n)
    Ginf = _graph_map(Winf, n)
    Y = Ginf
    X = G1 - Ginf
    if _is_singular(X):
        raise ValueError("degenerate adaptation: X is singular")
    return PluriPair(n, X, Y)


def reparameterize(pair: PluriPair, g: Mobius) -> PluriPair:
    """Pair for the sphere zeta -> J_{g(zeta)}, re-adapted to the new J_0."""
    ex = pair.is_exact() and g.is_exact()
    p = pair if ex else pair.to_complex()
    gg = g if ex else g.to_complex()
    pts = [gg(ZERO if ex else 0j), gg(ONE if ex else 1 + 0j), gg(INF)]
    F0, F1, Finf = (frame_at(p, z) for z in pts)
    B0 = linalg.hstack([F0, _tau_frame(F0)])
    if _is_singular(B0):
        raise NotPluricomplexAt(pts[0])
    Binv = linalg.inv(B0)
    W1 = linalg.matmul(Binv, F1)
    Winf = linalg.matmul(Binv, Finf)
    return from_three_structures(W1, Winf)


# ------------------------------------------------------------------ curve data


def support_curve(pair: PluriPair, samples: Sequence = None, tol: float = 1e-8) -> dict:
    """Characteristic polynomial, its squarefree part, degree and stalk ranks."""
    P = char_poly(pair)
    if not pair.is_exact():
        raise TypeError("support_curve needs an exact pair")
    sq = squarefree_part(P)
    k1, k2 = sq.trimmed().bidegree
    if k1 != k2:
        raise ValueError(f"squarefree part has bidegree {(k1, k2)}, expected (k, k)")
    k = k1
    M = resolution_matrix(pair).map_entries(lambda e: e.to_complex())
    if samples is None:
        samples = [complex(0.3, 0.1), complex(-0.7, 0.4), complex(1.3, -0.9), complex(0.2, 1.7)]
    ranks = []
    points = []
    for z0 in samples:
        pe = sq.in_eta(complex(z0)).to_complex()
        if pe.degree < 1:
            continue
        roots = np.roots(list(reversed(pe.coeffs)))
        for w0 in roots:
            A = M(complex(z0), complex(w0))
            ranks.append(2 * pair.n - linalg.float_rank(A, tol))
            points.append((complex(z0), complex(w0)))
    r = ranks[0] if ranks and all(x == ranks[0] for x in ranks) else None
    return {
        "poly": P,
        "squarefree": sq,
        "k": k,
        "stalk_ranks": ranks,
        "points": points,
        "rank": r,
        "consistent": r is not None and r * k == pair.n,
    }


def is_hypercomplex(pair: PluriPair, tol: float = 1e-9) -> bool:
    """Canonical-frame test: Y = 0 and conj(X) X = -I."""
    n = pair.n
    if pair.is_exact():
        if not linalg.is_zero_matrix(pair.Y):
            return False
        P = linalg.matmul(linalg.conj(pair.X), pair.X) + _eye(n, True)
        return linalg.is_zero_matrix(P)
    X, Y = linalg.to_complex(pair.X), linalg.to_complex(pair.Y)
    scale_ = max(1.0, np.linalg.norm(X))
    return bool(np.linalg.norm(Y) <= tol * scale_ and np.linalg.norm(np.conj(X) @ X + np.eye(n)) <= tol * scale_**2)


def hypercomplex_residual(pair: PluriPair) -> float:
    X, Y = linalg.to_complex(pair.X), linalg.to_complex(pair.Y)
    return float(np.linalg.norm(np.conj(X) @ X + np.eye(pair.n)) + np.linalg.norm(Y))


def curve_mobius(P1: BiPoly) -> np.ndarray:
    """The map zeta -> eta of a bidegree (1,1) graph c11 z w + c10 z + c01 w + c00."""
    c = P1.coeff
    return np.array([[-c(1, 0), -c(0, 0)], [c(1, 1), c(0, 1)]], dtype=object)


def normalize_degree_one(pair: PluriPair, tol: float = 1e-9):
    """Return ``(g, normalized)`` with the normalized pair hypercomplex (float mode)."""
    P = char_poly(pair) if pair.is_exact() else None
    if P is not None:
        sq = squarefree_part(P)
        if sq.trimmed().bidegree != (1, 1):
            raise ValueError(f"degree is not 1 (squarefree bidegree {sq.trimmed().bidegree})")
        H = linalg.to_complex(linalg.exact(curve_mobius(sq)))
    else:
        Pc = char_poly(pair)
        H = _float_degree_one_curve(Pc, pair.n, tol)
    g = mobius_hermitian_factor(H, tol)
    normalized = reparameterize(pair.to_complex(), g.inverse())
    return g, normalized


def _float_degree_one_curve(P: BiPoly, n: int, tol: float) -> np.ndarray:
    """For float pairs: recover the (1,1) factor of P = c (factor)^n from its top terms."""
    # P = L^n with L = a z w + b z + c w + d; read L from the roots at three zeta values
    pts = []
    for z in (0.0, 1.0, 2.0):
        pe = P.in_eta(complex(z)).to_complex()
        roots = np.roots(list(reversed(pe.coeffs))) if pe.degree >= 1 else np.array([])
        if roots.size == 0:
            raise ValueError("degree is not 1")
        if np.ptp(roots.real) + np.ptp(roots.imag) > 1e-5 * (1 + np.max(np.abs(roots))):
            raise ValueError("degree is not 1 (distinct roots)")
        pts.append((z, complex(np.mean(roots))))
    # eta = (alpha z + beta)/(gamma z + delta): solve the linear system
    A = np.array([[z, 1, -z * w, -w] for z, w in pts], dtype=complex)
    ns = linalg.float_nullspace(A, 1e-10)
    a, b, c_, d = ns[:, 0]
    return np.array([[a, b], [c_, d]], dtype=complex)


# ------------------------------------------------------------------ splitting


def _intersect(U: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Basis (columns) of span U meet span F, exact or float."""
    if U.shape[1] == 0:
        return U
    if U.dtype == object and F.dtype == object:
        A = linalg.hstack([U, -F])
        ns = linalg.nullspace(A)
        if not ns:
            return U[:, :0]
        C = np.array([v[: U.shape[1]] for v in ns], dtype=object).T
        return linalg.matmul(U, C)
    U, F = linalg.to_complex(U), linalg.to_complex(F)
    N = linalg.float_nullspace(np.hstack([U, -F]))
    return U @ N[: U.shape[1]]


def _rank_any(A: np.ndarray) -> int:
    return linalg.rank(A)


def intersection_dims(frame: Callable, points: Sequence) -> list:
    """``[d_0, d_1, ...]`` with d_j the dimension of the first j frames' intersection."""
    U = frame(points[0])
    dims = [U.shape[0], _rank_any(U)]
    for z in points[1:]:
        if dims[-1] == 0:
            break
        U = _intersect(U, frame(z))
        dims.append(_rank_any(U) if U.shape[1] else 0)
    return dims


def decode_profile(d: Sequence[int]):
    """Splitting degrees from d_j - d_{j+1} = #{e_a >= j}; returns (degrees, consistent)."""
    d = list(d)
    if d[-1] != 0:
        raise ValueError("dimension sequence must reach 0")
    counts = [d[j] - d[j + 1] for j in range(len(d) - 1)]
    counts.append(0)
    degrees = []
    for j in range(len(counts) - 1):
        degrees += [j] * (counts[j] - counts[j + 1])
    degrees.sort(reverse=True)
    consistent = sum(e + 1 for e in degrees) == d[0] and all(
        counts[j] >= counts[j + 1] for j in range(len(counts) - 1)
    )
    return degrees, consistent


def _random_gr(rng, den: int = 7, spread: int = 9) -> GaussianRational:
    return GaussianRational(
        Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, den + 1))),
        Fraction(int(rng.integers(-spread, spread + 1)), int(rng.integers(1, den + 1))),
    )


def splitting_profile(
    frame: Callable,
    n_points: int,
    sample_sets: int = 3,
    seed: int = 0,
    budget: int = 8,
    admissible: Callable | None = None,
) -> dict:
    """Generic intersection dimensions d_j over random point sets, and decoded degrees.

    ``admissible(z)`` rejects sample points where ``frame`` is undefined.
    """
    rng = np.random.default_rng(seed)
    runs = []
    best = None
    for _ in range(budget):
        pts = []
        while len(pts) < n_points:
            z = _random_gr(rng)
            if z not in pts and (admissible is None or admissible(z)):
                pts.append(z)
        runs.append(intersection_dims(frame, pts))
        L = max(len(r) for r in runs)
        padded = [r + [0] * (L - len(r)) for r in runs]
        best = [min(col) for col in zip(*padded)]
        best = best[: best.index(0) + 1] if 0 in best else best
        hits = sum(1 for r in padded if r[: len(best)] == best)
        if len(runs) >= sample_sets and hits >= 2:
            break
    else:
        raise RuntimeError(f"inconsistent intersection dimensions across sample sets: {runs}")
    degrees, consistent = decode_profile(best)
    return {"d": best, "degrees": degrees, "consistent": consistent, "runs": runs}


def pair_splitting(pair: PluriPair, seed: int = 0) -> dict:
    return splitting_profile(lambda z: frame_at(pair, z), n_points=2 * pair.n + 2, seed=seed)


# ------------------------------------------------------------------ metric


def standard_symplectic(n: int) -> np.ndarray:
    """[[0, -I], [I, 0]] on C^n (n even); omega(x, y) = x^T Omega y."""
    if n % 2:
        raise ValueError("standard symplectic form needs even n")
    h = n // 2
    Z = linalg.zeros(h, h)
    Id = linalg.identity(h)
    return linalg.vstack([linalg.hstack([Z, -Id]), linalg.hstack([Id, Z.copy()])])


def _sylvester_positive(A: np.ndarray) -> bool:
    """Exact leading-minor test for a symmetric rational matrix."""
    n = A.shape[0]
    for k in range(1, n + 1):
        d = linalg.det(linalg.exact(A[:k, :k]))
        if not (d.is_real() and d.re > 0):
            return False
    return True


def metric_from_form(pair: PluriPair, omega: np.ndarray, samples: Sequence = None) -> dict:
    """Complex bilinear g with g(a + b zeta, a + b zeta) = omega(a, b) and its checks.

    V^C is identified with E (x) C^2 through v = A e1 + B e2, where A + zeta B is the
    frame pencil, so v modulo the (1,0)-space at zeta is the section e2 - zeta e1.
    """
    n = pair.n
    ex = pair.is_exact() and omega.dtype == object
    if not ex:
        raise TypeError("metric_from_form works in exact mode")
    omega = linalg.exact(omega)
    if not linalg.is_zero_matrix(omega + omega.T):
        raise ValueError("omega must be antisymmetric")
    if not linalg.det(omega):
        raise ValueError("omega is degenerate")
    A, B = pencil(pair)
    C = linalg.hstack([A, B])
    half = GaussianRational(Fraction(1, 2))
    Ge = linalg.vstack(
        [
            linalg.hstack([linalg.zeros(n, n), omega * half]),
            linalg.hstack([omega.T * half, linalg.zeros(n, n)]),
        ]
    )
    Ci = linalg.inv(C)
    G = linalg.matmul(linalg.matmul(Ci.T.copy(), Ge), Ci)
    if samples is None:
        samples = [ZERO, ONE, as_gr((0, 1)), as_gr((Fraction(1, 2), Fraction(-1, 3))), INF]
    herm = {}
    for z in samples:
        Jt = extension_j(pair, z)
        lhs = linalg.matmul(linalg.matmul(Jt.T.copy(), G), Jt)
        herm[str(z)] = bool(all(x == y for x, y in zip(lhs.flat, G.flat)))
    iu = as_gr((0, 1))
    taut = linalg.matmul(linalg.matmul((linalg.identity(2 * n) * iu).T.copy(), G), linalg.identity(2 * n) * iu)
    anti_taut = all(x == -y for x, y in zip(taut.flat, G.flat))
    # restriction of Re g to V = {(v, conj v)} in the real basis (e_j, e_j), (i e_j, -i e_j)
    Bv = linalg.zeros(2 * n, 2 * n)
    for j in range(n):
        Bv[j, j] = ONE
        Bv[n + j, j] = ONE
        Bv[j, n + j] = iu
        Bv[n + j, n + j] = -iu
    R = linalg.matmul(linalg.matmul(Bv.T.copy(), G), Bv)
    Rre = np.array([[x.re for x in row] for row in R], dtype=object)
    eig = np.linalg.eigvalsh(np.array(Rre, dtype=float))
    tolv = 1e-12 * max(1.0, float(np.max(np.abs(eig))))
    signature = (int(np.sum(eig > tolv)), int(np.sum(eig < -tolv)))
    return {
        "gC": G,
        "hyperhermitian": herm,
        "anti_tautological": bool(anti_taut),
        "restriction": Rre,
        "restriction_real": all(x.is_real() for x in R.flat),
        "signature": signature,
        "positive_definite": _sylvester_positive(Rre),
    }


# ------------------------------------------------------------------ generation


def hypercomplex_pair(n: int = 2) -> PluriPair:
    """Block-diagonal X = diag([[0, 1], [-1, 0]], ...), Y = 0."""
    if n % 2:
        raise ValueError("hypercomplex pairs need even n")
    X = linalg.zeros(n, n)
    for b in range(0, n, 2):
        X[b, b + 1] = ONE
        X[b + 1, b] = -ONE
    return PluriPair(n, X, linalg.zeros(n, n))


def sample_pair(rng, n: int, scale=Fraction(1, 4), structured: bool | None = None) -> PluriPair:
    """One random Gaussian-rational pair with Y scaled by ``scale``.

    With ``structured`` (default for even n) the pair is (S X0 S', S Y0 S') with
    S' = conj(S)^-1, X0 the hypercomplex block matrix and Y0 small.  Validity is
    invariant under this change of basis and holds for X0 whenever |Y0| < 1/2, so
    most draws pass.  Otherwise X has independent entries.
    """
    scale = Fraction(scale)
    if structured is None:
        structured = n % 2 == 0
    Y = linalg.zeros(n, n)
    for i in range(n):
        for j in range(n):
            Y[i, j] = _random_gr(rng, den=3, spread=4) * scale
    if structured and n % 2 == 0:
        X0 = hypercomplex_pair(n).X
        while True:
            S = linalg.zeros(n, n)
            for i in range(n):
                for j in range(n):
                    S[i, j] = GaussianRational(int(rng.integers(-2, 3)), int(rng.integers(-2, 3)))
            if linalg.det(S):
                break
        Sb = linalg.inv(linalg.conj(S))
        X = linalg.matmul(S, linalg.matmul(X0, Sb))
        Y = linalg.matmul(S, linalg.matmul(Y, Sb))
    else:
        X = linalg.zeros(n, n)
        for i in range(n):
            for j in range(n):
                X[i, j] = _random_gr(rng, den=3, spread=4)
    return PluriPair(n, X, Y)


def random_pair(n: int, seed: int = 0, scale=Fraction(1, 4), max_tries: int = 200, samples: int = 1024) -> PluriPair:
    """Deterministic rejection sampling of a certified pair."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        p = sample_pair(rng, n, scale)
        if validate(p, samples=samples).certified:
            return p
    raise GenerationError(f"no certified pair found for n={n} after {max_tries} tries")
