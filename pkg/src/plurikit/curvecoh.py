"""Curves of bidegree (k, k) in P^1 x P^1 and cohomology of O_S(a, b).

Everything is computed on the ambient quadric through

    0 -> O(a-k, b-k) --P--> O(a, b) -> O_S(a, b) -> 0,

so H^0(O_S(a, b)) splits (non-canonically) into polynomial sections modulo P
and an obstruction part, the kernel of multiplication by P on H^1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import p1p1coh
from .certify import scan_sphere
from .exactnum import linalg
from .exactnum.poly import BiPoly, sigma_transform
from .exactnum.scalars import GaussianRational, ZERO, ONE
from .plurilinear import CERTIFIED, INVALID, UNKNOWN, Verdict

__all__ = [
    "PlaneCurve",
    "SectionRep",
    "curve_from_poly",
    "antidiagonal_check",
    "h_curve",
    "riemann_roch",
    "curve_sections",
    "triviality_check",
    "connecting",
    "connecting_matrix",
    "section_product",
    "product_rule_residual",
    "graph_slope",
    "component_cech",
    "pw_numerology",
    "sigma_essential_example",
]


@dataclass
class PlaneCurve:
    P: BiPoly
    k: int
    sigma_invariant: bool
    sigma_factor: object = None
    antidiagonal: Verdict | None = None
    components: list | None = None

    @property
    def antidiagonal_clear(self) -> str | None:
        return None if self.antidiagonal is None else self.antidiagonal.status

    def is_exact(self) -> bool:
        return self.P.is_exact()


@dataclass
class SectionRep:
    """A section of O_S(a, b): polynomial lift plus obstruction part.

    ``obstruction`` maps exponent pairs of H^1(O(a-k, b-k)) to coefficients.
    """

    twist: tuple
    lift: BiPoly | None = None
    obstruction: dict = field(default_factory=dict)


# ---------------------------------------------------------------- curves


def _antidiagonal_charts(P: BiPoly, k: int):
    """P(z, -1/conj z) conj(z)^k and its chart at infinity, as functions of (z, conj z)."""
    c0, ci = {}, {}
    for (i, j), c in P.terms.items():
        v = -c if j % 2 else c
        c0[(i, k - j)] = v
        ci[(k - i, j)] = v
    return [("0", BiPoly(c0, (k, k))), ("inf", BiPoly(ci, (k, k)))]


def _refine_zero(F: BiPoly, z: complex, iters: int = 60) -> complex:
    """Gauss-Newton on the real 2-vector F(z, conj z)."""
    Fc = F.to_complex()
    Fz, Fw = Fc.d_zeta(), Fc.d_eta()
    for _ in range(iters):
        w = np.conj(z)
        v = complex(Fc(z, w))
        a, b = complex(Fz(z, w)), complex(Fw(z, w))
        # dF = a dz + b dzbar; in real coordinates (x, y)
        J = np.array([[(a + b).real, (1j * (a - b)).real], [(a + b).imag, (1j * (a - b)).imag]])
        step, *_ = np.linalg.lstsq(J, -np.array([v.real, v.imag]), rcond=None)
        z = z + complex(step[0], step[1])
        if abs(v) < 1e-15:
            break
    return z


def antidiagonal_check(P: BiPoly, k: int, grid: int = 64, max_depth: int = 8) -> Verdict:
    """Does {P = 0} avoid {(z, -1/conj z)}?"""
    charts = _antidiagonal_charts(P, k)
    scan = scan_sphere(charts, grid=grid, max_depth=max_depth, real=False)
    if scan.certified:
        return Verdict(CERTIFIED, None, scan.min_modulus, {"grid": grid, "max_depth": max_depth})
    chart, z0 = scan.argmin
    F = dict(charts)[chart]
    z = _refine_zero(F, z0)
    mag = F.to_complex().coeff_l1() * max(1.0, abs(z)) ** (2 * k)
    val = abs(complex(F.to_complex()(z, np.conj(z))))
    if abs(z) <= 1.5 and val <= 1e-10 * mag:
        zeta = z if chart == "0" else (1 / z if z != 0 else float("inf"))
        eta = -1 / np.conj(zeta) if zeta not in (0, float("inf")) else None
        witness = {"zeta": complex(zeta), "eta": None if eta is None else complex(eta), "residual": val}
        return Verdict(INVALID, witness, val, {"chart": chart})
    return Verdict(UNKNOWN, None, scan.min_modulus, {"chart": chart, "argmin": complex(z0)})


def curve_from_poly(P: BiPoly, k: int | None = None, components=None, check_antidiagonal: bool = True, **scan) -> PlaneCurve:
    if P.is_zero():
        raise ValueError("zero polynomial does not define a curve")
    d1, d2 = P._actual()
    if k is None:
        k = max(d1, d2)
    if d1 > k or d2 > k:
        raise ValueError(f"bidegree {(d1, d2)} exceeds ({k}, {k})")
    P = P.with_bidegree((k, k))
    Ps = sigma_transform(P, (k, k))
    u = Ps.proportional_factor(P) if P.is_exact() else Ps.proportional_factor(P, tol=1e-9)
    ad = antidiagonal_check(P, k, **scan) if check_antidiagonal else None
    comps = None
    if components is not None:
        comps = [c if isinstance(c, BiPoly) else BiPoly(c) for c in components]
        prod = BiPoly.const(ONE if P.is_exact() else 1.0)
        for c in comps:
            prod = prod * c
        prod = prod.with_bidegree((k, k))
        ok = P.proportional_factor(prod) if P.is_exact() and prod.is_exact() else P.proportional_factor(prod, tol=1e-9)
        if ok is None:
            raise ValueError("components do not multiply to P")
    return PlaneCurve(P, k, u is not None, u, ad, comps)


# ---------------------------------------------------------------- cohomology


def _maps(S: PlaneCurve, a: int, b: int, degree: int):
    return p1p1coh.mult_map([[S.P]], [(a - S.k, b - S.k)], [(a, b)], degree)


RANK_TOL = 1e-8


def h_curve(S: PlaneCurve, a: int, b: int):
    """(h0, h1) of O_S(a, b)."""
    k = S.k
    src = p1p1coh.h_line(a - k, b - k)
    dst = p1p1coh.h_line(a, b)
    ranks = []
    for i in range(3):
        ranks.append(_maps(S, a, b, i).rank(RANK_TOL) if src[i] and dst[i] else 0)
    h0 = dst[0] - ranks[0] + src[1] - ranks[1]
    h1 = dst[1] - ranks[1] + src[2] - ranks[2]
    return h0, h1


def riemann_roch(k: int, a: int, b: int) -> int:
    """deg + 1 - g for O_S(a, b) on a bidegree (k, k) curve."""
    return (a + b) * k + 1 - (k - 1) ** 2


def _kernel_vectors(m: p1p1coh.SparseMap, exact_mode: bool, tol: float = 1e-8) -> list:
    if m.shape[1] == 0:
        return []
    if m.shape[0] == 0:
        eye = np.eye(m.shape[1], dtype=complex)
        return [linalg.exact(np.eye(m.shape[1], dtype=int))[i] if exact_mode else eye[i] for i in range(m.shape[1])]
    if exact_mode:
        return linalg.nullspace(m.dense(True))
    N = linalg.float_nullspace(m.dense(False), tol)
    return [N[:, i] for i in range(N.shape[1])]


def _image_complement(m: p1p1coh.SparseMap, exact_mode: bool, tol: float = 1e-8) -> list:
    """Row keys of target monomials spanning a complement of the image."""
    if m.shape[1] == 0:
        return list(range(m.shape[0]))
    D = m.dense(exact_mode)
    if exact_mode:
        _, piv = linalg.rref(D.T.copy())
        # pivots of the transposed echelon form are independent image coordinates
        chosen = set(piv)
    else:
        # greedy column selection by QR with pivoting on the image basis
        U, s, _ = np.linalg.svd(D, full_matrices=False)
        r = int(np.sum(s > tol * max(1.0, s[0] if s.size else 1.0)))
        Q = U[:, :r]
        chosen = set()
        if r:
            _, _, P = _qr_pivot(Q.T)
            chosen = set(P[:r])
    return [i for i in range(m.shape[0]) if i not in chosen]


def _qr_pivot(A):
    A = np.array(A, dtype=complex)
    n = A.shape[1]
    perm = list(range(n))
    R = A.copy()
    for j in range(min(A.shape)):
        norms = np.linalg.norm(R[j:, j:], axis=0)
        p = j + int(np.argmax(norms))
        R[:, [j, p]] = R[:, [p, j]]
        perm[j], perm[p] = perm[p], perm[j]
        v = R[j:, j].copy()
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        v[0] += np.exp(1j * np.angle(v[0])) * nv if v[0] != 0 else nv
        v /= np.linalg.norm(v)
        R[j:, :] -= 2 * np.outer(v, v.conj() @ R[j:, :])
    return None, R, perm


def curve_sections(S: PlaneCurve, a: int, b: int) -> list:
    """Basis of H^0(O_S(a, b)) as SectionReps: lifts first, then obstructions."""
    ex = S.is_exact()
    one = ONE if ex else 1.0
    out = []
    m0 = _maps(S, a, b, 0)
    if p1p1coh.h_line(a, b)[0]:
        for r in _image_complement(m0, ex):
            key = m0.row_keys[r][1]
            out.append(SectionRep((a, b), BiPoly({key: one}, (max(a, 0), max(b, 0)))))
    m1 = _maps(S, a, b, 1)
    if m1.shape[1]:
        for v in _kernel_vectors(m1, ex):
            obs = {m1.col_keys[i][1]: v[i] for i in range(len(v)) if v[i]}
            out.append(SectionRep((a, b), None, obs))
    return out


def triviality_check(S: PlaneCurve, a: int):
    """(h0(O_S(a, -a)), kernel vectors as Laurent data) for a >= 1."""
    if a < 1:
        raise ValueError("triviality_check needs a >= 1")
    m1 = _maps(S, a, -a, 1)
    h0_amb = p1p1coh.h_line(a, -a)[0]
    vecs = _kernel_vectors(m1, S.is_exact())
    reps = [{m1.col_keys[i][1]: v[i] for i in range(len(v)) if v[i]} for v in vecs]
    return h0_amb + len(reps), reps


def connecting(S: PlaneCurve, s: SectionRep) -> dict:
    """delta(s) in H^1(O(a-k, b-k)): the obstruction part of s."""
    return dict(s.obstruction)


def connecting_matrix(S: PlaneCurve, a: int, b: int):
    """Matrix of delta on the curve_sections basis, with H^1 row keys."""
    basis = curve_sections(S, a, b)
    keys = p1p1coh.coh_basis(a - S.k, b - S.k, 1)
    idx = {k: i for i, k in enumerate(keys)}
    ex = S.is_exact()
    M = linalg.zeros(len(keys), len(basis), ex)
    for j, s in enumerate(basis):
        for key, c in connecting(S, s).items():
            M[idx[key], j] = c
    return M, basis, keys


def _apply_poly(f: BiPoly, vec: dict, src: tuple, dst: tuple) -> dict:
    """Multiply an H^1(O(src)) class by f into H^1(O(dst))."""
    m = p1p1coh.mult_map([[f]], [src], [dst], 1)
    out: dict = {}
    for (r, c), v in m.entries.items():
        x = vec.get(m.col_keys[c][1])
        if x:
            key = m.row_keys[r][1]
            out[key] = out[key] + v * x if key in out else v * x
    return {k: v for k, v in out.items() if v}


def section_product(S: PlaneCurve, s: SectionRep, t: SectionRep) -> SectionRep:
    """s * t when at least one factor is a pure polynomial section.

    The product of lifts gives the lift; obstructions are multiplied by the
    other factor's lift.  Products of two obstructions are not representable.
    """
    if s.obstruction and t.obstruction:
        raise ValueError("product of two obstruction parts is not defined in the ambient model")
    a, b = s.twist[0] + t.twist[0], s.twist[1] + t.twist[1]
    k = S.k
    lift = None
    if s.lift is not None and t.lift is not None:
        lift = s.lift * t.lift
    obs: dict = {}
    for x, y in ((s, t), (t, s)):
        if x.lift is not None and y.obstruction:
            part = _apply_poly(x.lift, y.obstruction, (y.twist[0] - k, y.twist[1] - k), (a - k, b - k))
            for key, v in part.items():
                obs[key] = obs[key] + v if key in obs else v
    return SectionRep((a, b), lift, {kk: v for kk, v in obs.items() if v})


def product_rule_residual(S: PlaneCurve, s: SectionRep, t: SectionRep) -> dict:
    """delta(st) - s delta(t) - t delta(s), computed through the H^1 multiplication maps."""
    k = S.k
    a, b = s.twist[0] + t.twist[0], s.twist[1] + t.twist[1]
    lhs = connecting(S, section_product(S, s, t))
    rhs: dict = {}
    for x, y in ((s, t), (t, s)):
        d = connecting(S, y)
        if d and x.lift is not None:
            for key, v in _apply_poly(x.lift, d, (y.twist[0] - k, y.twist[1] - k), (a - k, b - k)).items():
                rhs[key] = rhs[key] + v if key in rhs else v
    keys = set(lhs) | set(rhs)
    zero = ZERO if S.is_exact() else 0.0
    return {key: lhs.get(key, zero) - rhs.get(key, zero) for key in keys if lhs.get(key, zero) != rhs.get(key, zero)}


# ---------------------------------------------------------------- components


def graph_slope(C: BiPoly):
    """``a`` with C proportional to eta - a zeta; raises for other curves."""
    allowed = {(0, 1), (1, 0)}
    if not C.terms or set(C.terms) - allowed or (0, 1) not in C.terms:
        raise ValueError("component is not a graph eta = a zeta")
    cw = C.terms[(0, 1)]
    cz = C.terms.get((1, 0), ZERO if C.is_exact() else 0.0)
    return -cz / cw


def component_cech(components, classes, twist) -> list:
    """H^1 window coefficients {z^j : a+b+1 <= j <= -1} of a Laurent class on each graph."""
    a, b = twist
    lo = a + b + 1
    out = []
    for C, cls in zip(components, classes):
        graph_slope(C)
        out.append({j: c for j, c in cls.items() if lo <= j <= -1 and c})
    return out


# ---------------------------------------------------------------- numerology


def pw_numerology(k: int, l: int = 1, r: int = 1) -> dict:
    """Degree bookkeeping for bundles on a bidegree (k, k) twistor curve."""
    if min(k, l, r) < 1:
        raise ValueError("k, l, r must be positive")
    g = (k - 1) ** 2
    n = r * k
    deg_F = r * k * k  # chi(F) = 2n and Riemann-Roch with rank r
    required = 2 * l * (k * k - k)
    hom_degree = r * required - l * deg_F
    theta_twist = r * (g - 1) + deg_F
    return {
        "k": k,
        "l": l,
        "r": r,
        "genus": g,
        "canonical_twist": [k - 2, k - 2],
        "canonical_degree": 2 * g - 2,
        "n": n,
        "dim_M": 2 * n,
        "deg_F": deg_F,
        "chi_F": deg_F + r * (1 - g),
        "required_degree": required,
        "hom_degree": hom_degree,
        "hom_degree_formula": l * r * (g - 1),
        "induced_rank": l * k * k,
        "theta_degree": theta_twist,
        "theta_degree_formula": 2 * r * (k * k - k),
        "fibre_dim": r * k * k,
        "consistent": hom_degree == l * r * (g - 1)
        and theta_twist == 2 * r * (k * k - k)
        and deg_F + r * (1 - g) == 2 * n
        and (k - 2) * 2 * k == 2 * g - 2,
    }


# ---------------------------------------------------------------- sigma essentiality


def sigma_essential_example() -> dict:
    """F = O_S(3, -1) on a smooth non-sigma-invariant (2, 2) curve.

    The three base twists of F are acyclic yet h^0(F(-3, 1)) = h^0(O_S) = 1.
    """
    terms = {
        (0, 0): GaussianRational(1),
        (1, 1): GaussianRational(2),
        (2, 2): GaussianRational(3),
        (2, 0): GaussianRational(1),
        (0, 2): GaussianRational(-2),
        (1, 0): GaussianRational(0, 1),
        (2, 1): GaussianRational(1, 1),
        (1, 2): GaussianRational(5),
    }
    S = curve_from_poly(BiPoly(terms, (2, 2)), 2, check_antidiagonal=False)
    base = {str(t): h_curve(S, 3 + t[0], -1 + t[1]) for t in ((-1, -1), (-2, 0), (0, -2))}
    h_shift = h_curve(S, 0, 0)
    return {
        "curve": S,
        "sigma_invariant": S.sigma_invariant,
        "base_vanishings": base,
        "base_acyclic": all(v == (0, 0) for v in base.values()),
        "h_F(-3,1)": h_shift,
        "essential": all(v == (0, 0) for v in base.values()) and h_shift[0] == 1 and not S.sigma_invariant,
    }
