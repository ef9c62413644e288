"""Grid certification that a function on the Riemann sphere has no zeros.

The function is given in two charts, each as a BiPoly ``F(z, w)`` evaluated at
``w = conj(z)``.  The chart square [-1, 1]^2 is cut into cells; a cell is
certified when the value at its centre exceeds a Lipschitz bound built from
the coefficient moduli.  Uncertified cells are subdivided up to a fixed depth.
Together the two unit disks cover the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactnum.poly import BiPoly

__all__ = ["ChartScan", "SphereScan", "scan_chart", "scan_sphere"]

SQRT2 = float(np.sqrt(2.0))


@dataclass
class ChartScan:
    chart: str
    certified: bool
    min_modulus: float
    argmin: complex
    pos: complex | None = None
    neg: complex | None = None
    cells_evaluated: int = 0


@dataclass
class SphereScan:
    certified: bool
    min_modulus: float
    charts: list = field(default_factory=list)

    def sign_points(self):
        """One positive and one negative sample, each as (chart, z), or None."""
        pos = next(((c.chart, c.pos) for c in self.charts if c.pos is not None), None)
        neg = next(((c.chart, c.neg) for c in self.charts if c.neg is not None), None)
        if pos is None or neg is None:
            return None
        return pos, neg

    @property
    def argmin(self):
        best = min(self.charts, key=lambda c: c.min_modulus)
        return best.chart, best.argmin


def _degree_profile(F: BiPoly):
    """Per total degree t, the sum of |c_ij| with i + j = t."""
    top = max((i + j for i, j in F.terms), default=0)
    A = np.zeros(top + 1)
    for (i, j), c in F.terms.items():
        A[i + j] += abs(complex(c))
    return A


def _bounds(A: np.ndarray, r: np.ndarray):
    """Gradient bound sum t A_t r^(t-1) and magnitude bound sum A_t r^t."""
    grad = np.zeros_like(r)
    mag = np.zeros_like(r)
    for t, a in enumerate(A):
        if a == 0:
            continue
        mag += a * r**t
        if t:
            grad += t * a * r ** (t - 1)
    return grad, mag


def scan_chart(
    F: BiPoly,
    chart: str = "0",
    grid: int = 64,
    max_depth: int = 8,
    real: bool = False,
    rel_eps: float = 1e-9,
    budget: int = 400_000,
) -> ChartScan:
    Fc = F.to_complex()
    A = _degree_profile(Fc)
    h = 2.0 / grid
    s = h / 2
    coords = -1 + h * (np.arange(grid) + 0.5)
    cx, cy = np.meshgrid(coords, coords, indexing="ij")
    centers = (cx + 1j * cy).ravel()
    # drop cells that miss the closed unit disk
    nearest = np.hypot(np.maximum(np.abs(cx.ravel()) - s, 0), np.maximum(np.abs(cy.ravel()) - s, 0))
    centers = centers[nearest <= 1.0]
    half = s
    scan = ChartScan(chart=chart, certified=True, min_modulus=float("inf"), argmin=0j)
    # the chart origin is always sampled so sign comparisons see it
    centers = np.concatenate([[0j], centers])
    halves = np.full(centers.shape, half)
    halves[0] = 0.0
    depth = 0
    evaluated = 0
    while centers.size:
        vals = Fc.eval_grid(centers, np.conj(centers))
        evaluated += centers.size
        if real:
            vals = vals.real
        mod = np.abs(vals)
        k = int(np.argmin(mod))
        if mod[k] < scan.min_modulus:
            scan.min_modulus = float(mod[k])
            scan.argmin = complex(centers[k])
        r = np.abs(centers) + halves * SQRT2
        grad, mag = _bounds(A, r)
        eps = rel_eps * mag
        ok = mod > grad * halves * SQRT2 + eps
        if real:
            trusted = mod > eps
            if scan.pos is None:
                idx = np.flatnonzero(trusted & (vals > 0))
                if idx.size:
                    scan.pos = complex(centers[idx[0]])
            if scan.neg is None:
                idx = np.flatnonzero(trusted & (vals < 0))
                if idx.size:
                    scan.neg = complex(centers[idx[0]])
            if scan.pos is not None and scan.neg is not None:
                scan.certified = False
                break
        bad = centers[~ok]
        bad_h = halves[~ok]
        keep = bad_h > 0
        bad, bad_h = bad[keep], bad_h[keep]
        if bad.size == 0:
            break
        if depth >= max_depth or evaluated + 4 * bad.size > budget:
            scan.certified = False
            break
        q = bad_h / 2
        centers = np.concatenate([bad + q * (sx + 1j * sy) for sx in (-1, 1) for sy in (-1, 1)])
        halves = np.concatenate([q] * 4)
        depth += 1
    scan.cells_evaluated = evaluated
    return scan


def scan_sphere(charts, grid: int = 64, max_depth: int = 8, real: bool = False) -> SphereScan:
    """Scan ``[(name, F), ...]`` chart functions; stops early on a sign change."""
    scans = []
    pos = neg = False
    for name, F in charts:
        sc = scan_chart(F, name, grid, max_depth, real)
        scans.append(sc)
        pos |= sc.pos is not None
        neg |= sc.neg is not None
        if real and pos and neg:
            break
    certified = all(s.certified for s in scans) and len(scans) == len(charts)
    if real and pos and neg:
        certified = False
    return SphereScan(certified=certified, min_modulus=min(s.min_modulus for s in scans), charts=scans)
