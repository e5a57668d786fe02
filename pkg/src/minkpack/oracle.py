"""Slow, independent grid oracles for the extremal quantities.

Everything here is plain sampling of boundary parameters plus bisection
on a single closing constraint, deliberately sharing no code with the
fast optimizers in `extremal`.  Reported maxima are attained by feasible
polygons, so they are true lower bounds which the optimizers must match
from above within a small relative tolerance.  Sample grids are nested:
doubling n only adds parameters, so the reported value never decreases.
"""

from __future__ import annotations

import numpy as np

from .geometry import ConvexDisc, GeometryError

_BISECT_ITERS = 60
_HIT_TOL = 1e-9


def sample_parameters(d: ConvexDisc, n: int) -> np.ndarray:
    """Sorted boundary parameters: uniform i/n plus vertex and edge-midpoint anchors."""
    if not isinstance(n, (int, np.integer)) or n < 64:
        raise GeometryError("oracle grids need an integer n >= 64")
    vp = d.vertex_parameters()
    vp_ext = np.concatenate([vp, [1.0]])
    mids = 0.5 * (vp_ext[:-1] + vp_ext[1:])
    ts = np.concatenate([np.arange(n, dtype=float) / n, vp, mids])
    return np.unique(ts)


def _areas(s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    return 0.5 * np.abs(s1[..., 0] * s2[..., 1] - s1[..., 1] * s2[..., 0])


def _bisect_roots(d: ConvexDisc, fixed: np.ndarray, t_lo, t_hi, f_lo):
    """Solve gauge(-(fixed + b(t))) = 1 for t inside each bracket."""
    t_lo = np.asarray(t_lo, dtype=float).copy()
    t_hi = np.asarray(t_hi, dtype=float).copy()
    f_lo = np.asarray(f_lo, dtype=float).copy()
    for _ in range(_BISECT_ITERS):
        tm = 0.5 * (t_lo + t_hi)
        fm = d.gauge_many(-(fixed + d.boundary_points(tm))) - 1.0
        same = (fm > 0.0) == (f_lo > 0.0)
        t_lo = np.where(same, tm, t_lo)
        f_lo = np.where(same, fm, f_lo)
        t_hi = np.where(same, t_hi, tm)
    return 0.5 * (t_lo + t_hi)


def grid_max_triangle(d: ConvexDisc, n: int = 256) -> float:
    """Largest area of a triangle whose three sides are unit vectors of the gauge.

    Scans the first side over the sample grid; for each choice the second
    side is either a direct grid hit (the closing side already has gauge 1)
    or a bisection root of the closing constraint inside a sign-change
    bracket.  Error is O(1/n) in the worst case and far smaller when the
    optimum anchors on vertices, which the grid always contains.
    """
    ts = sample_parameters(d, n)
    P = d.boundary_points(ts)
    m = len(ts)
    text = np.concatenate([ts, ts[:1] + 1.0])
    best = 0.0
    chunk = max(1, 4_000_000 // (m * max(len(d.normals), 1)))
    for lo in range(0, m, chunk):
        S1 = P[lo:lo + chunk]
        closing = -(S1[:, None, :] + P[None, :, :])
        F = d.gauge_many(closing.reshape(-1, 2)).reshape(len(S1), m) - 1.0
        hit = np.abs(F) <= _HIT_TOL
        if hit.any():
            ii, jj = np.nonzero(hit)
            best = max(best, float(_areas(S1[ii], P[jj]).max()))
        Fw = np.concatenate([F, F[:, :1]], axis=1)
        flip = np.sign(Fw[:, :-1]) * np.sign(Fw[:, 1:]) < 0
        ii, jj = np.nonzero(flip)
        if len(ii):
            troot = _bisect_roots(d, S1[ii], text[jj], text[jj + 1], Fw[ii, jj])
            s2 = d.boundary_points(troot)
            ok = np.abs(d.gauge_many(-(S1[ii] + s2)) - 1.0) <= 1e-7
            if ok.any():
                best = max(best, float(_areas(S1[ii][ok], s2[ok]).max()))
    return best


def _pentagon_areas(sides: np.ndarray) -> np.ndarray:
    """Areas of the convex (angle-sorted) polygons built from (k, 5, 2) side sets."""
    ang = np.arctan2(sides[..., 1], sides[..., 0])
    order = np.argsort(ang, axis=1)
    srt = np.take_along_axis(sides, order[..., None], axis=1)
    verts = np.cumsum(srt, axis=1)
    x = verts[..., 0]
    y = verts[..., 1]
    xr = np.roll(x, -1, axis=1)
    yr = np.roll(y, -1, axis=1)
    return 0.5 * np.abs(np.sum(x * yr - y * xr, axis=1))


def _grid_max_pentagon(d: ConvexDisc, n: int) -> float:
    m = max(12, min(96, n // 8))
    vp = d.vertex_parameters()
    vp_ext = np.concatenate([vp, [1.0]])
    mids = 0.5 * (vp_ext[:-1] + vp_ext[1:])
    ts = np.unique(np.concatenate([np.arange(m, dtype=float) / m, vp, mids]))
    P = d.boundary_points(ts)
    N = len(ts)
    text = np.concatenate([ts, ts[:1] + 1.0])

    ii, jj, kk = np.meshgrid(np.arange(N), np.arange(N), np.arange(N), indexing="ij")
    keep = (ii <= jj) & (jj <= kk)
    ii, jj, kk = ii[keep], jj[keep], kk[keep]
    S3 = P[ii] + P[jj] + P[kk]

    best = 0.0
    chunk = max(1, 2_000_000 // N)
    for lo in range(0, len(S3), chunk):
        s3 = S3[lo:lo + chunk]
        i3, j3, k3 = ii[lo:lo + chunk], jj[lo:lo + chunk], kk[lo:lo + chunk]
        closing = -(s3[:, None, :] + P[None, :, :])
        F = d.gauge_many(closing.reshape(-1, 2)).reshape(len(s3), N) - 1.0

        def collect(rows, s4):
            s5 = -(s3[rows] + s4)
            sides = np.stack([P[i3[rows]], P[j3[rows]], P[k3[rows]], s4, s5], axis=1)
            return float(_pentagon_areas(sides).max()) if len(sides) else 0.0

        hit = np.abs(F) <= _HIT_TOL
        if hit.any():
            r, c = np.nonzero(hit)
            best = max(best, collect(r, P[c]))
        Fw = np.concatenate([F, F[:, :1]], axis=1)
        flip = np.sign(Fw[:, :-1]) * np.sign(Fw[:, 1:]) < 0
        r, c = np.nonzero(flip)
        if len(r):
            troot = _bisect_roots(d, s3[r], text[c], text[c + 1], Fw[r, c])
            s4 = d.boundary_points(troot)
            ok = np.abs(d.gauge_many(-(s3[r] + s4)) - 1.0) <= 1e-7
            if ok.any():
                best = max(best, collect(r[ok], s4[ok]))
    return best


def grid_max_kgon(d: ConvexDisc, k: int, n: int = 256) -> float:
    """Grid oracle for the largest unit-sided k-gon area, k in {4, 5, 6}.

    Even k reduces to centrally symmetric polygons, whose area is a sum of
    absolute cross products of the independent sides; those maxima live on
    grid anchors, so the scan over sample pairs or triples is exact up to
    the anchor resolution.  k = 5 adds one bisected closing constraint.
    """
    if k not in (4, 5, 6):
        raise GeometryError(f"k-gon oracle supports k in 4..6, got {k}")
    if k == 5:
        return _grid_max_pentagon(d, n)
    ts = sample_parameters(d, n)
    P = d.boundary_points(ts)
    x, y = P[:, 0], P[:, 1]
    C = np.abs(np.outer(x, y) - np.outer(y, x))
    if k == 4:
        return float(C.max())
    best = 0.0
    for i in range(len(ts)):
        tot = C[i][:, None] + C[i][None, :] + C
        best = max(best, float(tot.max()))
    return best


def corollary_min_oracle(lam: float, objective="BOUND", n: int = 100_001) -> float:
    """Brute-force minimum of the density bound (or bound/d0p ratio) over d0p."""
    from .bounds import Objective, theorem_value_array

    obj = Objective(objective)
    d0 = np.linspace(0.75, 1.0, n)
    vals = theorem_value_array(lam, d0)
    if obj is Objective.RATIO:
        vals = vals / d0
    return float(vals.min())
