"""Piecewise density lower bounds for translate packings with a given
average neighbour count, plus the Euler-relation and concave-hull
machinery that produces them.

Conventions used throughout: `lam` is the average neighbour count in
[3, 6] (`lambda` is reserved in Python), `d0p` is the normalized lattice
density A/(8*Delta) in [3/4, 1].  The three closed-form branches meet
continuously along the seams lam = 4 and d0p = 7/8.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

_TOL = 1e-12
SEAM_D0 = 7.0 / 8.0


class BoundsRangeError(ValueError):
    """Query outside the domain the bounds are stated for."""


class Branch(Enum):
    LOW_D0 = "LOW_D0"
    HIGH_D0_UPPER_LAMBDA = "HIGH_D0_UPPER_LAMBDA"
    HIGH_D0_LOWER_LAMBDA = "HIGH_D0_LOWER_LAMBDA"


class Objective(Enum):
    BOUND = "BOUND"
    RATIO = "RATIO"


def _check_lam(lam: float) -> float:
    lam = float(lam)
    if not (3.0 - _TOL <= lam <= 6.0 + _TOL):
        raise BoundsRangeError(f"average neighbour count {lam} outside [3, 6]")
    return min(6.0, max(3.0, lam))


def _check_d0p(d0p: float) -> float:
    d0p = float(d0p)
    if not (0.75 - _TOL <= d0p <= 1.0 + _TOL):
        raise BoundsRangeError(f"normalized lattice density {d0p} outside [3/4, 1]")
    return min(1.0, max(0.75, d0p))


@dataclass(frozen=True)
class BoundQuery:
    """Point (lam, d0p) at which the lower bound is evaluated."""

    lam: float
    d0p: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lam(self.lam))
        object.__setattr__(self, "d0p", _check_d0p(self.d0p))


@dataclass(frozen=True)
class BoundResult:
    value: float
    branch: Branch


def theorem_lower_bound(q, d0p: float | None = None) -> BoundResult:
    """Density lower bound at a query point.

    Accepts a BoundQuery, or the pair (lam, d0p) for convenience.  The
    second high-d0p formula is the corrected one, continuous with both
    other branches and with the corollaries; see notes in the repository
    history for the derivation via the concave profile.
    """
    if d0p is not None:
        q = BoundQuery(q, d0p)
    lam, d0 = q.lam, q.d0p
    if d0 <= SEAM_D0:
        value = d0 / ((2.0 / 3.0) * d0 * (6.0 - lam) + (lam - 3.0) / 3.0)
        branch = Branch.LOW_D0
    elif lam >= 4.0:
        value = d0 / (2.0 * d0 * (6.0 - lam) + 1.5 * lam - 8.0)
        branch = Branch.HIGH_D0_UPPER_LAMBDA
    else:
        value = d0 / (2.0 * d0 * (lam - 2.0) - 2.0 * (lam - 3.0))
        branch = Branch.HIGH_D0_LOWER_LAMBDA
    return BoundResult(value=float(value), branch=branch)


def theorem_value_array(lam: float, d0p) -> np.ndarray:
    """Vectorized bound over an array of d0p values at fixed lam."""
    lam = _check_lam(lam)
    d0 = np.asarray(d0p, dtype=float)
    if np.any(d0 < 0.75 - _TOL) or np.any(d0 > 1.0 + _TOL):
        raise BoundsRangeError("d0p grid leaves [3/4, 1]")
    low = d0 / ((2.0 / 3.0) * d0 * (6.0 - lam) + (lam - 3.0) / 3.0)
    if lam >= 4.0:
        high = d0 / (2.0 * d0 * (6.0 - lam) + 1.5 * lam - 8.0)
    else:
        high = d0 / (2.0 * d0 * (lam - 2.0) - 2.0 * (lam - 3.0))
    return np.where(d0 <= SEAM_D0, low, high)


def corollary1_bound(lam: float) -> float:
    """Lower bound on density minimized over all discs (over d0p)."""
    lam = _check_lam(lam)
    if lam >= 24.0 / 5.0:
        return 9.0 / (2.0 * (12.0 - lam))
    if lam >= 4.0:
        return 2.0 / (8.0 - lam)
    return 0.5


def corollary2_ratio_bound(lam: float) -> float:
    """Lower bound on density / d0p, minimized over d0p."""
    lam = _check_lam(lam)
    if lam >= 4.0:
        return 2.0 / (8.0 - lam)
    return 0.5


def _golden_min(f, a: float, b: float, tol: float = 1e-10):
    """Golden-section minimum of f on [a, b]; fine for monotone pieces too."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def minimize_bound_over_d0(lam: float, objective=Objective.BOUND):
    """Minimize the bound (or bound/d0p) over d0p in [3/4, 1].

    Returns (d0_star, value).  Each branch interval is searched
    separately so the seam kink at 7/8 cannot trap the search.
    """
    lam = _check_lam(lam)
    obj = Objective(objective)

    def f(d0: float) -> float:
        v = theorem_lower_bound(BoundQuery(lam, d0)).value
        return v / d0 if obj is Objective.RATIO else v

    lo = _golden_min(f, 0.75, SEAM_D0)
    hi = _golden_min(f, SEAM_D0, 1.0)
    x, v = min((lo, hi), key=lambda t: t[1])
    return float(x), float(v)


def avg_sides(lam: float) -> float:
    """Average side count of subdivision cells, 2*lam/(lam - 2)."""
    lam = float(lam)
    if lam <= 2.0 or lam > 6.0 + 1e-9:
        raise BoundsRangeError(f"average neighbour count {lam} outside (2, 6]")
    return 2.0 * lam / (lam - 2.0)


def vertex_polygon_ratio(lam: float) -> float:
    """Vertices per cell in the subdivision, 2/(lam - 2)."""
    lam = float(lam)
    if lam <= 2.0 or lam > 6.0 + 1e-9:
        raise BoundsRangeError(f"average neighbour count {lam} outside (2, 6]")
    return 2.0 / (lam - 2.0)


def cell_area_caps(prof) -> dict[int, float]:
    """Caps on the unit-sided k-gon areas in terms of area and delta only."""
    a, dl = float(prof.area), float(prof.delta)
    cap4 = a - 4.0 * dl
    return {3: dl, 4: cap4, 5: 0.5 * (cap4 + a), 6: a}


def concave_profile(prof, s: float) -> float:
    """Least concave majorant of the four points (k, cap_k), evaluated at s.

    Needs only `area` and `delta` attributes of `prof`.  For d0p <= 7/8
    the hull degenerates to the single chord from (3, delta) to (6, area).
    """
    s = float(s)
    if not (3.0 - _TOL <= s <= 6.0 + _TOL):
        raise BoundsRangeError(f"side count {s} outside [3, 6]")
    s = min(6.0, max(3.0, s))
    caps = cell_area_caps(prof)
    pts = [(float(k), caps[k]) for k in (3, 4, 5, 6)]
    eps = 1e-12 * max(1.0, caps[6])
    hull = [pts[0]]
    for p in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop middle point when it lies on or below the chord
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1) + eps:
                hull.pop()
            else:
                break
        hull.append(p)
    xs = [p[0] for p in hull]
    i = max(0, min(len(hull) - 2, int(np.searchsorted(xs, s, side="right")) - 1))
    (x1, y1), (x2, y2) = hull[i], hull[i + 1]
    t = (s - x1) / (x2 - x1)
    return float((1.0 - t) * y1 + t * y2)


def density_bound_from_profile(d, lam: float) -> float:
    """Bound reassembled from the proof pieces: ratio * A / (4 * conc(s)).

    `d` may be a disc (profiled on the fly) or an object already carrying
    `area` and `delta`.  The factor 4 converts unit-sided extremal areas
    to cell areas, since subdivision edges have gauge length 2.
    """
    lam = _check_lam(lam)
    if hasattr(d, "area") and hasattr(d, "delta"):
        prof = d
    else:
        from .extremal import profile

        prof = profile(d)
    s = avg_sides(lam)
    return vertex_polygon_ratio(lam) * float(prof.area) / (4.0 * concave_profile(prof, s))
