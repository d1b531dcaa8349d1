"""Sampled planar arcs and the metric primitives everything else builds on.

An arc is a strictly parameter-ordered sequence of sample points in the
Euclidean plane.  All higher-level quantities (subchain diameters, chord
lengths, variation sums) are defined purely on the samples; nothing here
interpolates between them.

Distances are always computed through :func:`point_distances` /
:func:`pairwise_max_distance` so that every caller sees bitwise-identical
values for identical inputs — several exact inequalities in the variation
layer rely on that.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArcError, RangeError

__all__ = [
    "Point",
    "SampledArc",
    "SubarcRange",
    "arc_length",
    "diameter",
    "is_injective",
    "point_distances",
    "reversed_arc",
    "suffix_max_distances",
]

# Above this many points, ``diameter`` switches from the quadratic pairwise
# scan to a convex-hull reduction (the planar diameter is attained at hull
# vertices).
_HULL_THRESHOLD = 600


@dataclass(frozen=True)
class Point:
    """A point in the plane with finite coordinates."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ArcError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class SubarcRange:
    """An inclusive index range ``[lo, hi]`` into an arc's samples.

    ``lo < hi`` is required: a subarc always contains at least one chord.
    """

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 0 or self.hi <= self.lo:
            raise RangeError(f"need 0 <= lo < hi, got lo={self.lo}, hi={self.hi}")

    def check(self, n: int) -> None:
        """Validate against an arc with ``n`` samples."""
        if self.hi >= n:
            raise RangeError(f"range [{self.lo}, {self.hi}] exceeds arc with {n} samples")

    def __len__(self) -> int:
        return self.hi - self.lo + 1


def _as_readonly(a: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(a, dtype=np.float64)
    if out is a:
        out = out.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SampledArc:
    """An immutable, strictly increasing parametrized polyline sample.

    Attributes:
        params: shape ``(n,)``, strictly increasing parameter values.
        points: shape ``(n, 2)``, sample coordinates; consecutive samples
            must be distinct.
        meta: free-form provenance dictionary (e.g. the generating spec).
    """

    params: np.ndarray
    points: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        params = _as_readonly(np.asarray(self.params, dtype=np.float64).reshape(-1))
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 2:
            raise ArcError(f"points must have shape (n, 2), got {points.shape}")
        points = _as_readonly(points)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)
        n = params.shape[0]
        if n < 2:
            raise ArcError(f"an arc needs at least 2 samples, got {n}")
        if points.shape[0] != n:
            raise ArcError(
                f"params and points disagree in length: {n} vs {points.shape[0]}"
            )
        if not (np.isfinite(params).all() and np.isfinite(points).all()):
            raise ArcError("arc contains non-finite values")
        if not (np.diff(params) > 0.0).all():
            raise ArcError("params must be strictly increasing")
        if (np.diff(points, axis=0) == 0.0).all(axis=1).any():
            raise ArcError("consecutive sample points must be distinct")

    def __len__(self) -> int:
        return self.params.shape[0]

    def point(self, i: int) -> Point:
        x, y = self.points[i]
        return Point(float(x), float(y))

    def full_range(self) -> SubarcRange:
        return SubarcRange(0, len(self) - 1)

    def slice(self, rng: SubarcRange) -> "SampledArc":
        """Extract the subarc ``[rng.lo, rng.hi]`` as a new arc."""
        rng.check(len(self))
        return SampledArc(
            self.params[rng.lo : rng.hi + 1],
            self.points[rng.lo : rng.hi + 1],
            dict(self.meta),
        )

    def with_meta(self, **extra) -> "SampledArc":
        meta = dict(self.meta)
        meta.update(extra)
        return dataclasses.replace(self, meta=meta)


def _resolve(arc: SampledArc, rng: SubarcRange | None) -> SubarcRange:
    if rng is None:
        return arc.full_range()
    rng.check(len(arc))
    return rng


def point_distances(points: np.ndarray, i: int) -> np.ndarray:
    """Distances from every row of ``points`` to ``points[i]``."""
    d = points - points[i]
    return np.hypot(d[:, 0], d[:, 1])


def arc_length(arc: SampledArc, rng: SubarcRange | None = None) -> float:
    """Sum of consecutive chord lengths over the (sub)arc."""
    rng = _resolve(arc, rng)
    seg = np.diff(arc.points[rng.lo : rng.hi + 1], axis=0)
    return float(np.hypot(seg[:, 0], seg[:, 1]).sum())


def _pairwise_block_max(pts: np.ndarray) -> float:
    """Exact max pairwise distance by a blocked quadratic scan."""
    n = pts.shape[0]
    best = 0.0
    step = 512
    for a in range(0, n, step):
        blk = pts[a : a + step]
        dx = blk[:, None, 0] - pts[None, a:, 0]
        dy = blk[:, None, 1] - pts[None, a:, 1]
        m = float(np.hypot(dx, dy).max())
        if m > best:
            best = m
    return best


def pairwise_max_distance(pts: np.ndarray) -> float:
    """Max pairwise Euclidean distance among the given points.

    Small sets are scanned directly; larger ones go through the convex hull
    (the diameter of a planar set is attained at two hull vertices), with a
    blocked quadratic fallback for degenerate (e.g. collinear) inputs that
    the hull construction rejects.  All branches take the max over
    ``np.hypot`` distances so the result is bitwise comparable with the
    variation recurrence, which accumulates the same values.
    """
    n = pts.shape[0]
    if n <= _HULL_THRESHOLD:
        dx = pts[:, None, 0] - pts[None, :, 0]
        dy = pts[:, None, 1] - pts[None, :, 1]
        return float(np.hypot(dx, dy).max())
    try:
        from scipy.spatial import ConvexHull, QhullError

        hull = pts[ConvexHull(pts).vertices]
    except QhullError:
        return _pairwise_block_max(pts)
    dx = hull[:, None, 0] - hull[None, :, 0]
    dy = hull[:, None, 1] - hull[None, :, 1]
    return float(np.hypot(dx, dy).max())


def diameter(arc: SampledArc, rng: SubarcRange | None = None) -> float:
    """Diameter of a subarc: max pairwise distance among its samples.

    Note this is the diameter of the *sample set*, not the distance between
    the subarc's endpoints; for curved subarcs the two differ.
    """
    rng = _resolve(arc, rng)
    return pairwise_max_distance(arc.points[rng.lo : rng.hi + 1])


def suffix_max_distances(arc: SampledArc, i: int) -> np.ndarray:
    """Running maxima of distances to sample ``i`` over suffixes.

    Returns ``M`` of length ``i + 1`` with
    ``M[j] = max(distance(points[k], points[i]) for k in j..i)``,
    computed by a single backward sweep.  ``M`` is nonincreasing and
    ``M[i] = 0``.
    """
    if not 0 <= i < len(arc):
        raise RangeError(f"index {i} out of bounds for arc with {len(arc)} samples")
    d = point_distances(arc.points[: i + 1], i)
    return np.maximum.accumulate(d[::-1])[::-1]


def reversed_arc(arc: SampledArc) -> SampledArc:
    """Traverse the arc backwards (params negated to stay increasing)."""
    return SampledArc(-arc.params[::-1], arc.points[::-1], dict(arc.meta))


def is_injective(arc: SampledArc) -> bool:
    """Whether the polyline is injective at sample resolution.

    Delegates to a robust geometric predicate (GEOS ``is_simple``): no two
    non-adjacent segments intersect and no point repeats.
    """
    from shapely.geometry import LineString

    return bool(LineString(arc.points).is_simple)
