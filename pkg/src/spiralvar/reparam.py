"""Optimal Hölder reparametrization from a variation profile.

Normalizing the prefix variation profile to ``[0, 1]`` gives the unique
vertex parametrization ``u`` under which the arc is ``(1/s)``-Hölder with
the smallest possible constant: for every sample pair,

    distance(points[j], points[i]) ** s  <=  value * (u[i] - u[j]),

where ``value`` is the total s-variation.  This certificate is an exact
discrete inequality (the profile dominates subchain diameters by
construction), and the discrete Hölder seminorm at exponent ``1/s`` taken
with respect to ``u`` approaches ``value ** (1/s)`` from below as the
sampling is refined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arc import SampledArc, point_distances
from .errors import DegenerateArcError, ParameterError, SizeError
from .variation import VariationResult

__all__ = [
    "HolderParam",
    "HolderSeminorm",
    "build_param",
    "certificate_max_violation",
    "discrete_seminorm",
    "seminorm_of_coords",
]

# Above this many samples the exact quadratic pair scan is replaced by a
# uniformly subsampled one (reported via `subsampled` / `n_used`).
SEMINORM_CAP = 30_000


@dataclass(frozen=True)
class HolderParam:
    """An arc together with its normalized variation parametrization.

    ``u`` is strictly increasing with ``u[0] == 0`` and ``u[-1] == 1``;
    ``value`` is the total s-variation the normalization divided by.
    """

    arc: SampledArc
    s: float
    value: float
    u: np.ndarray


def build_param(arc: SampledArc, variation: VariationResult) -> HolderParam:
    """Normalize a variation profile into a Hölder parametrization.

    The profile must belong to ``arc`` (or the subarc it was computed on —
    in that case the parametrization covers the slice).
    """
    if variation.rng != arc.full_range():
        arc = arc.slice(variation.rng)
    if not variation.value > 0.0:
        raise DegenerateArcError("arc has no variation; cannot normalize the profile")
    u = variation.prefix / variation.value
    if not (np.diff(u) > 0.0).all():
        raise DegenerateArcError(
            "variation profile is not strictly increasing at float resolution; "
            "the arc contains steps too small to resolve at this exponent"
        )
    u = u.copy()
    u.setflags(write=False)
    return HolderParam(arc=arc, s=variation.s, value=variation.value, u=u)


def certificate_max_violation(param: HolderParam) -> float:
    """Worst slack of the Hölder certificate over all sample pairs.

    Returns ``max over j < i of d(j, i)**s - value * (u[i] - u[j])``.
    A nonpositive result means the certificate holds for every pair.
    """
    pts = param.arc.points
    u = param.u
    s, value = param.s, param.value
    n = len(u)
    worst = -np.inf
    for i in range(1, n):
        d = point_distances(pts[: i + 1], i)[:i]
        gap = d ** s - value * (u[i] - u[:i])
        m = float(gap.max())
        if m > worst:
            worst = m
    return worst


@dataclass(frozen=True)
class HolderSeminorm:
    """Discrete Hölder seminorm with its maximizing pair.

    ``witness`` is ``(j, i)`` with ``j < i`` in the arc's own indexing.
    When several pairs tie, the reported witness has the largest right
    index, with the smallest left index within that row of the scan.
    """

    alpha: float
    value: float
    witness: tuple[int, int]
    n_used: int
    subsampled: bool


def seminorm_of_coords(
    u: np.ndarray, pts: np.ndarray, alpha: float, cap: int = SEMINORM_CAP
) -> HolderSeminorm:
    """Sup of ``distance(i, j) / |u[i] - u[j]|**alpha`` over sample pairs.

    ``u`` must be strictly increasing.  Exact quadratic scan up to ``cap``
    samples; beyond that a uniform index subsample of size ``cap`` is
    scanned instead and the estimate is flagged.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"Hölder exponent must lie in (0, 1], got {alpha}")
    n = len(u)
    if n != len(pts):
        raise SizeError(f"coordinate and point counts disagree: {n} vs {len(pts)}")
    subsampled = n > cap
    if subsampled:
        idx = np.unique(np.round(np.linspace(0, n - 1, cap)).astype(np.intp))
        u = u[idx]
        pts = pts[idx]
    else:
        idx = None
    k = len(u)
    best = -np.inf
    wit = (0, 1)
    for i in range(1, k):
        d = point_distances(pts[: i + 1], i)[:i]
        q = d / (u[i] - u[:i]) ** alpha
        j = int(np.argmax(q))
        m = float(q[j])
        if m >= best:
            best = m
            wit = (j, i)
    if idx is not None:
        wit = (int(idx[wit[0]]), int(idx[wit[1]]))
    return HolderSeminorm(
        alpha=alpha, value=best, witness=wit, n_used=k, subsampled=subsampled
    )


def discrete_seminorm(param: HolderParam, alpha: float) -> HolderSeminorm:
    """Discrete Hölder seminorm of the arc with respect to its ``u``."""
    return seminorm_of_coords(param.u, param.arc.points, alpha)
