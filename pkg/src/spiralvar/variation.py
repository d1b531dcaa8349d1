"""Exact s-variation of sampled arcs over vertex-restricted partitions.

For an exponent ``s >= 1`` the s-variation of a sampled arc is the maximum,
over all partitions of the sample sequence into consecutive subchains, of
the partition's sum of ``diameter(subchain) ** s``.  The diameter is the
max pairwise distance among the subchain's samples — not the distance of
its endpoints — which is what makes the quantity monotone under refinement
and superadditive over consecutive blocks.

The optimum is computed by dynamic programming over prefix indices.  Per
target index ``i`` a single backward sweep turns the distances-to-``i``
into suffix maxima, and a rolling row of subchain diameters
``D[j] = diameter([j, i])`` is updated in place, so the whole run is
O(n^2) time and O(n) extra memory.

A subset-enumeration brute force (``n <= 16``) is provided as an
independent cross-check.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .arc import SampledArc, SubarcRange, pairwise_max_distance
from .errors import ParameterError, RangeError, SizeError
from .spiral import SpiralSpec, generate

__all__ = [
    "N_CAP",
    "VariationResult",
    "batch_s_variation_values",
    "brute_force_variation",
    "refinement_study",
    "s_variation",
]

# Hard cap for the exact quadratic computation (about 0.9e9 subchain
# transitions); beyond this, use the per-ring pipeline in `classify`.
N_CAP = 30_000

_BRUTE_CAP = 16


def _check_s(s: float) -> float:
    s = float(s)
    if not (math.isfinite(s) and s >= 1.0):
        raise ParameterError(f"variation exponent must satisfy s >= 1, got {s}")
    return s


def _resolve(arc: SampledArc, rng: SubarcRange | None) -> SubarcRange:
    if rng is None:
        return arc.full_range()
    rng.check(len(arc))
    return rng


@dataclass(frozen=True)
class VariationResult:
    """Outcome of an s-variation run.

    Attributes:
        s: the exponent used.
        value: the optimal partition sum.
        prefix: shape ``(k,)`` profile; ``prefix[m]`` is the s-variation of
            the subarc from the range start to its ``m``-th sample
            (``prefix[0] == 0``, ``prefix[-1] == value``, nondecreasing).
        breakpoints: sample indices (absolute, into the parent arc) of one
            optimal partition; starts at ``rng.lo`` and ends at ``rng.hi``.
            Among equally good transitions the latest split is kept, i.e.
            the last piece is as short as possible.
        rng: the analyzed range.
    """

    s: float
    value: float
    prefix: np.ndarray
    breakpoints: list[int]
    rng: SubarcRange


def s_variation(arc: SampledArc, s: float, rng: SubarcRange | None = None) -> VariationResult:
    """Exact s-variation of ``arc`` (or a subarc) with an optimal partition.

    Raises:
        ParameterError: if ``s < 1``.
        SizeError: if the range holds more than ``N_CAP`` samples.
    """
    s = _check_s(s)
    rng = _resolve(arc, rng)
    k = len(rng)
    if k > N_CAP:
        raise SizeError(f"range has {k} samples, exceeding the exact-computation cap {N_CAP}")
    pts = arc.points[rng.lo : rng.hi + 1]
    x, y = pts[:, 0], pts[:, 1]

    V = np.zeros(k)
    parent = np.zeros(k, dtype=np.intp)
    D = np.zeros(k)  # rolling row: D[j] = diameter of samples [j, i]
    bx = np.empty(k)
    by = np.empty(k)
    mrev = np.empty(k)
    cand = np.empty(k)

    for i in range(1, k):
        dx = np.subtract(x[: i + 1], x[i], out=bx[: i + 1])
        dy = np.subtract(y[: i + 1], y[i], out=by[: i + 1])
        d = np.hypot(dx, dy, out=bx[: i + 1])
        # suffix maxima of distances to sample i, then fold into the row
        np.maximum.accumulate(d[::-1], out=mrev[: i + 1])
        np.maximum(D[: i + 1], mrev[: i + 1][::-1], out=D[: i + 1])
        np.power(D[:i], s, out=cand[:i])
        np.add(cand[:i], V[:i], out=cand[:i])
        # first max of the reversed row = largest optimal j
        j = i - 1 - int(np.argmax(cand[i - 1 :: -1]))
        parent[i] = j
        V[i] = cand[j]

    chain = [k - 1]
    while chain[-1] > 0:
        chain.append(int(parent[chain[-1]]))
    chain.reverse()

    prefix = V.copy()
    prefix.setflags(write=False)
    return VariationResult(
        s=s,
        value=float(V[-1]),
        prefix=prefix,
        breakpoints=[rng.lo + c for c in chain],
        rng=rng,
    )


def batch_s_variation_values(points3: np.ndarray, s: float) -> np.ndarray:
    """Values-only DP over a stack of equally sized arcs.

    ``points3`` has shape ``(B, n, 2)``.  Runs the same recurrence as
    :func:`s_variation` broadcast across the batch axis, so each entry is
    bitwise equal to the per-arc result.  Used by the per-ring pipeline.
    """
    s = _check_s(s)
    B, n, _ = points3.shape
    if n > N_CAP:
        raise SizeError(f"batch entries have {n} samples, exceeding the cap {N_CAP}")
    x, y = points3[:, :, 0], points3[:, :, 1]
    V = np.zeros((B, n))
    D = np.zeros((B, n))
    for i in range(1, n):
        d = np.hypot(x[:, : i + 1] - x[:, i : i + 1], y[:, : i + 1] - y[:, i : i + 1])
        M = np.maximum.accumulate(d[:, ::-1], axis=1)[:, ::-1]
        np.maximum(D[:, : i + 1], M, out=D[:, : i + 1])
        V[:, i] = (V[:, :i] + D[:, :i] ** s).max(axis=1)
    return V[:, -1]


def brute_force_variation(arc: SampledArc, s: float, rng: SubarcRange | None = None) -> float:
    """Exact optimum by enumerating every breakpoint subset (``n <= 16``).

    Kept deliberately independent of the DP: subchain diameters come from a
    range table and every one of the ``2**(n-2)`` partitions is evaluated.
    """
    s = _check_s(s)
    rng = _resolve(arc, rng)
    k = len(rng)
    if k > _BRUTE_CAP:
        raise SizeError(f"brute force handles at most {_BRUTE_CAP} samples, got {k}")
    pts = arc.points[rng.lo : rng.hi + 1]
    dx = pts[:, None, 0] - pts[None, :, 0]
    dy = pts[:, None, 1] - pts[None, :, 1]
    dist = np.hypot(dx, dy)
    diam = np.zeros((k, k))
    for a in range(k):
        for b in range(a + 1, k):
            diam[a, b] = max(diam[a, b - 1], dist[a : b + 1, b].max())
    powtab = (diam ** s).tolist()

    best = powtab[0][k - 1]
    for mask in range(1, 1 << max(0, k - 2)):
        total = 0.0
        prev = 0
        m = mask
        pos = 1
        while m:
            if m & 1:
                total += powtab[prev][pos]
                prev = pos
            m >>= 1
            pos += 1
        total += powtab[prev][k - 1]
        if total > best:
            best = total
    return float(best)


def partition_value(arc: SampledArc, s: float, breakpoints: Sequence[int]) -> float:
    """Value of one explicit vertex partition, folded left to right.

    ``breakpoints`` must be strictly increasing sample indices starting at 0
    and ending at the last index.  Each block contributes ``diam**s``; the
    running sum uses the same distance and power kernels and the same
    left-to-right addition order as the optimizer, so
    ``s_variation(arc, s).value >= partition_value(arc, s, bp)`` holds
    bitwise for every partition, not merely up to rounding.
    """
    s = _check_s(s)
    bp = list(breakpoints)
    n = len(arc)
    if bp[0] != 0 or bp[-1] != n - 1 or any(a >= b for a, b in zip(bp, bp[1:])):
        raise RangeError(
            f"breakpoints must rise from 0 to {n - 1}, got {bp[:4]}...{bp[-2:]}"
        )
    diams = np.array(
        [pairwise_max_distance(arc.points[a : b + 1]) for a, b in zip(bp, bp[1:])]
    )
    total = 0.0
    for term in np.power(diams, s):
        total = total + term
    return float(total)


def refinement_study(spec: SpiralSpec, s: float, m_list: list[int]) -> list[tuple[int, float]]:
    """s-variation of one spiral sampled at several per-turn resolutions.

    ``m_list`` must be strictly increasing powers of two so the grids nest;
    on nested grids the returned values are nondecreasing.
    """
    s = _check_s(s)
    if len(m_list) < 1:
        raise ParameterError("m_list must not be empty")
    for a, b in zip(m_list, m_list[1:]):
        if b <= a:
            raise ParameterError(f"m_list must be strictly increasing, got {m_list}")
    for m in m_list:
        if m < 8 or m & (m - 1):
            raise ParameterError(f"per-turn sample counts must be powers of two >= 8, got {m}")
    out = []
    for m in m_list:
        arc = generate(dataclasses.replace(spec, samples_per_turn=m))
        out.append((m, s_variation(arc, s).value))
    return out
