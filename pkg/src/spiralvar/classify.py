"""Spiral classification: series convergence, ring sandwich, growth rates.

A spiral arc is a ``(1/s)``-Hölder arc exactly when the series of its
per-ring maximal radii raised to ``s`` converges; for the polynomial
family ``r(t) = t**-p`` that happens precisely when ``p * s > 1``.  At
desk scale the dichotomy shows up as the growth rate of truncated
variation totals, and as a two-sided comparison ("sandwich") between the
whole arc's s-variation and the sum of its per-ring values:

    sum_rings  <=  total  <=  2 * sum_rings   (up to sampling slack).

Long spirals are handled by a per-ring pipeline: every ring is a small
equally-sized arc, so ring values come from one batched DP run and the
truncated totals are their cumulative sums.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arc import SampledArc
from .errors import ParameterError
from .spiral import TWO_PI, RingDecomposition, SpiralSpec, decompose_rings, generate, phi_sequence
from .variation import N_CAP, batch_s_variation_values, s_variation

__all__ = [
    "AlmostCircularityReport",
    "ConvergenceVerdict",
    "GrowthResult",
    "SandwichReport",
    "almost_circularity",
    "classify_spiral",
    "growth_rate",
    "ring_variations",
    "sandwich_check",
]

# Rings processed per batched DP call; bounds peak working memory.
_CHUNK_RINGS = 8192

# Half-width of the inconclusive band around 1 for tabulated verdicts.
_FIT_MARGIN = 0.05


def _check_s_above_one(s: float) -> float:
    s = float(s)
    if not (math.isfinite(s) and s > 1.0):
        raise ParameterError(f"the Hölder-arc dichotomy is posed for s > 1, got s={s}")
    return s


# ---------------------------------------------------------------------------
# per-ring values
# ---------------------------------------------------------------------------


def _ring_points_chunk(spec: SpiralSpec, a: int, b: int) -> np.ndarray:
    """Points of rings ``[a, b)`` (0-based within the spec) as ``(B, m+1, 2)``.

    Generates only the needed turn span; the parameter grid, and hence the
    sampled points, match the full arc bit-for-bit because turn boundaries
    land on exact dyadic multiples of the step.
    """
    m = spec.samples_per_turn
    sub = dataclasses.replace(spec, turns=b - a, t_start=TWO_PI * (spec.j_start + a))
    pts = generate(sub).points
    idx = np.arange(b - a)[:, None] * m + np.arange(m + 1)[None, :]
    return pts[idx]


def _ring_values_for_spec(spec: SpiralSpec, s: float, jobs: int = 1) -> np.ndarray:
    """s-variation of every ring of ``spec``, via the batched DP."""
    chunks = [(a, min(a + _CHUNK_RINGS, spec.turns)) for a in range(0, spec.turns, _CHUNK_RINGS)]

    def run(bounds: tuple[int, int]) -> np.ndarray:
        a, b = bounds
        return batch_s_variation_values(_ring_points_chunk(spec, a, b), s)

    if jobs > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    return np.concatenate(parts)


def ring_variations(
    arc: SampledArc, decomposition: RingDecomposition, s: float, jobs: int = 1
) -> np.ndarray:
    """s-variation of each ring of an already-decomposed arc.

    Equally sized rings are stacked through the batched DP (chunked, and
    parallelized across chunks when ``jobs > 1`` — the result is identical
    for any job count); ragged decompositions fall back to per-ring runs.
    """
    sizes = {len(r.rng) for r in decomposition.rings}
    if len(sizes) == 1:
        n_ring = sizes.pop()
        starts = np.array([r.rng.lo for r in decomposition.rings])
        idx = starts[:, None] + np.arange(n_ring)[None, :]
        pts3 = arc.points[idx]
        chunks = [pts3[a : a + _CHUNK_RINGS] for a in range(0, len(pts3), _CHUNK_RINGS)]
        if jobs > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(lambda c: batch_s_variation_values(c, s), chunks))
        else:
            parts = [batch_s_variation_values(c, s) for c in chunks]
        return np.concatenate(parts)
    return np.array([s_variation(arc, s, r.rng).value for r in decomposition.rings])


# ---------------------------------------------------------------------------
# convergence verdict
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of the ring-radius series test.

    ``verdict`` is ``converges`` / ``diverges`` for the built-in families
    (decided analytically from ``p * s`` vs 1, never inconclusive) and may
    be ``inconclusive`` for tabulated profiles whose fitted decay exponent
    lands within the margin band around ``p * s == 1``.
    """

    kind: str
    s: float
    verdict: str
    decay_exponent_fit: float
    partial_sums: list[tuple[int, float]]
    rationale: str


def classify_spiral(spec: SpiralSpec, s: float) -> ConvergenceVerdict:
    """Decide whether the spiral is a ``(1/s)``-Hölder arc.

    Raises ``ParameterError`` for ``s <= 1`` (the question is only posed
    for exponents above 1).
    """
    s = _check_s_above_one(s)
    phi = phi_sequence(spec)
    csum = np.cumsum(phi ** s)
    partial_sums = [(k + 1, float(v)) for k, v in enumerate(csum)]

    skip = spec.turns // 10
    j_abs = np.arange(spec.j_start, spec.j_start + spec.turns, dtype=np.float64)
    fit = np.polyfit(np.log(j_abs[skip:]), np.log(phi[skip:]), 1)
    p_hat = -float(fit[0])

    if spec.kind in ("polynomial", "elliptical"):
        ps = spec.p * s
        converges = ps > 1.0
        verdict = "converges" if converges else "diverges"
        rationale = (
            f"radial decay exponent p={spec.p:g} gives p*s={ps:g} "
            f"{'>' if converges else '<='} 1: the ring-radius series "
            f"{'converges' if converges else 'diverges'}"
        )
    else:
        x = p_hat * s
        if x > 1.0 + _FIT_MARGIN:
            verdict = "converges"
        elif x < 1.0 - _FIT_MARGIN:
            verdict = "diverges"
        else:
            verdict = "inconclusive"
        rationale = (
            f"fitted decay exponent {p_hat:.4g} gives p_fit*s={x:.4g}; "
            f"margin band 1±{_FIT_MARGIN:g} -> {verdict}"
        )
    return ConvergenceVerdict(
        kind=spec.kind,
        s=s,
        verdict=verdict,
        decay_exponent_fit=p_hat,
        partial_sums=partial_sums,
        rationale=rationale,
    )


# ---------------------------------------------------------------------------
# almost-circularity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlmostCircularityReport:
    """Per-ring length/radius ratios and their trend over the sampled range.

    The ``almost_circular`` label is empirical and resolution-limited: it
    asserts only that the ratio shows no upward trend over the rings that
    were actually sampled (max over the last quarter vs the max before it,
    within ``trend_tol``), not a bound over the full infinite spiral.
    """

    c_phi: float
    ratios: np.ndarray
    trend_ratio: float
    almost_circular: bool
    trend_tol: float
    turns: int


def almost_circularity(
    spec: SpiralSpec, turns: int | None = None, trend_tol: float = 0.1
) -> AlmostCircularityReport:
    """Ring length/radius ratios of the spiral at its own resolution."""
    spec2 = dataclasses.replace(spec, turns=turns) if turns else spec
    decomp = decompose_rings(generate(spec2))
    ratios = decomp.ratios()
    q = max(1, (3 * len(ratios)) // 4)
    head = float(ratios[:q].max())
    tail = float(ratios[q:].max()) if len(ratios) > q else head
    trend_ratio = tail / head
    return AlmostCircularityReport(
        c_phi=decomp.c_phi_estimate,
        ratios=ratios,
        trend_ratio=trend_ratio,
        almost_circular=trend_ratio <= 1.0 + trend_tol,
        trend_tol=trend_tol,
        turns=spec2.turns,
    )


# ---------------------------------------------------------------------------
# sandwich check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SandwichReport:
    """Two-sided comparison of total vs per-ring s-variation.

    ``total`` is None when the arc exceeds the exact-DP cap (per-ring-only
    mode); the two total-based flags are then None as well.  ``per_ring``
    rows carry, for ring ``j``: its max radius ``phi``, value ``value``,
    Hölder root ``value ** (1/s)`` and the two-sided radius bound flag.
    """

    s: float
    tol: float
    sum_rings: float
    total: float | None
    lower_ok: bool | None
    upper_ok: bool | None
    rings_ok: bool
    c_phi: float
    per_ring: list[dict]


def sandwich_check(
    spec: SpiralSpec,
    s: float,
    turns: int | None = None,
    tol: float = 0.05,
    jobs: int = 1,
) -> SandwichReport:
    """Compare the truncated total against the sum of ring values."""
    s = _check_s_above_one(s)
    spec2 = dataclasses.replace(spec, turns=turns) if turns else spec
    arc = generate(spec2)
    decomp = decompose_rings(arc)
    return sandwich_from_arc(arc, s, tol=tol, jobs=jobs, decomposition=decomp)


def sandwich_from_arc(
    arc: SampledArc,
    s: float,
    tol: float = 0.05,
    jobs: int = 1,
    decomposition: RingDecomposition | None = None,
) -> SandwichReport:
    """Sandwich comparison for an arc that is already ring-aligned."""
    s = _check_s_above_one(s)
    decomp = decomposition if decomposition is not None else decompose_rings(arc)
    values = ring_variations(arc, decomp, s, jobs=jobs)
    sum_rings = math.fsum(float(v) for v in values)
    if len(arc) <= N_CAP:
        total = s_variation(arc, s).value
        lower_ok = sum_rings <= total
        upper_ok = total <= 2.0 * sum_rings * (1.0 + tol)
    else:
        total = None
        lower_ok = None
        upper_ok = None

    c_phi = decomp.c_phi_estimate
    inv_s = 1.0 / s
    per_ring = []
    rings_ok = True
    for ring, v in zip(decomp.rings, values):
        root = float(v) ** inv_s
        ok = ring.phi <= root <= c_phi * ring.phi * (1.0 + tol)
        rings_ok = rings_ok and ok
        per_ring.append(
            {
                "j": ring.j,
                "phi": ring.phi,
                "length": ring.length,
                "diam": ring.diam,
                "value": float(v),
                "hroot": root,
                "bounds_ok": ok,
            }
        )
    return SandwichReport(
        s=s,
        tol=tol,
        sum_rings=sum_rings,
        total=total,
        lower_ok=lower_ok,
        upper_ok=upper_ok,
        rings_ok=rings_ok,
        c_phi=c_phi,
        per_ring=per_ring,
    )


# ---------------------------------------------------------------------------
# growth rate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthResult:
    """Truncated totals at increasing depths and their log-log slope.

    Totals are per-ring sums (the ring-pipeline stand-in for the full
    value; the two agree within a factor of two, which shifts the log-log
    line but not its slope).  For ``p * s < 1`` the slope approaches
    ``1 - p*s``; for ``p * s > 1`` it approaches 0.
    """

    s: float
    slope: float
    entries: list[tuple[int, float]]


def growth_rate(
    spec: SpiralSpec, s: float, j_list: list[int], jobs: int = 1
) -> GrowthResult:
    """Fit the growth of truncated variation totals against depth.

    Unlike the Hölder-arc dichotomy this is meaningful at ``s = 1`` too,
    where the total is the truncated length.
    """
    if not s >= 1.0:
        raise ParameterError(f"growth exponent must satisfy s >= 1, got {s}")
    if len(j_list) < 3:
        raise ParameterError(f"need at least 3 depths to fit a slope, got {len(j_list)}")
    if any(b <= a for a, b in zip(j_list, j_list[1:])) or j_list[0] < 1:
        raise ParameterError(f"depths must be strictly increasing positive ints, got {j_list}")
    spec2 = dataclasses.replace(spec, turns=j_list[-1])
    values = _ring_values_for_spec(spec2, s, jobs=jobs)
    totals = np.cumsum(values)
    entries = [(int(J), float(totals[J - 1])) for J in j_list]
    xs = np.log([float(J) for J, _ in entries])
    ys = np.log([v for _, v in entries])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return GrowthResult(s=s, slope=slope, entries=entries)
