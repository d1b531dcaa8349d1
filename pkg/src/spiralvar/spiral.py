"""Generation and ring decomposition of sampled spiral arcs.

A spiral arc winds inward from ``t_start`` (one full turn out from the
origin's neighborhood, ``t_start = 2*pi`` by default) for a whole number of
turns.  Three radius profiles are supported:

* ``polynomial`` — ``r(t) = t**-p`` in both coordinates,
* ``elliptical`` — ``x = t**-p * cos(t)``, ``y = t**-q * sin(t)`` with
  ``0 < p <= q``,
* ``tabulated`` — ``r(t)`` linearly interpolated from a strictly positive,
  overall-decreasing table.

Sampling places ``samples_per_turn`` equal parameter steps per turn, so
every full-turn boundary ``t = 2*pi*j`` is itself a sample; the ring
decomposition is exact and never interpolates.  The limit point at the
origin is never emitted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arc import SampledArc, SubarcRange, arc_length, diameter
from .errors import AlignmentError, RangeError, SpecError

__all__ = [
    "Ring",
    "RingDecomposition",
    "SpiralSpec",
    "TWO_PI",
    "decompose_rings",
    "generate",
    "phi_sequence",
]

TWO_PI = 2.0 * math.pi

_KINDS = ("polynomial", "elliptical", "tabulated")


@dataclass(frozen=True)
class SpiralSpec:
    """Parameters of a sampled spiral arc.

    Attributes:
        kind: one of ``polynomial``, ``elliptical``, ``tabulated``.
        p: radial decay exponent (both axes for ``polynomial``, the x axis
            for ``elliptical``); ignored for ``tabulated``.
        q: y-axis decay exponent for ``elliptical`` (``p <= q``).
        turns: number of full turns sampled.
        samples_per_turn: parameter steps per turn; a power of two, so that
            refinement levels nest and turn boundaries stay exact.
        t_start: start parameter; must be a positive multiple of ``2*pi``.
        table_t / table_phi: radius table for ``tabulated`` (strictly
            increasing ``t``, positive radii, overall decreasing).
    """

    kind: str
    p: float | None = None
    q: float | None = None
    turns: int = 50
    samples_per_turn: int = 256
    t_start: float = TWO_PI
    table_t: np.ndarray | None = field(default=None)
    table_phi: np.ndarray | None = field(default=None)

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise SpecError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.turns < 1:
            raise SpecError(f"turns must be >= 1, got {self.turns}")
        m = self.samples_per_turn
        if m < 8 or m & (m - 1):
            raise SpecError(f"samples_per_turn must be a power of two >= 8, got {m}")
        j0 = self.t_start / TWO_PI
        if not (j0 >= 1.0 and abs(j0 - round(j0)) < 1e-9):
            raise SpecError(f"t_start must be a positive multiple of 2*pi, got {self.t_start}")
        if self.kind == "polynomial":
            if self.p is None or not self.p > 0:
                raise SpecError(f"polynomial kind needs p > 0, got p={self.p}")
        elif self.kind == "elliptical":
            if self.p is None or self.q is None or not (0 < self.p <= self.q):
                raise SpecError(f"elliptical kind needs 0 < p <= q, got p={self.p}, q={self.q}")
        else:
            if self.table_t is None or self.table_phi is None:
                raise SpecError("tabulated kind needs table_t and table_phi")
            t = np.asarray(self.table_t, dtype=np.float64)
            phi = np.asarray(self.table_phi, dtype=np.float64)
            if t.ndim != 1 or t.shape != phi.shape or t.size < 2:
                raise SpecError("radius table needs matching 1-d t and phi arrays")
            if not (np.diff(t) > 0).all():
                raise SpecError("table_t must be strictly increasing")
            if not (phi > 0).all():
                raise SpecError("table_phi must be strictly positive")
            if not phi[-1] < phi[0]:
                raise SpecError("table_phi must decrease overall (last value below first)")
            object.__setattr__(self, "table_t", t)
            object.__setattr__(self, "table_phi", phi)

    @property
    def j_start(self) -> int:
        """Index of the first ring (``t_start = 2*pi*j_start``)."""
        return int(round(self.t_start / TWO_PI))

    def meta(self) -> dict:
        out = {
            "kind": self.kind,
            "turns": self.turns,
            "samples_per_turn": self.samples_per_turn,
            "t_start": self.t_start,
        }
        if self.kind != "tabulated":
            out["p"] = self.p
            if self.kind == "elliptical":
                out["q"] = self.q
        else:
            out["table_size"] = int(self.table_t.size)
        return out


def _grid(spec: SpiralSpec) -> np.ndarray:
    m = spec.samples_per_turn
    k = np.arange(spec.turns * m + 1, dtype=np.float64)
    # j_start + k/m is exact at every turn boundary (k/m has an exact float
    # value whenever m divides k), so boundaries match 2*pi*j bit-for-bit.
    return TWO_PI * (spec.j_start + k / m)


MAX_SAMPLES = 20_000_000


def generate(spec: SpiralSpec) -> SampledArc:
    """Sample the spiral described by ``spec``.

    Produces ``turns * samples_per_turn + 1`` points; the parameter grid
    hits every full-turn boundary exactly.  Requests above ``MAX_SAMPLES``
    are refused — deep truncations should go through the per-ring pipeline,
    which generates rings in bounded batches instead.
    """
    total = spec.turns * spec.samples_per_turn + 1
    if total > MAX_SAMPLES:
        raise SpecError(
            f"{spec.turns} turns at {spec.samples_per_turn} samples/turn is "
            f"{total} samples, above the {MAX_SAMPLES} generation cap"
        )
    t = _grid(spec)
    if spec.kind == "polynomial":
        r = t ** (-spec.p)
        pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
    elif spec.kind == "elliptical":
        pts = np.column_stack([t ** (-spec.p) * np.cos(t), t ** (-spec.q) * np.sin(t)])
    else:
        if t[0] < spec.table_t[0] - 1e-12 or t[-1] > spec.table_t[-1] + 1e-12:
            raise RangeError(
                f"radius table covers t in [{spec.table_t[0]:g}, {spec.table_t[-1]:g}] "
                f"but {spec.turns} turns need [{t[0]:g}, {t[-1]:g}]"
            )
        r = np.interp(t, spec.table_t, spec.table_phi)
        pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
    return SampledArc(t, pts, spec.meta())


@dataclass(frozen=True)
class Ring:
    """One full turn of a spiral arc.

    ``j`` is the absolute turn index (ring ``j`` spans parameters
    ``[2*pi*j, 2*pi*(j+1)]``); ``phi`` is the largest sample radius in the
    ring, ``length`` its chord length and ``diam`` its sample diameter.
    """

    j: int
    rng: SubarcRange
    phi: float
    length: float
    diam: float


@dataclass(frozen=True)
class RingDecomposition:
    rings: list[Ring]
    c_phi_estimate: float

    def __len__(self) -> int:
        return len(self.rings)

    def ratios(self) -> np.ndarray:
        """Per-ring ``length / phi`` (the almost-circularity ratios)."""
        return np.array([r.length / r.phi for r in self.rings])


def decompose_rings(arc: SampledArc) -> RingDecomposition:
    """Split an arc into full turns along exact ``2*pi*j`` boundaries.

    Every boundary in the covered parameter span, including both endpoints,
    must be present as a sample (relative tolerance 1e-9); otherwise the
    grid cannot represent rings faithfully and an
    :class:`~spiralvar.errors.AlignmentError` is raised.
    """
    t = arc.params
    j0 = round(t[0] / TWO_PI)
    j1 = round(t[-1] / TWO_PI)
    if abs(t[0] - TWO_PI * j0) > 1e-9 * max(1.0, abs(t[0])):
        raise AlignmentError(f"arc starts at t={t[0]!r}, not at a full-turn boundary")
    if abs(t[-1] - TWO_PI * j1) > 1e-9 * max(1.0, abs(t[-1])) or j1 <= j0:
        raise AlignmentError(f"arc ends at t={t[-1]!r}, not at a later full-turn boundary")
    bounds = [0]
    for j in range(j0 + 1, j1 + 1):
        target = TWO_PI * j
        idx = int(np.searchsorted(t, target))
        hit = None
        for cand in (idx - 1, idx, idx + 1):
            if 0 <= cand < t.shape[0] and abs(t[cand] - target) <= 1e-9 * target:
                hit = cand
                break
        if hit is None:
            raise AlignmentError(f"no sample at the full-turn boundary t = 2*pi*{j}")
        bounds.append(hit)
    rings = []
    radii = np.hypot(arc.points[:, 0], arc.points[:, 1])
    for k in range(len(bounds) - 1):
        rng = SubarcRange(bounds[k], bounds[k + 1])
        rings.append(
            Ring(
                j=j0 + k,
                rng=rng,
                phi=float(radii[rng.lo : rng.hi + 1].max()),
                length=arc_length(arc, rng),
                diam=diameter(arc, rng),
            )
        )
    c_phi = max(r.length / r.phi for r in rings)
    return RingDecomposition(rings=rings, c_phi_estimate=float(c_phi))


def phi_sequence(spec: SpiralSpec) -> np.ndarray:
    """Per-ring maximal radii ``phi_j`` for ``j = j_start .. j_start+turns-1``.

    For the built-in families this is the analytic value ``(2*pi*j)**-p``
    (the radius at the ring's outer boundary); for tabulated profiles it is
    the per-ring maximum over table entries.
    """
    j = np.arange(spec.j_start, spec.j_start + spec.turns, dtype=np.float64)
    if spec.kind in ("polynomial", "elliptical"):
        return (TWO_PI * j) ** (-spec.p)
    t, phi = spec.table_t, spec.table_phi
    lo = TWO_PI * j
    hi = TWO_PI * (j + 1)
    if t[0] > lo[0] + 1e-12 or t[-1] < hi[-1] - 1e-12:
        raise RangeError(
            f"radius table covers t in [{t[0]:g}, {t[-1]:g}] but {spec.turns} turns "
            f"need [{lo[0]:g}, {hi[-1]:g}]"
        )
    out = np.empty(spec.turns)
    for k in range(spec.turns):
        inside = phi[(t >= lo[k] - 1e-12) & (t <= hi[k] + 1e-12)]
        ends = np.interp([lo[k], hi[k]], t, phi)
        out[k] = max(inside.max(initial=0.0), ends.max())
    return out
