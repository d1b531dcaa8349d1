from fractions import Fraction

import numpy as np
import pytest

import spiralvar as sv
from spiralvar.arc import Point, SampledArc
from spiralvar.errors import GridMismatchError, ParameterError


def test_stretch_map_validation():
    for bad in (0.0, -1.0, np.nan):
        with pytest.raises(ParameterError):
            sv.StretchMap(bad)


def test_point_mapping():
    m = sv.StretchMap(0.5)
    q = sv.apply_stretch(m, Point(4.0, 0.0))
    assert (q.x, q.y) == (2.0, 0.0)
    q = sv.apply_stretch(m, Point(0.0, 9.0))
    assert (q.x, q.y) == (0.0, 3.0)
    # the origin is fixed for every exponent
    q = sv.apply_stretch(sv.StretchMap(3.0), Point(0.0, 0.0))
    assert (q.x, q.y) == (0.0, 0.0)


def test_argument_preserved_modulus_powered():
    m = sv.StretchMap(0.7)
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(100, 2))
    arc = SampledArc(np.arange(100.0), pts)
    out = sv.apply_stretch(m, arc)
    r_in = np.hypot(*pts.T)
    r_out = np.hypot(*out.points.T)
    np.testing.assert_allclose(r_out, r_in**0.7, rtol=1e-12)
    np.testing.assert_allclose(
        np.arctan2(*pts.T[::-1]), np.arctan2(*out.points.T[::-1]), rtol=0, atol=1e-12
    )


def test_inverse_round_trip():
    m = sv.StretchMap(0.5)
    arc = sv.generate(sv.SpiralSpec(kind="polynomial", p=1.0, turns=30, samples_per_turn=64))
    back = sv.apply_stretch(m.inverse(), sv.apply_stretch(m, arc))
    np.testing.assert_allclose(back.points, arc.points, rtol=1e-12)
    assert m.inverse().beta == 2.0


def test_stretch_carries_family_to_family():
    # the half-power stretch sends the p=1 spiral onto the p=1/2 spiral
    # sample-for-sample
    src = sv.generate(sv.SpiralSpec(kind="polynomial", p=1.0, turns=50, samples_per_turn=64))
    tgt = sv.generate(sv.SpiralSpec(kind="polynomial", p=0.5, turns=50, samples_per_turn=64))
    out = sv.apply_stretch(sv.StretchMap(0.5), src)
    np.testing.assert_allclose(out.points, tgt.points, rtol=0, atol=1e-13)
    assert out.meta["stretch_beta"] == 0.5


def test_stretch_params_unchanged():
    arc = sv.generate(sv.SpiralSpec(kind="polynomial", p=1.0, turns=5, samples_per_turn=32))
    out = sv.apply_stretch(sv.StretchMap(0.5), arc)
    np.testing.assert_array_equal(out.params, arc.params)


# --- empirical exponent -----------------------------------------------------


def _family(turns=2000, m=32):
    src = sv.generate(sv.SpiralSpec(kind="polynomial", p=1.0, turns=turns, samples_per_turn=m))
    dst = sv.apply_stretch(sv.StretchMap(0.5), src)
    return src, dst


def test_grid_mismatch_rejected():
    src, _ = _family(turns=50)
    other = sv.generate(sv.SpiralSpec(kind="polynomial", p=0.5, turns=49, samples_per_turn=32))
    with pytest.raises(GridMismatchError):
        sv.empirical_holder(src, other)


def test_identity_map_saturates_at_one():
    src, _ = _family(turns=200)
    est = sv.empirical_holder(src, src, n_pairs=50_000)
    assert est.best_alpha == 1.0
    assert est.saturated
    assert est.envelope_ratios[-1] == pytest.approx(1.0, abs=1e-12)
    assert est.lipschitz_seminorm == pytest.approx(1.0, rel=1e-12)


def test_sqrt_family_localized():
    src, dst = _family()
    est = sv.empirical_holder(src, dst, n_pairs=200_000)
    assert est.best_alpha == pytest.approx(0.5, abs=0.02)
    assert not est.saturated
    # the envelope rises on both sides of the sharp exponent
    k = int(np.argmin(est.envelope_ratios))
    assert est.envelope_ratios[k + 10] > est.envelope_ratios[k]
    assert est.envelope_ratios[k - 10] > est.envelope_ratios[k]


def test_estimate_deterministic_per_seed():
    src, dst = _family(turns=500)
    a = sv.empirical_holder(src, dst, n_pairs=50_000, seed=3)
    b = sv.empirical_holder(src, dst, n_pairs=50_000, seed=3)
    assert a.best_alpha == b.best_alpha
    np.testing.assert_array_equal(a.envelope_ratios, b.envelope_ratios)


def test_inverse_direction_is_lipschitz():
    src, dst = _family(turns=500)
    est = sv.empirical_holder(dst, src, n_pairs=50_000)
    assert est.best_alpha == 1.0
    assert est.saturated
    # squaring the modulus is Lipschitz on a bounded set: constant ~ 2 r_max
    assert est.lipschitz_seminorm <= 2 * (2 * np.pi) ** -0.5


def test_alpha_step_validation():
    src, dst = _family(turns=50)
    with pytest.raises(ParameterError):
        sv.empirical_holder(src, dst, alpha_step=0.3)


# --- closed-form bounds -----------------------------------------------------


def test_bounds_validation():
    with pytest.raises(ParameterError):
        sv.exponent_bounds(0.0, 1.0, 0.5, 0.5)
    with pytest.raises(ParameterError):
        sv.exponent_bounds(1.0, 0.5, 0.5, 0.5)  # q < p
    with pytest.raises(ParameterError):
        sv.exponent_bounds(1.0, 1.0, 0.8, 0.5)  # s < r
    with pytest.raises(ParameterError):
        sv.exponent_bounds(1.0, 1.0, 1.2, 1.5)  # target must contract: r <= 1


@pytest.mark.parametrize(
    "pqrs, general, stretch",
    [
        ((0.6, 0.6, 0.5, 0.5), Fraction(11, 12), Fraction(5, 6)),
        ((0.6, 1.0, 0.5, 0.5), Fraction(7, 8), Fraction(5, 6)),
        ((0.6, 2.0, 0.5, 0.5), Fraction(43, 52), Fraction(5, 6)),
    ],
)
def test_rational_benchmarks(pqrs, general, stretch):
    b = sv.exponent_bounds(*pqrs)
    assert b.general_bound == pytest.approx(float(general), rel=1e-12)
    assert b.stretch_bound == pytest.approx(float(stretch), rel=1e-12)


def test_crossover_in_q():
    # with p=3/5, r=s=1/2 the two bounds trade places at q = 9/5
    vals = {}
    for q in (1.5, 1.8, 2.0):
        b = sv.exponent_bounds(0.6, q, 0.5, 0.5)
        vals[q] = (b.general_bound, b.stretch_bound)
    assert vals[1.5][0] > vals[1.5][1]
    assert vals[1.8][0] == pytest.approx(vals[1.8][1], rel=1e-12)
    assert vals[2.0][0] < vals[2.0][1]
    assert sv.exponent_bounds(0.6, 2.0, 0.5, 0.5).tightest_source == "general"
    assert sv.exponent_bounds(0.6, 1.0, 0.5, 0.5).tightest_source == "stretch"


def test_steep_source_case():
    b = sv.exponent_bounds(2.0, 2.0, 0.5, 0.5)
    assert b.general_case == "p>1"
    assert b.general_bound == pytest.approx(1.5 / 2.0, rel=1e-12)
    assert b.stretch_bound == pytest.approx(0.25, rel=1e-12)
    assert b.tightest == b.stretch_bound


def test_general_bound_continuous_across_p_equal_one():
    # the two closed forms agree where they meet (needs q >= p on both sides)
    lo = sv.exponent_bounds(1.0 - 1e-9, 2.0, 0.5, 0.5)
    hi = sv.exponent_bounds(1.0 + 1e-9, 2.0, 0.5, 0.5)
    assert lo.general_bound == pytest.approx(0.75, abs=1e-6)
    assert hi.general_bound == pytest.approx(0.75, abs=1e-6)


def test_stretch_bound_never_above_general_for_matched_decay():
    # mapping S_p -> S_r by the radial stretch with beta = r/p: whenever the
    # stretch applies (r <= p) it is at least as sharp as the generic bound
    # for circular spirals (p = q, r = s)
    for p in (0.5, 0.8, 1.0, 1.5):
        for r in (0.3, 0.5):
            if r > p:
                continue
            b = sv.exponent_bounds(p, p, r, r)
            assert b.stretch_bound <= b.general_bound + 1e-12


def test_qc_threshold():
    b = sv.exponent_bounds(0.6, 2.0, 0.5, 0.5)
    assert b.qc_threshold == pytest.approx(1.2, rel=1e-12)


def test_bounds_lie_in_unit_interval():
    rng = np.random.default_rng(0)
    for _ in range(100):
        p = float(rng.uniform(0.1, 3.0))
        q = float(rng.uniform(p, 3.5))
        r = float(rng.uniform(0.05, 1.0))
        s = float(rng.uniform(r, 3.0))
        b = sv.exponent_bounds(p, q, r, s)
        assert 0 < b.tightest <= 1.0
        assert b.tightest == min(b.general_bound, b.stretch_bound, 1.0)
