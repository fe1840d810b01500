import math

import hypothesis.strategies as st
import pytest
from hypothesis import given

from algorithms.estimators import (
    LAMBDA_C_REFERENCE,
    BoxCrossingSampler,
    estimate_lambda_c,
    estimate_r_c_of_t,
    probe,
    scale_radius,
    square_lattice_crossing,
    unit_intensity_radii,
)
from algorithms.estimators.estimators import bisect_half
from algorithms.utils import RngStream

positive = st.floats(min_value=0.01, max_value=100.0, allow_nan=False, allow_infinity=False)


@given(positive, positive, positive)
def test_scale_radius_keeps_lambda_r2(lam, r, lam2):
    r2 = scale_radius(lam, r, lam2)
    assert lam2 * r2 * r2 == pytest.approx(lam * r * r, rel=1e-12)


def test_scale_radius_rejects():
    with pytest.raises(ValueError):
        scale_radius(0.0, 0.5, 1.0)


def test_unit_intensity_radii():
    radii = unit_intensity_radii()
    assert radii["lattice"] == pytest.approx(0.5 * math.sqrt(2.0 / math.sqrt(3.0)))
    assert radii["poisson"] == pytest.approx(0.5 * math.sqrt(LAMBDA_C_REFERENCE))
    assert radii["lattice"] < radii["poisson"]


def test_box_sampler_unknown_process(rng):
    with pytest.raises(ValueError):
        BoxCrossingSampler("hexagonal", 5.0, 0.5)(rng)


def test_probe_counts(rng):
    result = probe(BoxCrossingSampler("triangular", 5.0, 0.5), 0.5, 10, rng)
    assert (result.trials, result.successes) == (10, 10)
    assert result.lo < 1.0 == result.hi


def test_bisection_needs_sign_change(rng):
    with pytest.raises(RuntimeError):
        bisect_half(lambda p: (lambda s: True), (0.1, 1.0), 5, rng)


def test_r_c_at_time_zero(rng):
    estimate = estimate_r_c_of_t(0.0, rng, box_side=10.0, trials_per_probe=2, steps=6)
    assert estimate.point <= 0.5
    assert estimate.bracket[1] == 0.5
    assert estimate.verified
    assert estimate.parameter == "radius"


def test_lambda_boxes_must_increase(rng):
    with pytest.raises(ValueError):
        estimate_lambda_c(rng, box_sides=[40.0, 20.0])


def test_probe_streams_reproducible():
    sampler = BoxCrossingSampler("poisson", 8.0, 1.4)
    a = probe(sampler, 1.4, 30, RngStream(4))
    b = probe(sampler, 1.4, 30, RngStream(4))
    assert a == b


@pytest.mark.slow
def test_lambda_c_small_box(rng):
    estimate = estimate_lambda_c(rng, box_sides=[20.0], trials_per_probe=200, steps=6)
    assert 1.0 < estimate.point < 2.0
    assert len(estimate.drift) == 1


def test_square_lattice_static(rng):
    # при t = 0 соседние шары касаются, крайние столбцы касаются сторон квадрата
    result = square_lattice_crossing(0.0, 5.5, 4, rng)
    assert (result.trials, result.successes) == (4, 4)
    with pytest.raises(ValueError):
        square_lattice_crossing(-0.1, 6.0, 4, rng)


@pytest.mark.slow
def test_poisson_far_above_critical_crosses(rng):
    result = probe(BoxCrossingSampler("poisson", 20.0, 3.0), 3.0, 1000, rng)
    assert result.phat > 0.99


@pytest.mark.parametrize("t", [0.01, 1.0])
def test_perturbed_lattice_radius_monotone(t, rng):
    small = probe(BoxCrossingSampler("triangular", 20.0, 0.45, t=t), 0.45, 100, rng)
    large = probe(BoxCrossingSampler("triangular", 20.0, 0.65, t=t), 0.65, 100, rng)
    assert small.phat < large.phat
