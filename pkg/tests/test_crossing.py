import math

import numpy as np
import pytest

from algorithms.crossing import (
    ATSampler,
    PairedSampler,
    build_fixture,
    crossing_summary,
    expected_candidate_count,
    indicator_correlation,
    one_dependence_check,
    outcome_for_positions,
    sample_A_t,
)
from algorithms.utils import RngStream


def test_candidates_inside_pair(pair10):
    assert np.all(pair10.region.contains(pair10.candidates))
    assert len(pair10.candidates) == pytest.approx(expected_candidate_count(10.0), rel=0.1)


def test_fixture_invalid_side():
    with pytest.raises(ValueError):
        build_fixture(0.0)


def test_time_zero_always_crosses(pair10, rng):
    outcome = sample_A_t(pair10, 0.0, rng.with_index(3))
    assert outcome.success
    assert (outcome.cond1, outcome.cond2, outcome.cond3) == (True, True, True)
    assert outcome.nodes_used == len(pair10.candidates)
    assert outcome.trial == 3


def test_time_zero_strict_path(pair10, rng):
    assert sample_A_t(pair10, 0.0, rng, strict_path=True).success


def test_negative_time(pair10, rng):
    with pytest.raises(ValueError):
        sample_A_t(pair10, -1.0, rng)


def test_outcome_reproducible(pair10):
    stream = RngStream(77, 5)
    assert sample_A_t(pair10, 0.05, stream) == sample_A_t(pair10, 0.05, stream)


def test_strict_implies_loose(pair10):
    sampler_loose = ATSampler(pair10, 0.2)
    sampler_strict = ATSampler(pair10, 0.2, strict_path=True)
    for k in range(20):
        stream = RngStream(3, k)
        loose, strict = sampler_loose(stream), sampler_strict(stream)
        for name in ("cond1", "cond2", "cond3"):
            if getattr(strict, name):
                assert getattr(loose, name)


def test_far_displacement_breaks_crossing(pair10):
    moved = pair10.candidates + np.array([1000.0, 0.0])
    outcome = outcome_for_positions(pair10, moved, 1.0)
    assert not outcome.success
    assert outcome.nodes_used == 0


def test_summary_frequencies(pair10):
    outcomes = [ATSampler(pair10, 0.0)(RngStream(1, k)) for k in range(4)]
    summary = crossing_summary(outcomes)
    assert summary["success"] == 1.0
    assert summary["mean_nodes_used"] == len(pair10.candidates)


def _frequency(fixture, t, trials, rng, attribute="success"):
    sampler = ATSampler(fixture, t)
    return sum(getattr(sampler(rng.with_index(k)), attribute) for k in range(trials)) / trials


def _binomial_sigma(p, q, trials):
    return math.sqrt((p * (1.0 - p) + q * (1.0 - q)) / trials)


@pytest.mark.slow
def test_crossing_trend_non_increasing(pair10, rng):
    trials = 400
    freqs = [_frequency(pair10, s, trials, rng) for s in (0.0, 0.0025, 0.01, 0.04)]
    assert freqs[0] == 1.0
    for earlier, later in zip(freqs, freqs[1:]):
        assert later <= earlier + 3.0 * _binomial_sigma(earlier, later, trials) + 1.0 / trials


@pytest.mark.slow
def test_conditions_two_and_three_symmetric(pair10, rng):
    trials = 400
    cond2 = _frequency(pair10, 0.1, trials, rng, "cond2")
    cond3 = _frequency(pair10, 0.1, trials, rng, "cond3")
    assert abs(cond2 - cond3) <= 3.0 * _binomial_sigma(cond2, cond3, trials) + 1.0 / trials


# Два набора шестиугольников

def test_overlapping_pairs_rejected(pair10):
    neighbour = build_fixture(10.0, offset=(0, 1))
    with pytest.raises(ValueError):
        PairedSampler(pair10, neighbour, 0.01)


def test_identical_pairs_fully_correlated(pair10, rng):
    result = one_dependence_check(pair10, pair10, 0.3, 6, rng)
    assert result.rho == 1.0
    assert result.freq_a == result.freq_b == result.joint


def test_separated_pairs_share_lattice(pair10):
    far = build_fixture(10.0, offset=(3, 0))
    sampler = PairedSampler(pair10, far, 0.0)
    assert sampler(RngStream(1, 0)) == (True, True)
    assert len(sampler.unique_keys) == len(pair10.candidates) + len(far.candidates)


def test_indicator_correlation_constant():
    assert indicator_correlation([True, True, True], [True, False, True]) == 0.0
    assert indicator_correlation([True, False], [True, False]) == 1.0


@pytest.mark.slow
def test_disjoint_pairs_uncorrelated(pair10, rng):
    far = build_fixture(10.0, offset=(3, 0))
    result = one_dependence_check(pair10, far, 0.05, 10000, rng)
    assert abs(result.rho) < 0.04
