import math

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from algorithms.estimators import Verdict, certify_threshold, clopper_pearson
from algorithms.estimators.confidence import CROSSING_THRESHOLD, trials_to_certify
from algorithms.utils import RngStream


def always(stream):
    return True


def never(stream):
    return False


class Bernoulli:
    def __init__(self, p):
        self.p = p

    def __call__(self, stream):
        return bool(stream.generator().random() < self.p)


def reversed_map(sampler, streams):
    # испытания в обратном порядке, результаты в порядке номеров
    results = [sampler(s) for s in reversed(list(streams))]
    return results[::-1]


# Интервал Клоппера-Пирсона

def test_known_interval():
    ci = clopper_pearson(5, 10, 0.95)
    assert ci.lower == pytest.approx(0.187086, abs=1e-6)
    assert ci.upper == pytest.approx(0.812914, abs=1e-6)


def test_interval_edges():
    assert clopper_pearson(0, 20).lower == 0.0
    assert clopper_pearson(20, 20).upper == 1.0


def test_one_sided_zero_failures():
    # n успехов из n: нижняя граница равна (1 - confidence)^(1/n)
    ci = clopper_pearson(63, 63, 0.9999, sided="one")
    assert ci.lower == pytest.approx(1e-4 ** (1 / 63), rel=1e-9)


@pytest.mark.parametrize("k, n, confidence", [(-1, 5, 0.9), (6, 5, 0.9), (0, 0, 0.9), (1, 5, 1.0)])
def test_interval_rejects(k, n, confidence):
    with pytest.raises(ValueError):
        clopper_pearson(k, n, confidence)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=5000).flatmap(
    lambda n: st.tuples(st.integers(min_value=0, max_value=n), st.just(n))
), st.sampled_from([0.9, 0.95, 0.9973, 0.9999]))
def test_interval_contains_estimate(case, confidence):
    k, n = case
    ci = clopper_pearson(k, n, confidence)
    assert 0.0 <= ci.lower <= ci.phat <= ci.upper <= 1.0
    one = clopper_pearson(k, n, confidence, sided="one")
    assert one.lower >= ci.lower - 1e-12
    assert one.upper <= ci.upper + 1e-12


# Сертификация порога

def test_trials_to_certify():
    assert trials_to_certify(CROSSING_THRESHOLD, 0.9999) == 63
    assert trials_to_certify(CROSSING_THRESHOLD, 0.9999) == math.ceil(math.log(1e-4) / math.log(0.8639))


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 64 - 1))
def test_constant_true_certifies_in_63(seed):
    cert = certify_threshold(always, RngStream(seed))
    assert cert.verdict is Verdict.CERTIFIED
    assert cert.trials == 63
    assert cert.successes == 63


def test_constant_false_refuted(rng):
    cert = certify_threshold(never, rng)
    assert cert.verdict is Verdict.REFUTED
    assert cert.trials < 10


def test_bernoulli_refuted(rng):
    cert = certify_threshold(Bernoulli(0.80), rng, max_trials=10000)
    assert cert.verdict is Verdict.REFUTED


def test_fixed_mode_runs_all(rng):
    cert = certify_threshold(always, rng, max_trials=200, sequential=False, keep_outcomes=True)
    assert cert.trials == 200
    assert len(cert.outcomes) == 200
    assert cert.verdict is Verdict.CERTIFIED


def test_inconclusive_at_budget(rng):
    cert = certify_threshold(Bernoulli(0.8639), rng, max_trials=50)
    assert cert.verdict is Verdict.INCONCLUSIVE
    assert cert.trials == 50
    assert cert.ci.lower <= cert.threshold <= cert.ci.upper


def test_stopping_independent_of_batching(rng):
    sampler = Bernoulli(0.97)
    a = certify_threshold(sampler, rng, batch_size=1)
    b = certify_threshold(sampler, rng, batch_size=64)
    c = certify_threshold(sampler, rng, batch_size=7, trial_map=reversed_map)
    assert (a.trials, a.successes) == (b.trials, b.successes) == (c.trials, c.successes)
    assert a.verdict is b.verdict is c.verdict


def test_progress_callback(rng):
    calls = []
    certify_threshold(always, rng, batch_size=10, on_batch=lambda done, ok: calls.append((done, ok)))
    assert calls[-1] == (63, 63)
    assert [c[0] for c in calls] == [10, 20, 30, 40, 50, 60, 63]


@pytest.mark.parametrize("threshold", [0.0, 1.0, -0.5])
def test_threshold_range(rng, threshold):
    with pytest.raises(ValueError):
        certify_threshold(always, rng, threshold=threshold)


def test_max_trials_positive(rng):
    with pytest.raises(ValueError):
        certify_threshold(always, rng, max_trials=0)
