import pytest

from algorithms.estimators import certify_threshold
from algorithms.utils import RngStream
from cli.services.trial_service import TrialService
from cli.services.verify_service import BernoulliSampler


@pytest.mark.parametrize("workers, chunk_size", [(0, 8), (1, 0)])
def test_rejects_arguments(workers, chunk_size):
    with pytest.raises(ValueError):
        TrialService(workers, chunk_size)


def test_batch_size():
    assert TrialService(3, 16).batch_size == 48


def test_results_in_trial_order():
    sampler = BernoulliSampler(0.5)
    streams = [RngStream(11, k) for k in range(50)]
    with TrialService(1, 4) as serial:
        a = serial(sampler, streams)
    with TrialService(2, 4) as pool:
        b = pool(sampler, streams)
    assert a == b == [sampler(s) for s in streams]


def test_certificate_independent_of_workers():
    sampler = BernoulliSampler(0.97)
    rng = RngStream(5)
    sequential = certify_threshold(sampler, rng, batch_size=1)
    with TrialService(2, 8) as service:
        pooled = certify_threshold(sampler, rng, trial_map=service, batch_size=service.batch_size)
    assert (pooled.verdict, pooled.trials, pooled.successes) == (
        sequential.verdict, sequential.trials, sequential.successes
    )
