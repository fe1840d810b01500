import pytest

from cli.services.verify_service import CHECKS, VerifyService


def test_check_names():
    names = VerifyService.names()
    assert len(names) == len(CHECKS) == len(set(names))
    assert names[0] == "threshold-constant-true"
    # номер проверки задает ее подпоток
    assert names.index("figure2-static") == 14
    assert names[-2:] == ["lambda-c-window", "r-c-large-t"]


def test_unknown_check(rng):
    with pytest.raises(ValueError):
        VerifyService.run(rng, only=["no-such-check"])


@pytest.mark.parametrize("name", [
    "threshold-constant-true",
    "threshold-constant-false",
    "scale-radius-invariant",
    "j-size-bounds",
    "figure2-static",
    "crossing-t0",
    "r-c-at-zero",
    "tail-bounds",
])
def test_cheap_checks_pass(rng, name):
    results = VerifyService.run(rng, quick=True, only=[name])
    assert [r.name for r in results] == [name]
    assert results[0].passed, results[0].detail


def test_on_check_callback(rng):
    seen = []
    only = ["threshold-constant-true", "threshold-constant-false"]
    results = VerifyService.run(rng, quick=True, only=only, on_check=seen.append)
    assert seen == results
    assert [r.name for r in seen] == only


@pytest.mark.slow
def test_full_quick_suite(rng):
    results = VerifyService.run(rng, quick=True)
    failed = [r.name for r in results if not r.passed]
    assert not failed


@pytest.mark.slow
@pytest.mark.parametrize("name", ["lambda-c-window", "r-c-large-t"])
def test_critical_value_checks_quick(rng, name):
    result, = VerifyService.run(rng, quick=True, only=[name])
    assert result.passed, result.detail
