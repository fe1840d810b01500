import pytest
from pydantic import ValidationError

from cli.services.lab_service import CONSISTENT, LabService


def test_registry_names():
    names = LabService.names()
    assert names == sorted(names)
    assert {"path-law", "well-behaved", "residual", "figure2", "unit-radii", "j-size"} <= set(names)


def test_unknown_experiment():
    with pytest.raises(KeyError):
        LabService.get("percolate-everything")


def test_defaults_from_model():
    defaults = LabService.get("figure2").defaults()
    assert defaults == {"ts": [0.001, 1000.0], "window": 60.0, "seeds": 50}


def test_resolve_params_precedence():
    params = LabService.resolve_params("path-law", {"m": 4, "trials": 500}, {"trials": 20, "epsilon": None})
    assert params == {"m": 4, "epsilon": 0.01, "trials": 20}


def test_resolve_params_lists():
    params = LabService.resolve_params("edge-preservation", {}, {"s_list": [0.1, 0.2], "coupled": False})
    assert params["s_list"] == [0.1, 0.2]
    assert params["coupled"] is False


@pytest.mark.parametrize("from_file", [
    {"colour": "red"},
    {"m": "three"},
    {"m": 2.5},
    {"m": 0},
    {"trials": -1},
])
def test_resolve_params_rejects(from_file):
    with pytest.raises(ValidationError):
        LabService.resolve_params("path-law", from_file)


@pytest.mark.parametrize("name, flags", [
    ("edge-preservation", {"shape": "star"}),
    ("j-size", {"deltas": []}),
    ("j-size", {"deltas": "0.25,0.1"}),
    ("figure2", {"ts": [-1.0]}),
])
def test_resolve_params_rejects_values(name, flags):
    with pytest.raises(ValidationError):
        LabService.resolve_params(name, {}, flags)


def test_run_unit_radii(rng):
    params = LabService.resolve_params("unit-radii")
    outcome = LabService.run("unit-radii", params, rng)
    assert outcome.verdict == CONSISTENT
    assert outcome.details["lattice"] < outcome.details["poisson"]


def test_run_j_size(rng):
    params = LabService.resolve_params("j-size", flags={"deltas": [0.25, 0.1]})
    outcome = LabService.run("j-size", params, rng)
    assert outcome.verdict == CONSISTENT
    assert [row["delta"] for row in outcome.details["rows"]] == [0.25, 0.1]


def test_run_path_law(rng):
    params = LabService.resolve_params("path-law", flags={"trials": 20000})
    outcome = LabService.run("path-law", params, rng)
    assert outcome.trials == 20000
    assert outcome.ci.lower <= outcome.successes / outcome.trials <= outcome.ci.upper
    assert outcome.analytic_value == pytest.approx(1 / 6)


def test_run_edge_preservation_pair(rng):
    params = LabService.resolve_params("edge-preservation", flags={"shape": "pair", "trials": 50})
    outcome = LabService.run("edge-preservation", params, rng)
    assert outcome.verdict == CONSISTENT


def test_run_figure2_non_monotone(rng):
    params = LabService.resolve_params("figure2", flags={"seeds": 5})
    outcome = LabService.run("figure2", params, rng)
    first, last = outcome.details["rows"]
    assert first["crossings"] == 0
    assert last["frequency"] > 0.5
    assert outcome.verdict == CONSISTENT


def test_empty_hexagon_time_zero_needs_side():
    with pytest.raises(ValidationError):
        LabService.resolve_params("empty-hexagon", flags={"t": 0.0})
    assert LabService.resolve_params("empty-hexagon", flags={"t": 0.0, "side": 0.2})["side"] == 0.2
