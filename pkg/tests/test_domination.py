import math

import numpy as np
import pytest

from algorithms.domination import (
    DominationParams,
    J_size_bounds,
    adjacent_pair_frequency,
    adjacent_pair_probability,
    build_J,
    build_kernel,
    empty_hexagon_bound,
    empty_hexagon_probability,
    good_displacements,
    hexagonal_flower,
    monotone_edge_preservation,
    path_law_1_over_m_factorial,
    renormalization_field_demo,
    residual_intensity,
    sup_cell_distance,
    well_behaved_monte_carlo,
    well_behaved_probability,
)
from algorithms.geometry import AABB
from algorithms.pointproc import PointSet


# Параметры и окрестность

def test_params_constant():
    params = DominationParams(delta=0.04, t=9.0)
    assert params.C == 4.0 * 0.04 ** -1.5
    assert params.cell_side == pytest.approx(0.12)


@pytest.mark.parametrize("delta", [0.0, 1.5, -0.1])
def test_params_reject_delta(delta):
    with pytest.raises(ValueError):
        DominationParams(delta=delta)


@pytest.mark.parametrize("delta", [0.25, 0.1, 0.04])
def test_J_size_within_bounds(delta):
    low, high = J_size_bounds(delta)
    assert low <= len(build_J(delta)) <= high


def test_J_symmetric():
    offsets = build_J(0.25)
    assert {tuple(o) for o in offsets.tolist()} == {tuple(o) for o in (-offsets).tolist()}


def test_sup_distance_home_cell():
    # диаметр ячейки равен двум сторонам
    assert sup_cell_distance(np.array([[0, 0]]))[0] == pytest.approx(2.0)


# Ядро

def test_kernel_symmetric():
    kernel = build_kernel(DominationParams(delta=0.25, t=1.0))
    assert np.array_equal(kernel.phi_many(kernel.offsets), kernel.phi_many(-kernel.offsets))


def test_kernel_zero_outside_J():
    kernel = build_kernel(DominationParams(delta=0.25, t=1.0))
    assert kernel.phi(kernel.reach + 5, 0) == 0.0
    assert kernel.transition_probabilities().sum() == pytest.approx(1.0)


@pytest.mark.parametrize("delta", [0.25, 0.1, 0.04])
def test_well_behaved_floor(delta):
    assert well_behaved_probability(DominationParams(delta=delta)) >= 1.0 - 5.0 * delta


@pytest.mark.parametrize("delta", [0.25, 0.1])
def test_well_behaved_scale_free(delta):
    a = well_behaved_probability(DominationParams(delta=delta, t=1.0))
    b = well_behaved_probability(DominationParams(delta=delta, t=4.0))
    assert abs(a - b) <= 1e-12 * a


def test_well_behaved_monte_carlo(rng):
    check = well_behaved_monte_carlo(DominationParams(delta=0.1, t=1.0), 20000, rng)
    assert abs(check.empirical - check.analytic) <= 4.0 * check.sigma


def test_residual_intensity_finite(rng):
    params = DominationParams(delta=0.04, t=1.0)
    result = residual_intensity(params, (0.3, 0.2))
    assert result.value >= 0.0
    assert result.tail >= 0.0
    assert result.nodes > 100
    assert math.isfinite(result.ratio)


def test_residual_truncation_radius():
    with pytest.raises(ValueError):
        residual_intensity(DominationParams(delta=0.04, t=1.0), (0.0, 0.0), truncation_radius=3.0)


# Пустой шестиугольник

def test_empty_hexagon_bound_domain():
    with pytest.raises(ValueError):
        empty_hexagon_bound(2.0)
    assert 0.0 < empty_hexagon_bound(10.0) < 1.0


def test_empty_hexagon_static(rng):
    small = empty_hexagon_probability(0.0, 5, rng, side=0.1)
    assert small.empty == 5
    large = empty_hexagon_probability(0.0, 5, rng, side=2.0)
    assert large.empty == 0
    assert large.bound is None


# Закон 1/m!

def test_path_law_single_node(rng):
    assert path_law_1_over_m_factorial(1, 0.01, 100, rng).frequency == 1.0


@pytest.mark.parametrize("m", [2, 3, 4])
def test_path_law_factorial(m, rng):
    result = path_law_1_over_m_factorial(m, 0.01, 100000, rng.substream(m))
    assert abs(result.frequency - 1.0 / math.factorial(m)) <= 4.0 * result.sigma


def test_good_displacements_bounded(rng):
    values = good_displacements((1000, 5), 0.2, rng.generator())
    assert np.all(np.abs(values) < 0.5)


def test_path_law_rejects(rng):
    with pytest.raises(ValueError):
        path_law_1_over_m_factorial(0, 0.01, 10, rng)


# Сохранение ребер

def test_coupled_preservation_monotone(rng):
    result = monotone_edge_preservation(hexagonal_flower(), [0.001, 0.01, 0.1], 300, rng)
    assert result.pathwise_monotone
    freqs = result.frequencies
    assert freqs[0] >= freqs[1] >= freqs[2]


def test_preservation_zero_time(rng):
    result = monotone_edge_preservation(hexagonal_flower(), [0.0, 0.05], 20, rng)
    assert result.frequencies[0] == 1.0


def test_preservation_requires_connected(rng):
    points = PointSet(np.array([[0.0, 0.0], [5.0, 0.0]]))
    with pytest.raises(ValueError):
        monotone_edge_preservation(points, [0.1], 10, rng)


def test_preservation_requires_increasing(rng):
    with pytest.raises(ValueError):
        monotone_edge_preservation(hexagonal_flower(), [0.1, 0.01], 10, rng)


# Поле ячеек и пара шаров

def test_field_extremes(rng):
    window = AABB.square(3.0)
    full = renormalization_field_demo(1.0, 0.1, window, rng)
    assert full.spans
    assert full.largest == full.cells
    empty = renormalization_field_demo(0.0, 0.1, window, rng)
    assert empty.open_cells == 0
    assert not empty.spans


def test_adjacent_pair_probability():
    assert adjacent_pair_probability(0.0) == 1.0
    assert adjacent_pair_probability(0.0, spacing=1.5) == 0.0
    assert 0.0 < adjacent_pair_probability(0.1) < 1.0


def test_adjacent_pair_frequency(rng):
    t, trials = 0.1, 100000
    analytic = adjacent_pair_probability(t)
    sigma = math.sqrt(analytic * (1 - analytic) / trials)
    assert abs(adjacent_pair_frequency(t, trials, rng) - analytic) <= 4.0 * sigma


def test_empty_hexagon_time_zero_requires_side(rng):
    with pytest.raises(ValueError, match="side"):
        empty_hexagon_probability(0.0, 5, rng)
    assert empty_hexagon_probability(0.0, 5, rng, k=3.0, side=0.1).side == 0.1
