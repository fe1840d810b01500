from .domination import (
    DominationParams,
    EdgePreservationResult,
    EmptyHexagonResult,
    FieldSummary,
    HexKernel,
    PathLawResult,
    ResidualIntensity,
    WellBehavedCheck,
    J_size_bounds,
    adjacent_pair_frequency,
    adjacent_pair_probability,
    build_J,
    build_kernel,
    empty_hexagon_bound,
    empty_hexagon_probability,
    gaussian_density,
    good_displacements,
    hexagonal_flower,
    monotone_edge_preservation,
    path_law_1_over_m_factorial,
    renormalization_field_demo,
    residual_intensity,
    residual_sweep,
    sup_cell_distance,
    well_behaved_lower_bound,
    well_behaved_monte_carlo,
    well_behaved_probability,
)

__all__ = [
    'DominationParams', 'EdgePreservationResult', 'EmptyHexagonResult', 'FieldSummary',
    'HexKernel', 'PathLawResult', 'ResidualIntensity', 'WellBehavedCheck',
    'J_size_bounds', 'adjacent_pair_frequency', 'adjacent_pair_probability', 'build_J',
    'build_kernel', 'empty_hexagon_bound', 'empty_hexagon_probability', 'gaussian_density',
    'good_displacements',
    'hexagonal_flower', 'monotone_edge_preservation', 'path_law_1_over_m_factorial',
    'renormalization_field_demo', 'residual_intensity', 'residual_sweep', 'sup_cell_distance',
    'well_behaved_lower_bound', 'well_behaved_monte_carlo', 'well_behaved_probability',
]
