from .pointproc import (
    PointSet,
    SiteField,
    brownian_displace,
    brownian_displacements,
    brownian_scaling_couple,
    figure2_configuration,
    lattice_pointset,
    perturbed_figure2,
    perturbed_lattice,
    poisson_marks,
    sample_poisson_pp,
    sample_site_field,
    thin_marks,
    wrap_to_window,
)

__all__ = [
    'PointSet', 'SiteField', 'brownian_displace', 'brownian_displacements',
    'brownian_scaling_couple', 'figure2_configuration', 'lattice_pointset',
    'perturbed_figure2', 'perturbed_lattice', 'poisson_marks', 'sample_poisson_pp',
    'sample_site_field', 'thin_marks', 'wrap_to_window',
]
