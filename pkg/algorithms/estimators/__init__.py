from .bounds import chernoff_binomial, chernoff_poisson, gaussian_tail
from .confidence import (
    CROSSING_THRESHOLD,
    DEFAULT_CONFIDENCE,
    BinomialCI,
    Certificate,
    TrialMap,
    Verdict,
    certify_threshold,
    clopper_pearson,
    sequential_map,
    trials_to_certify,
)
from .estimators import (
    LAMBDA_C_REFERENCE,
    BoxCrossingSampler,
    CriticalEstimate,
    ProbeResult,
    bisect_half,
    estimate_lambda_c,
    estimate_r_c_of_t,
    probe,
    scale_radius,
    square_lattice_crossing,
    unit_intensity_radii,
)

__all__ = [
    'CROSSING_THRESHOLD', 'DEFAULT_CONFIDENCE', 'LAMBDA_C_REFERENCE',
    'BinomialCI', 'BoxCrossingSampler', 'Certificate', 'CriticalEstimate', 'ProbeResult',
    'TrialMap', 'Verdict',
    'bisect_half', 'certify_threshold', 'chernoff_binomial', 'chernoff_poisson',
    'clopper_pearson', 'estimate_lambda_c', 'estimate_r_c_of_t', 'gaussian_tail', 'probe',
    'scale_radius', 'sequential_map', 'square_lattice_crossing', 'trials_to_certify', 'unit_intensity_radii',
]
