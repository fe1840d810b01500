from .crossing import (
    CONDITIONS,
    ATSampler,
    CrossingOutcome,
    DependenceResult,
    PairFixture,
    PairedSampler,
    build_fixture,
    crossing_summary,
    expected_candidate_count,
    indicator_correlation,
    one_dependence_check,
    outcome_for_positions,
    sample_A_t,
)

__all__ = [
    'CONDITIONS', 'ATSampler', 'CrossingOutcome', 'DependenceResult', 'PairFixture',
    'PairedSampler', 'build_fixture', 'crossing_summary', 'expected_candidate_count',
    'indicator_correlation', 'one_dependence_check', 'outcome_for_positions', 'sample_A_t',
]
