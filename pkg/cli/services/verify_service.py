"""
Набор проверок verify

Каждая проверка получает собственный подпоток и возвращает CheckResult.
Результаты не зависят от числа процессов: испытания собираются по номерам.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform
from scipy.stats import norm

from algorithms.cluster import IntersectionGraph, box_crossing, point_set_diameter
from algorithms.crossing import ATSampler, build_fixture
from algorithms.domination import (
    DominationParams,
    J_size_bounds,
    build_J,
    build_kernel,
    gaussian_density,
    hexagonal_flower,
    monotone_edge_preservation,
    path_law_1_over_m_factorial,
    well_behaved_probability,
)
from algorithms.estimators import (
    CROSSING_THRESHOLD,
    DEFAULT_CONFIDENCE,
    LAMBDA_C_REFERENCE,
    TrialMap,
    Verdict,
    certify_threshold,
    chernoff_binomial,
    chernoff_poisson,
    estimate_lambda_c,
    estimate_r_c_of_t,
    gaussian_tail,
    scale_radius,
    trials_to_certify,
)
from algorithms.geometry import AABB, HexTessellation
from algorithms.pointproc import PointSet, figure2_configuration
from algorithms.utils import DEFAULT_RADIUS, TRIANGULAR_DENSITY, RngStream, as_generator
from cli.schemas import CheckResult

logger = logging.getLogger(__name__)


@dataclass
class ConstantSampler:
    """Испытание с постоянным исходом"""
    value: bool

    def __call__(self, stream: RngStream) -> bool:
        return self.value


@dataclass
class BernoulliSampler:
    """Испытание Бернулли с вероятностью успеха p"""
    p: float

    def __call__(self, stream: RngStream) -> bool:
        return bool(stream.generator().random() < self.p)


CheckFn = Callable[[RngStream, Optional[TrialMap], bool], Tuple[bool, str]]


# Механика порога

def check_constant_true(rng, trial_map, quick) -> Tuple[bool, str]:
    expected = trials_to_certify(CROSSING_THRESHOLD, DEFAULT_CONFIDENCE)
    cert = certify_threshold(ConstantSampler(True), rng, trial_map=trial_map)
    ok = cert.verdict is Verdict.CERTIFIED and cert.trials == expected == 63
    return ok, f"certified after {cert.trials} trials (expected {expected})"


def check_constant_false(rng, trial_map, quick) -> Tuple[bool, str]:
    cert = certify_threshold(ConstantSampler(False), rng, trial_map=trial_map)
    return cert.verdict is Verdict.REFUTED, f"{cert.verdict.value} after {cert.trials} trials"


def check_bernoulli_refuted(rng, trial_map, quick) -> Tuple[bool, str]:
    cert = certify_threshold(BernoulliSampler(0.80), rng, max_trials=10000, trial_map=trial_map)
    return cert.verdict is Verdict.REFUTED, f"{cert.verdict.value} after {cert.trials} trials"


# Масштабирование

def check_scale_radius(rng, trial_map, quick) -> Tuple[bool, str]:
    gen = as_generator(rng)
    n = 10000 if quick else 100000
    triples = gen.uniform(0.01, 100.0, (n, 3))
    worst = 0.0
    for lam, r, lam2 in triples:
        r2 = scale_radius(lam, r, lam2)
        worst = max(worst, abs(lam2 * r2 * r2 - lam * r * r) / (lam * r * r))
    return worst <= 1e-12, f"max relative error {worst:.3e} over {n} triples"


# Ядро и окрестность

def check_j_size(rng, trial_map, quick) -> Tuple[bool, str]:
    details = []
    ok = True
    for delta in (0.25, 0.1, 0.04):
        size = len(build_J(delta))
        low, high = J_size_bounds(delta)
        ok &= low <= size <= high
        details.append(f"delta={delta}: {size} in [{low:.1f}, {high:.1f}]")
    return ok, "; ".join(details)


def check_well_behaved(rng, trial_map, quick) -> Tuple[bool, str]:
    details = []
    ok = True
    for delta in (0.25, 0.1, 0.04):
        a = well_behaved_probability(DominationParams(delta=delta, t=1.0))
        b = well_behaved_probability(DominationParams(delta=delta, t=4.0))
        ok &= a >= 1.0 - 5.0 * delta and abs(a - b) <= 1e-12 * a
        details.append(f"delta={delta}: {a:.6f}")
    return ok, "; ".join(details)


def check_kernel_infimum(rng, trial_map, quick) -> Tuple[bool, str]:
    """phi_t не больше f_t на случайных парах точек и симметрично"""
    gen = as_generator(rng)
    params = DominationParams(delta=0.25, t=1.0)
    kernel = build_kernel(params)
    symmetric = bool(np.array_equal(kernel.phi_many(kernel.offsets), kernel.phi_many(-kernel.offsets)))

    tessellation = HexTessellation(params.cell_side)
    home = tessellation.cell(0, 0)
    picks = kernel.offsets[gen.integers(0, kernel.size, 2000)]
    box = home.bounds()
    xs = []
    while len(xs) < 2 * len(picks):
        cand = np.column_stack((gen.uniform(box.xmin, box.xmax, 4000), gen.uniform(box.ymin, box.ymax, 4000)))
        xs.extend(cand[home.contains(cand)])
    xs = np.array(xs)
    x, u = xs[:len(picks)], xs[len(picks):2 * len(picks)]
    shift = tessellation.center_of(picks[:, 0], picks[:, 1]) - np.array(home.center)
    y = u + shift
    f = gaussian_density(np.linalg.norm(y - x, axis=1), params.t)
    phi = kernel.phi_many(picks)
    below = bool(np.all(phi <= f * (1.0 + 1e-12)))
    return symmetric and below, f"symmetric={symmetric}, phi<=f on {len(picks)} pairs: {below}"


# Законы и связки

def check_path_law(rng, trial_map, quick) -> Tuple[bool, str]:
    trials = 20000 if quick else 100000
    details = []
    ok = True
    for m in (2, 3, 4, 5):
        result = path_law_1_over_m_factorial(m, 0.01, trials, rng.substream(m))
        ok &= result.consistent
        details.append(f"m={m}: {result.frequency:.5f} vs {result.expected:.5f}")
    return ok, "; ".join(details)


def check_monotone_coupling(rng, trial_map, quick) -> Tuple[bool, str]:
    trials = 200 if quick else 1000
    result = monotone_edge_preservation(hexagonal_flower(), [0.001, 0.01, 0.1], trials, rng)
    freqs = ", ".join(f"{f:.3f}" for f in result.frequencies)
    return result.pathwise_monotone, f"frequencies {freqs} over {trials} seeds"


# Оракулы компонент

def _canonical(labels: np.ndarray) -> np.ndarray:
    """Метка компоненты = наименьший индекс ее узла"""
    first = {}
    return np.array([first.setdefault(int(label), i) for i, label in enumerate(labels)])


def check_union_find_oracle(rng, trial_map, quick) -> Tuple[bool, str]:
    gen = as_generator(rng)
    instances = 100 if quick else 1000
    for k in range(instances):
        n = int(gen.integers(1, 301))
        side = math.sqrt(n / 1.2) + 1.0
        pts = gen.uniform(0.0, side, (n, 2))
        graph = IntersectionGraph(PointSet(pts, 0.5))
        if n > 1:
            adjacency = csr_matrix(squareform(pdist(pts, 'sqeuclidean')) <= 1.0)
            _, oracle = connected_components(adjacency, directed=False)
        else:
            oracle = np.zeros(1, dtype=np.int64)
        if not np.array_equal(_canonical(graph.labels()), _canonical(oracle)):
            return False, f"instance {k}: component mismatch (n={n})"
        for members in graph.components():
            brute = float(pdist(pts[members]).max()) if len(members) > 1 else 0.0
            if abs(point_set_diameter(pts[members]) - brute) > 1e-12:
                return False, f"instance {k}: diameter mismatch"
    return True, f"{instances} instances agree"


def check_hull_diameter(rng, trial_map, quick) -> Tuple[bool, str]:
    gen = as_generator(rng)
    pts = gen.standard_normal((6000, 2))
    fast = point_set_diameter(pts)
    brute = 0.0
    for start in range(0, len(pts), 500):
        block = pts[start:start + 500]
        d = block[:, None, :] - pts[None, :, :]
        brute = max(brute, float(np.sqrt(np.einsum("ijk,ijk->ij", d, d).max())))
    return abs(fast - brute) <= 1e-9, f"hull {fast:.9f} vs brute {brute:.9f}"


# Оценки хвостов

def check_tail_bounds(rng, trial_map, quick) -> Tuple[bool, str]:
    gen = as_generator(rng)
    draws = 100000 if quick else 1000000
    failures = []

    lam, eps = 20.0, 0.3
    above, below = chernoff_poisson(lam, eps)
    x = gen.poisson(lam, draws)
    if np.mean(x >= (1 + eps) * lam) > above or np.mean(x <= (1 - eps) * lam) > below:
        failures.append("poisson")

    n, p, eps = 100, 0.5, 0.2
    x = gen.binomial(n, p, draws)
    if np.mean(x >= (1 + eps) * n * p) > chernoff_binomial(n, n * p, eps):
        failures.append("binomial")

    z = gen.standard_normal(draws)
    for radius in (1.0, 2.0, 3.0, 5.0):
        bound = gaussian_tail(1.0, radius)
        # при R = 5 ожидается меньше одного превышения на выборку
        if bound < norm.sf(radius) or np.mean(z >= radius) > bound + 4.0 * math.sqrt(bound / draws):
            failures.append(f"gaussian R={radius}")
    return not failures, "all bounds dominate" if not failures else "violated: " + ", ".join(failures)


# Пересечения

def check_crossing_t0(rng, trial_map, quick) -> Tuple[bool, str]:
    fixture = build_fixture(10.0)
    cert = certify_threshold(ATSampler(fixture, 0.0), rng, trial_map=trial_map)
    ok = cert.verdict is Verdict.CERTIFIED and cert.trials == 63
    return ok, f"side 10, t=0: {cert.verdict.value} after {cert.trials} trials"


def check_r_c_at_zero(rng, trial_map, quick) -> Tuple[bool, str]:
    estimate = estimate_r_c_of_t(0.0, rng, box_side=10.0, trials_per_probe=2, steps=6, trial_map=trial_map)
    return estimate.point <= 0.5, f"r_c(0) estimate {estimate.point:.6f}, bracket {estimate.bracket}"


def check_figure2_static(rng, trial_map, quick) -> Tuple[bool, str]:
    window = AABB.square(60.0)
    crossed = box_crossing(figure2_configuration(window), window)
    return not crossed, f"time-0 superposed configuration crosses: {crossed}"


# Критические значения

# Окно для вилки lambda_c на квадратах 20 и 40
LAMBDA_C_WINDOW = (1.25, 1.65)
R_C_TOLERANCE = 0.05


def check_lambda_c_window(rng, trial_map, quick) -> Tuple[bool, str]:
    low, high = LAMBDA_C_WINDOW
    sides, trials = ([20.0], 200) if quick else ([20.0, 40.0], 1000)
    estimate = estimate_lambda_c(rng, box_sides=sides, trials_per_probe=trials, trial_map=trial_map)
    lo, hi = estimate.bracket
    if quick:
        ok = low <= estimate.point <= high
    else:
        ok = low <= lo and hi <= high and lo <= LAMBDA_C_REFERENCE <= hi
    return ok, f"lambda_c {estimate.point:.4f}, bracket [{lo:.4f}, {hi:.4f}], window [{low}, {high}]"


def check_r_c_large_t(rng, trial_map, quick) -> Tuple[bool, str]:
    # при больших t решетка близка к пуассоновскому процессу той же плотности
    target = scale_radius(LAMBDA_C_REFERENCE, DEFAULT_RADIUS, TRIANGULAR_DENSITY)
    box_side, trials = (20.0, 50) if quick else (50.0, 200)
    estimate = estimate_r_c_of_t(100.0, rng, box_side=box_side, trials_per_probe=trials, trial_map=trial_map)
    lo, hi = estimate.bracket
    ok = hi >= 0.52 and abs(estimate.point - target) <= R_C_TOLERANCE
    return ok, f"r_c(100) {estimate.point:.4f}, bracket [{lo:.4f}, {hi:.4f}], target {target:.4f}"


CHECKS: List[Tuple[str, CheckFn]] = [
    ("threshold-constant-true", check_constant_true),
    ("threshold-constant-false", check_constant_false),
    ("threshold-bernoulli-refuted", check_bernoulli_refuted),
    ("scale-radius-invariant", check_scale_radius),
    ("j-size-bounds", check_j_size),
    ("well-behaved-bound", check_well_behaved),
    ("kernel-infimum-symmetry", check_kernel_infimum),
    ("path-law", check_path_law),
    ("monotone-coupling", check_monotone_coupling),
    ("union-find-oracle", check_union_find_oracle),
    ("hull-diameter", check_hull_diameter),
    ("tail-bounds", check_tail_bounds),
    ("crossing-t0", check_crossing_t0),
    ("r-c-at-zero", check_r_c_at_zero),
    ("figure2-static", check_figure2_static),
    ("lambda-c-window", check_lambda_c_window),
    ("r-c-large-t", check_r_c_large_t),
]


class VerifyService:
    """Запуск набора проверок"""

    @staticmethod
    def names() -> List[str]:
        return [name for name, _ in CHECKS]

    @staticmethod
    def run(
        rng: RngStream,
        trial_map: Optional[TrialMap] = None,
        quick: bool = False,
        only: Optional[List[str]] = None,
        on_check: Optional[Callable[[CheckResult], None]] = None,
    ) -> List[CheckResult]:
        """
        Выполнение проверок; проверка номер k использует rng.substream(k)

        Исключение внутри проверки засчитывается как провал с текстом ошибки.

        Raises:
            ValueError: Если в only есть неизвестные имена
        """
        if only:
            unknown = sorted(set(only) - set(VerifyService.names()))
            if unknown:
                raise ValueError(f"Неизвестные проверки: {', '.join(unknown)}")
        results: List[CheckResult] = []
        for index, (name, check) in enumerate(CHECKS):
            if only and name not in only:
                continue
            try:
                passed, detail = check(rng.substream(index), trial_map, quick)
            except (ValueError, RuntimeError) as e:
                logger.exception("Check %s raised", name)
                passed, detail = False, f"{type(e).__name__}: {e}"
            result = CheckResult(name=name, passed=bool(passed), detail=detail)
            logger.info("Check %s: %s", name, "passed" if result.passed else "FAILED")
            results.append(result)
            if on_check is not None:
                on_check(result)
        return results
