import math

import numpy as np
import pytest
from scipy import integrate, stats

from app.core.exceptions import (
    DegenerateEnergyError, DegenerateFitError, EmptyHistogramError,
    OutOfRangeError, TooFewLevelsError
)
from app.models.measures import Histogram
from app.models.statmech import MaxEntProblem
from app.services.measures import histogram
from app.services.statmech import (
    fit_mb, fitted_counts, maxent_reference, mb_pdf_2d, mb_pdf_3d, solve_maxent
)
from tests.images import constant
from tests.oracles import maxent_grid


def mb_counts(b: float, scale: float = 1000.0) -> Histogram:
    i = np.arange(256, dtype=np.float64)
    return Histogram.from_counts(np.rint(scale * mb_pdf_2d(i, b)).astype(int).tolist())


# ==================== MÁXIMA ENTROPÍA ====================

def test_uniform_target_gives_zero_beta():
    solution = solve_maxent(MaxEntProblem(
        levels=[float(i) for i in range(256)], total_count=256, total_energy=256 * 127.5
    ))
    assert solution.beta == pytest.approx(0.0, abs=1e-12)
    assert solution.occupations == pytest.approx([1.0] * 256, abs=1e-9)


def test_two_level_solution():
    solution = solve_maxent(MaxEntProblem(levels=[0, 1], total_count=100, total_energy=25))
    assert solution.beta == pytest.approx(math.log(3), abs=1e-9)
    assert solution.occupations == pytest.approx([75.0, 25.0], abs=1e-9)


def test_three_level_solution_matches_grid_oracle():
    solution = solve_maxent(MaxEntProblem(levels=[0, 1, 2], total_count=1, total_energy=0.5))
    expected = maxent_grid([0, 1, 2], 1.0, 0.5)
    assert solution.occupations == pytest.approx(expected.tolist(), abs=1e-6)


def test_random_problems_match_grid_oracle():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        k = int(rng.integers(2, 5))
        levels = np.sort(rng.choice(21, size=k, replace=False)).astype(float).tolist()
        n = float(rng.uniform(0.5, 5.0))
        mean = levels[0] + float(rng.uniform(0.2, 0.8)) * (levels[-1] - levels[0])
        problem = MaxEntProblem(levels=levels, total_count=n, total_energy=n * mean)

        solution = solve_maxent(problem)
        expected = maxent_grid(levels, n, n * mean)
        assert solution.occupations == pytest.approx(expected.tolist(), abs=1e-6)

        # ln n_i es afín en ε_i con pendiente -beta
        fit = stats.linregress(levels, np.log(solution.occupations))
        assert fit.rvalue ** 2 > 1 - 1e-10
        assert fit.slope == pytest.approx(-solution.beta, rel=1e-6, abs=1e-9)


def test_solution_satisfies_constraints():
    problem = MaxEntProblem(levels=[0.0, 1.5, 4.0, 9.0], total_count=1000.0, total_energy=2500.0)
    solution = solve_maxent(problem)
    occupations = np.asarray(solution.occupations)
    levels = np.asarray(problem.levels)

    assert np.all(occupations > 0)
    assert abs(occupations.sum() - 1000.0) <= 1e-9 * 1000.0
    assert abs(np.dot(occupations, levels) - 2500.0) <= 1e-9 * 2500.0
    model = np.exp(-solution.alpha - solution.beta * levels)
    assert occupations == pytest.approx(model, rel=1e-8)


def test_beta_decreases_with_energy():
    betas = [
        solve_maxent(MaxEntProblem(levels=[0, 1, 2, 3], total_count=10, total_energy=e)).beta
        for e in (2.0, 8.0, 15.0, 22.0, 28.0)
    ]
    assert all(a > b for a, b in zip(betas, betas[1:]))


def test_maxent_errors():
    with pytest.raises(TooFewLevelsError):
        solve_maxent(MaxEntProblem(levels=[1.0], total_count=1, total_energy=1))
    with pytest.raises(DegenerateEnergyError):
        solve_maxent(MaxEntProblem(levels=[0, 1], total_count=10, total_energy=0))
    with pytest.raises(DegenerateEnergyError):
        solve_maxent(MaxEntProblem(levels=[0, 1], total_count=10, total_energy=11))
    with pytest.raises(OutOfRangeError):
        solve_maxent(MaxEntProblem(levels=[0, 2, 1], total_count=10, total_energy=5))


@pytest.mark.parametrize("levels,count,energy", [
    ([0.0, math.inf], 10.0, 5.0),
    ([0.0, 1.0], math.inf, 5.0),
    ([0.0, 1.0], 10.0, math.nan),
])
def test_maxent_rejects_non_finite_problems(levels, count, energy):
    with pytest.raises(OutOfRangeError):
        solve_maxent(MaxEntProblem(levels=levels, total_count=count, total_energy=energy))


def test_maxent_reference_of_uniform_histogram():
    reference = maxent_reference(Histogram.from_counts([1] * 256))
    assert reference.reference_entropy_bits == pytest.approx(8.0, abs=1e-9)
    assert reference.efficiency == pytest.approx(1.0, abs=1e-9)


def test_maxent_reference_is_an_upper_bound():
    h = mb_counts(0.002)
    reference = maxent_reference(h)
    assert reference.solution is not None
    assert sum(reference.solution.occupations) == pytest.approx(h.total)
    assert 0 < reference.efficiency <= 1 + 1e-9


def test_maxent_reference_of_point_mass():
    reference = maxent_reference(histogram(constant(4, 4, 0)))
    assert reference.solution is None
    assert reference.efficiency == 1.0


# ==================== DENSIDADES ====================

@pytest.mark.parametrize("pdf", [mb_pdf_2d, mb_pdf_3d])
@pytest.mark.parametrize("b", [0.01, 0.5, 3.0])
def test_densities_integrate_to_one(pdf, b):
    area, _ = integrate.quad(lambda v: pdf(v, b), 0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=200)
    assert abs(area - 1.0) < 1e-8
    assert pdf(0.0, b) == 0.0


@pytest.mark.parametrize("b", [0.02, 0.7])
def test_density_modes(b):
    v = np.linspace(0.0, 4.0 / math.sqrt(b), 400001)
    step = v[1] - v[0]
    assert abs(v[np.argmax(mb_pdf_2d(v, b))] - 1 / math.sqrt(2 * b)) <= step
    assert abs(v[np.argmax(mb_pdf_3d(v, b))] - 1 / math.sqrt(b)) <= step


def test_densities_are_non_negative():
    v = np.linspace(0.0, 50.0, 1001)
    assert np.all(mb_pdf_2d(v, 0.1) >= 0)
    assert np.all(mb_pdf_3d(v, 0.1) >= 0)


def test_density_domain():
    with pytest.raises(OutOfRangeError):
        mb_pdf_2d(-1.0, 1.0)
    with pytest.raises(OutOfRangeError):
        mb_pdf_3d(1.0, 0.0)


# ==================== AJUSTE MB ====================

def test_fit_recovers_planted_shape():
    fit = fit_mb(mb_counts(0.002))
    assert fit.shape == pytest.approx(0.002, rel=0.05)
    assert fit.r_squared > 0.99


def test_fit_recovers_random_planted_shapes():
    rng = np.random.default_rng(7)
    for b in np.exp(rng.uniform(math.log(1e-3), math.log(1e-2), size=10)):
        fit = fit_mb(mb_counts(float(b)))
        assert fit.shape == pytest.approx(b, rel=0.05)
        assert fit.r_squared > 0.99


def test_fit_reports_consistent_residuals():
    h = mb_counts(0.004)
    fit = fit_mb(h)
    counts = np.asarray(h.counts, dtype=float)
    fitted = np.asarray(fitted_counts(fit))
    tss = ((counts - counts.mean()) ** 2).sum()
    assert fitted[0] == 0.0
    assert fit.r_squared == pytest.approx(1 - fit.residual_norm ** 2 / tss, abs=1e-12)


def test_uniform_histogram_fits_worse():
    uniform = Histogram.from_counts([0] + [10] * 255)
    assert fit_mb(uniform).r_squared < fit_mb(mb_counts(0.002)).r_squared


def test_fit_is_scale_covariant():
    h = mb_counts(0.003)
    scaled = Histogram.from_counts([7 * c for c in h.counts])
    base, big = fit_mb(h), fit_mb(scaled)
    assert big.shape == pytest.approx(base.shape, rel=1e-9)
    assert big.amplitude == pytest.approx(7 * base.amplitude, rel=1e-9)


def test_poisson_weighting_is_recorded():
    fit = fit_mb(mb_counts(0.002), weighting="poisson")
    assert fit.weighting == "poisson"
    assert fit.shape == pytest.approx(0.002, rel=0.25)


def test_fit_errors():
    with pytest.raises(DegenerateFitError):
        fit_mb(Histogram.from_counts([50] + [0] * 255))
    with pytest.raises(DegenerateFitError):
        fit_mb(Histogram.from_counts([0, 4, 9] + [0] * 253))
    with pytest.raises(EmptyHistogramError):
        fit_mb(Histogram.from_counts([0] * 256))
