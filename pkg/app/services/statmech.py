"""
Máxima entropía con restricciones de Boltzmann y distribución de Maxwell-Boltzmann

- solve_maxent: n_i = exp(-alpha - beta·ε_i) con N y energía fijas
- mb_pdf_2d / mb_pdf_3d: densidades de rapidez en 2D y 3D, con b = m/(2kT)
- fit_mb: ajuste de C·i·exp(-b·i²) a un histograma de gradiente
"""

from typing import List, Optional, Union
import logging

import numpy as np
from scipy import optimize, special, stats

from app.core.config import settings
from app.core.exceptions import (
    DegenerateEnergyError, DegenerateFitError, EmptyHistogramError,
    OutOfRangeError, TooFewLevelsError
)
from app.models.measures import Histogram, LEVEL_COUNT, MAX_LEVEL
from app.models.statmech import (
    FitWeighting, MaxEntProblem, MaxEntReference, MaxEntSolution, MBFit
)
from app.services.measures import shannon_entropy

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

BISECTION_MAX_BRACKET = 2.0 ** 200
MEAN_ENERGY_TOLERANCE = 1e-12
FIT_GRID = np.logspace(-8, 1, 181)
FIT_XTOL = 1e-12


# ==================== MÁXIMA ENTROPÍA ====================

def _mean_energy(levels: np.ndarray, beta: float) -> float:
    """g(β) = Σ ε_i e^{-βε_i} / Σ e^{-βε_i}"""
    return float(np.dot(levels, special.softmax(-beta * levels)))


def solve_maxent(p: MaxEntProblem) -> MaxEntSolution:
    """
    Ocupaciones reales que maximizan la entropía con N y E fijos

    beta se obtiene por bisección sobre g(β), que es monótona decreciente;
    alpha sale de la normalización.
    """
    levels = np.asarray(p.levels, dtype=np.float64)
    finite = np.all(np.isfinite(levels)) and np.isfinite(p.total_count) and np.isfinite(p.total_energy)
    if not finite:
        raise OutOfRangeError("Niveles, N y energía deben ser finitos")
    if levels.size < 2:
        raise TooFewLevelsError("Se necesitan al menos 2 niveles de energía")
    if np.any(np.diff(levels) <= 0):
        raise OutOfRangeError("Los niveles deben ser estrictamente crecientes")

    n = p.total_count
    lo, hi = float(levels[0]), float(levels[-1])
    if not lo * n < p.total_energy < hi * n:
        raise DegenerateEnergyError(
            f"La energía {p.total_energy} debe estar estrictamente entre {lo * n} y {hi * n}"
        )

    target = p.total_energy / n
    span = hi - lo

    def excess(beta: float) -> float:
        return _mean_energy(levels, beta) - target

    # duplicar el intervalo hasta encerrar el objetivo
    bound = 1.0
    while excess(-bound) < 0 or excess(bound) > 0:
        bound *= 2.0
        if bound > BISECTION_MAX_BRACKET:
            raise DegenerateEnergyError("beta diverge: la energía está demasiado cerca de un extremo")

    if excess(bound) == 0:
        beta = bound
    elif excess(-bound) == 0:
        beta = -bound
    else:
        beta = optimize.bisect(
            excess, -bound, bound,
            xtol=1e-15 / span, rtol=4 * np.finfo(float).eps, maxiter=2000
        )

    residual = abs(excess(beta))
    if residual > MEAN_ENERGY_TOLERANCE * span:
        logger.warning(f"Bisección con residuo {residual:.3e} en la energía media")

    log_z = float(special.logsumexp(-beta * levels))
    alpha = log_z - float(np.log(n))
    occupations = n * special.softmax(-beta * levels)

    return MaxEntSolution(
        levels=levels.tolist(),
        occupations=occupations.tolist(),
        alpha=alpha,
        beta=float(beta),
    )


def maxent_reference(h: Histogram) -> MaxEntReference:
    """Referencia de máxima entropía sobre 0..255 con la N y energía del histograma"""
    observed = shannon_entropy(h)
    if h.energy == 0 or h.energy == MAX_LEVEL * h.total:
        # energía extrema: la única distribución posible es una masa puntual
        return MaxEntReference(
            solution=None, entropy_bits=observed, reference_entropy_bits=0.0, efficiency=1.0
        )

    problem = MaxEntProblem(
        levels=[float(i) for i in range(LEVEL_COUNT)],
        total_count=float(h.total),
        total_energy=float(h.energy),
    )
    solution = solve_maxent(problem)
    reference = float(stats.entropy(solution.occupations, base=2))
    return MaxEntReference(
        solution=solution,
        entropy_bits=observed,
        reference_entropy_bits=reference,
        efficiency=observed / reference if reference > 0 else 1.0,
    )


# ==================== DENSIDADES MAXWELL-BOLTZMANN ====================

def _check_density_args(v: ArrayLike, b: float) -> np.ndarray:
    if not b > 0:
        raise OutOfRangeError(f"El parámetro de forma b debe ser positivo, es {b}")
    v = np.asarray(v, dtype=np.float64)
    if np.any(v < 0):
        raise OutOfRangeError("La rapidez v no puede ser negativa")
    return v


def _as_output(values: np.ndarray) -> ArrayLike:
    return float(values) if values.ndim == 0 else values


def mb_pdf_2d(v: ArrayLike, b: float) -> ArrayLike:
    """f(v) = 2·b·v·e^{-b·v²}, densidad normalizada en [0, ∞)"""
    v = _check_density_args(v, b)
    return _as_output(2.0 * b * v * np.exp(-b * v * v))


def mb_pdf_3d(v: ArrayLike, b: float) -> ArrayLike:
    """f(v) = (b/π)^{3/2}·4π·v²·e^{-b·v²}, densidad normalizada en [0, ∞)"""
    v = _check_density_args(v, b)
    return _as_output((b / np.pi) ** 1.5 * 4.0 * np.pi * v * v * np.exp(-b * v * v))


# ==================== AJUSTE A HISTOGRAMAS ====================

def mb_model(x: np.ndarray, amplitude: float, shape: float) -> np.ndarray:
    """ŷ(i) = C·i·e^{-b·i²}"""
    return amplitude * x * np.exp(-shape * x * x)


def fit_mb(h: Histogram, weighting: Optional[FitWeighting] = None) -> MBFit:
    """
    Ajuste por mínimos cuadrados no lineales de C·i·e^{-b·i²} sobre i = 0..255

    Barrido logarítmico de b (C tiene solución cerrada para cada b) seguido de
    Levenberg-Marquardt en (ln C, ln b). El ajuste se hace sobre las frecuencias
    relativas, de modo que escalar los conteos escala C y deja b intacto.
    """
    weighting = weighting or settings.FIT_WEIGHTING
    if h.total < 1:
        raise EmptyHistogramError("El histograma está vacío (N = 0)")

    counts = np.asarray(h.counts, dtype=np.float64)
    if h.nonzero_levels < 3 or counts[1:].sum() == 0:
        raise DegenerateFitError(
            f"Se necesitan al menos 3 niveles ocupados fuera del 0, hay {h.nonzero_levels}"
        )

    x = np.arange(LEVEL_COUNT, dtype=np.float64)
    y = counts / float(h.total)
    if weighting == "poisson":
        sqrt_w = 1.0 / np.sqrt(np.maximum(counts, 1.0))
    else:
        sqrt_w = np.ones_like(counts)

    # barrido grueso: para cada b, C óptimo en forma cerrada
    basis = x[None, :] * np.exp(-FIT_GRID[:, None] * x[None, :] ** 2)
    wb = basis * sqrt_w
    wy = y * sqrt_w
    norms = (wb * wb).sum(axis=1)
    amplitudes = np.where(norms > 0, (wb * wy).sum(axis=1) / np.where(norms > 0, norms, 1.0), 0.0)
    rss = ((amplitudes[:, None] * wb - wy) ** 2).sum(axis=1)
    rss = np.where(amplitudes > 0, rss, np.inf)
    best = int(np.argmin(rss))
    if not np.isfinite(rss[best]):
        raise DegenerateFitError("Ningún valor de b produce una amplitud positiva")

    def residuals(theta: np.ndarray) -> np.ndarray:
        return sqrt_w * (mb_model(x, np.exp(theta[0]), np.exp(theta[1])) - y)

    def jacobian(theta: np.ndarray) -> np.ndarray:
        model = mb_model(x, np.exp(theta[0]), np.exp(theta[1]))
        d_log_c = model
        d_log_b = -np.exp(theta[1]) * x * x * model
        return (sqrt_w[:, None]) * np.column_stack([d_log_c, d_log_b])

    theta0 = np.array([np.log(amplitudes[best]), np.log(FIT_GRID[best])])
    result = optimize.least_squares(
        residuals, theta0, jac=jacobian, method="lm",
        xtol=FIT_XTOL, ftol=FIT_XTOL, gtol=FIT_XTOL
    )
    theta = result.x if result.success else theta0
    if not result.success:
        logger.warning(f"Refinamiento MB sin converger: {result.message}")

    amplitude = float(np.exp(theta[0])) * float(h.total)
    shape = float(np.exp(theta[1]))

    fitted = mb_model(x, amplitude, shape)
    rss_raw = float(((fitted - counts) ** 2).sum())
    tss = float(((counts - counts.mean()) ** 2).sum())
    r_squared = 1.0 - rss_raw / tss if tss > 0 else 0.0

    return MBFit(
        amplitude=amplitude,
        shape=shape,
        r_squared=r_squared,
        residual_norm=float(np.sqrt(rss_raw)),
        weighting=weighting,
    )


def fitted_counts(fit: MBFit) -> List[float]:
    """Valores del modelo en cada nivel 0..255"""
    x = np.arange(LEVEL_COUNT, dtype=np.float64)
    return mb_model(x, fit.amplitude, fit.shape).tolist()
