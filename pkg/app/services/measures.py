"""
Histogramas, entropía, multiplicidad y la medida estética M
"""

from typing import Optional

import numpy as np
from scipy import special, stats

from app.core.exceptions import EmptyHistogramError
from app.models.image import GrayImage
from app.models.levels import LevelPyramid
from app.models.measures import (
    AestheticScore, Histogram, LevelDistances, LevelStats,
    LEVEL_COUNT, MAX_ENTROPY_BITS, MAX_LEVEL
)
from app.services.binning import energy_bin
from app.services.levels import GradientOperator, build_pyramid


def histogram(img: GrayImage) -> Histogram:
    """Ocupación de cada nivel 0..255"""
    counts = np.bincount(img.to_array().ravel(), minlength=LEVEL_COUNT)
    energy = int(np.dot(counts.astype(np.int64), np.arange(LEVEL_COUNT, dtype=np.int64)))
    return Histogram(counts=counts.tolist(), total=int(counts.sum()), energy=energy)


def _require_population(h: Histogram) -> np.ndarray:
    if h.total < 1:
        raise EmptyHistogramError("El histograma está vacío (N = 0)")
    return np.asarray(h.counts, dtype=np.float64)


def shannon_entropy(h: Histogram) -> float:
    """Entropía de Shannon en bits; los niveles vacíos no aportan"""
    counts = _require_population(h)
    bits = float(stats.entropy(counts, base=2)) + 0.0
    # el redondeo puede rozar los extremos
    return min(max(bits, 0.0), MAX_ENTROPY_BITS)


def log_multiplicity_exact(h: Histogram) -> float:
    """ln Ω = ln N! - Σ ln n_i!, vía log-gamma (nats)"""
    counts = _require_population(h)
    return float(special.gammaln(h.total + 1) - special.gammaln(counts + 1).sum())


def log_multiplicity_stirling(h: Histogram) -> float:
    """ln Ω ≈ N ln N - N - Σ (n_i ln n_i - n_i) (nats)"""
    counts = _require_population(h)
    n = float(h.total)
    return float(special.xlogy(n, n) - n - (special.xlogy(counts, counts) - counts).sum())


def scale_stats(h: Histogram, entropy_bits: float) -> LevelStats:
    """Escala entropía (÷8) y energía (÷255·N) a [0, 1]"""
    _require_population(h)
    return LevelStats(
        entropy_bits=entropy_bits,
        energy=h.energy,
        entropy_scaled=entropy_bits / MAX_ENTROPY_BITS,
        energy_scaled=h.energy / (MAX_LEVEL * h.total),
        pixel_count=h.total,
    )


def level_stats(img: GrayImage) -> LevelStats:
    h = histogram(img)
    return scale_stats(h, shannon_entropy(h))


def level_distances(l1: LevelStats, l2: LevelStats, l3: LevelStats) -> LevelDistances:
    """Distancias escaladas entre niveles contiguos"""
    return LevelDistances(
        entropy_l1_l2=abs(l1.entropy_scaled - l2.entropy_scaled),
        energy_l1_l2=abs(l1.energy_scaled - l2.energy_scaled),
        entropy_l2_l3=abs(l2.entropy_scaled - l3.entropy_scaled),
        energy_l2_l3=abs(l2.energy_scaled - l3.energy_scaled),
    )


def score_pyramid(pyramid: LevelPyramid) -> AestheticScore:
    levels = [level_stats(lvl) for lvl in pyramid.levels]
    return AestheticScore(
        levels=levels,
        m_eq14=sum(s.entropy_bits for s in levels),
        m_eq15=sum(s.entropy_scaled for s in levels) + sum(s.energy_scaled for s in levels),
        l1_energy_bin=energy_bin(levels[0].energy_scaled),
        distances=level_distances(*levels),
    )


def score(img: GrayImage, operator: Optional[GradientOperator] = None) -> AestheticScore:
    """Puntuación estética completa de una imagen de al menos 3x3"""
    return score_pyramid(build_pyramid(img, operator))
