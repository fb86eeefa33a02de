"""
Agrupación por energía: 150 grupos de igual anchura sobre la energía escalada de L1
"""

import math

from app.core.exceptions import OutOfRangeError

ENERGY_BINS = 150


def energy_bin(scaled_energy: float) -> int:
    """min(floor(energía_escalada × 150), 149)"""
    if not 0.0 <= scaled_energy <= 1.0:
        raise OutOfRangeError(f"Energía escalada {scaled_energy} fuera de [0, 1]")
    return min(math.floor(scaled_energy * ENERGY_BINS), ENERGY_BINS - 1)
