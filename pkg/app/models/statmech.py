from pydantic import BaseModel, ConfigDict, Field
from typing import List, Literal, Optional

FitWeighting = Literal["none", "poisson"]


class MaxEntProblem(BaseModel):
    """Restricciones de Boltzmann: niveles fijos, N fijo y energía total fija"""

    levels: List[float] = Field(..., description="Niveles de energía ε_i, estrictamente crecientes")
    total_count: float = Field(..., gt=0, description="N")
    total_energy: float = Field(..., description="E = Σ n_i ε_i")


class MaxEntSolution(BaseModel):
    """Ocupaciones de máxima entropía n_i = exp(-alpha - beta·ε_i)"""

    levels: List[float]
    occupations: List[float]
    alpha: float
    beta: float

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "levels": [0.0, 1.0],
                "occupations": [75.0, 25.0],
                "alpha": -4.3175,
                "beta": 1.0986,
            }
        }
    )


class MaxEntReference(BaseModel):
    """Distribución de máxima entropía con la misma N y energía que un histograma"""

    solution: Optional[MaxEntSolution] = Field(None, description="None si la energía es degenerada")
    entropy_bits: float = Field(..., ge=0, description="Entropía del histograma observado")
    reference_entropy_bits: float = Field(..., ge=0, description="Entropía de la referencia")
    efficiency: float = Field(..., ge=0, description="entropy_bits / reference_entropy_bits")


class MBFit(BaseModel):
    """Ajuste ŷ(i) = C · i · exp(-b · i²) de un histograma"""

    amplitude: float = Field(..., gt=0, description="C")
    shape: float = Field(..., gt=0, description="b, equivale a m/(2kT)")
    r_squared: float = Field(..., le=1)
    residual_norm: float = Field(..., ge=0)
    weighting: FitWeighting = "none"
