from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import List, Literal

Measure = Literal["eq14", "eq15"]

LEVEL_COUNT = 256
MAX_LEVEL = LEVEL_COUNT - 1
MAX_ENTROPY_BITS = 8.0


class Histogram(BaseModel):
    """Ocupación n_i de cada nivel de energía ε_i = i"""

    model_config = ConfigDict(frozen=True)

    counts: List[int] = Field(..., min_length=LEVEL_COUNT, max_length=LEVEL_COUNT)
    total: int = Field(..., ge=0, description="N = Σ n_i")
    energy: int = Field(..., ge=0, description="Σ n_i · ε_i")

    @model_validator(mode="after")
    def check_totals(self) -> "Histogram":
        if any(c < 0 for c in self.counts):
            raise ValueError("Las ocupaciones no pueden ser negativas")
        if self.total != sum(self.counts):
            raise ValueError("total no coincide con la suma de ocupaciones")
        if self.energy != sum(i * c for i, c in enumerate(self.counts)):
            raise ValueError("energy no coincide con Σ i · n_i")
        return self

    @classmethod
    def from_counts(cls, counts: List[int]) -> "Histogram":
        counts = [int(c) for c in counts]
        return cls(
            counts=counts,
            total=sum(counts),
            energy=sum(i * c for i, c in enumerate(counts)),
        )

    @property
    def nonzero_levels(self) -> int:
        return sum(1 for c in self.counts if c > 0)


class LevelStats(BaseModel):
    """Entropía y energía de un nivel, en bruto y escaladas a [0, 1]"""

    entropy_bits: float = Field(..., ge=0, le=MAX_ENTROPY_BITS)
    energy: int = Field(..., ge=0)
    entropy_scaled: float = Field(..., ge=0, le=1)
    energy_scaled: float = Field(..., ge=0, le=1)
    pixel_count: int = Field(..., ge=1)


class LevelDistances(BaseModel):
    """Distancias entre niveles contiguos (escaladas)"""

    entropy_l1_l2: float
    energy_l1_l2: float
    entropy_l2_l3: float
    energy_l2_l3: float


class AestheticScore(BaseModel):
    """Puntuación estética de una imagen"""

    levels: List[LevelStats] = Field(..., min_length=3, max_length=3)
    m_eq14: float = Field(..., ge=0, description="Suma de entropías (bits) de los tres niveles")
    m_eq15: float = Field(..., ge=0, le=6, description="Suma de entropías y energías escaladas")
    l1_energy_bin: int = Field(..., ge=0, le=149)
    distances: LevelDistances

    def m(self, measure: Measure) -> float:
        """Valor de M según la medida elegida"""
        return self.m_eq14 if measure == "eq14" else self.m_eq15

    @property
    def l1(self) -> LevelStats:
        return self.levels[0]
