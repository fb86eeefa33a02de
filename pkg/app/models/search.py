from pydantic import BaseModel, Field
from typing import List, Literal, Optional

from app.core.config import settings
from app.models.image import GrayImage
from app.models.levels import GradientOperator
from app.models.measures import AestheticScore, Measure

GeneratorKind = Literal["uniform_noise", "block_mosaic", "symmetric_tile"]

ARCHIVE_VERSION = 1


class GeneratorConfig(BaseModel):
    """Parámetros de una ejecución de generación"""
    width: int = Field(64, ge=3, description="Ancho del lienzo")
    height: int = Field(64, ge=3, description="Alto del lienzo")
    generator_kind: GeneratorKind = Field("block_mosaic", description="Tipo de generador de patrones")
    seed: int = Field(0, ge=0, lt=2**64, description="Semilla de 64 bits sin signo")
    iterations: int = Field(1000, ge=1, description="Número de candidatos propuestos")
    measure: Measure = Field("eq15", description="Medida usada para comparar candidatos")
    gradient_operator: GradientOperator = Field(
        default_factory=lambda: settings.GRADIENT_OPERATOR,
        description="Operador de gradiente con el que se puntúan los candidatos"
    )


class ArchiveSlot(BaseModel):
    """Mejor imagen encontrada en un grupo de energía"""
    image: GrayImage
    score: AestheticScore
    found_at: int = Field(..., ge=0, description="Iteración en la que apareció")


class EnergyBinnedArchive(BaseModel):
    """Archivo elitista de 150 grupos indexados por energía escalada de L1"""
    config: GeneratorConfig
    bins: List[Optional[ArchiveSlot]] = Field(..., min_length=150, max_length=150)
    counts: List[int] = Field(..., min_length=150, max_length=150)

    @classmethod
    def empty(cls, config: GeneratorConfig) -> "EnergyBinnedArchive":
        return cls(config=config, bins=[None] * 150, counts=[0] * 150)

    @property
    def occupied(self) -> List[int]:
        return [k for k, slot in enumerate(self.bins) if slot is not None]

    @property
    def total_candidates(self) -> int:
        return sum(self.counts)


class CandidateRecord(BaseModel):
    """Traza de un candidato evaluado"""
    iteration: int
    bin: int
    m: float
    accepted: bool


class GroupSummary(BaseModel):
    bin: int
    count: int
    m: Optional[float] = None
    found_at: Optional[int] = None


class ArchiveSummary(BaseModel):
    """Resumen de un archivo tras una ejecución"""
    seed: int
    gradient_operator: GradientOperator
    bins: int = 150
    occupied_bins: int
    total_candidates: int
    top_groups: List[GroupSummary] = Field(default_factory=list)


# ==================== FORMATO EN DISCO ====================

class SlotRecord(BaseModel):
    file: str
    m_eq14: float
    m_eq15: float
    found_at: int
    score: AestheticScore


class ArchiveManifest(BaseModel):
    """Esquema de archive.json"""
    version: int = ARCHIVE_VERSION
    config: GeneratorConfig
    seed: int
    counts: List[int] = Field(..., min_length=150, max_length=150)
    slots: List[Optional[SlotRecord]] = Field(..., min_length=150, max_length=150)
