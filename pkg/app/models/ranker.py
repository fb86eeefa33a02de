from pydantic import BaseModel, Field
from typing import Dict, List, Literal, Optional

from app.core.config import settings
from app.models.levels import GradientOperator
from app.models.measures import AestheticScore, Measure

Label = Literal["appealing", "control"]


class CorpusEntry(BaseModel):
    """Una imagen puntuada del corpus"""
    file: str = Field(..., description="Ruta relativa al directorio del corpus")
    width: int
    height: int
    label: Optional[Label] = None
    score: AestheticScore


class CorpusError(BaseModel):
    """Fichero que no se pudo cargar o puntuar"""
    file: str
    error: str


class LabeledPair(BaseModel):
    """Par (atractiva, control) dentro del mismo grupo de energía"""
    appealing_file: str
    control_file: str
    bin: int
    same_bin: bool = True
    m_appealing: float
    m_control: float
    appealing_wins: bool


class CorpusReport(BaseModel):
    """Informe de clasificación por grupos de energía"""
    measure: Measure
    gradient_operator: GradientOperator = Field(default_factory=lambda: settings.GRADIENT_OPERATOR)
    entries: List[CorpusEntry] = Field(default_factory=list)
    groups: Dict[int, List[CorpusEntry]] = Field(default_factory=dict)
    errors: List[CorpusError] = Field(default_factory=list)
    pairs: Optional[List[LabeledPair]] = None
    win_fraction: Optional[float] = Field(None, ge=0, le=1, description="Fracción de pares ganados por la atractiva")

    def rank_in_bin(self, entry: CorpusEntry) -> int:
        """Posición (desde 1) de la entrada dentro de su grupo"""
        group = self.groups[entry.score.l1_energy_bin]
        for position, candidate in enumerate(group, start=1):
            if candidate.file == entry.file and candidate.label == entry.label:
                return position
        raise KeyError(entry.file)


class ScatterRow(BaseModel):
    """Fila para representar M frente a la energía de la imagen"""
    file: str
    label: Optional[Label] = None
    l1_energy_scaled: float
    m_eq14: float
    m_eq15: float
