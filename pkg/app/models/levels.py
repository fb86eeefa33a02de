from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Literal

from app.models.image import GrayImage

GradientOperator = Literal["forward", "sobel"]


class LevelPyramid(BaseModel):
    """Los tres niveles de la medida: imagen, gradiente y gradiente del gradiente"""

    model_config = ConfigDict(frozen=True)

    l1: GrayImage = Field(..., description="La imagen de entrada")
    l2: GrayImage = Field(..., description="Gradiente de l1")
    l3: GrayImage = Field(..., description="Gradiente de l2")

    @model_validator(mode="after")
    def check_dimensions(self) -> "LevelPyramid":
        for upper, lower in ((self.l1, self.l2), (self.l2, self.l3)):
            if (lower.width, lower.height) != (upper.width - 1, upper.height - 1):
                raise ValueError("Cada nivel debe medir una fila y una columna menos que el anterior")
        return self

    @property
    def levels(self) -> tuple[GrayImage, GrayImage, GrayImage]:
        return (self.l1, self.l2, self.l3)
