from pydantic import BaseModel, ConfigDict, Field, model_validator
import numpy as np


class GrayImage(BaseModel):
    """Imagen en escala de grises de 8 bits; cada píxel es un nivel de energía 0..255"""

    model_config = ConfigDict(frozen=True)

    width: int = Field(..., ge=1, description="Ancho en píxeles")
    height: int = Field(..., ge=1, description="Alto en píxeles")
    pixels: bytes = Field(..., repr=False, description="Intensidades fila a fila, de arriba abajo")

    @model_validator(mode="after")
    def check_payload(self) -> "GrayImage":
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"Se esperaban {self.width * self.height} píxeles, hay {len(self.pixels)}"
            )
        return self

    @classmethod
    def from_array(cls, array: np.ndarray) -> "GrayImage":
        """Construir desde una matriz (alto, ancho) de enteros en [0, 255]"""
        array = np.asarray(array)
        if array.ndim != 2:
            raise ValueError("Se esperaba una matriz bidimensional")
        if array.dtype != np.uint8:
            if array.size and (array.min() < 0 or array.max() > 255):
                raise ValueError("Valores fuera de [0, 255]")
            array = array.astype(np.uint8)
        height, width = array.shape
        return cls(width=width, height=height, pixels=np.ascontiguousarray(array).tobytes())

    def to_array(self) -> np.ndarray:
        """Vista de solo lectura (alto, ancho) uint8"""
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width)

    def pixel(self, x: int, y: int) -> int:
        return self.pixels[y * self.width + x]
