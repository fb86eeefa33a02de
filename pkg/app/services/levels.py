"""
Pirámide de tres niveles: imagen, gradiente y gradiente del gradiente
"""

from typing import Optional

import numpy as np
from scipy import ndimage

from app.core.config import settings
from app.core.exceptions import ImageTooSmallError, OutOfRangeError
from app.models.image import GrayImage
from app.models.levels import GradientOperator, LevelPyramid

# máximo módulo Sobel para entradas de 8 bits
SOBEL_MAX = 1020.0 * np.sqrt(2.0)


def gradient(img: GrayImage, operator: Optional[GradientOperator] = None) -> GrayImage:
    """
    Gradiente de una imagen, (ancho-1) x (alto-1), valores en 0..255

    forward: |img(x+1,y) - img(x,y)| + |img(x,y+1) - img(x,y)| saturado a 255
    sobel: módulo Sobel reescalado a 0..255 y recortado a las mismas dimensiones
    """
    if img.width < 2 or img.height < 2:
        raise ImageTooSmallError(
            f"El gradiente necesita al menos 2x2 píxeles, la imagen es {img.width}x{img.height}"
        )

    operator = operator or settings.GRADIENT_OPERATOR
    a = img.to_array().astype(np.int32)

    if operator == "forward":
        dx = np.abs(a[:-1, 1:] - a[:-1, :-1])
        dy = np.abs(a[1:, :-1] - a[:-1, :-1])
        out = np.minimum(dx + dy, 255)
    elif operator == "sobel":
        sx = ndimage.sobel(a.astype(np.float64), axis=1, mode="nearest")
        sy = ndimage.sobel(a.astype(np.float64), axis=0, mode="nearest")
        magnitude = np.hypot(sx, sy) * (255.0 / SOBEL_MAX)
        out = np.clip(np.rint(magnitude), 0, 255)[:-1, :-1]
    else:
        raise OutOfRangeError(f"Operador de gradiente desconocido: {operator}")

    return GrayImage.from_array(out.astype(np.uint8))


def build_pyramid(img: GrayImage, operator: Optional[GradientOperator] = None) -> LevelPyramid:
    """L1 = img, L2 = gradiente(L1), L3 = gradiente(L2)"""
    if img.width < 3 or img.height < 3:
        raise ImageTooSmallError(
            f"La pirámide necesita al menos 3x3 píxeles, la imagen es {img.width}x{img.height}"
        )
    l2 = gradient(img, operator)
    l3 = gradient(l2, operator)
    return LevelPyramid(l1=img, l2=l2, l3=l3)


def level(pyramid: LevelPyramid, k: int) -> GrayImage:
    """Nivel k (1, 2 o 3) de la pirámide"""
    if k not in (1, 2, 3):
        raise OutOfRangeError(f"Nivel {k} inexistente; use 1, 2 o 3")
    return pyramid.levels[k - 1]


def level_of(img: GrayImage, k: int, operator: Optional[GradientOperator] = None) -> GrayImage:
    """Nivel k calculado solo hasta donde hace falta"""
    if k not in (1, 2, 3):
        raise OutOfRangeError(f"Nivel {k} inexistente; use 1, 2 o 3")
    current = img
    for _ in range(k - 1):
        current = gradient(current, operator)
    return current
