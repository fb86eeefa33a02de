"""
Lectura y escritura de imágenes en escala de grises de 8 bits

PGM binario (P5) es el formato canónico; PNG se admite como capa de
conveniencia a través de Pillow.
"""

from io import BytesIO
from pathlib import Path
from typing import Tuple, Union
import logging

import numpy as np
from PIL import Image
from pydantic import ValidationError

from app.core.exceptions import (
    ImageNotFoundError, IoFailureError, MalformedImageError, UnsupportedFormatError
)
from app.models.image import GrayImage

logger = logging.getLogger(__name__)

PGM_MAGIC = b"P5"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n"

PathLike = Union[str, Path]


def load_image(path: PathLike) -> GrayImage:
    """Export function for ImageIOService.load"""
    return ImageIOService.load(path)


def save_image(img: GrayImage, path: PathLike) -> None:
    """Export function for ImageIOService.save"""
    ImageIOService.save(img, path)


def luma(rgb: np.ndarray) -> np.ndarray:
    """round(0.299·R + 0.587·G + 0.114·B) con redondeo hacia arriba en .5, en enteros exactos"""
    rgb = rgb.astype(np.int64)
    gray = (299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000
    return np.clip(gray, 0, 255).astype(np.uint8)


class ImageIOService:
    """Decodificación, codificación y normalización a GrayImage"""

    @staticmethod
    def load(path: PathLike) -> GrayImage:
        path = Path(path)
        if not path.is_file():
            raise ImageNotFoundError(f"No existe el fichero {path}")

        try:
            data = path.read_bytes()
        except OSError as e:
            raise IoFailureError(f"No se pudo leer {path}: {e}")

        if data.startswith(PGM_MAGIC):
            array = ImageIOService.decode_pgm(data)
        elif data.startswith(PNG_MAGIC):
            array = ImageIOService.decode_png(data)
        else:
            raise UnsupportedFormatError(f"{path.name}: formato no soportado (se admite P5 y PNG)")

        try:
            return GrayImage.from_array(array)
        except (ValidationError, ValueError) as e:
            raise MalformedImageError(f"{path.name}: {e}")

    @staticmethod
    def save(img: GrayImage, path: PathLike) -> None:
        """Escribe P5 con maxval 255, o PNG gris de 8 bits si la extensión es .png"""
        path = Path(path)
        try:
            if path.suffix.lower() == ".png":
                Image.fromarray(img.to_array(), mode="L").save(path, format="PNG")
            else:
                path.write_bytes(ImageIOService.encode_pgm(img))
        except OSError as e:
            raise IoFailureError(f"No se pudo escribir {path}: {e}")
        logger.debug(f"Imagen {img.width}x{img.height} guardada en {path}")

    @staticmethod
    def encode_pgm(img: GrayImage) -> bytes:
        header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
        return header + img.pixels

    @staticmethod
    def decode_pgm(data: bytes) -> np.ndarray:
        (width, height, maxval), offset = ImageIOService._read_pgm_header(data)

        if width == 0 or height == 0:
            raise MalformedImageError("Dimensión cero en la cabecera PGM")
        if not 0 < maxval < 65536:
            raise MalformedImageError(f"maxval {maxval} fuera de rango")

        sample_size = 1 if maxval < 256 else 2
        expected = width * height * sample_size
        payload = data[offset:offset + expected]
        if len(payload) < expected:
            raise MalformedImageError(
                f"Datos PGM truncados: {len(payload)} de {expected} bytes"
            )

        if sample_size == 1:
            samples = np.frombuffer(payload, dtype=np.uint8)
        else:
            # 16 bits big-endian: se descartan los 8 bits bajos
            samples = (np.frombuffer(payload, dtype=">u2") >> 8).astype(np.uint8)
        return samples.reshape(height, width)

    @staticmethod
    def _read_pgm_header(data: bytes) -> Tuple[Tuple[int, int, int], int]:
        """Tres enteros tras P5, con comentarios #; devuelve también el inicio del payload"""
        values = []
        pos = len(PGM_MAGIC)
        while len(values) < 3:
            # saltar espacios y comentarios
            while pos < len(data) and (data[pos:pos + 1].isspace() or data[pos:pos + 1] == b"#"):
                if data[pos:pos + 1] == b"#":
                    end = data.find(b"\n", pos)
                    pos = len(data) if end == -1 else end + 1
                else:
                    pos += 1
            start = pos
            while pos < len(data) and data[pos:pos + 1].isdigit():
                pos += 1
            if start == pos:
                raise MalformedImageError("Cabecera PGM incompleta")
            values.append(int(data[start:pos]))

        # exactamente un carácter de espacio separa la cabecera de los datos
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise MalformedImageError("Cabecera PGM sin separador final")
        return (values[0], values[1], values[2]), pos + 1

    @staticmethod
    def decode_png(data: bytes) -> np.ndarray:
        try:
            with Image.open(BytesIO(data)) as img:
                img.load()
                mode = img.mode
                if mode == "P":
                    img = img.convert("RGBA")
                    mode = img.mode
                elif mode == "1":
                    img = img.convert("L")
                    mode = img.mode
                array = np.asarray(img)
        except Exception as e:
            raise MalformedImageError(f"PNG ilegible: {e}")

        if array.ndim == 2 and array.size == 0:
            raise MalformedImageError("PNG sin píxeles")

        if mode == "L":
            return array.astype(np.uint8)
        if mode == "LA":
            return array[..., 0].astype(np.uint8)
        if mode in ("RGB", "RGBA"):
            return luma(array[..., :3])
        if mode.startswith("I"):
            # gris de 16 bits
            return (np.clip(array.astype(np.int64), 0, 65535) >> 8).astype(np.uint8)

        raise UnsupportedFormatError(f"Modo PNG no soportado: {mode}")
