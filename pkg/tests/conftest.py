from pathlib import Path
from typing import Callable

import pytest

from app.models.image import GrayImage
from app.services.image_io import save_image


@pytest.fixture
def write_image(tmp_path: Path) -> Callable[..., Path]:
    """Guarda una GrayImage bajo tmp_path y devuelve la ruta"""

    def _write(img: GrayImage, name: str = "img.pgm", subdir: str = "") -> Path:
        directory = tmp_path / subdir if subdir else tmp_path
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / name
        save_image(img, path)
        return path

    return _write
