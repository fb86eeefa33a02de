"""
Utilidades compartidas por los subcomandos
"""

from argparse import ArgumentParser
from pathlib import Path
from typing import Optional, Tuple
import sys

from app.core.config import settings
from app.core.exceptions import IoFailureError, UsageError
from app.services.binning import ENERGY_BINS


def emit(text: str, out: Optional[str]) -> None:
    """Escribe en --out o en la salida estándar"""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as e:
        raise IoFailureError(f"No se pudo escribir {out}: {e}")


def add_format(parser: ArgumentParser) -> None:
    parser.add_argument("--format", choices=["json", "csv"], default="json",
                        help="Formato de salida (por defecto: json)")


def add_measure(parser: ArgumentParser) -> None:
    parser.add_argument("--measure", choices=["eq14", "eq15"], default=settings.DEFAULT_MEASURE,
                        help=f"Medida M (por defecto: {settings.DEFAULT_MEASURE})")


def add_out(parser: ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="Fichero de salida (por defecto: salida estándar)")


def add_workers(parser: ArgumentParser) -> None:
    parser.add_argument("--workers", type=int, default=settings.WORKERS,
                        help=f"Hilos de trabajo (por defecto: {settings.WORKERS})")


def parse_size(value: str) -> Tuple[int, int]:
    """'64x48' -> (64, 48)"""
    try:
        width, height = (int(part) for part in value.lower().split("x"))
    except ValueError:
        raise UsageError(f"Tamaño inválido '{value}', use ANCHOxALTO")
    if width < 3 or height < 3:
        raise UsageError(f"El tamaño mínimo es 3x3, se pidió {value}")
    return width, height


def check_workers(workers: int) -> None:
    if workers < 1:
        raise UsageError(f"--workers debe ser al menos 1, es {workers}")


def check_seed(seed: int) -> None:
    if not 0 <= seed < 2**64:
        raise UsageError(f"--seed debe ser un entero sin signo de 64 bits, es {seed}")


def check_bin(bin_index: int, flag: str) -> None:
    if not 0 <= bin_index < ENERGY_BINS:
        raise UsageError(f"{flag} debe estar entre 0 y {ENERGY_BINS - 1}, es {bin_index}")
