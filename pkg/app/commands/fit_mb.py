from argparse import Namespace
from pathlib import Path
import csv
import io

from app.commands.common import add_format, add_out, emit
from app.core.config import settings
from app.core.exceptions import ImageNotFoundError, IoFailureError, MalformedHistogramError
from app.models.measures import LEVEL_COUNT, Histogram
from app.services.image_io import load_image
from app.services.levels import level_of
from app.services.measures import histogram
from app.services.reports import fit_csv, to_json
from app.services.statmech import fit_mb, fitted_counts


def register(subparsers) -> None:
    parser = subparsers.add_parser("fit-mb", help="Ajustar la forma Maxwell-Boltzmann a un histograma")
    parser.add_argument("path", help="Imagen, o CSV 'value,count' como el que emite hist")
    parser.add_argument("--level", type=int, choices=[1, 2, 3], default=2,
                        help="Nivel de la pirámide si PATH es una imagen (por defecto: 2)")
    parser.add_argument("--weighting", choices=["none", "poisson"], default=settings.FIT_WEIGHTING,
                        help=f"Ponderación de residuos (por defecto: {settings.FIT_WEIGHTING})")
    add_format(parser)
    add_out(parser)
    parser.set_defaults(handler=handle)


def read_histogram_csv(path: Path) -> Histogram:
    """Lee un CSV con cabecera value,count y 256 filas como mucho"""
    if not path.is_file():
        raise ImageNotFoundError(f"No existe el fichero {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise IoFailureError(f"No se pudo leer {path}: {e}")

    counts = [0] * LEVEL_COUNT
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"value", "count"} <= set(reader.fieldnames):
        raise MalformedHistogramError(f"{path}: se esperaba la cabecera value,count")
    for line, row in enumerate(reader, start=2):
        try:
            value, count = int(row["value"]), int(row["count"])
        except (TypeError, ValueError):
            raise MalformedHistogramError(f"{path}:{line}: fila no numérica")
        if not 0 <= value < LEVEL_COUNT or count < 0:
            raise MalformedHistogramError(f"{path}:{line}: valor {value} o conteo {count} fuera de rango")
        counts[value] += count
    return Histogram.from_counts(counts)


def handle(args: Namespace) -> int:
    path = Path(args.path)
    if path.suffix.lower() == ".csv":
        h = read_histogram_csv(path)
    else:
        h = histogram(level_of(load_image(path), args.level))

    fit = fit_mb(h, args.weighting)
    if args.format == "csv":
        emit(fit_csv(h, fitted_counts(fit)), args.out)
    else:
        emit(to_json({"file": args.path, "count": h.total, **fit.model_dump()}), args.out)
    return 0
