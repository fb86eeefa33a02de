from argparse import Namespace
import logging

from app.commands.common import add_out, emit
from app.services.image_io import load_image, save_image
from app.services.levels import level_of
from app.services.measures import histogram
from app.services.reports import histogram_csv, to_json

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("hist", help="Histograma de 256 valores de un nivel de la pirámide")
    parser.add_argument("path", help="Imagen PGM (P5) o PNG")
    parser.add_argument("--level", type=int, choices=[1, 2, 3], default=2,
                        help="Nivel de la pirámide (por defecto: 2)")
    parser.add_argument("--format", choices=["json", "csv"], default="csv",
                        help="Formato de salida (por defecto: csv)")
    parser.add_argument("--dump-pgm", default=None, help="Guardar además el nivel como PGM")
    add_out(parser)
    parser.set_defaults(handler=handle)


def handle(args: Namespace) -> int:
    layer = level_of(load_image(args.path), args.level)
    h = histogram(layer)

    if args.dump_pgm:
        save_image(layer, args.dump_pgm)
        logger.info(f"Nivel {args.level} guardado en {args.dump_pgm}")

    if args.format == "json":
        emit(to_json({"file": args.path, "level": args.level, **h.model_dump()}), args.out)
    else:
        emit(histogram_csv(h), args.out)
    return 0
