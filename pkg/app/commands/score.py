from argparse import Namespace

from app.commands.common import add_format, add_out, emit
from app.core.config import settings
from app.services.image_io import load_image
from app.services.measures import score
from app.services.reports import SCORE_COLUMNS, score_document, score_row, to_csv, to_json


def register(subparsers) -> None:
    parser = subparsers.add_parser("score", help="Puntuar una o varias imágenes")
    parser.add_argument("paths", nargs="+", help="Imágenes PGM (P5) o PNG")
    add_format(parser)
    add_out(parser)
    parser.set_defaults(handler=handle)


def handle(args: Namespace) -> int:
    """Puntuación de cada imagen: un objeto JSON, o una lista si hay varias"""
    operator = settings.GRADIENT_OPERATOR
    scored = []
    for path in args.paths:
        img = load_image(path)
        scored.append((path, img, score(img, operator)))

    if args.format == "csv":
        emit(to_csv([score_row(*item) for item in scored], SCORE_COLUMNS), args.out)
    else:
        documents = [score_document(*item, operator) for item in scored]
        emit(to_json(documents[0] if len(documents) == 1 else documents), args.out)
    return 0
