from argparse import Namespace

from app.commands.common import add_format, add_measure, add_out, add_workers, check_workers, emit
from app.core.exceptions import NoSharedBinsError
from app.services.ranker import compare_labeled, scatter_rows
from app.services.reports import (
    PAIR_COLUMNS, pair_rows, report_document, scatter_csv, to_csv, to_json
)


def register(subparsers) -> None:
    parser = subparsers.add_parser("compare", help="Comparar imágenes atractivas y de control del mismo grupo")
    parser.add_argument("appealing", help="Directorio de imágenes atractivas")
    parser.add_argument("control", help="Directorio de imágenes de control")
    add_measure(parser)
    add_format(parser)
    add_out(parser)
    add_workers(parser)
    parser.add_argument("--scatter", default=None,
                        help="CSV adicional con energía de L1 frente a M para cada imagen")
    parser.set_defaults(handler=handle)


def handle(args: Namespace) -> int:
    """Emite el informe de pares; sin grupos compartidos termina con código 3"""
    check_workers(args.workers)
    report = compare_labeled(args.appealing, args.control, args.measure, args.workers)

    if args.format == "csv":
        emit(to_csv(pair_rows(report), PAIR_COLUMNS), args.out)
    else:
        emit(to_json(report_document(report)), args.out)

    if args.scatter:
        emit(scatter_csv(scatter_rows(report)), args.scatter)

    if not report.pairs:
        raise NoSharedBinsError("Los directorios no comparten ningún grupo de energía")
    return 0
