from argparse import Namespace

from app.commands.common import (
    add_format, add_measure, add_out, add_workers, check_bin, check_seed, check_workers, emit
)
from app.core.config import settings
from app.services.ranker import rank_corpus, showcase
from app.services.reports import RANK_COLUMNS, rank_rows, report_document, to_csv, to_json


def register(subparsers) -> None:
    parser = subparsers.add_parser("rank", help="Clasificar un directorio de imágenes por grupo de energía")
    parser.add_argument("directory", help="Directorio con imágenes")
    add_measure(parser)
    add_format(parser)
    add_out(parser)
    add_workers(parser)
    parser.add_argument("--showcase-bin", type=int, default=None,
                        help="Mostrar solo el panel de este grupo (mejor imagen más dos al azar)")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED,
                        help=f"Semilla para elegir el panel (por defecto: {settings.DEFAULT_SEED})")
    parser.set_defaults(handler=handle)


def handle(args: Namespace) -> int:
    check_workers(args.workers)
    if args.showcase_bin is not None:
        check_bin(args.showcase_bin, "--showcase-bin")
        check_seed(args.seed)

    report = rank_corpus(args.directory, args.measure, args.workers)

    if args.showcase_bin is not None:
        panel = showcase(report, args.showcase_bin, args.seed)
        rows = [
            {
                "file": e.file,
                "bin": args.showcase_bin,
                "l1_energy": e.score.l1.energy,
                "m_eq14": e.score.m_eq14,
                "m_eq15": e.score.m_eq15,
                "rank_in_bin": report.rank_in_bin(e),
            }
            for e in panel
        ]
        if args.format == "csv":
            emit(to_csv(rows, RANK_COLUMNS), args.out)
        else:
            document = {
                "bin": args.showcase_bin,
                "seed": args.seed,
                "measure": args.measure,
                "gradient_operator": report.gradient_operator,
                "panel": rows,
            }
            emit(to_json(document), args.out)
        return 0

    if args.format == "csv":
        emit(to_csv(rank_rows(report), RANK_COLUMNS), args.out)
    else:
        emit(to_json(report_document(report)), args.out)
    return 0
