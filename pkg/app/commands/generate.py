from argparse import Namespace
import logging

from pydantic import ValidationError

from app.commands.common import add_format, add_measure, add_workers, check_workers, emit, parse_size
from app.core.config import settings
from app.core.exceptions import UsageError
from app.services.binning import ENERGY_BINS
from app.models.search import GeneratorConfig
from app.services.reports import to_csv, to_json
from app.services.search import archive_summary, evolve, save_archive

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("generate", help="Generar patrones con archivo elitista por energía")
    parser.add_argument("--out", required=True, help="Directorio del archivo (archive.json y bin_<k>.pgm)")
    parser.add_argument("--size", default=f"{settings.DEFAULT_WIDTH}x{settings.DEFAULT_HEIGHT}",
                        help=f"Tamaño ANCHOxALTO (por defecto: {settings.DEFAULT_WIDTH}x{settings.DEFAULT_HEIGHT})")
    parser.add_argument("--kind", choices=["uniform_noise", "block_mosaic", "symmetric_tile"],
                        default=settings.DEFAULT_KIND,
                        help=f"Generador de patrones (por defecto: {settings.DEFAULT_KIND})")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED,
                        help=f"Semilla de 64 bits (por defecto: {settings.DEFAULT_SEED})")
    parser.add_argument("--iterations", type=int, default=settings.DEFAULT_ITERATIONS,
                        help=f"Candidatos a proponer (por defecto: {settings.DEFAULT_ITERATIONS})")
    parser.add_argument("--top", type=int, default=5,
                        help="Grupos con más candidatos a resumir (por defecto: 5)")
    add_measure(parser)
    add_format(parser)
    add_workers(parser)
    parser.set_defaults(handler=handle)


def handle(args: Namespace) -> int:
    width, height = parse_size(args.size)
    if not 1 <= args.top <= ENERGY_BINS:
        raise UsageError(f"--top debe estar entre 1 y {ENERGY_BINS}, es {args.top}")
    check_workers(args.workers)
    try:
        cfg = GeneratorConfig(
            width=width,
            height=height,
            generator_kind=args.kind,
            seed=args.seed,
            iterations=args.iterations,
            measure=args.measure,
        )
    except ValidationError as e:
        raise UsageError(f"Configuración de generación inválida: {e.errors()[0]['msg']}")
    logger.info(f"Semilla en uso: {cfg.seed}")

    archive = evolve(cfg, workers=args.workers)
    save_archive(archive, args.out)

    summary = archive_summary(archive, args.top)
    if args.format == "csv":
        rows = [g.model_dump() for g in summary.top_groups]
        emit(to_csv(rows, ["bin", "count", "m", "found_at"]), None)
    else:
        emit(to_json(summary.model_dump(mode="json")), None)
    return 0
