from argparse import Namespace
from typing import List
import math

from pydantic import ValidationError

from app.commands.common import add_format, add_out, emit
from app.core.exceptions import UsageError
from app.models.statmech import MaxEntProblem
from app.services.image_io import load_image
from app.services.levels import level_of
from app.services.measures import histogram
from app.services.reports import maxent_csv, to_csv, to_json
from app.services.statmech import maxent_reference, solve_maxent


def register(subparsers) -> None:
    parser = subparsers.add_parser("maxent", help="Resolver la distribución de máxima entropía con N y E fijos")
    parser.add_argument("--levels", default=None, help="Niveles de energía separados por comas, p. ej. 0,1,2")
    parser.add_argument("--count", type=float, default=None, help="Número total de partículas N")
    parser.add_argument("--energy", type=float, default=None, help="Energía total E")
    parser.add_argument("--image", default=None, help="Construir el problema desde un nivel de esta imagen")
    parser.add_argument("--level", type=int, choices=[1, 2, 3], default=2,
                        help="Nivel de la pirámide con --image (por defecto: 2)")
    add_format(parser)
    add_out(parser)
    parser.set_defaults(handler=handle)


def _parse_levels(value: str) -> List[float]:
    try:
        levels = [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"Lista de niveles inválida '{value}'")
    if not all(math.isfinite(level) for level in levels):
        raise UsageError(f"Los niveles deben ser finitos: '{value}'")
    return levels


def handle(args: Namespace) -> int:
    if args.image is not None:
        if args.levels is not None or args.count is not None or args.energy is not None:
            raise UsageError("--image no se combina con --levels/--count/--energy")
        return _handle_image(args)

    if args.levels is None or args.count is None or args.energy is None:
        raise UsageError("Se requieren --levels, --count y --energy (o bien --image)")
    if not math.isfinite(args.count) or args.count <= 0:
        raise UsageError(f"--count debe ser positivo y finito, es {args.count}")
    if not math.isfinite(args.energy):
        raise UsageError(f"--energy debe ser finita, es {args.energy}")

    try:
        problem = MaxEntProblem(
            levels=_parse_levels(args.levels),
            total_count=args.count,
            total_energy=args.energy,
        )
    except ValidationError as e:
        raise UsageError(f"Problema de máxima entropía inválido: {e.errors()[0]['msg']}")
    solution = solve_maxent(problem)
    if args.format == "csv":
        emit(maxent_csv(solution), args.out)
    else:
        emit(to_json(solution.model_dump()), args.out)
    return 0


def _handle_image(args: Namespace) -> int:
    """Referencia de máxima entropía para el histograma de un nivel"""
    h = histogram(level_of(load_image(args.image), args.level))
    reference = maxent_reference(h)

    if args.format == "csv":
        if reference.solution is None:
            # energía degenerada: la referencia es el propio histograma
            rows = [{"level": float(i), "occupation": float(c)} for i, c in enumerate(h.counts)]
            emit(to_csv(rows, ["level", "occupation"]), args.out)
        else:
            emit(maxent_csv(reference.solution), args.out)
        return 0

    document = {
        "file": args.image,
        "level": args.level,
        "count": h.total,
        "energy": h.energy,
        **reference.model_dump(),
    }
    emit(to_json(document), args.out)
    return 0
