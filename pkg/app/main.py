from argparse import Action, ArgumentParser
from typing import List, Optional
import logging
import sys

from app.core.config import settings
from app.core.exceptions import AestheticsError, UsageError
from app.commands import (
    register_score,
    register_rank,
    register_compare,
    register_generate,
    register_maxent,
    register_fit_mb,
    register_hist
)
from app.services.binning import ENERGY_BINS

logger = logging.getLogger(__name__)


class CliParser(ArgumentParser):
    """ArgumentParser que convierte los errores de uso en UsageError"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class PrintBins(Action):
    """--bins: imprime el número fijo de grupos de energía y termina"""

    def __init__(self, option_strings, dest, **kwargs):
        super().__init__(option_strings, dest, nargs=0, default=None, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        sys.stdout.write(f"{ENERGY_BINS}\n")
        parser.exit(0)


def build_parser() -> ArgumentParser:
    """Crear el parser con todos los subcomandos"""
    parser = CliParser(
        prog="beauty",
        description=f"{settings.APP_NAME}: medida estética por entropía y energía de niveles de gradiente",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("--bins", action=PrintBins, help=f"Imprimir el número de grupos de energía ({ENERGY_BINS})")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Más detalle en el registro (-v INFO, -vv DEBUG)")

    # Incluir subcomandos
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CliParser)
    subparsers.required = True
    register_score(subparsers)
    register_rank(subparsers)
    register_compare(subparsers)
    register_generate(subparsers)
    register_maxent(subparsers)
    register_fit_mb(subparsers)
    register_hist(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def run(argv: Optional[List[str]] = None) -> int:
    """Ejecutar la CLI y devolver el código de salida"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        configure_logging(args.verbose)
        return args.handler(args)
    except SystemExit as e:
        # --help, --version y --bins
        return e.code if isinstance(e.code, int) else 0
    except AestheticsError as e:
        sys.stderr.write(f"error: {e.detail}\n")
        return e.exit_code
    except Exception as e:
        logger.error(f"Error inesperado: {e}")
        logger.debug("Traza del error inesperado", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
