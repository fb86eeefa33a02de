"""
Errores de dominio de Beauty Measure

Cada error lleva un `detail` legible y el `exit_code` que la CLI devuelve
(0 éxito, 1 uso incorrecto, 2 error de datos, 3 sin grupos compartidos).
"""


class AestheticsError(Exception):
    """Error base del dominio"""

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UsageError(AestheticsError):
    exit_code = 1


# ==================== IMÁGENES ====================

class ImageNotFoundError(AestheticsError):
    """El fichero no existe"""


class UnsupportedFormatError(AestheticsError):
    """Los bytes mágicos no son ni P5 ni PNG"""


class MalformedImageError(AestheticsError):
    """Cabecera rota, datos truncados o dimensión cero"""


class IoFailureError(AestheticsError):
    """Fallo de disco o de permisos"""


class ImageTooSmallError(AestheticsError):
    """La imagen no tiene tamaño suficiente para el nivel pedido"""


# ==================== MEDIDAS Y ESTADÍSTICA ====================

class EmptyHistogramError(AestheticsError):
    """Histograma sin población (N == 0)"""


class TooFewLevelsError(AestheticsError):
    """Problema de máxima entropía con menos de 2 niveles"""


class DegenerateEnergyError(AestheticsError):
    """Energía en el borde o fuera de [min·N, max·N]; beta diverge"""


class DegenerateFitError(AestheticsError):
    """Histograma sin estructura suficiente para el ajuste MB"""


class OutOfRangeError(AestheticsError):
    """Valor fuera del dominio admitido"""


# ==================== ARCHIVO Y CORPUS ====================

class CorruptArchiveError(AestheticsError):
    """archive.json y los PGM no concuerdan"""


class EmptyCorpusError(AestheticsError):
    """Ninguna imagen utilizable en el directorio"""


class NoSharedBinsError(AestheticsError):
    """Los dos corpus no comparten ningún grupo de energía"""

    exit_code = 3


class MalformedHistogramError(AestheticsError):
    """CSV de histograma ilegible"""
