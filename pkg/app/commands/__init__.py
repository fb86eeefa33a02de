from .score import register as register_score
from .rank import register as register_rank
from .compare import register as register_compare
from .generate import register as register_generate
from .maxent import register as register_maxent
from .fit_mb import register as register_fit_mb
from .hist import register as register_hist

__all__ = [
    "register_score",
    "register_rank",
    "register_compare",
    "register_generate",
    "register_maxent",
    "register_fit_mb",
    "register_hist"
]
