"""
Clasificación de un corpus dentro de cada grupo de energía

Las imágenes se puntúan en paralelo; el informe se ensambla en un único hilo
y su orden no depende del orden en que terminan las puntuaciones.
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union
import logging

import numpy as np

from app.core.config import settings
from app.core.exceptions import AestheticsError, EmptyCorpusError, ImageNotFoundError
from app.models.levels import GradientOperator
from app.models.measures import Measure
from app.models.ranker import (
    CorpusEntry, CorpusError, CorpusReport, Label, LabeledPair, ScatterRow
)
from app.services.image_io import load_image
from app.services.measures import score

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def rank_corpus(
    directory: PathLike,
    measure: Optional[Measure] = None,
    workers: Optional[int] = None,
    operator: Optional[GradientOperator] = None
) -> CorpusReport:
    """Export function for RankerService.rank_corpus"""
    return RankerService.rank_corpus(
        directory, measure or settings.DEFAULT_MEASURE, workers,
        operator or settings.GRADIENT_OPERATOR
    )


def compare_labeled(
    dir_appealing: PathLike,
    dir_control: PathLike,
    measure: Optional[Measure] = None,
    workers: Optional[int] = None,
    operator: Optional[GradientOperator] = None
) -> CorpusReport:
    """Export function for RankerService.compare_labeled"""
    return RankerService.compare_labeled(
        dir_appealing, dir_control, measure or settings.DEFAULT_MEASURE, workers,
        operator or settings.GRADIENT_OPERATOR
    )


class RankerService:
    """Puntuación de corpus, agrupación por energía y comparación etiquetada"""

    @staticmethod
    def rank_corpus(
        directory: PathLike,
        measure: Measure,
        workers: Optional[int] = None,
        operator: GradientOperator = "forward"
    ) -> CorpusReport:
        entries, errors = RankerService._score_directory(directory, None, workers, operator)
        if not entries:
            raise EmptyCorpusError(f"Ninguna imagen utilizable en {directory}")
        return RankerService._assemble(entries, errors, measure, operator)

    @staticmethod
    def compare_labeled(
        dir_appealing: PathLike,
        dir_control: PathLike,
        measure: Measure,
        workers: Optional[int] = None,
        operator: GradientOperator = "forward"
    ) -> CorpusReport:
        """Pares (atractiva, control) del mismo grupo y fracción ganada por la atractiva"""
        appealing, errors_a = RankerService._score_directory(dir_appealing, "appealing", workers, operator)
        control, errors_c = RankerService._score_directory(dir_control, "control", workers, operator)
        if not appealing:
            raise EmptyCorpusError(f"Ninguna imagen utilizable en {dir_appealing}")
        if not control:
            raise EmptyCorpusError(f"Ninguna imagen utilizable en {dir_control}")

        report = RankerService._assemble(appealing + control, errors_a + errors_c, measure, operator)

        pairs: List[LabeledPair] = []
        for a in sorted(appealing, key=lambda e: e.file):
            for c in sorted(control, key=lambda e: e.file):
                if a.score.l1_energy_bin != c.score.l1_energy_bin:
                    continue
                m_a, m_c = a.score.m(measure), c.score.m(measure)
                pairs.append(LabeledPair(
                    appealing_file=a.file,
                    control_file=c.file,
                    bin=a.score.l1_energy_bin,
                    m_appealing=m_a,
                    m_control=m_c,
                    appealing_wins=m_a > m_c,
                ))
        pairs.sort(key=lambda p: (p.bin, p.appealing_file, p.control_file))

        report.pairs = pairs
        if pairs:
            report.win_fraction = sum(p.appealing_wins for p in pairs) / len(pairs)
            logger.info(f"{len(pairs)} pares en el mismo grupo, fracción ganada {report.win_fraction:.3f}")
        else:
            logger.warning("Los corpus no comparten ningún grupo de energía")
        return report

    @staticmethod
    def _score_directory(
        directory: PathLike,
        label: Optional[Label],
        workers: Optional[int],
        operator: GradientOperator
    ) -> Tuple[List[CorpusEntry], List[CorpusError]]:
        directory = Path(directory)
        if not directory.is_dir():
            raise ImageNotFoundError(f"No existe el directorio {directory}")

        files = sorted(
            p for p in directory.iterdir()
            if p.is_file() and not p.name.startswith(".")
        )
        workers = workers or settings.WORKERS

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda p: RankerService._score_file(p, label, operator), files))
        else:
            results = [RankerService._score_file(p, label, operator) for p in files]

        entries = [r for r in results if isinstance(r, CorpusEntry)]
        errors = [r for r in results if isinstance(r, CorpusError)]
        logger.info(f"{directory}: {len(entries)} imágenes puntuadas, {len(errors)} descartadas")
        return entries, errors

    @staticmethod
    def _score_file(
        path: Path, label: Optional[Label], operator: GradientOperator
    ) -> Union[CorpusEntry, CorpusError]:
        try:
            img = load_image(path)
            return CorpusEntry(
                file=path.name,
                width=img.width,
                height=img.height,
                label=label,
                score=score(img, operator),
            )
        except AestheticsError as e:
            logger.warning(f"Se descarta {path.name}: {e.detail}")
            return CorpusError(file=path.name, error=e.detail)

    @staticmethod
    def _assemble(
        entries: List[CorpusEntry],
        errors: List[CorpusError],
        measure: Measure,
        operator: GradientOperator
    ) -> CorpusReport:
        groups: Dict[int, List[CorpusEntry]] = {}
        for entry in entries:
            groups.setdefault(entry.score.l1_energy_bin, []).append(entry)
        for group in groups.values():
            group.sort(key=lambda e: (-e.score.m(measure), e.file, e.label or ""))

        ordered = sorted(entries, key=lambda e: (e.label or "", e.file))
        return CorpusReport(
            measure=measure,
            gradient_operator=operator,
            entries=ordered,
            groups={b: groups[b] for b in sorted(groups)},
            errors=sorted(errors, key=lambda e: e.file),
        )


def showcase(report: CorpusReport, bin_index: int, seed: int, count: int = 3) -> List[CorpusEntry]:
    """
    Panel de un grupo: la mejor imagen más count-1 elegidas al azar entre el resto,
    ordenadas por M ascendente (la mejor queda a la derecha)
    """
    group = report.groups.get(bin_index, [])
    if not group:
        return []
    best, rest = group[0], group[1:]
    rng = np.random.default_rng(seed)
    picks = min(count - 1, len(rest))
    chosen = [rest[i] for i in sorted(rng.choice(len(rest), size=picks, replace=False))] if picks else []
    panel = chosen + [best]
    return sorted(panel, key=lambda e: (e.score.m(report.measure), e is best))


def scatter_rows(report: CorpusReport) -> List[ScatterRow]:
    """Energía escalada de L1 frente a M, con la etiqueta de cada imagen"""
    return [
        ScatterRow(
            file=e.file,
            label=e.label,
            l1_energy_scaled=e.score.l1.energy_scaled,
            m_eq14=e.score.m_eq14,
            m_eq15=e.score.m_eq15,
        )
        for e in report.entries
    ]
