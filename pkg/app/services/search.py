"""
Generación elitista por grupos de energía

Se proponen patrones aleatorios, se agrupan por la energía escalada de L1 en
150 grupos y un candidato solo reemplaza al titular de su grupo si su M es
estrictamente mayor.

Concurrencia: en modo secuencial (workers=1) la ejecución es determinista
para una semilla dada. Con varios workers, proponer y puntuar ocurre en
paralelo y la actualización de cada grupo se serializa con un cerrojo por
grupo; se garantiza el elitismo pero no el orden de los candidatos, por lo
que el archivo final puede variar entre ejecuciones.
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from threading import Lock
from typing import Callable, List, Optional, Union
import json
import logging
import math

import numpy as np
from pydantic import ValidationError

from app.core.exceptions import (
    CorruptArchiveError, ImageNotFoundError, IoFailureError, MalformedImageError,
    OutOfRangeError, UnsupportedFormatError
)
from app.models.image import GrayImage
from app.models.measures import AestheticScore
from app.models.search import (
    ArchiveManifest, ArchiveSlot, ArchiveSummary, CandidateRecord,
    EnergyBinnedArchive, GeneratorConfig, GroupSummary, SlotRecord
)
from app.services.binning import ENERGY_BINS, energy_bin
from app.services.image_io import load_image, save_image
from app.services.measures import score

logger = logging.getLogger(__name__)

ARCHIVE_FILE = "archive.json"
RESCORE_TOLERANCE = 1e-12

CandidateCallback = Callable[[CandidateRecord], None]

__all__ = [
    "ENERGY_BINS", "energy_bin", "propose", "evolve", "top_groups",
    "save_archive", "load_archive", "archive_summary", "GeneratorService"
]


# ==================== EXPORTS ====================

def propose(cfg: GeneratorConfig, rng: np.random.Generator) -> GrayImage:
    """Export function for GeneratorService.propose"""
    return GeneratorService.propose(cfg, rng)


def evolve(
    cfg: GeneratorConfig,
    workers: int = 1,
    on_candidate: Optional[CandidateCallback] = None
) -> EnergyBinnedArchive:
    """Export function for GeneratorService.evolve"""
    return GeneratorService.evolve(cfg, workers=workers, on_candidate=on_candidate)


def top_groups(a: EnergyBinnedArchive, k: int) -> List[int]:
    """Los k grupos con más candidatos; los empates favorecen el índice menor"""
    if not 1 <= k <= ENERGY_BINS:
        raise OutOfRangeError(f"k debe estar entre 1 y {ENERGY_BINS}, es {k}")
    order = sorted(range(ENERGY_BINS), key=lambda b: (-a.counts[b], b))
    return order[:k]


def archive_summary(a: EnergyBinnedArchive, k: int = 5) -> ArchiveSummary:
    groups = []
    for b in top_groups(a, k):
        slot = a.bins[b]
        groups.append(GroupSummary(
            bin=b,
            count=a.counts[b],
            m=slot.score.m(a.config.measure) if slot else None,
            found_at=slot.found_at if slot else None,
        ))
    return ArchiveSummary(
        seed=a.config.seed,
        gradient_operator=a.config.gradient_operator,
        bins=ENERGY_BINS,
        occupied_bins=len(a.occupied),
        total_candidates=a.total_candidates,
        top_groups=groups,
    )


class GeneratorService:
    """Propuesta de patrones y bucle elitista"""

    @staticmethod
    def propose(cfg: GeneratorConfig, rng: np.random.Generator) -> GrayImage:
        """Un patrón nuevo de las dimensiones de la configuración"""
        if cfg.generator_kind == "uniform_noise":
            array = GeneratorService._uniform_noise(rng, cfg.height, cfg.width)
        elif cfg.generator_kind == "block_mosaic":
            array = GeneratorService._block_mosaic(rng, cfg.height, cfg.width)
        else:
            array = GeneratorService._symmetric_tile(rng, cfg.height, cfg.width)
        return GrayImage.from_array(array)

    @staticmethod
    def _uniform_noise(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
        return rng.integers(0, 256, size=(height, width), dtype=np.uint8)

    @staticmethod
    def _block_mosaic(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
        """Bandas de rectángulos de tamaño 2..lado/2 con intensidad constante"""
        canvas = np.zeros((height, width), dtype=np.uint8)
        max_h = max(2, height // 2)
        max_w = max(2, width // 2)
        y = 0
        while y < height:
            block_h = int(rng.integers(2, max_h + 1))
            x = 0
            while x < width:
                block_w = int(rng.integers(2, max_w + 1))
                canvas[y:y + block_h, x:x + block_w] = rng.integers(0, 256)
                x += block_w
            y += block_h
        return canvas

    @staticmethod
    def _symmetric_tile(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
        """Cuadrante aleatorio reflejado en horizontal y en vertical"""
        quad_h = math.ceil(height / 2)
        quad_w = math.ceil(width / 2)
        quadrant = GeneratorService._block_mosaic(rng, quad_h, quad_w)
        # con lado impar la fila/columna central no se duplica
        top = np.hstack([quadrant, np.fliplr(quadrant)[:, 2 * quad_w - width:]])
        return np.vstack([top, np.flipud(top)[2 * quad_h - height:, :]])

    @staticmethod
    def offer(
        archive: EnergyBinnedArchive,
        image: GrayImage,
        candidate: AestheticScore,
        iteration: int
    ) -> bool:
        """Inserción elitista; devuelve True si el candidato pasa a ser titular"""
        b = candidate.l1_energy_bin
        archive.counts[b] += 1
        incumbent = archive.bins[b]
        measure = archive.config.measure
        if incumbent is None or candidate.m(measure) > incumbent.score.m(measure):
            archive.bins[b] = ArchiveSlot(image=image, score=candidate, found_at=iteration)
            return True
        return False

    @staticmethod
    def evolve(
        cfg: GeneratorConfig,
        workers: int = 1,
        on_candidate: Optional[CandidateCallback] = None
    ) -> EnergyBinnedArchive:
        """Ejecuta cfg.iterations pasos proponer → puntuar → agrupar → comparar"""
        logger.info(
            f"Generando {cfg.iterations} candidatos {cfg.width}x{cfg.height} "
            f"({cfg.generator_kind}, {cfg.measure}) con semilla {cfg.seed}"
        )
        archive = EnergyBinnedArchive.empty(cfg)

        if workers <= 1:
            rng = np.random.default_rng(cfg.seed)
            for i in range(cfg.iterations):
                GeneratorService._step(archive, cfg, rng, i, on_candidate)
        else:
            GeneratorService._evolve_parallel(archive, cfg, workers, on_candidate)

        logger.info(
            f"Generación terminada: {len(archive.occupied)} grupos ocupados de {ENERGY_BINS}"
        )
        return archive

    @staticmethod
    def _step(
        archive: EnergyBinnedArchive,
        cfg: GeneratorConfig,
        rng: np.random.Generator,
        iteration: int,
        on_candidate: Optional[CandidateCallback]
    ) -> None:
        image = GeneratorService.propose(cfg, rng)
        candidate = score(image, cfg.gradient_operator)
        accepted = GeneratorService.offer(archive, image, candidate, iteration)
        if on_candidate is not None:
            on_candidate(CandidateRecord(
                iteration=iteration,
                bin=candidate.l1_energy_bin,
                m=candidate.m(cfg.measure),
                accepted=accepted,
            ))
        logger.debug(f"Candidato {iteration}: grupo {candidate.l1_energy_bin}, aceptado={accepted}")

    @staticmethod
    def _evolve_parallel(
        archive: EnergyBinnedArchive,
        cfg: GeneratorConfig,
        workers: int,
        on_candidate: Optional[CandidateCallback]
    ) -> None:
        # un generador independiente por worker, derivado de la semilla
        streams = np.random.SeedSequence(cfg.seed).spawn(workers)
        locks = [Lock() for _ in range(ENERGY_BINS)]

        def run(worker: int) -> None:
            rng = np.random.default_rng(streams[worker])
            for i in range(worker, cfg.iterations, workers):
                image = GeneratorService.propose(cfg, rng)
                candidate = score(image, cfg.gradient_operator)
                with locks[candidate.l1_energy_bin]:
                    accepted = GeneratorService.offer(archive, image, candidate, i)
                if on_candidate is not None:
                    on_candidate(CandidateRecord(
                        iteration=i,
                        bin=candidate.l1_energy_bin,
                        m=candidate.m(cfg.measure),
                        accepted=accepted,
                    ))

        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(workers)))


# ==================== PERSISTENCIA ====================

def save_archive(a: EnergyBinnedArchive, directory: Union[str, Path]) -> None:
    """archive.json más un bin_<k>.pgm por grupo ocupado"""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise IoFailureError(f"No se pudo crear {directory}: {e}")

    # imágenes de una ejecución anterior en el mismo directorio
    for stale in directory.glob("bin_*.pgm"):
        try:
            stale.unlink()
        except OSError as e:
            raise IoFailureError(f"No se pudo borrar {stale}: {e}")

    slots: List[Optional[SlotRecord]] = []
    for k, slot in enumerate(a.bins):
        if slot is None:
            slots.append(None)
            continue
        name = f"bin_{k}.pgm"
        save_image(slot.image, directory / name)
        slots.append(SlotRecord(
            file=name,
            m_eq14=slot.score.m_eq14,
            m_eq15=slot.score.m_eq15,
            found_at=slot.found_at,
            score=slot.score,
        ))

    manifest = ArchiveManifest(config=a.config, seed=a.config.seed, counts=a.counts, slots=slots)
    document = json.dumps(manifest.model_dump(mode="json"), indent=2) + "\n"
    try:
        (directory / ARCHIVE_FILE).write_text(document, encoding="utf-8")
    except OSError as e:
        raise IoFailureError(f"No se pudo escribir {ARCHIVE_FILE}: {e}")
    logger.info(f"Archivo guardado en {directory} ({len(a.occupied)} imágenes)")


def load_archive(directory: Union[str, Path]) -> EnergyBinnedArchive:
    """Reconstruye un archivo guardado, comprobando que cada PGM repuntúa igual"""
    directory = Path(directory)
    try:
        raw = (directory / ARCHIVE_FILE).read_text(encoding="utf-8")
    except OSError as e:
        raise IoFailureError(f"No se pudo leer {directory / ARCHIVE_FILE}: {e}")

    try:
        manifest = ArchiveManifest.model_validate_json(raw)
    except ValidationError as e:
        raise CorruptArchiveError(f"{ARCHIVE_FILE} inválido: {e.error_count()} errores")

    bins: List[Optional[ArchiveSlot]] = []
    for k, record in enumerate(manifest.slots):
        if record is None:
            bins.append(None)
            continue
        try:
            image = load_image(directory / record.file)
        except (ImageNotFoundError, MalformedImageError, UnsupportedFormatError) as e:
            raise CorruptArchiveError(f"Grupo {k} de {ARCHIVE_FILE}: {e.detail}")
        rescored = score(image, manifest.config.gradient_operator)
        if (
            rescored.l1_energy_bin != k
            or record.score.l1_energy_bin != k
            or not _close(rescored.m_eq14, record.m_eq14)
            or not _close(rescored.m_eq15, record.m_eq15)
        ):
            raise CorruptArchiveError(f"{record.file} no corresponde al grupo {k} de {ARCHIVE_FILE}")
        bins.append(ArchiveSlot(image=image, score=record.score, found_at=record.found_at))

    return EnergyBinnedArchive(config=manifest.config, bins=bins, counts=manifest.counts)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= RESCORE_TOLERANCE
