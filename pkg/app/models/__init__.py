from .image import GrayImage
from .levels import GradientOperator, LevelPyramid
from .measures import Histogram, LevelStats, LevelDistances, AestheticScore, Measure
from .statmech import MaxEntProblem, MaxEntSolution, MaxEntReference, MBFit, FitWeighting
from .search import (
    GeneratorConfig, GeneratorKind, ArchiveSlot, EnergyBinnedArchive,
    CandidateRecord, ArchiveSummary, GroupSummary, ArchiveManifest, SlotRecord
)
from .ranker import CorpusEntry, CorpusError, CorpusReport, LabeledPair, ScatterRow

__all__ = [
    "GrayImage",
    "GradientOperator", "LevelPyramid",
    "Histogram", "LevelStats", "LevelDistances", "AestheticScore", "Measure",
    "MaxEntProblem", "MaxEntSolution", "MaxEntReference", "MBFit", "FitWeighting",
    "GeneratorConfig", "GeneratorKind", "ArchiveSlot", "EnergyBinnedArchive",
    "CandidateRecord", "ArchiveSummary", "GroupSummary", "ArchiveManifest", "SlotRecord",
    "CorpusEntry", "CorpusError", "CorpusReport", "LabeledPair", "ScatterRow"
]
