"""
Serialización JSON y CSV de puntuaciones, informes y distribuciones
"""

from io import StringIO
from typing import Any, Dict, List, Sequence
import csv
import json

from app.models.image import GrayImage
from app.models.levels import GradientOperator
from app.models.measures import AestheticScore, Histogram
from app.models.ranker import CorpusReport, ScatterRow
from app.models.statmech import MaxEntSolution

SCORE_COLUMNS = [
    "file", "width", "height",
    "l1_entropy_bits", "l1_energy", "l1_entropy_scaled", "l1_energy_scaled",
    "l2_entropy_bits", "l2_energy", "l2_entropy_scaled", "l2_energy_scaled",
    "l3_entropy_bits", "l3_energy", "l3_entropy_scaled", "l3_energy_scaled",
    "m_eq14", "m_eq15", "l1_energy_bin",
]
RANK_COLUMNS = ["file", "bin", "l1_energy", "m_eq14", "m_eq15", "rank_in_bin"]
PAIR_COLUMNS = ["appealing_file", "control_file", "bin", "m_appealing", "m_control", "appealing_wins"]
SCATTER_COLUMNS = ["file", "label", "l1_energy_scaled", "m_eq14", "m_eq15"]


def to_json(document: Any) -> str:
    """Un único documento JSON, con orden de claves estable"""
    return json.dumps(document, indent=2) + "\n"


def to_csv(rows: Sequence[Dict[str, Any]], columns: List[str]) -> str:
    buffer = StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


# ==================== PUNTUACIONES ====================

def score_document(
    file: str, img: GrayImage, result: AestheticScore, operator: GradientOperator
) -> Dict[str, Any]:
    return {
        "file": file,
        "width": img.width,
        "height": img.height,
        "gradient_operator": operator,
        **result.model_dump(mode="json"),
    }


def score_row(file: str, img: GrayImage, result: AestheticScore) -> Dict[str, Any]:
    row: Dict[str, Any] = {"file": file, "width": img.width, "height": img.height}
    for k, stats in enumerate(result.levels, start=1):
        row[f"l{k}_entropy_bits"] = stats.entropy_bits
        row[f"l{k}_energy"] = stats.energy
        row[f"l{k}_entropy_scaled"] = stats.entropy_scaled
        row[f"l{k}_energy_scaled"] = stats.energy_scaled
    row["m_eq14"] = result.m_eq14
    row["m_eq15"] = result.m_eq15
    row["l1_energy_bin"] = result.l1_energy_bin
    return row


# ==================== INFORMES DE CORPUS ====================

def report_document(report: CorpusReport) -> Dict[str, Any]:
    document = report.model_dump(mode="json")
    if report.pairs is None:
        document.pop("pairs")
        document.pop("win_fraction")
    return document


def rank_rows(report: CorpusReport) -> List[Dict[str, Any]]:
    rows = []
    for b, group in report.groups.items():
        for position, entry in enumerate(group, start=1):
            rows.append({
                "file": entry.file,
                "bin": b,
                "l1_energy": entry.score.l1.energy,
                "m_eq14": entry.score.m_eq14,
                "m_eq15": entry.score.m_eq15,
                "rank_in_bin": position,
            })
    return rows


def pair_rows(report: CorpusReport) -> List[Dict[str, Any]]:
    return [p.model_dump(exclude={"same_bin"}) for p in report.pairs or []]


def scatter_csv(rows: List[ScatterRow]) -> str:
    return to_csv([r.model_dump() for r in rows], SCATTER_COLUMNS)


# ==================== DISTRIBUCIONES ====================

def histogram_csv(h: Histogram) -> str:
    return to_csv([{"value": i, "count": c} for i, c in enumerate(h.counts)], ["value", "count"])


def maxent_csv(solution: MaxEntSolution) -> str:
    rows = [
        {"level": level, "occupation": occupation}
        for level, occupation in zip(solution.levels, solution.occupations)
    ]
    return to_csv(rows, ["level", "occupation"])


def fit_csv(h: Histogram, fitted: List[float]) -> str:
    rows = [{"bin": i, "count": c, "fitted": f} for i, (c, f) in enumerate(zip(h.counts, fitted))]
    return to_csv(rows, ["bin", "count", "fitted"])
