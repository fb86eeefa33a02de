import os
from pathlib import Path

import numpy as np
import pytest

from app.core.exceptions import EmptyCorpusError, ImageNotFoundError
from app.models.image import GrayImage
from app.services.measures import score
from app.services.ranker import compare_labeled, rank_corpus, scatter_rows, showcase
from tests.images import checker, constant, random_image, rows_of, shuffled
from tests.oracles import score_rows


def test_single_image_corpus(write_image, tmp_path):
    write_image(random_image(1, 8, 8), "only.pgm", "corpus")
    report = rank_corpus(tmp_path / "corpus")
    assert len(report.entries) == 1
    assert list(report.groups.values()) == [report.entries]


def test_identical_images_are_ordered_by_filename(write_image, tmp_path):
    img = random_image(2, 8, 8)
    write_image(img, "b.pgm", "corpus")
    write_image(img, "a.pgm", "corpus")
    report = rank_corpus(tmp_path / "corpus")
    (group,) = report.groups.values()
    assert [e.file for e in group] == ["a.pgm", "b.pgm"]
    assert group[0].score.m_eq15 == group[1].score.m_eq15


def test_same_bin_order_matches_oracle(write_image, tmp_path):
    base = random_image(3, 10, 10)
    images = {"x.pgm": base, "y.pgm": shuffled(base, 1), "z.pgm": shuffled(base, 2)}
    for name, img in images.items():
        write_image(img, name, "corpus")

    report = rank_corpus(tmp_path / "corpus", "eq15")
    assert len(report.groups) == 1
    expected = sorted(images, key=lambda name: (-score_rows(rows_of(images[name]))["m_eq15"], name))
    (group,) = report.groups.values()
    assert [e.file for e in group] == expected


def test_groups_partition_the_corpus(write_image, tmp_path):
    for seed in range(12):
        rng = np.random.default_rng(seed)
        level = int(rng.integers(0, 256))
        array = np.clip(rng.normal(level, 30, size=(9, 9)), 0, 255).astype(np.uint8)
        write_image(GrayImage.from_array(array), f"img_{seed:02d}.pgm", "corpus")

    report = rank_corpus(tmp_path / "corpus", "eq14")
    assert sum(len(g) for g in report.groups.values()) == len(report.entries) == 12
    for b, group in report.groups.items():
        assert all(e.score.l1_energy_bin == b for e in group)
        ms = [e.score.m_eq14 for e in group]
        assert ms == sorted(ms, reverse=True)
        for position, entry in enumerate(group, start=1):
            assert report.rank_in_bin(entry) == position


def test_unreadable_files_are_collected(write_image, tmp_path):
    write_image(random_image(4, 6, 6), "good.pgm", "corpus")
    (tmp_path / "corpus" / "notes.txt").write_text("no es una imagen")
    write_image(constant(2, 2, 0), "tiny.pgm", "corpus")
    (tmp_path / "corpus" / ".hidden").write_text("ignorado")

    report = rank_corpus(tmp_path / "corpus")
    assert [e.file for e in report.entries] == ["good.pgm"]
    assert [e.file for e in report.errors] == ["notes.txt", "tiny.pgm"]


def test_empty_corpus(tmp_path):
    (tmp_path / "corpus").mkdir()
    (tmp_path / "corpus" / "notes.txt").write_text("x")
    with pytest.raises(EmptyCorpusError):
        rank_corpus(tmp_path / "corpus")


def test_missing_directory(tmp_path):
    with pytest.raises(ImageNotFoundError):
        rank_corpus(tmp_path / "nope")


def test_workers_do_not_change_the_report(write_image, tmp_path):
    for seed in range(8):
        write_image(random_image(seed, 7, 7), f"n{seed}.pgm", "corpus")
    sequential = rank_corpus(tmp_path / "corpus", workers=1)
    parallel = rank_corpus(tmp_path / "corpus", workers=4)
    assert sequential.model_dump() == parallel.model_dump()


def test_report_records_the_gradient_operator(write_image, tmp_path):
    img = random_image(5, 8, 8)
    write_image(img, "n.pgm", "corpus")
    forward = rank_corpus(tmp_path / "corpus")
    sobel = rank_corpus(tmp_path / "corpus", operator="sobel")
    assert (forward.gradient_operator, sobel.gradient_operator) == ("forward", "sobel")
    assert sobel.entries[0].score == score(img, "sobel")


# ==================== COMPARACIÓN ETIQUETADA ====================

def test_identical_directories_never_win(write_image, tmp_path):
    for value in (0, 100, 200):
        img = constant(5, 5, value)
        write_image(img, f"c{value}.pgm", "appealing")
        write_image(img, f"c{value}.pgm", "control")

    report = compare_labeled(tmp_path / "appealing", tmp_path / "control")
    assert len(report.pairs) == 3
    assert report.win_fraction == 0.0
    assert all(p.same_bin for p in report.pairs)


def test_checker_against_its_shuffle(write_image, tmp_path):
    pattern = checker(3, 3)
    scrambled = shuffled(pattern, 5)
    write_image(pattern, "checker.pgm", "appealing")
    write_image(scrambled, "scrambled.pgm", "control")

    report = compare_labeled(tmp_path / "appealing", tmp_path / "control", "eq15")
    (pair,) = report.pairs
    oracle_a = score_rows(rows_of(pattern))["m_eq15"]
    oracle_c = score_rows(rows_of(scrambled))["m_eq15"]
    assert pair.appealing_wins == (oracle_a > oracle_c)
    assert report.win_fraction == (1.0 if oracle_a > oracle_c else 0.0)


def test_disjoint_bins_give_no_pairs(write_image, tmp_path):
    write_image(constant(4, 4, 0), "black.pgm", "appealing")
    write_image(constant(4, 4, 255), "white.pgm", "control")
    report = compare_labeled(tmp_path / "appealing", tmp_path / "control")
    assert report.pairs == []
    assert report.win_fraction is None


def test_compare_needs_both_sides(write_image, tmp_path):
    write_image(constant(4, 4, 0), "black.pgm", "appealing")
    (tmp_path / "control").mkdir()
    with pytest.raises(EmptyCorpusError):
        compare_labeled(tmp_path / "appealing", tmp_path / "control")


def test_scatter_rows_carry_labels(write_image, tmp_path):
    write_image(constant(4, 4, 50), "a.pgm", "appealing")
    write_image(constant(4, 4, 60), "c.pgm", "control")
    report = compare_labeled(tmp_path / "appealing", tmp_path / "control")
    rows = scatter_rows(report)
    assert [(r.file, r.label) for r in rows] == [("a.pgm", "appealing"), ("c.pgm", "control")]
    assert rows[0].l1_energy_scaled == pytest.approx(50 / 255)


# ==================== PANEL ====================

def test_showcase_puts_the_best_image_last(write_image, tmp_path):
    base = random_image(7, 8, 8)
    for seed in range(6):
        write_image(shuffled(base, seed), f"s{seed}.pgm", "corpus")
    report = rank_corpus(tmp_path / "corpus")
    (b,) = report.groups

    panel = showcase(report, b, seed=4)
    assert len(panel) == 3
    assert panel[-1] is report.groups[b][0]
    ms = [e.score.m_eq15 for e in panel]
    assert ms == sorted(ms)
    assert [e.file for e in showcase(report, b, seed=4)] == [e.file for e in panel]


def test_showcase_of_empty_bin(write_image, tmp_path):
    write_image(constant(4, 4, 0), "black.pgm", "corpus")
    report = rank_corpus(tmp_path / "corpus")
    assert showcase(report, 120, seed=0) == []


# ==================== CONJUNTO DE DATOS REAL ====================

def test_appealing_images_win_most_same_bin_pairs():
    root = os.environ.get("BEAUTY_DATASET_DIR")
    if not root or not (Path(root) / "appealing").is_dir() or not (Path(root) / "control").is_dir():
        pytest.skip("BEAUTY_DATASET_DIR no apunta a un conjunto con appealing/ y control/")

    report = compare_labeled(Path(root) / "appealing", Path(root) / "control", "eq15")
    assert report.pairs
    assert report.win_fraction > 0.5
