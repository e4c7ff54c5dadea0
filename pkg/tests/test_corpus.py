"""Regression checks for the transcribed mosaic tables."""

from __future__ import annotations

from conftest import corpus_files, load
from vmosaic.braid import closure_gauss, parse_word
from vmosaic.gausscodes import trace
from vmosaic.invariants import fingerprint
from vmosaic.moves import classical_import
from vmosaic.surface import genus, is_nested
from vmosaic.textform import read_mosaic

# Genus stated with each small-virtual-knot diagram.
VIRTUAL_GENUS = {
    "2.1": 1, "3.1": 2, "3.2": 1, "3.3": 2, "3.4": 2, "3.5": 1, "3.6": 0,
    "3.7": 1, "4.1": 2, "4.4": 2, "4.8": 2, "4.12": 1, "4.14": 2, "4.21": 2,
    "4.30": 2, "4.36": 1, "4.37": 1, "4.43": 1, "4.48": 2, "4.55": 2,
    "4.59": 2, "4.64": 1, "4.65": 1, "4.71": 2, "4.77": 2, "4.92": 1,
    "4.95": 1, "4.99": 1, "4.104": 1, "4.105": 1,
}

FIGURE_GENUS = {
    "unknot_1": 0,
    "unlink2_1": 0,
    "virtual_hopf": 1,
    "virtual_trefoil_genus1": 1,
    "virtual_trefoil_genus2": 2,
    "9_16": 0, "9_23": 0, "9_31": 0,
    "7_1_4mosaic": 0,
    "7_2_classical_6mosaic": 0,
    "7_2_virtual_4mosaic": 0,
    "alternating_2mosaic_trefoil": 0,
}


def test_corpus_sizes():
    assert len(corpus_files("appendixA")) == 36
    assert len(corpus_files("appendixB")) == 30


def test_classical_table_all_genus_zero_and_nested():
    for path in corpus_files("appendixA"):
        vm, _ = read_mosaic(path.read_text(encoding="utf-8"))
        assert genus(vm.pairing) == 0, path.stem
        assert is_nested(vm.pairing), path.stem


def test_virtual_table_genus_captions():
    assert set(VIRTUAL_GENUS) == {p.stem for p in corpus_files("appendixB")}
    for name, expected in VIRTUAL_GENUS.items():
        vm = load("appendixB", name)
        assert genus(vm.pairing) == expected, name


def test_figure_genus_captions():
    for name, expected in FIGURE_GENUS.items():
        vm = load("figures", name)
        assert genus(vm.pairing) == expected, name


def test_trefoil_mosaic_matches_virtual_3_6():
    # The classical trefoil appears in the small-virtual table as 3.6.
    a = fingerprint(trace(load("appendixA", "3_1")))
    b = fingerprint(trace(load("appendixB", "3.6")))
    assert a == b


def test_nine_crossing_three_mosaics():
    fps = {}
    for name in ["9_16", "9_23", "9_31"]:
        vm = load("figures", name)
        code = trace(vm)
        assert code.crossing_count == 9 and code.component_count == 1
        fps[name] = fingerprint(code)
    assert len(set(fps.values())) == 3
    # All three are alternating patterns on the checkerboard grid.
    for name in fps:
        grid = load("figures", name).grid
        assert len(grid.crossing_cells()) == 9


def test_seven_one_has_a_nine_crossing_three_mosaic():
    three = trace(load("appendixA", "7_1"))
    four = trace(load("figures", "7_1_4mosaic"))
    assert three.crossing_count == 9
    assert four.crossing_count == 7
    assert fingerprint(three) == fingerprint(four)
    torus = closure_gauss(parse_word("s1 s1 s1 s1 s1 s1 s1", 2))
    assert fingerprint(three) == fingerprint(torus)


def test_seven_two_import_chain():
    classical = load("figures", "7_2_classical_6mosaic").grid
    imported = classical_import(classical)
    depicted = load("figures", "7_2_virtual_4mosaic")
    assert imported == depicted
    fp = fingerprint(trace(imported))
    assert fp == fingerprint(trace(load("appendixA", "7_2")))


def test_alternating_two_mosaic_is_the_trefoil():
    # The fully labeled alternating 2-mosaic collapses to the trefoil with an
    # extra kink.
    code = trace(load("figures", "alternating_2mosaic_trefoil"))
    assert code.crossing_count == 4
    assert fingerprint(code) == fingerprint(trace(load("appendixA", "3_1")))


def test_classical_braid_word_cross_checks():
    words = {
        "3_1": ("s1 s1 s1", 2),
        "4_1": ("s1 s2^-1 s1 s2^-1", 3),
        "5_1": ("s1 s1 s1 s1 s1", 2),
        "7_1": ("s1 s1 s1 s1 s1 s1 s1", 2),
        "8_19": ("s1 s2 s1 s2 s1 s2 s1 s2", 3),
    }
    for name, (word, k) in words.items():
        mosaic_fp = fingerprint(trace(load("appendixA", name)))
        braid_fp = fingerprint(closure_gauss(parse_word(word, k)))
        assert mosaic_fp == braid_fp, name
