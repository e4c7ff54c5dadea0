"""End-to-end acceptance suite.

One test per criterion; each prints a single status line, so running

    pytest tests/test_acceptance.py -v -s

shows the full checklist.  The cabled 2-mosaic sweep is shared between the
criteria that need it.
"""

from __future__ import annotations

import random

import pytest

from conftest import corpus_files, load
from vmosaic.braid import BraidWord, Letter, braid_to_mosaic, closure_gauss, layout, parse_word
from vmosaic.catalog import ingest_lines
from vmosaic.gausscodes import canonical, parse_code, trace
from vmosaic.invariants import fingerprint, kauffman_bracket, naive_bracket
from vmosaic.moves import apply, compile_rules, eject, find_sites, inject
from vmosaic.search import SweepConfig, sweep
from vmosaic.surface import BoundaryPairing, VirtualMosaic, complete_pairing, genus, is_nested
from vmosaic.tiles import MosaicGrid, Tile, boundary_endpoint_profile


def _report(num: int, text: str) -> None:
    print(f"\nACCEPTANCE {num}: PASS - {text}")


def test_criterion_1_one_mosaic_sweep():
    res = sweep(SweepConfig(1))
    expected = {
        fingerprint(trace(load("figures", name)))
        for name in ["unknot_1", "unlink2_1", "virtual_hopf"]
    }
    assert res.fingerprints() == expected
    assert len(expected) == 3
    _report(1, "1-mosaics realize exactly the unknot, the 2-unlink, and the virtual Hopf link")


def test_criterion_2_two_mosaic_membership(cabled_sweep2):
    entries = cabled_sweep2.entries
    tref = fingerprint(trace(load("appendixA", "3_1")), True)
    assert tref in entries
    for path in corpus_files("appendixB"):
        fp = fingerprint(trace(load("appendixB", path.stem)), True)
        assert fp in entries, path.stem
    fig8 = fingerprint(trace(load("appendixA", "4_1")), True)
    assert fig8 not in entries
    _report(2, "2-mosaic sweep holds the trefoil and all 30 table knots but not the figure-8")


def test_criterion_3_small_virtual_completeness(cabled_sweep2):
    unknot_fp = fingerprint(parse_code("0"), True)
    sweep_knotted = {
        fp
        for fp in cabled_sweep2.entries
        if fp.component_count == 1 and fp != unknot_fp
    }
    table = {}
    for path in corpus_files("appendixB"):
        table[path.stem] = fingerprint(trace(load("appendixB", path.stem)), True)
    # Ambiguity report: names the plain+2-cable fingerprints cannot separate.
    groups: dict[tuple, list[str]] = {}
    for name, fp in table.items():
        groups.setdefault(fp.key(), []).append(name)
    ambiguous = sorted(tuple(sorted(g)) for g in groups.values() if len(g) > 1)
    unknot_like = sorted(n for n, fp in table.items() if fp == unknot_fp)
    assert ambiguous == [("2.1", "4.4"), ("4.12", "4.8"), ("4.55", "4.77")]
    assert unknot_like == ["4.55", "4.77"]
    expected = set(table.values()) - {unknot_fp}
    assert sweep_knotted == expected
    _report(
        3,
        "sweep knot classes match the 30 table entries; unresolved pairs "
        f"{ambiguous} and unknot-fingerprinted {unknot_like} reported, not merged",
    )


def test_criterion_4_genus_captions():
    from test_corpus import VIRTUAL_GENUS

    for name, expected in VIRTUAL_GENUS.items():
        assert genus(load("appendixB", name).pairing) == expected, name
    spot = {"3.1": 2, "3.2": 1, "3.5": 1, "4.12": 1, "4.104": 1}
    for name, expected in spot.items():
        assert VIRTUAL_GENUS[name] == expected
    _report(4, "all 30 small-virtual mosaics report their stated genus")


def test_criterion_5_classical_regression():
    from importlib import resources

    text = resources.files("vmosaic.data").joinpath("classical.tsv").read_text("utf-8")
    catalog = ingest_lines(text.splitlines(), with_cable=False)
    for path in corpus_files("appendixA"):
        vm = load("appendixA", path.stem)
        assert genus(vm.pairing) == 0, path.stem
        assert is_nested(vm.pairing), path.stem
        hits = catalog.identify(fingerprint(trace(vm)))
        assert hits == [path.stem], (path.stem, hits)
    three = trace(load("appendixA", "7_1"))
    four = trace(load("figures", "7_1_4mosaic"))
    assert three.crossing_count == 9 and four.crossing_count == 7
    assert fingerprint(three) == fingerprint(four)
    _report(5, "all 36 classical mosaics are genus 0, nested, and identify uniquely; "
               "the 9-crossing 3-mosaic is the same knot as the 7-crossing 4-mosaic")


def _random_mosaic_pool():
    pool = [load("appendixB", p.stem) for p in corpus_files("appendixB")]
    pool += [load("appendixA", n) for n in ["3_1", "4_1", "6_2", "7_5", "8_13"]]
    pool += [load("figures", n) for n in ["virtual_trefoil_genus2", "virtual_hopf", "unknot_1"]]
    grown = [inject(vm, 0, vm.grid.n) for vm in pool[:8]]
    return pool + grown


def test_criterion_6_move_calculus():
    rng = random.Random(2024)
    pool = _random_mosaic_pool()
    families = [r.family for r in compile_rules()]
    applications = 0
    genus_rule_checked = 0
    per_family = {f: 0 for f in families}
    while applications < 1000:
        vm = rng.choice(pool)
        fam = rng.choice(families)
        sites = find_sites(vm, fam)
        if not sites:
            continue
        site = rng.choice(sites)
        before_fp = fingerprint(trace(vm))
        before_g = genus(vm.pairing)
        out = apply(vm, site)
        assert fingerprint(trace(out)) == before_fp, fam
        dg = genus(out.pairing) - before_g
        if fam.startswith(("P", "R", "SI")) or fam in ("INJECT", "EJECT"):
            assert dg == 0, (fam, dg)
            genus_rule_checked += 1
        elif fam.startswith("STAB"):
            assert abs(dg) <= 1, (fam, dg)
            genus_rule_checked += 1
        per_family[fam] += 1
        applications += 1
        if applications % 7 == 0 and out.grid.n <= 4:
            pool.append(out)
    assert applications >= 1000 and genus_rule_checked > 0
    exercised = sum(1 for f, k in per_family.items() if k)
    # Inject/eject preserve the code exactly.
    for name in ["3_1", "4_1"]:
        vm = load("appendixA", name)
        code = canonical(trace(vm))
        big = inject(vm, 1, 1)
        assert canonical(trace(big)) == code
        assert genus(big.pairing) == genus(vm.pairing)
        assert eject(big, 1, 1) == vm
    # The worked examples replay step by step (asserted in the moves tests).
    from test_moves import (
        test_worked_example_boundary_r1,
        test_worked_example_virtual_trefoil_genus_drop,
    )

    test_worked_example_boundary_r1()
    test_worked_example_virtual_trefoil_genus_drop()
    _report(6, f"{applications} applications over {exercised} families preserve fingerprints; "
               "both worked examples replay, with the corner stabilization dropping genus 2 to 1")


def test_criterion_7_braid_theorem():
    rng = random.Random(99)
    checked = 0
    for _ in range(200):
        k = rng.randint(1, 4)
        letters = []
        for _ in range(rng.randint(0, 6)):
            if k == 1:
                break
            i = rng.randint(1, k - 1)
            r = rng.random()
            letters.append(
                Letter(True, i) if r < 0.34 else Letter(False, i, 1 if r < 0.67 else -1)
            )
        word = BraidWord(k, tuple(letters))
        vm = braid_to_mosaic(word)  # per-letter code check runs inside
        assert all(int(t) != 11 for row in vm.grid.cells for t in row)
        assert fingerprint(trace(vm)) == fingerprint(closure_gauss(word)), str(word)
        checked += 1
    sm = layout(parse_word("s2^-1 s3 v2 s1^-1", 4))
    from test_braid import PAPER_LAYOUT

    assert sm.n == 6 and [list(r) for r in sm.cells] == PAPER_LAYOUT
    _report(7, f"{checked} random braid closures compile to virtual-tile-free mosaics with "
               "matching fingerprints; the worked braid reproduces the 6x6 layout")


def test_criterion_8_genus_zero_iff_nested():
    def matchings(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for i, other in enumerate(rest):
            for tail in matchings(rest[:i] + rest[i + 1 :]):
                yield [(first, other)] + tail

    total = 0
    for n, slots in [(2, 8), (3, 12)]:
        for matching in matchings(list(range(slots))):
            p = BoundaryPairing.from_pairs(n, matching)
            assert (genus(p) == 0) == is_nested(p)
            total += 1
    assert total == 105 + 10395
    _report(8, f"genus 0 equals nestedness across all {total} matchings on 8 and 12 slots")


def test_criterion_9_oracle_equivalence(plain_sweep2):
    from collections import Counter

    from test_search import _oracle_grids

    naive = Counter()

    def matchings(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for i, other in enumerate(rest):
            for tail in matchings(rest[:i] + rest[i + 1 :]):
                yield [(first, other)] + tail

    codes_seen = {}
    for grid in _oracle_grids(2):
        profile = boundary_endpoint_profile(grid)
        slots = [s for s in range(8) if profile[s]]
        for matching in matchings(slots):
            vm = VirtualMosaic(grid, complete_pairing(grid, matching))
            code = trace(vm)
            if code.component_count == 0:
                continue
            naive[fingerprint(code)] += 1
            if code.crossing_count <= 4:
                codes_seen.setdefault(canonical(code).text, code)
    streamed = Counter({fp: e.count for fp, e in plain_sweep2.entries.items()})
    assert naive == streamed
    checked = 0
    for code in codes_seen.values():
        assert kauffman_bracket(code) == naive_bracket(code)
        checked += 1
    assert checked > 1000
    _report(9, f"streaming sweep matches the brute-force enumerator; state-sum equals the "
               f"naive bracket on {checked} distinct small codes")
