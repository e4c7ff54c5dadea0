from __future__ import annotations

import pytest

from conftest import load
from vmosaic.gausscodes import canonical, trace
from vmosaic.invariants import fingerprint
from vmosaic.moves import (
    NotClosed,
    NotEjectable,
    apply,
    classical_import,
    compile_rules,
    eject,
    find_sites,
    inject,
    rule,
)
from vmosaic.surface import BoundaryPairing, VirtualMosaic, genus
from vmosaic.tiles import MosaicGrid, Tile

T = Tile


def VM(rows, pairs):
    grid = MosaicGrid.from_rows([[T(x) for x in r] for r in rows])
    return VirtualMosaic(grid, BoundaryPairing.from_pairs(len(rows), pairs))


# Frozen at build time from the enumeration of the schematic closures.
EXPECTED_COUNTS = {
    "P1": 32, "P2_3": 64, "P4": 32, "P5": 32, "P6": 32, "P7": 64,
    "P8_9": 32, "P10_11": 64, "R1": 128, "R2A": 32, "R2B": 64, "R3": 256,
    "SI1": 32, "SI2": 512, "SI3": 64, "SI4": 8, "SI5": 32, "SI6": 16,
    "SI7": 32, "SI8": 128, "SI9": 64, "STAB1": 4, "STAB2": 8, "STAB3": 16,
    "STAB4": 64, "LABELSWAP": 1, "INJECT": 1, "EJECT": 1,
}


def test_rule_counts_golden():
    counts = {r.family: len(r.instances) for r in compile_rules()}
    assert counts == EXPECTED_COUNTS


def test_spec_count_examples():
    assert len(rule("R1").instances) >= 8
    assert all(
        p.rows == 2 and p.cols == 2 for inst in rule("P5").instances for p in inst.patches
    )
    assert len(rule("STAB1").instances) == 4  # one per corner


def test_instances_are_suitably_connected_fragments():
    from vmosaic.tiles import E, N, S, W, touches

    for fam in compile_rules():
        for inst in fam.instances:
            for p in inst.patches:
                if any(isinstance(x, frozenset) for row in p.before for x in row):
                    continue
                for cells in (p.before, p.after):
                    for r in range(p.rows):
                        for c in range(p.cols):
                            if c + 1 < p.cols:
                                assert touches(cells[r][c], E) == touches(cells[r][c + 1], W)
                            if r + 1 < p.rows:
                                assert touches(cells[r][c], S) == touches(cells[r + 1][c], N)


def test_find_sites_examples():
    blank = VM([[0, 0], [0, 0]], [(0, 1), (2, 3), (4, 5), (6, 7)])
    assert find_sites(blank, "R1") == []
    trefoil = load("appendixA", "3_1")
    assert len(find_sites(trefoil, "INJECT")) == 9  # (i, j) in {0,1,2}^2


def test_apply_is_reversible():
    import random

    rng = random.Random(11)
    seeds = [load("appendixB", n) for n in ["2.1", "3.5", "4.12"]]
    seeds.append(load("appendixA", "4_1"))
    families = [r.family for r in compile_rules() if r.family not in ("INJECT", "EJECT")]
    done = 0
    while done < 60:
        vm = rng.choice(seeds)
        fam = rng.choice(families)
        sites = find_sites(vm, fam)
        if not sites:
            continue
        site = rng.choice(sites)
        out = apply(vm, site)
        # Some site of the same family must lead straight back.
        back = [s for s in find_sites(out, fam) if apply(out, s) == vm]
        assert back, f"{fam} application is not reversible"
        done += 1


def test_worked_example_boundary_r1():
    # An R1-like move through the boundary: stabilize, inject, pull the
    # strand off the edge, straighten, remove the kink, and eject.
    start = VM([[10, 5], [6, 0]], [(0, 2), (1, 3), (5, 7), (4, 6)])
    code0 = canonical(trace(start))
    fp0 = fingerprint(trace(start))
    assert genus(start.pairing) == 2

    def step(vm, family, expect, code_preserved=True):
        for s in find_sites(vm, family):
            try:
                out = apply(vm, s)
            except Exception:
                continue
            if out == expect:
                if code_preserved:
                    assert canonical(trace(out)) == code0
                assert fingerprint(trace(out)) == fp0
                return out
        raise AssertionError(f"no {family} site reaches the expected mosaic")

    vm = step(start, "STAB3", VM([[10, 4], [6, 0]], [(0, 1), (2, 3), (5, 7), (4, 6)]))
    assert genus(vm.pairing) == 1
    vm = inject(vm, 0, 2)
    pairs = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 12), (11, 13), (14, 15)]
    assert vm == VM([[6, 6, 0, 0], [6, 6, 0, 0], [10, 4, 0, 0], [6, 0, 0, 0]], pairs)
    vm = step(vm, "SI1", VM([[2, 1, 0, 0], [6, 6, 0, 0], [10, 4, 0, 0], [6, 0, 0, 0]], pairs))
    vm = step(vm, "P6", VM([[0, 0, 0, 0], [2, 1, 0, 0], [10, 4, 0, 0], [6, 0, 0, 0]], pairs))
    vm = step(vm, "R1", VM([[0, 0, 0, 0], [2, 1, 0, 0], [8, 4, 0, 0], [6, 0, 0, 0]], pairs),
              code_preserved=False)
    vm = step(vm, "P7", VM([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [6, 0, 0, 0]], pairs),
              code_preserved=False)
    vm = eject(vm, 0, 2)
    assert vm == VM([[1, 0], [6, 0]], [(0, 1), (2, 3), (4, 6), (5, 7)])
    assert fingerprint(trace(vm)) == fp0


def test_worked_example_virtual_trefoil_genus_drop():
    # From the genus-2 virtual-trefoil mosaic to the genus-1 one.
    start = VM([[10, 7], [9, 8]], [(0, 2), (1, 3), (4, 6), (5, 7)])
    code0 = canonical(trace(start))
    assert genus(start.pairing) == 2

    def step(vm, family, expect):
        for s in find_sites(vm, family):
            try:
                out = apply(vm, s)
            except Exception:
                continue
            if out == expect:
                assert canonical(trace(out)) == code0
                return out
        raise AssertionError(f"no {family} site reaches the expected mosaic")

    vm = step(start, "STAB1", VM([[10, 7], [9, 8]], [(0, 1), (2, 3), (4, 6), (5, 7)]))
    assert genus(vm.pairing) == 1  # the stated stabilization drop
    vm = inject(vm, 2, 2)
    pairs = [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 14), (11, 15), (12, 13)]
    assert vm == VM([[10, 7, 5, 5], [9, 8, 5, 5], [6, 6, 0, 0], [6, 6, 0, 0]], pairs)
    assert genus(vm.pairing) == 1
    vm = step(vm, "SI1", VM([[10, 7, 5, 1], [9, 8, 5, 4], [6, 6, 0, 0], [6, 6, 0, 0]], pairs))
    pairs4 = [(0, 3), (1, 2), (4, 5), (6, 7), (8, 9), (10, 14), (11, 15), (12, 13)]
    vm = step(vm, "SI3", VM([[10, 1, 0, 6], [9, 8, 5, 4], [6, 6, 0, 0], [6, 6, 0, 0]], pairs4))
    vm = step(vm, "P1", VM([[10, 1, 2, 4], [9, 8, 4, 0], [6, 6, 0, 0], [6, 6, 0, 0]], pairs4))
    pairs6 = [(0, 5), (1, 2), (3, 4), (6, 7), (8, 9), (10, 14), (11, 15), (12, 13)]
    vm = step(vm, "SI5", VM([[10, 1, 2, 1], [9, 8, 4, 3], [6, 6, 0, 0], [6, 6, 0, 0]], pairs6))
    vm = step(vm, "P5", VM([[10, 1, 0, 0], [9, 8, 5, 5], [6, 6, 0, 0], [6, 6, 0, 0]], pairs6))
    pairs8 = [(0, 5), (1, 4), (2, 3), (6, 7), (8, 9), (10, 14), (11, 15), (12, 13)]
    vm = step(vm, "SI4", VM([[10, 1, 0, 0], [9, 8, 5, 5], [6, 6, 0, 0], [6, 6, 0, 0]], pairs8))
    vm = eject(vm, 2, 2)
    assert vm == VM([[10, 1], [9, 8]], [(0, 3), (1, 2), (4, 6), (5, 7)])
    assert genus(vm.pairing) == 1
    assert canonical(trace(vm)) == code0


def test_inject_standard_definition_cases():
    blank = VM([[0]], [(0, 1), (2, 3)])
    grown = inject(blank, 1, 1)
    assert all(t == T.T0 for row in grown.grid.cells for t in row)
    assert grown.grid.n == 3
    assert genus(grown.pairing) == 0


def test_inject_figure_case_1_2():
    fig8 = load("appendixA", "4_1")
    out = inject(fig8, 1, 2)
    expected = VM(
        [
            [9, 1, 0, 0, 2],
            [6, 6, 0, 0, 6],
            [6, 6, 0, 0, 6],
            [3, 9, 5, 5, 10],
            [2, 10, 5, 5, 4],
        ],
        [
            (0, 5), (1, 4), (2, 3), (6, 7), (8, 13), (9, 10), (11, 12),
            (14, 19), (15, 16), (17, 18),
        ],
    )
    assert out == expected
    assert genus(out.pairing) == 0
    assert canonical(trace(out)) == canonical(trace(fig8))


def test_inject_eject_identity_everywhere():
    for name in ["3_1", "4_1"]:
        vm = load("appendixA", name)
        code = canonical(trace(vm))
        g = genus(vm.pairing)
        for i in range(vm.grid.n + 1):
            for j in range(vm.grid.n + 1):
                big = inject(vm, i, j)
                assert genus(big.pairing) == g
                assert canonical(trace(big)) == code
                assert eject(big, i, j) == vm


def test_eject_rejects_non_images():
    vm = load("appendixA", "4_1")
    with pytest.raises(NotEjectable):
        eject(vm, 0, 0)


def test_classical_import_not_closed():
    open_grid = MosaicGrid.from_rows(
        [[T.T3, T.T5, T.T5, T.T1]] + [[T.T0] * 4] * 3
    )
    with pytest.raises(NotClosed):
        classical_import(open_grid)


def test_classical_import_unknot_square():
    rows = [[0, 0, 0, 0], [0, 2, 1, 0], [0, 3, 4, 0], [0, 0, 0, 0]]
    grid = MosaicGrid.from_rows([[T(x) for x in r] for r in rows])
    out = classical_import(grid)
    assert out.grid.n == 2
    code = trace(out)
    assert code.component_count == 1 and code.crossing_count == 0
