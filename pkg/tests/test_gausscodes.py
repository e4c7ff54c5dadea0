from __future__ import annotations

import pytest

from conftest import load
from vmosaic.gausscodes import (
    GaussCode,
    canonical,
    format_code,
    mirror,
    parse_code,
    reverse_components,
    trace,
    unoriented_canonical,
)
from vmosaic.surface import BoundaryPairing, VirtualMosaic
from vmosaic.tiles import DIHEDRAL, MosaicGrid, Tile, transform_grid, transform_slot

T = Tile


def test_text_roundtrip():
    for text in ["O1+U2+U1+O2+", "O1-|U1-", "0", "0|0", "U1+O2+U3+O1+U2+O3+|0"]:
        assert format_code(parse_code(text)) == text
    with pytest.raises(ValueError):
        parse_code("O1")
    with pytest.raises(ValueError):
        parse_code("X1+")


def test_code_validation():
    with pytest.raises(ValueError):
        parse_code("O1+U1-")  # sign mismatch
    with pytest.raises(ValueError):
        parse_code("O1+O1+")  # two overs


def test_trace_simple_figures():
    unknot = load("figures", "unknot_1")
    code = trace(unknot)
    assert code.component_count == 1 and code.crossing_count == 0
    unlink = load("figures", "unlink2_1")
    assert trace(unlink).component_count == 2
    hopf = trace(load("figures", "virtual_hopf"))
    assert hopf.component_count == 2 and hopf.crossing_count == 1


def test_both_virtual_trefoil_mosaics_share_a_code():
    left = trace(load("figures", "virtual_trefoil_genus1"))
    right = trace(load("figures", "virtual_trefoil_genus2"))
    assert canonical(left) == canonical(right)
    quoted = parse_code("O1+U2+U1+O2+")
    assert canonical(left) in (canonical(quoted), canonical(mirror(quoted)))


def test_token_count_is_twice_crossing_tiles():
    for name in ["3_1", "4_1", "7_1", "8_19"]:
        vm = load("appendixA", name)
        code = trace(vm)
        tiles = len(vm.grid.crossing_cells())
        assert sum(len(c) for c in code.components) == 2 * tiles


def test_canonical_symmetries():
    base = parse_code("O1+U2+U1+O2+")
    rotated = parse_code("U2+U1+O2+O1+")
    relabeled = parse_code("O2+U1+U2+O1+")
    assert canonical(base) == canonical(rotated) == canonical(relabeled)
    reversed_all = GaussCode(tuple(tuple(reversed(c)) for c in base.components), 0)
    assert canonical(base) == canonical(reversed_all)
    assert canonical(parse_code("0")) != canonical(parse_code("0|0"))


def test_mirror_is_an_involution():
    code = parse_code("O1+U2+U1+O2+")
    assert format_code(mirror(code)) == "U1-O2-O1-U2-"
    assert mirror(mirror(code)) == code
    assert mirror(parse_code("0")) == parse_code("0")


def test_reverse_components_flips_mixed_signs():
    hopf = parse_code("O1-|U1-")
    rev = reverse_components(hopf, frozenset({0}))
    assert format_code(rev) == "O1+|U1+"
    assert unoriented_canonical(hopf) == unoriented_canonical(rev)


def test_trace_dihedral_invariance_up_to_mirror():
    vm = load("appendixA", "3_1")
    base = trace(vm)
    options = {canonical(base), canonical(mirror(base))}
    n = vm.grid.n
    for g in DIHEDRAL:
        grid = transform_grid(vm.grid, g)
        pairs = [
            (transform_slot(n, a, g), transform_slot(n, b, g))
            for a, b in vm.pairing.pairs
        ]
        vm2 = VirtualMosaic(grid, BoundaryPairing.from_pairs(n, pairs))
        assert canonical(trace(vm2)) in options
