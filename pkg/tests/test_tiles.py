from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vmosaic.tiles import (
    DIHEDRAL,
    E,
    EAST_KINDS,
    N,
    S,
    SOUTH_KINDS,
    Tile,
    W,
    MosaicGrid,
    boundary_endpoint_profile,
    connections,
    interior_suitably_connected,
    partner_side,
    slot_index,
    slot_location,
    tile_from_arcs,
    touches,
    transform_grid,
    transform_position,
    transform_side,
    transform_tile,
)

T = Tile


def test_connection_sets_fixed():
    expected = {
        T.T0: set(),
        T.T1: {frozenset({S, W})},
        T.T2: {frozenset({S, E})},
        T.T3: {frozenset({N, E})},
        T.T4: {frozenset({N, W})},
        T.T5: {frozenset({E, W})},
        T.T6: {frozenset({N, S})},
        T.T7: {frozenset({N, E}), frozenset({S, W})},
        T.T8: {frozenset({N, W}), frozenset({S, E})},
        T.T9: {frozenset({N, S}), frozenset({E, W})},
        T.T10: {frozenset({N, S}), frozenset({E, W})},
    }
    for tile in Tile:
        arcs, over = connections(tile)
        assert set(arcs) == expected[tile]
        if tile is T.T9:
            assert over == frozenset({N, S})
        elif tile is T.T10:
            assert over == frozenset({E, W})
        else:
            assert over is None
        # A pure function: identical results on repeated calls.
        assert connections(tile) == (arcs, over)


def test_east_and_south_kinds():
    assert EAST_KINDS == frozenset({T.T2, T.T3, T.T5, T.T7, T.T8, T.T9, T.T10})
    assert SOUTH_KINDS == frozenset({T.T1, T.T2, T.T6, T.T7, T.T8, T.T9, T.T10})


def test_partner_side_roundtrip():
    for tile in Tile:
        for side in (N, E, S, W):
            if touches(tile, side):
                other = partner_side(tile, side)
                assert partner_side(tile, other) == side
            else:
                with pytest.raises(ValueError):
                    partner_side(tile, side)


def test_tile_from_arcs_inverse():
    for tile in Tile:
        if tile in (T.T9, T.T10):
            continue
        arcs, _ = connections(tile)
        assert tile_from_arcs(arcs) == tile
    with pytest.raises(ValueError):
        tile_from_arcs(frozenset({frozenset({N, E}), frozenset({N, W})}))


def test_slot_conventions():
    # Clockwise: north left-to-right, east top-down, south right-to-left,
    # west bottom-up.
    n = 3
    assert slot_location(n, 0) == (0, 0, N)
    assert slot_location(n, 2) == (0, 2, N)
    assert slot_location(n, 3) == (0, 2, E)
    assert slot_location(n, 5) == (2, 2, E)
    assert slot_location(n, 6) == (2, 2, S)
    assert slot_location(n, 8) == (2, 0, S)
    assert slot_location(n, 9) == (2, 0, W)
    assert slot_location(n, 11) == (0, 0, W)
    for slot in range(4 * n):
        r, c, side = slot_location(n, slot)
        assert slot_index(n, r, c, side) == slot


def test_dihedral_tables_are_group_actions():
    # Rotation table must match rotating the connection geometry.
    def rot_side(s):
        return (s + 1) % 4

    for tile in Tile:
        arcs, over = connections(tile)
        rot = transform_tile(tile, (1, 0))
        rarcs, rover = connections(rot)
        assert rarcs == frozenset(frozenset(rot_side(x) for x in a) for a in arcs)
        if over is not None:
            assert rover == frozenset(rot_side(x) for x in over)
    # Reflection swaps east and west.
    for tile in Tile:
        arcs, over = connections(tile)
        ref = transform_tile(tile, (0, 1))
        rarcs, rover = connections(ref)
        swap = {N: N, S: S, E: W, W: E}
        assert rarcs == frozenset(frozenset(swap[x] for x in a) for a in arcs)


def test_dihedral_grid_transform_consistency():
    grid = MosaicGrid.from_rows([[T.T9, T.T1], [T.T3, T.T7]])
    for g in DIHEDRAL:
        out = transform_grid(grid, g)
        # Transforming positions and tiles separately agrees with the grid map.
        for r in range(2):
            for c in range(2):
                nr, nc = transform_position(2, r, c, g)
                assert out.cells[nr][nc] == transform_tile(grid.cells[r][c], g)


@given(st.lists(st.sampled_from(list(Tile)), min_size=9, max_size=9))
def test_connectivity_invariant_under_dihedral(tiles):
    grid = MosaicGrid.from_rows([tiles[0:3], tiles[3:6], tiles[6:9]])
    ok = interior_suitably_connected(grid).ok
    for g in DIHEDRAL:
        assert interior_suitably_connected(transform_grid(grid, g)).ok == ok


@given(st.lists(st.sampled_from(list(Tile)), min_size=4, max_size=4))
def test_boundary_parity(tiles):
    grid = MosaicGrid.from_rows([tiles[0:2], tiles[2:4]])
    if interior_suitably_connected(grid).ok:
        assert sum(boundary_endpoint_profile(grid)) % 2 == 0


def test_boundary_profile_examples():
    assert boundary_endpoint_profile(MosaicGrid.from_rows([[T.T0]])) == (False,) * 4
    assert boundary_endpoint_profile(MosaicGrid.from_rows([[T.T3]])) == (True, True, False, False)
    assert boundary_endpoint_profile(MosaicGrid.from_rows([[T.T7]])) == (True,) * 4


def test_transform_side_matches_positions():
    n = 4
    for g in DIHEDRAL:
        for slot in range(4 * n):
            r, c, side = slot_location(n, slot)
            nr, nc = transform_position(n, r, c, g)
            nside = transform_side(side, g)
            # The transformed edge must still be a boundary edge.
            slot_index(n, nr, nc, nside)
