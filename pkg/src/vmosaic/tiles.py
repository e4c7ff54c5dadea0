"""Mosaic tiles, square grids, and suitable-connectivity checks.

A mosaic is an n x n grid of unit tiles whose strands end at edge midpoints.
There are eleven tile kinds: the blank tile, four quarter-arcs, two straight
lines, two double arcs, and two crossings (distinguished by which strand
passes over).  A grid is *suitably connected* when every strand endpoint on an
interior tile edge meets a strand endpoint of the neighbouring tile.

Boundary edge midpoints are numbered clockwise, starting at the top-left:
slots ``0..n-1`` run along the north side left to right, ``n..2n-1`` down the
east side, ``2n..3n-1`` along the south side right to left, and ``3n..4n-1``
up the west side.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator

# Side codes, clockwise.
N, E, S, W = 0, 1, 2, 3
SIDE_NAMES = "NESW"
OPPOSITE = {N: S, E: W, S: N, W: E}

# Unit direction of travel when *leaving* a tile through a side, in grid
# steps (drow, dcol).
SIDE_STEP = {N: (-1, 0), E: (0, 1), S: (1, 0), W: (0, -1)}

# Planar direction vector (x east, y north) of a strand leaving through a side.
SIDE_VECTOR = {N: (0, 1), E: (1, 0), S: (0, -1), W: (-1, 0)}


class Tile(IntEnum):
    """The eleven tile kinds."""

    T0 = 0
    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5
    T6 = 6
    T7 = 7
    T8 = 8
    T9 = 9
    T10 = 10


# Strand segments per tile, as unordered side pairs.  T9 carries the N-S
# strand over the E-W strand; T10 is the opposite crossing.
_ARCS: dict[Tile, tuple[frozenset[int], ...]] = {
    Tile.T0: (),
    Tile.T1: (frozenset({S, W}),),
    Tile.T2: (frozenset({S, E}),),
    Tile.T3: (frozenset({N, E}),),
    Tile.T4: (frozenset({N, W}),),
    Tile.T5: (frozenset({E, W}),),
    Tile.T6: (frozenset({N, S}),),
    Tile.T7: (frozenset({N, E}), frozenset({S, W})),
    Tile.T8: (frozenset({N, W}), frozenset({S, E})),
    Tile.T9: (frozenset({N, S}), frozenset({E, W})),
    Tile.T10: (frozenset({N, S}), frozenset({E, W})),
}

# Over-strand of the two crossing tiles, as a side pair.
OVER_STRAND = {Tile.T9: frozenset({N, S}), Tile.T10: frozenset({E, W})}

CROSSING_TILES = (Tile.T9, Tile.T10)

# Kinds whose strands reach a given side.
EAST_KINDS = frozenset(t for t in Tile if any(E in a for a in _ARCS[t]))
SOUTH_KINDS = frozenset(t for t in Tile if any(S in a for a in _ARCS[t]))
NORTH_KINDS = frozenset(t for t in Tile if any(N in a for a in _ARCS[t]))
WEST_KINDS = frozenset(t for t in Tile if any(W in a for a in _ARCS[t]))


def connections(tile: Tile) -> tuple[frozenset[frozenset[int]], frozenset[int] | None]:
    """Return the tile's strand segments and, for a crossing, its over strand.

    The first element is the set of unordered side pairs connected inside the
    tile; the second is the side pair of the over strand (``None`` for
    non-crossing tiles).
    """
    return frozenset(_ARCS[tile]), OVER_STRAND.get(tile)


def touches(tile: Tile, side: int) -> bool:
    """True when the tile has a strand endpoint on ``side``."""
    return any(side in arc for arc in _ARCS[tile])


def partner_side(tile: Tile, side: int) -> int:
    """Side where the strand entering through ``side`` leaves the tile."""
    for arc in _ARCS[tile]:
        if side in arc:
            (other,) = arc - {side}
            return other
    raise ValueError(f"{tile.name} has no strand endpoint on side {SIDE_NAMES[side]}")


# Arcs valid as a single tile, used when assembling tiles from arc sets.
_ARCSET_TO_TILE = {frozenset(arcs): t for t, arcs in _ARCS.items() if t not in CROSSING_TILES}


def tile_from_arcs(arcs: frozenset[frozenset[int]]) -> Tile:
    """Inverse of :func:`connections` for non-crossing content."""
    try:
        return _ARCSET_TO_TILE[frozenset(arcs)]
    except KeyError:
        raise ValueError(f"no tile realizes arc set {sorted(map(sorted, arcs))}") from None


@dataclass(frozen=True)
class MosaicGrid:
    """A square grid of tiles, row 0 at the top."""

    n: int
    cells: tuple[tuple[Tile, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("grid side must be positive")
        if len(self.cells) != self.n or any(len(r) != self.n for r in self.cells):
            raise ValueError("cells must form an n x n array")

    @staticmethod
    def from_rows(rows: list[list[Tile]] | list[tuple[Tile, ...]]) -> "MosaicGrid":
        return MosaicGrid(len(rows), tuple(tuple(Tile(t) for t in row) for row in rows))

    def __getitem__(self, rc: tuple[int, int]) -> Tile:
        return self.cells[rc[0]][rc[1]]

    def crossing_cells(self) -> list[tuple[int, int]]:
        """Positions of crossing tiles, row-major."""
        return [
            (r, c)
            for r in range(self.n)
            for c in range(self.n)
            if self.cells[r][c] in CROSSING_TILES
        ]


@dataclass(frozen=True)
class ConnectivityReport:
    ok: bool
    violations: tuple[tuple[int, int, int], ...]


def interior_suitably_connected(grid: MosaicGrid) -> ConnectivityReport:
    """Check every interior edge: endpoints must meet endpoints.

    Boundary edges are not examined here; whether their endpoints close up is
    a property of the boundary identification, not of the grid.
    """
    bad: list[tuple[int, int, int]] = []
    n = grid.n
    for r in range(n):
        for c in range(n):
            t = grid.cells[r][c]
            if c + 1 < n and touches(t, E) != touches(grid.cells[r][c + 1], W):
                bad.append((r, c, E))
            if r + 1 < n and touches(t, S) != touches(grid.cells[r + 1][c], N):
                bad.append((r, c, S))
    return ConnectivityReport(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# Boundary slots.


def slot_count(n: int) -> int:
    return 4 * n


def slot_location(n: int, slot: int) -> tuple[int, int, int]:
    """Map a slot index to ``(row, col, side)`` of the adjacent cell."""
    if not 0 <= slot < 4 * n:
        raise ValueError(f"slot {slot} out of range for n={n}")
    if slot < n:
        return 0, slot, N
    if slot < 2 * n:
        return slot - n, n - 1, E
    if slot < 3 * n:
        return n - 1, 3 * n - 1 - slot, S
    return 4 * n - 1 - slot, 0, W


def slot_index(n: int, row: int, col: int, side: int) -> int:
    """Inverse of :func:`slot_location`."""
    if side == N and row == 0:
        return col
    if side == E and col == n - 1:
        return n + row
    if side == S and row == n - 1:
        return 3 * n - 1 - col
    if side == W and col == 0:
        return 4 * n - 1 - row
    raise ValueError(f"cell ({row},{col}) side {SIDE_NAMES[side]} is not on the boundary")


def boundary_endpoint_profile(grid: MosaicGrid) -> tuple[bool, ...]:
    """Which boundary slots carry a strand endpoint."""
    out = []
    for slot in range(4 * grid.n):
        r, c, side = slot_location(grid.n, slot)
        out.append(touches(grid.cells[r][c], side))
    return tuple(out)


# ---------------------------------------------------------------------------
# Dihedral symmetries of the square.
#
# Elements are pairs (k, f): rotate by k quarter turns clockwise, then
# reflect across the vertical axis when f is set.  Tile kinds permute
# accordingly; the tables below are fixed constants with unit tests.

# 90 degrees clockwise.
_ROT_CW = {
    Tile.T0: Tile.T0,
    Tile.T1: Tile.T4,
    Tile.T2: Tile.T1,
    Tile.T3: Tile.T2,
    Tile.T4: Tile.T3,
    Tile.T5: Tile.T6,
    Tile.T6: Tile.T5,
    Tile.T7: Tile.T8,
    Tile.T8: Tile.T7,
    Tile.T9: Tile.T10,
    Tile.T10: Tile.T9,
}

# Reflection across the vertical axis (east and west swap).
_REFL_V = {
    Tile.T0: Tile.T0,
    Tile.T1: Tile.T2,
    Tile.T2: Tile.T1,
    Tile.T3: Tile.T4,
    Tile.T4: Tile.T3,
    Tile.T5: Tile.T5,
    Tile.T6: Tile.T6,
    Tile.T7: Tile.T8,
    Tile.T8: Tile.T7,
    Tile.T9: Tile.T9,
    Tile.T10: Tile.T10,
}

DIHEDRAL = tuple((k, f) for f in (0, 1) for k in range(4))


def transform_tile(tile: Tile, g: tuple[int, int]) -> Tile:
    k, f = g
    for _ in range(k):
        tile = _ROT_CW[tile]
    if f:
        tile = _REFL_V[tile]
    return tile


def transform_position(n: int, r: int, c: int, g: tuple[int, int]) -> tuple[int, int]:
    k, f = g
    for _ in range(k):
        r, c = c, n - 1 - r  # clockwise quarter turn
    if f:
        c = n - 1 - c
    return r, c


def transform_side(side: int, g: tuple[int, int]) -> int:
    k, f = g
    side = (side + k) % 4  # clockwise rotation advances N->E->S->W
    if f and side in (E, W):
        side = OPPOSITE[side]
    return side


def transform_grid(grid: MosaicGrid, g: tuple[int, int]) -> MosaicGrid:
    n = grid.n
    new = [[Tile.T0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            nr, nc = transform_position(n, r, c, g)
            new[nr][nc] = transform_tile(grid.cells[r][c], g)
    return MosaicGrid.from_rows(new)


def transform_slot(n: int, slot: int, g: tuple[int, int]) -> int:
    r, c, side = slot_location(n, slot)
    nr, nc = transform_position(n, r, c, g)
    return slot_index(n, nr, nc, transform_side(side, g))


def all_grids(n: int) -> Iterator[MosaicGrid]:
    """Every n x n grid, suitably connected or not.  Exponential; tests only."""
    from itertools import product

    for combo in product(list(Tile), repeat=n * n):
        rows = [list(combo[i * n : (i + 1) * n]) for i in range(n)]
        yield MosaicGrid.from_rows(rows)
