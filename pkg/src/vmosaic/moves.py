"""The rewrite calculus on virtual mosaics.

Rule schematics are transcribed cell by cell from the diagrams and expanded
at compile time into concrete instances: optional (gray) arcs multiply
instances by presence/absence applied to both sides, dotted arcs are
correlated alternatives, and the whole set is closed under the eight
dihedral symmetries of the square, the global T9/T10 swap, and inversion.

Families by footprint:

* planar isotopies ``P1..P10_11`` and Reidemeister ``R1/R2A/R2B/R3``:
  floating blocks, applicable anywhere the tiles match;
* surface isotopies ``SI1..SI9``: strips whose outward edges must lie on the
  mosaic boundary, with pairing constraints between the referenced slots
  (``SI2/SI8/SI9`` tie two strips together through the gluing);
* stabilizations ``STAB1..STAB4``: boundary label permutations that change
  the surface genus by at most one while preserving the code;
* ``LABELSWAP``: exchange the labels of two strand-free slots (a relabeling
  of sphere-summand tubes used by the crossing push-off);
* ``inject``/``eject``/``classical_import``: grid-size changes.

Moves never change the traced knot; planar and surface isotopies and
injections also preserve genus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .surface import BoundaryPairing, VirtualMosaic, complete_pairing
from .tiles import (
    CROSSING_TILES,
    DIHEDRAL,
    E,
    EAST_KINDS,
    N,
    NORTH_KINDS,
    S,
    SOUTH_KINDS,
    Tile,
    W,
    WEST_KINDS,
    MosaicGrid,
    boundary_endpoint_profile,
    interior_suitably_connected,
    slot_index,
    tile_from_arcs,
    touches,
    transform_side,
    transform_tile,
)

NE = frozenset({N, E})
NW = frozenset({N, W})
SE = frozenset({S, E})
SW = frozenset({S, W})
EW = frozenset({E, W})
NS = frozenset({N, S})

ALL_KINDS = frozenset(Tile)
FREE_N = frozenset(t for t in Tile if t not in NORTH_KINDS)


def _t(*arcs: frozenset[int]) -> Tile:
    return tile_from_arcs(frozenset(arcs))


Cell = object  # a Tile (concrete) or frozenset of Tile (unchanged kind set)


@dataclass(frozen=True)
class Patch:
    rows: int
    cols: int
    before: tuple[tuple[Cell, ...], ...]
    after: tuple[tuple[Cell, ...], ...]


# A slot reference: (patch index, row, col, side); the referenced cell edge
# must lie on the mosaic boundary when matching.
Ref = tuple[int, int, int, int]


@dataclass(frozen=True)
class MoveInstance:
    family: str
    patches: tuple[Patch, ...]
    refs: tuple[Ref, ...] = ()
    # Indices into refs whose slots must currently be paired with each other.
    copairs: tuple[tuple[int, int], ...] = ()
    # Label permutation: the label sitting at refs[i] moves to refs[perm[i]].
    perm: tuple[int, ...] = ()


@dataclass(frozen=True)
class MoveRule:
    family: str
    instances: tuple[MoveInstance, ...]


@dataclass(frozen=True)
class MoveSite:
    family: str
    instance: int
    anchors: tuple[tuple[int, int], ...]
    slots: tuple[int, ...] = ()  # LABELSWAP carries the two slots here


class StaleSite(ValueError):
    pass


def _grid_of(cells) -> tuple[tuple[Cell, ...], ...]:
    return tuple(tuple(row) for row in cells)


def _mk(family, before0, after0, before1=None, after1=None, refs=(), copairs=(), perm=()):
    patches = [Patch(len(before0), len(before0[0]), _grid_of(before0), _grid_of(after0))]
    if before1 is not None:
        patches.append(Patch(len(before1), len(before1[0]), _grid_of(before1), _grid_of(after1)))
    return MoveInstance(family, tuple(patches), tuple(refs), tuple(copairs), tuple(perm))


def _bools(k: int):
    from itertools import product

    return product((0, 1), repeat=k)


# ---------------------------------------------------------------------------
# Schematics, base orientation as drawn (strips along the north side).


def _planar_schematics() -> Iterable[MoveInstance]:
    for g1, g2 in _bools(2):
        a1, a2 = ((NW,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("P1", [[_t(SE, *a1), _t(NW)], [_t(NW), _t(*a2)]],
                  [[_t(*a1), _t(NS)], [_t(EW), _t(NW, *a2)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NE,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("P2_3", [[_t(EW), _t(SW, *a1)], [_t(SE), _t(NW, *a2)]],
                  [[_t(SW), _t(*a1)], [_t(NS), _t(*a2)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NW,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("P4", [[_t(*a1), _t(SE)], [_t(EW), _t(NW, *a2)]],
                  [[_t(SE, *a1), _t(EW)], [_t(NW), _t(*a2)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NW,) if g1 else ()), ((NE,) if g2 else ())
        yield _mk("P5", [[_t(*a1), _t(*a2)], [_t(EW), _t(EW)]],
                  [[_t(SE, *a1), _t(SW, *a2)], [_t(NW), _t(NE)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NE,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("P6", [[_t(SW), _t(*a1)], [_t(NW), _t(*a2)]],
                  [[_t(EW), _t(SW, *a1)], [_t(EW), _t(NW, *a2)]])
    for g1, g2, g3 in _bools(3):
        a1, a2, a3 = ((NW,) if g1 else ()), ((NE,) if g2 else ()), ((SE,) if g3 else ())
        yield _mk("P7", [[_t(*a1), _t(*a2)], [_t(SW), _t(*a3)]],
                  [[_t(SE, *a1), _t(SW, *a2)], [Tile.T8, _t(NW, *a3)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NW,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("P8_9", [[_t(SE, *a1), Tile.T8], [Tile.T9, _t(NW, *a2)]],
                  [[_t(SE, *a1), Tile.T9], [Tile.T8, _t(NW, *a2)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((SW,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("P10_11", [[Tile.T7, Tile.T9], [_t(NE, *a1), _t(NW, *a2)]],
                  [[Tile.T10, Tile.T8], [_t(NE, *a1), _t(NW, *a2)]])


def _reidemeister_schematics() -> Iterable[MoveInstance]:
    for g1, g2, g3 in _bools(3):
        a1, a2, a3 = ((NW,) if g1 else ()), ((NE,) if g2 else ()), ((SE,) if g3 else ())
        yield _mk("R1", [[_t(SE, *a1), _t(SW, *a2)], [Tile.T9, _t(NW, *a3)]],
                  [[_t(SE, *a1), _t(SW, *a2)], [Tile.T8, _t(NW, *a3)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NW,) if g1 else ()), ((SE,) if g2 else ())
        yield _mk("R2A", [[_t(SE, *a1), Tile.T8], [Tile.T8, _t(NW, *a2)]],
                  [[_t(SE, *a1), Tile.T10], [Tile.T9, _t(NW, *a2)]])
    for g1, g2 in _bools(2):
        a1, a2 = ((NW,) if g1 else ()), ((NE,) if g2 else ())
        yield _mk("R2B", [[_t(SE, *a1), _t(SW, *a2)], [Tile.T9, Tile.T9]],
                  [[_t(SE, *a1), _t(SW, *a2)], [Tile.T8, Tile.T7]])
    for ga, gb, d1, d2 in _bools(4):
        aa, ab = ((NE,) if ga else ()), ((SW,) if gb else ())
        yield _mk(
            "R3",
            [
                [_t(SW) if d1 else _t(NS), _t(NS), _t(*aa)],
                [Tile.T9, Tile.T9, _t(EW)],
                [_t(NE, *ab), Tile.T10, _t(SW) if d2 else _t(EW)],
            ],
            [
                [_t(EW) if d1 else _t(NE), Tile.T10, _t(SW, *aa)],
                [_t(EW), Tile.T9, Tile.T9],
                [_t(*ab), _t(NS), _t(NS) if d2 else _t(NE)],
            ],
        )


def _surface_schematics() -> Iterable[MoveInstance]:
    # SI1: lift a strand off an adjacently-identified boundary pair.
    for d1, d2 in _bools(2):
        yield _mk(
            "SI1",
            [[_t(NS) if d1 else _t(NW), _t(NS) if d2 else _t(NE)]],
            [[_t(SE) if d1 else _t(EW), _t(SW) if d2 else _t(EW)]],
            refs=[(0, 0, 0, N), (0, 0, 1, N)],
            copairs=[(0, 1)],
        )
    # SI2: carry a crossing through the gluing (two tied strips, pairing
    # anti-parallel between them).
    for d1, d2, g1, g2 in _bools(4):
        yield _mk(
            "SI2",
            [[_t(SE) if d1 else _t(EW), Tile.T10, _t(SW) if d2 else _t(EW)]],
            [[_t(NS) if d1 else _t(NW), _t(NS), _t(NS) if d2 else _t(NE)]],
            [[_t(*((NW,) if g1 else ()))], [_t(EW)], [_t(*((SW,) if g2 else ()))]],
            [[_t(SE, *((NW,) if g1 else ()))], [Tile.T9], [_t(NE, *((SW,) if g2 else ()))]],
            refs=[(0, 0, 0, N), (0, 0, 1, N), (0, 0, 2, N), (1, 0, 0, E), (1, 1, 0, E), (1, 2, 0, E)],
            copairs=[(0, 5), (1, 4), (2, 3)],
        )
    # SI3: slide an empty identified pair past an outgoing strand.
    for d, g in _bools(2):
        arc = (SE,) if g else ()
        yield _mk(
            "SI3",
            [[_t(NW) if d else _t(NS), Tile.T0, _t(*arc)]],
            [[_t(EW) if d else _t(SE), _t(EW), _t(NW, *arc)]],
            refs=[(0, 0, 0, N), (0, 0, 1, N), (0, 0, 2, N)],
            copairs=[(1, 2)],
            perm=(2, 0, 1),
        )
    # SI4: slide an empty identified pair past any label on strand-free edges.
    yield _mk(
        "SI4",
        [[FREE_N, FREE_N, FREE_N]],
        [[FREE_N, FREE_N, FREE_N]],
        refs=[(0, 0, 0, N), (0, 0, 1, N), (0, 0, 2, N)],
        copairs=[(1, 2)],
        perm=(2, 0, 1),
    )
    # SI5: the same slide turning a corner, strand version.
    for (g,) in _bools(1):
        arc = (SW,) if g else ()
        yield _mk(
            "SI5",
            [[_t(*arc), _t(SE)]],
            [[_t(NE, *arc), _t(SW)]],
            refs=[(0, 0, 1, E), (0, 0, 0, N), (0, 0, 1, N)],
            copairs=[(1, 2)],
            perm=(1, 2, 0),
        )
    # SI6: corner slide on strand-free edges.
    yield _mk(
        "SI6",
        [[FREE_N, frozenset({Tile.T0, Tile.T1})]],
        [[FREE_N, frozenset({Tile.T0, Tile.T1})]],
        refs=[(0, 0, 1, E), (0, 0, 0, N), (0, 0, 1, N)],
        copairs=[(1, 2)],
        perm=(1, 2, 0),
    )
    # SI7: corner slide, strand leaving through the far side.
    for (d,) in _bools(1):
        yield _mk(
            "SI7",
            [[_t(EW) if d else _t(SE), _t(EW)]],
            [[_t(NW) if d else _t(NS), Tile.T0]],
            refs=[(0, 0, 1, E), (0, 0, 0, N), (0, 0, 1, N)],
            copairs=[(1, 2)],
            perm=(1, 2, 0),
        )
    # SI8/SI9: carry a crossing around a corner through the gluing.
    for (g1,) in _bools(1):
        for (g2,) in _bools(1):
            a1, a2 = ((SW,) if g1 else ()), ((NW,) if g2 else ())
            yield _mk(
                "SI8",
                [[_t(NE, *a1), Tile.T10]],
                [[_t(NE, *a1), Tile.T7]],
                [[_t(SE, *a2)], [Tile.T8]],
                [[_t(SE, *a2)], [Tile.T9]],
                refs=[(0, 0, 0, N), (0, 0, 1, N), (1, 0, 0, E), (1, 1, 0, E)],
                copairs=[(0, 3), (1, 2)],
            )
            yield _mk(
                "SI9",
                [[Tile.T10, _t(NW, *((SE,) if g1 else ()))]],
                [[Tile.T8, _t(NW, *((SE,) if g1 else ()))]],
                [[_t(SE, *a2)], [Tile.T8]],
                [[_t(SE, *a2)], [Tile.T10]],
                refs=[(0, 0, 0, N), (0, 0, 1, N), (1, 0, 0, E), (1, 1, 0, E)],
                copairs=[(0, 3), (1, 2)],
            )


def _stab_schematics() -> Iterable[MoveInstance]:
    # STAB1: swap the two labels at a corner whose cell links or frees both.
    yield _mk(
        "STAB1",
        [[frozenset({Tile.T0, Tile.T1, Tile.T3, Tile.T7})]],
        [[frozenset({Tile.T0, Tile.T1, Tile.T3, Tile.T7})]],
        refs=[(0, 0, 0, N), (0, 0, 0, E)],
        perm=(1, 0),
    )
    # STAB2: swap two side-by-side labels linked through a double-arc pair,
    # or both strand-free.
    yield _mk(
        "STAB2",
        [[frozenset({Tile.T3, Tile.T7}), frozenset({Tile.T4, Tile.T8})]],
        [[frozenset({Tile.T3, Tile.T7}), frozenset({Tile.T4, Tile.T8})]],
        refs=[(0, 0, 0, N), (0, 0, 1, N)],
        perm=(1, 0),
    )
    yield _mk(
        "STAB2",
        [[frozenset({Tile.T0, Tile.T1}), frozenset({Tile.T0, Tile.T2})]],
        [[frozenset({Tile.T0, Tile.T1}), frozenset({Tile.T0, Tile.T2})]],
        refs=[(0, 0, 0, N), (0, 0, 1, N)],
        perm=(1, 0),
    )
    # STAB3: swap the corner labels, rerouting the strand across the corner.
    for (d,) in _bools(1):
        yield _mk(
            "STAB3",
            [[_t(SE) if d else _t(EW)]],
            [[_t(NS) if d else _t(NW)]],
            refs=[(0, 0, 0, N), (0, 0, 0, E)],
            perm=(1, 0),
        )
    # STAB4: swap two side-by-side labels, rerouting the strand.
    for d, g in _bools(2):
        arc = (SE,) if g else ()
        yield _mk(
            "STAB4",
            [[_t(SE) if d else _t(EW), _t(NW, *arc)]],
            [[_t(NS) if d else _t(NW), _t(*arc)]],
            refs=[(0, 0, 0, N), (0, 0, 1, N)],
            perm=(1, 0),
        )


# ---------------------------------------------------------------------------
# Symmetry closure.


def _transform_patch(p: Patch, g) -> tuple[Patch, dict[tuple[int, int], tuple[int, int]]]:
    k = g[0] % 4
    rows, cols = (p.rows, p.cols) if k % 2 == 0 else (p.cols, p.rows)

    def posmap(r, c):
        rr, cc = r, c
        R, C = p.rows, p.cols
        for _ in range(k):
            rr, cc = cc, R - 1 - rr
            R, C = C, R
        if g[1]:
            cc = C - 1 - cc
        return rr, cc

    def cellmap(cell):
        if isinstance(cell, frozenset):
            return frozenset(transform_tile(t, g) for t in cell)
        return transform_tile(cell, g)

    nb = [[None] * cols for _ in range(rows)]
    na = [[None] * cols for _ in range(rows)]
    mapping = {}
    for r in range(p.rows):
        for c in range(p.cols):
            rr, cc = posmap(r, c)
            mapping[(r, c)] = (rr, cc)
            nb[rr][cc] = cellmap(p.before[r][c])
            na[rr][cc] = cellmap(p.after[r][c])
    return Patch(rows, cols, _grid_of(nb), _grid_of(na)), mapping


def _swap_cell(cell):
    table = {Tile.T9: Tile.T10, Tile.T10: Tile.T9}
    if isinstance(cell, frozenset):
        return frozenset(table.get(t, t) for t in cell)
    return table.get(cell, cell)


def _transform_instance(inst: MoveInstance, g, swap: bool, invert: bool) -> MoveInstance:
    patches = []
    maps = []
    for p in inst.patches:
        np_, m = _transform_patch(p, g)
        patches.append(np_)
        maps.append(m)
    if swap:
        patches = [
            Patch(
                p.rows,
                p.cols,
                _grid_of([[_swap_cell(x) for x in row] for row in p.before]),
                _grid_of([[_swap_cell(x) for x in row] for row in p.after]),
            )
            for p in patches
        ]
    if invert:
        patches = [Patch(p.rows, p.cols, p.after, p.before) for p in patches]
    refs = tuple(
        (pi, *maps[pi][(r, c)], transform_side(side, g)) for (pi, r, c, side) in inst.refs
    )
    perm = inst.perm
    copairs = inst.copairs
    if invert and perm:
        # After the move the co-paired labels sit at the permuted positions,
        # and the inverse instance carries the inverse permutation.
        fwd = list(perm)
        copairs = tuple(tuple(sorted((fwd[a], fwd[b]))) for a, b in inst.copairs)
        inv = [0] * len(perm)
        for i, j in enumerate(perm):
            inv[j] = i
        perm = tuple(inv)
    return MoveInstance(inst.family, tuple(patches), refs, copairs, perm)


def _normalize(inst: MoveInstance) -> MoveInstance:
    """Reorder patches and refs canonically so symmetric duplicates collide."""

    def patch_key(p: Patch):
        def cell_key(x):
            return (1, tuple(sorted(int(t) for t in x))) if isinstance(x, frozenset) else (0, int(x))

        return (
            p.rows,
            p.cols,
            tuple(tuple(cell_key(x) for x in row) for row in p.before),
            tuple(tuple(cell_key(x) for x in row) for row in p.after),
        )

    patch_order = sorted(range(len(inst.patches)), key=lambda i: patch_key(inst.patches[i]))
    new_of_patch = {old: new for new, old in enumerate(patch_order)}
    patches = tuple(inst.patches[i] for i in patch_order)
    relocated = [(new_of_patch[pi], r, c, side) for (pi, r, c, side) in inst.refs]
    ref_order = sorted(range(len(relocated)), key=lambda i: relocated[i])
    new_of_ref = {old: new for new, old in enumerate(ref_order)}
    refs = tuple(relocated[i] for i in ref_order)
    copairs = tuple(
        sorted(tuple(sorted((new_of_ref[a], new_of_ref[b]))) for a, b in inst.copairs)
    )
    perm = inst.perm
    if perm:
        out = [0] * len(perm)
        for new_i, old_i in enumerate(ref_order):
            out[new_i] = new_of_ref[perm[old_i]]
        perm = tuple(out)
    return MoveInstance(inst.family, patches, refs, copairs, perm)


def _instance_key(inst: MoveInstance):
    return (
        inst.family,
        tuple((p.rows, p.cols, p.before, p.after) for p in inst.patches),
        inst.refs,
        tuple(sorted(inst.copairs)),
        inst.perm,
    )


def _valid_instance(inst: MoveInstance) -> bool:
    ref_edges = {(pi, r, c, side) for (pi, r, c, side) in inst.refs}
    for pi, p in enumerate(inst.patches):
        # Label-only patches (kind sets, tiles unchanged) need no validation.
        if any(isinstance(x, frozenset) for row in p.before for x in row):
            continue
        for cells in (p.before, p.after):
            for r in range(p.rows):
                for c in range(p.cols):
                    if c + 1 < p.cols and touches(cells[r][c], E) != touches(cells[r][c + 1], W):
                        return False
                    if r + 1 < p.rows and touches(cells[r][c], S) != touches(cells[r + 1][c], N):
                        return False
        for r in range(p.rows):
            for c in range(p.cols):
                for side, edge in ((N, r == 0), (S, r == p.rows - 1), (W, c == 0), (E, c == p.cols - 1)):
                    if not edge or (pi, r, c, side) in ref_edges:
                        continue
                    if touches(p.before[r][c], side) != touches(p.after[r][c], side):
                        return False
    return True


def _expand(schematics: Iterable[MoveInstance]) -> list[MoveInstance]:
    out: list[MoveInstance] = []
    seen = set()
    for base in schematics:
        for invert in (False, True):
            for swap in (False, True):
                for g in DIHEDRAL:
                    inst = _normalize(_transform_instance(base, g, swap, invert))
                    if not _valid_instance(inst):
                        continue
                    key = _instance_key(inst)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(inst)
    return out


_FAMILY_ORDER = [
    "P1", "P2_3", "P4", "P5", "P6", "P7", "P8_9", "P10_11",
    "R1", "R2A", "R2B", "R3",
    "SI1", "SI2", "SI3", "SI4", "SI5", "SI6", "SI7", "SI8", "SI9",
    "STAB1", "STAB2", "STAB3", "STAB4",
    "LABELSWAP", "INJECT", "EJECT",
]

_RULES_CACHE: dict[str, MoveRule] | None = None


def compile_rules() -> list[MoveRule]:
    """Expand every schematic into its closed set of concrete instances."""
    global _RULES_CACHE
    if _RULES_CACHE is None:
        instances: dict[str, list[MoveInstance]] = {f: [] for f in _FAMILY_ORDER}
        all_schematics = list(_planar_schematics()) + list(_reidemeister_schematics()) + list(
            _surface_schematics()
        ) + list(_stab_schematics())
        for inst in _expand(all_schematics):
            instances[inst.family].append(inst)
        for fam in ("LABELSWAP", "INJECT", "EJECT"):
            instances[fam].append(MoveInstance(fam, (), (), (), ()))
        _RULES_CACHE = {f: MoveRule(f, tuple(instances[f])) for f in _FAMILY_ORDER}
    return [_RULES_CACHE[f] for f in _FAMILY_ORDER]


def rule(family: str) -> MoveRule:
    compile_rules()
    assert _RULES_CACHE is not None
    try:
        return _RULES_CACHE[family.upper()]
    except KeyError:
        raise ValueError(f"unknown move family {family!r}") from None


# ---------------------------------------------------------------------------
# Matching and application.


def _cell_matches(cell: Cell, tile: Tile) -> bool:
    if isinstance(cell, frozenset):
        return tile in cell
    return tile == cell


def _ref_slot(vm: VirtualMosaic, anchors, ref: Ref) -> int | None:
    pi, r, c, side = ref
    ar, ac = anchors[pi]
    rr, cc = ar + r, ac + c
    n = vm.grid.n
    on_boundary = (
        (side == N and rr == 0)
        or (side == S and rr == n - 1)
        or (side == W and cc == 0)
        or (side == E and cc == n - 1)
    )
    if not on_boundary:
        return None
    return slot_index(n, rr, cc, side)


def _match_at(vm: VirtualMosaic, inst: MoveInstance, anchors) -> bool:
    n = vm.grid.n
    occupied: set[tuple[int, int]] = set()
    for p, (ar, ac) in zip(inst.patches, anchors):
        if ar < 0 or ac < 0 or ar + p.rows > n or ac + p.cols > n:
            return False
        for r in range(p.rows):
            for c in range(p.cols):
                if (ar + r, ac + c) in occupied:
                    return False
                occupied.add((ar + r, ac + c))
                if not _cell_matches(p.before[r][c], vm.grid.cells[ar + r][ac + c]):
                    return False
    slots = []
    for ref in inst.refs:
        s = _ref_slot(vm, anchors, ref)
        if s is None:
            return False
        slots.append(s)
    partner = vm.pairing.partner_map()
    for a, b in inst.copairs:
        if partner[slots[a]] != slots[b]:
            return False
    if inst.family == "LABELSWAP":
        return False  # handled separately
    return True


def find_sites(vm: VirtualMosaic, family: str) -> list[MoveSite]:
    """All sites where some instance of the family applies, in deterministic
    order (instance index, then anchors row-major)."""
    fam = rule(family)
    n = vm.grid.n
    sites: list[MoveSite] = []
    if fam.family == "LABELSWAP":
        profile = boundary_endpoint_profile(vm.grid)
        free = [s for s in range(4 * n) if not profile[s]]
        for i, a in enumerate(free):
            for b in free[i + 1 :]:
                sites.append(MoveSite("LABELSWAP", 0, (), (a, b)))
        return sites
    if fam.family == "INJECT":
        return [
            MoveSite("INJECT", 0, ((i, j),))
            for i in range(n + 1)
            for j in range(n + 1)
        ]
    if fam.family == "EJECT":
        for i in range(n - 1):
            for j in range(n - 1):
                try:
                    eject(vm, i, j)
                except (NotEjectable, ValueError):
                    continue
                sites.append(MoveSite("EJECT", 0, ((i, j),)))
        return sites
    for idx, inst in enumerate(fam.instances):
        anchor_ranges = [
            [(r, c) for r in range(n - p.rows + 1) for c in range(n - p.cols + 1)]
            for p in inst.patches
        ]
        from itertools import product

        for anchors in product(*anchor_ranges):
            if _match_at(vm, inst, anchors):
                sites.append(MoveSite(fam.family, idx, tuple(anchors)))
    return sites


def apply(vm: VirtualMosaic, site: MoveSite) -> VirtualMosaic:
    """Rewrite tiles and relabel boundary slots for a matched site."""
    if site.family == "LABELSWAP":
        profile = boundary_endpoint_profile(vm.grid)
        a, b = site.slots
        if profile[a] or profile[b]:
            raise StaleSite("LABELSWAP slots must be strand-free")
        return VirtualMosaic(vm.grid, _conjugate(vm.pairing, {a: b, b: a}))
    if site.family == "INJECT":
        return inject(vm, *site.anchors[0])
    if site.family == "EJECT":
        try:
            return eject(vm, *site.anchors[0])
        except NotEjectable as exc:
            raise StaleSite(str(exc)) from exc
    inst = rule(site.family).instances[site.instance]
    if not _match_at(vm, inst, site.anchors):
        raise StaleSite(f"{site.family} instance {site.instance} no longer matches")
    cells = [list(row) for row in vm.grid.cells]
    for p, (ar, ac) in zip(inst.patches, site.anchors):
        for r in range(p.rows):
            for c in range(p.cols):
                cell = p.after[r][c]
                if not isinstance(cell, frozenset):
                    cells[ar + r][ac + c] = cell
    grid = MosaicGrid.from_rows(cells)
    slots = [_ref_slot(vm, site.anchors, ref) for ref in inst.refs]
    mapping = {}
    for i, j in enumerate(inst.perm):
        if slots[i] != slots[j]:
            mapping[slots[i]] = slots[j]
    pairing = _conjugate(vm.pairing, mapping) if mapping else vm.pairing
    return VirtualMosaic(grid, pairing)


def _conjugate(pairing: BoundaryPairing, mapping: dict[int, int]) -> BoundaryPairing:
    phi = lambda s: mapping.get(s, s)
    return BoundaryPairing.from_pairs(
        pairing.n, [(phi(i), phi(j)) for i, j in pairing.pairs]
    )


# ---------------------------------------------------------------------------
# Injection / ejection.


class NotEjectable(ValueError):
    pass


def inject(vm: VirtualMosaic, i: int, j: int) -> VirtualMosaic:
    """Insert two rows below row ``i`` and two columns right of column ``j``.

    Strands crossing the insertion lines are extended with straight tiles;
    the four fresh slot pairs on each side are identified adjacently, so the
    genus and the traced code are unchanged.
    """
    n = vm.grid.n
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError("insertion position out of range")
    m = n + 2
    grid = vm.grid

    def row_crosses(c: int) -> bool:
        if i == n:
            return grid.cells[n - 1][c] in SOUTH_KINDS
        return grid.cells[i][c] in NORTH_KINDS

    def col_crosses(r: int) -> bool:
        if j == n:
            return grid.cells[r][n - 1] in EAST_KINDS
        return grid.cells[r][j] in WEST_KINDS

    cells = [[Tile.T0] * m for _ in range(m)]
    for r in range(n):
        for c in range(n):
            cells[r + 2 * (r >= i)][c + 2 * (c >= j)] = grid.cells[r][c]
    for c in range(n):
        if row_crosses(c):
            cc = c + 2 * (c >= j)
            cells[i][cc] = cells[i + 1][cc] = Tile.T6
    for r in range(n):
        if col_crosses(r):
            rr = r + 2 * (r >= i)
            cells[rr][j] = cells[rr][j + 1] = Tile.T5
    new_grid = MosaicGrid.from_rows(cells)

    def map_col(c: int) -> int:
        return c + 2 * (c >= j)

    def map_row(r: int) -> int:
        return r + 2 * (r >= i)

    def map_slot(slot: int) -> int:
        if slot < n:
            return map_col(slot)
        if slot < 2 * n:
            return m + map_row(slot - n)
        if slot < 3 * n:
            return 3 * m - 1 - map_col(3 * n - 1 - slot)
        return 4 * m - 1 - map_row(4 * n - 1 - slot)

    pairs = [(map_slot(a), map_slot(b)) for a, b in vm.pairing.pairs]
    pairs.append((j, j + 1))  # north
    pairs.append((m + i, m + i + 1))  # east
    pairs.append((3 * m - 1 - j - 1, 3 * m - 1 - j))  # south
    pairs.append((4 * m - 1 - i - 1, 4 * m - 1 - i))  # west
    return VirtualMosaic(new_grid, BoundaryPairing.from_pairs(m, pairs))


def eject(vm: VirtualMosaic, i: int, j: int) -> VirtualMosaic:
    """Inverse of :func:`inject`; raises :class:`NotEjectable` when rows
    ``i, i+1`` and columns ``j, j+1`` are not an injection image."""
    m = vm.grid.n
    n = m - 2
    if n < 1:
        raise NotEjectable("mosaic too small")
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError("ejection position out of range")
    for r in (i, i + 1):
        for c in range(m):
            t = vm.grid.cells[r][c]
            if j <= c <= j + 1:
                if t != Tile.T0:
                    raise NotEjectable(f"cell ({r},{c}) must be blank")
            elif t not in (Tile.T0, Tile.T6):
                raise NotEjectable(f"cell ({r},{c}) must be blank or vertical")
    for c in (j, j + 1):
        for r in range(m):
            if i <= r <= i + 1:
                continue
            if vm.grid.cells[r][c] not in (Tile.T0, Tile.T5):
                raise NotEjectable(f"cell ({r},{c}) must be blank or horizontal")
    partner = vm.pairing.partner_map()
    strip_pairs = [
        (j, j + 1),
        (m + i, m + i + 1),
        (3 * m - 1 - j - 1, 3 * m - 1 - j),
        (4 * m - 1 - i - 1, 4 * m - 1 - i),
    ]
    for a, b in strip_pairs:
        if partner[a] != b:
            raise NotEjectable(f"new-edge slots {a},{b} are not identified together")

    cells = [[Tile.T0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            cells[r][c] = vm.grid.cells[r + 2 * (r >= i)][c + 2 * (c >= j)]
    grid = MosaicGrid.from_rows(cells)

    def unmap_slot(slot: int) -> int | None:
        # Inverse of inject's map_slot; None for the fresh strip slots.
        if slot < m:
            c = slot
            if c in (j, j + 1):
                return None
            return c - 2 * (c > j)
        if slot < 2 * m:
            r = slot - m
            if r in (i, i + 1):
                return None
            return n + r - 2 * (r > i)
        if slot < 3 * m:
            c = 3 * m - 1 - slot
            if c in (j, j + 1):
                return None
            return 3 * n - 1 - (c - 2 * (c > j))
        r = 4 * m - 1 - slot
        if r in (i, i + 1):
            return None
        return 4 * n - 1 - (r - 2 * (r > i))

    pairs = []
    for a, b in vm.pairing.pairs:
        ua, ub = unmap_slot(a), unmap_slot(b)
        if (ua is None) != (ub is None):
            raise NotEjectable(f"pair ({a},{b}) mixes old and fresh slots")
        if ua is not None:
            pairs.append((ua, ub))
    out = VirtualMosaic(grid, BoundaryPairing.from_pairs(n, pairs))
    if inject(out, i, j) != vm:
        raise NotEjectable("strips do not reproduce the mosaic when re-injected")
    return out


# ---------------------------------------------------------------------------
# Import of closed classical mosaics.


class NotClosed(ValueError):
    pass


def classical_import(classical: MosaicGrid) -> VirtualMosaic:
    """Turn a closed classical n-mosaic into a virtual (n-2)-mosaic.

    The outermost rows and columns carry no crossings; deleting them severs
    some strands, and each severed strand is reconnected by identifying the
    two inner-boundary edges its frame arc used to join.  Leftover edges are
    identified adjacently.
    """
    n = classical.n
    if n < 4:
        raise ValueError("classical import needs n >= 4")
    if not interior_suitably_connected(classical).ok:
        raise ValueError("classical grid is not suitably connected")
    if any(boundary_endpoint_profile(classical)):
        raise NotClosed("classical mosaic has strands reaching the boundary")
    frame = {
        (r, c)
        for r in range(n)
        for c in range(n)
        if r in (0, n - 1) or c in (0, n - 1)
    }
    for r, c in frame:
        if classical.cells[r][c] in CROSSING_TILES:
            raise NotClosed(f"crossing tile on the frame at ({r},{c})")
    m = n - 2

    def inner_slot(r: int, c: int, side: int) -> int:
        return slot_index(m, r - 1, c - 1, side)

    # Walk frame arcs from each inner-boundary endpoint.
    from .tiles import OPPOSITE, SIDE_STEP, partner_side

    entries = []  # (slot, frame cell, entry side)
    for c in range(1, n - 1):
        if touches(classical.cells[1][c], N):
            entries.append((inner_slot(1, c, N), (0, c), S))
        if touches(classical.cells[n - 2][c], S):
            entries.append((inner_slot(n - 2, c, S), (n - 1, c), N))
    for r in range(1, n - 1):
        if touches(classical.cells[r][1], W):
            entries.append((inner_slot(r, 1, W), (r, 0), E))
        if touches(classical.cells[r][n - 2], E):
            entries.append((inner_slot(r, n - 2, E), (r, n - 1), W))

    visited: set[tuple[int, int, int]] = set()
    pairs = []
    for slot, (r, c), entry in entries:
        if (r, c, entry) in visited:
            continue
        rr, cc, side = r, c, entry
        while True:
            visited.add((rr, cc, side))
            out = partner_side(classical.cells[rr][cc], side)
            visited.add((rr, cc, out))
            dr, dc = SIDE_STEP[out]
            nr, nc = rr + dr, cc + dc
            if (nr, nc) not in frame:
                other = inner_slot(nr, nc, OPPOSITE[out])
                pairs.append((slot, other))
                break
            rr, cc, side = nr, nc, OPPOSITE[out]
    # Any frame strand never leaving the frame would be dropped silently.
    for r, c in frame:
        t = classical.cells[r][c]
        for side in (N, E, S, W):
            if touches(t, side) and (r, c, side) not in visited:
                raise ValueError("frame contains a closed component; cannot import")

    inner = MosaicGrid.from_rows(
        [[classical.cells[r][c] for c in range(1, n - 1)] for r in range(1, n - 1)]
    )
    return VirtualMosaic(inner, complete_pairing(inner, pairs))
