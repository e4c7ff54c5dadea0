"""Signed Gauss codes: construction by strand tracing, text form, canonical form.

A code is a list of components, each a cyclic sequence of passages
``(crossing id, O|U, sign)``, plus a count of crossing-free loops.  Since the
glued surface is orientable and every gluing respects the tiles' common
planar frame, crossing signs computed in tile-local coordinates (x east,
y north) are globally consistent: a crossing is positive when the under
direction is the over direction rotated 90 degrees counterclockwise.

Text form: passages concatenated as ``O<id><sign>``, components separated by
``|``, one ``0`` per crossing-free loop, e.g. ``O1+U2+U1+O2+|0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .tiles import (
    CROSSING_TILES,
    E,
    N,
    OPPOSITE,
    OVER_STRAND,
    S,
    SIDE_STEP,
    SIDE_VECTOR,
    W,
    partner_side,
    slot_index,
    slot_location,
    touches,
)
from .surface import VirtualMosaic


class Passage(NamedTuple):
    crossing: int
    over: bool
    sign: int


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[Passage, ...], ...]
    free_loops: int = 0

    def __post_init__(self) -> None:
        seen: dict[int, list[Passage]] = {}
        for comp in self.components:
            if not comp:
                raise ValueError("empty component; count it in free_loops instead")
            for p in comp:
                seen.setdefault(p.crossing, []).append(p)
        for cid, ps in seen.items():
            if len(ps) != 2 or ps[0].over == ps[1].over or ps[0].sign != ps[1].sign:
                raise ValueError(f"crossing {cid} passages are inconsistent")

    @property
    def crossing_count(self) -> int:
        return sum(len(c) for c in self.components) // 2

    @property
    def component_count(self) -> int:
        return len(self.components) + self.free_loops

    def writhe(self) -> int:
        return sum(p.sign for c in self.components for p in c) // 2

    def __str__(self) -> str:
        return format_code(self)


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Canonical serialization, equal across relabeling, per-component
    rotation, component reordering, and simultaneous orientation reversal."""

    text: str

    @property
    def bytes(self) -> bytes:
        return self.text.encode()


def format_code(code: GaussCode) -> str:
    parts = []
    for comp in code.components:
        parts.append(
            "".join(
                f"{'O' if p.over else 'U'}{p.crossing}{'+' if p.sign > 0 else '-'}"
                for p in comp
            )
        )
    parts.extend(["0"] * code.free_loops)
    return "|".join(parts) if parts else ""


_TOKEN_RE = re.compile(r"([OU])(\d+)([+-])")


def parse_code(text: str) -> GaussCode:
    text = text.strip()
    if not text:
        return GaussCode((), 0)
    comps: list[tuple[Passage, ...]] = []
    loops = 0
    for part in text.split("|"):
        part = part.strip()
        if part == "0":
            loops += 1
            continue
        pos = 0
        passages = []
        for m in _TOKEN_RE.finditer(part):
            if m.start() != pos:
                raise ValueError(f"bad Gauss code near {part[pos:]!r}")
            passages.append(Passage(int(m.group(2)), m.group(1) == "O", 1 if m.group(3) == "+" else -1))
            pos = m.end()
        if pos != len(part) or not passages:
            raise ValueError(f"bad Gauss code component {part!r}")
        comps.append(tuple(passages))
    return GaussCode(tuple(comps), loops)


def mirror(code: GaussCode) -> GaussCode:
    """Swap over and under everywhere and negate all signs."""
    return GaussCode(
        tuple(
            tuple(Passage(p.crossing, not p.over, -p.sign) for p in comp)
            for comp in code.components
        ),
        code.free_loops,
    )


def reverse_components(code: GaussCode, subset: frozenset[int]) -> GaussCode:
    """Reverse the orientation of the chosen components.

    Token order reverses on those components, and the sign flips at every
    crossing shared between a reversed and an unreversed component.
    """
    comp_of: dict[int, list[int]] = {}
    for ci, comp in enumerate(code.components):
        for p in comp:
            comp_of.setdefault(p.crossing, []).append(ci)
    flips = {
        cid
        for cid, cs in comp_of.items()
        if (cs[0] in subset) != (cs[1] in subset)
    }
    comps = []
    for ci, comp in enumerate(code.components):
        toks = tuple(
            Passage(p.crossing, p.over, -p.sign if p.crossing in flips else p.sign)
            for p in comp
        )
        comps.append(tuple(reversed(toks)) if ci in subset else toks)
    return GaussCode(tuple(comps), code.free_loops)


def unoriented_canonical(code: GaussCode) -> "CanonicalCode":
    """Canonical form that also forgets the component orientations."""
    from itertools import combinations

    k = len(code.components)
    best = canonical(code)
    for size in range(1, k + 1):
        for subset in combinations(range(k), size):
            cand = canonical(reverse_components(code, frozenset(subset)))
            if cand < best:
                best = cand
    return best


def _cross(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


class InvalidMosaic(ValueError):
    pass


def trace(vm: VirtualMosaic) -> GaussCode:
    """Walk every strand once and collect the signed Gauss code.

    Components entering through the boundary start at their lowest slot;
    closed interior loops start at their lowest ``(row, col, side)``.  The
    canonical form erases these choices.
    """
    grid, pairing = vm.grid, vm.pairing
    n = grid.n
    partner = pairing.partner_map()

    # A strand segment inside a tile is traversed at most once in each walk;
    # mark (r, c, entry_side) states.
    visited: set[tuple[int, int, int]] = set()
    crossing_ids: dict[tuple[int, int], int] = {}
    # Per crossing: direction of first recorded passage to fix the sign later.
    first_dir: dict[int, tuple[bool, tuple[int, int]]] = {}
    signs: dict[int, int] = {}

    components: list[list[Passage]] = []
    free_loops = 0

    def walk(r: int, c: int, entry: int) -> list[Passage]:
        passages: list[Passage] = []
        while True:
            state = (r, c, entry)
            if state in visited:
                raise InvalidMosaic("strand revisits a segment; invariants violated")
            tile = grid.cells[r][c]
            out = partner_side(tile, entry)
            visited.add(state)
            visited.add((r, c, out))
            if tile in CROSSING_TILES:
                cid = crossing_ids.setdefault((r, c), len(crossing_ids) + 1)
                over = frozenset({entry, out}) == OVER_STRAND[tile]
                direction = SIDE_VECTOR[out]
                if cid not in first_dir:
                    first_dir[cid] = (over, direction)
                    passages.append(Passage(cid, over, 0))  # sign patched below
                else:
                    f_over, f_dir = first_dir[cid]
                    over_dir = f_dir if f_over else direction
                    under_dir = direction if f_over else f_dir
                    signs[cid] = 1 if _cross(over_dir, under_dir) > 0 else -1
                    passages.append(Passage(cid, over, signs[cid]))
            dr, dc = SIDE_STEP[out]
            nr, nc = r + dr, c + dc
            if 0 <= nr < n and 0 <= nc < n:
                r, c, entry = nr, nc, OPPOSITE[out]
            else:
                slot = slot_index(n, r, c, out)
                dest = partner[slot]
                r, c, entry = slot_location(n, dest)
            if (r, c, entry) in visited:
                return passages

    # Boundary-anchored components.
    for slot in range(4 * n):
        r, c, side = slot_location(n, slot)
        if touches(grid.cells[r][c], side) and (r, c, side) not in visited:
            passages = walk(r, c, side)
            if passages:
                components.append(passages)
            else:
                free_loops += 1
    # Interior loops.
    for r in range(n):
        for c in range(n):
            for side in (N, E, S, W):
                if touches(grid.cells[r][c], side) and (r, c, side) not in visited:
                    passages = walk(r, c, side)
                    if passages:
                        components.append(passages)
                    else:
                        free_loops += 1

    fixed = [
        tuple(Passage(p.crossing, p.over, signs[p.crossing]) for p in comp)
        for comp in components
    ]
    return GaussCode(tuple(fixed), free_loops)


# ---------------------------------------------------------------------------
# Canonical form.


def _relabel_serialize(comps: list[tuple[Passage, ...]], loops: int) -> str:
    labels: dict[int, int] = {}
    out = []
    for comp in comps:
        toks = []
        for p in comp:
            lab = labels.setdefault(p.crossing, len(labels) + 1)
            toks.append(f"{'O' if p.over else 'U'}{lab}{'+' if p.sign > 0 else '-'}")
        out.append("".join(toks))
    out.extend(["0"] * loops)
    return "|".join(out)


def _variants(comp: tuple[Passage, ...]):
    k = len(comp)
    for r in range(k):
        yield comp[r:] + comp[:r]


def canonical(code: GaussCode) -> CanonicalCode:
    """Lexicographic minimum over relabelings, rotations, component orders,
    and reversing the orientation of all components at once."""
    from itertools import permutations, product

    best: str | None = None
    for reverse in (False, True):
        comps = [
            tuple(reversed(c)) if reverse else c for c in code.components
        ]
        if not comps:
            best_candidate = _relabel_serialize([], code.free_loops)
            best = best_candidate if best is None else min(best, best_candidate)
            continue
        rotation_sets = [list(_variants(c)) for c in comps]
        for order in permutations(range(len(comps))):
            for rots in product(*(rotation_sets[i] for i in order)):
                cand = _relabel_serialize(list(rots), code.free_loops)
                if best is None or cand < best:
                    best = cand
    return CanonicalCode(best if best is not None else "")
