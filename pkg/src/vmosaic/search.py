"""Exhaustive enumeration of virtual mosaics and mosaic-number search.

Grids are generated row by row: a row's north endpoint profile must equal
the previous row's south profile, and tiles must agree along each row's
interior vertical edges.  Rows are precomputed per profile, so the stream
touches only suitably connected grids.  For each grid, boundary matchings
of the endpoint slots are enumerated (strand-free slots always receive the
canonical adjacent completion), traced, and aggregated by fingerprint.

Full sweeps are kept to small n by an explicit node budget; verification of
individual larger mosaics has no cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterator

from .gausscodes import GaussCode, canonical, trace
from .invariants import Fingerprint, fingerprint
from .surface import BoundaryPairing, VirtualMosaic, complete_pairing, genus, is_nested
from .textform import print_mosaic
from .tiles import (
    DIHEDRAL,
    E,
    N,
    S,
    Tile,
    W,
    MosaicGrid,
    boundary_endpoint_profile,
    touches,
    transform_grid,
)


class StateSpaceTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n: int
    max_crossing_tiles: int | None = None
    genus_filter: frozenset[int] | None = None
    component_filter: frozenset[int] | None = None
    symmetry_reduction: bool = False
    workers: int = 1
    with_cable: bool = False
    budget: int = 2_000_000  # grid x matching nodes

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")


@dataclass
class SweepEntry:
    representative: str  # mosaic text form
    min_genus: int
    crossing_tiles: int
    count: int


@dataclass
class SweepResult:
    config: SweepConfig
    entries: dict[Fingerprint, SweepEntry] = field(default_factory=dict)
    grids: int = 0
    mosaics: int = 0

    def fingerprints(self) -> set[Fingerprint]:
        return set(self.entries)


# ---------------------------------------------------------------------------
# Grid enumeration.


def _row_table(n: int, max_crossings: int | None):
    """All suitably connected rows, grouped by north profile.

    Returns ``{north_profile: [(row, south_profile, crossings), ...]}`` with
    profiles as bit tuples.
    """
    from itertools import product

    table: dict[tuple[bool, ...], list] = {}
    for row in product(list(Tile), repeat=n):
        ok = all(
            touches(row[c], E) == touches(row[c + 1], W) for c in range(n - 1)
        )
        if not ok:
            continue
        north = tuple(touches(t, N) for t in row)
        south = tuple(touches(t, S) for t in row)
        crossings = sum(1 for t in row if t in (Tile.T9, Tile.T10))
        if max_crossings is not None and crossings > max_crossings:
            continue
        table.setdefault(north, []).append((row, south, crossings))
    return table


def _canonical_grid(grid: MosaicGrid) -> MosaicGrid:
    return min((transform_grid(grid, g) for g in DIHEDRAL), key=lambda m: m.cells)


def enumerate_grids(n: int, config: SweepConfig | None = None) -> Iterator[MosaicGrid]:
    """Stream the interior-suitably-connected grids, row by row."""
    config = config or SweepConfig(n)
    table = _row_table(n, config.max_crossing_tiles)

    def rec(rows, south, crossings):
        if len(rows) == n:
            yield MosaicGrid.from_rows([list(r) for r in rows])
            return
        for row, next_south, cr in table.get(south, ()) if south is not None else (
            item for group in table.values() for item in group
        ):
            total = crossings + cr
            if config.max_crossing_tiles is not None and total > config.max_crossing_tiles:
                continue
            yield from rec(rows + [row], next_south, total)

    for grid in rec([], None, 0):
        if config.symmetry_reduction and _canonical_grid(grid) != grid:
            continue
        yield grid


def count_burnside(n: int, max_crossings: int | None = None) -> int:
    """Dihedral orbit count of suitably connected grids, via Burnside."""
    fixed = 0
    cfg = SweepConfig(n, max_crossing_tiles=max_crossings)
    grids = list(enumerate_grids(n, cfg))
    for g in DIHEDRAL:
        fixed += sum(1 for grid in grids if transform_grid(grid, g) == grid)
    return fixed // len(DIHEDRAL)


# ---------------------------------------------------------------------------
# Pairing enumeration.


def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + tail


def enumerate_pairings(
    grid: MosaicGrid, config: SweepConfig | None = None
) -> Iterator[BoundaryPairing]:
    """All endpoint-compatible pairings, blanks canonically completed."""
    config = config or SweepConfig(grid.n)
    profile = boundary_endpoint_profile(grid)
    endpoint_slots = [s for s in range(4 * grid.n) if profile[s]]
    for matching in _matchings(endpoint_slots):
        pairing = complete_pairing(grid, matching)
        if config.genus_filter is not None and genus(pairing) not in config.genus_filter:
            continue
        yield pairing


# ---------------------------------------------------------------------------
# Sweeps.


def _estimate_nodes(n: int, config: SweepConfig) -> int:
    grids = 0
    matchings = 0
    for grid in enumerate_grids(n, config):
        grids += 1
        k = sum(boundary_endpoint_profile(grid)) // 2
        m = 1
        for i in range(2 * k - 1, 0, -2):
            m *= i
        matchings += m
    return matchings if grids else 0


def _sweep_grid(grid: MosaicGrid, config: SweepConfig):
    """Aggregate one grid's pairings; returns partial entry map."""
    out: dict[Fingerprint, SweepEntry] = {}
    mosaics = 0
    crossings = len(grid.crossing_cells())
    for pairing in enumerate_pairings(grid, config):
        vm = VirtualMosaic(grid, pairing)
        code = trace(vm)
        mosaics += 1
        if code.component_count == 0:
            continue
        if config.component_filter is not None and code.component_count not in config.component_filter:
            continue
        fp = fingerprint(code, with_cable=config.with_cable)
        g = genus(pairing)
        text = print_mosaic(vm)
        entry = out.get(fp)
        if entry is None:
            out[fp] = SweepEntry(text, g, crossings, 1)
        else:
            entry.count += 1
            if g < entry.min_genus:
                entry.min_genus = g
            if (crossings, text) < (entry.crossing_tiles, entry.representative):
                entry.representative = text
                entry.crossing_tiles = crossings
    return out, mosaics


def _merge(target: dict[Fingerprint, SweepEntry], part: dict[Fingerprint, SweepEntry]):
    for fp, entry in part.items():
        cur = target.get(fp)
        if cur is None:
            target[fp] = entry
        else:
            cur.count += entry.count
            cur.min_genus = min(cur.min_genus, entry.min_genus)
            if (entry.crossing_tiles, entry.representative) < (cur.crossing_tiles, cur.representative):
                cur.representative = entry.representative
                cur.crossing_tiles = entry.crossing_tiles


def sweep(config: SweepConfig) -> SweepResult:
    """Exhaust all mosaics for the configuration.

    Deterministic regardless of worker count: per-grid partial results merge
    through an associative, commutative union that keeps minimum genus and
    the lexicographically smallest representative.
    """
    estimated = _estimate_nodes(config.n, config)
    if estimated > config.budget:
        raise StateSpaceTooLarge(
            f"~{estimated} mosaics exceed the budget of {config.budget}"
        )
    result = SweepResult(config)
    grids = list(enumerate_grids(config.n, config))
    result.grids = len(grids)
    if config.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for part, mosaics in pool.map(
                _sweep_grid_star, [(g, config) for g in grids], chunksize=8
            ):
                _merge(result.entries, part)
                result.mosaics += mosaics
    else:
        for grid in grids:
            part, mosaics = _sweep_grid(grid, config)
            _merge(result.entries, part)
            result.mosaics += mosaics
    return result


def _sweep_grid_star(args):
    return _sweep_grid(*args)


# ---------------------------------------------------------------------------
# Virtual mosaic numbers.


@dataclass(frozen=True)
class VmnResult:
    found: bool
    n: int  # realizing size, or the largest size exhausted
    witness: str | None = None  # mosaic text form
    budget_pruned: bool = False


def vmn(
    target: Fingerprint,
    n_max: int,
    budget: int | None = None,
    with_cable: bool | None = None,
) -> VmnResult:
    """Smallest n whose sweep realizes the fingerprint, by ascending sweeps.

    Matching uses the cable polynomial exactly when the target carries one
    (plain polynomials can collide across genuinely different knots).  A miss
    is only a nonexistence proof when no sweep was budget-pruned.
    """
    if with_cable is None:
        with_cable = target.f_poly_2cable is not None
    pruned = False
    for n in range(1, n_max + 1):
        config = SweepConfig(
            n,
            with_cable=with_cable,
            budget=budget if budget is not None else SweepConfig(n).budget,
        )
        try:
            result = sweep(config)
        except StateSpaceTooLarge:
            pruned = True
            continue
        entry = result.entries.get(target)
        if entry is not None:
            return VmnResult(True, n, entry.representative)
    return VmnResult(False, n_max, None, pruned)


def sweep_to_tsv(result: SweepResult) -> str:
    """Tab-separated summary: fingerprint, min genus, crossings, count, witness."""
    lines = ["fingerprint\tmin_genus\tcrossing_tiles\tcount\twitness"]
    items = sorted(
        result.entries.items(), key=lambda kv: (kv[1].crossing_tiles, str(kv[0]))
    )
    for fp, entry in items:
        witness = entry.representative.replace("\n", ";")
        lines.append(f"{fp}\t{entry.min_genus}\t{entry.crossing_tiles}\t{entry.count}\t{witness}")
    return "\n".join(lines) + "\n"
