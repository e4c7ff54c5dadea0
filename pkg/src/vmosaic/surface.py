"""Boundary identifications and the genus of the glued surface.

The 4n boundary edges of an n x n grid are identified in pairs.  Each pair is
glued orientation-reversingly with respect to the clockwise boundary walk, so
the identification word of the 4n-gon contains each label once as ``x`` and
once as ``x^-1`` and the resulting closed surface is orientable.

Euler characteristic gives the genus: after gluing there are ``2n`` edges and
one face, so ``chi = V - 2n + 1`` where ``V`` counts polygon-corner orbits,
and ``g = (2 - chi) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tiles import MosaicGrid, boundary_endpoint_profile, interior_suitably_connected


class EndpointMismatch(ValueError):
    """A pair joins a strand endpoint to an empty boundary edge."""


class OddUnlabeledCount(RuntimeError):
    """Internal parity failure while completing a pairing (should not occur)."""


@dataclass(frozen=True)
class BoundaryPairing:
    """A perfect matching on the slot indices ``0..4n-1``."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for i, j in self.pairs:
            if i == j:
                raise ValueError("a slot cannot pair with itself")
            seen.update((i, j))
        if seen != set(range(4 * self.n)) or len(self.pairs) != 2 * self.n:
            raise ValueError("pairs must form a perfect matching on all 4n slots")

    @staticmethod
    def from_pairs(n: int, pairs) -> "BoundaryPairing":
        norm = tuple(sorted((min(i, j), max(i, j)) for i, j in pairs))
        return BoundaryPairing(n, norm)

    def partner(self, slot: int) -> int:
        for i, j in self.pairs:
            if slot == i:
                return j
            if slot == j:
                return i
        raise ValueError(f"slot {slot} not present")

    def partner_map(self) -> list[int]:
        out = [-1] * (4 * self.n)
        for i, j in self.pairs:
            out[i], out[j] = j, i
        return out


@dataclass(frozen=True)
class VirtualMosaic:
    """A suitably connected grid together with a compatible boundary pairing."""

    grid: MosaicGrid
    pairing: BoundaryPairing

    def __post_init__(self) -> None:
        if self.grid.n != self.pairing.n:
            raise ValueError("grid and pairing sizes differ")
        report = interior_suitably_connected(self.grid)
        if not report.ok:
            raise ValueError(f"grid is not suitably connected: {report.violations[:3]}")
        profile = boundary_endpoint_profile(self.grid)
        for i, j in self.pairing.pairs:
            if profile[i] != profile[j]:
                raise EndpointMismatch(f"slots {i} and {j} disagree on carrying a strand")

    @property
    def n(self) -> int:
        return self.grid.n


def complete_pairing(grid: MosaicGrid, partial=()) -> BoundaryPairing:
    """Extend a partial pairing of the endpoint slots to all 4n slots.

    ``partial`` must cover every slot that carries a strand endpoint.  Empty
    slots are filled as adjacent pairs wherever a free run allows (such pairs
    are sphere summands and do not change the genus); any stragglers from
    odd-length runs are then paired off left to right.
    """
    n = grid.n
    total = 4 * n
    profile = boundary_endpoint_profile(grid)
    used: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for i, j in partial:
        if i == j or i in used or j in used:
            raise ValueError("partial pairs overlap")
        if profile[i] != profile[j]:
            raise EndpointMismatch(f"slots {i} and {j} disagree on carrying a strand")
        used.update((i, j))
        pairs.append((min(i, j), max(i, j)))
    uncovered = [s for s in range(total) if profile[s] and s not in used]
    if uncovered:
        raise EndpointMismatch(f"endpoint slots {uncovered} left unpaired")

    free = [s for s in range(total) if s not in used]
    if len(free) % 2:
        raise OddUnlabeledCount("odd number of free slots")
    # Split the free slots into maximal runs of circularly consecutive
    # indices, then pair consecutive slots within each run: such pairs are
    # adjacent on the circle, hence sphere summands.
    free_set = set(free)
    if len(free) == total:
        runs = [list(range(total))]
    else:
        runs = []
        for s in free:
            if (s - 1) % total in free_set:
                continue
            run = [s]
            nxt = (s + 1) % total
            while nxt in free_set:
                run.append(nxt)
                nxt = (nxt + 1) % total
            runs.append(run)
    leftovers: list[int] = []
    for run in runs:
        if len(run) % 2:
            leftovers.append(run[-1])
            run = run[:-1]
        for a, b in zip(run[::2], run[1::2]):
            pairs.append((min(a, b), max(a, b)))
    leftovers.sort()
    for a, b in zip(leftovers[::2], leftovers[1::2]):
        pairs.append((a, b))
    return BoundaryPairing.from_pairs(n, pairs)


def genus(pairing: BoundaryPairing) -> int:
    """Genus of the closed orientable surface obtained from the gluing.

    Polygon corner ``v_i`` sits between edge ``i-1`` and edge ``i``.  Gluing
    edge ``i`` to edge ``j`` orientation-reversingly identifies ``v_i`` with
    ``v_{j+1}`` and ``v_{i+1}`` with ``v_j``.
    """
    total = 4 * pairing.n
    parent = list(range(total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i, j in pairing.pairs:
        union(i, (j + 1) % total)
        union((i + 1) % total, j)
    vertices = len({find(x) for x in range(total)})
    chi = vertices - 2 * pairing.n + 1
    g2 = 2 - chi
    if g2 < 0 or g2 % 2:
        raise AssertionError(f"non-orientable gluing slipped through: chi={chi}")
    return g2 // 2


def is_nested(pairing: BoundaryPairing) -> bool:
    """True when no two pairs interleave around the boundary circle.

    Interleaving is rotation-invariant, so checking the linear order cut at
    slot 0 suffices.
    """
    stack: list[int] = []
    opener = {}
    for i, j in pairing.pairs:
        opener[i] = j
    for s in range(4 * pairing.n):
        if s in opener:
            stack.append(opener[s])
        else:
            if not stack or stack[-1] != s:
                return False
            stack.pop()
    return not stack
