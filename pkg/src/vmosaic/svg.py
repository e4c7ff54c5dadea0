"""Static SVG pictures of virtual mosaics.

Tiles are drawn on a unit grid: quarter arcs, straight lines, and crossings
with a visible gap in the under strand (under-strand halves carry
``class="under"``, one gap per crossing tile).  Boundary slots get tick
marks and the paired-label letters.  Output is deterministic byte for byte.
"""

from __future__ import annotations

from .surface import VirtualMosaic
from .tiles import E, N, S, Tile, W, slot_location

_SCALE = 60
_MARGIN = 34


def _pt(x: float, y: float) -> str:
    return f"{_MARGIN + x * _SCALE:.1f},{_MARGIN + y * _SCALE:.1f}"


def _mid(r: int, c: int, side: int) -> tuple[float, float]:
    return {
        N: (c + 0.5, r),
        E: (c + 1.0, r + 0.5),
        S: (c + 0.5, r + 1.0),
        W: (c, r + 0.5),
    }[side]


_CORNER = {
    frozenset({N, E}): lambda r, c: (c + 1.0, r),
    frozenset({N, W}): lambda r, c: (c, r),
    frozenset({S, E}): lambda r, c: (c + 1.0, r + 1.0),
    frozenset({S, W}): lambda r, c: (c, r + 1.0),
}


def _arc_path(r: int, c: int, sides: frozenset[int]) -> str:
    a, b = sorted(sides)
    x1, y1 = _mid(r, c, a)
    x2, y2 = _mid(r, c, b)
    if sides in _CORNER:
        # Quarter circle around the shared corner, bulging inward.
        cx, cy = _CORNER[sides](r, c)
        sweep = 1 if (cx - x1) * (y2 - cy) - (cy - y1) * (x2 - cx) > 0 else 0
        return (
            f'<path d="M {_pt(x1, y1)} A {_SCALE // 2} {_SCALE // 2} 0 0 {sweep} '
            f'{_pt(x2, y2)}" />'
        )
    return f'<line x1="{_pt(x1, y1).split(",")[0]}" y1="{_pt(x1, y1).split(",")[1]}" x2="{_pt(x2, y2).split(",")[0]}" y2="{_pt(x2, y2).split(",")[1]}" />'


def _line(p1: tuple[float, float], p2: tuple[float, float], cls: str = "") -> str:
    a = _pt(*p1).split(",")
    b = _pt(*p2).split(",")
    attr = f' class="{cls}"' if cls else ""
    return f'<line{attr} x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" />'


def _tile_svg(r: int, c: int, tile: Tile) -> list[str]:
    out = []
    if tile in (Tile.T9, Tile.T10):
        over_vertical = tile == Tile.T9
        if over_vertical:
            out.append(_line(_mid(r, c, N), _mid(r, c, S)))
            out.append(_line(_mid(r, c, W), (c + 0.36, r + 0.5), "under"))
            out.append(_line((c + 0.64, r + 0.5), _mid(r, c, E), "under"))
        else:
            out.append(_line(_mid(r, c, W), _mid(r, c, E)))
            out.append(_line(_mid(r, c, N), (c + 0.5, r + 0.36), "under"))
            out.append(_line((c + 0.5, r + 0.64), _mid(r, c, S), "under"))
        return out
    from .tiles import connections

    arcs, _ = connections(tile)
    for sides in sorted(arcs, key=lambda s: tuple(sorted(s))):
        if sides in _CORNER:
            out.append(_arc_path(r, c, sides))
        else:
            a, b = sorted(sides)
            out.append(_line(_mid(r, c, a), _mid(r, c, b)))
    return out


def _label_names(vm: VirtualMosaic, names=None) -> dict[int, str]:
    def nth_name(i: int) -> str:
        s = ""
        i += 1
        while i:
            i, rem = divmod(i - 1, 26)
            s = chr(ord("a") + rem) + s
        return s

    out = {}
    for idx, (i, j) in enumerate(sorted(vm.pairing.pairs)):
        name = names.get((i, j)) if names else None
        name = name or nth_name(idx)
        out[i] = out[j] = name
    return out


def render_svg(vm: VirtualMosaic, names: dict[tuple[int, int], str] | None = None) -> str:
    n = vm.grid.n
    size = 2 * _MARGIN + n * _SCALE
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        "<style>line,path{stroke:#1a1a1a;stroke-width:3;fill:none;stroke-linecap:round}"
        ".grid{stroke:#c8c8c8;stroke-width:1}.tick{stroke:#888;stroke-width:2}"
        "text{font:14px sans-serif;fill:#333}</style>",
    ]
    for i in range(n + 1):
        parts.append(_line((0, i), (n, i), "grid"))
        parts.append(_line((i, 0), (i, n), "grid"))
    for r in range(n):
        for c in range(n):
            parts.extend(_tile_svg(r, c, vm.grid.cells[r][c]))
    labels = _label_names(vm, names)
    tick = 0.12
    for slot in range(4 * n):
        r, c, side = slot_location(n, slot)
        x, y = _mid(r, c, side)
        dx, dy = {N: (0, -1), E: (1, 0), S: (0, 1), W: (-1, 0)}[side]
        parts.append(_line((x, y), (x + dx * tick, y + dy * tick), "tick"))
        tx, ty = _pt(x + dx * 0.32, y + dy * 0.32).split(",")
        parts.append(
            f'<text x="{tx}" y="{ty}" text-anchor="middle" dominant-baseline="middle">'
            f"{labels[slot]}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
