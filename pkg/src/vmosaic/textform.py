"""Plain-text mosaic files.

Format::

    n=3
    T9 T1 T2
    T3 T9 T10
    T2 T10 T4
    labels: a:0,3 b:1,2 c:4,7 d:5,6 e:8,11 f:9,10

The ``labels:`` line lists every boundary pair either as a named pair
``name:slotA,slotB`` or anonymously as ``slotA-slotB``.  Parsing validates
the mosaic; printing is the exact inverse of parsing.
"""

from __future__ import annotations

from .surface import BoundaryPairing, VirtualMosaic
from .tiles import MosaicGrid, Tile


class MosaicSyntaxError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def read_mosaic(text: str) -> tuple[VirtualMosaic, dict[tuple[int, int], str]]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise MosaicSyntaxError("expected header 'n=<int>'", 1)
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise MosaicSyntaxError("bad side length", 1) from None
    if len(lines) != n + 2:
        raise MosaicSyntaxError(f"expected {n} tile rows plus a labels line, got {len(lines) - 1}")
    rows = []
    for r in range(n):
        toks = lines[1 + r].split()
        if len(toks) != n:
            raise MosaicSyntaxError(f"expected {n} tiles", 2 + r)
        row = []
        for tok in toks:
            if not tok.startswith("T") or not tok[1:].isdigit() or not 0 <= int(tok[1:]) <= 10:
                raise MosaicSyntaxError(f"unknown tile {tok!r}", 2 + r)
            row.append(Tile(int(tok[1:])))
        rows.append(row)
    grid = MosaicGrid.from_rows(rows)
    label_line = lines[n + 1]
    if not label_line.startswith("labels:"):
        raise MosaicSyntaxError("expected 'labels:' line", n + 2)
    pairs: list[tuple[int, int]] = []
    names: list[str | None] = []
    for tok in label_line[len("labels:") :].split():
        try:
            if ":" in tok:
                name, rest = tok.split(":", 1)
                a, b = (int(x) for x in rest.split(","))
            else:
                name = None
                a, b = (int(x) for x in tok.split("-"))
        except ValueError:
            raise MosaicSyntaxError(f"bad label token {tok!r}", n + 2) from None
        pairs.append((a, b))
        names.append(name)
    pairing = BoundaryPairing.from_pairs(n, pairs)
    vm = VirtualMosaic(grid, pairing)
    name_map = {
        (min(a, b), max(a, b)): nm for (a, b), nm in zip(pairs, names) if nm is not None
    }
    return vm, name_map


def parse_mosaic(text: str) -> VirtualMosaic:
    return read_mosaic(text)[0]


def parse_mosaic_file(path) -> VirtualMosaic:
    with open(path, encoding="utf-8") as fh:
        return parse_mosaic(fh.read())


def read_mosaic_file(path):
    with open(path, encoding="utf-8") as fh:
        return read_mosaic(fh.read())


def print_mosaic(vm: VirtualMosaic, names: dict[tuple[int, int], str] | None = None) -> str:
    n = vm.grid.n
    out = [f"n={n}"]
    for row in vm.grid.cells:
        out.append(" ".join(f"T{int(t)}" for t in row))
    toks = []
    for i, j in sorted(vm.pairing.pairs):
        name = names.get((i, j)) if names else None
        toks.append(f"{name}:{i},{j}" if name else f"{i}-{j}")
    out.append("labels: " + " ".join(toks))
    return "\n".join(out) + "\n"
