"""Named-knot catalog: reference codes, fingerprints, identification.

Catalog files are UTF-8 text, one entry per line::

    name<TAB>gauss_code<TAB>source

Fingerprints are recomputed on load, with the 2-cabled polynomial whenever
the crossing cap allows; entries above the cap keep the plain fingerprint
and are flagged.  Identification returns every matching name; ambiguity is
reported, never resolved silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .gausscodes import GaussCode, parse_code
from .invariants import Fingerprint, TooManyCrossings, fingerprint


class CatalogParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    source: str
    code: GaussCode
    fingerprint: Fingerprint
    cable_capped: bool = False


@dataclass
class Catalog:
    entries: dict[str, CatalogEntry]

    def identify(self, fp: Fingerprint) -> list[str]:
        """Names whose fingerprints match.

        Plain polynomials are compared first; when both sides carry a
        2-cable polynomial those must agree too.  Entries ingested without
        cables are refined on demand (the crossing cap permitting), so a
        collision is only reported when the cable cannot settle it.
        """
        hits = []
        for entry in self.entries.values():
            efp = entry.fingerprint
            if efp.component_count != fp.component_count or efp.f_poly != fp.f_poly:
                continue
            if fp.f_poly_2cable is not None and efp.f_poly_2cable is None:
                try:
                    efp = fingerprint(entry.code, with_cable=True)
                except TooManyCrossings:
                    pass
            if (
                fp.f_poly_2cable is not None
                and efp.f_poly_2cable is not None
                and efp.f_poly_2cable != fp.f_poly_2cable
            ):
                continue
            hits.append(entry.name)
        return sorted(hits)

    def collisions(self) -> list[tuple[str, str]]:
        """Distinct names sharing a fingerprint (ambiguity report)."""
        by_fp: dict[tuple, list[str]] = {}
        for entry in self.entries.values():
            by_fp.setdefault(entry.fingerprint.key(), []).append(entry.name)
        out = []
        for names in by_fp.values():
            names = sorted(names)
            out.extend((a, b) for i, a in enumerate(names) for b in names[i + 1 :])
        return sorted(out)

    def save(self, path: Path | str) -> None:
        lines = []
        for entry in sorted(self.entries.values(), key=lambda e: e.name):
            lines.append(f"{entry.name}\t{entry.code}\t{entry.source}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def ingest_lines(lines, with_cable: bool = True) -> Catalog:
    entries: dict[str, CatalogEntry] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise CatalogParseError("expected name<TAB>code<TAB>source", lineno)
        name, code_text, source = (p.strip() for p in parts)
        if name in entries:
            raise CatalogParseError(f"duplicate name {name!r}", lineno)
        try:
            code = parse_code(code_text)
        except ValueError as exc:
            raise CatalogParseError(str(exc), lineno) from exc
        capped = False
        if with_cable:
            try:
                fp = fingerprint(code, with_cable=True)
            except TooManyCrossings:
                fp = fingerprint(code)
                capped = True
        else:
            fp = fingerprint(code)
        entries[name] = CatalogEntry(name, source, code, fp, capped)
    return Catalog(entries)


def ingest(path: Path | str, with_cable: bool = True) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        return ingest_lines(fh, with_cable=with_cable)


def load_default(with_cable: bool = True) -> Catalog:
    """Catalog shipped with the package: classical knots through eight
    crossings plus the small virtual knots."""
    text = ""
    for name in ("classical.tsv", "virtual.tsv"):
        text += resources.files("vmosaic.data").joinpath(name).read_text("utf-8")
    return ingest_lines(text.splitlines(), with_cable=with_cable)
