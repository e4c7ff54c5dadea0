"""Virtual knot mosaics: tile grids with glued boundaries on orientable
surfaces, their Gauss codes and bracket-polynomial fingerprints, a rewrite
calculus, a braid-word compiler, and exhaustive mosaic-number search."""

from .braid import BraidWord, braid_to_mosaic, closure_gauss, layout, parse_word
from .catalog import Catalog, ingest, load_default
from .gausscodes import CanonicalCode, GaussCode, canonical, mirror, parse_code, trace
from .invariants import (
    Fingerprint,
    LaurentPolynomial,
    cable2,
    f_polynomial,
    fingerprint,
    kauffman_bracket,
)
from .moves import apply, classical_import, compile_rules, eject, find_sites, inject
from .search import SweepConfig, enumerate_grids, enumerate_pairings, sweep, vmn
from .surface import BoundaryPairing, VirtualMosaic, complete_pairing, genus, is_nested
from .textform import parse_mosaic, parse_mosaic_file, print_mosaic, read_mosaic
from .tiles import MosaicGrid, Tile, boundary_endpoint_profile, interior_suitably_connected

__all__ = [
    "BoundaryPairing", "BraidWord", "Catalog", "CanonicalCode", "Fingerprint",
    "GaussCode", "LaurentPolynomial", "MosaicGrid", "SweepConfig", "Tile",
    "VirtualMosaic", "apply", "boundary_endpoint_profile", "braid_to_mosaic",
    "cable2", "canonical", "classical_import", "closure_gauss", "compile_rules",
    "complete_pairing", "eject", "enumerate_grids", "enumerate_pairings",
    "f_polynomial", "find_sites", "fingerprint", "genus", "ingest", "inject",
    "interior_suitably_connected", "is_nested", "kauffman_bracket", "layout",
    "load_default", "mirror", "parse_code", "parse_mosaic", "parse_mosaic_file",
    "parse_word", "print_mosaic", "read_mosaic", "sweep", "trace", "vmn",
]

__version__ = "0.1.0"
