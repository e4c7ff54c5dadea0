"""Command line interface.

Subcommands: validate, genus, gauss, invariant, identify, render,
apply-move, inject, from-braid, sweep, vmn.  Results go to stdout, logs to
stderr; exit code 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .braid import braid_to_mosaic, parse_word
from .catalog import ingest, load_default
from .gausscodes import format_code, trace
from .invariants import TooManyCrossings, fingerprint
from .moves import NotEjectable, apply, eject, find_sites, inject, rule
from .search import StateSpaceTooLarge, SweepConfig, VmnResult, sweep, sweep_to_tsv, vmn
from .surface import genus, is_nested
from .svg import render_svg
from .textform import MosaicSyntaxError, print_mosaic, read_mosaic_file


class DomainError(Exception):
    pass


def _load(path):
    try:
        return read_mosaic_file(path)
    except FileNotFoundError as exc:
        raise DomainError(str(exc)) from exc
    except (MosaicSyntaxError, ValueError) as exc:
        raise DomainError(f"{path}: {exc}") from exc


def _cmd_validate(args) -> int:
    vm, _ = _load(args.mosaic)
    print(f"ok n={vm.n} genus={genus(vm.pairing)} nested={is_nested(vm.pairing)}")
    return 0


def _cmd_genus(args) -> int:
    vm, _ = _load(args.mosaic)
    print(genus(vm.pairing))
    return 0


def _cmd_gauss(args) -> int:
    vm, _ = _load(args.mosaic)
    print(format_code(trace(vm)))
    return 0


def _cmd_invariant(args) -> int:
    vm, _ = _load(args.mosaic)
    try:
        fp = fingerprint(trace(vm), with_cable=args.cable)
    except TooManyCrossings as exc:
        raise DomainError(str(exc)) from exc
    print(fp)
    return 0


def _catalog(args):
    if args.catalog:
        return ingest(args.catalog, with_cable=False)
    return load_default(with_cable=False)


def _cmd_identify(args) -> int:
    vm, _ = _load(args.mosaic)
    code = trace(vm)
    try:
        fp = fingerprint(code, with_cable=True)
    except TooManyCrossings:
        fp = fingerprint(code)
        print("note: crossing cap exceeded, matching on the plain polynomial", file=sys.stderr)
    names = _catalog(args).identify(fp)
    if not names:
        print("unidentified")
        return 0
    if len(names) > 1:
        print("ambiguous: " + " ".join(names))
        return 0
    print(names[0])
    return 0


def _cmd_render(args) -> int:
    vm, names = _load(args.mosaic)
    svg = render_svg(vm, names)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(args.output)
    else:
        sys.stdout.write(svg)
    return 0


def _cmd_apply_move(args) -> int:
    vm, _ = _load(args.mosaic)
    try:
        fam = rule(args.family)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    sites = find_sites(vm, fam.family)
    if args.anchor is not None:
        want = tuple(int(x) for x in args.anchor.split(","))
        sites = [s for s in sites if s.anchors and s.anchors[0] == want]
    if args.instance is not None:
        sites = [s for s in sites if s.instance == args.instance]
    if args.list:
        for s in sites:
            print(f"instance={s.instance} anchors={s.anchors} slots={s.slots}")
        return 0
    if not sites:
        raise DomainError("no matching site")
    out = apply(vm, sites[0])
    sys.stdout.write(print_mosaic(out))
    return 0


def _cmd_inject(args) -> int:
    vm, _ = _load(args.mosaic)
    try:
        if args.eject:
            out = eject(vm, args.i, args.j)
        else:
            out = inject(vm, args.i, args.j)
    except (NotEjectable, ValueError) as exc:
        raise DomainError(str(exc)) from exc
    sys.stdout.write(print_mosaic(out))
    return 0


def _cmd_from_braid(args) -> int:
    try:
        word = parse_word(args.word, args.strands)
        vm = braid_to_mosaic(word)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    sys.stdout.write(print_mosaic(vm))
    return 0


def _make_config(args) -> SweepConfig:
    genus_filter = None
    if args.genus is not None:
        genus_filter = frozenset({args.genus})
    return SweepConfig(
        n=args.n,
        max_crossing_tiles=args.max_crossings,
        genus_filter=genus_filter,
        workers=args.workers,
        with_cable=args.cable,
        budget=args.budget,
    )


def _cmd_sweep(args) -> int:
    try:
        result = sweep(_make_config(args))
    except StateSpaceTooLarge as exc:
        raise DomainError(str(exc)) from exc
    tsv = sweep_to_tsv(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(tsv)
        print(f"{len(result.entries)} fingerprints", file=sys.stderr)
    else:
        sys.stdout.write(tsv)
    return 0


def _cmd_vmn(args) -> int:
    catalog = _catalog(args)
    entry = catalog.entries.get(args.target)
    if entry is None:
        raise DomainError(f"unknown catalog name {args.target!r}")
    target = entry.fingerprint
    result: VmnResult = vmn(target, args.nmax, budget=args.budget)
    if result.found:
        print(result.n)
        sys.stdout.write(result.witness or "")
        return 0
    suffix = " (budget-pruned, not a nonexistence proof)" if result.budget_pruned else ""
    print(f"not found up to n={result.n}{suffix}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vmosaic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def mosaic_cmd(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("mosaic", help="mosaic text file")
        p.set_defaults(fn=fn)
        return p

    mosaic_cmd("validate", _cmd_validate, help="parse and check a mosaic")
    mosaic_cmd("genus", _cmd_genus, help="genus of the glued surface")
    mosaic_cmd("gauss", _cmd_gauss, help="signed Gauss code")
    p = mosaic_cmd("invariant", _cmd_invariant, help="identification fingerprint")
    p.add_argument("--cable", action="store_true", help="include the 2-cable polynomial")
    p = mosaic_cmd("identify", _cmd_identify, help="match against the catalog")
    p.add_argument("--catalog", help="catalog file (default: shipped tables)")
    p = mosaic_cmd("render", _cmd_render, help="render to SVG")
    p.add_argument("-o", "--output")
    p = mosaic_cmd("apply-move", _cmd_apply_move, help="apply a rewrite move")
    p.add_argument("family")
    p.add_argument("--anchor", help="row,col of the first patch")
    p.add_argument("--instance", type=int)
    p.add_argument("--list", action="store_true", help="list sites instead of applying")
    p = mosaic_cmd("inject", _cmd_inject, help="grow (or shrink) by two rows and columns")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--eject", action="store_true")

    p = sub.add_parser("from-braid", help="compile a braid word closure")
    p.add_argument("-k", "--strands", type=int, required=True)
    p.add_argument("word", help="letters like 's1 s2^-1 v3'")
    p.set_defaults(fn=_cmd_from_braid)

    p = sub.add_parser("sweep", help="exhaustive search over n-mosaics")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--genus", type=int)
    p.add_argument("--max-crossings", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cable", action="store_true")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("vmn", help="virtual mosaic number of a catalog knot")
    p.add_argument("--target", required=True, help="catalog name, e.g. 3_1")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--catalog")
    p.set_defaults(fn=_cmd_vmn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
