"""Command-line interface.

::

    tesscurv generate --family hyperbolic --p 7 --q 3 --radius 5 --out g.tess
    tesscurv report g.tess --sections all --format json --out g.json
    tesscurv verify [CORPUS_DIR]
    tesscurv build-corpus DIR

Exit codes: 0 all checks pass, 1 some check fails, 2 usage error, 3 I/O
error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .corpus import CorpusIOError, build_corpus, shipped_corpus_dir, verify_corpus
from .errors import ParseError, StructuralError, TessError
from .exchange import dumps, file_digest, load, save
from .generators import FAMILIES, GeneratorSpec, generate
from .report import SECTIONS, analyze, failures, to_csv, to_json

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="tesscurv", description="Curvature, growth and spectra of tessellations.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build a tessellation and write it in the exchange format")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--radius", type=int)
    g.add_argument("--name", help="platonic solid, or comma-separated face degrees for --family star")
    g.add_argument("--polygon", type=int, help="polygon degree of a kagome-type ball")
    g.add_argument("--schedule", help='degree schedule such as "6+2r"')
    g.add_argument("--lattice", choices=("square", "triangular", "hexagonal"))
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--out", help="output file (stdout if omitted)")

    r = sub.add_parser("report", help="analyze a tessellation file")
    r.add_argument("input")
    r.add_argument("--sections", default="all", help="comma-separated subset of " + ",".join(SECTIONS) + " or all")
    r.add_argument("--format", choices=("json", "csv"), default="json")
    r.add_argument("--out", help="output file (stdout if omitted)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tol", type=_positive, default=1e-9)

    v = sub.add_parser("verify", help="check every fixture of a corpus")
    v.add_argument("corpus", nargs="?", help="corpus directory (the shipped corpus by default)")
    v.add_argument("--sections", default="curvature,geometry,growth")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=_positive, default=1e-9)
    v.add_argument("--out", help="directory for per-fixture JSON reports")

    b = sub.add_parser("build-corpus", help="regenerate the fixture corpus")
    b.add_argument("directory")
    return ap


def _write_text(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    from .corpus import _atomic_write

    _atomic_write(out, text)


def _sections(text):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if "all" in items:
        return SECTIONS
    bad = [s for s in items if s not in SECTIONS]
    if bad or not items:
        raise TessError(f"unknown sections {bad}; choose from {', '.join(SECTIONS)} or all")
    return tuple(items)


def _cmd_generate(args):
    spec = GeneratorSpec(
        args.family, p=args.p, q=args.q, radius=args.radius, name=args.name, polygon=args.polygon,
        schedule=args.schedule, lattice=args.lattice, m=args.m, n=args.n,
    )
    try:
        t = generate(spec)
    except TessError as exc:
        print(f"tesscurv: invalid generator spec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.out is None:
            sys.stdout.write(dumps(t))
        else:
            save(t, args.out)
    except OSError as exc:
        print(f"tesscurv: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_report(args):
    try:
        sections = _sections(args.sections)
    except TessError as exc:
        print(f"tesscurv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        digest = file_digest(args.input)
        t = load(args.input)
    except (OSError, UnicodeDecodeError, ParseError, StructuralError) as exc:
        print(f"tesscurv: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    bundle = analyze(t, sections, seed=args.seed, tol=args.tol,
                     source={"input": os.path.basename(args.input), "sha256": digest})
    text = to_json(bundle) if args.format == "json" else to_csv(bundle)
    try:
        _write_text(text, args.out)
    except OSError as exc:
        print(f"tesscurv: {exc}", file=sys.stderr)
        return EXIT_IO
    for row in failures(bundle):
        print(f"FAIL {row['tag']}: {row['claim']}", file=sys.stderr)
    return EXIT_FAIL if failures(bundle) else EXIT_OK


def _cmd_verify(args):
    try:
        sections = _sections(args.sections)
    except TessError as exc:
        print(f"tesscurv: {exc}", file=sys.stderr)
        return EXIT_USAGE
    corpus = args.corpus or shipped_corpus_dir()
    try:
        result = verify_corpus(corpus, seed=args.seed, tol=args.tol, sections=sections)
    except CorpusIOError as exc:
        print(f"tesscurv: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for fx in result.fixtures:
        bad = fx.failed
        print(f"{'FAIL' if bad else 'ok  '} {fx.name}")
        for row in bad:
            value = row.get("value")
            detail = f" {value}" if value else ""
            print(f"     {row['tag']}: {row['claim']}{detail}")
        if args.out:
            try:
                os.makedirs(args.out, exist_ok=True)
                _write_text(to_json(fx.bundle), os.path.join(args.out, f"{fx.name}.json"))
            except OSError as exc:
                print(f"tesscurv: {exc}", file=sys.stderr)
                return EXIT_IO
    return EXIT_OK if result.ok else EXIT_FAIL


def _cmd_build(args):
    try:
        manifest = build_corpus(args.directory)
    except OSError as exc:
        print(f"tesscurv: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(manifest)} fixtures to {args.directory}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "generate": _cmd_generate,
        "report": _cmd_report,
        "verify": _cmd_verify,
        "build-corpus": _cmd_build,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
