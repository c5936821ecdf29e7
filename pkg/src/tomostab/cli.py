"""Command-line front end.

Exit codes: 0 ok, 2 parse or parameter error, 3 bound violated,
4 F1 not uniquely determined, 5 size mismatch, 6 enumeration guard.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bounds import report
from .core import InstancePair, TomographyError, canonicalize, is_uniquely_determined, projections
from .families import InvalidParameters, gen_example1, gen_example2, gen_example3
from .formats import (
    ParseError,
    check_certificate,
    parse_pair,
    render_ascii,
    render_certificate,
    render_metrics,
    render_pair,
    render_pbm,
    render_report,
)
from .oracle import EnumSpec, GuardError, Mode, verify_all
from .staircase import decompose, equalize

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BOUND = 3
EXIT_NOT_UNIQUE = 4
EXIT_SIZE = 5
EXIT_GUARD = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    try:
        return parse_pair(text)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}")


def _canonical(pair):
    if not pair.f1:
        raise CliError(EXIT_PARSE, "F1 empty")
    rp, cp, canon = canonicalize(pair.f1, pair.f2)
    identity = rp == tuple(range(1, len(rp) + 1)) and cp == tuple(range(1, len(cp) + 1))
    return canon, identity


def cmd_gen(args) -> int:
    try:
        if args.family == "example1":
            pair = gen_example1(_need(args.m, "--m"))
            tag = f"example1 m={args.m}"
        elif args.family == "example2":
            pair = gen_example2(_need(args.k, "--k"), _need(args.m, "--m"))
            tag = f"example2 k={args.k} m={args.m}"
        else:
            pair = gen_example3(_need(args.n, "--n"), _need(args.alpha, "--alpha"))
            tag = f"example3 N={args.n} alpha={args.alpha}"
    except InvalidParameters:
        raise CliError(EXIT_PARSE, "invalid parameters")
    _emit(render_pair(pair, comments=[tag]), args.out)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise CliError(EXIT_PARSE, f"invalid parameters: {flag} is required")
    return value


def cmd_analyze(args) -> int:
    pair, identity = _canonical(_load(args.input))
    unique = is_uniquely_determined(projections(pair.f1))
    out = []
    if not identity:
        out.append("# rows and columns renumbered to canonical order\n")
    out.append(render_metrics(pair, unique))
    if not unique:
        out.append("bounds skipped: F1 is not uniquely determined\n")
        sys.stdout.write("".join(out))
        return EXIT_NOT_UNIQUE
    rep = report(pair)
    out.append(render_report(rep))
    sys.stdout.write("".join(out))
    return EXIT_OK if rep.all_hold else EXIT_BOUND


def cmd_decompose(args) -> int:
    pair, identity = _canonical(_load(args.input))
    if not is_uniquely_determined(projections(pair.f1)):
        raise CliError(EXIT_NOT_UNIQUE, "F1 is not uniquely determined")
    if len(pair.f1) != len(pair.f2):
        if not args.equalize:
            raise CliError(EXIT_SIZE, f"|F1| = {len(pair.f1)} but |F2| = {len(pair.f2)}; rerun with --equalize")
        pair = equalize(pair)
    dec = decompose(pair)
    _emit(render_certificate(dec), args.out)
    note = "" if identity else " (canonical coordinates)"
    # keep stdout clean when the certificate itself goes there
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    stream.write(f"staircases {len(dec)}{note}\n")
    return EXIT_OK


def cmd_check_cert(args) -> int:
    pair, _ = _canonical(_load(args.input))
    if args.equalize and len(pair.f1) != len(pair.f2):
        pair = equalize(pair)
    try:
        problems = check_certificate(Path(args.cert).read_text(), pair)
    except (OSError, ParseError) as exc:
        raise CliError(EXIT_PARSE, f"{args.cert}: {exc}")
    for p in problems:
        sys.stdout.write(p + "\n")
    sys.stdout.write("certificate ok\n" if not problems else f"{len(problems)} problems\n")
    return EXIT_OK if not problems else EXIT_BOUND


def cmd_render(args) -> int:
    pair = _load(args.input)
    text = render_pbm(pair) if args.format == "pbm" else render_ascii(pair)
    _emit(text, args.out)
    return EXIT_OK


def _box(text):
    try:
        r, c = text.lower().split("x")
        return int(r), int(c)
    except ValueError:
        raise argparse.ArgumentTypeError(f"box must look like 5x5, got {text!r}")


def cmd_verify(args) -> int:
    try:
        spec = EnumSpec(args.max_cells, args.box, Mode(args.mode))
    except TomographyError as exc:
        raise CliError(EXIT_PARSE, str(exc))
    try:
        summary = verify_all(spec, workers=args.workers, allow_large=args.allow_large)
    except GuardError as exc:
        raise CliError(EXIT_GUARD, f"{exc}; pass --allow-large to override")
    sys.stdout.write(summary.render())
    if summary.first is not None:
        first = summary.first
        path = Path(args.counterexample_dir) / f"counterexample-{spec.mode.value}-{first.rank[0]}-{first.rank[1]}.pair"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(render_pair(InstancePair(first.f1, first.f2), comments=[f"violates {first.check}"]))
        sys.stdout.write(f"counterexample written to {path}\n")
        return EXIT_BOUND
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tomostab", description="Stability of uniquely determined binary images.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write an extremal example as a pair file")
    p.add_argument("family", choices=["example1", "example2", "example3"])
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="print metrics and the bound report")
    p.add_argument("input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="write a staircase certificate")
    p.add_argument("input")
    p.add_argument("-o", "--out")
    p.add_argument("--equalize", action="store_true", help="equalize |F2| to |F1| first")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("check-cert", help="re-verify a certificate against a pair file")
    p.add_argument("input")
    p.add_argument("cert")
    p.add_argument("--equalize", action="store_true")
    p.set_defaults(func=cmd_check_cert)

    p = sub.add_parser("render", help="draw a pair as ASCII or PBM")
    p.add_argument("input")
    p.add_argument("--format", choices=["ascii", "pbm"], default="ascii")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="exhaustive check of every lemma and bound")
    p.add_argument("--max-cells", type=int, default=4)
    p.add_argument("--box", type=_box, default=(5, 5))
    p.add_argument("--mode", choices=[m.value for m in Mode], default="general")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--counterexample-dir", default=".")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
