"""Command line interface.

Exit status: 0 on success, 1 when the input base fails validation, 2 on
usage errors (bad arguments, unreadable or malformed files, moves that do
not apply).
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from .base import DiskBase, FactorizationWord, InvalidBaseError, NonDiskBase, canonical_form, validate
from .classify import classify
from .corpus import corpus
from .diagram import MoveLog, ParseError, format_result, parse, serialize
from .geometry import total_turning
from .lattice import LatticeVector
from .moves import Move, MoveError, apply_move, nodal_trade
from .normalize import NormalizationError, reduce_n, to_toric
from .render import RenderError, render_svg

__all__ = ["main", "build_parser"]

MOVE_OPS = ("T", "Tinv", "trade", "untrade", "slide", "split", "blowup", "blowdown",
            "toric-blowup", "toric-blowdown")


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from err
    try:
        return parse(text)
    except ParseError as err:
        raise UsageError(f"{path}: {err}") from err


def _read_base(path: str, disk_only: bool = False):
    obj = _read(path)
    allowed = (DiskBase,) if disk_only else (DiskBase, NonDiskBase)
    if not isinstance(obj, allowed):
        raise UsageError(f"{path} does not hold a {'disk base' if disk_only else 'base'}")
    report = validate(obj)
    if not report.ok:
        raise InvalidBaseError(report)
    return obj


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as err:
        raise UsageError(f"cannot write {path}: {err.strerror}") from err


def _vector(text: str) -> LatticeVector:
    m = re.fullmatch(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected (x,y), got {text!r}")
    return LatticeVector(int(m[1]), int(m[2]))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from err


def cmd_validate(args) -> int:
    obj = _read(args.file)
    if not isinstance(obj, (DiskBase, NonDiskBase)):
        raise UsageError(f"{args.file} does not hold a base")
    report = validate(obj)
    if report.ok:
        print("valid")
        return 0
    for msg in report.messages():
        print(msg)
    return 1


def cmd_classify(args) -> int:
    print(format_result(classify(_read_base(args.file))))
    return 0


def cmd_normalize(args) -> int:
    base = _read_base(args.file, disk_only=True)
    log = MoveLog()
    for i in base.vertex_indices():
        base, rec = nodal_trade(base, i, "vertex_to_node")
        log.records.append(rec)
    base, trace = reduce_n(base)
    log.records.extend(trace.steps)
    log.max_n_history.extend(trace.max_n_history)
    _write(args.output, serialize(base))
    if args.trace:
        _write(args.trace, serialize(log))
    print(f"n = {' '.join(map(str, base.n_values()))}")
    return 0


def cmd_to_toric(args) -> int:
    fan, trace = to_toric(_read_base(args.file, disk_only=True))
    _write(args.output, serialize(fan))
    print(f"{fan.k} edges after {len(trace.steps)} moves")
    return 0


def cmd_move(args) -> int:
    base = _read_base(args.file, disk_only=True)
    if not 0 <= args.index < base.k:
        raise UsageError(f"index {args.index} out of range 0..{base.k - 1}")
    if args.op == "slide" and args.t is None:
        raise UsageError("slide needs --t")
    try:
        out, rec = apply_move(base, Move(args.op, args.index, args.t))
    except MoveError as err:
        raise UsageError(str(err)) from err
    _write(args.output, serialize(out))
    print(f"{rec.move.op} {rec.move.index}: {rec.before_hash} -> {rec.after_hash}")
    return 0


def cmd_render(args) -> int:
    base = _read_base(args.file, disk_only=True)
    _write(args.output, render_svg(base))
    return 0


def cmd_factor_check(args) -> int:
    obj = _read(args.file)
    if isinstance(obj, DiskBase):
        report = validate(obj)
        if not report.ok:
            raise InvalidBaseError(report)
        word = obj.word()
    elif isinstance(obj, FactorizationWord):
        word = obj
    else:
        raise UsageError(f"{args.file} holds neither a word nor a disk base")
    rep = total_turning(word, args.v0)
    for i, (p, angle) in enumerate(zip(word, rep.angles)):
        print(f"factor {i} e={p.eigen} mult={p.multiplicity} angle={angle:.12f}")
    print(f"product {word.product()}")
    print(f"total {rep.total:.12f}")
    print(f"turns {rep.turns:.12f}")
    return 0


def cmd_canon(args) -> int:
    sys.stdout.write(serialize(canonical_form(_read_base(args.file, disk_only=True))))
    return 0


def cmd_corpus(args) -> int:
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise UsageError(f"cannot create {out}: {err.strerror}") from err
    index = []
    for i, sample in enumerate(corpus(args.seed, args.count)):
        name = f"{i:04d}-{sample.name}.base"
        _write(str(out / name), serialize(sample.base))
        index.append(f"{name}\t{format_result(sample.expected)}")
    _write(str(out / "index.tsv"), "\n".join(index) + "\n")
    print(f"wrote {args.count} bases to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="almost-toric", description="Almost toric base toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a base file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="print the diffeomorphism type of the total space")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("normalize", help="trade vertices and reduce every n_i to 0 or 1")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--trace")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("to-toric", help="turn a disk base into a Delzant fan")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_to_toric)

    s = sub.add_parser("move", help="apply one surgery")
    s.add_argument("file")
    s.add_argument("--op", required=True, choices=MOVE_OPS)
    s.add_argument("--index", required=True, type=int)
    s.add_argument("--t", type=_rational)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("render", help="draw a disk base as SVG")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("factor-check", help="turning angles of a word or of a disk base's corners")
    s.add_argument("file")
    s.add_argument("--v0", type=_vector, default=LatticeVector(1, 0))
    s.set_defaults(func=cmd_factor_check)

    s = sub.add_parser("canon", help="print the canonical form of a disk base")
    s.add_argument("file")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("corpus", help="write a seeded corpus of scrambled bases")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidBaseError as err:
        for msg in err.report.messages():
            print(msg, file=sys.stderr)
        return 1
    except (NormalizationError, RenderError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as err:
        # ValueError covers zero v0, bad slide values and similar argument problems
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
