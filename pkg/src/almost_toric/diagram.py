"""Line-oriented text format for bases, factorization words and move logs.

::

    base disk
    edge u=(1,0) len=3/2
    corner node e=(2,1) mult=1 t=1/2
    edge u=(0,1)
    corner vertex
    ...

Edges and corners alternate starting with an edge; the corner after the
last edge closes the cycle (it is corner 0, between the last edge and the
first).  Other headers::

    base sphere nodes=24
    base rp2 nodes=12
    base cylinder lambda=1 blowups=2      (or moebius)
    base torus lambda=2 chern=(1,0)       (or klein)
    word
    factor e=(1,0) mult=2
    moves
    maxn 2 1
    move T index=3 before=<hash> after=<hash>

``#`` starts a comment.  Serialization omits default values (``mult=1``,
``t=1/2``) and writes rationals reduced, as ``p/q`` with ``q > 0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .base import (
    HALF,
    DiskBase,
    Edge,
    FactorizationWord,
    Node,
    NonDiskBase,
    Topology,
    Vertex,
)
from .classify import (
    CP2BlownUp,
    Enriques,
    K3,
    S2xS2,
    SphereBundleOverT2,
    TorusBundleOverK,
    TorusBundleOverT2,
)
from .lattice import LatticeVector, ParabolicMonodromy
from .moves import OPS, Move, MoveRecord

__all__ = [
    "ParseError",
    "MoveLog",
    "parse",
    "serialize",
    "format_result",
    "parse_result",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class MoveLog:
    records: list[MoveRecord] = field(default_factory=list)
    max_n_history: list[int] = field(default_factory=list)


_TOKEN = re.compile(r"\s*(\w[\w/-]*)(?:=(\([^)]*\)|[^\s#]+))?|\s*(\S+)")
_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_RATIONAL = re.compile(r"-?\d+(/\d+)?$")
_INT = re.compile(r"-?\d+$")


@dataclass
class _Line:
    number: int
    head: str
    head_col: int
    words: list[tuple[str, int]]
    params: dict[str, tuple[str, int]]

    def error(self, message: str, col: int | None = None) -> ParseError:
        return ParseError(message, self.number, self.head_col if col is None else col)

    def check_keys(self, allowed: set[str]) -> None:
        for key, (_, col) in self.params.items():
            if key not in allowed:
                raise self.error(f"unexpected key {key!r}", col)

    def require(self, key: str) -> tuple[str, int]:
        if key not in self.params:
            raise self.error(f"missing {key}=")
        return self.params[key]

    def vector(self, key: str) -> LatticeVector:
        text, col = self.require(key)
        m = _PAIR.match(text)
        if not m:
            raise self.error(f"expected an integer pair (x,y) for {key}, got {text!r}", col)
        return LatticeVector(int(m.group(1)), int(m.group(2)))

    def integer(self, key: str, default: int | None = None) -> int:
        if key not in self.params and default is not None:
            return default
        text, col = self.require(key)
        if not _INT.match(text):
            raise self.error(f"expected an integer for {key}, got {text!r}", col)
        return int(text)

    def rational(self, key: str, default: Fraction | None = None) -> Fraction | None:
        if key not in self.params:
            return default
        text, col = self.params[key]
        if not _RATIONAL.match(text):
            raise self.error(f"expected a rational p/q for {key}, got {text!r}", col)
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise self.error(f"zero denominator in {key}", col) from None


def _lex(text: str) -> list[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        pos = 0
        tokens = []
        while pos < len(body):
            if body[pos:].strip() == "":
                break
            m = _TOKEN.match(body, pos)
            col = m.start() + len(m.group(0)) - len(m.group(0).lstrip()) + 1
            if m.group(3) is not None:
                raise ParseError(f"unexpected token {m.group(3)!r}", number, col)
            tokens.append((m.group(1), m.group(2), col))
            pos = m.end()
        head, head_value, head_col = tokens[0]
        if head_value is not None:
            raise ParseError(f"line must start with a keyword, got {head}=", number, head_col)
        words, params = [], {}
        for key, value, col in tokens[1:]:
            if value is None:
                words.append((key, col))
            elif key in params:
                raise ParseError(f"duplicate key {key!r}", number, col)
            else:
                params[key] = (value, col)
        lines.append(_Line(number, head, head_col, words, params))
    return lines


def _word(line: _Line, position: int, choices: tuple[str, ...]) -> str:
    if len(line.words) <= position:
        raise line.error(f"expected one of {', '.join(choices)}")
    word, col = line.words[position]
    if word not in choices:
        raise line.error(f"expected one of {', '.join(choices)}, got {word!r}", col)
    return word


def _primitive(line: _Line, key: str, what: str) -> LatticeVector:
    v = line.vector(key)
    if v.is_zero() or not v.is_primitive():
        raise line.error(f"{what} not primitive: {v}", line.params[key][1])
    return v


def _parse_disk(lines: list[_Line]) -> DiskBase:
    if not lines:
        raise ParseError("disk base has no edges")
    edges: list[Edge] = []
    corners: list = []
    for idx, line in enumerate(lines):
        expected = "edge" if idx % 2 == 0 else "corner"
        if line.head != expected:
            raise line.error(f"expected {expected!r} (edges and corners alternate), got {line.head!r}")
        if expected == "edge":
            line.check_keys({"u", "len"})
            if line.words:
                raise line.error("unexpected word", line.words[0][1])
            edges.append(Edge(line.vector("u"), line.rational("len")))
        else:
            kind = _word(line, 0, ("vertex", "node"))
            if len(line.words) > 1:
                raise line.error("unexpected word", line.words[1][1])
            if kind == "vertex":
                line.check_keys(set())
                corners.append(Vertex())
            else:
                line.check_keys({"e", "mult", "t"})
                e = _primitive(line, "e", "eigenvector")
                mult = line.integer("mult", 1)
                if mult < 1:
                    raise line.error("multiplicity must be positive", line.params["mult"][1])
                corners.append(Node(e, mult, line.rational("t", HALF)))
    if len(lines) % 2:
        raise lines[-1].error("a corner must follow the last edge to close the cycle")
    return DiskBase(edges, [corners[-1]] + corners[:-1])


def _parse_nondisk(header: _Line, rest: list[_Line], kind: str) -> NonDiskBase:
    if rest:
        raise rest[0].error(f"{kind} base takes no body lines")
    topo = Topology(kind)
    if topo in (Topology.SPHERE, Topology.RP2):
        header.check_keys({"nodes"})
        return NonDiskBase(topo, header.integer("nodes"))
    if topo in (Topology.CYLINDER, Topology.MOEBIUS):
        header.check_keys({"lambda", "blowups"})
        return NonDiskBase(topo, header.integer("blowups", 0), header.integer("lambda"))
    header.check_keys({"lambda", "chern"})
    c = header.vector("chern")
    return NonDiskBase(topo, 0, header.integer("lambda"), (c.x, c.y))


def _parse_word(header: _Line, rest: list[_Line]) -> FactorizationWord:
    header.check_keys(set())
    factors = []
    for line in rest:
        if line.head != "factor":
            raise line.error(f"expected 'factor', got {line.head!r}")
        line.check_keys({"e", "mult"})
        e = _primitive(line, "e", "eigenvector")
        mult = line.integer("mult", 1)
        if mult < 1:
            raise line.error("multiplicity must be positive", line.params["mult"][1])
        factors.append(ParabolicMonodromy(e, mult))
    return FactorizationWord(tuple(factors))


def _parse_moves(header: _Line, rest: list[_Line]) -> MoveLog:
    header.check_keys(set())
    log = MoveLog()
    for line in rest:
        if line.head == "maxn":
            for word, col in line.words:
                if not _INT.match(word):
                    raise line.error(f"expected an integer, got {word!r}", col)
                log.max_n_history.append(int(word))
            continue
        if line.head != "move":
            raise line.error(f"expected 'move', got {line.head!r}")
        op = _word(line, 0, OPS)
        line.check_keys({"index", "value", "before", "after"})
        move = Move(op, line.integer("index"), line.rational("value"))
        log.records.append(MoveRecord(move, line.require("before")[0], line.require("after")[0]))
    return log


def parse(text: str):
    """Parse a base, word or move log; semantic checks are left to validation."""
    lines = _lex(text)
    if not lines:
        raise ParseError("empty input")
    header, rest = lines[0], lines[1:]
    if header.head == "base":
        kind = _word(header, 0, ("disk",) + tuple(t.value for t in Topology))
        if len(header.words) > 1:
            raise header.error("unexpected word", header.words[1][1])
        if kind == "disk":
            header.check_keys(set())
            return _parse_disk(rest)
        return _parse_nondisk(header, rest, kind)
    if header.words:
        raise header.error("unexpected word", header.words[0][1])
    if header.head == "word":
        return _parse_word(header, rest)
    if header.head == "moves":
        return _parse_moves(header, rest)
    raise header.error(f"unknown header {header.head!r}; expected base, word or moves")


def _corner_line(c) -> str:
    if isinstance(c, Vertex):
        return "corner vertex"
    out = f"corner node e={c.eigen}"
    if c.multiplicity != 1:
        out += f" mult={c.multiplicity}"
    if c.slide != HALF:
        out += f" t={c.slide}"
    return out


def _edge_line(e: Edge) -> str:
    return f"edge u={e.normal}" + ("" if e.length is None else f" len={e.length}")


def serialize(obj) -> str:
    out: list[str] = []
    if isinstance(obj, DiskBase):
        out.append("base disk")
        for i, e in enumerate(obj.edges):
            out.append(_edge_line(e))
            out.append(_corner_line(obj.corner(i + 1)))
    elif isinstance(obj, NonDiskBase):
        t = obj.topology
        if t in (Topology.SPHERE, Topology.RP2):
            out.append(f"base {t.value} nodes={obj.nodes}")
        elif t in (Topology.CYLINDER, Topology.MOEBIUS):
            out.append(f"base {t.value} lambda={obj.lam} blowups={obj.nodes}")
        else:
            m, n = obj.chern if obj.chern is not None else (0, 0)
            out.append(f"base {t.value} lambda={obj.lam} chern=({m},{n})")
    elif isinstance(obj, FactorizationWord):
        out.append("word")
        for p in obj:
            out.append(f"factor e={p.eigen}" + ("" if p.multiplicity == 1 else f" mult={p.multiplicity}"))
    elif isinstance(obj, MoveLog):
        out.append("moves")
        if obj.max_n_history:
            out.append("maxn " + " ".join(str(n) for n in obj.max_n_history))
        for r in obj.records:
            value = "" if r.move.value is None else f" value={r.move.value}"
            out.append(f"move {r.move.op} index={r.move.index}{value} before={r.before_hash} after={r.after_hash}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(out) + "\n"


def format_result(result) -> str:
    """One-line text form of a classification result."""
    if isinstance(result, CP2BlownUp):
        return "CP2" if result.n == 0 else f"CP2 # {result.n} CP2bar"
    if isinstance(result, S2xS2):
        return "S2xS2"
    if isinstance(result, SphereBundleOverT2):
        core = "S2~xT2" if result.twisted else "S2xT2"
        return core if result.blowups == 0 else f"{core} # {result.blowups} CP2bar"
    if isinstance(result, K3):
        return "K3"
    if isinstance(result, Enriques):
        return "Enriques"
    if isinstance(result, TorusBundleOverT2):
        return f"T2-bundle lambda={result.lam} chern=({result.chern[0]},{result.chern[1]})"
    if isinstance(result, TorusBundleOverK):
        return f"T2-bundle-over-Klein lambda={result.lam} chern=({result.chern[0]},{result.chern[1]})"
    raise TypeError(f"not a classification result: {result!r}")


_RESULT_PATTERNS = [
    (re.compile(r"CP2$"), lambda m: CP2BlownUp(0)),
    (re.compile(r"CP2 # (\d+) CP2bar$"), lambda m: CP2BlownUp(int(m[1]))),
    (re.compile(r"S2xS2$"), lambda m: S2xS2()),
    (re.compile(r"S2(~?)xT2(?: # (\d+) CP2bar)?$"),
     lambda m: SphereBundleOverT2(m[1] == "~", int(m[2] or 0))),
    (re.compile(r"K3$"), lambda m: K3()),
    (re.compile(r"Enriques$"), lambda m: Enriques()),
    (re.compile(r"T2-bundle lambda=(-?\d+) chern=\((-?\d+),(-?\d+)\)$"),
     lambda m: TorusBundleOverT2(int(m[1]), (int(m[2]), int(m[3])))),
    (re.compile(r"T2-bundle-over-Klein lambda=(-?\d+) chern=\((-?\d+),(-?\d+)\)$"),
     lambda m: TorusBundleOverK(int(m[1]), (int(m[2]), int(m[3])))),
]


def parse_result(text: str):
    text = text.strip()
    for pattern, build in _RESULT_PATTERNS:
        m = pattern.match(text)
        if m:
            return build(m)
    raise ParseError(f"not a classification result: {text!r}")
