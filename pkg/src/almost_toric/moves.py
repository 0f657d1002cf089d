"""Surgeries on disk bases and Hurwitz moves on factorization words.

Every surgery returns the new base together with a :class:`MoveRecord`
that replays deterministically on any base with the same state hash.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .base import (
    HALF,
    DiskBase,
    Edge,
    FactorizationWord,
    InvalidBaseError,
    Node,
    Vertex,
    oriented_eigen,
    require_valid,
    validate_disk,
)
from .lattice import ParabolicMonodromy, cross, parabolic_from_matrix

__all__ = [
    "MoveError",
    "Move",
    "MoveRecord",
    "OPS",
    "state_hash",
    "branch_move",
    "nodal_trade",
    "nodal_slide",
    "split_node",
    "at_blowup",
    "at_blowdown",
    "toric_blowup",
    "toric_blowdown",
    "hurwitz_move",
    "apply_move",
    "replay",
]

OPS = (
    "T", "Tinv", "trade", "untrade", "slide", "split",
    "blowup", "blowdown", "toric-blowup", "toric-blowdown",
    "hurwitz", "hurwitz-inv",
)


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    """One surgery: an op name from :data:`OPS`, an index, and an optional rational."""

    op: str
    index: int
    value: Fraction | None = None

    def __post_init__(self) -> None:
        if self.op not in OPS:
            raise MoveError(f"unknown move {self.op!r}")
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class MoveRecord:
    move: Move
    before_hash: str
    after_hash: str


def state_hash(obj: DiskBase | FactorizationWord) -> str:
    return hashlib.sha256(repr(obj).encode()).hexdigest()[:16]


def _record(move: Move, before, after) -> MoveRecord:
    return MoveRecord(move, state_hash(before), state_hash(after))


def _check_valid(base: DiskBase) -> None:
    try:
        require_valid(base)
    except InvalidBaseError as err:
        raise MoveError(f"base is invalid: {err}") from err


def _check_index(base: DiskBase, i: int, what: str = "corner") -> int:
    if not 0 <= i < base.k:
        raise MoveError(f"{what} index {i} out of range 0..{base.k - 1}")
    return i


def _conjugated_corner(corner, p: ParabolicMonodromy, inverse: bool, new_normal) -> Node | Vertex:
    if isinstance(corner, Vertex):
        return corner
    e = p.apply_inverse(corner.eigen) if inverse else p.apply(corner.eigen)
    return Node(oriented_eigen(new_normal, e), corner.multiplicity, corner.slide)


def branch_move(
    base: DiskBase, j: int, direction: Literal["forward", "backward"] = "forward"
) -> tuple[DiskBase, MoveRecord]:
    """Elementary branch move ``T_j`` or its inverse.

    Forward needs a node at corner ``j`` and sets ``u_j <- A_j u_{j+1}``; the
    corner pair ``(A_j, A_{j+1})`` becomes ``(A_j A_{j+1} A_j^-1, A_j)``.
    Backward needs a node at corner ``j+1`` and undoes a forward move.
    Slide parameters of the moved node are reset to 1/2.
    """
    _check_valid(base)
    _check_index(base, j)
    k = base.k
    j1 = (j + 1) % k
    edges = list(base.edges)
    corners = list(base.corners)
    if direction == "forward":
        mover = base.corner(j)
        if not isinstance(mover, Node):
            raise MoveError(f"corner {j} is a vertex; only nodes have branch curves")
        a = mover.monodromy()
        new_u = a.apply(base.normal(j1))
        corners[j] = _conjugated_corner(base.corner(j1), a, False, new_u)
        corners[j1] = Node(oriented_eigen(base.normal(j1), mover.eigen), mover.multiplicity, HALF)
        move = Move("T", j)
    elif direction == "backward":
        mover = base.corner(j1)
        if not isinstance(mover, Node):
            raise MoveError(f"corner {j1} is a vertex; only nodes have branch curves")
        a = mover.monodromy()
        new_u = a.apply_inverse(base.normal(j - 1))
        corners[j1] = _conjugated_corner(base.corner(j), a, True, base.normal(j1))
        corners[j] = Node(oriented_eigen(new_u, mover.eigen), mover.multiplicity, HALF)
        move = Move("Tinv", j)
    else:
        raise MoveError(f"direction must be 'forward' or 'backward', got {direction!r}")
    edges[j] = Edge(new_u, None)
    out = DiskBase(edges, corners)
    report = validate_disk(out)
    if not report.ok:
        raise MoveError(f"branch move {move.op} at {j} breaks the defining set: {report.messages()}")
    return out, _record(move, base, out)


def nodal_trade(
    base: DiskBase, i: int, direction: Literal["vertex_to_node", "node_to_vertex"] = "vertex_to_node"
) -> tuple[DiskBase, MoveRecord]:
    _check_valid(base)
    _check_index(base, i)
    c = base.corner(i)
    if direction == "vertex_to_node":
        if not isinstance(c, Vertex):
            raise MoveError(f"corner {i} is already a node")
        e = base.normal(i) - base.normal(i - 1)
        out = base.replace_corner(i, Node(e, 1, HALF))
        move = Move("trade", i)
    elif direction == "node_to_vertex":
        if not isinstance(c, Node):
            raise MoveError(f"corner {i} is already a vertex")
        if c.multiplicity != 1:
            raise MoveError(f"node {i} has multiplicity {c.multiplicity}; split it before trading")
        n = base.n(i)
        if n != 1:
            raise MoveError(f"n_{i} = {n}; sliding this node into the boundary creates an orbifold point")
        out = base.replace_corner(i, Vertex())
        move = Move("untrade", i)
    else:
        raise MoveError(f"unknown trade direction {direction!r}")
    return out, _record(move, base, out)


def nodal_slide(base: DiskBase, i: int, new_t) -> tuple[DiskBase, MoveRecord]:
    _check_valid(base)
    _check_index(base, i)
    c = base.corner(i)
    if not isinstance(c, Node):
        raise MoveError(f"corner {i} is a vertex and cannot slide")
    t = Fraction(new_t)
    if not 0 < t <= 1:
        raise MoveError(f"slide parameter {t} outside (0,1]")
    out = base.replace_corner(i, Node(c.eigen, c.multiplicity, t))
    return out, _record(Move("slide", i, t), base, out)


def split_node(base: DiskBase, i: int) -> tuple[DiskBase, MoveRecord]:
    """Slide one singular point off a multiplicity ``m >= 2`` node.

    Corner ``i`` becomes a simple node and a new corner with multiplicity
    ``m - 1`` follows it on the same eigenline, separated by a new edge of
    normal ``u_i - (m-1) n_i e_i``.  Boundary monodromy and Euler
    characteristic are unchanged.
    """
    _check_valid(base)
    _check_index(base, i)
    c = base.corner(i)
    if not isinstance(c, Node) or c.multiplicity < 2:
        raise MoveError(f"corner {i} is not a node of multiplicity >= 2")
    u = base.normal(i)
    e = oriented_eigen(u, c.eigen)
    s = cross(u, e)
    w = u - ((c.multiplicity - 1) * s) * e
    edges = list(base.edges)
    corners = list(base.corners)
    edges.insert(i, Edge(w))
    corners[i] = Node(e, 1, c.slide)
    corners.insert(i + 1, Node(e, c.multiplicity - 1, c.slide))
    out = DiskBase(edges, corners)
    return out, _record(Move("split", i), base, out)


def at_blowup(base: DiskBase, edge: int, t=HALF) -> tuple[DiskBase, MoveRecord]:
    """Almost toric blow-up on an edge.

    The edge is cut at fraction ``t`` into two edges with the same normal
    ``u``; the node inserted between them has eigenvector ``u`` and ``n = 0``.
    """
    _check_valid(base)
    _check_index(base, edge, "edge")
    t = Fraction(t)
    if not 0 < t < 1:
        raise MoveError(f"blow-up position {t} outside (0,1)")
    old = base.edges[edge]
    if old.length is None:
        first, second = Edge(old.normal), Edge(old.normal)
    else:
        first, second = Edge(old.normal, t * old.length), Edge(old.normal, (1 - t) * old.length)
    edges = list(base.edges)
    corners = list(base.corners)
    edges[edge:edge + 1] = [first, second]
    corners.insert(edge + 1, Node(old.normal, 1, HALF))
    out = DiskBase(edges, corners)
    return out, _record(Move("blowup", edge, t), base, out)


def at_blowdown(base: DiskBase, i: int) -> tuple[DiskBase, MoveRecord]:
    """Merge the two equal-normal edges around an ``n = 0`` simple node."""
    _check_valid(base)
    _check_index(base, i)
    c = base.corner(i)
    if not isinstance(c, Node):
        raise MoveError(f"corner {i} is a vertex, not a blown-up node")
    if c.multiplicity != 1:
        raise MoveError(f"node {i} has multiplicity {c.multiplicity}")
    if base.n(i) != 0:
        raise MoveError(f"n_{i} = {base.n(i)}; only n = 0 nodes blow down")
    k = base.k
    a, b = base.edges[i - 1], base.edges[i]
    length = None if a.length is None or b.length is None else a.length + b.length
    merged = Edge(a.normal, length)
    edges = list(base.edges)
    corners = list(base.corners)
    if i == 0:
        edges = [merged] + edges[1:k - 1]
        corners = [corners[k - 1]] + corners[1:k - 1]
    else:
        edges[i - 1] = merged
        del edges[i]
        del corners[i]
    out = DiskBase(edges, corners)
    return out, _record(Move("blowdown", i), base, out)


def toric_blowup(base: DiskBase, i: int) -> tuple[DiskBase, MoveRecord]:
    """Insert the normal ``u_{i-1} + u_i`` at vertex ``i``."""
    _check_valid(base)
    _check_index(base, i)
    if not isinstance(base.corner(i), Vertex):
        raise MoveError(f"corner {i} is not a vertex")
    w = base.normal(i - 1) + base.normal(i)
    edges = list(base.edges)
    corners = list(base.corners)
    edges.insert(i, Edge(w))
    corners[i:i + 1] = [Vertex(), Vertex()]
    out = DiskBase(edges, corners)
    return out, _record(Move("toric-blowup", i), base, out)


def toric_blowdown(base: DiskBase, i: int) -> tuple[DiskBase, MoveRecord]:
    """Remove edge ``i`` when it is flanked by vertices and ``u_{i-1} + u_{i+1} = u_i``."""
    _check_valid(base)
    _check_index(base, i, "edge")
    k = base.k
    if k <= 3:
        raise MoveError("a triangle has no removable edge")
    if not (isinstance(base.corner(i), Vertex) and isinstance(base.corner(i + 1), Vertex)):
        raise MoveError(f"edge {i} is not flanked by vertices")
    if base.normal(i - 1) + base.normal(i + 1) != base.normal(i):
        raise MoveError(f"edge {i} is not a (-1)-edge")
    edges = list(base.edges)
    corners = list(base.corners)
    if i == k - 1:
        edges = edges[:k - 1]
        corners = [Vertex()] + corners[1:k - 1]
    else:
        del edges[i]
        corners[i:i + 2] = [Vertex()]
    out = DiskBase(edges, corners)
    return out, _record(Move("toric-blowdown", i), base, out)


def hurwitz_move(
    word: FactorizationWord, j: int, direction: Literal["forward", "backward"] = "forward"
) -> tuple[FactorizationWord, MoveRecord]:
    """``(A_j, A_{j+1}) -> (A_j A_{j+1} A_j^-1, A_j)``, or the inverse move."""
    if not 0 <= j < len(word) - 1:
        raise MoveError(f"Hurwitz index {j} out of range 0..{len(word) - 2}")
    f = list(word.factors)
    a, b = f[j], f[j + 1]
    if direction == "forward":
        am = a.to_matrix()
        f[j] = parabolic_from_matrix(am @ b.to_matrix() @ am.inverse())
        f[j + 1] = a
        move = Move("hurwitz", j)
    elif direction == "backward":
        bm = b.to_matrix()
        f[j] = b
        f[j + 1] = parabolic_from_matrix(bm.inverse() @ a.to_matrix() @ bm)
        move = Move("hurwitz-inv", j)
    else:
        raise MoveError(f"direction must be 'forward' or 'backward', got {direction!r}")
    out = FactorizationWord(tuple(f))
    return out, _record(move, word, out)


def apply_move(obj, move: Move):
    """Dispatch a :class:`Move` on a base (or on a word, for Hurwitz moves)."""
    op, i = move.op, move.index
    if op == "T":
        return branch_move(obj, i, "forward")
    if op == "Tinv":
        return branch_move(obj, i, "backward")
    if op == "trade":
        return nodal_trade(obj, i, "vertex_to_node")
    if op == "untrade":
        return nodal_trade(obj, i, "node_to_vertex")
    if op == "slide":
        if move.value is None:
            raise MoveError("slide needs a parameter")
        return nodal_slide(obj, i, move.value)
    if op == "split":
        return split_node(obj, i)
    if op == "blowup":
        return at_blowup(obj, i, HALF if move.value is None else move.value)
    if op == "blowdown":
        return at_blowdown(obj, i)
    if op == "toric-blowup":
        return toric_blowup(obj, i)
    if op == "toric-blowdown":
        return toric_blowdown(obj, i)
    if op == "hurwitz":
        return hurwitz_move(obj, i, "forward")
    return hurwitz_move(obj, i, "backward")


def replay(record: MoveRecord, obj):
    if state_hash(obj) != record.before_hash:
        raise MoveError("state does not match the record's before-hash")
    out, again = apply_move(obj, record.move)
    if again.after_hash != record.after_hash:
        raise MoveError("replay diverged from the recorded after-hash")
    return out
