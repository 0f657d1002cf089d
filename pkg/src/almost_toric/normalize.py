"""Reduce every ``n_i`` to 0 or 1, then turn the base into a Delzant fan."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .base import DiskBase, Node, require_valid
from .lattice import cross
from .moves import (
    MoveError,
    MoveRecord,
    at_blowdown,
    branch_move,
    nodal_trade,
    split_node,
    toric_blowdown,
    toric_blowup,
)

__all__ = [
    "NormalizationError",
    "NormalizationTrace",
    "reduce_n",
    "to_toric",
    "minimal_model",
    "MAX_MOVES",
]

log = logging.getLogger(__name__)

MAX_MOVES = 10**6


class NormalizationError(RuntimeError):
    pass


@dataclass
class NormalizationTrace:
    steps: list[MoveRecord] = field(default_factory=list)
    max_n_history: list[int] = field(default_factory=list)

    def extend(self, other: NormalizationTrace) -> None:
        self.steps.extend(other.steps)
        self.max_n_history.extend(other.max_n_history)


def _split_all(base: DiskBase, trace: NormalizationTrace) -> DiskBase:
    while True:
        multi = [i for i, c in enumerate(base.corners) if isinstance(c, Node) and c.multiplicity > 1]
        if not multi:
            return base
        base, rec = split_node(base, multi[0])
        trace.steps.append(rec)


def reduce_n(base: DiskBase) -> tuple[DiskBase, NormalizationTrace]:
    """Branch-move a vertex-free base until every ``n_i`` is 0 or 1.

    Each round takes the first corner ``c`` attaining ``N = max n_i >= 2``
    and the smallest offset ``d >= 1`` with ``|u_{c+d} x e_c| < N``; the
    moves ``T_c, T_{c+1}, ..., T_{c+d-1}`` carry that node to corner
    ``c+d``, where its ``n`` becomes that smaller value.  Multiple nodes are split first.
    """
    require_valid(base)
    if base.vertex_indices():
        raise NormalizationError("reduce_n needs a base without vertices; trade them first")
    trace = NormalizationTrace()
    base = _split_all(base, trace)
    k = base.k
    profile = sorted(base.n_values(), reverse=True)
    while True:
        ns = base.n_values()
        big = max(ns)
        trace.max_n_history.append(big)
        if big <= 1:
            return base, trace
        c = ns.index(big)
        e = base.corner(c).eigen
        offset = next((d for d in range(1, k) if abs(cross(base.normal(c + d), e)) < big), None)
        if offset is None:
            raise NormalizationError(
                f"no edge u with |u x e| < {big} for node {c}; base: {base}"
            )
        for step in range(offset):
            base, rec = branch_move(base, (c + step) % k, "forward")
            trace.steps.append(rec)
        if len(trace.steps) > MAX_MOVES:
            raise NormalizationError(f"gave up after {len(trace.steps)} moves; base: {base}")
        new_profile = sorted(base.n_values(), reverse=True)
        if not new_profile < profile:
            raise NormalizationError(f"n-profile did not decrease: {profile} -> {new_profile}")
        profile = new_profile
        log.debug("replaced n=%d, profile now %s", big, profile)


def to_toric(base: DiskBase) -> tuple[DiskBase, NormalizationTrace]:
    """Delzant fan with the same Euler characteristic and total space.

    Trade all vertices, reduce ``n``, untrade the ``n = 1`` nodes, blow down
    the ``n = 0`` nodes, then put each blow-up back as a toric blow-up at
    the vertex following the edge it came from.
    """
    require_valid(base)
    trace = NormalizationTrace()
    for i in base.vertex_indices():
        base, rec = nodal_trade(base, i, "vertex_to_node")
        trace.steps.append(rec)
    base, sub = reduce_n(base)
    trace.extend(sub)
    for i in range(base.k):
        if base.n(i) == 1:
            base, rec = nodal_trade(base, i, "node_to_vertex")
            trace.steps.append(rec)
    blown_on = []
    while True:
        zeros = [i for i, c in enumerate(base.corners) if isinstance(c, Node)]
        if not zeros:
            break
        i = zeros[0]
        blown_on.append(base.normal(i))
        base, rec = at_blowdown(base, i)
        trace.steps.append(rec)
    for u in blown_on:
        edge = base.normals().index(u)
        base, rec = toric_blowup(base, (edge + 1) % base.k)
        trace.steps.append(rec)
    if not base.is_delzant():
        raise NormalizationError(f"pipeline ended on a non-Delzant base: {base}")
    return base, trace


def minimal_model(base: DiskBase) -> tuple[DiskBase, int]:
    """Toric blow-downs, lowest edge first, until no (-1)-edge remains."""
    require_valid(base)
    if not base.is_delzant():
        raise NormalizationError("minimal_model needs a Delzant fan")
    count = 0
    while base.k > 3:
        for i in range(base.k):
            try:
                base, _ = toric_blowdown(base, i)
            except MoveError:
                continue
            count += 1
            break
        else:
            break
    return base, count

