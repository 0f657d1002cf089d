"""Turning angles of boundary tangents at nodes.

This is the only floating-point code in the package.  Angles come from
``atan2`` of the exact integers ``Av x v`` and ``Av . v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .base import FactorizationWord
from .lattice import LatticeVector, ParabolicMonodromy, cross, dot

__all__ = ["TurningReport", "node_turning_angle", "total_turning"]


@dataclass(frozen=True)
class TurningReport:
    angles: tuple[float, ...]
    total: float

    @property
    def turns(self) -> float:
        return self.total / (2 * math.pi)


def node_turning_angle(p: ParabolicMonodromy, v: LatticeVector) -> float:
    """Angle ``theta`` with ``tan theta = (Av x v) / (Av . v)``; never negative."""
    if v.is_zero():
        raise ValueError("turning angle of the zero vector")
    av = p.apply(v)
    return math.atan2(cross(av, v), dot(av, v))


def total_turning(word: FactorizationWord, v0: LatticeVector) -> TurningReport:
    """Sum of turning angles along a word, last factor first.

    Factors act right to left, as in the product ``A_1 A_2 ... A_k``, so
    ``v`` is pushed through ``A_k`` first; ``angles[i]`` is the
    contribution of ``word[i]``.  For a word multiplying to the identity
    the total is a multiple of ``2 pi``.
    """
    if v0.is_zero():
        raise ValueError("total turning from the zero vector")
    angles = [0.0] * len(word)
    v = v0
    for i in reversed(range(len(word))):
        angles[i] = node_turning_angle(word[i], v)
        v = word[i].apply(v)
    return TurningReport(tuple(angles), math.fsum(angles))
