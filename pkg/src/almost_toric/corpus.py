"""Seeded corpus of scrambled disk bases with known total spaces."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .base import DiskBase, Edge, FactorizationWord, Node, oriented_eigen, transform
from .classify import CP2BlownUp, S2xS2, ClassificationResult, blow_up
from .lattice import LatticeVector, ParabolicMonodromy, UnimodularMatrix
from .moves import MoveError, MoveRecord, at_blowup, branch_move, nodal_trade

__all__ = [
    "cp2_triangle",
    "square_fan",
    "f1_fan",
    "delzant_pentagon",
    "e1_word",
    "e1_disk",
    "GENERATORS",
    "Sample",
    "scramble",
    "corpus",
]

V = LatticeVector


def cp2_triangle() -> DiskBase:
    return DiskBase.from_normals([V(1, 0), V(0, 1), V(-1, -1)])


def square_fan() -> DiskBase:
    return DiskBase.from_normals([V(1, 0), V(0, 1), V(-1, 0), V(0, -1)])


def f1_fan() -> DiskBase:
    return DiskBase.from_normals([V(1, 0), V(0, 1), V(-1, 1), V(0, -1)])


def delzant_pentagon() -> DiskBase:
    return DiskBase.from_normals([V(1, 0), V(1, 1), V(0, 1), V(-1, 0), V(0, -1)])


def e1_word() -> FactorizationWord:
    """``(A_(0,1) A_(1,0))^6``, whose product is the identity."""
    return FactorizationWord(tuple(
        ParabolicMonodromy(V(0, 1) if i % 2 == 0 else V(1, 0)) for i in range(12)
    ))


def e1_disk() -> DiskBase:
    """Twelve nodes, no vertices, trivial boundary monodromy.

    The normals come from ``u_{i-1} = A_i u_i`` starting at ``u_11 = (1,1)``.
    """
    word = e1_word()
    normals = [V(0, 0)] * 12
    normals[11] = V(1, 1)
    for i in range(11, 0, -1):
        normals[i - 1] = word[i].apply(normals[i])
    corners = [Node(oriented_eigen(normals[i], word[i].eigen)) for i in range(12)]
    return DiskBase([Edge(u) for u in normals], corners)


GENERATORS: dict[str, tuple] = {
    "triangle": (cp2_triangle, CP2BlownUp(0)),
    "square": (square_fan, S2xS2()),
    "f1": (f1_fan, CP2BlownUp(1)),
    "pentagon": (delzant_pentagon, CP2BlownUp(2)),
    "e1": (e1_disk, CP2BlownUp(9)),
}


@dataclass(frozen=True)
class Sample:
    name: str
    base: DiskBase
    expected: ClassificationResult
    blowups: int
    steps: tuple[MoveRecord, ...]


def _random_sl2(rng: random.Random, steps: int = 4) -> UnimodularMatrix:
    gens = [UnimodularMatrix(1, 1, 0, 1), UnimodularMatrix(1, 0, 1, 1), UnimodularMatrix(0, -1, 1, 0)]
    m = UnimodularMatrix.identity()
    for _ in range(steps):
        g = rng.choice(gens)
        m = m @ (g if rng.random() < 0.5 else g.inverse())
    return m


def scramble(rng: random.Random, name: str, max_blowups: int = 5, max_branch: int = 30) -> Sample:
    """Blow up, trade every vertex, then apply random branch moves."""
    make, result = GENERATORS[name]
    base = transform(make(), _random_sl2(rng))
    steps: list[MoveRecord] = []
    blowups = rng.randint(0, max_blowups)
    for _ in range(blowups):
        t = Fraction(rng.randint(1, 3), 4)
        base, rec = at_blowup(base, rng.randrange(base.k), t)
        steps.append(rec)
    for i in base.vertex_indices():
        base, rec = nodal_trade(base, i, "vertex_to_node")
        steps.append(rec)
    for _ in range(rng.randint(0, max_branch)):
        j = rng.randrange(base.k)
        direction = rng.choice(("forward", "backward"))
        try:
            base, rec = branch_move(base, j, direction)
        except MoveError:
            continue
        steps.append(rec)
    return Sample(name, base, blow_up(result, blowups), blowups, tuple(steps))


def corpus(seed: int, count: int) -> list[Sample]:
    rng = random.Random(seed)
    names = sorted(GENERATORS)
    return [scramble(rng, names[i % len(names)]) for i in range(count)]
