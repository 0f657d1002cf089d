"""Disk bases as defining sets, non-disk bases as descriptors.

A disk base is a cyclic sequence of boundary edges (inward primitive
normals ``u_i``) and corners.  Corner ``i`` sits between edge ``i-1`` and
edge ``i``; it is either a smooth vertex or a node with eigenvector
``e_i`` and multiplicity ``m_i`` satisfying ``u_i - u_{i-1} = m_i n_i e_i``
with ``n_i = |u_i x e_i|``.  Indices are 0-based and taken mod ``k``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .lattice import (
    LatticeVector,
    ParabolicMonodromy,
    UnimodularMatrix,
    basis_completion,
    cross,
    dot,
)

__all__ = [
    "InvalidBaseError",
    "Vertex",
    "Node",
    "Corner",
    "Edge",
    "DiskBase",
    "Topology",
    "NonDiskBase",
    "FactorizationWord",
    "ValidationReport",
    "validate_disk",
    "validate_nondisk",
    "validate",
    "require_valid",
    "winding_turns",
    "boundary_monodromy",
    "euler_characteristic",
    "oriented_eigen",
    "canonical_form",
    "transform",
]

HALF = Fraction(1, 2)


class InvalidBaseError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.messages()))


@dataclass(frozen=True)
class Vertex:
    """A smooth toric corner."""


@dataclass(frozen=True)
class Node:
    eigen: LatticeVector
    multiplicity: int = 1
    slide: Fraction = HALF

    def __post_init__(self) -> None:
        object.__setattr__(self, "slide", Fraction(self.slide))

    def monodromy(self) -> ParabolicMonodromy:
        return ParabolicMonodromy(self.eigen, self.multiplicity)


Corner = Union[Vertex, Node]


@dataclass(frozen=True)
class Edge:
    normal: LatticeVector
    length: Fraction | None = None

    def __post_init__(self) -> None:
        if self.length is not None:
            object.__setattr__(self, "length", Fraction(self.length))


@dataclass(frozen=True)
class DiskBase:
    edges: tuple[Edge, ...]
    corners: tuple[Corner, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "corners", tuple(self.corners))
        if len(self.edges) != len(self.corners):
            raise ValueError(
                f"{len(self.edges)} edges but {len(self.corners)} corners; they must alternate"
            )

    @classmethod
    def from_normals(cls, normals, corners=None) -> DiskBase:
        """Build a base from ``(x, y)`` pairs; all corners are vertices unless given."""
        edges = tuple(Edge(v if isinstance(v, LatticeVector) else LatticeVector(*v)) for v in normals)
        if corners is None:
            corners = (Vertex(),) * len(edges)
        return cls(edges, tuple(corners))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def k(self) -> int:
        return len(self.edges)

    def normal(self, i: int) -> LatticeVector:
        return self.edges[i % self.k].normal

    def normals(self) -> list[LatticeVector]:
        return [e.normal for e in self.edges]

    def corner(self, i: int) -> Corner:
        return self.corners[i % self.k]

    def n(self, i: int) -> int:
        """``n_i``: 1 for a vertex, ``|u_i x e_i|`` for a node."""
        c = self.corner(i)
        if isinstance(c, Vertex):
            return 1
        return abs(cross(self.normal(i), c.eigen))

    def n_values(self) -> list[int]:
        return [self.n(i) for i in range(self.k)]

    def node_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.corners) if isinstance(c, Node)]

    def vertex_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.corners) if isinstance(c, Vertex)]

    def corner_monodromy(self, i: int) -> ParabolicMonodromy:
        """Monodromy ``A_i`` of corner ``i``, the one with ``A_i u_i = u_{i-1}``."""
        c = self.corner(i)
        if isinstance(c, Node):
            return c.monodromy()
        return ParabolicMonodromy(self.normal(i) - self.normal(i - 1), 1)

    def word(self) -> FactorizationWord:
        return FactorizationWord(tuple(self.corner_monodromy(i) for i in range(self.k)))

    def rotated(self, r: int) -> DiskBase:
        """Relabel so that old index ``r`` becomes index 0."""
        r %= max(self.k, 1)
        return DiskBase(self.edges[r:] + self.edges[:r], self.corners[r:] + self.corners[:r])

    def replace_corner(self, i: int, corner: Corner) -> DiskBase:
        i %= self.k
        return DiskBase(self.edges, self.corners[:i] + (corner,) + self.corners[i + 1:])

    def is_delzant(self) -> bool:
        return all(isinstance(c, Vertex) for c in self.corners) and all(
            cross(self.normal(i - 1), self.normal(i)) == 1 for i in range(self.k)
        )


class Topology(enum.Enum):
    CYLINDER = "cylinder"
    MOEBIUS = "moebius"
    SPHERE = "sphere"
    RP2 = "rp2"
    TORUS = "torus"
    KLEIN = "klein"


@dataclass(frozen=True)
class NonDiskBase:
    topology: Topology
    nodes: int = 0
    lam: int = 0
    chern: tuple[int, int] | None = None


@dataclass(frozen=True)
class FactorizationWord:
    factors: tuple[ParabolicMonodromy, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def product(self) -> UnimodularMatrix:
        result = UnimodularMatrix.identity()
        for p in self.factors:
            result = result @ p.to_matrix()
        return result

    def node_count(self) -> int:
        return sum(p.multiplicity for p in self.factors)


@dataclass
class ValidationReport:
    failures: list[tuple[int | None, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def add(self, index: int | None, message: str) -> None:
        self.failures.append((index, message))

    def messages(self) -> list[str]:
        return [m if i is None else f"{m} at index {i}" for i, m in self.failures]


def _half_plane(v: LatticeVector) -> int:
    return 0 if v.y > 0 or (v.y == 0 and v.x > 0) else 1


def _angle_less(v: LatticeVector, w: LatticeVector) -> bool:
    """Strict comparison of polar angles in ``[0, 2pi)``, exact."""
    hv, hw = _half_plane(v), _half_plane(w)
    if hv != hw:
        return hv < hw
    return cross(v, w) > 0


def winding_turns(normals: list[LatticeVector]) -> int | None:
    """Full turns made by a cyclic sequence of nonzero vectors.

    Returns ``None`` when some step rotates by an angle outside ``[0, pi)``
    or changes length along a ray.  Each remaining step contributes an angle in
    ``[0, pi)``, so the total is the number of steps that pass angle zero.
    """
    k = len(normals)
    wraps = 0
    for i in range(k):
        v, w = normals[i - 1], normals[i]
        c = cross(v, w)
        if c < 0 or (c == 0 and (dot(v, w) <= 0 or v != w)):
            return None
        if _angle_less(w, v):
            wraps += 1
    return wraps


def _cyclically_contiguous(flags: list[bool]) -> bool:
    # at most one False->True transition around the cycle
    k = len(flags)
    starts = sum(1 for i in range(k) if flags[i] and not flags[i - 1])
    return starts <= 1


def validate_disk(base: DiskBase) -> ValidationReport:
    report = ValidationReport()
    k = base.k
    if k == 0:
        report.add(None, "base has no edges")
        return report
    normals = base.normals()
    for i, edge in enumerate(base.edges):
        if edge.normal.is_zero() or not edge.normal.is_primitive():
            report.add(i, "normal not primitive")
        if edge.length is not None and edge.length <= 0:
            report.add(i, "edge length not positive")
    for i, c in enumerate(base.corners):
        if isinstance(c, Node):
            if c.eigen.is_zero() or not c.eigen.is_primitive():
                report.add(i, "eigenvector not primitive")
            if c.multiplicity < 1:
                report.add(i, "multiplicity not positive")
            if not (0 < c.slide <= 1):
                report.add(i, "slide parameter outside (0,1]")
    if not report.ok:
        return report

    for i, c in enumerate(base.corners):
        prev, cur = base.normal(i - 1), base.normal(i)
        if isinstance(c, Vertex):
            if cross(prev, cur) != 1:
                report.add(i, f"vertex requires u_(i-1) x u_i = 1, got {cross(prev, cur)}")
        else:
            s = cross(cur, c.eigen)
            if cur - prev != (c.multiplicity * s) * c.eigen:
                report.add(i, "u_i - u_(i-1) is not m_i n_i e_i")

    turns = winding_turns(normals)
    if turns is None:
        report.add(None, "normals do not rotate counterclockwise by steps in [0, pi)")
    elif turns != 1:
        report.add(None, f"normals wind {turns} times, expected exactly once")

    for value in set(normals):
        if not _cyclically_contiguous([v == value for v in normals]):
            report.add(normals.index(value), f"occurrences of normal {value} are not contiguous")
    return report


_NODE_COUNTS = {
    Topology.SPHERE: 24,
    Topology.RP2: 12,
    Topology.TORUS: 0,
    Topology.KLEIN: 0,
}


def validate_nondisk(base: NonDiskBase) -> ValidationReport:
    report = ValidationReport()
    t = base.topology
    if base.nodes < 0:
        report.add(None, "node count is negative")
    required = _NODE_COUNTS.get(t)
    if required is not None and base.nodes != required:
        report.add(None, f"{t.value} base must have {required} nodes, got {base.nodes}")
    closed_bundle = t in (Topology.TORUS, Topology.KLEIN)
    if closed_bundle and base.chern is None:
        report.add(None, f"{t.value} base needs a Chern class")
    if not closed_bundle and base.chern is not None:
        report.add(None, f"{t.value} base carries no Chern class")
    if t is Topology.KLEIN and base.chern is not None:
        m, n = base.chern
        if m % 2 or n != 0:
            report.add(None, f"Klein bottle base needs chern (m,0) with m even, got ({m},{n})")
    return report


def validate(base) -> ValidationReport:
    if isinstance(base, DiskBase):
        return validate_disk(base)
    return validate_nondisk(base)


def require_valid(base) -> None:
    report = validate(base)
    if not report.ok:
        raise InvalidBaseError(report)


def boundary_monodromy(base: DiskBase) -> UnimodularMatrix:
    require_valid(base)
    return base.word().product()


def euler_characteristic(base: DiskBase | NonDiskBase) -> int:
    require_valid(base)
    if isinstance(base, NonDiskBase):
        return base.nodes
    return sum(1 if isinstance(c, Vertex) else c.multiplicity for c in base.corners)


def oriented_eigen(u: LatticeVector, e: LatticeVector) -> LatticeVector:
    """Sign of ``e`` with ``u x e >= 0``; ``u`` itself when they are parallel."""
    c = cross(u, e)
    if c > 0:
        return e
    if c < 0:
        return -e
    return u


def transform(base: DiskBase, m: UnimodularMatrix) -> DiskBase:
    """Apply a det +1 map to every normal and eigenvector."""
    edges = tuple(Edge(m @ e.normal, e.length) for e in base.edges)
    corners = tuple(
        Node(m @ c.eigen, c.multiplicity, c.slide) if isinstance(c, Node) else c
        for c in base.corners
    )
    return DiskBase(edges, corners)


def _encode(base: DiskBase) -> tuple:
    out = []
    for e, c in zip(base.edges, base.corners):
        length = (0,) if e.length is None else (1, e.length)
        corner = (0,) if isinstance(c, Vertex) else (1, c.eigen.x, c.eigen.y, c.multiplicity, c.slide)
        out.append((e.normal.x, e.normal.y, length, corner))
    return tuple(out)


def _normalize_rotation(base: DiskBase) -> DiskBase:
    u0 = base.normal(0)
    m = basis_completion(u0).inverse()
    moved = [m @ v for v in base.normals()]
    # residual stabilizer of (1,0): shears (x, y) -> (x + s y, y); fix it on the
    # first normal off the x-axis, which has y > 0 by the rotation condition
    first = next((v for v in moved if v.y != 0), None)
    if first is not None:
        s = -(first.x // first.y)
        m = UnimodularMatrix(1, s, 0, 1) @ m
    out = transform(base, m)
    corners = tuple(
        Node(oriented_eigen(out.normal(i), c.eigen), c.multiplicity, c.slide) if isinstance(c, Node) else c
        for i, c in enumerate(out.corners)
    )
    return DiskBase(out.edges, corners)


def canonical_form(base: DiskBase) -> DiskBase:
    """Representative modulo cyclic relabeling and det +1 lattice maps.

    For each rotation, the first normal is sent to ``(1, 0)`` and the first
    normal not on that axis is sheared to ``(x, y)`` with ``0 <= x < y``;
    the lexicographically least encoding over rotations wins.
    """
    require_valid(base)
    candidates = (_normalize_rotation(base.rotated(r)) for r in range(base.k))
    return min(candidates, key=_encode)
