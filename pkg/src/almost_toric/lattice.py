"""Exact integer linear algebra on the plane lattice.

Everything here works on Python ints, so entries may grow without bound
under repeated moves.  Nodal monodromy is carried as a primitive
eigenvector plus a multiplicity rather than as a raw matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

__all__ = [
    "LatticeError",
    "NotPrimitiveError",
    "IdentityMonodromyError",
    "NotParabolicError",
    "OrientationReversingError",
    "LatticeVector",
    "UnimodularMatrix",
    "ParabolicMonodromy",
    "cross",
    "dot",
    "parabolic_from_eigen",
    "parabolic_from_matrix",
    "apply_parabolic",
    "affine_from_topological",
    "basis_completion",
]


class LatticeError(ValueError):
    pass


class NotPrimitiveError(LatticeError):
    pass


class IdentityMonodromyError(LatticeError):
    pass


class NotParabolicError(LatticeError):
    pass


class OrientationReversingError(LatticeError):
    pass


@dataclass(frozen=True, slots=True)
class LatticeVector:
    x: int
    y: int

    def __add__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.x - other.x, self.y - other.y)

    def __neg__(self) -> LatticeVector:
        return LatticeVector(-self.x, -self.y)

    def __rmul__(self, k: int) -> LatticeVector:
        return LatticeVector(k * self.x, k * self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_primitive(self) -> bool:
        return gcd(self.x, self.y) == 1

    def cross(self, other: LatticeVector) -> int:
        return self.x * other.y - self.y * other.x

    def dot(self, other: LatticeVector) -> int:
        return self.x * other.x + self.y * other.y

    def sign_normalized(self) -> LatticeVector:
        """Representative of ``{v, -v}`` with ``y > 0``, or ``y == 0`` and ``x > 0``."""
        if self.y < 0 or (self.y == 0 and self.x < 0):
            return -self
        return self

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def cross(v: LatticeVector, w: LatticeVector) -> int:
    return v.x * w.y - v.y * w.x


def dot(v: LatticeVector, w: LatticeVector) -> int:
    return v.x * w.x + v.y * w.y


@dataclass(frozen=True, slots=True)
class UnimodularMatrix:
    """Row-major integer 2x2 matrix ``[[a, b], [c, d]]`` with determinant +-1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise LatticeError(f"determinant of {self.rows()} is not +-1")

    @classmethod
    def identity(cls) -> UnimodularMatrix:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_columns(cls, v: LatticeVector, w: LatticeVector) -> UnimodularMatrix:
        return cls(v.x, w.x, v.y, w.y)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def __matmul__(self, other):
        if isinstance(other, LatticeVector):
            return LatticeVector(self.a * other.x + self.b * other.y,
                                 self.c * other.x + self.d * other.y)
        if isinstance(other, UnimodularMatrix):
            return UnimodularMatrix(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return NotImplemented

    def inverse(self) -> UnimodularMatrix:
        s = self.det
        return UnimodularMatrix(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def transpose(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.a, self.c, self.b, self.d)

    def __pow__(self, k: int) -> UnimodularMatrix:
        base = self if k >= 0 else self.inverse()
        result = UnimodularMatrix.identity()
        k = abs(k)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


@dataclass(frozen=True, slots=True)
class ParabolicMonodromy:
    """The monodromy ``A_(a,b)^m`` of a node with eigenvector ``(a, b)`` and multiplicity ``m``.

    The eigenvector is stored sign-normalized, since ``A_(a,b) = A_(-a,-b)``.
    """

    eigen: LatticeVector
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if self.eigen.is_zero():
            raise NotPrimitiveError("eigenvector is zero")
        if not self.eigen.is_primitive():
            raise NotPrimitiveError(f"eigenvector {self.eigen} is not primitive")
        if self.multiplicity < 1:
            raise LatticeError(f"multiplicity must be positive, got {self.multiplicity}")
        object.__setattr__(self, "eigen", self.eigen.sign_normalized())

    def to_matrix(self) -> UnimodularMatrix:
        a, b, m = self.eigen.x, self.eigen.y, self.multiplicity
        return UnimodularMatrix(1 - m * a * b, m * a * a, -m * b * b, 1 + m * a * b)

    def apply(self, v: LatticeVector) -> LatticeVector:
        return apply_parabolic(self, v)

    def apply_inverse(self, v: LatticeVector) -> LatticeVector:
        return v + (self.multiplicity * v.cross(self.eigen)) * self.eigen

    def conjugate(self, u: UnimodularMatrix) -> ParabolicMonodromy:
        """The monodromy ``U A U^-1`` (requires ``det U = +1``)."""
        if u.det != 1:
            raise OrientationReversingError("conjugation by det -1 turns a node into an inverse node")
        return ParabolicMonodromy(u @ self.eigen, self.multiplicity)


def parabolic_from_eigen(a: int, b: int, mult: int = 1) -> ParabolicMonodromy:
    return ParabolicMonodromy(LatticeVector(a, b), mult)


def apply_parabolic(p: ParabolicMonodromy, v: LatticeVector) -> LatticeVector:
    # A^m v = v - m (v x e) e
    return v - (p.multiplicity * v.cross(p.eigen)) * p.eigen


def parabolic_from_matrix(m: UnimodularMatrix) -> ParabolicMonodromy:
    """Recover eigenvector and multiplicity from a node monodromy matrix.

    Raises
    ------
    OrientationReversingError
        ``det m == -1``.
    IdentityMonodromyError
        ``m`` is the identity.
    NotParabolicError
        ``m`` has trace other than 2, or is conjugate to a negative power
        of ``[[1, 1], [0, 1]]``.
    """
    if m.det != 1:
        raise OrientationReversingError(f"{m} has determinant -1")
    if m.is_identity():
        raise IdentityMonodromyError("identity is not a single-node monodromy")
    if m.trace != 2:
        raise NotParabolicError(f"{m} has trace {m.trace}, not 2")
    # m - I = mult * [[-ab, a^2], [-b^2, ab]]
    na, nb, nc = m.a - 1, m.b, m.c
    if nb < 0 or nc > 0:
        raise NotParabolicError(f"{m} is an inverse node monodromy")
    mult = gcd(nb, nc)
    a2, b2 = nb // mult, -nc // mult
    a, b = isqrt(a2), isqrt(b2)
    if a * a != a2 or b * b != b2:
        raise NotParabolicError(f"{m} is not a power of a nodal monodromy")
    if b == 0:
        a = 1
    elif -na // mult < 0:
        a = -a
    p = ParabolicMonodromy(LatticeVector(a, b), mult)
    if p.to_matrix() != m:
        raise NotParabolicError(f"{m} is not a power of a nodal monodromy")
    return p


def affine_from_topological(m: UnimodularMatrix) -> UnimodularMatrix:
    return m.inverse().transpose()


def basis_completion(v: LatticeVector) -> UnimodularMatrix:
    """A det +1 matrix whose first column is the primitive vector ``v``."""
    if not v.is_primitive():
        raise NotPrimitiveError(f"{v} is not primitive")
    # extended Euclid: p*x + q*y = g
    old_r, r = v.x, v.y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    p, q = old_s, old_t
    if old_r < 0:
        p, q = -p, -q
    # columns v and w with v.x*w.y - v.y*w.x = 1, take w = (-q, p)
    return UnimodularMatrix.from_columns(v, LatticeVector(-q, p))
