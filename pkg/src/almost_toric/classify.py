"""Diffeomorphism type of the total space, torus-bundle equivalence, surgery matching."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .base import (
    DiskBase,
    FactorizationWord,
    NonDiskBase,
    Topology,
    euler_characteristic,
    require_valid,
)
from .lattice import LatticeVector, UnimodularMatrix, cross
from .normalize import minimal_model, to_toric

__all__ = [
    "CP2BlownUp",
    "S2xS2",
    "SphereBundleOverT2",
    "K3",
    "Enriques",
    "TorusBundleOverT2",
    "TorusBundleOverK",
    "ClassificationResult",
    "classify",
    "blow_up",
    "hirzebruch_parameter",
    "TorusBundleRelation",
    "torus_bundle_equivalent",
    "SurgerySpec",
    "SurgeryReport",
    "surgery_compatible",
]


@dataclass(frozen=True)
class CP2BlownUp:
    n: int = 0


@dataclass(frozen=True)
class S2xS2:
    pass


@dataclass(frozen=True)
class SphereBundleOverT2:
    twisted: bool
    blowups: int = 0


@dataclass(frozen=True)
class K3:
    pass


@dataclass(frozen=True)
class Enriques:
    pass


@dataclass(frozen=True)
class TorusBundleOverT2:
    lam: int
    chern: tuple[int, int]


@dataclass(frozen=True)
class TorusBundleOverK:
    lam: int
    chern: tuple[int, int]


ClassificationResult = (
    CP2BlownUp | S2xS2 | SphereBundleOverT2 | K3 | Enriques | TorusBundleOverT2 | TorusBundleOverK
)


def blow_up(result: ClassificationResult, times: int = 1) -> ClassificationResult:
    """Type of the total space after ``times`` more blow-ups (rational and ruled cases only)."""
    if times == 0:
        return result
    if isinstance(result, CP2BlownUp):
        return CP2BlownUp(result.n + times)
    if isinstance(result, S2xS2):
        # S2 x S2 # CP2bar = CP2 # 2 CP2bar
        return CP2BlownUp(1 + times)
    if isinstance(result, SphereBundleOverT2):
        return SphereBundleOverT2(result.twisted, result.blowups + times)
    raise ValueError(f"{result} does not arise from a base that admits blow-ups here")


def hirzebruch_parameter(fan: DiskBase) -> int:
    """``|a|`` for a 4-edge Delzant fan equivalent to ``(1,0), (0,1), (-1,a), (0,-1)``."""
    require_valid(fan)
    if fan.k != 4 or not fan.is_delzant():
        raise ValueError("hirzebruch_parameter needs a 4-edge Delzant fan")
    u = fan.normals()
    for i in range(4):
        if u[(i + 1) % 4] + u[(i + 3) % 4] == LatticeVector(0, 0):
            # cross(u_i, u_{i+1}) = 1, so these columns form a det +1 basis
            to_std = UnimodularMatrix.from_columns(u[i], u[(i + 1) % 4]).inverse()
            image = to_std @ u[(i + 2) % 4]
            if image.x != -1:
                break
            return abs(image.y)
    raise ValueError(f"{fan.normals()} is not a Hirzebruch fan")


def _classify_disk(base: DiskBase) -> ClassificationResult:
    chi = euler_characteristic(base)
    fan, _ = to_toric(base)
    core, blowdowns = minimal_model(fan)
    if core.k == 4 and blowdowns == 0 and hirzebruch_parameter(core) % 2 == 0:
        return S2xS2()
    return CP2BlownUp(chi - 3)


def classify(base: DiskBase | NonDiskBase) -> ClassificationResult:
    require_valid(base)
    if isinstance(base, DiskBase):
        return _classify_disk(base)
    t = base.topology
    if t in (Topology.CYLINDER, Topology.MOEBIUS):
        return SphereBundleOverT2(base.lam % 2 == 1, base.nodes)
    if t is Topology.SPHERE:
        return K3()
    if t is Topology.RP2:
        return Enriques()
    if t is Topology.TORUS:
        return TorusBundleOverT2(base.lam, base.chern)
    return TorusBundleOverK(base.lam, base.chern)


class TorusBundleRelation(enum.Enum):
    EQUIVALENT_BUNDLES = "equivalent_bundles"
    EQUAL_DIFFEO_TYPE_B1_GE_3 = "equal_diffeo_type_b1_ge_3"
    DISTINCT = "distinct"


def _bundle_equivalent(a: tuple[int, int, int], b: tuple[int, int, int]) -> bool:
    lam, m, n = a
    lam2, m2, n2 = b
    if not any(lam2 == eps * lam and n2 == eps * n for eps in (1, -1)):
        return False
    g = gcd(lam, n)
    # m' - m in lam Z + n Z = g Z
    return (m2 - m) % g == 0 if g else m2 == m


def torus_bundle_equivalent(a: tuple[int, int, int], b: tuple[int, int, int]) -> TorusBundleRelation:
    """Compare torus bundles over the torus given as ``(lambda, m, n)``."""
    if _bundle_equivalent(a, b):
        return TorusBundleRelation.EQUIVALENT_BUNDLES
    if (a[0] == 0 or a[2] == 0) and (b[0] == 0 or b[2] == 0):
        return TorusBundleRelation.EQUAL_DIFFEO_TYPE_B1_GE_3
    return TorusBundleRelation.DISTINCT


@dataclass(frozen=True)
class SurgerySpec:
    word_a: FactorizationWord
    word_b: FactorizationWord
    v: LatticeVector

    def __post_init__(self) -> None:
        if self.v.is_zero():
            raise ValueError("surgery vector must be nonzero")


@dataclass(frozen=True)
class SurgeryReport:
    vector_match: bool
    sign_changes_a: int
    sign_changes_b: int

    @property
    def compatible(self) -> bool:
        return self.vector_match and self.sign_changes_a == self.sign_changes_b


def _prefix_images(word: FactorizationWord, v: LatticeVector) -> list[LatticeVector]:
    out = []
    w = v
    for p in word:
        w = p.apply(w)
        out.append(w)
    return out


def _sign_changes(values: list[int]) -> int:
    changes, last = 0, 0
    for x in values:
        if x == 0:
            continue
        s = 1 if x > 0 else -1
        if last and s != last:
            changes += 1
        last = s
    return changes


def surgery_compatible(spec: SurgerySpec) -> SurgeryReport:
    """Check that two node sequences can bound fiber-compatible collars.

    The images ``A_i ... A_1 v`` must end at the same vector for both words,
    and ``A_i ... A_1 v x v`` must change sign equally often (zeros skipped).
    """
    imgs_a = _prefix_images(spec.word_a, spec.v)
    imgs_b = _prefix_images(spec.word_b, spec.v)
    end_a = imgs_a[-1] if imgs_a else spec.v
    end_b = imgs_b[-1] if imgs_b else spec.v
    return SurgeryReport(
        vector_match=end_a == end_b,
        sign_changes_a=_sign_changes([cross(w, spec.v) for w in imgs_a]),
        sign_changes_b=_sign_changes([cross(w, spec.v) for w in imgs_b]),
    )

