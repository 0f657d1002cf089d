"""Exact combinatorics of almost toric bases.

Disk bases are cyclic sequences of primitive inward normals with corner
data (vertices or nodes); the package validates them, applies base
surgeries, reduces them to Delzant fans and names the total space.
"""

from .base import (
    DiskBase,
    Edge,
    FactorizationWord,
    InvalidBaseError,
    Node,
    NonDiskBase,
    Topology,
    ValidationReport,
    Vertex,
    boundary_monodromy,
    canonical_form,
    euler_characteristic,
    require_valid,
    transform,
    validate,
)
from .classify import (
    CP2BlownUp,
    Enriques,
    K3,
    S2xS2,
    SphereBundleOverT2,
    SurgeryReport,
    SurgerySpec,
    TorusBundleOverK,
    TorusBundleOverT2,
    TorusBundleRelation,
    classify,
    hirzebruch_parameter,
    surgery_compatible,
    torus_bundle_equivalent,
)
from .diagram import ParseError, format_result, parse, parse_result, serialize
from .geometry import TurningReport, node_turning_angle, total_turning
from .lattice import (
    LatticeVector,
    ParabolicMonodromy,
    UnimodularMatrix,
    apply_parabolic,
    cross,
    dot,
    parabolic_from_eigen,
    parabolic_from_matrix,
)
from .moves import (
    Move,
    MoveError,
    MoveRecord,
    at_blowdown,
    at_blowup,
    branch_move,
    hurwitz_move,
    nodal_slide,
    nodal_trade,
    replay,
    split_node,
    toric_blowdown,
    toric_blowup,
)
from .normalize import minimal_model, reduce_n, to_toric
from .render import render_svg

__all__ = [
    "DiskBase",
    "Edge",
    "FactorizationWord",
    "InvalidBaseError",
    "Node",
    "NonDiskBase",
    "Topology",
    "ValidationReport",
    "Vertex",
    "boundary_monodromy",
    "canonical_form",
    "euler_characteristic",
    "require_valid",
    "transform",
    "validate",
    "CP2BlownUp",
    "Enriques",
    "K3",
    "S2xS2",
    "SphereBundleOverT2",
    "SurgeryReport",
    "SurgerySpec",
    "TorusBundleOverK",
    "TorusBundleOverT2",
    "TorusBundleRelation",
    "classify",
    "hirzebruch_parameter",
    "surgery_compatible",
    "torus_bundle_equivalent",
    "LatticeVector",
    "ParabolicMonodromy",
    "UnimodularMatrix",
    "apply_parabolic",
    "cross",
    "dot",
    "parabolic_from_eigen",
    "parabolic_from_matrix",
    "Move",
    "MoveError",
    "MoveRecord",
    "at_blowdown",
    "at_blowup",
    "branch_move",
    "hurwitz_move",
    "nodal_slide",
    "nodal_trade",
    "replay",
    "split_node",
    "toric_blowdown",
    "toric_blowup",
    "ParseError",
    "format_result",
    "parse",
    "parse_result",
    "serialize",
    "TurningReport",
    "node_turning_angle",
    "total_turning",
    "minimal_model",
    "reduce_n",
    "to_toric",
    "render_svg",
]
__version__ = "0.1.0"
