from __future__ import annotations

from math import gcd

import pytest
from hypothesis import given, strategies as st

from almost_toric.lattice import (
    IdentityMonodromyError,
    LatticeVector as V,
    NotParabolicError,
    NotPrimitiveError,
    OrientationReversingError,
    ParabolicMonodromy,
    UnimodularMatrix as M,
    affine_from_topological,
    apply_parabolic,
    basis_completion,
    cross,
    parabolic_from_eigen,
    parabolic_from_matrix,
)

from conftest import nonzero_vectors, primitive_vectors, vectors

SHEAR = M(1, 1, 0, 1)


def _partner(e: V) -> V:
    """Brute-force search for f with e x f = 1 (independent of basis_completion)."""
    for r in range(0, 120):
        for x in range(-r, r + 1):
            for y in (-r, r) if abs(x) != r else range(-r, r + 1):
                f = V(x, y)
                if e.x * f.y - e.y * f.x == 1:
                    return f
    raise AssertionError(f"no partner for {e}")


def _conjugated_shear(e: V) -> M:
    # in the basis (e, f) with e x f = 1 the node monodromy is [[1,1],[0,1]]
    u = M.from_columns(e, _partner(e))
    return u @ SHEAR @ u.inverse()


small_primitive = st.builds(V, st.integers(-9, 9), st.integers(-9, 9)).filter(lambda v: v.is_primitive())


def test_cross_of_basis_vectors():
    assert cross(V(1, 0), V(0, 1)) == 1
    assert cross(V(0, 1), V(1, 0)) == -1


@given(vectors, vectors)
def test_cross_antisymmetric(v, w):
    assert cross(v, w) == -cross(w, v)


@given(vectors, vectors, vectors)
def test_cross_bilinear(u, v, w):
    assert cross(u + v, w) == cross(u, w) + cross(v, w)


def test_primitive_and_sign_normalization():
    assert V(3, 2).is_primitive()
    assert not V(2, 0).is_primitive()
    assert not V(0, 0).is_primitive()
    assert V(-1, -2).sign_normalized() == V(1, 2)
    assert V(-1, 0).sign_normalized() == V(1, 0)
    assert V(3, -1).sign_normalized() == V(-3, 1)


def test_unimodular_rejects_other_determinants():
    with pytest.raises(ValueError):
        M(2, 0, 0, 1)


def test_explicit_matrix_entries():
    assert parabolic_from_eigen(1, 0).to_matrix() == M(1, 1, 0, 1)
    assert parabolic_from_eigen(0, 1).to_matrix() == M(1, 0, -1, 1)
    assert parabolic_from_eigen(1, 1).to_matrix() == M(0, 1, -1, 2)
    # sign of the eigenvector does not matter
    assert parabolic_from_eigen(-2, -1).to_matrix() == parabolic_from_eigen(2, 1).to_matrix()


@given(small_primitive)
def test_node_matrix_is_conjugate_of_shear(e):
    assert parabolic_from_eigen(e.x, e.y).to_matrix() == _conjugated_shear(e)


@given(small_primitive, st.integers(1, 6))
def test_multiplicity_is_matrix_power(e, m):
    single = parabolic_from_eigen(e.x, e.y).to_matrix()
    power = M.identity()
    for _ in range(m):
        power = power @ single
    assert parabolic_from_eigen(e.x, e.y, m).to_matrix() == power
    assert single ** m == power


@given(primitive_vectors, st.integers(1, 4), vectors)
def test_apply_matches_matrix_and_inverse(e, m, v):
    p = ParabolicMonodromy(e, m)
    assert apply_parabolic(p, v) == p.to_matrix() @ v
    assert p.apply_inverse(p.apply(v)) == v
    assert p.apply_inverse(v) == p.to_matrix().inverse() @ v


@given(primitive_vectors)
def test_eigenvector_is_fixed(e):
    p = ParabolicMonodromy(e)
    assert p.apply(e) == e
    assert p.to_matrix().trace == 2


@given(small_primitive, st.integers(1, 5))
def test_matrix_roundtrip(e, m):
    p = ParabolicMonodromy(e, m)
    assert parabolic_from_matrix(p.to_matrix()) == p


def test_from_matrix_errors():
    with pytest.raises(IdentityMonodromyError):
        parabolic_from_matrix(M.identity())
    with pytest.raises(NotParabolicError):
        parabolic_from_matrix(M(2, 1, 1, 1))
    with pytest.raises(NotParabolicError):
        parabolic_from_matrix(M(1, -1, 0, 1))  # inverse node
    with pytest.raises(OrientationReversingError):
        parabolic_from_matrix(M(0, 1, 1, 0))


def test_eigen_errors():
    with pytest.raises(NotPrimitiveError):
        parabolic_from_eigen(2, 0)
    with pytest.raises(NotPrimitiveError):
        parabolic_from_eigen(0, 0)
    with pytest.raises(ValueError):
        parabolic_from_eigen(1, 0, 0)


@given(small_primitive, st.sampled_from([M(1, 1, 0, 1), M(0, -1, 1, 0), M(2, 1, 1, 1), M(1, 0, -3, 1)]))
def test_conjugate_matches_matrix_conjugation(e, u):
    p = ParabolicMonodromy(e)
    assert p.conjugate(u).to_matrix() == u @ p.to_matrix() @ u.inverse()


def test_conjugate_rejects_orientation_reversal():
    with pytest.raises(OrientationReversingError):
        parabolic_from_eigen(1, 0).conjugate(M(0, 1, 1, 0))


def test_affine_topological_duality():
    top = parabolic_from_eigen(1, 0).to_matrix()
    aff = affine_from_topological(top)
    assert aff == M(1, 0, -1, 1)
    assert affine_from_topological(aff) == top


@given(small_primitive)
def test_affine_duality_is_involution(e):
    m = parabolic_from_eigen(e.x, e.y).to_matrix()
    assert affine_from_topological(affine_from_topological(m)) == m
    aff = affine_from_topological(m)
    # the affine monodromy fixes the covector (-e.y, e.x)
    assert aff @ V(-e.y, e.x) == V(-e.y, e.x)


@given(primitive_vectors)
def test_basis_completion(v):
    b = basis_completion(v)
    assert b.det == 1
    assert b @ V(1, 0) == v


def test_basis_completion_rejects_non_primitive():
    with pytest.raises(NotPrimitiveError):
        basis_completion(V(4, 6))


@given(nonzero_vectors)
def test_gcd_primitive_agree(v):
    assert v.is_primitive() == (gcd(v.x, v.y) == 1)
