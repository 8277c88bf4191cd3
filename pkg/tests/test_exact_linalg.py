from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rank1_spherical.exact_linalg import (
    DimensionMismatch,
    GaussianScalar,
    MatrixQ,
    NotASubspace,
    Subspace,
    annihilator,
    kernel,
    linear_dependencies,
    ortho_complement,
    rank,
    rref,
    subspace_ops,
    vectors_rank,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def vectors(d, count):
    return st.lists(st.lists(small, min_size=d, max_size=d), min_size=0, max_size=count)


def test_gaussian_arithmetic():
    z = GaussianScalar(Fraction(1), Fraction(2))
    w = GaussianScalar(Fraction(3), Fraction(-1))
    assert z * w == GaussianScalar(Fraction(5), Fraction(5))
    assert z.conj() == GaussianScalar(Fraction(1), Fraction(-2))
    assert z - z == GaussianScalar()
    assert not GaussianScalar()


def test_rank_examples():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0]]) == 0


def test_rref_is_canonical():
    R = rref([[2, 4, 6], [1, 1, 1]])
    assert R.entries[0] == (1, 0, -1)
    assert R.entries[1] == (0, 1, 2)


def test_kernel_example():
    K = kernel([[1, 1, 1]])
    assert K.dim == 2
    for b in K.basis:
        assert sum(b) == 0


def test_matmul_shape_check():
    with pytest.raises(DimensionMismatch):
        MatrixQ.of([[1, 2]]) @ MatrixQ.of([[1, 2]])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    M = MatrixQ.of(rows)
    K = kernel(M)
    assert rank(M) + K.dim == M.cols
    for b in K.basis:
        assert not any(M.apply(b))


@settings(max_examples=40, deadline=None)
@given(vectors(4, 4), vectors(4, 4))
def test_subspace_calculus(a, b):
    A = Subspace.span(a, 4) if a else Subspace.zero(4)
    B = Subspace.span(b, 4) if b else Subspace.zero(4)
    ops = subspace_ops(A, B)
    assert ops.sum.dim + ops.intersection.dim == A.dim + B.dim
    assert ops.sum.contains(A) and ops.sum.contains(B)
    assert A.contains(ops.intersection) and B.contains(ops.intersection)
    assert annihilator(annihilator(A)) == A
    for v in A.basis:
        assert A.combine(A.coords(v)) == v


@settings(max_examples=40, deadline=None)
@given(vectors(5, 4))
def test_span_is_canonical(vs):
    S = Subspace.span(vs, 5) if vs else Subspace.zero(5)
    assert Subspace.span(list(reversed(S.basis)) + list(S.basis), 5) == S
    assert S.dim == vectors_rank(vs)


@settings(max_examples=40, deadline=None)
@given(vectors(3, 5))
def test_linear_dependencies(vs):
    deps = linear_dependencies(vs, 3)
    assert len(deps) == len(vs) - vectors_rank(vs)
    for c in deps:
        assert all(sum(ci * v[j] for ci, v in zip(c, vs)) == 0 for j in range(3))


def test_ortho_complement():
    full = Subspace.full(3)
    S = Subspace.span([[1, 1, 0]], 3)
    C = ortho_complement(S, full, MatrixQ.identity(3))
    assert C.dim == 2 and C.contains_vector((1, -1, 0)) and C.contains_vector((0, 0, 1))
    with pytest.raises(NotASubspace):
        ortho_complement(full, S, MatrixQ.identity(3))


def test_coords_rejects_outside_vector():
    S = Subspace.span([[1, 0, 0]], 3)
    with pytest.raises(NotASubspace):
        S.coords((0, 1, 0))
