from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rank1_spherical.exact_linalg import MatrixQ
from rank1_spherical.lie_ambient import (
    F4,
    SO,
    SP,
    SU,
    ClosureViolation,
    FamilyConstraintError,
    bracket,
    cm,
    cm_bracket,
    construct_algebra,
    expected_dims,
    invariant_gram,
    octonion_mul,
    phi_quaternion,
)
from rank1_spherical.subalgebra_toolkit import bracket_space

# dimensions of g, p, m, g_alpha, g_2alpha; computed by hand from
# so(n+1), su(n+1), sp(n+1) and the root-space counts
FROZEN = {
    SO(3): (6, 3, 1, 2, 0), SO(5): (15, 5, 6, 4, 0), SO(8): (36, 8, 21, 7, 0),
    SU(1): (3, 2, 0, 0, 1), SU(2): (8, 4, 1, 2, 1), SU(4): (24, 8, 9, 6, 1), SU(6): (48, 12, 25, 10, 1),
    SP(2): (21, 8, 6, 4, 3), SP(3): (36, 12, 13, 8, 3),
}


@pytest.mark.parametrize("fam", list(FROZEN), ids=lambda f: f.label)
def test_structure_dims(fam):
    alg = construct_algebra(fam)
    got = tuple(alg[s].dim for s in ("g", "p", "m", "g_alpha", "g_2alpha"))
    assert got == FROZEN[fam]


def test_f4_model_dims():
    alg = construct_algebra(F4)
    assert (alg.dim, alg["m"].dim, alg["g_alpha"].dim, alg["g_2alpha"].dim) == (37, 21, 8, 7)


@pytest.mark.parametrize("fam", [SO(3), SO(6), SU(3), SP(2)], ids=lambda f: f.label)
def test_expected_dims_agree(fam):
    alg = construct_algebra(fam)
    for name, d in expected_dims(fam).items():
        assert alg[name].dim == d


def test_family_ranges():
    for make, bad in ((SO, 2), (SU, 0), (SP, 1)):
        with pytest.raises(FamilyConstraintError):
            make(bad)


def _jacobi(alg, x, y, z):
    b = alg.bracket
    return all(sum(t) == 0 for t in zip(b(x, b(y, z)), b(y, b(z, x)), b(z, b(x, y))))


@pytest.mark.parametrize("fam", [SO(3), SU(1), SU(2), SU(3), SP(2)], ids=lambda f: f.label)
def test_jacobi_exhaustive(fam):
    alg = construct_algebra(fam)
    units = [alg.unit(i) for i in range(alg.dim)]
    for i, j, k in product(range(alg.dim), repeat=3):
        if i < j < k:
            assert _jacobi(alg, units[i], units[j], units[k])


coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@pytest.mark.parametrize("fam", [SO(6), SU(5), SP(3), F4], ids=lambda f: f.label)
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_jacobi_sampled(fam, data):
    alg = construct_algebra(fam)
    x, y, z = (tuple(data.draw(st.lists(coeff, min_size=alg.dim, max_size=alg.dim))) for _ in range(3))
    assert _jacobi(alg, x, y, z)


@pytest.mark.parametrize("fam", [SO(4), SU(3), SP(2)], ids=lambda f: f.label)
def test_bracket_is_matrix_commutator(fam):
    alg = construct_algebra(fam)
    for i in range(0, alg.dim, 3):
        for j in range(1, alg.dim, 4):
            x, y = alg.unit(i), alg.unit(j)
            assert alg.matrix(alg.bracket(x, y)) == cm_bracket(alg.matrix(x), alg.matrix(y))


@pytest.mark.parametrize("fam", [SO(3), SO(7), SU(1), SU(4), SP(2), SP(3)], ids=lambda f: f.label)
def test_cartan_relations(fam):
    alg = construct_algebra(fam)
    k, p, m, a = alg["k"], alg["p"], alg["m"], alg["a"]
    assert k.contains(bracket_space(alg, k, k))
    assert p.contains(bracket_space(alg, k, p))
    assert k.contains(bracket_space(alg, p, p))
    assert (k + p).dim == alg.dim and (k & p).dim == 0
    assert bracket_space(alg, m, a).dim == 0


@pytest.mark.parametrize("fam", [SU(2), SU(4), SP(2), SP(3), F4], ids=lambda f: f.label)
def test_root_space_bracket(fam):
    alg = construct_algebra(fam)
    ga, g2a = alg["g_alpha"], alg["g_2alpha"]
    assert bracket_space(alg, ga, ga) == g2a
    assert bracket_space(alg, ga, g2a).dim == 0


@pytest.mark.parametrize("fam", [SO(5), SU(3), SP(2), F4], ids=lambda f: f.label)
def test_root_eigenvalues(fam):
    alg = construct_algebra(fam)
    lam = alg.alpha_eigenvalue
    for name, t in (("g_alpha", lam), ("g_2alpha", 2 * lam), ("m", 0)):
        for v in alg[name].basis:
            assert alg.bracket(alg.a0, v) == tuple(t * x for x in v)


@pytest.mark.parametrize("fam", [SO(4), SU(3), SP(2)], ids=lambda f: f.label)
def test_gram_invariance(fam):
    alg = construct_algebra(fam)
    G = alg.gram_g
    assert G.is_symmetric()
    for s in alg["k"].basis[:3]:
        ad = alg.ad_matrix(s)
        GA = G @ ad
        assert GA.transpose().entries == tuple(tuple(-x for x in r) for r in GA.entries)


def test_invariant_gram_selectors():
    alg = construct_algebra(SU(3))
    assert invariant_gram(alg, "p").rows == alg["p"].dim
    with pytest.raises(ValueError):
        invariant_gram(construct_algebra(F4), "p")


def test_coords_rejects_non_member():
    alg = construct_algebra(SO(3))
    with pytest.raises(ClosureViolation):
        alg.coords_of_matrix(cm({(0, 0): 1}))


def test_element_wrapper():
    alg = construct_algebra(SU(2))
    x, y = alg.unit(0), alg.unit(1)
    assert bracket(alg, x, y) == alg.bracket(x, y)


oct_coeff = st.integers(-3, 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(oct_coeff, min_size=8, max_size=8), st.lists(oct_coeff, min_size=8, max_size=8))
def test_octonion_norm_multiplicative(x, y):
    n = lambda v: sum(Fraction(t) ** 2 for t in v)  # noqa: E731
    assert n(octonion_mul(x, y)) == n(x) * n(y)


def test_octonion_units_square_to_minus_one():
    for i in range(1, 8):
        e = [0] * 8
        e[i] = 1
        assert octonion_mul(e, e) == tuple(Fraction(-1 if t == 0 else 0) for t in range(8))


def test_phi_quaternion_is_multiplicative():
    # j * k = i on 1x1 quaternion matrices
    z = [[0]]
    one = [[1]]
    J = phi_quaternion(z, z, one, z)
    K = phi_quaternion(z, z, z, one)
    I = phi_quaternion(z, one, z, z)
    prod = tuple(tuple(sum((J[r][t] * K[t][c] for t in range(2)), J[0][0] * 0) for c in range(2)) for r in range(2))
    assert prod == I


def test_lambda_is_homomorphism():
    alg = construct_algebra(F4)
    lam = alg.model.lam
    for i, j in ((0, 6), (3, 11), (5, 20)):
        x, y = alg.unit(i)[:21], alg.unit(j)[:21]
        z = alg.bracket(alg.unit(i), alg.unit(j))[:21]
        X, Y = MatrixQ.of(lam(x)), MatrixQ.of(lam(y))
        comm = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip((X @ Y).entries, (Y @ X).entries))
        assert comm == tuple(tuple(Fraction(t) for t in r) for r in lam(z))
