import pytest

from rank1_spherical.exact_linalg import Subspace
from rank1_spherical.lie_ambient import F4, SO, SP, SU, cm_conj_transpose, cm_scale, construct_algebra
from rank1_spherical.subalgebra_toolkit import (
    NotASubalgebra,
    NotInNormalPosition,
    ParabolicSplit,
    ReductiveSplit,
    bracket_space,
    candidate,
    centralizer_in,
    derived_space,
    is_subalgebra,
    lie_closure,
    normalizer_in,
    split_parabolic,
    split_reductive,
)


@pytest.mark.parametrize("fam", [SO(4), SU(3), SP(2)], ids=lambda f: f.label)
def test_distinguished_subalgebras(fam):
    alg = construct_algebra(fam)
    for name in ("g", "k", "m", "a", "n_nil"):
        assert is_subalgebra(alg, alg[name])
    assert not is_subalgebra(alg, alg["p"])


def test_closure_of_p_is_g():
    alg = construct_algebra(SU(2))
    assert lie_closure(alg, alg["p"]) == alg["g"]


def test_derived_of_abelian_is_zero():
    alg = construct_algebra(SO(5))
    assert derived_space(alg, alg["a"]).dim == 0
    assert derived_space(alg, alg["n_nil"]).dim == 0  # g_2alpha = 0 in so(n,1)


def test_normalizer_and_centralizer_of_a():
    alg = construct_algebra(SP(2))
    assert centralizer_in(alg, alg["k"], alg["a"]) == alg["m"]
    assert normalizer_in(alg, alg["g"], alg["n_nil"]) == alg["m"] + alg["a"] + alg["n_nil"]


def test_bracket_space_k_p():
    alg = construct_algebra(SO(4))
    assert bracket_space(alg, alg["k"], alg["p"]) == alg["p"]


def test_reductive_split():
    alg = construct_algebra(SO(4))
    s = split_reductive(alg, alg["k"])
    assert s.k_H == alg["k"] and s.p_H.dim == 0


def test_parabolic_split():
    alg = construct_algebra(SU(3))
    h = alg["m"] + alg["a"] + alg["n_nil"]
    s = split_parabolic(alg, h)
    assert (s.m_H, s.a_H, s.n_H) == (alg["m"], alg["a"], alg["n_nil"])


def test_candidate_detects_type():
    alg = construct_algebra(SO(5))
    assert isinstance(candidate(alg, alg["k"]).split, ReductiveSplit)
    assert isinstance(candidate(alg, alg["a"] + alg["n_nil"]).split, ParabolicSplit)


def test_candidate_errors():
    alg = construct_algebra(SO(4))
    with pytest.raises(NotASubalgebra):
        candidate(alg, alg["p"])
    # g_{-2alpha} of su(2,1) is an abelian line that is neither theta-stable nor parabolic
    su = construct_algebra(SU(2))
    X = su.matrix(su["g_2alpha"].basis[0])
    neg = su.coords_of_matrix(cm_scale(cm_conj_transpose(X), -1))
    with pytest.raises(NotInNormalPosition):
        candidate(su, Subspace.span([neg], su.dim))


def test_f4_model_is_parabolic_only():
    alg = construct_algebra(F4)
    c = candidate(alg, alg["m"] + alg["a"] + alg["n_nil"])
    assert isinstance(c.split, ParabolicSplit)
