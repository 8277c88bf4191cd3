from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rank1_spherical.catalog import embeddings as emb
from rank1_spherical.catalog.normal_forms import (
    Kind,
    NormalFormError,
    NormalFormSpec,
    complex_invariants,
    detect_klmp,
    expected_dim,
    make_normal_form,
    same_line,
    sp_quaternions,
    su_vector,
)
from rank1_spherical.catalog.onishchik import SP_EMPTY_NOTE, negative_controls, onishchik_entries
from rank1_spherical.catalog.tables import THEOREMS, table_cases
from rank1_spherical.exact_linalg import Subspace
from rank1_spherical.lie_ambient import F4, SO, SP, SU, construct_algebra
from rank1_spherical.sphericity_core import Outcome, spherical
from rank1_spherical.subalgebra_toolkit import ParabolicSplit, is_subalgebra


def nf(fam, kind, params=(), xi=(), c=None):
    return make_normal_form(construct_algebra(fam), NormalFormSpec(fam, kind, params, xi, c))


# ---------------------------------------------------------------------------
# normal forms


def test_normal_form_examples():
    assert nf(SO(5), "Q_K", (2,)).dim == 3
    assert nf(SU(4), "N_KL", (0, 2)).dim == 5
    assert nf(SP(2), "Q_KLMP_XI", (0, 0, 2, 0), ((1, 0, 0), (1, 0, 0))).dim == 4


def test_normal_form_validation():
    with pytest.raises(NormalFormError):
        NormalFormSpec(SO(4), "Q_K", (5,))
    with pytest.raises(NormalFormError):
        NormalFormSpec(SP(2), "Q_KLMP_XI", (0, 0, 1, 0), ((1, 1, 0),))
    with pytest.raises(NormalFormError):
        NormalFormSpec(SU(3), "Q_K", (1,))
    with pytest.raises(NormalFormError):
        NormalFormSpec(F4, "N_C_F4")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_su_grassmannian_bookkeeping(n):
    alg = construct_algebra(SU(n))
    for k in range(n + 1):
        for l in range(n + 1 - k):
            q = nf(SU(n), "Q_KL", (k, l))
            assert q.dim == expected_dim(NormalFormSpec(SU(n), "Q_KL", (k, l)))
            vecs = [su_vector(alg, b) for b in q.basis]
            assert complex_invariants(vecs, n) == (2 * (n - k - l) + l, n - k - l)


XIS = ((1, 0, 0), (0, 1, 0), (Fraction(3, 5), Fraction(4, 5), 0))


@pytest.mark.parametrize("n", [2, 3])
def test_sp_grassmannian_detector(n):
    alg = construct_algebra(SP(n))
    for k, l, m, p in product(range(n + 1), repeat=4):
        if k + l + m + p > n:
            continue
        for xi in product(XIS, repeat=m):
            spec = NormalFormSpec(SP(n), "Q_KLMP_XI", (k, l, m, p), xi)
            q = make_normal_form(alg, spec)
            assert q.dim == expected_dim(spec)
            got = detect_klmp([sp_quaternions(alg, b) for b in q.basis], n)
            assert got[:4] == (k, l, m, p)
            assert all(same_line(a, tuple(Fraction(t) for t in b)) for a, b in zip(got[4], xi))


pyth = st.sampled_from([(3, 4, 5), (5, 12, 13), (8, 15, 17), (1, 0, 1), (0, 1, 1)])


@settings(max_examples=20, deadline=None)
@given(pyth, st.sampled_from([0, 1, 2]), st.booleans())
def test_rational_xi_stays_rational(t, rot, flip):
    a, b, c = t
    xi = [Fraction(a, c), Fraction(b, c), Fraction(0)]
    xi = xi[rot:] + xi[:rot]
    if flip:
        xi = [-x for x in xi]
    q = nf(SP(2), "Q_KLMP_XI", (0, 0, 1, 0), (tuple(xi),))
    assert q.dim == 2 + 4
    assert all(isinstance(x, Fraction) for b in q.basis for x in b)


def test_f4_normal_forms():
    for k in range(8):
        assert nf(F4, "N_K", (k,)).dim == k + 7
    assert nf(F4, "N_C_F4", c=2).dim == 11


# ---------------------------------------------------------------------------
# embeddings


@pytest.mark.parametrize("name,args", [("su_in_so", (3,)), ("u_in_so", (2,)), ("sp_in_so", (2,)), ("su", (3,)),
                                       ("sp_in_su", (2,)), ("spin7_in_so8", ()), ("g2_in_so7", ()),
                                       ("spin9_in_so16", ()), ("so4c_in_f4model", (1,))])
def test_embedding_dims(name, args):
    mats, d, cx = emb.make_embedding(name, *args)
    assert len(mats) == emb.EXPECTED_DIMS[name](*args)
    assert emb.is_closed(mats, d, cx)


def test_spin9_gammas_anticommute():
    gammas = emb.spin9_gammas()
    emb.check_clifford(gammas, 16)
    assert len(gammas) == 9


def test_g2_is_stabilizer_of_e0():
    # dim 14 = 21 - 7: the kernel of X -> lambda(X) e0 inside so(7)
    alg = construct_algebra(F4)
    lam = alg.model.lam
    rows = [[lam(alg.unit(t)[:21])[r][7] for t in range(21)] for r in range(8)]
    from rank1_spherical.exact_linalg import kernel

    assert kernel(rows).dim == 14 == len(emb.g2_in_so7())


@pytest.mark.parametrize("l2,order", list(product(("0", "torus", "sp1"), ("sp1,l2", "l2,sp1"))))
def test_so4_families(l2, order):
    mats = emb.sp1_x_l2_in_so4(l2, order)
    assert len(mats) == 3 + {"0": 0, "torus": 1, "sp1": 3}[l2]
    assert emb.is_closed(mats, 4, False)


# ---------------------------------------------------------------------------
# Onishchik's table


def test_onishchik_examples():
    assert [e.label for e in onishchik_entries("O", 7)] == ["SO(n)", "G2"]
    assert onishchik_entries("Sp", 3) == []
    assert "does not contain" in SP_EMPTY_NOTE
    labels = [e.label for e in onishchik_entries("O", 4)]
    assert labels == ["SO(n)", "p(Sp(1)xL2)", "p(L2xSp(1))"]
    with pytest.raises(ValueError):
        onishchik_entries("G", 3)


def test_negative_controls_tagged():
    ctrls = negative_controls(8)
    assert {prov for _, prov in ctrls} <= {"PAPER", "DERIVED"}
    assert any(prov == "PAPER" for _, prov in ctrls)


# ---------------------------------------------------------------------------
# tables


def test_table_examples():
    rows = {(c.row, c.params.get("k")) for c in table_cases("5.2", 7)}
    assert ("g2+so(n-k,1)", 7) in rows
    assert any(c.row == "sp(1)+b_1+a+n_0100" for c in table_cases("7.4", 2))
    f4 = [c for c in table_cases("8.5") if c.row == "m'+a+n_1"]
    assert sorted(c.params["m'"] for c in f4) == ["0", "full", "torus"]


def test_table_ids():
    assert len(table_cases("8.4-facts")) == len(table_cases("8.1-facts"))
    with pytest.raises(ValueError):
        table_cases("9.1", 3)
    with pytest.raises(ValueError):
        table_cases("5.2")


@pytest.mark.parametrize("tid,n", [("5.2", 5), ("5.3", 6), ("6.2", 3), ("6.3", 4), ("7.3", 2), ("7.4", 3), ("8.5", None)])
def test_cases_are_well_formed(tid, n):
    ids = set()
    for case in table_cases(tid, n):
        assert case.case_id not in ids
        ids.add(case.case_id)
        assert case.provenance in ("PAPER", "DERIVED")
        if case.expected is Outcome.SPHERICAL:
            cand = case.construct()
            assert is_subalgebra(cand.algebra, cand.span)


@pytest.mark.parametrize("tid,n", [("5.3", 6), ("6.3", 4), ("7.4", 3), ("8.5", None)])
def test_root_space_containment_for_spherical_cases(tid, n):
    # spherical non-reductive cases with a complement of dim >= 2 contain g_2alpha
    for case in table_cases(tid, n):
        cand = case.construct()
        if not isinstance(cand.split, ParabolicSplit):
            continue
        v = spherical(cand.algebra, cand)
        if v.spherical and v.complement_dim >= 2:
            assert cand.split.n_H.contains(cand.algebra["g_2alpha"])
