"""Acceptance criteria 1-10, each at its stated tolerance and time limit.

Every criterion appends one pass/fail line that is printed in the terminal
summary. Criterion 7 contains one item (the f4-model k = 2 gap) that computes
the opposite way; it is kept as a strict expected failure so that the rest of
criterion 7 is still asserted separately.
"""

import json
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import pytest

from rank1_spherical import verify_cli as cli
from rank1_spherical.catalog.displays import (
    f4_n4_letters_image,
    f4_n4_normalizer_display,
    flat8,
    lambda_image,
    so4c_basis,
    so_derived_display,
    so_normalizer_display,
    sp_corner,
    sp_derived_lower_bound,
    sp_normalizer_upper_bound,
    su_derived_display,
    su_normalizer_display,
)
from rank1_spherical.catalog.normal_forms import NormalFormSpec, make_normal_form
from rank1_spherical.catalog.onishchik import AMBIENTS, TABLE, negative_controls
from rank1_spherical.catalog.tables import spot_cases, table_cases
from rank1_spherical.exact_linalg import Subspace, ortho_complement
from rank1_spherical.lie_ambient import F4, SO, SP, SU, construct_algebra, f4_element
from rank1_spherical.sphericity_core import Outcome, restrict_action, spherical, transitive_on_spheres
from rank1_spherical.subalgebra_toolkit import bracket_space, derived_space, normalizer_in

XIS = ((1, 0, 0), (0, 1, 0), (Fraction(3, 5), Fraction(4, 5), 0))


@contextmanager
def criterion(log, number, limit, label):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < limit
        status = "PASS" if ok and within else "FAIL"
        log.append(f"criterion {number}: {status} {label} ({dt:.1f}s, limit {limit}s)")
    assert within, f"criterion {number} took {dt:.1f}s > {limit}s"


def nf(alg, kind, params=(), xi=(), c=None):
    return make_normal_form(alg, NormalFormSpec(alg.family, kind, params, xi, c))


def outcome(case):
    if case.kind == "action":
        t = transitive_on_spheres(case.construct().action())
        return Outcome.SPHERICAL if t.verdict else Outcome.NOT_SPHERICAL
    cand = case.construct()
    return spherical(cand.algebra, cand).outcome


# 1 -------------------------------------------------------------------------


def test_criterion_1_structure_dims(criterion_log):
    fams = [SO(n) for n in range(3, 9)] + [SU(n) for n in range(1, 7)] + [SP(2), SP(3)]
    with criterion(criterion_log, 1, 5, "structure dims"):
        for fam in fams:
            n = fam.n
            alg = construct_algebra(fam)
            tag = fam.tag.value
            if tag == "so":
                want = ((n + 1) * n // 2, n, (n - 1) * (n - 2) // 2, n - 1, 0)
            elif tag == "su":
                want = ((n + 1) ** 2 - 1, 2 * n, (n - 1) ** 2, 2 * (n - 1), 1)
            else:
                want = ((n + 1) * (2 * n + 3), 4 * n, (n - 1) * (2 * n - 1) + 3, 4 * (n - 1), 3)
            got = tuple(alg[s].dim for s in ("g", "p", "m", "g_alpha", "g_2alpha"))
            assert got == want, fam.label
        f4 = construct_algebra(F4)
        assert (f4["m"].dim, f4["g_alpha"].dim, f4["g_2alpha"].dim) == (21, 8, 7)


# 2-4 -----------------------------------------------------------------------


def test_criterion_2_so_brackets(criterion_log):
    with criterion(criterion_log, 2, 5, "so(n,1) derived space and normalizer displays"):
        for n in range(3, 9):
            alg = construct_algebra(SO(n))
            for k in range(n + 1):
                q = nf(alg, "Q_K", (k,))
                assert derived_space(alg, q) == so_derived_display(alg, k)
                assert normalizer_in(alg, alg["k"], q) == so_normalizer_display(alg, k)


def test_criterion_3_su_brackets(criterion_log):
    with criterion(criterion_log, 3, 10, "su(n,1) derived space and normalizer displays"):
        for n in range(2, 7):
            alg = construct_algebra(SU(n))
            for k in range(n + 1):
                for l in range(n + 1 - k):
                    q = nf(alg, "Q_KL", (k, l))
                    assert derived_space(alg, q) == su_derived_display(alg, k, l)
                    assert normalizer_in(alg, alg["k"], q) == su_normalizer_display(alg, k, l)


def test_criterion_4_sp_bounds(criterion_log):
    with criterion(criterion_log, 4, 30, "sp(n,1) lower and upper bounds"):
        for n in (2, 3):
            alg = construct_algebra(SP(n))
            corner = sp_corner(alg)
            for k, l, m, p in product(range(n + 1), repeat=4):
                if k + l + m + p > n:
                    continue
                lb = sp_derived_lower_bound(alg, k, l, m, p)
                ub = sp_normalizer_upper_bound(alg, k, l, m, p)
                for xi in product(XIS, repeat=m):
                    q = nf(alg, "Q_KLMP_XI", (k, l, m, p), xi)
                    assert (derived_space(alg, q) + corner).contains(lb)
                    assert ub.contains(normalizer_in(alg, alg["k"], q))


# 5 -------------------------------------------------------------------------


def test_criterion_5_onishchik(criterion_log):
    with criterion(criterion_log, 5, 30, "transitive linear actions and negative controls"):
        count = 0
        for entry in TABLE:
            top = {"O": 16, "U": 8, "Sp": 4}[entry.ambient]
            for n in range(1, top + 1):
                if entry.applies(n):
                    for real in entry.realizations(n):
                        assert real.dim <= 16
                        assert transitive_on_spheres(real.action()).verdict, real.label
                        count += 1
        assert count >= 20 and set(AMBIENTS) >= {e.ambient for e in TABLE}
        for real, _ in negative_controls(16):
            act = real.action()
            t = transitive_on_spheres(act)
            assert not t.verdict, real.label
            assert act.rank_at(t.witness) == t.rank
            assert transitive_on_spheres(act).witness == t.witness


# 6 -------------------------------------------------------------------------

CAMPAIGNS = [("5.2", range(4, 10)), ("5.3", range(4, 10)), ("6.2", range(2, 7)), ("6.3", range(2, 7)),
             ("7.3", (2, 3)), ("7.4", (2, 3)), ("8.5", (None,)), ("8.1-facts", (None,))]


def test_criterion_6_positive_rows(criterion_log):
    with criterion(criterion_log, 6, 180, "table replay, positive rows"):
        checked = 0
        for tid, ns in CAMPAIGNS:
            for n in ns:
                for case in table_cases(tid, n):
                    if case.expected is Outcome.SPHERICAL:
                        assert outcome(case) is Outcome.SPHERICAL, case.case_id
                        checked += 1
        for tid, n, row in (("5.2", 16, "spin(9)+so(n-k,1)"), ("5.3", 18, "spin(9)+c_k+a+n_k")):
            cases = spot_cases(tid, n, (row,))
            assert cases
            for case in cases:
                assert outcome(case) is Outcome.SPHERICAL, case.case_id
        f4_rows = {(c.row, str(c.params.get("k", c.params.get("c")))) for c in table_cases("8.5")}
        for k in (0, 1, 4, 5, 6):
            assert any(p == str(k) for _, p in f4_rows)
        for c in ("0", "1", "2", "-1"):
            assert ("so(4)_c+a+n_c", c) in f4_rows
        assert checked > 500


# 7 -------------------------------------------------------------------------


def _stated_negatives():
    out = []
    for n in range(2, 7):
        out += [c for c in table_cases("6.2", n) if c.row == "s(b+so(n-k,1))"]
    for n in (2, 3):
        out += [c for c in table_cases("7.3", n) if c.row == "N_k(q_0n00)+q_0n00"]
    out += [c for c in table_cases("7.4", 3) if c.row.startswith("N_m(n_0l00)")]
    return out


def _f4_gaps():
    return [c for c in table_cases("8.5") if c.row == "N_m(n_k)+a+n_k"]


def test_criterion_7_classical_negatives(criterion_log):
    """The classical part of criterion 7, asserted on its own."""
    with criterion(criterion_log, "7-classical", 30, "su k>0, sp q_0n00 and l>1 negatives"):
        cases = _stated_negatives()
        assert len(cases) >= 15
        for case in cases:
            assert case.expected is Outcome.NOT_SPHERICAL and case.provenance == "PAPER"
            assert outcome(case) is Outcome.NOT_SPHERICAL, case.case_id
        k3 = [c for c in _f4_gaps() if c.params["k"] == 3]
        assert outcome(k3[0]) is Outcome.NOT_SPHERICAL


@pytest.mark.xfail(strict=True, reason="N_m(n_2) in the f4 model acts transitively on the 5-spheres of its complement")
def test_criterion_7_stated_negatives(criterion_log):
    with criterion(criterion_log, 7, 30, "table negatives incl. f4 k in {2,3}"):
        for case in _stated_negatives():
            assert outcome(case) is Outcome.NOT_SPHERICAL, case.case_id
        for case in _f4_gaps():
            cand = case.construct()
            alg = cand.algebra
            comp = ortho_complement(cand.split.n_H, alg["n_nil"], alg.gram_g)
            t = transitive_on_spheres(restrict_action(alg, cand.split.m_H, comp))
            assert not t.verdict, f"{case.case_id}: rank {t.rank} = {t.required} on the complement"


# 8 -------------------------------------------------------------------------


def test_criterion_8_f4_model(criterion_log):
    with criterion(criterion_log, 8, 10, "f4 model: lambda, N_m(n_4), so(4)_c, orbit rank"):
        alg = construct_algebra(F4)
        assert lambda_image(alg, alg["m"]).dim == 21
        n4 = nf(alg, "N_K", (4,))
        N4 = normalizer_in(alg, alg["m"], n4)
        assert N4.dim == 6 and N4 == f4_n4_normalizer_display(alg)
        units = [[int(a == b) for b in range(6)] for a in range(6)]
        letters = Subspace.span([flat8(f4_n4_letters_image(*u)) for u in units], 64)
        assert lambda_image(alg, N4) == letters
        for c in (0, 1, 2, -1):
            n_c = nf(alg, "N_C_F4", c=c)
            N = normalizer_in(alg, alg["m"], n_c)
            assert N.dim == 6
            assert lambda_image(alg, N) == Subspace.span([flat8(M) for M in so4c_basis(c)], 64)
            comp = ortho_complement(n_c, alg["n_nil"], alg.gram_g)
            act = restrict_action(alg, N, comp)
            w = comp.coords(f4_element(alg, x=[0, 0, 0, 1, -c, 0, 0, 0]))
            assert act.rank_at(w) == 3 == comp.dim - 1


# 9 -------------------------------------------------------------------------


def test_criterion_9_property_suites(criterion_log):
    with criterion(criterion_log, 9, 60, "property suites"):
        for fam in (SO(3), SU(1), SU(2), SU(3), SP(2)):
            alg = construct_algebra(fam)
            b = alg.bracket
            us = [alg.unit(i) for i in range(alg.dim)]
            for i in range(alg.dim):
                for j in range(i + 1, alg.dim):
                    bij = b(us[i], us[j])
                    for k in range(j + 1, alg.dim):
                        s = [x + y + z for x, y, z in zip(b(us[k], bij), b(us[i], b(us[j], us[k])),
                                                          b(us[j], b(us[k], us[i])))]
                        assert not any(s)
        import random

        rng = random.Random(7)
        for fam in (SO(6), SU(5), SP(3), F4):
            alg = construct_algebra(fam)
            for _ in range(10):
                x, y, z = ([Fraction(rng.randint(-3, 3)) for _ in range(alg.dim)] for _ in range(3))
                b = alg.bracket
                s = [p + q + r for p, q, r in zip(b(x, b(y, z)), b(y, b(z, x)), b(z, b(x, y)))]
                assert not any(s)
        for fam in (SO(4), SU(3), SP(2)):
            alg = construct_algebra(fam)
            k, p = alg["k"], alg["p"]
            assert k.contains(bracket_space(alg, k, k)) and p.contains(bracket_space(alg, k, p))
            assert k.contains(bracket_space(alg, p, p))
        for fam in (SU(2), SU(4), SP(2), SP(3), F4):
            alg = construct_algebra(fam)
            assert bracket_space(alg, alg["g_alpha"], alg["g_alpha"]) == alg["g_2alpha"]
        # every oracle call asserts dichotomy consistency and scaling invariance internally
        rep = cli.run_campaign("6.3", [4])
        assert rep.exit_code == cli.EXIT_OK
        for fam in (SO(4), SP(2), F4):
            alg = construct_algebra(fam)
            for S in (alg["m"], alg["n_nil"], alg["m"] + alg["a"]):
                A, B = S, alg["n_nil"] + alg["a"]
                assert (A + B).dim + (A & B).dim == A.dim + B.dim
                assert all(S.combine(S.coords(v)) == v for v in S.basis)
                text = json.dumps(cli.encode_candidate(alg, S), sort_keys=True)
                alg2, S2 = cli.parse_candidate(json.loads(text))
                assert S2 == S and json.dumps(cli.encode_candidate(alg2, S2), sort_keys=True) == text


# 10 ------------------------------------------------------------------------


def test_criterion_10_discrepancy_scan(criterion_log):
    with criterion(criterion_log, 10, 60, "discrepancy scan (non-asserting)"):
        rows = []
        for fam, n in (("so", 6), ("so", 8), ("su", 3), ("sp", 2)):
            rep = cli.explore(fam, n)
            assert rep.exit_code == cli.EXIT_OK
            rows += rep.results
        labels = {r.case_id.split("|")[2] for r in rows}
        assert {"su(3)+so(n-6,1)", "u(m)+so(n-k,1)", "su(3)+c_6+a+n_6", "u(m)+c_k+a+n_k"} <= labels
        for r in rows:
            assert r.status == cli.CANDIDATE and r.computed is not None
            if r.computed["outcome"] == "NotSpherical":
                assert r.computed["witness"] is not None
