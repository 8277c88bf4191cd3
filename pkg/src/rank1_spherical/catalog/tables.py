"""The classification tables as instantiated test cases.

Every row becomes one or more :class:`TableCase` objects: free factors are
sampled at three representatives (zero, a line, everything allowed), and each
table is followed by its negative controls. Rows whose verdict we do not
assert (suspected table inaccuracies) carry ``expected=None`` and the status
DISCREPANCY-CANDIDATE.

Reductive cases are built as h = b + [q, q] + q (or N_k(q) + q), non-reductive
ones as h = m_H + a + n_H with m_H = main + F, where F is a representative of
the centralizer of main in N_m(n_H).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable

from ..exact_linalg import MatrixQ, Subspace, kernel, ortho_complement
from ..lie_ambient import F4, SO, SP, SU, AlgebraFamily, AmbientAlgebra, construct_algebra
from ..sphericity_core import Outcome
from ..subalgebra_toolkit import (
    CandidateSubalgebra,
    candidate,
    centralizer_in,
    derived_space,
    normalizer_in,
)
from . import embeddings as emb
from .normal_forms import (
    IM,
    Kind,
    NormalFormSpec,
    make_normal_form,
    so_k,
    span,
    sp_block_from_complex,
    sp_k,
    sp_m,
    su_k,
    su_m,
)
from .onishchik import Realization

THEOREMS = ("5.2", "5.3", "6.2", "6.3", "7.3", "7.4", "8.1-facts", "8.5")
ALIASES = {"8.4-facts": "8.1-facts"}
FREE = ("0", "torus", "full")
L2 = ("0", "torus")  # l_2 is a proper subalgebra of sp(1)

SP_ = Outcome.SPHERICAL
NOT = Outcome.NOT_SPHERICAL


@dataclass(frozen=True)
class TableCase:
    case_id: str
    theorem_id: str
    family: AlgebraFamily
    n: int | None
    row: str
    params: dict
    expected: Outcome | None
    provenance: str  # PAPER or DERIVED
    build: Callable = field(repr=False, compare=False)
    kind: str = "subalgebra"  # or "action" for bare sphere-transitivity facts
    symmetric: bool | None = None
    notes: str = ""

    @property
    def asserted(self) -> bool:
        return self.expected is not None

    def construct(self):
        """A CandidateSubalgebra, or a Realization for kind 'action'."""
        if self.kind == "action":
            return self.build()
        return self.build(construct_algebra(self.family))


def _case(theorem, family, n, row, params, expected, provenance, build, **kw) -> TableCase:
    tag = ",".join(f"{k}={v}" for k, v in params.items())
    fam = family.label if family is not None else "-"
    cid = f"{theorem}|{fam}|{row}|{tag}"
    return TableCase(cid, theorem, family, n, row, dict(params), expected, provenance, build, **kw)


# ---------------------------------------------------------------------------
# compact algebras as matrices on R^d or C^d


def compact(name: str, *args, **kwargs) -> tuple:
    """(matrices, d, is_complex) for the compact factors used in the tables."""
    if name == "so":
        return emb.so_basis(args[0]), args[0], False
    if name == "su_real":
        m = args[0]
        return emb.su_in_so(m), 2 * m, False
    if name == "u_real":
        m = args[0]
        return emb.u_in_so(m), 2 * m, False
    if name == "sp_real":
        m = args[0]
        return emb.sp_in_so(m), 4 * m, False
    if name == "u":
        return emb.u_basis(args[0]), args[0], True
    if name == "su":
        return emb.su_basis(args[0]), args[0], True
    if name == "sp_in_u":
        m = args[0]
        return emb.sp_in_su_display(m), 2 * m, True
    if name == "sp_s1_in_u":
        m = args[0]
        return emb.sp_in_su_display(m) + (emb.center_u(2 * m),), 2 * m, True
    if name == "center_u":
        return (emb.center_u(args[0]),), args[0], True
    if name == "spin9":
        return emb.spin9_in_so16(), 16, False
    if name == "spin7":
        return emb.spin7_in_so8(), 8, False
    if name == "g2":
        return emb.g2_in_so7(), 7, False
    if name == "sp1_l2":
        return emb.sp1_x_l2_in_so4(kwargs["l2"], kwargs["order"]), 4, False
    raise ValueError(f"unknown compact algebra {name!r}")


def _pad(v: Subspace | None, alg: AmbientAlgebra) -> Subspace:
    return v if v is not None else Subspace.zero(alg.dim)


def place_k(alg: AmbientAlgebra, mats, offset: int = 0) -> Subspace:
    """Matrices acting on the first coordinates of p, placed in k."""
    tag, n = alg.family.tag.value, alg.family.n
    if tag == "so":
        return span(alg, [so_k(n, M, offset) for M in mats])
    if tag == "su":
        return span(alg, [su_k(n, M, offset) for M in mats])
    return span(alg, [sp_k(n, M, offset=offset) for M in mats])


def place_k_sp(alg: AmbientAlgebra, mats, m: int, offset: int = 0) -> Subspace:
    """sp(m) matrices [[P, -conj Q], [Q, conj P]] on quaternion coordinates of p."""
    n = alg.family.n
    return span(alg, [sp_block_from_complex(n, M, m, offset) for M in mats])


def place_m(alg: AmbientAlgebra, mats, offset: int = 0) -> Subspace:
    """Matrices acting on the first coordinates of g_alpha, placed in m."""
    tag, n = alg.family.tag.value, alg.family.n
    if tag == "so":
        return span(alg, [so_k(n - 1, M, offset) for M in mats])
    if tag == "su":
        return span(alg, [su_m(n, M, offset) for M in mats])
    return span(alg, [sp_m(n, M, offset=offset) for M in mats])


def place_m_sp(alg: AmbientAlgebra, mats, m: int, offset: int = 0) -> Subspace:
    n = alg.family.n
    out = []
    for M in mats:
        P = {(r, c): v for (r, c), v in M.items() if r < m and c < m}
        Q = {(r - m, c): v for (r, c), v in M.items() if r >= m and c < m}
        out.append(sp_m(n, P, Q, offset=offset))
    return span(alg, out)


def sp_corner_k(alg: AmbientAlgebra, which: str = "sp1") -> Subspace:
    n = alg.family.n
    mats = [sp_k(n, e=IM)] + ([sp_k(n, f=1), sp_k(n, f=IM)] if which == "sp1" else [])
    return span(alg, mats)


def sp_corner_m(alg: AmbientAlgebra, which: str = "sp1") -> Subspace:
    n = alg.family.n
    mats = [sp_m(n, e=IM)] + ([sp_m(n, f=1), sp_m(n, f=IM)] if which == "sp1" else [])
    return span(alg, mats)


# ---------------------------------------------------------------------------
# generic constructions


def nf(alg: AmbientAlgebra, kind: str, params=(), xi=(), c=None) -> Subspace:
    return make_normal_form(alg, NormalFormSpec(alg.family, Kind(kind), tuple(params), tuple(xi), c))


def reductive_h(alg: AmbientAlgebra, q: Subspace, main: Subspace | None = None,
                full_normalizer: bool = False, label: str = "") -> CandidateSubalgebra:
    core = derived_space(alg, q)
    if full_normalizer:
        core = core + normalizer_in(alg, alg["k"], q)
    return candidate(alg, _pad(main, alg) + core + q, label)


def free_part(alg: AmbientAlgebra, N: Subspace, main: Subspace, choice: str) -> Subspace:
    """Representative of the free factor: 0, one line, or the whole centralizer of main in N."""
    if choice == "0":
        return Subspace.zero(alg.dim)
    Z = centralizer_in(alg, N, main)
    if choice == "torus":
        return Subspace.span(Z.basis[:1], alg.dim)
    if choice == "full":
        return Z
    raise ValueError(choice)


def nonreductive_h(alg: AmbientAlgebra, n_H: Subspace, main: Subspace | None, free: str = "0",
                   with_a: bool = True, label: str = "") -> CandidateSubalgebra:
    main = _pad(main, alg)
    N = normalizer_in(alg, alg["m"], n_H)
    if not N.contains(main):
        raise ValueError(f"{label}: main factor does not normalize n_H")
    m_H = main + free_part(alg, N, main, free)
    a = alg["a"] if with_a else Subspace.zero(alg.dim)
    return candidate(alg, m_H + a + n_H, label)


def trivial_kernel(alg: AmbientAlgebra, N: Subspace, n_H: Subspace) -> Subspace:
    """Elements of N acting trivially on the complement of n_H in n."""
    comp = ortho_complement(n_H, alg["n_nil"], alg.gram_g)
    return centralizer_in(alg, N, comp)


def acting_ideal(alg: AmbientAlgebra, n_H: Subspace) -> Subspace:
    """The orthogonal complement in N_m(n_H) of the ideal acting trivially on n_H^perp."""
    N = normalizer_in(alg, alg["m"], n_H)
    return ortho_complement(trivial_kernel(alg, N, n_H), N, alg.gram_g)


# ---------------------------------------------------------------------------
# so(n,1)

_SO_SPECIAL = (
    # (row label, k, compact name, args)
    ("spin(9)", 16, "spin9", ()),
    ("spin(7)", 8, "spin7", ()),
    ("g2", 7, "g2", ()),
)


def _so_rows(n: int, nonred: bool):
    """(row, k, matrices, params) for the rows with a transitive factor on R^k."""
    top = n - 2 if nonred else n
    lo = 1 if nonred else 0
    for k in range(lo, top + 1):
        yield "so(k)", k, compact("so", k)[0], {"k": k}
    for m in range(4, top // 2 + 1):
        yield "su(m)", 2 * m, compact("su_real", m)[0], {"m": m}
    for m in range(2, top // 4 + 1):
        yield "sp(m)", 4 * m, compact("sp_real", m)[0], {"m": m}
    for label, k, name, args in _SO_SPECIAL:
        if k <= top:
            yield label, k, compact(name, *args)[0], {}
    if top >= 4:
        for l2 in L2:
            yield "sp(1)+l2", 4, compact("sp1_l2", l2=l2, order="sp1,l2")[0], {"l2": l2}
            yield "l2+sp(1)", 4, compact("sp1_l2", l2=l2, order="l2,sp1")[0], {"l2": l2}


def _so_reductive(n: int) -> list:
    fam = SO(n)
    out = []
    for row, k, mats, params in _so_rows(n, nonred=False):
        def build(alg, k=k, mats=mats, row=row):
            return reductive_h(alg, nf(alg, "Q_K", (k,)), place_k(alg, mats), label=row)
        sym = row == "so(k)" and (k == n or 2 < k <= n - 1)
        out.append(_case("5.2", fam, n, f"{row}+so(n-k,1)", {**params, "k": k}, SP_, "PAPER", build,
                         symmetric=sym))
    # suspected omissions: su(3) and u(m) acting on R^6 resp. R^{2m}
    for m in range(2, n // 2 + 1):
        def build(alg, m=m):
            return reductive_h(alg, nf(alg, "Q_K", (2 * m,)), place_k(alg, compact("u_real", m)[0]), label="u(m)")
        out.append(_case("5.2", fam, n, "u(m)+so(n-k,1)", {"m": m, "k": 2 * m}, None, "DERIVED", build,
                         notes="u(m) in so(2m) is transitive on spheres but absent from the table"))
    if n >= 6:
        def build(alg):
            return reductive_h(alg, nf(alg, "Q_K", (6,)), place_k(alg, compact("su_real", 3)[0]), label="su(3)")
        out.append(_case("5.2", fam, n, "su(3)+so(n-6,1)", {"m": 3, "k": 6}, None, "DERIVED", build,
                         notes="su(m) rows require m >= 4 while SU(3) is transitive on S^5"))
    # negative controls
    for k in (2, 3):
        if k <= n:
            def build(alg, k=k):
                return reductive_h(alg, nf(alg, "Q_K", (k,)), place_k(alg, compact("so", k - 1)[0]), label="so(k-1)")
            out.append(_case("5.2", fam, n, "so(k-1)+so(n-k,1)", {"k": k}, NOT, "DERIVED", build))
    if n >= 4:
        def build(alg):
            return reductive_h(alg, nf(alg, "Q_K", (4,)), place_k(alg, emb.delta_sp1_in_so4()), label="delta")
        out.append(_case("5.2", fam, n, "Delta_sp(1)+so(n-4,1)", {"k": 4}, NOT, "PAPER", build))
    return out


def _so_nonreductive(n: int) -> list:
    fam = SO(n)
    out = []
    for lh in ("0", "a", "m+a"):
        def build(alg, lh=lh):
            l_H = {"0": Subspace.zero(alg.dim), "a": alg["a"], "m+a": alg["m"] + alg["a"]}[lh]
            return candidate(alg, l_H + alg["n_nil"], "l_H+n")
        out.append(_case("5.3", fam, n, "l_H+n", {"l_H": lh}, SP_, "PAPER", build))
    for row, k, mats, params in _so_rows(n, nonred=True):
        for free in FREE:
            def build(alg, k=k, mats=mats, free=free, row=row):
                return nonreductive_h(alg, nf(alg, "N_K", (k,)), place_m(alg, mats), free, label=row)
            out.append(_case("5.3", fam, n, f"{row}+c_k+a+n_k", {**params, "k": k, "c": free}, SP_, "PAPER",
                             build))
    for m in range(2, (n - 2) // 2 + 1):
        def build(alg, m=m):
            return nonreductive_h(alg, nf(alg, "N_K", (2 * m,)), place_m(alg, compact("u_real", m)[0]), label="u(m)")
        out.append(_case("5.3", fam, n, "u(m)+c_k+a+n_k", {"m": m, "k": 2 * m}, None, "DERIVED", build,
                         notes="u(m) in so(2m) is transitive on spheres but absent from the table"))
    if n - 2 >= 6:
        def build(alg):
            return nonreductive_h(alg, nf(alg, "N_K", (6,)), place_m(alg, compact("su_real", 3)[0]), label="su(3)")
        out.append(_case("5.3", fam, n, "su(3)+c_6+a+n_6", {"m": 3, "k": 6}, None, "DERIVED", build,
                         notes="su(m) rows require m >= 4 while SU(3) is transitive on S^5"))
    if n - 1 >= 2:
        def build(alg):
            return nonreductive_h(alg, nf(alg, "N_K", (2,)), None, label="a+n_2")
        out.append(_case("5.3", fam, n, "a+n_2", {"k": 2}, NOT, "DERIVED", build))

        def build(alg):
            return nonreductive_h(alg, nf(alg, "N_K", (2,)), place_m(alg, compact("so", 2)[0]), with_a=False,
                                  label="so(2)+n_2")
        out.append(_case("5.3", fam, n, "so(2)+n_2 (no a)", {"k": 2}, NOT, "PAPER", build))
    if n - 1 >= 3:
        def build(alg):
            return nonreductive_h(alg, nf(alg, "N_K", (3,)), place_m(alg, compact("so", 2)[0]), label="so(2)")
        out.append(_case("5.3", fam, n, "so(k-1)+a+n_k", {"k": 3}, NOT, "DERIVED", build))
    return out


# ---------------------------------------------------------------------------
# su(n,1)


def _su_reductive(n: int) -> list:
    fam = SU(n)
    out = []

    def add(row, params, build, expected=SP_, prov="PAPER", **kw):
        out.append(_case("6.2", fam, n, row, params, expected, prov, build, **kw))

    add("u(n)", {}, lambda alg: candidate(alg, alg["k"], "u(n)"))
    if n >= 2:
        add("su(n)", {}, lambda alg: candidate(alg, place_k(alg, compact("su", n)[0]), "su(n)"))
    else:
        add("su(n)", {}, lambda alg: candidate(alg, Subspace.zero(alg.dim), "su(1)"), None, "PAPER",
            notes="su(1) = 0 has no open orbit on the spheres of C^1")
    if n % 2 == 0 and n >= 4:
        m = n // 2
        add("sp(m)", {"m": m}, lambda alg, m=m: candidate(alg, place_k(alg, compact("sp_in_u", m)[0]), "sp(m)"),
            notes="table condition 'm = 2n' read as n = 2m")
        add("sp(m)+s1", {"m": m},
            lambda alg, m=m: candidate(alg, place_k(alg, compact("sp_s1_in_u", m)[0]), "sp+s1"))
    for k in range(n):
        def b1(alg, k=k):
            return reductive_h(alg, nf(alg, "Q_KL", (k, 0)), full_normalizer=True, label="s(u(k)+u(n-k,1))")
        add("s(u(k)+u(n-k,1))", {"k": k}, b1, symmetric=None)

        def b2(alg, k=k):
            main = place_k(alg, compact("su", k)[0]) if k >= 2 else None
            return reductive_h(alg, nf(alg, "Q_KL", (k, 0)), main, label="su(k)+su(n-k,1)")
        add("su(k)+su(n-k,1)", {"k": k}, b2, symmetric=True)
        if k % 2 == 0 and k >= 4:
            m = k // 2

            def b3(alg, k=k, m=m):
                return reductive_h(alg, nf(alg, "Q_KL", (k, 0)), place_k(alg, compact("sp_in_u", m)[0]),
                                   label="s(sp(m)+u(n-k,1))")
            add("s(sp(m)+u(n-k,1))", {"k": k, "m": m}, b3)

            def b4(alg, k=k, m=m):
                return reductive_h(alg, nf(alg, "Q_KL", (k, 0)), place_k(alg, compact("sp_s1_in_u", m)[0]),
                                   label="s(sp(m)+s1+u(n-k,1))")
            add("s(sp(m)+s1+u(n-k,1))", {"k": k, "m": m}, b4)
    add("so(n,1)", {}, lambda alg: reductive_h(alg, nf(alg, "Q_KL", (0, n)), label="so(n,1)"), symmetric=True)
    # for k > 0, s(b + so(n-k,1)) is never spherical, even with b as large as possible
    for k in range(1, n):
        def bn(alg, k=k):
            return reductive_h(alg, nf(alg, "Q_KL", (k, n - k)), full_normalizer=True, label="s(b+so(n-k,1))")
        add("s(b+so(n-k,1))", {"k": k, "b": "full"}, bn, NOT, "PAPER")
    if n >= 2:
        def bt(alg):
            return reductive_h(alg, nf(alg, "Q_KL", (2, 0)) if n > 2 else nf(alg, "Q_KL", (2, 0)), None,
                               label="su(n-2,1) alone")
        add("su(n-2,1)", {"k": 2}, bt, NOT, "DERIVED")
    return out


def _su_nonreductive(n: int) -> list:
    fam = SU(n)
    out = []

    def add(row, params, build, expected=SP_, prov="PAPER", **kw):
        out.append(_case("6.3", fam, n, row, params, expected, prov, build, **kw))

    for lh in ("0", "a", "m+a"):
        def b0(alg, lh=lh):
            l_H = {"0": Subspace.zero(alg.dim), "a": alg["a"], "m+a": alg["m"] + alg["a"]}[lh]
            return candidate(alg, l_H + alg["n_nil"], "l_H+n")
        add("l_H+n", {"l_H": lh}, b0)
    top = n - 1
    # rows on n_{0,l}: a transitive factor on (iR)^l
    real_rows = [("so(l)", l, compact("so", l)[0], {"l": l}) for l in range(1, top + 1)]
    real_rows += [("su(m)", 2 * m, compact("su_real", m)[0], {"m": m}) for m in range(4, top // 2 + 1)]
    real_rows += [("sp(m)", 4 * m, compact("sp_real", m)[0], {"m": m}) for m in range(2, top // 4 + 1)]
    real_rows += [(lab, k, compact(nm)[0], {}) for lab, k, nm, _ in _SO_SPECIAL if k <= top]
    if top >= 4:
        for l2 in L2:
            real_rows.append(("sp(1)+l2", 4, compact("sp1_l2", l2=l2, order="sp1,l2")[0], {"l2": l2}))
            real_rows.append(("l2+sp(1)", 4, compact("sp1_l2", l2=l2, order="l2,sp1")[0], {"l2": l2}))
    for row, l, mats, params in real_rows:
        if row != "so(l)" and l < 2:
            continue
        for free in FREE:
            def b1(alg, l=l, mats=mats, free=free, row=row):
                return nonreductive_h(alg, nf(alg, "N_KL", (0, l)), place_m(alg, mats), free, label=row)
            add(f"s({row}+b_l+c)+a+n_0l", {**params, "l": l, "free": free}, b1)
    # rows on n_{k,0}: a transitive factor on C^k
    cx_rows = [("u(k)", k, compact("u", k)[0], {"k": k}) for k in range(1, top + 1)]
    cx_rows += [("su(k)", k, compact("su", k)[0], {"k": k}) for k in range(1, top + 1)]
    cx_rows += [("sp(m)", 2 * m, compact("sp_in_u", m)[0], {"m": m}) for m in range(2, top // 2 + 1)]
    cx_rows += [("sp(m)+s1", 2 * m, compact("sp_s1_in_u", m)[0], {"m": m}) for m in range(2, top // 2 + 1)]
    for row, k, mats, params in cx_rows:
        for free in FREE:
            def b2(alg, k=k, mats=mats, free=free, row=row):
                return nonreductive_h(alg, nf(alg, "N_KL", (k, 0)), place_m(alg, mats), free, label=row)
            if row == "su(k)" and k == 1:
                add("s(su(k)+b_k+c)+a+n_k0", {**params, "free": free}, b2, None, "PAPER",
                    notes="su(1) = 0; the row needs c to act on C^1")
            else:
                add(f"s({row}+b_k+c)+a+n_k0", {**params, "free": free}, b2)
    if top >= 1:
        for free in FREE:
            def b3(alg, free=free):
                main = span(alg, [su_m(n, {(0, 0): IM})])
                return nonreductive_h(alg, nf(alg, "N_KL", (1, 0)), main, free, label="s(c+b_1+u(1))")
            add("s(c+b_1+u(1))+a+n_10", {"free": free}, b3,
                notes="u(1) placed on the first coordinate of g_alpha")
    # negatives: both k and l nonzero (reducible), and a bare u(1)-free case
    if top >= 2:
        def bn(alg):
            n_H = nf(alg, "N_KL", (1, 1))
            return nonreductive_h(alg, n_H, normalizer_in(alg, alg["m"], n_H), label="N(n_11)")
        add("N_m(n_11)+a+n_11", {"k": 1, "l": 1}, bn, NOT, "PAPER")
        def bn2(alg):
            return nonreductive_h(alg, nf(alg, "N_KL", (0, 2)), None, label="a+n_02")
        add("a+n_02", {"l": 2}, bn2, NOT, "DERIVED")
    return out


# ---------------------------------------------------------------------------
# sp(n,1)

XI_I = (1, 0, 0)
XI_GENERIC = (Fraction(3, 5), Fraction(4, 5), 0)


def _sp_reductive(n: int) -> list:
    fam = SP(n)
    out = []

    def add(row, params, build, expected=SP_, prov="PAPER", **kw):
        out.append(_case("7.3", fam, n, row, params, expected, prov, build, **kw))

    spn = lambda alg: place_k_sp(alg, compact("sp_in_u", n)[0], n)  # noqa: E731
    add("sp(n)", {}, lambda alg: candidate(alg, spn(alg), "sp(n)"))
    add("sp(n)+s1", {}, lambda alg: candidate(alg, spn(alg) + sp_corner_k(alg, "torus"), "sp(n)+s1"))
    add("sp(n)+sp(1)", {}, lambda alg: candidate(alg, alg["k"], "sp(n)+sp(1)"), symmetric=True)
    q1 = lambda alg: nf(alg, "Q_KLMP_XI", (1, 0, 0, 0))  # noqa: E731
    add("sp(n-1,1)", {}, lambda alg: reductive_h(alg, q1(alg), label="sp(n-1,1)"))
    add("s1+sp(n-1,1)", {}, lambda alg: reductive_h(alg, q1(alg), span(alg, [sp_k(n, {(0, 0): IM})]), label="s1"))
    for k in range(n):
        def b(alg, k=k):
            main = place_k_sp(alg, compact("sp_in_u", k)[0], k) if k else None
            return reductive_h(alg, nf(alg, "Q_KLMP_XI", (k, 0, 0, 0)), main, label="sp(k)+sp(n-k,1)")
        add("sp(k)+sp(n-k,1)", {"k": k}, b, symmetric=True)
    for xi, tag in ((XI_I, "i"), (XI_GENERIC, "generic")):
        def bq(alg, xi=xi):
            return nf(alg, "Q_KLMP_XI", (0, 0, n, 0), (xi,) * n)
        prov = "PAPER" if tag == "i" else "DERIVED"
        add("su(n,1)", {"xi": tag}, lambda alg, bq=bq: reductive_h(alg, bq(alg), label="su(n,1)"), SP_, prov)
        add("su(n,1)+s1", {"xi": tag}, lambda alg, bq=bq: reductive_h(alg, bq(alg), full_normalizer=True,
                                                                   label="u(n,1)"), SP_, prov, symmetric=True)
    # negatives
    add("N_k(q_0n00)+q_0n00", {}, lambda alg: reductive_h(alg, nf(alg, "Q_KLMP_XI", (0, n, 0, 0)),
                                                          full_normalizer=True, label="q_0n00"), NOT, "PAPER")
    for k in range(1, n):
        def bk(alg, k=k):
            return reductive_h(alg, nf(alg, "Q_KLMP_XI", (k, n - k, 0, 0)), full_normalizer=True, label="q_k,n-k")
        add("N_k(q_k,n-k,0,0)+q", {"k": k}, bk, NOT, "PAPER")
    def b2(alg):
        return reductive_h(alg, nf(alg, "Q_KLMP_XI", (2, 0, 0, 0)), None, label="sp(n-2,1)")
    add("sp(n-2,1)", {"k": 2}, b2, NOT, "DERIVED")
    return out


def _sp_nonreductive(n: int) -> list:
    fam = SP(n)
    out = []

    def add(row, params, build, expected=SP_, prov="PAPER", **kw):
        out.append(_case("7.4", fam, n, row, params, expected, prov, build, **kw))

    for lh in ("0", "a", "m+a"):
        def b0(alg, lh=lh):
            l_H = {"0": Subspace.zero(alg.dim), "a": alg["a"], "m+a": alg["m"] + alg["a"]}[lh]
            return candidate(alg, l_H + alg["n_nil"], "l_H+n")
        add("l_H+n", {"l_H": lh}, b0)
    top = n - 1
    for k in range(1, top + 1):
        for free in FREE:
            def b1(alg, k=k, free=free):
                main = place_m_sp(alg, compact("sp_in_u", k)[0], k)
                return nonreductive_h(alg, nf(alg, "N_KLMP_XI", (k, 0, 0, 0)), main, free, label="sp(k)")
            add("sp(k)+b_k+c+a+n_k000", {"k": k, "free": free}, b1)
    for free in FREE:
        def b2(alg, free=free):
            return nonreductive_h(alg, nf(alg, "N_KLMP_XI", (1, 0, 0, 0)), sp_corner_m(alg), free, label="sp(1)")
        add("c+b_1+sp(1)+a+n_1000", {"free": free}, b2)

        def b3(alg, free=free):
            n_H = nf(alg, "N_KLMP_XI", (0, 1, 0, 0))
            return nonreductive_h(alg, n_H, acting_ideal(alg, n_H), free, label="twisted sp(1)")
        add("sp(1)+b_1+a+n_0100", {"free": free}, b3, notes="sp(1) acts on the 3-dim complement by rotations")
    for m in range(1, top + 1):
        rows = [("u(m)", compact("u", m)[0]), ("su(m)", compact("su", m)[0])]
        if m % 2 == 0 and m >= 4:
            rows += [("sp(j)", compact("sp_in_u", m // 2)[0]), ("sp(j)+s1", compact("sp_s1_in_u", m // 2)[0])]
        for row, mats in rows:
            for free in FREE:
                def b4(alg, m=m, mats=mats, free=free, row=row):
                    n_H = nf(alg, "N_KLMP_XI", (0, 0, m, 0), (XI_I,) * m)
                    return nonreductive_h(alg, n_H, place_m(alg, mats), free, label=row)
                params = {"m": m, "xi": "i", "free": free}
                if row == "su(m)" and m == 1:
                    add(f"{row}+b_m+d+a+n_00m0", params, b4, None, "PAPER",
                        notes="su(1) = 0; the row needs d to act on C^1")
                else:
                    add(f"{row}+b_m+d+a+n_00m0", params, b4)
    for p in range(1, top + 1):
        for free in FREE:
            def b5(alg, p=p, free=free):
                return nonreductive_h(alg, nf(alg, "N_KLMP_XI", (0, 0, 0, p)), place_m(alg, compact("so", p)[0]),
                                      free, label="so(p)")
            add("so(p)+b_p+c+a+n_000p", {"p": p, "free": free}, b5)
    # negatives
    if top >= 2:
        def bn(alg):
            n_H = nf(alg, "N_KLMP_XI", (0, 2, 0, 0))
            return nonreductive_h(alg, n_H, normalizer_in(alg, alg["m"], n_H), label="N(n_0200)")
        add("N_m(n_0l00)+a+n_0l00, l=2", {"l": 2}, bn, NOT, "PAPER")

        def bm(alg):
            n_H = nf(alg, "N_KLMP_XI", (1, 0, 0, 1))
            return nonreductive_h(alg, n_H, normalizer_in(alg, alg["m"], n_H), label="N(n_1001)")
        add("N_m(n_1001)+a+n_1001", {"k": 1, "p": 1}, bm, NOT, "PAPER")
    def bb(alg):
        n_H = nf(alg, "N_KLMP_XI", (1, 0, 0, 0))
        return nonreductive_h(alg, n_H, None, "0", label="a+n_1000")
    add("a+n_1000", {"k": 1}, bb, NOT, "DERIVED")
    return out


# ---------------------------------------------------------------------------
# f4 parabolic model


def _rational_sqrt(x: Fraction) -> Fraction:
    x = Fraction(x)
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a != x.numerator or b * b != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(a, b)


def complement_frame(k: int | None = None, c=None) -> list:
    """Orthonormal rational frame of n_H^perp inside R^8 (coordinates e1..e7, e0)."""
    def e(i):
        return [Fraction(int(i == j)) for j in range(8)]
    if c is None:
        return [e(i) for i in range(k, 8)]
    c = Fraction(c)
    r = _rational_sqrt(1 + c * c)
    w = [Fraction(0)] * 8
    w[3], w[4] = 1 / r, -c / r
    return [w, e(5), e(6), e(7)]


def _frame_block(alg: AmbientAlgebra, x, frame) -> list:
    L = alg.model.lam(x[:21])
    return [sum(frame[i][r] * L[r][s] * frame[j][s] for r in range(8) for s in range(8) if L[r][s])
            for i in range(len(frame)) for j in range(len(frame))]


def preimage_on_frame(alg: AmbientAlgebra, N: Subspace, frame, target_mats) -> Subspace:
    """{X in N : lambda(X) restricted to span(frame) lies in span(target_mats)}."""
    d = len(frame)
    T = Subspace.span([[Fraction(M.get((i, j), 0)) for i in range(d) for j in range(d)] for M in target_mats], d * d)
    cols = [T.reduce(_frame_block(alg, b, frame)) for b in N.basis]
    if not cols:
        return Subspace.zero(alg.dim)
    K = kernel(MatrixQ(tuple(tuple(col[r] for col in cols) for r in range(d * d))))
    return Subspace.span([N.combine(v) for v in K.basis], alg.dim)


def so4_factor(alg: AmbientAlgebra, N: Subspace, frame, order: str, l2: str) -> Subspace:
    """Preimage in N of p(Sp(1) x L2) or p(L2 x Sp(1)) acting on the frame."""
    return preimage_on_frame(alg, N, frame, emb.sp1_x_l2_in_so4(l2, order))


def _f4_cases() -> list:
    fam = F4
    out = []

    def add(row, params, build, expected=SP_, prov="PAPER", **kw):
        out.append(_case("8.5", fam, None, row, params, expected, prov, build, **kw))

    def nk(alg, k):
        return nf(alg, "N_K", (k,))

    def Nk(alg, k):
        return normalizer_in(alg, alg["m"], nk(alg, k))

    for lh in ("0", "a", "m+a"):
        def b0(alg, lh=lh):
            l_H = {"0": Subspace.zero(alg.dim), "a": alg["a"], "m+a": alg["m"] + alg["a"]}[lh]
            return candidate(alg, l_H + alg["n_nil"], "l_H+n")
        add("l_H+n", {"l_H": lh}, b0)
    for choice in FREE:
        def b1(alg, choice=choice):
            g2 = Nk(alg, 7)
            sub = {"0": Subspace.zero(alg.dim), "torus": Subspace.span(g2.basis[:1], alg.dim), "full": g2}[choice]
            return nonreductive_h(alg, nk(alg, 7), sub, label="m'+a+n")
        add("m'+a+n_1", {"m'": choice, "k": 7}, b1,
            notes="read with n_H of codimension one, so that m' in g2 is arbitrary")
    add("spin(7)+a+n_0", {"k": 0}, lambda alg: nonreductive_h(alg, nk(alg, 0), alg["m"], label="spin(7)"))
    add("g2+a+n_1", {"k": 1}, lambda alg: nonreductive_h(alg, nk(alg, 1), Nk(alg, 1), label="g2"))
    add("so(4)+a+n_4", {"k": 4}, lambda alg: nonreductive_h(alg, nk(alg, 4), Nk(alg, 4), label="so(4)"))
    for order in ("sp1,l2", "l2,sp1"):
        for l2 in L2:
            def b2(alg, order=order, l2=l2):
                main = so4_factor(alg, Nk(alg, 4), complement_frame(4), order, l2)
                return nonreductive_h(alg, nk(alg, 4), main, label=order)
            add(f"phi^-1(b_4+{order.replace(',', '+')})+a+n_4", {"k": 4, "l2": l2}, b2)
    for k in (5, 6):
        for free in FREE:
            def b3(alg, k=k, free=free):
                return nonreductive_h(alg, nk(alg, k), acting_ideal(alg, nk(alg, k)), free, label="phi^-1")
            add("phi^-1(b_k+so(8-k))+a+n_k", {"k": k, "b": free}, b3,
                notes="so(8-k) realized as the ideal of N_m(n_k) acting on the complement")
    for c in (0, 1, 2, -1):
        def b4(alg, c=c):
            n_H = nf(alg, "N_C_F4", c=c)
            return nonreductive_h(alg, n_H, normalizer_in(alg, alg["m"], n_H), label="so(4)_c")
        add("so(4)_c+a+n_c", {"c": c}, b4)
    for c in (0, Fraction(3, 4), Fraction(-4, 3)):
        for order in ("sp1,l2", "l2,sp1"):
            for l2 in L2:
                def b5(alg, c=c, order=order, l2=l2):
                    n_H = nf(alg, "N_C_F4", c=c)
                    N = normalizer_in(alg, alg["m"], n_H)
                    return nonreductive_h(alg, n_H, so4_factor(alg, N, complement_frame(c=c), order, l2),
                                          label="rho_c")
                add(f"{order.replace(',', '+')}+a+n_c", {"c": str(c), "l2": l2}, b5,
                    notes="c restricted to values where the sp(1) ideals are rational")
    # negatives: the k = 2, 3 gaps, and proper pieces of so(4)
    for k in (2, 3):
        add("N_m(n_k)+a+n_k", {"k": k}, lambda alg, k=k: nonreductive_h(alg, nk(alg, k), Nk(alg, k), label="gap"),
            NOT, "PAPER", notes="k=2 is stated negative, but N_m(n_2) contains a conjugate of su(3)" if k == 2 else "")
    add("torus+a+n_4", {"k": 4}, lambda alg: nonreductive_h(
        alg, nk(alg, 4), preimage_on_frame(alg, Nk(alg, 4), complement_frame(4), emb.left_sp1()[:1]),
        label="torus"), NOT, "DERIVED")
    add("a+n_6", {"k": 6}, lambda alg: nonreductive_h(alg, nk(alg, 6), None, label="a+n_6"), NOT, "DERIVED")
    return out


def _f4_facts() -> list:
    out = [_case("8.1-facts", None, None, "Spin(9) on R^16", {}, SP_, "PAPER",
                 lambda: Realization("Spin(9)", emb.spin9_in_so16(), 16), kind="action"),
           _case("8.1-facts", None, None, "Sp(2) on H^2", {}, SP_, "PAPER",
                 lambda: Realization("Sp(2)", tuple(emb.realify(M) for M in emb.sp2_in_su4()), 8), kind="action"),
           _case("8.1-facts", None, None, "Spin(7) on R^8", {}, SP_, "PAPER",
                 lambda: Realization("Spin(7)", emb.spin7_in_so8(), 8), kind="action"),
           _case("8.1-facts", None, None, "G2 on R^7", {}, SP_, "PAPER",
                 lambda: Realization("G2", emb.g2_in_so7(), 7), kind="action")]
    return out


# ---------------------------------------------------------------------------
# public entry point


def table_cases(theorem_id: str, n: int | None = None) -> list:
    """All instantiated rows of one table at one n (n is ignored for 8.1-facts and 8.5)."""
    theorem_id = ALIASES.get(theorem_id, theorem_id)
    if theorem_id not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem_id!r}; expected one of {THEOREMS}")
    if theorem_id == "8.5":
        return _f4_cases()
    if theorem_id == "8.1-facts":
        return _f4_facts()
    if n is None:
        raise ValueError(f"table {theorem_id} needs n")
    builders = {"5.2": (_so_reductive, 3), "5.3": (_so_nonreductive, 3), "6.2": (_su_reductive, 1),
                "6.3": (_su_nonreductive, 1), "7.3": (_sp_reductive, 2), "7.4": (_sp_nonreductive, 2)}
    fn, lo = builders[theorem_id]
    if n < lo:
        raise ValueError(f"table {theorem_id} needs n >= {lo}")
    return fn(n)


def spot_cases(theorem_id: str, n: int, rows: tuple) -> list:
    """The cases of the given rows only (used for large-n spot checks)."""
    return [c for c in table_cases(theorem_id, n) if c.row in rows]
