"""Explicit bracket and normalizer displays for the classical normal forms.

Each builder returns a Subspace of the ambient algebra built directly from the
displayed block shape, independently of any bracket computation, so that it can
serve as an oracle for ``derived_space`` and ``normalizer_in``.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact_linalg import GaussianScalar, Subspace
from ..lie_ambient import AmbientAlgebra, Tag, f4_element
from .normal_forms import G, IM, ONE, NormalFormError, so_k, span, sp_k, su_k

# ---------------------------------------------------------------------------
# so(n,1)


def _so_block(d: int, offset: int) -> list:
    return [{(i + offset, j + offset): ONE, (j + offset, i + offset): -ONE}
            for i in range(d) for j in range(i + 1, d)]


def so_derived_display(alg: AmbientAlgebra, k: int) -> Subspace:
    """[q_k, q_k]: so(n-k) in the lower block of k."""
    n = alg.family.n
    return span(alg, [so_k(n, A) for A in _so_block(n - k, k)])


def so_normalizer_display(alg: AmbientAlgebra, k: int) -> Subspace:
    """N_k(q_k) = so(k) + so(n-k)."""
    n = alg.family.n
    return span(alg, [so_k(n, A) for A in _so_block(k, 0) + _so_block(n - k, k)])


# ---------------------------------------------------------------------------
# su(n,1)


def _u_block(d: int, offset: int, real_corner: int = 0) -> list:
    """Basis of u(d) at the offset; the leading real_corner x real_corner block is real skew."""
    out = []
    for i in range(d):
        for j in range(i, d):
            r, c = i + offset, j + offset
            if i == j:
                if i >= real_corner:
                    out.append({(r, r): IM})
                continue
            out.append({(r, c): G(ONE), (c, r): G(-ONE)})
            if not (i < real_corner and j < real_corner):
                out.append({(r, c): IM, (c, r): IM})
    return out


def su_derived_display(alg: AmbientAlgebra, k: int, l: int) -> Subspace:
    """[q_kl, q_kl]: diag(0_k, [[so(l), B], [-B*, u(n-k-l)]], ix) with ix = -tr."""
    n = alg.family.n
    return span(alg, [su_k(n, X) for X in _u_block(n - k, k, real_corner=l)])


def _su_normalizer_element(n: int, k: int, l: int, X: dict) -> dict:
    """diag(A, S + y I_l, C, y) of trace zero, where X = A + S + C is given."""
    t = G()
    for (r, c), v in X.items():
        if r == c:
            t = t + v
    y = t * Fraction(-1, 1 + l)
    M = {key: G.of(v) for key, v in X.items()}
    for i in range(k, k + l):
        M[(i, i)] = M.get((i, i), G()) + y
    if y:
        M[(n, n)] = y
    return {key: v for key, v in M.items() if v}


def su_normalizer_display(alg: AmbientAlgebra, k: int, l: int) -> Subspace:
    """N_k(q_kl): diag(u(k), S + ix I_l, u(n-k-l), ix) inside s(u(n) + u(1))."""
    n = alg.family.n
    gens = _u_block(k, 0) + _so_block(l, k) + _u_block(n - k - l, k + l)
    return span(alg, [_su_normalizer_element(n, k, l, X) for X in gens])


# ---------------------------------------------------------------------------
# sp(n,1)


def klmp_labels(n: int, k: int, l: int, m: int, p: int) -> list:
    labels = ["k"] * k + ["l"] * l + ["m"] * m + ["p"] * p
    if len(labels) > n:
        raise NormalFormError("k + l + m + p exceeds n")
    return labels + ["r"] * (n - len(labels))


def _sp_generators(n: int, a_pos, b_pos, real: bool) -> list:
    mats = []
    for i, j in a_pos:
        if i < j:
            mats.append(sp_k(n, {(i, j): G(ONE), (j, i): G(-ONE)}))
            if not real:
                mats.append(sp_k(n, {(i, j): IM, (j, i): IM}))
        elif i == j and not real:
            mats.append(sp_k(n, {(i, i): IM}))
    for i, j in b_pos:
        if i <= j:
            mats.append(sp_k(n, B={(i, j): G(ONE), (j, i): G(ONE)}))
            if not real:
                mats.append(sp_k(n, B={(i, j): IM, (j, i): IM}))
    return mats


def sp_derived_lower_bound(alg: AmbientAlgebra, k: int, l: int, m: int, p: int) -> Subspace:
    """The displayed lower bound for [q, q] in sp(n): free '*' entries and real '★' entries."""
    n = alg.family.n
    lab = klmp_labels(n, k, l, m, p)
    idx = range(n)
    free_a = [(i, j) for i in idx for j in idx
              if "k" not in (lab[i], lab[j]) and (lab[i] in "pr" or lab[j] in "pr")]
    free_b = [(i, j) for i in idx for j in idx
              if "k" not in (lab[i], lab[j])
              and ("r" in (lab[i], lab[j]) or lab[i] == lab[j] == "p")]
    real_a = [(i, j) for i in idx for j in idx if lab[i] in "lm" and lab[j] in "lm"]
    real_b = [(i, j) for i in idx for j in idx
              if {lab[i], lab[j]} in ({"l", "p"}, {"m", "p"})]
    mats = _sp_generators(n, free_a, free_b, real=False) + _sp_generators(n, real_a, real_b, real=True)
    return span(alg, mats)


def sp_corner(alg: AmbientAlgebra) -> Subspace:
    """The sp(1) factor of k."""
    n = alg.family.n
    return span(alg, [sp_k(n, e=IM), sp_k(n, f=1), sp_k(n, f=IM)])


def sp_normalizer_upper_bound(alg: AmbientAlgebra, k: int, l: int, m: int, p: int) -> Subspace:
    """Block-diagonal bound for N_k(q_klmp): free k, m and trailing blocks; l and p
    blocks real skew plus a scalar coupled to the sp(1) corner (e, f)."""
    n = alg.family.n
    lab = klmp_labels(n, k, l, m, p)
    gens = []
    for t in "kmr":
        ii = [i for i, x in enumerate(lab) if x == t]
        pos = [(i, j) for i in ii for j in ii]
        gens += _sp_generators(n, pos, pos, real=False)
    for t in "lp":
        ii = [i for i, x in enumerate(lab) if x == t]
        gens += _sp_generators(n, [(i, j) for i in ii for j in ii], [], real=True)
    L = [i for i, x in enumerate(lab) if x == "l"]
    P = [i for i, x in enumerate(lab) if x == "p"]
    A = {(i, i): IM for i in L}
    A.update({(i, i): -IM for i in P})
    gens.append(sp_k(n, A, e=IM))
    for f in (G(ONE), IM):
        B = {(i, i): f for i in L}
        B.update({(i, i): -f.conj() for i in P})
        gens.append(sp_k(n, B=B, f=f))
    return span(alg, gens)


# ---------------------------------------------------------------------------
# f4 model

def _so7_from_letters(i, m, n, t, u, v) -> tuple:
    """N_m(n_4) in so(7) coordinates; the v letter is placed so that the result
    actually normalizes n_4 (its first-block sign is opposite to the printed one)."""
    return ((0, -t, -u, 0, 0, i, m),
            (t, 0, -v, 0, -i, 0, n),
            (u, v, 0, 0, -m, -n, 0),
            (0,) * 7,
            (0, i, m, 0, 0, -t, -u),
            (-i, 0, n, 0, t, 0, -v),
            (-m, -n, 0, 0, u, v, 0))


def f4_n4_letters_image(i, m, n, t, u, v) -> tuple:
    """The 8x8 image of N_m(n_4) under lambda as displayed (two equal so(4) blocks)."""
    B = ((0, -t, -u, n), (t, 0, -v, -m), (u, v, 0, i), (-n, m, -i, 0))
    M = [[0] * 8 for _ in range(8)]
    for r in range(4):
        for c in range(4):
            M[r][c] = M[r + 4][c + 4] = B[r][c]
    return tuple(tuple(row) for row in M)


def _units(d: int) -> list:
    return [[int(a == b) for b in range(d)] for a in range(d)]


def f4_n4_normalizer_display(alg: AmbientAlgebra) -> Subspace:
    if alg.family.tag is not Tag.F4_PARABOLIC_MODEL:
        raise NormalFormError("the n_4 display lives in the f4 model")
    return Subspace.span([f4_element(alg, so7=_so7_from_letters(*u)) for u in _units(6)], alg.dim)


def so4c_display(c, h, l, p, r, s, v) -> tuple:
    """lambda(N_m(n_c)) as displayed, in the parameters (h, l, p, r, s, v)."""
    return ((0, s + r * c, -r + s * c, p * c, p, 0, 0, 0),
            (-s - r * c, 0, -v, l * c, l, 0, 0, 0),
            (r - s * c, v, 0, -h * c, -h, 0, 0, 0),
            (-p * c, -l * c, h * c, 0, 0, -r, -s, -p),
            (-p, -l, h, 0, 0, r * c, s * c, p * c),
            (0, 0, 0, r, -r * c, 0, -v, h + l * c),
            (0, 0, 0, s, -s * c, v, 0, -h * c + l),
            (0, 0, 0, p, -p * c, -h - l * c, h * c - l, 0))


def so4c_basis(c) -> tuple:
    c = Fraction(c)
    return tuple(so4c_display(c, *u) for u in _units(6))


def lambda_image(alg: AmbientAlgebra, S: Subspace) -> Subspace:
    """Span of lambda(X) (flattened 8x8) for X in the so(7)-part of S."""
    lam = alg.model.lam
    return Subspace.span([[x for row in lam(b[:21]) for x in row] for b in S.basis], 64)


def flat8(M) -> tuple:
    return tuple(Fraction(x) for row in M for x in row)


__all__ = [
    "GaussianScalar", "f4_n4_letters_image", "f4_n4_normalizer_display", "flat8", "klmp_labels",
    "lambda_image", "so4c_basis", "so4c_display", "so_derived_display", "so_normalizer_display",
    "sp_corner", "sp_derived_lower_bound", "sp_normalizer_upper_bound", "su_derived_display",
    "su_normalizer_display",
]
