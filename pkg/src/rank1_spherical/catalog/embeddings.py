"""Compact matrix algebras used as the compact factors in the tables.

An algebra is a tuple of sparse matrices ``{(r, c): value}``. Real algebras
(subalgebras of so(d)) carry Fraction entries; complex ones (subalgebras of
u(d)) carry GaussianScalar entries.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..exact_linalg import GaussianScalar, MatrixQ, Subspace, kernel
from ..lie_ambient import (
    LAMBDA_DISPLAY,
    R8_ORDER,
    cm_bracket,
    octonion_left_matrix,
    so7_basis_matrix,
)

ONE = Fraction(1)
G = GaussianScalar
IM = G(Fraction(0), ONE)


class EmbeddingError(ValueError):
    pass


def _clean(M: dict) -> dict:
    return {k: v for k, v in M.items() if v}


# ---------------------------------------------------------------------------
# flattening to subspaces and back

def flatten_real(M: dict, d: int) -> tuple:
    return tuple(Fraction(M.get((r, c), 0)) for r in range(d) for c in range(d))


def flatten_complex(M: dict, d: int) -> tuple:
    out = []
    for r in range(d):
        for c in range(d):
            z = G.of(M.get((r, c), 0))
            out += [z.re, z.im]
    return tuple(out)


def real_span(mats, d: int) -> Subspace:
    return Subspace.span([flatten_real(M, d) for M in mats], d * d)


def complex_span(mats, d: int) -> Subspace:
    return Subspace.span([flatten_complex(M, d) for M in mats], 2 * d * d)


def real_matrices(S: Subspace, d: int) -> tuple:
    return tuple(_clean({(i // d, i % d): x for i, x in enumerate(b)}) for b in S.basis)


def complex_matrices(S: Subspace, d: int) -> tuple:
    out = []
    for b in S.basis:
        M = {}
        for idx in range(0, len(b), 2):
            z = G(b[idx], b[idx + 1])
            if z:
                M[divmod(idx // 2, d)] = z
        out.append(M)
    return tuple(out)


def to_matrixq(M: dict, d: int) -> MatrixQ:
    rows = []
    for r in range(d):
        row = []
        for c in range(d):
            x = M.get((r, c), 0)
            if isinstance(x, GaussianScalar):
                if x.im:
                    raise EmbeddingError("complex entry in a real matrix")
                x = x.re
            row.append(Fraction(x))
        rows.append(tuple(row))
    return MatrixQ(tuple(rows))


def realify(M: dict) -> dict:
    """x + iy at (r, c) becomes the 2x2 block [[x, -y], [y, x]] at (2r, 2c)."""
    out = {}
    for (r, c), z in M.items():
        z = G.of(z)
        for (dr, dc), v in (((0, 0), z.re), ((0, 1), -z.im), ((1, 0), z.im), ((1, 1), z.re)):
            if v:
                out[(2 * r + dr, 2 * c + dc)] = v
    return out


def is_closed(mats, d: int, complex_entries: bool) -> bool:
    span = complex_span(mats, d) if complex_entries else real_span(mats, d)
    flat = flatten_complex if complex_entries else flatten_real
    for i, A in enumerate(mats):
        for B in mats[i + 1:]:
            C = cm_bracket({k: G.of(v) for k, v in A.items()}, {k: G.of(v) for k, v in B.items()})
            if not complex_entries:
                C = {k: v.re for k, v in C.items()}
            if not span.contains_vector(flat(C, d)):
                return False
    return True


# ---------------------------------------------------------------------------
# classical families

def so_basis(d: int) -> tuple:
    """-E_ij + E_ji for i < j."""
    return tuple({(i, j): -ONE, (j, i): ONE} for i in range(d) for j in range(i + 1, d))


def su_basis(m: int) -> tuple:
    out = []
    for r in range(m):
        for c in range(r + 1, m):
            out.append({(r, c): G(ONE), (c, r): G(-ONE)})
            out.append({(r, c): IM, (c, r): IM})
    for r in range(m - 1):
        out.append({(r, r): IM, (r + 1, r + 1): -IM})
    return tuple(out)


def u_basis(m: int) -> tuple:
    return su_basis(m) + (center_u(m),)


def center_u(m: int) -> dict:
    return {(r, r): IM for r in range(m)}


def sp_basis_complex(m: int) -> tuple:
    """sp(m) as [[A, -conj B], [B, conj A]] in u(2m), A skew-hermitian, B symmetric."""
    out = []

    def add(A: dict, B: dict):
        M = {}
        for (r, c), z in A.items():
            M[(r, c)] = z
            M[(m + r, m + c)] = z.conj()
        for (r, c), z in B.items():
            M[(m + r, c)] = z
            M[(r, m + c)] = -z.conj()
        out.append(_clean(M))

    for A in u_basis(m):
        add(A, {})
    for r in range(m):
        for c in range(r, m):
            for s in (G(ONE), IM):
                B = {(r, c): s, (c, r): s}
                add({}, B)
    return tuple(out)


def sp_in_su_display(m: int) -> tuple:
    """sp(m) in the form [[A, B], [-conj B, conj A]] of the su(4) display."""
    out = []
    for M in sp_basis_complex(m):
        A = {(r, c): z for (r, c), z in M.items() if r < m and c < m}
        Bq = {(r - m, c): z for (r, c), z in M.items() if r >= m and c < m}
        N = {}
        for (r, c), z in A.items():
            N[(r, c)] = z
            N[(m + r, m + c)] = z.conj()
        for (r, c), z in Bq.items():
            N[(r, m + c)] = z
            N[(m + r, c)] = -z.conj()
        out.append(_clean(N))
    return tuple(out)


def su_in_so(m: int) -> tuple:
    return tuple(realify(M) for M in su_basis(m))


def u_in_so(m: int) -> tuple:
    return tuple(realify(M) for M in u_basis(m))


def sp_in_so(m: int) -> tuple:
    return tuple(realify(M) for M in sp_basis_complex(m))


def sp_s1_in_u(m: int) -> tuple:
    return sp_basis_complex(m) + (center_u(2 * m),)


# ---------------------------------------------------------------------------
# octonionic algebras

@lru_cache(maxsize=None)
def spin7_in_so8() -> tuple:
    """Images of the so(7) basis under the displayed spin(7) -> so(8) map."""
    out = []
    for M in LAMBDA_DISPLAY:
        out.append(_clean({(r, c): M[r][c] for r in range(8) for c in range(8)}))
    return tuple(out)


@lru_cache(maxsize=None)
def g2_in_so7() -> tuple:
    """Kernel of X -> lambda(X) e_0 inside so(7)."""
    e0 = R8_ORDER.index(0)
    # column e0 of lambda(X) is linear in the so(7) coordinates
    rows = [[LAMBDA_DISPLAY[t][r][e0] for t in range(21)] for r in range(8)]
    K = kernel(MatrixQ.of(rows))
    out = []
    for v in K.basis:
        M = {}
        for t, x in enumerate(v):
            if x:
                B = so7_basis_matrix(t)
                for r in range(7):
                    for c in range(7):
                        if B[r][c]:
                            M[(r, c)] = M.get((r, c), 0) + x * B[r][c]
        out.append(_clean(M))
    return tuple(out)


@lru_cache(maxsize=None)
def spin9_gammas() -> tuple:
    """Nine symmetric anticommuting 16x16 matrices squaring to the identity."""
    Ms = [octonion_left_matrix(i) for i in range(1, 8)]
    Ms.append(tuple(tuple(Fraction(int(r == c)) for c in range(8)) for r in range(8)))
    gammas = []
    for M in Ms:
        g = {}
        for r in range(8):
            for c in range(8):
                if M[r][c]:
                    g[(r, 8 + c)] = M[r][c]
                    g[(8 + c, r)] = M[r][c]
        gammas.append(g)
    gammas.append({**{(r, r): ONE for r in range(8)}, **{(r, r): -ONE for r in range(8, 16)}})
    return tuple(gammas)


def _rmul(A: dict, B: dict) -> dict:
    rows_b: dict = {}
    for (r, c), v in B.items():
        rows_b.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, k), a in A.items():
        for c, b in rows_b.get(k, ()):
            out[(r, c)] = out.get((r, c), 0) + a * b
    return _clean(out)


def check_clifford(gammas, d: int):
    for i, A in enumerate(gammas):
        if any(A.get((c, r), 0) != v for (r, c), v in A.items()):
            raise EmbeddingError(f"gamma {i} is not symmetric")
        for j, B in enumerate(gammas):
            AB, BA = _rmul(A, B), _rmul(B, A)
            S = {k: AB.get(k, 0) + BA.get(k, 0) for k in set(AB) | set(BA)}
            want = {(r, r): Fraction(2) for r in range(d)} if i == j else {}
            if _clean(S) != want:
                raise EmbeddingError(f"gammas {i}, {j} violate the Clifford relation")


@lru_cache(maxsize=None)
def spin9_in_so16() -> tuple:
    gammas = spin9_gammas()
    check_clifford(gammas, 16)
    return tuple(_rmul(gammas[i], gammas[j]) for i in range(9) for j in range(i + 1, 9))


# ---------------------------------------------------------------------------
# so(4) = sp(1) + sp(1) acting on H = R^4 by x -> a x - x b

def _quat_mul_matrix(q, side: str) -> dict:
    """Matrix of x -> q x (side 'L') or x -> x q (side 'R') on H with basis 1, i, j, k."""
    # reuse the octonion table restricted to e0..e3 (a quaternion subalgebra)
    from ..lie_ambient import OCTONION_TABLE

    M = {}
    for col in range(4):
        for t, a in enumerate(q):
            if not a:
                continue
            s, k = OCTONION_TABLE[t][col] if side == "L" else OCTONION_TABLE[col][t]
            M[(k, col)] = M.get((k, col), 0) + s * a
    return _clean(M)


IMAG_UNITS = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def left_sp1() -> tuple:
    return tuple(_quat_mul_matrix(q, "L") for q in IMAG_UNITS)


def right_sp1() -> tuple:
    return tuple(_clean({k: -v for k, v in _quat_mul_matrix(q, "R").items()}) for q in IMAG_UNITS)


def l2_choice(kind: str) -> tuple:
    """Representatives of connected subgroups L_2 of Sp(1): trivial, torus, everything."""
    return {"0": (), "torus": (IMAG_UNITS[0],), "sp1": IMAG_UNITS}[kind]


def sp1_x_l2_in_so4(l2: str, order: str = "sp1,l2") -> tuple:
    """p(Sp(1) x L_2) (order 'sp1,l2') or p(L_2 x Sp(1)) (order 'l2,sp1')."""
    qs = l2_choice(l2)
    if order == "sp1,l2":
        return left_sp1() + tuple(_clean({k: -v for k, v in _quat_mul_matrix(q, "R").items()}) for q in qs)
    if order == "l2,sp1":
        return tuple(_quat_mul_matrix(q, "L") for q in qs) + right_sp1()
    raise EmbeddingError(f"unknown order {order!r}")


def delta_sp1_in_so4() -> tuple:
    """x -> a x - x a: the isotropy algebra of the real unit."""
    out = []
    for q in IMAG_UNITS:
        L, R = _quat_mul_matrix(q, "L"), _quat_mul_matrix(q, "R")
        out.append(_clean({k: L.get(k, 0) - R.get(k, 0) for k in set(L) | set(R)}))
    return tuple(out)


def so4_ideals(indices=(0, 1, 2, 3)) -> tuple:
    """The two sp(1) ideals of so(4) on the given four coordinates (left, right)."""
    def place(M):
        return {(indices[r], indices[c]): v for (r, c), v in M.items()}
    return tuple(place(M) for M in left_sp1()), tuple(place(M) for M in right_sp1())


# ---------------------------------------------------------------------------
# su(4) -> so(8) as displayed, and sp(2) -> su(4)

def su4_in_so8_display(M: dict) -> dict:
    """Realification used by the su(4) -> so(8) display (equal to :func:`realify`)."""
    return realify(M)


def sp2_in_su4() -> tuple:
    return sp_in_su_display(2)


def block_diag(mats_a, da: int, mats_b, db: int) -> tuple:
    out = [dict(M) for M in mats_a]
    out += [{(r + da, c + da): v for (r, c), v in M.items()} for M in mats_b]
    return tuple(out)


def shift(mats, offset: int) -> tuple:
    return tuple({(r + offset, c + offset): v for (r, c), v in M.items()} for M in mats)


# ---------------------------------------------------------------------------
# registry

EXPECTED_DIMS = {
    "su_in_so": lambda m: m * m - 1,
    "u_in_so": lambda m: m * m,
    "sp_in_so": lambda m: m * (2 * m + 1),
    "su": lambda m: m * m - 1,
    "u": lambda m: m * m,
    "sp_in_su": lambda m: m * (2 * m + 1),
    "so": lambda d: d * (d - 1) // 2,
    "spin7_in_so8": lambda: 21,
    "g2_in_so7": lambda: 14,
    "spin9_in_so16": lambda: 36,
    "so4c_in_f4model": lambda c: 6,
}


def make_embedding(name: str, *args, **kwargs) -> tuple:
    """Return ``(matrices, size, is_complex)`` after checking closure and dimension."""
    if name == "su_in_so":
        (m,) = args
        mats, d, cx = su_in_so(m), 2 * m, False
    elif name == "u_in_so":
        (m,) = args
        mats, d, cx = u_in_so(m), 2 * m, False
    elif name == "sp_in_so":
        (m,) = args
        mats, d, cx = sp_in_so(m), 4 * m, False
    elif name == "su":
        (m,) = args
        mats, d, cx = su_basis(m), m, True
    elif name == "u":
        (m,) = args
        mats, d, cx = u_basis(m), m, True
    elif name == "sp_in_su":
        (m,) = args
        mats, d, cx = sp_basis_complex(m), 2 * m, True
    elif name == "sp2_in_su4":
        mats, d, cx = sp2_in_su4(), 4, True
    elif name == "so":
        (d,) = args
        mats, cx = so_basis(d), False
    elif name == "spin7_in_so8":
        mats, d, cx = spin7_in_so8(), 8, False
    elif name == "g2_in_so7":
        mats, d, cx = g2_in_so7(), 7, False
    elif name == "spin9_in_so16":
        mats, d, cx = spin9_in_so16(), 16, False
    elif name == "sp1_x_l2_in_so4":
        mats, d, cx = sp1_x_l2_in_so4(kwargs.get("l2", "torus"), kwargs.get("order", "sp1,l2")), 4, False
    elif name == "delta_sp1_in_so4":
        mats, d, cx = delta_sp1_in_so4(), 4, False
    elif name == "so4c_in_f4model":
        from .displays import so4c_basis

        (c,) = args
        mats = tuple(_clean({(r, col): Fraction(x) for r, row in enumerate(M) for col, x in enumerate(row)})
                     for M in so4c_basis(c))
        d, cx = 8, False
    else:
        raise EmbeddingError(f"unknown embedding {name!r}")
    span = complex_span(mats, d) if cx else real_span(mats, d)
    if name in EXPECTED_DIMS:
        want = EXPECTED_DIMS[name](*args)
        if span.dim != want:
            raise EmbeddingError(f"{name}{args}: dimension {span.dim}, expected {want}")
    if not is_closed(list(mats), d, cx):
        raise EmbeddingError(f"{name}{args} is not closed under the bracket")
    return mats, d, cx
