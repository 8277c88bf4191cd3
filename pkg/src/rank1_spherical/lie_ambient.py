"""The ambient rank-one algebras so(n,1), su(n,1), sp(n,1) and the f4 parabolic model.

Matrix algebras are cut out of gl(N, C) by real linear constraints on the
realified entries (entry (r, c) contributes coordinates ``2*(r*N+c)`` for the
real part and ``+1`` for the imaginary part). The reduced echelon basis of the
constraint kernel is the basis of g, and an element's coordinates are its
realified entries at the pivot columns of that basis.

All subspaces handed out by an :class:`AmbientAlgebra` live in these
g-coordinates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact_linalg import (
    GaussianScalar,
    MatrixQ,
    Subspace,
    _kernel_sparse,
    _sparse,
    dot,
    intersection,
    kernel,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class FamilyConstraintError(ValueError):
    pass


class ClosureViolation(ValueError):
    """A matrix that should lie in g does not satisfy the defining constraints."""


class Tag(enum.Enum):
    SO = "so"
    SU = "su"
    SP = "sp"
    F4_PARABOLIC_MODEL = "f4-model"


@dataclass(frozen=True)
class AlgebraFamily:
    tag: Tag
    n: int | None = None

    def __post_init__(self):
        lo = {Tag.SO: 3, Tag.SU: 1, Tag.SP: 2}.get(self.tag)
        if self.tag is Tag.F4_PARABOLIC_MODEL:
            if self.n is not None:
                raise FamilyConstraintError("the f4 model takes no n")
        elif self.n is None or self.n < lo:
            raise FamilyConstraintError(f"{self.tag.value}(n,1) requires n >= {lo}, got {self.n}")

    @property
    def label(self) -> str:
        if self.tag is Tag.F4_PARABOLIC_MODEL:
            return "f4-model"
        return f"{self.tag.value}({self.n},1)"


def SO(n):
    return AlgebraFamily(Tag.SO, n)


def SU(n):
    return AlgebraFamily(Tag.SU, n)


def SP(n):
    return AlgebraFamily(Tag.SP, n)


F4 = AlgebraFamily(Tag.F4_PARABOLIC_MODEL)


# ---------------------------------------------------------------------------
# sparse complex matrices: dict (r, c) -> GaussianScalar

def cm(entries: dict) -> dict:
    return {k: GaussianScalar.of(v) for k, v in entries.items() if v}


def cm_from_dense(rows) -> dict:
    out = {}
    for r, row in enumerate(rows):
        for c, x in enumerate(row):
            x = GaussianScalar.of(x)
            if x:
                out[(r, c)] = x
    return out


def cm_to_dense(M: dict, N: int):
    z = GaussianScalar()
    return tuple(tuple(M.get((r, c), z) for c in range(N)) for r in range(N))


def cm_add(A: dict, B: dict, s=1) -> dict:
    out = dict(A)
    for k, v in B.items():
        w = out.get(k, GaussianScalar()) + (v if s == 1 else v * s)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def cm_scale(A: dict, s) -> dict:
    s = GaussianScalar.of(s)
    return {k: v * s for k, v in A.items() if v * s}


def cm_mul(A: dict, B: dict) -> dict:
    rows_b: dict = {}
    for (r, c), v in B.items():
        rows_b.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, k), a in A.items():
        for c, b in rows_b.get(k, ()):
            out[(r, c)] = out.get((r, c), GaussianScalar()) + a * b
    return {k: v for k, v in out.items() if v}


def cm_bracket(A: dict, B: dict) -> dict:
    return cm_add(cm_mul(A, B), cm_mul(B, A), -1)


def cm_conj_transpose(A: dict) -> dict:
    return {(c, r): v.conj() for (r, c), v in A.items()}


def realify(M: dict, N: int) -> dict:
    out = {}
    for (r, c), v in M.items():
        base = 2 * (r * N + c)
        if v.re:
            out[base] = v.re
        if v.im:
            out[base + 1] = v.im
    return out


def unrealify(vec: dict, N: int) -> dict:
    out: dict = {}
    for idx, x in vec.items():
        rc, part = divmod(idx, 2)
        key = divmod(rc, N)
        cur = out.get(key, GaussianScalar())
        out[key] = GaussianScalar(cur.re + x, cur.im) if part == 0 else GaussianScalar(cur.re, cur.im + x)
    return {k: v for k, v in out.items() if v}


def phi_quaternion(A, B, C, D):
    """Complex 2n x 2n image of the quaternionic matrix A + iB + jC + kD.

    Returns a dense tuple of rows of GaussianScalars laid out as
    ``[[A+iB, -C-iD], [C-iD, A-iB]]``.
    """
    n = len(A)
    for M in (B, C, D):
        if len(M) != n or any(len(r) != len(A[0]) for r in M):
            raise ValueError("quaternion components must have equal shapes")
    m = len(A[0])
    g = GaussianScalar
    rows = []
    for r in range(n):
        rows.append(tuple(g(Fraction(A[r][c]), Fraction(B[r][c])) for c in range(m))
                    + tuple(g(-Fraction(C[r][c]), -Fraction(D[r][c])) for c in range(m)))
    for r in range(n):
        rows.append(tuple(g(Fraction(C[r][c]), -Fraction(D[r][c])) for c in range(m))
                    + tuple(g(Fraction(A[r][c]), -Fraction(B[r][c])) for c in range(m)))
    return tuple(rows)


# ---------------------------------------------------------------------------
# octonions and the spin(7) -> so(8) map

# row e_i, column e_j holds e_i * e_j as (sign, index)
_OCT = """
0 1 2 3 4 5 6 7
1 -0 3 -2 5 -4 -7 6
2 -3 -0 1 6 7 -4 -5
3 2 -1 -0 7 -6 5 -4
4 -5 -6 -7 -0 1 2 3
5 4 -7 6 -1 -0 -3 2
6 7 4 -5 -2 3 -0 -1
7 -6 5 4 -3 -2 1 -0
"""


def _parse_octonion_table():
    table = []
    for line in _OCT.strip().splitlines():
        row = []
        for tok in line.split():
            sign = -1 if tok.startswith("-") else 1
            row.append((sign, int(tok.lstrip("-"))))
        table.append(tuple(row))
    return tuple(table)


OCTONION_TABLE = _parse_octonion_table()


def octonion_mul(x: Sequence, y: Sequence) -> tuple:
    """Product of octonions given in the basis e0..e7."""
    out = [ZERO] * 8
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if b:
                s, k = OCTONION_TABLE[i][j]
                out[k] += s * a * b
    return tuple(out)


# R^8 is ordered e1, ..., e7, e0
R8_ORDER = (1, 2, 3, 4, 5, 6, 7, 0)


def octonion_left_matrix(i: int) -> tuple:
    """Matrix of x -> e_i x on R^8 in the basis e1..e7, e0."""
    cols = []
    for k in R8_ORDER:
        e = [ZERO] * 8
        e[k] = ONE
        prod = octonion_mul(tuple(ONE if t == i else ZERO for t in range(8)), e)
        cols.append(tuple(prod[t] for t in R8_ORDER))
    return tuple(tuple(cols[c][r] for c in range(8)) for r in range(8))


SO7_LETTERS = "abcdefghijklmnpqrstuv"
SO7_PAIRS = tuple((i, j) for i in range(7) for j in range(i + 1, 7))  # letter order

# spin(7) -> so(8), entries as signed sums of the so(7) letters
_LAMBDA = """
0 | -a+s-t | -b-r-u | -c-k+n | -d+j+p | -e-i-l | -f+h-m | g+q-v
a-s+t | 0 | -g+q-v | f-h-m | -e-i+l | d-j+p | -c-k-n | -b+r+u
b+r+u | g-q+v | 0 | -e+i-l | -f-h-m | c-k-n | d+j-p | a+s-t
c+k-n | -f+h+m | e-i+l | 0 | g-q-v | -b-r+u | a-s-t | -d-j-p
d-j-p | e+i-l | f+h+m | -g+q+v | 0 | -a-s-t | -b+r-u | c-k+n
e+i+l | -d+j-p | -c+k+n | b+r-u | a+s+t | 0 | -g-q-v | f+h-m
f-h+m | c+k+n | -d-j+p | -a+s+t | b-r+u | g+q+v | 0 | -e+i+l
-g-q+v | b-r-u | -a-s+t | d+j+p | -c+k-n | -f-h+m | e-i-l | 0
"""


def parse_signed_sum(expr: str) -> dict:
    """``"-a+s-t"`` -> {"a": -1, "s": 1, "t": -1}."""
    expr = expr.replace(" ", "")
    out: dict = {}
    if expr == "0":
        return out
    sign, i = 1, 0
    while i < len(expr):
        ch = expr[i]
        if ch in "+-":
            sign = 1 if ch == "+" else -1
            i += 1
            continue
        out[ch] = out.get(ch, 0) + sign
        sign = 1
        i += 1
    return out


def _parse_lambda():
    rows = [[parse_signed_sum(x) for x in line.split("|")] for line in _LAMBDA.strip().splitlines()]
    images = []
    for letter in SO7_LETTERS:
        images.append(tuple(tuple(Fraction(rows[r][c].get(letter, 0)) for c in range(8))
                            for r in range(8)))
    return tuple(images)


LAMBDA_DISPLAY = _parse_lambda()  # 21 matrices, one per so(7) basis element


def so7_basis_matrix(idx: int) -> tuple:
    """The so(7) basis element -E_ij + E_ji for the idx-th pair (i < j)."""
    i, j = SO7_PAIRS[idx]
    return tuple(tuple(Fraction(-1 if (r, c) == (i, j) else 1 if (r, c) == (j, i) else 0)
                       for c in range(7)) for r in range(7))


# ---------------------------------------------------------------------------
# the algebra object

class AmbientAlgebra:
    """A constructed real Lie algebra with its rank-one structure.

    ``distinguished`` holds the subspaces ``g, k, p, m, a, n_nil, g_alpha,
    g_2alpha`` (k and p are absent for the f4 model). Coordinates are with
    respect to ``basis_g`` (matrix families) or the model basis
    ``so(7) | a | R^8 | R^7`` (f4 model).
    """

    def __init__(self, family, dim, sc, gram_g, distinguished, a0, alpha_eigenvalue,
                 matrix_size=None, basis_g=None, pivots=None, model=None):
        self.family = family
        self.dim = dim
        self._sc = sc
        self.gram_g = gram_g
        self.distinguished = distinguished
        self.a0 = a0
        self.alpha_eigenvalue = alpha_eigenvalue
        self.matrix_size = matrix_size
        self.basis_g = basis_g
        self.pivots = pivots
        self.model = model
        self.real_dim = dim

    def __repr__(self):
        return f"<AmbientAlgebra {self.family.label} dim={self.dim}>"

    def __getitem__(self, name) -> Subspace:
        return self.distinguished[name]

    @property
    def is_model(self) -> bool:
        return self.family.tag is Tag.F4_PARABOLIC_MODEL

    # -- coordinates ---------------------------------------------------------
    def zero(self) -> tuple:
        return (ZERO,) * self.dim

    def unit(self, i: int) -> tuple:
        return tuple(ONE if t == i else ZERO for t in range(self.dim))

    def coords_of_matrix(self, M: dict) -> tuple:
        if self.basis_g is None:
            raise TypeError("the f4 model has no matrix realization")
        N = self.matrix_size
        vec = realify(M, N)
        coords = tuple(Fraction(vec.get(p, 0)) for p in self.pivots)
        rebuilt = {}
        for c, (p, row) in zip(coords, self._rows):
            if c:
                for k, x in row.items():
                    y = rebuilt.get(k, 0) + c * x
                    if y:
                        rebuilt[k] = y
                    else:
                        rebuilt.pop(k, None)
        if rebuilt != vec:
            raise ClosureViolation("matrix does not satisfy the defining constraints of "
                                   + self.family.label)
        return coords

    def matrix(self, coords: Sequence) -> dict:
        if self.basis_g is None:
            raise TypeError("the f4 model has no matrix realization")
        vec: dict = {}
        for c, (_, row) in zip(coords, self._rows):
            if c:
                for k, x in row.items():
                    vec[k] = vec.get(k, 0) + c * x
        return unrealify({k: v for k, v in vec.items() if v}, self.matrix_size)

    # -- bracket -------------------------------------------------------------
    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        sc = self._sc
        for i, a in xs:
            row = sc[i]
            for j, b in ys:
                if i == j:
                    continue
                entry = row[j] if i < j else sc[j][i]
                if not entry:
                    continue
                f = a * b if i < j else -a * b
                for k, c in entry.items():
                    out[k] += f * c
        return tuple(out)

    def structure_constant(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if i < j:
            return dict(self._sc[i][j])
        return {k: -v for k, v in self._sc[j][i].items()}

    def ad_matrix(self, x: Sequence) -> MatrixQ:
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return MatrixQ(tuple(tuple(cols[j][i] for j in range(self.dim)) for i in range(self.dim)))

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return dot(x, self.gram_g.apply(y))


# ---------------------------------------------------------------------------
# construction of the matrix families

def _J(family) -> list:
    n = family.n
    if family.tag is Tag.SP:
        return [1] * n + [-1] + [1] * n + [-1]
    return [1] * n + [-1]


def _constraints(family) -> tuple[int, list]:
    tag, n = family.tag, family.n
    N = 2 * (n + 1) if tag is Tag.SP else n + 1
    J = _J(family)

    def re(r, c):
        return 2 * (r * N + c)

    def im(r, c):
        return 2 * (r * N + c) + 1

    rows = []

    def eq(terms):
        d = {}
        for k, v in terms:
            d[k] = d.get(k, 0) + v
        d = {k: Fraction(v) for k, v in d.items() if v}
        if d:
            rows.append(d)

    if tag is Tag.SO:
        for r in range(N):
            for c in range(N):
                eq([(im(r, c), 1)])
                if r <= c:
                    eq([(re(c, r), J[c]), (re(r, c), J[r])])
    elif tag is Tag.SU:
        # X^* J + J X = 0 and tr X = 0
        for r in range(N):
            for c in range(r, N):
                eq([(re(c, r), J[c]), (re(r, c), J[r])])
                eq([(im(c, r), -J[c]), (im(r, c), J[r])])
        eq([(re(r, r), 1) for r in range(N)])
        eq([(im(r, r), 1) for r in range(N)])
    elif tag is Tag.SP:
        h = n + 1  # size of the P and Q blocks
        # X = [[P, -conj Q], [Q, conj P]]
        for r in range(h):
            for c in range(h):
                eq([(re(h + r, h + c), 1), (re(r, c), -1)])
                eq([(im(h + r, h + c), 1), (im(r, c), 1)])
                eq([(re(r, h + c), 1), (re(h + r, c), 1)])
                eq([(im(r, h + c), 1), (im(h + r, c), -1)])
        Jh = J[:h]
        for r in range(h):
            for c in range(r, h):
                # P^* J + J P = 0
                eq([(re(c, r), Jh[c]), (re(r, c), Jh[r])])
                eq([(im(c, r), -Jh[c]), (im(r, c), Jh[r])])
        for r in range(h):
            for c in range(h):
                # J Q - Q^t J = 0, Q sits at rows h.., cols 0..
                if r <= c:
                    eq([(re(h + r, c), Jh[r]), (re(h + c, r), -Jh[c])])
                    eq([(im(h + r, c), Jh[r]), (im(h + c, r), -Jh[c])])
    else:
        raise ValueError(tag)
    return N, rows


def _real_dim_formula(family) -> int:
    n = family.n
    return {Tag.SO: (n + 1) * n // 2,
            Tag.SU: (n + 1) ** 2 - 1,
            Tag.SP: (n + 1) * (2 * n + 3)}[family.tag]


def standard_a0_matrix(family) -> dict:
    """The generator of a chosen in the displays of the non-reductive sections."""
    n = family.n
    if family.tag in (Tag.SO, Tag.SU):
        return cm({(n - 1, n): 1, (n, n - 1): 1})
    if family.tag is Tag.SP:
        # z = e_1: entries (0, n), (n, 0), and the conjugate copies
        return cm({(0, n): 1, (n, 0): 1, (n + 1, 2 * n + 1): 1, (2 * n + 1, n + 1): 1})
    raise ValueError(family)


def _eigenspace(ad: MatrixQ, t) -> Subspace:
    n = ad.rows
    shifted = MatrixQ(tuple(tuple(ad.entries[i][j] - (t if i == j else 0) for j in range(n))
                            for i in range(n)))
    return kernel(shifted)


def _finish(alg: AmbientAlgebra, k: Subspace | None, p: Subspace | None, a: Subspace,
            m: Subspace, g_alpha: Subspace, g_2alpha: Subspace):
    alg.distinguished = {
        "g": Subspace.full(alg.dim),
        "k": k,
        "p": p,
        "m": m,
        "a": a,
        "n_nil": g_alpha + g_2alpha,
        "g_alpha": g_alpha,
        "g_2alpha": g_2alpha,
    }
    if k is None:
        del alg.distinguished["k"], alg.distinguished["p"]
        alg.gram_p = None
    else:
        alg.gram_p = invariant_gram(alg, "p")
    alg.gram_n = invariant_gram(alg, "n_nil")


def _build_matrix_algebra(family) -> AmbientAlgebra:
    N, cons = _constraints(family)
    ncoords = 2 * N * N
    ker = kernel_rows = _kernel_sparse(cons, ncoords)
    basis_space = Subspace.from_sparse(ker, ncoords)
    rows = [(piv, _sparse(b)) for piv, b in zip(basis_space.pivots(), basis_space.basis)]
    del kernel_rows
    dim = len(rows)
    if dim != _real_dim_formula(family):
        raise ClosureViolation(f"{family.label}: constraint kernel has dimension {dim}, "
                               f"expected {_real_dim_formula(family)}")
    basis_g = tuple(unrealify(r, N) for _, r in rows)
    pivots = tuple(p for p, _ in rows)
    alg = AmbientAlgebra(family, dim, None, None, {}, None, None,
                         matrix_size=N, basis_g=basis_g, pivots=pivots)
    alg._rows = rows

    sc = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            br = cm_bracket(basis_g[i], basis_g[j])
            c = alg.coords_of_matrix(br) if br else alg.zero()
            sc[i][j] = {k: v for k, v in enumerate(c) if v}
    alg._sc = sc

    # invariant form Re tr(X^* Y) is the dot product of realified entries
    real_rows = [r for _, r in rows]
    gram = [[ZERO] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            a, b = real_rows[i], real_rows[j]
            if len(a) > len(b):
                a, b = b, a
            s = sum((x * b[k] for k, x in a.items() if k in b), ZERO)
            gram[i][j] = gram[j][i] = s
    alg.gram_g = MatrixQ(tuple(tuple(r) for r in gram))

    # Cartan involution theta(X) = -X^*
    theta_cols = [alg.coords_of_matrix(cm_scale(cm_conj_transpose(B), -1)) for B in basis_g]
    T = MatrixQ(tuple(tuple(theta_cols[j][i] for j in range(dim)) for i in range(dim)))
    k = _eigenspace(T, 1)
    p = _eigenspace(T, -1)

    a0 = alg.coords_of_matrix(standard_a0_matrix(family))
    alg.a0 = a0
    a = Subspace.span([a0])
    ad = alg.ad_matrix(a0)
    g1 = _eigenspace(ad, 1)
    g2 = _eigenspace(ad, 2)
    alg.alpha_eigenvalue = Fraction(1)
    centre_a = kernel(ad)
    m = intersection(centre_a, k)
    _finish(alg, k, p, a, m, g1, g2)
    return alg


# ---------------------------------------------------------------------------
# f4 parabolic model: m = so(7), a, g_alpha = R^8 (via lambda), g_2alpha = R^7

def _mat_mul(A, B):
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(len(B)) if A[i][k] and B[k][j]), ZERO)
                       for j in range(len(B[0]))) for i in range(len(A)))


def _mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def _mat_comm(A, B):
    return _mat_sub(_mat_mul(A, B), _mat_mul(B, A))


def _so7_coords(X) -> tuple:
    """Coordinates of a skew 7x7 matrix in the basis -E_ij + E_ji (i < j)."""
    return tuple(Fraction(X[j][i]) for i, j in SO7_PAIRS)


def _lambda_scale() -> Fraction:
    """Scalar s such that s * (displayed map) is a Lie algebra homomorphism."""
    X, Y = so7_basis_matrix(0), so7_basis_matrix(6)  # a and g
    lx, ly = LAMBDA_DISPLAY[0], LAMBDA_DISPLAY[6]
    Z = _so7_coords(_mat_comm(X, Y))
    lz = tuple(tuple(sum((c * LAMBDA_DISPLAY[t][r][col] for t, c in enumerate(Z) if c), ZERO)
                     for col in range(8)) for r in range(8))
    comm = _mat_comm(lx, ly)
    # comm = s * lz  (for the homomorphism s*lambda, [s lx, s ly] = s lz  =>  s = lz/comm)
    for r in range(8):
        for c in range(8):
            if comm[r][c]:
                return lz[r][c] / comm[r][c]
    raise ClosureViolation("lambda bracket degenerate")


class F4Model:
    """Data of the f4 parabolic model, kept alongside the AmbientAlgebra."""

    def __init__(self):
        s = _lambda_scale()
        self.lambda_scale = s
        self.lambda_images = tuple(tuple(tuple(s * x for x in row) for row in M) for M in LAMBDA_DISPLAY)
        self.so7_basis = tuple(so7_basis_matrix(t) for t in range(21))
        self.octonion_table = OCTONION_TABLE
        self.Lambda = None  # bracket g_alpha x g_alpha -> g_2alpha, filled in by f4_model()

    def lam(self, coords: Sequence) -> tuple:
        return tuple(tuple(sum((c * self.lambda_images[t][r][col] for t, c in enumerate(coords) if c), ZERO)
                           for col in range(8)) for r in range(8))


M_SLICE = slice(0, 21)
A_INDEX = 21
GA_SLICE = slice(22, 30)
G2A_SLICE = slice(30, 37)


def _solve_Lambda(model: F4Model):
    """Spin(7)-equivariant map so(8) -> R^7, unique up to scale.

    Returns a 7 x 28 rational matrix T acting on the coordinates of x ^ y
    (pairs r < c of R^8) so that T(lambda(X) . W) = X T(W).
    """
    pairs8 = [(r, c) for r in range(8) for c in range(r + 1, 8)]
    pidx = {p: i for i, p in enumerate(pairs8)}

    def wedge_coords(M):  # skew 8x8 -> coords on pairs: entry (r,c), r<c
        return [M[r][c] for r, c in pairs8]

    def unit_skew(t):
        r, c = pairs8[t]
        return tuple(tuple(ONE if (i, j) == (r, c) else -ONE if (i, j) == (c, r) else ZERO
                           for j in range(8)) for i in range(8))

    units = [unit_skew(t) for t in range(28)]
    nunk = 7 * 28  # unknown T[a][t] at index a*28 + t
    eqs = []
    for g in range(21):
        L = model.lambda_images[g]
        X = model.so7_basis[g]
        # action on so(8): W -> [L, W]; on R^7: y -> X y
        for t in range(28):
            image = wedge_coords(_mat_comm(L, units[t]))
            # (T . ad_L)(unit_t) - X . T(unit_t) = 0, for every output row a
            for a in range(7):
                row = {}
                for s, v in enumerate(image):
                    if v:
                        row[a * 28 + s] = row.get(a * 28 + s, 0) + v
                for b in range(7):
                    if X[a][b]:
                        row[b * 28 + t] = row.get(b * 28 + t, 0) - X[a][b]
                row = {k: Fraction(v) for k, v in row.items() if v}
                if row:
                    eqs.append(row)
    sol = Subspace.from_sparse(_kernel_sparse(eqs, nunk), nunk)
    if sol.dim != 1:
        raise ClosureViolation(f"equivariant map so(8) -> R^7 space has dim {sol.dim}, expected 1")
    v = sol.basis[0]
    T = tuple(tuple(v[a * 28 + t] for t in range(28)) for a in range(7))
    return T, pidx


def _build_f4_model() -> AmbientAlgebra:
    model = F4Model()
    T, pidx = _solve_Lambda(model)

    def Lambda(x, y):
        out = [ZERO] * 7
        for r in range(8):
            for c in range(r + 1, 8):
                w = x[r] * y[c] - x[c] * y[r]
                if w:
                    t = pidx[(r, c)]
                    for a in range(7):
                        if T[a][t]:
                            out[a] += T[a][t] * w
        return tuple(out)

    model.Lambda = Lambda
    model.Lambda_matrix = T
    dim = 37
    units = [tuple(ONE if t == i else ZERO for t in range(dim)) for i in range(dim)]

    def raw_bracket(x, y):
        X = _so7_matrix(x[M_SLICE])
        Y = _so7_matrix(y[M_SLICE])
        out = [ZERO] * dim
        out[M_SLICE] = _so7_coords(_mat_comm(X, Y))
        lx, ly = model.lam(x[M_SLICE]), model.lam(y[M_SLICE])
        xa, ya = x[A_INDEX], y[A_INDEX]
        u, v = x[GA_SLICE], y[GA_SLICE]
        p, q = x[G2A_SLICE], y[G2A_SLICE]
        ga = [sum((lx[r][c] * v[c] for c in range(8)), ZERO) - sum((ly[r][c] * u[c] for c in range(8)), ZERO)
              + xa * v[r] - ya * u[r] for r in range(8)]
        lam = Lambda(u, v)
        g2a = [sum((X[r][c] * q[c] for c in range(7)), ZERO) - sum((Y[r][c] * p[c] for c in range(7)), ZERO)
               + 2 * xa * q[r] - 2 * ya * p[r] + lam[r] for r in range(7)]
        out[GA_SLICE] = ga
        out[G2A_SLICE] = g2a
        return tuple(out)

    sc = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            c = raw_bracket(units[i], units[j])
            sc[i][j] = {k: v for k, v in enumerate(c) if v}
    gram = MatrixQ.diag([2] * 21 + [2] + [1] * 15)
    a0 = units[A_INDEX]
    alg = AmbientAlgebra(F4, dim, sc, gram, {}, a0, Fraction(1), model=model)

    def span_idx(sl):
        return Subspace.span([units[i] for i in range(sl.start, sl.stop)], dim)

    _finish(alg, None, None, Subspace.span([a0]), span_idx(M_SLICE), span_idx(GA_SLICE),
            span_idx(G2A_SLICE))
    return alg


def _so7_matrix(coords) -> tuple:
    X = [[ZERO] * 7 for _ in range(7)]
    for (i, j), c in zip(SO7_PAIRS, coords):
        if c:
            X[i][j] -= c
            X[j][i] += c
    return tuple(tuple(r) for r in X)


def f4_element(alg: AmbientAlgebra, so7=None, a=0, x=None, y=None) -> tuple:
    """Model element from parts: so(7) matrix or coords, a-coefficient, R^8 and R^7 vectors."""
    out = [ZERO] * 37
    if so7 is not None:
        c = _so7_coords(so7) if len(so7) == 7 and isinstance(so7[0], (tuple, list)) else so7
        out[M_SLICE] = [Fraction(t) for t in c]
    out[A_INDEX] = Fraction(a)
    if x is not None:
        out[GA_SLICE] = [Fraction(t) for t in x]
    if y is not None:
        out[G2A_SLICE] = [Fraction(t) for t in y]
    return tuple(out)


# ---------------------------------------------------------------------------
# public operations

@lru_cache(maxsize=None)
def construct_algebra(family: AlgebraFamily) -> AmbientAlgebra:
    if family.tag is Tag.F4_PARABOLIC_MODEL:
        return _build_f4_model()
    return _build_matrix_algebra(family)


def f4_model() -> AmbientAlgebra:
    return construct_algebra(F4)


@dataclass(frozen=True)
class Element:
    algebra: AmbientAlgebra
    coords: tuple

    def matrix(self) -> dict:
        return self.algebra.matrix(self.coords)


def bracket(alg: AmbientAlgebra, X, Y):
    """Bracket of two elements; accepts Elements, coordinate tuples, or sparse matrices."""
    def coords(Z):
        if isinstance(Z, Element):
            if Z.algebra is not alg:
                raise ValueError("elements belong to different algebras")
            return Z.coords
        if isinstance(Z, dict):
            return alg.coords_of_matrix(Z)
        return tuple(Z)

    x, y = coords(X), coords(Y)
    out = alg.bracket(x, y)
    if alg.basis_g is not None and (isinstance(X, dict) or isinstance(Y, dict)):
        # closure check against the raw matrix commutator
        alg.coords_of_matrix(cm_bracket(alg.matrix(x), alg.matrix(y)))
    return Element(alg, out) if isinstance(X, Element) else out


def invariant_gram(alg: AmbientAlgebra, selector: str) -> MatrixQ:
    """Gram matrix of <X, Y> = Re tr(X^* Y) on the stored basis of the selected subspace."""
    if selector not in ("p", "n_nil", "g"):
        raise ValueError("selector must be one of 'p', 'n_nil', 'g'")
    if selector == "g":
        return alg.gram_g
    if selector == "p" and alg.is_model:
        raise ValueError("the f4 model carries no Cartan decomposition")
    S = alg[selector]
    G = alg.gram_g
    images = [G.apply(b) for b in S.basis]
    return MatrixQ(tuple(tuple(dot(u, w) for w in images) for u in S.basis))


def expected_dims(family: AlgebraFamily) -> dict:
    """Dimension bookkeeping from the realizations (used by tests and the self-test)."""
    n = family.n
    if family.tag is Tag.SO:
        return dict(g=(n + 1) * n // 2, p=n, m=(n - 1) * (n - 2) // 2, g_alpha=n - 1, g_2alpha=0)
    if family.tag is Tag.SU:
        return dict(g=(n + 1) ** 2 - 1, p=2 * n, m=(n - 1) ** 2, g_alpha=2 * (n - 1), g_2alpha=1)
    if family.tag is Tag.SP:
        return dict(g=(n + 1) * (2 * n + 3), p=4 * n, m=(n - 1) * (2 * n - 1) + 3,
                    g_alpha=4 * (n - 1), g_2alpha=3)
    return dict(g=37, m=21, g_alpha=8, g_2alpha=7)
