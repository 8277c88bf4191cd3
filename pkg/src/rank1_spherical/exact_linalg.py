"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``. Vectors are tuples of
Fractions, matrices are :class:`MatrixQ` values, and subspaces are stored in
reduced row echelon form so that equality of subspaces is equality of bases.

Internally rows are kept as sparse ``{column: value}`` dicts, because the
matrices that come out of Lie algebra computations are overwhelmingly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


class NotASubspace(ValueError):
    """Raised when a subspace is expected to lie inside another and does not."""


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class GaussianScalar:
    """A complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianScalar":
        if isinstance(x, GaussianScalar):
            return x
        if isinstance(x, tuple):
            return GaussianScalar(Q(x[0]), Q(x[1]))
        return GaussianScalar(Q(x), Fraction(0))

    def __add__(self, o):
        o = GaussianScalar.of(o)
        return GaussianScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianScalar(-self.re, -self.im)

    def __sub__(self, o):
        o = GaussianScalar.of(o)
        return GaussianScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussianScalar.of(o) - self

    def __mul__(self, o):
        o = GaussianScalar.of(o)
        return GaussianScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussianScalar":
        return GaussianScalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        o = GaussianScalar.of(o)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conj()
        return GaussianScalar(num.re / d, num.im / d)

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = GaussianScalar(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class MatrixQ:
    """Dense rational matrix. ``entries`` is a tuple of row tuples."""

    entries: tuple

    @staticmethod
    def of(rows: Iterable[Iterable]) -> "MatrixQ":
        if isinstance(rows, MatrixQ):
            return rows
        data = tuple(tuple(Q(x) for x in r) for r in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise DimensionMismatch("ragged matrix rows")
        return MatrixQ(data)

    @staticmethod
    def zeros(r: int, c: int) -> "MatrixQ":
        return MatrixQ(tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r)))

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        return MatrixQ(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @staticmethod
    def diag(values) -> "MatrixQ":
        vals = [Q(v) for v in values]
        n = len(vals)
        return MatrixQ(tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "MatrixQ":
        return MatrixQ(tuple(zip(*self.entries))) if self.entries else self

    def __matmul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        # row-by-row accumulation skips zero entries, which dominate in practice
        width = other.cols
        out = []
        for r in self.entries:
            acc = [Fraction(0)] * width
            for a, row in zip(r, other.entries):
                if a:
                    for j, b in enumerate(row):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return MatrixQ(tuple(out))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match matrix columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.entries)

    def is_symmetric(self) -> bool:
        return self.entries == self.transpose().entries


# ---------------------------------------------------------------------------
# sparse row elimination

def _sparse(v: Sequence) -> dict:
    return {i: Q(x) for i, x in enumerate(v) if x}


def _dense(row: dict, n: int) -> Vector:
    out = [Fraction(0)] * n
    for i, x in row.items():
        out[i] = x
    return tuple(out)


class Echelon:
    """Incrementally built reduced row echelon basis of sparse rows.

    Every stored row has a leading 1 at its pivot and zeros in all other pivot
    columns, so reducing a new row needs one pass over its pivot entries.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        r = dict(row)
        for p in [c for c in r if c in self.rows]:
            f = r.get(p)
            if not f:
                continue
            for c, x in self.rows[p].items():
                y = r.get(c, 0) - f * x
                if y:
                    r[c] = y
                else:
                    r.pop(c, None)
        return r

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {c: x * inv for c, x in r.items()}
        for q, other in self.rows.items():
            f = other.get(p)
            if f:
                for c, x in r.items():
                    y = other.get(c, 0) - f * x
                    if y:
                        other[c] = y
                    else:
                        other.pop(c, None)
        self.rows[p] = r
        return True

    def __len__(self):
        return len(self.rows)

    def sorted_rows(self):
        return [(p, self.rows[p]) for p in sorted(self.rows)]


def _rref_rows(rows: Iterable[dict]) -> list:
    e = Echelon()
    for r in rows:
        if r:
            e.add(r)
    return e.sorted_rows()


def _as_matrix(M) -> MatrixQ:
    return M if isinstance(M, MatrixQ) else MatrixQ.of(M)


def rank(M) -> int:
    """Dimension of the row space of ``M``."""
    M = _as_matrix(M)
    return len(_rref_rows(_sparse(r) for r in M.entries))


def rref(M) -> MatrixQ:
    """Nonzero rows of the reduced row echelon form of ``M``."""
    M = _as_matrix(M)
    return MatrixQ(tuple(_dense(r, M.cols) for _, r in _rref_rows(_sparse(r) for r in M.entries)))


def _kernel_sparse(rows: Iterable[dict], ncols: int) -> list:
    """Kernel of the matrix whose rows are given, as a list of sparse vectors."""
    red = _rref_rows(rows)
    pivots = {p for p, _ in red}
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: Fraction(1)}
        for p, r in red:
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def kernel(M) -> "Subspace":
    """``{v : M v = 0}`` as a canonical subspace."""
    M = _as_matrix(M)
    n = M.cols
    return Subspace.from_sparse(_kernel_sparse((_sparse(r) for r in M.entries), n), n)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim stored by its reduced row echelon basis."""

    ambient_dim: int
    basis: tuple  # tuple of Vectors, RREF, pivot ordered

    @staticmethod
    def from_sparse(rows: Iterable[dict], ambient_dim: int) -> "Subspace":
        red = _rref_rows(rows)
        return Subspace(ambient_dim, tuple(_dense(r, ambient_dim) for _, r in red))

    @staticmethod
    def span(vectors: Iterable[Sequence], ambient_dim: int | None = None) -> "Subspace":
        vecs = [tuple(Q(x) for x in v) for v in vectors]
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient_dim is required for an empty span")
            ambient_dim = len(vecs[0])
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
        return Subspace.from_sparse((_sparse(v) for v in vecs), ambient_dim)

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, ())

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, MatrixQ.identity(n).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> tuple:
        cached = self.__dict__.get("_piv")
        if cached is not None:
            return cached
        piv = tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)
        object.__setattr__(self, "_piv", piv)
        return piv

    def _echelon(self) -> Echelon:
        cached = self.__dict__.get("_ech")
        if cached is not None:
            return cached
        e = Echelon()
        for p, b in zip(self.pivots(), self.basis):
            e.rows[p] = _sparse(b)
        object.__setattr__(self, "_ech", e)
        return e

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` modulo this subspace (zero at every pivot column)."""
        return _dense(self._echelon().reduce(_sparse(v)), self.ambient_dim)

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        return not self._echelon().reduce(_sparse(v))

    def contains(self, other: "Subspace") -> bool:
        _check_same(self, other)
        e = self._echelon()
        return all(not e.reduce(_sparse(b)) for b in other.basis)

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in this basis. ``v`` must lie in the subspace."""
        if not self.contains_vector(v):
            raise NotASubspace("vector is not in the subspace")
        return tuple(Q(v[p]) for p in self.pivots())

    def combine(self, coeffs: Sequence) -> Vector:
        out = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coeffs, self.basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        out[i] += c * x
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_same(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)


def _check_same(A: Subspace, B: Subspace):
    if A.ambient_dim != B.ambient_dim:
        raise DimensionMismatch(f"subspaces of Q^{A.ambient_dim} and Q^{B.ambient_dim}")


def annihilator(S: Subspace) -> Subspace:
    """Standard-dot-product orthogonal complement."""
    return Subspace.from_sparse(_kernel_sparse((_sparse(b) for b in S.basis), S.ambient_dim),
                                S.ambient_dim)


def intersection(A: Subspace, B: Subspace) -> Subspace:
    _check_same(A, B)
    if A.contains(B):
        return B
    if B.contains(A):
        return A
    rows = [_sparse(b) for b in annihilator(A).basis] + [_sparse(b) for b in annihilator(B).basis]
    return Subspace.from_sparse(_kernel_sparse(rows, A.ambient_dim), A.ambient_dim)


class SubspaceOps(NamedTuple):
    contains: bool  # A contains B
    equal: bool
    sum: Subspace
    intersection: Subspace


def subspace_ops(A: Subspace, B: Subspace) -> SubspaceOps:
    _check_same(A, B)
    return SubspaceOps(A.contains(B), A == B, A + B, intersection(A, B))


def ortho_complement(S: Subspace, within: Subspace, gram) -> Subspace:
    """``{v in within : v^T gram s = 0 for all s in S}``."""
    _check_same(S, within)
    G = _as_matrix(gram)
    if G.rows != S.ambient_dim or G.cols != S.ambient_dim:
        raise DimensionMismatch("gram matrix size does not match ambient dimension")
    if not within.contains(S):
        raise NotASubspace("S is not contained in the ambient subspace `within`")
    Gs = [G.apply(s) for s in S.basis]
    # unknown: coefficients c over within's basis; constraint sum_i c_i <w_i, G s_j> = 0
    rows = []
    for g in Gs:
        rows.append({i: x for i, w in enumerate(within.basis)
                     if (x := sum((a * b for a, b in zip(w, g) if a and b), Fraction(0)))})
    ker = _kernel_sparse(rows, within.dim)
    vecs = [within.combine(_dense(c, within.dim)) for c in ker]
    return Subspace.span(vecs, S.ambient_dim) if vecs else Subspace.zero(S.ambient_dim)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def bilinear(G: MatrixQ, u: Sequence, v: Sequence) -> Fraction:
    return dot(u, G.apply(v))


def vectors_rank(vectors: Iterable[Sequence]) -> int:
    return len(_rref_rows(_sparse(v) for v in vectors))


def linear_dependencies(vectors: Sequence[Sequence], width: int | None = None) -> list:
    """Basis of ``{c : sum_i c_i vectors[i] = 0}`` as dense coefficient tuples."""
    k = len(vectors)
    if k == 0:
        return []
    # transpose: the dependency space is the kernel of the matrix whose columns are the vectors
    cols = {}
    for i, v in enumerate(vectors):
        for j, x in (v.items() if isinstance(v, dict) else enumerate(v)):
            if x:
                cols.setdefault(j, {})[i] = Q(x)
    ker = _kernel_sparse(cols.values(), k)
    return list(Subspace.from_sparse(ker, k).basis)
