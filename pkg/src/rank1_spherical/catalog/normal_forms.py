"""Normal forms of subspaces of p and of n, and explicit element builders.

Matrix conventions (0-based indices, h = n + 1 for sp):

* so(n,1): p is ``[[0, x], [x^t, 0]]`` with x in R^n in the last column;
  n is ``[[0, v, -v], [-v^t, 0, 0], [-v^t, 0, 0]]`` with v in R^{n-1}.
* su(n,1): p is ``[[0, z], [conj z^t, 0]]``; n carries (v, x) with v in
  C^{n-1}, x real, the bottom-right 2x2 block being ``[[-ix, ix], [-ix, ix]]``.
* sp(n,1): X = ``[[P, -conj Q], [Q, conj P]]`` with P = ``[[A, z], [conj z^t, e]]``
  and Q = ``[[B, w], [-w^t, f]]``; a quaternion coordinate (z_i, w_i) is
  identified with z_i + j w_i.
* f4 model: n_H is a subspace of R^8 (order e1..e7, e0) plus all of g_2alpha.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from ..exact_linalg import GaussianScalar, Subspace
from ..lie_ambient import (
    AlgebraFamily,
    AmbientAlgebra,
    Tag,
    cm,
    f4_element,
)

G = GaussianScalar
ONE = Fraction(1)
IM = G(Fraction(0), ONE)


class NormalFormError(ValueError):
    pass


class Kind(str, enum.Enum):
    Q_K = "Q_K"
    Q_KL = "Q_KL"
    Q_KLMP_XI = "Q_KLMP_XI"
    N_K = "N_K"
    N_KL = "N_KL"
    N_KLMP_XI = "N_KLMP_XI"
    N_C_F4 = "N_C_F4"


_KIND_FAMILY = {
    Kind.Q_K: Tag.SO, Kind.Q_KL: Tag.SU, Kind.Q_KLMP_XI: Tag.SP,
    Kind.N_KL: Tag.SU, Kind.N_KLMP_XI: Tag.SP, Kind.N_C_F4: Tag.F4_PARABOLIC_MODEL,
}


def _is_unit_imaginary(xi) -> bool:
    return len(xi) == 3 and sum(Fraction(t) ** 2 for t in xi) == 1


@dataclass(frozen=True)
class NormalFormSpec:
    family: AlgebraFamily
    kind: Kind
    params: tuple = ()
    xi: tuple = ()
    c: Fraction | None = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        object.__setattr__(self, "xi", tuple(tuple(Fraction(t) for t in x) for x in self.xi))
        tag, n = self.family.tag, self.family.n
        if kind is Kind.N_K:
            if tag not in (Tag.SO, Tag.F4_PARABOLIC_MODEL):
                raise NormalFormError("N_K applies to so(n,1) and the f4 model")
        elif _KIND_FAMILY[kind] is not tag:
            raise NormalFormError(f"{kind.value} does not apply to {self.family.label}")
        p = self.params
        if any(t < 0 for t in p):
            raise NormalFormError("parameters must be non-negative")
        if kind is Kind.Q_K:
            self._need(1, p[0] <= n)
        elif kind is Kind.N_K:
            top = 8 if tag is Tag.F4_PARABOLIC_MODEL else n - 1
            self._need(1, p[0] <= top)
        elif kind is Kind.Q_KL:
            self._need(2, p[0] + p[1] <= n)
        elif kind is Kind.N_KL:
            self._need(2, p[0] + p[1] <= n - 1)
        elif kind in (Kind.Q_KLMP_XI, Kind.N_KLMP_XI):
            top = n if kind is Kind.Q_KLMP_XI else n - 1
            self._need(4, sum(p) <= top)
            if len(self.xi) != p[2]:
                raise NormalFormError(f"need {p[2]} xi values, got {len(self.xi)}")
            for x in self.xi:
                if not _is_unit_imaginary(x):
                    raise NormalFormError(f"xi {x} is not a unit imaginary quaternion")
        elif kind is Kind.N_C_F4:
            if self.c is None:
                raise NormalFormError("N_C_F4 needs the parameter c")
            object.__setattr__(self, "c", Fraction(self.c))

    def _need(self, count: int, ok: bool):
        if len(self.params) != count:
            raise NormalFormError(f"{self.kind.value} takes {count} parameters")
        if not ok:
            raise NormalFormError(f"parameters {self.params} out of range for {self.family.label}")


# ---------------------------------------------------------------------------
# element builders; each returns a sparse complex matrix

def so_p(n: int, x) -> dict:
    M = {}
    for i, t in enumerate(x):
        if t:
            M[(i, n)] = M[(n, i)] = t
    return cm(M)


def so_n(n: int, v) -> dict:
    M = {}
    for i, t in enumerate(v):
        if t:
            M[(i, n - 1)] = t
            M[(i, n)] = -t
            M[(n - 1, i)] = -t
            M[(n, i)] = -t
    return cm(M)


def so_k(n: int, A: dict, offset: int = 0) -> dict:
    """Real skew matrix A placed in the compact so(n) block at the given offset."""
    M = {(r + offset, c + offset): v for (r, c), v in A.items()}
    if any(r >= n or c >= n for r, c in M):
        raise NormalFormError("block does not fit in so(n)")
    return cm(M)


def su_p(n: int, z) -> dict:
    M = {}
    for i, t in enumerate(z):
        t = G.of(t)
        if t:
            M[(i, n)] = t
            M[(n, i)] = t.conj()
    return M


def su_n(n: int, v, x=0) -> dict:
    M = {}
    for i, t in enumerate(v):
        t = G.of(t)
        if t:
            M[(i, n - 1)] = t
            M[(i, n)] = -t
            M[(n - 1, i)] = -t.conj()
            M[(n, i)] = -t.conj()
    if x:
        ix = IM * Fraction(x)
        M[(n - 1, n - 1)] = -ix
        M[(n - 1, n)] = ix
        M[(n, n - 1)] = -ix
        M[(n, n)] = ix
    return M


def _trace(A: dict):
    s = G()
    for (r, c), v in A.items():
        if r == c:
            s = s + G.of(v)
    return s


def su_k(n: int, A: dict, offset: int = 0) -> dict:
    """A in u(n) (placed at offset) mapped to diag(A, -tr A)."""
    M = {(r + offset, c + offset): G.of(v) for (r, c), v in A.items()}
    if any(r >= n or c >= n for r, c in M):
        raise NormalFormError("block does not fit in u(n)")
    t = _trace(A)
    if t:
        M[(n, n)] = -t
    return {k: v for k, v in M.items() if v}


def su_m(n: int, Y: dict, offset: int = 0) -> dict:
    """Y in u(n-1) (placed at offset) mapped to diag(Y, -tr Y/2, -tr Y/2)."""
    M = {(r + offset, c + offset): G.of(v) for (r, c), v in Y.items()}
    if any(r >= n - 1 or c >= n - 1 for r, c in M):
        raise NormalFormError("block does not fit in u(n-1)")
    t = _trace(Y) * Fraction(-1, 2)
    if t:
        M[(n - 1, n - 1)] = t
        M[(n, n)] = t
    return {k: v for k, v in M.items() if v}


def sp_from_PQ(n: int, P: dict, Q: dict) -> dict:
    h = n + 1
    M = {}
    for (r, c), v in P.items():
        v = G.of(v)
        if v:
            M[(r, c)] = v
            M[(h + r, h + c)] = v.conj()
    for (r, c), v in Q.items():
        v = G.of(v)
        if v:
            M[(h + r, c)] = v
            M[(r, h + c)] = -v.conj()
    return M


def sp_p(n: int, z, w) -> dict:
    P, Q = {}, {}
    for i, t in enumerate(z):
        t = G.of(t)
        if t:
            P[(i, n)] = t
            P[(n, i)] = t.conj()
    for i, t in enumerate(w):
        t = G.of(t)
        if t:
            Q[(i, n)] = t
            Q[(n, i)] = -t
    return sp_from_PQ(n, P, Q)


def sp_k(n: int, A: dict | None = None, B: dict | None = None, e=0, f=0, offset: int = 0) -> dict:
    """sp(n) part (A skew-hermitian, B symmetric, placed at offset) plus the sp(1) corner (e, f)."""
    P = {(r + offset, c + offset): v for (r, c), v in (A or {}).items()}
    Q = {(r + offset, c + offset): v for (r, c), v in (B or {}).items()}
    if any(r >= n or c >= n for r, c in list(P) + list(Q)):
        raise NormalFormError("block does not fit in sp(n)")
    if e:
        P[(n, n)] = G.of(e)
    if f:
        Q[(n, n)] = G.of(f)
    return sp_from_PQ(n, P, Q)


def sp_block_from_complex(n: int, X: dict, m: int, offset: int) -> dict:
    """An element [[P', -conj Q'], [Q', conj P']] of sp(m) placed on quaternion coordinates offset..offset+m-1."""
    P = {(r, c): v for (r, c), v in X.items() if r < m and c < m}
    Q = {(r - m, c): v for (r, c), v in X.items() if r >= m and c < m}
    return sp_k(n, P, Q, offset=offset)


def sp_n(n: int, zp=(), wp=(), e=0, f=0) -> dict:
    """g_alpha part (z', w') in C^{n-1} x C^{n-1} plus g_2alpha part (e in iR, f in C)."""
    e, f = G.of(e), G.of(f)
    P, Q = {}, {}
    if e:
        P[(0, n)] = e
        P[(n, 0)] = e.conj()
        P[(0, 0)] = -e
        P[(n, n)] = e
    if f:
        Q[(0, n)] = f
        Q[(n, 0)] = -f
        Q[(0, 0)] = -f
        Q[(n, n)] = f
    for j, t in enumerate(zp, start=1):
        t = G.of(t)
        if t:
            P[(j, n)] = t
            P[(n, j)] = t.conj()
            P[(0, j)] = t.conj()
            P[(j, 0)] = -t
    for j, t in enumerate(wp, start=1):
        t = G.of(t)
        if t:
            Q[(j, n)] = t
            Q[(n, j)] = -t
            Q[(0, j)] = -t
            Q[(j, 0)] = -t
    return sp_from_PQ(n, P, Q)


def sp_m(n: int, Ap: dict | None = None, Bp: dict | None = None, e=0, f=0, offset: int = 0) -> dict:
    """m element: sp(n-1) part on coordinates 1..n-1 (offset within them) and the (e, f) corner."""
    P = {(r + 1 + offset, c + 1 + offset): v for (r, c), v in (Ap or {}).items()}
    Q = {(r + 1 + offset, c + 1 + offset): v for (r, c), v in (Bp or {}).items()}
    if any(r >= n or c >= n for r, c in list(P) + list(Q)):
        raise NormalFormError("block does not fit in sp(n-1)")
    if e:
        P[(0, 0)] = P[(n, n)] = G.of(e)
    if f:
        Q[(0, 0)] = Q[(n, n)] = G.of(f)
    return sp_from_PQ(n, P, Q)


def coords(alg: AmbientAlgebra, M: dict) -> tuple:
    return alg.coords_of_matrix(cm(M))


def span(alg: AmbientAlgebra, mats) -> Subspace:
    return Subspace.span([coords(alg, M) for M in mats], alg.dim)


# ---------------------------------------------------------------------------
# quaternion coordinate blocks

def xi_plane(xi) -> tuple:
    """(z, w) pairs spanning R + R xi, where z + j w is the quaternion."""
    a, b, c = (Fraction(t) for t in xi)
    return ((G(ONE), G()), (G(Fraction(0), a), G(b, -c)))


def quaternion_block(kind: str, xi=None) -> tuple:
    if kind == "zero":
        return ()
    if kind == "real":
        return ((G(ONE), G()),)
    if kind == "xi":
        return xi_plane(xi)
    if kind == "p":
        return ((G(ONE), G()), (IM, G()), (G(), G(ONE)))
    if kind == "full":
        return ((G(ONE), G()), (IM, G()), (G(), G(ONE)), (G(), IM))
    raise NormalFormError(kind)


def _klmp_layout(count: int, k: int, l: int, m: int, p: int, xi) -> list:
    kinds = ["zero"] * k + ["real"] * l + ["xi"] * m + ["p"] * p
    kinds += ["full"] * (count - len(kinds))
    xis = [None] * (k + l) + list(xi) + [None] * (count - k - l - m)
    return list(zip(kinds, xis))


# ---------------------------------------------------------------------------
# the normal forms

def _f4_n(alg: AmbientAlgebra, vectors) -> Subspace:
    vecs = [f4_element(alg, x=v) for v in vectors]
    vecs += [f4_element(alg, y=[int(i == j) for i in range(7)]) for j in range(7)]
    return Subspace.span(vecs, alg.dim)


def _unit(d: int, i: int, val=1) -> list:
    return [val if t == i else 0 for t in range(d)]


def make_normal_form(alg: AmbientAlgebra, spec: NormalFormSpec) -> Subspace:
    if spec.family != alg.family:
        raise NormalFormError(f"spec is for {spec.family.label}, algebra is {alg.family.label}")
    n = alg.family.n
    kind, p = spec.kind, spec.params
    if kind is Kind.Q_K:
        (k,) = p
        return span(alg, [so_p(n, _unit(n, i)) for i in range(k, n)])
    if kind is Kind.N_K and alg.is_model:
        (k,) = p
        return _f4_n(alg, [_unit(8, i) for i in range(k)])
    if kind is Kind.N_K:
        (k,) = p
        return span(alg, [so_n(n, _unit(n - 1, i)) for i in range(k, n - 1)])
    if kind is Kind.N_C_F4:
        c = spec.c
        return _f4_n(alg, [_unit(8, 0), _unit(8, 1), _unit(8, 2), [0, 0, 0, c, 1, 0, 0, 0]])
    if kind in (Kind.Q_KL, Kind.N_KL):
        k, l = p
        d = n if kind is Kind.Q_KL else n - 1
        vecs = []
        for i in range(k, d):
            vecs.append(_unit(d, i, G(ONE)))
            if i >= k + l:
                vecs.append(_unit(d, i, IM))
        if kind is Kind.Q_KL:
            return span(alg, [su_p(n, v) for v in vecs])
        return span(alg, [su_n(n, v) for v in vecs] + [su_n(n, [], 1)])
    if kind in (Kind.Q_KLMP_XI, Kind.N_KLMP_XI):
        d = n if kind is Kind.Q_KLMP_XI else n - 1
        mats = []
        for i, (blk, xi) in enumerate(_klmp_layout(d, *p, spec.xi)):
            for z, w in quaternion_block(blk, xi):
                if kind is Kind.Q_KLMP_XI:
                    mats.append(sp_p(n, _unit(d, i, z), _unit(d, i, w)))
                else:
                    mats.append(sp_n(n, _unit(d, i, z), _unit(d, i, w)))
        if kind is Kind.N_KLMP_XI:
            mats += [sp_n(n, e=IM), sp_n(n, f=1), sp_n(n, f=IM)]
        return span(alg, mats)
    raise NormalFormError(f"unsupported kind {kind}")


def expected_dim(spec: NormalFormSpec) -> int:
    """Dimension bookkeeping for the normal forms."""
    n, p = spec.family.n, spec.params
    if spec.kind is Kind.Q_K:
        return n - p[0]
    if spec.kind is Kind.N_K:
        return p[0] + 7 if spec.family.tag is Tag.F4_PARABOLIC_MODEL else n - 1 - p[0]
    if spec.kind is Kind.N_C_F4:
        return 4 + 7
    if spec.kind is Kind.Q_KL:
        return p[1] + 2 * (n - p[0] - p[1])
    if spec.kind is Kind.N_KL:
        return p[1] + 2 * (n - 1 - p[0] - p[1]) + 1
    k, l, m, pp = p
    d = n if spec.kind is Kind.Q_KLMP_XI else n - 1
    base = l + 2 * m + 3 * pp + 4 * (d - k - l - m - pp)
    return base if spec.kind is Kind.Q_KLMP_XI else base + 3


# ---------------------------------------------------------------------------
# detectors (oracles for the normal-form invariants)

def su_vector(alg: AmbientAlgebra, x: tuple, part: str = "p") -> list:
    """C^n (p) or C^{n-1} (g_alpha) coordinates of an element, realified as (re, im) pairs."""
    n = alg.family.n
    M = alg.matrix(x)
    d = n if part == "p" else n - 1
    col = n if part == "p" else n - 1
    out = []
    for i in range(d):
        z = M.get((i, col), G())
        out += [z.re, z.im]
    return out


def complex_invariants(vectors, d: int) -> tuple:
    """(real dim, complex dim of the maximal complex subspace) of a real span in C^d."""
    V = Subspace.span(vectors, 2 * d)

    def times_i(v):
        out = []
        for t in range(d):
            out += [-v[2 * t + 1], v[2 * t]]
        return out

    iV = Subspace.span([times_i(b) for b in V.basis], 2 * d)
    return V.dim, (V & iV).dim // 2


def sp_quaternions(alg: AmbientAlgebra, x: tuple, part: str = "p") -> list:
    """H^n (p) or H^{n-1} (g_alpha) coordinates as real 4-vectors of z + j w."""
    n = alg.family.n
    M = alg.matrix(x)
    h = n + 1
    rows = range(n) if part == "p" else range(1, n)
    out = []
    for i in rows:
        z = M.get((i, n), G())
        w = M.get((h + i, n), G())
        out += [z.re, z.im, w.re, -w.im]
    return out


_IMAG_H = Subspace.span([(0, ONE, 0, 0), (0, 0, ONE, 0), (0, 0, 0, ONE)], 4)


def detect_klmp(quat_vectors, d: int) -> tuple:
    """Recover (k, l, m, p, xi-lines) of a coordinate-split real subspace of H^d.

    Raises NormalFormError if the subspace is not the direct sum of its
    intersections with the quaternion coordinate lines, or a coordinate
    block has the wrong shape.
    """
    V = Subspace.span(quat_vectors, 4 * d)
    parts = []
    total = 0
    for i in range(d):
        line = Subspace.span([[ONE if t == 4 * i + s else 0 for t in range(4 * d)] for s in range(4)], 4 * d)
        W = V & line
        parts.append([b[4 * i:4 * i + 4] for b in W.basis])
        total += W.dim
    if total != V.dim:
        raise NormalFormError("subspace is not split along the quaternion coordinates")
    sig, lines = [], []
    for basis in parts:
        dim = len(basis)
        local = Subspace.span(basis, 4)
        if dim == 1 and not local.contains_vector((ONE, 0, 0, 0)):
            raise NormalFormError("one-dimensional block is not the real line")
        if dim == 2:
            if not local.contains_vector((ONE, 0, 0, 0)):
                raise NormalFormError("plane block does not contain 1")
            (im_part,) = (local & _IMAG_H).basis
            lines.append(tuple(im_part[1:]))
        sig.append(dim)
    if sig != sorted(sig):
        raise NormalFormError(f"blocks are not in k, l, m, p, free order: {sig}")
    return (sig.count(0), sig.count(1), sig.count(2), sig.count(3), tuple(lines))


def same_line(u, v) -> bool:
    """Whether two nonzero vectors of Q^3 are proportional."""
    return (u[0] * v[1] - u[1] * v[0], u[0] * v[2] - u[2] * v[0], u[1] * v[2] - u[2] * v[1]) == (0, 0, 0)
