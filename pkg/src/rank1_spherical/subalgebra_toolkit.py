"""Brackets of subspaces, closures, normalizers, centralizers and the two splits.

Every subspace here is expressed in the g-coordinates of an AmbientAlgebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import Echelon, Subspace, _kernel_sparse, _sparse
from .lie_ambient import AmbientAlgebra


class NotThetaStable(ValueError):
    pass


class NotInNormalPosition(ValueError):
    pass


class NotASubalgebra(ValueError):
    pass


@dataclass(frozen=True)
class ReductiveSplit:
    k_H: Subspace
    p_H: Subspace


@dataclass(frozen=True)
class ParabolicSplit:
    m_H: Subspace
    a_H: Subspace
    n_H: Subspace


@dataclass(frozen=True)
class CandidateSubalgebra:
    algebra: AmbientAlgebra
    span: Subspace
    split: ReductiveSplit | ParabolicSplit | None = None
    label: str = ""

    def __post_init__(self):
        if self.split is None:
            return
        parts = ([self.split.k_H, self.split.p_H] if isinstance(self.split, ReductiveSplit)
                 else [self.split.m_H, self.split.a_H, self.split.n_H])
        total = Subspace.zero(self.algebra.dim)
        for part in parts:
            total = total + part
        if total != self.span or sum(p.dim for p in parts) != self.span.dim:
            raise ValueError("split parts do not sum directly to the span")


def _check(alg: AmbientAlgebra, *spaces: Subspace):
    for S in spaces:
        if S.ambient_dim != alg.dim:
            raise ValueError(f"subspace lives in dimension {S.ambient_dim}, algebra has {alg.dim}")


def bracket_space(alg: AmbientAlgebra, S: Subspace, T: Subspace) -> Subspace:
    """Span of [s, t] over basis elements."""
    _check(alg, S, T)
    ech = Echelon()
    for x in S.basis:
        for y in T.basis:
            ech.add(_sparse(alg.bracket(x, y)))
    return Subspace.from_sparse([r for _, r in ech.sorted_rows()], alg.dim)


def derived_space(alg: AmbientAlgebra, S: Subspace) -> Subspace:
    _check(alg, S)
    ech = Echelon()
    B = S.basis
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            ech.add(_sparse(alg.bracket(B[i], B[j])))
    return Subspace.from_sparse([r for _, r in ech.sorted_rows()], alg.dim)


def lie_closure(alg: AmbientAlgebra, S: Subspace) -> Subspace:
    _check(alg, S)
    ech = Echelon()
    for b in S.basis:
        ech.add(_sparse(b))
    frontier = list(S.basis)
    current = list(S.basis)
    while frontier:
        new = []
        for x in frontier:
            for y in current:
                z = alg.bracket(x, y)
                if ech.add(_sparse(z)):
                    new.append(z)
        current = current + new
        frontier = new
    return Subspace.from_sparse([r for _, r in ech.sorted_rows()], alg.dim)


def is_subalgebra(alg: AmbientAlgebra, S: Subspace) -> bool:
    _check(alg, S)
    B = S.basis
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            if not S.contains_vector(alg.bracket(B[i], B[j])):
                return False
    return True


def _stabilizer(alg: AmbientAlgebra, L: Subspace, S: Subspace, target: Subspace | None) -> Subspace:
    """{X in L : [X, S] subset target}; target None means [X, S] = 0."""
    _check(alg, L, S)
    # ad(l_i) s_j, reduced modulo the target, as a linear function of the L-coefficients
    red = (lambda v: target.reduce(v)) if target is not None else (lambda v: v)
    nL = L.dim
    eqs: dict = {}
    for i, l in enumerate(L.basis):
        for j, s in enumerate(S.basis):
            r = red(alg.bracket(l, s))
            for k, x in enumerate(r):
                if x:
                    eqs.setdefault((j, k), {})[i] = x
    ker = _kernel_sparse(list(eqs.values()), nL)
    vecs = [L.combine([row.get(i, 0) for i in range(nL)]) for row in ker]
    return Subspace.span(vecs, alg.dim)


def normalizer_in(alg: AmbientAlgebra, L: Subspace, S: Subspace) -> Subspace:
    return _stabilizer(alg, L, S, S)


def centralizer_in(alg: AmbientAlgebra, L: Subspace, S: Subspace) -> Subspace:
    return _stabilizer(alg, L, S, None)


def split_reductive(alg: AmbientAlgebra, h: Subspace) -> ReductiveSplit:
    if alg.is_model:
        raise NotThetaStable("the f4 model has no Cartan decomposition")
    k_H = h & alg["k"]
    p_H = h & alg["p"]
    if k_H.dim + p_H.dim != h.dim:
        raise NotThetaStable(f"h has dim {h.dim} but (h∩k)⊕(h∩p) has dim {k_H.dim + p_H.dim}")
    if not k_H.contains(derived_space(alg, p_H)):
        raise NotThetaStable("[p_H, p_H] is not contained in k_H")
    if not normalizer_in(alg, alg["k"], p_H).contains(k_H):
        raise NotThetaStable("k_H does not normalize p_H")
    return ReductiveSplit(k_H, p_H)


def split_parabolic(alg: AmbientAlgebra, h: Subspace) -> ParabolicSplit:
    m_H = h & alg["m"]
    a_H = h & alg["a"]
    n_H = h & alg["n_nil"]
    if m_H.dim + a_H.dim + n_H.dim != h.dim:
        raise NotInNormalPosition(
            f"h has dim {h.dim} but m_H⊕a_H⊕n_H has dim {m_H.dim + a_H.dim + n_H.dim}")
    if not n_H.contains(bracket_space(alg, h, n_H)):
        raise NotInNormalPosition("n_H is not an ideal of h")
    return ParabolicSplit(m_H, a_H, n_H)


def candidate(alg: AmbientAlgebra, span: Subspace, label: str = "") -> CandidateSubalgebra:
    """Check closure and attach a split: reductive first, then parabolic."""
    if not is_subalgebra(alg, span):
        raise NotASubalgebra(label or "span is not closed under the bracket")
    try:
        return CandidateSubalgebra(alg, span, split_reductive(alg, span), label)
    except NotThetaStable as first:
        try:
            return CandidateSubalgebra(alg, span, split_parabolic(alg, span), label)
        except NotInNormalPosition as second:
            raise NotInNormalPosition(f"not theta-stable ({first}); not parabolic ({second})") from None
