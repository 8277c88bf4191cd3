"""Sphere-transitivity oracle and the reductive / non-reductive sphericity criteria.

The oracle rests on the orbit-rank dichotomy: for a compact connected group
acting orthogonally on V (dim V >= 2), the tangent space of the orbit through a
nonzero v is spanned by the T_i v, so the orbit is open in the sphere through v
exactly when that span has dimension dim V - 1. Open plus compact means the
orbit is the whole (connected) sphere, and by linearity the answer is the same
for every radius. Hence one point decides; we evaluate several as a self-test.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact_linalg import MatrixQ, Subspace, dot, ortho_complement, vectors_rank
from .lie_ambient import AmbientAlgebra
from .subalgebra_toolkit import (
    CandidateSubalgebra,
    ParabolicSplit,
    ReductiveSplit,
    derived_space,
    normalizer_in,
)

DEFAULT_SEED = 20240601


class InconsistentDichotomy(RuntimeError):
    """Sample ranks disagree about transitivity: this can only be a bug."""


class NotInvariant(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class Outcome(str, enum.Enum):
    SPHERICAL = "Spherical"
    NOT_SPHERICAL = "NotSpherical"


class Reason(str, enum.Enum):
    TRANSITIVE_ON_SPHERES = "TransitiveOnSpheres"
    COMPLEMENT_DIM_AT_MOST_ONE = "ComplementDimAtMostOne"
    FULL_N = "FullN"
    DEFICIENT_RANK = "DeficientRank"
    A_H_NOT_FULL = "A_HNotFull"
    NORMALIZER_VIOLATION = "NormalizerViolation"
    CONSTRAINT_CHAIN_VIOLATION = "ConstraintChainViolation"


@dataclass(frozen=True)
class LinearAction:
    """Operators (in the coordinates of V's stored basis) and the Gram matrix of V."""

    operators: tuple  # of MatrixQ, dim V x dim V
    gram: MatrixQ
    acting_algebra: Subspace | None = None
    space: Subspace | None = None

    @property
    def dim(self) -> int:
        return self.gram.rows

    @staticmethod
    def from_matrices(mats: Sequence, gram=None) -> "LinearAction":
        ops = tuple(m if isinstance(m, MatrixQ) else MatrixQ.of(m) for m in mats)
        if gram is None:
            if not ops:
                raise ValueError("gram is required for an empty operator list")
            gram = MatrixQ.identity(ops[0].rows)
        gram = gram if isinstance(gram, MatrixQ) else MatrixQ.of(gram)
        act = LinearAction(ops, gram)
        act.check_skew()
        return act

    def check_skew(self):
        # G symmetric: T^t G + G T = (G T)^t + G T
        G = self.gram
        plain = G == MatrixQ.identity(G.rows)
        for T in self.operators:
            GT = T if plain else G @ T
            E = GT.entries
            if any(E[i][j] + E[j][i] for i in range(len(E)) for j in range(i, len(E))):
                raise ValueError("operator is not skew with respect to the Gram matrix")

    @cached_property
    def _sparse_ops(self) -> tuple:
        return tuple(tuple((i, tuple((j, a) for j, a in enumerate(row) if a))
                           for i, row in enumerate(T.entries) if any(row))
                     for T in self.operators)

    def apply(self, t: int, v: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, row in self._sparse_ops[t]:
            out[i] = sum((a * v[j] for j, a in row if v[j]), Fraction(0))
        return tuple(out)

    def rank_at(self, v: Sequence) -> int:
        return vectors_rank(self.apply(t, v) for t in range(len(self.operators)))


@dataclass(frozen=True)
class Transitivity:
    verdict: bool
    rank: int
    required: int
    witness: tuple | None
    ranks_at_samples: tuple
    seed: int


def random_rational_vector(d: int, seed: int) -> tuple:
    rng = random.Random(seed)
    while True:
        v = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(d))
        if any(v):
            return v


def sample_schedule(d: int, seed: int = DEFAULT_SEED) -> list:
    basis = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    return basis + [tuple(Fraction(1) for _ in range(d)), random_rational_vector(d, seed)]


def transitive_on_spheres(act: LinearAction, seed: int = DEFAULT_SEED) -> Transitivity:
    d = act.dim
    if d <= 1:
        return Transitivity(True, 0, max(d - 1, 0), None, (), seed)
    required = d - 1
    samples = sample_schedule(d, seed)
    ranks = tuple(act.rank_at(v) for v in samples)
    if any(r > required for r in ranks):
        raise InconsistentDichotomy(f"rank {max(ranks)} exceeds dim V - 1 = {required}")
    full = [r == required for r in ranks]
    if any(full) and not all(full):
        raise InconsistentDichotomy(f"ranks {ranks} mix full and deficient values")
    v = samples[-1]
    if act.rank_at(tuple(2 * x for x in v)) != ranks[-1]:
        raise InconsistentDichotomy("rank is not invariant under scaling")
    if all(full):
        return Transitivity(True, required, required, None, ranks, seed)
    i = ranks.index(min(ranks))
    return Transitivity(False, ranks[i], required, samples[i], ranks, seed)


def restrict_action(alg: AmbientAlgebra, L: Subspace, V: Subspace) -> LinearAction:
    """ad(L) restricted to V, in V's coordinates, with V's invariant Gram matrix."""
    ops = []
    for l in L.basis:
        cols = []
        for v in V.basis:
            w = alg.bracket(l, v)
            if not V.contains_vector(w):
                raise NotInvariant("V is not invariant under ad(L)")
            cols.append(V.coords(w))
        d = V.dim
        ops.append(MatrixQ(tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))))
    G = alg.gram_g
    images = [G.apply(b) for b in V.basis]
    gram = MatrixQ(tuple(tuple(dot(u, w) for w in images) for u in V.basis))
    act = LinearAction(tuple(ops), gram, L, V)
    act.check_skew()
    return act


@dataclass(frozen=True)
class SphericityVerdict:
    outcome: Outcome
    reason: Reason
    ranks_at_samples: tuple = ()
    witness: tuple | None = None
    rank: int | None = None
    required: int | None = None
    complement_dim: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def spherical(self) -> bool:
        return self.outcome is Outcome.SPHERICAL


def _from_transitivity(t: Transitivity, complement_dim: int, notes=None) -> SphericityVerdict:
    if t.verdict:
        return SphericityVerdict(Outcome.SPHERICAL, Reason.TRANSITIVE_ON_SPHERES, t.ranks_at_samples,
                                 None, t.rank, t.required, complement_dim, notes or {})
    return SphericityVerdict(Outcome.NOT_SPHERICAL, Reason.DEFICIENT_RANK, t.ranks_at_samples,
                             t.witness, t.rank, t.required, complement_dim, notes or {})


def reductive_spherical(alg: AmbientAlgebra, cand: CandidateSubalgebra,
                        seed: int = DEFAULT_SEED) -> SphericityVerdict:
    if not isinstance(cand.split, ReductiveSplit):
        raise PreconditionError("candidate carries no reductive split")
    k_H, p_H = cand.split.k_H, cand.split.p_H
    if not k_H.contains(derived_space(alg, p_H)) or not normalizer_in(alg, alg["k"], p_H).contains(k_H):
        raise PreconditionError("constraint chain [p_H,p_H] ⊆ k_H ⊆ N_k(p_H) is violated")
    comp = ortho_complement(p_H, alg["p"], alg.gram_g)
    if comp.dim <= 1:
        return SphericityVerdict(Outcome.SPHERICAL, Reason.COMPLEMENT_DIM_AT_MOST_ONE,
                                 complement_dim=comp.dim)
    act = restrict_action(alg, k_H, comp)
    return _from_transitivity(transitive_on_spheres(act, seed), comp.dim)


def nonreductive_spherical(alg: AmbientAlgebra, cand: CandidateSubalgebra,
                           seed: int = DEFAULT_SEED) -> SphericityVerdict:
    if not isinstance(cand.split, ParabolicSplit):
        raise PreconditionError("candidate carries no parabolic split")
    m_H, a_H, n_H = cand.split.m_H, cand.split.a_H, cand.split.n_H
    if n_H.dim == 0:
        raise PreconditionError("n_H = 0: the candidate is not of non-reductive type")
    if not normalizer_in(alg, alg["m"], n_H).contains(m_H):
        raise PreconditionError("m_H is not contained in N_m(n_H)")
    n = alg["n_nil"]
    notes = {"n_H_contains_g_2alpha": n_H.contains(alg["g_2alpha"])}
    comp_dim = n.dim - n_H.dim
    if comp_dim == 0:
        return SphericityVerdict(Outcome.SPHERICAL, Reason.FULL_N, notes=notes)
    a_full = a_H == alg["a"]
    if not a_full:
        return SphericityVerdict(Outcome.NOT_SPHERICAL, Reason.A_H_NOT_FULL,
                                 complement_dim=comp_dim, notes=notes)
    if comp_dim == 1:
        return SphericityVerdict(Outcome.SPHERICAL, Reason.COMPLEMENT_DIM_AT_MOST_ONE,
                                 complement_dim=1, notes=notes)
    comp = ortho_complement(n_H, n, alg.gram_g)
    act = restrict_action(alg, m_H, comp)
    return _from_transitivity(transitive_on_spheres(act, seed), comp_dim, notes)


def spherical(alg: AmbientAlgebra, cand: CandidateSubalgebra, seed: int = DEFAULT_SEED) -> SphericityVerdict:
    if isinstance(cand.split, ReductiveSplit):
        return reductive_spherical(alg, cand, seed)
    return nonreductive_spherical(alg, cand, seed)


def root_space_containment(alg: AmbientAlgebra, n_H: Subspace) -> dict:
    """Which restricted root spaces n_H contains."""
    return {"g_alpha": n_H.contains(alg["g_alpha"]), "g_2alpha": n_H.contains(alg["g_2alpha"])}
