"""Connected subgroups of O(n), U(n), Sp(n) transitive on spheres, and controls.

Entries are stored in the order of the classification table. Each entry knows
how to realize its subgroup's Lie algebra as matrices acting on the defining
real, complex or quaternionic space; complex realizations are realified before
they reach the orbit-rank oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..sphericity_core import LinearAction
from .embeddings import (
    _clean,
    center_u,
    delta_sp1_in_so4,
    g2_in_so7,
    make_embedding,
    realify,
    so_basis,
    sp_basis_complex,
    sp_in_su_display,
    spin7_in_so8,
    spin9_in_so16,
    su_basis,
    to_matrixq,
)

AMBIENTS = ("O", "U", "Sp")


@dataclass(frozen=True)
class Realization:
    """One concrete subgroup: its algebra as real matrices on R^dim."""

    label: str
    matrices: tuple
    dim: int

    def action(self) -> LinearAction:
        return LinearAction.from_matrices([to_matrixq(M, self.dim) for M in self.matrices]
                                          or [to_matrixq({}, self.dim)])


@dataclass(frozen=True)
class OnishchikEntry:
    ambient: str
    constraint: str
    label: str
    applies: Callable[[int], bool] = field(repr=False, compare=False)
    build: Callable[[int], list] = field(repr=False, compare=False)
    notes: str = ""

    def realizations(self, n: int) -> list:
        if not self.applies(n):
            raise ValueError(f"{self.label} does not occur in {self.ambient}({n})")
        return self.build(n)


def _real(label, mats, d):
    return Realization(label, tuple(mats), d)


def _cplx(label, mats, d):
    return Realization(label, tuple(realify(M) for M in mats), 2 * d)


def _so4_family(order: str):
    def build(n):
        out = []
        for l2 in ("0", "torus", "sp1"):
            mats, d, _ = make_embedding("sp1_x_l2_in_so4", l2=l2, order=order)
            out.append(_real(f"p({order.replace(',', ' x ')}) L2={l2}", mats, d))
        return out
    return build


def _sp_s1(n):
    return [_cplx(f"Sp({n // 2})xS1", sp_in_su_display(n // 2) + (center_u(n),), n)]


TABLE: tuple = (
    OnishchikEntry("U", "n>=2", "SU(n)", lambda n: n >= 2, lambda n: [_cplx(f"SU({n})", su_basis(n), n)]),
    OnishchikEntry("U", "n=2m, m>=2", "Sp(m)", lambda n: n % 2 == 0 and n >= 4,
                   lambda n: [_cplx(f"Sp({n // 2})", sp_in_su_display(n // 2), n)]),
    OnishchikEntry("U", "n=2m, m>=2", "Sp(m)xS1", lambda n: n % 2 == 0 and n >= 4, _sp_s1),
    OnishchikEntry("O", "n>=2", "SO(n)", lambda n: n >= 2, lambda n: [_real(f"SO({n})", so_basis(n), n)]),
    OnishchikEntry("O", "n=2m, m>=3", "SU(m)", lambda n: n % 2 == 0 and n >= 6,
                   lambda n: [_cplx(f"SU({n // 2})", su_basis(n // 2), n // 2)]),
    OnishchikEntry("O", "n=4m, m>=2", "Sp(m)", lambda n: n % 4 == 0 and n >= 8,
                   lambda n: [_cplx(f"Sp({n // 4})", sp_basis_complex(n // 4), n // 2)]),
    OnishchikEntry("O", "n=16", "Spin(9)", lambda n: n == 16, lambda n: [_real("Spin(9)", spin9_in_so16(), 16)]),
    OnishchikEntry("O", "n=8", "Spin(7)", lambda n: n == 8, lambda n: [_real("Spin(7)", spin7_in_so8(), 8)]),
    OnishchikEntry("O", "n=7", "G2", lambda n: n == 7, lambda n: [_real("G2", g2_in_so7(), 7)]),
    OnishchikEntry("O", "n=4", "p(Sp(1)xL2)", lambda n: n == 4, _so4_family("sp1,l2"),
                   "L2 in {0, torus, Sp(1)}"),
    OnishchikEntry("O", "n=4", "p(L2xSp(1))", lambda n: n == 4, _so4_family("l2,sp1"),
                   "L2 in {0, torus, Sp(1)}"),
)

SP_EMPTY_NOTE = "Sp(n) does not contain such a subgroup"


def onishchik_entries(ambient: str, n: int) -> list:
    """Table rows occurring in the given ambient group; Sp(n) gives the empty list."""
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}")
    return [e for e in TABLE if e.ambient == ambient and e.applies(n)]


# ---------------------------------------------------------------------------
# negative controls: subgroups that are not transitive on spheres

def _so_block(k: int):
    """so(k-1) in the upper-left corner of so(k)."""
    return [M for M in so_basis(k) if all(r < k - 1 and c < k - 1 for r, c in M)]


def _sp_split(n: int):
    """sp(n-1) + sp(1) in sp(n), as matrices on C^{2n}."""
    out = []
    for M in sp_basis_complex(n):
        rows = {r % n for r, _ in M} | {c % n for _, c in M}
        if rows <= set(range(n - 1)) or rows == {n - 1}:
            out.append(M)
    return out


def negative_controls(max_dim: int = 16) -> list:
    """(realization, provenance) pairs, all expected not transitive."""
    out = [(_real("Delta sp(1) in so(4)", delta_sp1_in_so4(), 4), "PAPER")]
    for k in range(2, max_dim + 1):
        out.append((_real(f"so({k - 1}) in so({k})", _so_block(k), k), "DERIVED"))
    for n in range(2, max_dim // 4 + 1):
        out.append((_cplx(f"sp({n - 1})+sp(1) in sp({n})", [_clean(M) for M in _sp_split(n)], 2 * n),
                    "DERIVED"))
    return out
