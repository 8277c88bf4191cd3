"""Command-line front end: table campaigns, candidate files, discrepancy scans.

Reports are JSON lines, one case per line and a summary as the last line.
Everything in a report is a function of the inputs and the seed; wall-clock
times are only included with ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .exact_linalg import GaussianScalar, Subspace, ortho_complement
from .lie_ambient import (
    A_INDEX,
    F4,
    GA_SLICE,
    SO,
    SP,
    SU,
    AlgebraFamily,
    AmbientAlgebra,
    FamilyConstraintError,
    _so7_matrix,
    construct_algebra,
    f4_element,
)
from .sphericity_core import (
    DEFAULT_SEED,
    Outcome,
    SphericityVerdict,
    restrict_action,
    spherical,
    transitive_on_spheres,
)
from .subalgebra_toolkit import (
    CandidateSubalgebra,
    NotASubalgebra,
    NotInNormalPosition,
    ReductiveSplit,
    candidate,
)
from .catalog.tables import THEOREMS, TableCase, table_cases

PASS, FAIL, CANDIDATE = "PASS", "FAIL", "DISCREPANCY-CANDIDATE"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAMILIES = {"so": SO, "su": SU, "sp": SP}
EXPLORE_TABLES = {"so": ("5.2", "5.3"), "su": ("6.2", "6.3"), "sp": ("7.3", "7.4"), "f4-model": ("8.5",)}


class CheckFileError(ValueError):
    """The candidate file does not follow the schema."""


# ---------------------------------------------------------------------------
# results


@dataclass
class CaseResult:
    case_id: str
    theorem_id: str
    family: str | None
    n: int | None
    params: dict
    expected: str | None
    computed: dict | None
    dims: dict
    ranks_at_samples: tuple
    status: str
    elapsed: float | None = None
    error: str | None = None

    def to_json(self) -> dict:
        return {"case_id": self.case_id, "theorem_id": self.theorem_id, "family": self.family, "n": self.n,
                "params": {k: str(v) if isinstance(v, Fraction) else v for k, v in self.params.items()},
                "expected": self.expected, "computed": self.computed, "dims": self.dims,
                "ranks_at_samples": list(self.ranks_at_samples), "status": self.status,
                "elapsed": self.elapsed, "error": self.error}


@dataclass
class Report:
    seed: int
    results: list = field(default_factory=list)
    version: str = __version__

    def summary(self) -> dict:
        counts = {PASS: 0, FAIL: 0, CANDIDATE: 0}
        for r in self.results:
            counts[r.status] += 1
        return {"summary": {"total": len(self.results), **counts},
                "tool_version": self.version, "seed": self.seed}

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if any(r.status == FAIL for r in self.results) else EXIT_OK

    def lines(self) -> list:
        out = [json.dumps(r.to_json(), sort_keys=True) for r in self.results]
        out.append(json.dumps(self.summary(), sort_keys=True))
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def verdict_json(v: SphericityVerdict) -> dict:
    return {"outcome": v.outcome.value, "reason": v.reason.value, "rank": v.rank, "required": v.required,
            "witness": None if v.witness is None else [str(x) for x in v.witness],
            "complement_dim": v.complement_dim}


def candidate_dims(cand: CandidateSubalgebra, complement_dim: int | None) -> dict:
    s = cand.split
    parts = ({"k_H": s.k_H.dim, "p_H": s.p_H.dim} if isinstance(s, ReductiveSplit)
             else {"m_H": s.m_H.dim, "a_H": s.a_H.dim, "n_H": s.n_H.dim})
    return {"h": cand.span.dim, **parts, "complement": complement_dim}


def complement_action(alg: AmbientAlgebra, cand: CandidateSubalgebra):
    """The action whose sphere-transitivity decides the verdict."""
    s = cand.split
    if isinstance(s, ReductiveSplit):
        return restrict_action(alg, s.k_H, ortho_complement(s.p_H, alg["p"], alg.gram_g))
    return restrict_action(alg, s.m_H, ortho_complement(s.n_H, alg["n_nil"], alg.gram_g))


def replay_witness(alg: AmbientAlgebra, cand: CandidateSubalgebra, verdict: SphericityVerdict) -> bool:
    """Re-evaluate the rank at the emitted witness; True when it matches."""
    if verdict.witness is None:
        return True
    return complement_action(alg, cand).rank_at(verdict.witness) == verdict.rank


# ---------------------------------------------------------------------------
# campaigns


def _status(expected: Outcome | None, got: Outcome) -> str:
    if expected is None:
        return CANDIDATE
    return PASS if got is expected else FAIL


def run_case(case: TableCase, seed: int = DEFAULT_SEED, timing: bool = False) -> CaseResult:
    t0 = time.perf_counter()
    fam = case.family.label if case.family is not None else None
    expected = case.expected.value if case.expected is not None else None
    base = dict(case_id=case.case_id, theorem_id=case.theorem_id, family=fam, n=case.n, params=case.params,
                expected=expected)
    try:
        if case.kind == "action":
            real = case.construct()
            t = transitive_on_spheres(real.action(), seed)
            got = Outcome.SPHERICAL if t.verdict else Outcome.NOT_SPHERICAL
            computed = {"outcome": got.value, "reason": "TransitiveOnSpheres" if t.verdict else "DeficientRank",
                        "rank": t.rank, "required": t.required,
                        "witness": None if t.witness is None else [str(x) for x in t.witness],
                        "complement_dim": real.dim}
            dims, ranks = {"h": len(real.matrices), "complement": real.dim}, t.ranks_at_samples
        else:
            alg = construct_algebra(case.family)
            cand = case.construct()
            v = spherical(alg, cand, seed)
            got, computed = v.outcome, verdict_json(v)
            dims, ranks = candidate_dims(cand, v.complement_dim), v.ranks_at_samples
        status = _status(case.expected, got)
        err = None
    except Exception as exc:  # construction errors are reported, not raised
        computed, dims, ranks, err = None, {}, (), f"{type(exc).__name__}: {exc}"
        status = CANDIDATE if case.expected is None else FAIL
    elapsed = round(time.perf_counter() - t0, 4) if timing else None
    return CaseResult(**base, computed=computed, dims=dims, ranks_at_samples=tuple(ranks), status=status,
                      elapsed=elapsed, error=err)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("VERIFY_THREADS", "1")))
    except ValueError:
        return 1


def run_cases(cases: Sequence[TableCase], seed: int = DEFAULT_SEED, timing: bool = False) -> Report:
    """Results come back in case order whatever the completion order."""
    for fam in {c.family for c in cases if c.family is not None}:
        construct_algebra(fam)
    workers = _workers()
    if workers == 1:
        results = [run_case(c, seed, timing) for c in cases]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: run_case(c, seed, timing), cases))
    return Report(seed, results)


def run_campaign(theorem_id: str, n_range: Sequence[int | None], seed: int = DEFAULT_SEED,
                 timing: bool = False) -> Report:
    if theorem_id in ("8.5", "8.1-facts", "8.4-facts"):
        n_range = [None]
    cases = [c for n in n_range for c in table_cases(theorem_id, n)]
    return run_cases(cases, seed, timing)


def explore(family: str, n: int | None, seed: int = DEFAULT_SEED, timing: bool = False) -> Report:
    """Only the non-asserted rows: computed verdicts without a pass/fail judgement."""
    cases = [c for t in EXPLORE_TABLES[family] for c in table_cases(t, n) if c.expected is None]
    return run_cases(cases, seed, timing)


# ---------------------------------------------------------------------------
# candidate files


def _q(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise CheckFileError(f"expected a rational string, got {s!r}")
    if isinstance(s, str) and ("." in s or "e" in s.lower()):
        raise CheckFileError(f"decimal notation is not allowed: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise CheckFileError(f"not a rational number: {s!r}") from None


def _qstr(x: Fraction) -> str:
    return str(Fraction(x))


def _family(spec) -> AlgebraFamily:
    if not isinstance(spec, dict) or "family" not in spec:
        raise CheckFileError("ambient must be an object with 'family'")
    name = spec["family"]
    if name == "f4-model":
        return F4
    if name not in FAMILIES:
        raise CheckFileError(f"unknown family {name!r}")
    n = spec.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise CheckFileError("ambient.n must be an integer")
    try:
        return FAMILIES[name](n)
    except FamilyConstraintError as exc:
        raise CheckFileError(str(exc)) from None


def _matrix_element(alg: AmbientAlgebra, M) -> tuple:
    N = alg.matrix_size
    if not isinstance(M, list) or len(M) != N or any(not isinstance(r, list) or len(r) != N for r in M):
        raise CheckFileError(f"each basis matrix must be {N}x{N}")
    entries = {}
    for i, row in enumerate(M):
        for j, e in enumerate(row):
            if not isinstance(e, list) or len(e) != 2:
                raise CheckFileError("matrix entries are [re, im] pairs")
            z = GaussianScalar(_q(e[0]), _q(e[1]))
            if z:
                entries[(i, j)] = z
    try:
        return alg.coords_of_matrix(entries)
    except ValueError as exc:
        raise CheckFileError(f"matrix is not in {alg.family.label}: {exc}") from None


def _f4_element(alg: AmbientAlgebra, pair) -> tuple:
    """[so(7) matrix, n-part] or [so(7) matrix, a, n-part]; n-part = R^8 then R^7 coordinates."""
    if not isinstance(pair, list) or len(pair) not in (2, 3):
        raise CheckFileError("f4-model basis elements are [so7, n-part] or [so7, a, n-part]")
    so7, npart = pair[0], pair[-1]
    a = _q(pair[1]) if len(pair) == 3 else Fraction(0)
    if not isinstance(so7, list) or len(so7) != 7 or any(not isinstance(r, list) or len(r) != 7 for r in so7):
        raise CheckFileError("the so(7) part must be a 7x7 matrix")
    X = [[_q(x) for x in row] for row in so7]
    if any(X[i][j] != -X[j][i] for i in range(7) for j in range(7)):
        raise CheckFileError("the so(7) part must be skew-symmetric")
    if not isinstance(npart, list) or len(npart) != 15:
        raise CheckFileError("the n-part must have 15 coordinates (R^8 then R^7)")
    v = [_q(x) for x in npart]
    return f4_element(alg, so7=X, a=a, x=v[:8], y=v[8:])


def parse_candidate(doc: dict) -> tuple:
    """(algebra, Subspace) from a decoded candidate document."""
    if not isinstance(doc, dict) or "ambient" not in doc or "basis" not in doc:
        raise CheckFileError("a candidate needs 'ambient' and 'basis'")
    alg = construct_algebra(_family(doc["ambient"]))
    if not isinstance(doc["basis"], list):
        raise CheckFileError("basis must be a list")
    make = _f4_element if alg.is_model else _matrix_element
    vecs = [make(alg, b) for b in doc["basis"]]
    return alg, (Subspace.span(vecs, alg.dim) if vecs else Subspace.zero(alg.dim))


def encode_candidate(alg: AmbientAlgebra, S: Subspace) -> dict:
    """Inverse of :func:`parse_candidate` on the canonical basis of S."""
    fam = alg.family
    amb = {"family": "f4-model"} if alg.is_model else {"family": fam.tag.value, "n": fam.n}
    basis = []
    for b in S.basis:
        if alg.is_model:
            X = _so7_matrix(b[:21])
            basis.append([[[_qstr(x) for x in row] for row in X], _qstr(b[A_INDEX]),
                          [_qstr(x) for x in b[GA_SLICE.start:]]])
        else:
            M, N = alg.matrix(b), alg.matrix_size
            basis.append([[[_qstr(GaussianScalar.of(M.get((i, j), 0)).re), _qstr(GaussianScalar.of(M.get((i, j), 0)).im)]
                           for j in range(N)] for i in range(N)])
    return {"ambient": amb, "basis": basis}


def check_document(doc: dict, seed: int = DEFAULT_SEED, label: str = "file") -> tuple:
    """(CaseResult, verdict); raises CheckFileError, NotASubalgebra or NotInNormalPosition."""
    alg, S = parse_candidate(doc)
    cand = candidate(alg, S, label)
    v = spherical(alg, cand, seed)
    res = CaseResult(case_id=label, theorem_id="check", family=alg.family.label, n=alg.family.n, params={},
                     expected=None, computed=verdict_json(v), dims=candidate_dims(cand, v.complement_dim),
                     ranks_at_samples=tuple(v.ranks_at_samples), status=PASS)
    return res, v


def check_file(path: str, seed: int = DEFAULT_SEED) -> CaseResult:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CheckFileError(f"{path}: {exc}") from None
    return check_document(doc, seed, os.path.basename(path))[0]


# ---------------------------------------------------------------------------
# selftest


def selftest(seed: int = DEFAULT_SEED) -> list:
    """(name, ok) for a quick pass over the structural invariants."""
    from .subalgebra_toolkit import bracket_space

    out = []
    for fam in (SO(3), SO(4), SU(1), SU(2), SU(3), SP(2), F4):
        alg = construct_algebra(fam)
        basis = [alg.unit(i) for i in range(min(alg.dim, 8))]
        jac = all(not any(sum(t) for t in zip(
            alg.bracket(x, alg.bracket(y, z)), alg.bracket(y, alg.bracket(z, x)), alg.bracket(z, alg.bracket(x, y))))
            for x in basis for y in basis for z in basis)
        out.append((f"jacobi {fam.label}", jac))
        ga, g2a = alg["g_alpha"], alg["g_2alpha"]
        if ga.dim:  # su(1,1) has g_alpha = 0
            out.append((f"[g_a,g_a] = g_2a {fam.label}", bracket_space(alg, ga, ga) == g2a))
        if not alg.is_model:
            k, p = alg["k"], alg["p"]
            ok = (k.contains(bracket_space(alg, k, k)) and p.contains(bracket_space(alg, k, p))
                  and k.contains(bracket_space(alg, p, p)))
            out.append((f"cartan {fam.label}", ok))
    r1 = run_campaign("5.2", [4], seed).text()
    r2 = run_campaign("5.2", [4], seed).text()
    out.append(("campaign determinism 5.2 n=4", r1 == r2))
    rep = run_campaign("6.2", [3], seed)
    out.append(("campaign 6.2 n=3", rep.exit_code == EXIT_OK))
    return out


# ---------------------------------------------------------------------------
# argument handling


def _emit(report: Report, path: str | None):
    text = report.text()
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Exact sphericity checks for rank-one subalgebras.")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the pseudo-random sample vector")
    p.add_argument("--timing", action="store_true", help="record wall-clock time per case")
    sub = p.add_subparsers(dest="cmd", required=True)
    t = sub.add_parser("table", help="replay one classification table")
    t.add_argument("--id", required=True, choices=list(THEOREMS) + ["8.4-facts"])
    t.add_argument("--n-min", type=int)
    t.add_argument("--n-max", type=int)
    t.add_argument("--json", metavar="OUT", help="also write the JSONL report here")
    c = sub.add_parser("check", help="check a candidate subalgebra file")
    c.add_argument("--file", required=True)
    e = sub.add_parser("explore", help="non-asserting scan of suspected table inaccuracies")
    e.add_argument("--family", required=True, choices=sorted(EXPLORE_TABLES))
    e.add_argument("--n", type=int)
    e.add_argument("--json", metavar="OUT")
    sub.add_parser("selftest", help="structural invariant checks")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.cmd == "table":
            if args.id in ("8.5", "8.1-facts", "8.4-facts"):
                ns = [None]
            else:
                if args.n_min is None:
                    parser.error("--n-min is required for this table")
                hi = args.n_max if args.n_max is not None else args.n_min
                if hi < args.n_min:
                    parser.error("--n-max is smaller than --n-min")
                ns = list(range(args.n_min, hi + 1))
            report = run_campaign(args.id, ns, args.seed, args.timing)
            _emit(report, args.json)
            return report.exit_code
        if args.cmd == "explore":
            if args.family != "f4-model" and args.n is None:
                parser.error("--n is required for this family")
            report = explore(args.family, args.n, args.seed, args.timing)
            _emit(report, args.json)
            return EXIT_OK
        if args.cmd == "check":
            try:
                res = check_file(args.file, args.seed)
            except (NotASubalgebra, NotInNormalPosition) as exc:
                print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True))
                return EXIT_FAIL
            print(json.dumps(res.to_json(), sort_keys=True))
            return EXIT_OK
        results = selftest(args.seed)
        for name, ok in results:
            print(f"{'ok  ' if ok else 'FAIL'} {name}")
        return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except (CheckFileError, OSError, ValueError) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
