"""Wide / narrow decisions for regular subalgebras.

A regular subalgebra is determined here by its closed root subset T; the
Cartan part is assumed to contain [g_a, g_-a] for every a in the symmetric
part of T, and the wide/narrow verdicts do not depend on it further.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .chevmod import (
    build_module,
    expected_character,
    is_indecomposable_oracle,
    is_weight_of,
    lowering_span,
    module_oracle,
)
from .chevmod.character import CHARACTER_CAP
from .chevmod.oracle import ORACLE_CAP
from .closed_sets import (
    RootSubset,
    decompose,
    enumerate_closed,
    enumerate_closed_up_to_conjugacy,
    require_closed,
    symmetrize,
)
from .dynkin import SimpleRootPath, build_diagram, escape_path
from .errors import BudgetExceeded
from .linalg import SparseMatrix, kron
from .rootsys import (
    LieType,
    RootSystem,
    RootSystemError,
    Weight,
    build_root_system,
    dominant_weights_up_to,
    weyl_dimension,
)

log = logging.getLogger(__name__)


class NoWitness(ValueError):
    """A narrow witness was requested where none can exist."""


@dataclass(frozen=True)
class WitnessCertificate:
    kind: str  # wide | narrow_case1 | narrow_case2
    subset: RootSubset
    symmetrized: RootSubset
    lam: Optional[Weight] = None
    l: Optional[int] = None  # 0-based index of the chosen simple root
    path: Optional[SimpleRootPath] = None
    witness_weight: Optional[Weight] = None
    validated_by: Optional[str] = None  # module | criterion

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.lam is not None:
            out["lambda"] = list(self.lam.coords)
        if self.l is not None:
            out["l"] = self.l + 1
        if self.path is not None:
            out["path"] = [v + 1 for v in self.path.vertices]
        if self.witness_weight is not None:
            out["witness_weight"] = list(self.witness_weight.coords)
        if self.validated_by is not None:
            out["validated_by"] = self.validated_by
        return out


def is_wide(T: RootSubset) -> tuple[bool, RootSubset]:
    """Wide iff [T u -T] is the whole root system."""
    require_closed(T)
    S = symmetrize(T)
    return S.is_full(), S


def _check_weight(sys: RootSystem, lam: Weight) -> None:
    if len(lam.coords) != sys.rank or not lam.is_dominant():
        raise RootSystemError(f"{lam} is not a dominant weight of {sys.lie_type}")


@lru_cache(maxsize=4096)
def _span_cached(sys: RootSystem, lam_coords, smask: int):
    m = build_module(sys, Weight(lam_coords))
    return lowering_span(m, RootSubset(sys, smask))


def lambda_wide(T: RootSubset, lam: Weight, cap: int = ORACLE_CAP) -> bool:
    """V(lambda) restricts indecomposably iff [T u -T].lambda = V(lambda)."""
    require_closed(T)
    sys = T.sys
    _check_weight(sys, lam)
    dim = weyl_dimension(sys, lam)
    if dim > cap:
        raise BudgetExceeded(f"dim V({lam}) = {dim} exceeds the cap {cap}")
    span = _span_cached(sys, lam.coords, symmetrize(T).mask)
    return span.dim == dim


def _choose_l(lam: Weight) -> int:
    return next(i for i, m in enumerate(lam.coords) if m > 0)


def narrow_witness(T: RootSubset, lam: Weight, cap: int = ORACLE_CAP) -> WitnessCertificate:
    """A weight of V(lambda) outside [T u -T].lambda, built as in the
    two-case argument, then re-validated from scratch."""
    wide, S = is_wide(T)
    sys = T.sys
    _check_weight(sys, lam)
    if wide:
        raise NoWitness("T is wide; no narrow witness exists")
    if lam.is_zero():
        raise NoWitness("lambda = 0: narrowness concerns non-trivial modules only")
    l = _choose_l(lam)
    alpha_l = sys.simple_root(l)
    if alpha_l not in S:
        cert = WitnessCertificate("narrow_case1", T, S, lam, l, None, lam - sys.root_to_weight(alpha_l))
    else:
        path = escape_path(l, S, build_diagram(sys))
        cert = WitnessCertificate("narrow_case2", T, S, lam, l, path, lam - sys.root_to_weight(path.total(sys)))
    how = validate_certificate(cert, cap)
    return WitnessCertificate(cert.kind, T, S, lam, l, cert.path, cert.witness_weight, how)


class InvalidCertificate(AssertionError):
    pass


def _in_positive_monoid(target: Sequence[int], gens: list[tuple[int, ...]]) -> bool:
    """Is target a sum of (repeatable) generators, all nonnegative vectors?"""
    target = tuple(target)
    if any(x < 0 for x in target):
        return False
    seen = {tuple(0 for _ in target)}
    todo = list(seen)
    while todo:
        v = todo.pop()
        for g in gens:
            w = tuple(a + b for a, b in zip(v, g))
            if w == target:
                return True
            if w not in seen and all(a <= b for a, b in zip(w, target)):
                seen.add(w)
                todo.append(w)
    return not any(target)


def validate_certificate(cert: WitnessCertificate, cap: int = ORACLE_CAP) -> str:
    """Recompute everything a certificate claims.  Returns how the
    non-membership half was checked: "module" (explicit span) or
    "criterion" (weights of the span lie in lambda minus sums of positive
    roots of [T u -T])."""
    sys = cert.subset.sys
    S = symmetrize(cert.subset)
    if S != cert.symmetrized:
        raise InvalidCertificate("symmetrized set does not match [T u -T]")
    if cert.kind == "wide":
        if not S.is_full():
            raise InvalidCertificate("wide certificate but [T u -T] != Phi")
        return "criterion"
    lam, l, w = cert.lam, cert.l, cert.witness_weight
    if S.is_full():
        raise InvalidCertificate("narrow certificate for a wide subset")
    if lam.coords[l] <= 0:
        raise InvalidCertificate("chosen simple root has m_l = 0")
    if cert.kind == "narrow_case1":
        if sys.simple_root(l) in S:
            raise InvalidCertificate("case 1 needs alpha_l outside [T u -T]")
        drop = sys.simple_root(l)
    elif cert.kind == "narrow_case2":
        vs = cert.path.vertices
        if vs[0] != l:
            raise InvalidCertificate("path must start at alpha_l")
        if any(sys.simple_root(v) not in S for v in vs[:-1]) or sys.simple_root(vs[-1]) in S:
            raise InvalidCertificate("path interior must lie in [T u -T] and its end outside")
        drop = cert.path.total(sys)
    else:
        raise InvalidCertificate(f"unknown certificate kind {cert.kind}")
    if lam - sys.root_to_weight(drop) != w:
        raise InvalidCertificate("witness weight is not lambda minus the path sum")

    dim = weyl_dimension(sys, lam)
    if dim <= CHARACTER_CAP:
        member = w in expected_character(sys, lam)
    else:
        member = is_weight_of(sys, lam, w)
    if not member:
        raise InvalidCertificate(f"{w} is not a weight of V({lam})")

    if dim <= cap:
        span = _span_cached(sys, lam.coords, S.mask)
        if w in span.weights:
            raise InvalidCertificate(f"{w} is a weight of [T u -T].lambda")
        return "module"
    gens = [r.coeffs for r in S.positive_roots()]
    if _in_positive_monoid(drop.coeffs, gens):
        raise InvalidCertificate(f"{drop} is a sum of positive roots of [T u -T]")
    return "criterion"


# -- exhaustive verification ---------------------------------------------


@dataclass
class OracleCheck:
    lam: Weight
    dim: int
    lambda_wide: bool
    indecomposable: bool
    commutant_dim: int
    radical_dim: int

    @property
    def agree(self) -> bool:
        return self.lambda_wide == self.indecomposable

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam.coords),
            "dim": self.dim,
            "lambda_wide": self.lambda_wide,
            "indecomposable": self.indecomposable,
            "commutant_dim": self.commutant_dim,
            "radical_dim": self.radical_dim,
            "agree": self.agree,
        }


def oracle_check(T: RootSubset, lam: Weight, cap: int = ORACLE_CAP) -> OracleCheck:
    """Decide lambda-wideness both ways: by the span criterion and by the
    commutant of the restricted module."""
    m = build_module(T.sys, lam, cap)
    lw = lambda_wide(T, lam, cap)
    res = is_indecomposable_oracle(m, T, cap)
    return OracleCheck(lam, m.dim, lw, res.indecomposable, res.commutant_dim, res.radical_dim)


@dataclass
class SubsetVerdict:
    subset: RootSubset
    kind: str
    verdict: str  # wide | narrow | violation
    certificates: list = field(default_factory=list)
    oracle_checks: list = field(default_factory=list)
    orbit_size: Optional[int] = None
    problems: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "subset": self.subset.to_json(),
            "kind": self.kind,
            "verdict": self.verdict,
            "certificates": [c.to_json() for c in self.certificates],
            "oracle_checks": [c.to_json() for c in self.oracle_checks],
        }
        if self.orbit_size is not None:
            out["orbit_size"] = self.orbit_size
        if self.problems:
            out["problems"] = self.problems
        return out


@dataclass
class ClassificationReport:
    system: str
    mode: str
    grid: list  # of Weight
    coeff_bound: int
    dim_cap: int
    results: list = field(default_factory=list)
    incomplete: bool = False
    elapsed: float = 0.0  # not serialised

    @property
    def dichotomy_holds(self) -> bool:
        return all(r.verdict in ("wide", "narrow") for r in self.results)

    def counts(self) -> dict:
        out = {"total": len(self.results), "wide": 0, "narrow": 0, "violation": 0}
        for r in self.results:
            out[r.verdict] += 1
        out["oracle_checks"] = sum(len(r.oracle_checks) for r in self.results)
        out["criterion_validated"] = sum(
            1 for r in self.results for c in r.certificates if c.validated_by == "criterion" and c.kind != "wide"
        )
        return out

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "mode": self.mode,
            "grid": {"coeff_bound": self.coeff_bound, "weights": [list(w.coords) for w in self.grid]},
            "caps": {"dim_cap": self.dim_cap},
            "incomplete_flag": self.incomplete,
            "dichotomy_holds": self.dichotomy_holds,
            "summary": self.counts(),
            "results": [r.to_json() for r in self.results],
        }


def classify_subset(T: RootSubset, grid: Iterable[Weight], dim_cap: int = ORACLE_CAP,
                    with_oracle: bool = True) -> SubsetVerdict:
    kind = decompose(T).kind
    wide, S = is_wide(T)
    out = SubsetVerdict(T, kind, "wide" if wide else "narrow")
    if wide:
        out.certificates.append(WitnessCertificate("wide", T, S, validated_by=validate_certificate(WitnessCertificate("wide", T, S))))
    for lam in grid:
        if not wide:
            try:
                out.certificates.append(narrow_witness(T, lam, dim_cap))
            except (InvalidCertificate, NoWitness) as exc:
                out.problems.append(f"{lam}: {exc}")
        if with_oracle and weyl_dimension(T.sys, lam) <= dim_cap:
            chk = oracle_check(T, lam, dim_cap)
            out.oracle_checks.append(chk)
            if not chk.agree:
                out.problems.append(f"{lam}: span criterion and commutant oracle disagree")
            if chk.lambda_wide != wide:
                out.problems.append(f"{lam}: lambda-wide is {chk.lambda_wide} for a {'wide' if wide else 'narrow'} subset")
    if out.problems:
        out.verdict = "violation"
    return out


def _classify_job(args):
    type_name, mask, coeffs, dim_cap, with_oracle = args
    sys = build_root_system(type_name)
    return classify_subset(RootSubset(sys, mask), [Weight(c) for c in coeffs], dim_cap, with_oracle)


def verify_regular_extreme(sys: RootSystem, coeff_bound: int = 2, dim_cap: int = ORACLE_CAP,
                           mode: str = "full", with_oracle: bool = True,
                           time_budget: Optional[float] = None, workers: int = 1) -> ClassificationReport:
    """Check the wide/narrow dichotomy over every closed subset (one per
    Weyl orbit in ``conjugacy`` mode) and every weight of the grid.

    With ``workers > 1`` subsets are classified in separate processes; the
    results are collected in enumeration order, so the report does not
    depend on scheduling.
    """
    t0 = time.perf_counter()
    grid = dominant_weights_up_to(sys, coeff_bound)
    report = ClassificationReport(str(sys.lie_type), mode, grid, coeff_bound, dim_cap)
    if mode == "full":
        subsets = [(T, None) for T in enumerate_closed(sys)]
    elif mode == "conjugacy":
        subsets = enumerate_closed_up_to_conjugacy(sys)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    def over_budget():
        return time_budget is not None and time.perf_counter() - t0 > time_budget

    if workers > 1:
        jobs = [(str(sys.lie_type), T.mask, tuple(w.coords for w in grid), dim_cap, with_oracle) for T, _ in subsets]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (T, orbit), v in zip(subsets, pool.map(_classify_job, jobs, chunksize=8)):
                if over_budget():
                    report.incomplete = True
                    pool.shutdown(cancel_futures=True)
                    break
                # rebind to this process's root system object
                v.subset = T
                v.orbit_size = orbit
                report.results.append(v)
    else:
        for T, orbit in subsets:
            if over_budget():
                report.incomplete = True
                break
            v = classify_subset(T, grid, dim_cap, with_oracle)
            v.orbit_size = orbit
            report.results.append(v)
    report.elapsed = time.perf_counter() - t0
    log.info("%s: %d subsets in %.1fs", sys.lie_type, len(report.results), report.elapsed)
    return report


# -- non-simple algebras -----------------------------------------------


@dataclass
class NonsimpleReport:
    types: list
    lam: Weight
    eta: Weight
    v_dim: int
    v_indecomposable: bool
    v_commutant_dim: int
    w_dim: int
    w_summands: int
    w_all_trivial: bool
    w_indecomposable_under_g1: bool
    w_simple_under_g: bool

    @property
    def not_narrow(self) -> bool:
        return self.v_indecomposable

    @property
    def not_wide(self) -> bool:
        return self.w_summands > 1 and not self.w_indecomposable_under_g1

    def to_json(self) -> dict:
        return {
            "types": [str(t) for t in self.types],
            "lambda": list(self.lam.coords),
            "eta": list(self.eta.coords),
            "V": {"dim": self.v_dim, "indecomposable_under_g1": self.v_indecomposable,
                  "commutant_dim": self.v_commutant_dim},
            "W": {"dim": self.w_dim, "trivial_summands": self.w_summands, "all_trivial": self.w_all_trivial,
                  "indecomposable_under_g1": self.w_indecomposable_under_g1,
                  "indecomposable_under_g": self.w_simple_under_g},
            "first_factor_not_narrow": self.not_narrow,
            "first_factor_not_wide": self.not_wide,
        }


def _factor_matrices(mods: list, k: int, mats: list[SparseMatrix]) -> list[SparseMatrix]:
    """Embed operators on factor k into the tensor product of all factors."""
    out = []
    for a in mats:
        m = None
        for idx, mod in enumerate(mods):
            piece = a if idx == k else SparseMatrix.identity(mod.dim)
            m = piece if m is None else kron(m, piece)
        out.append(m)
    return out


def _tensor_weights(mods: list, k: int) -> list:
    """Weight of each tensor basis vector for the Cartan of factor k."""
    out = [()]
    for idx, mod in enumerate(mods):
        ws = mod.weights if idx == k else [None] * mod.dim
        out = [a + ((w,) if idx == k else ()) for a in out for w in ws]
    return out


def nonsimple_demo(types: Sequence, lam: Weight, eta: Weight, cap: int = ORACLE_CAP) -> NonsimpleReport:
    """For g = g1 + g2 + ...: V = V1(lam) x V2(0) x ... stays indecomposable
    over g1, while W = V1(0) x V2(eta) x ... splits over g1 into dim V2(eta)
    trivial lines."""
    types = [t if isinstance(t, LieType) else LieType.parse(str(t)) for t in types]
    if len(types) < 2:
        raise ValueError("need at least two simple factors")
    systems = [build_root_system(t) for t in types]
    _check_weight(systems[0], lam)
    _check_weight(systems[1], eta)
    if lam.is_zero():
        raise ValueError("lambda must be nonzero")
    if eta.is_zero():
        raise ValueError("eta must be nonzero: W has to be a non-trivial module")
    zero = [Weight((0,) * s.rank) for s in systems]

    v_mods = [build_module(systems[0], lam, cap)] + [build_module(s, z) for s, z in zip(systems[1:], zero[1:])]
    w_mods = [build_module(systems[0], zero[0])] + [build_module(systems[1], eta, cap)] + [
        build_module(s, z) for s, z in zip(systems[2:], zero[2:])
    ]

    def g1_ops(mods):
        m = mods[0]
        return _factor_matrices(mods, 0, [m.root_matrix(k) for k in range(len(systems[0].roots))])

    v_ops = g1_ops(v_mods)
    v_dim = v_ops[0].nrows
    v_res = module_oracle(_tensor_weights(v_mods, 0), v_ops)

    w_ops = g1_ops(w_mods)
    w_dim = w_ops[0].nrows
    w_weights = _tensor_weights(w_mods, 0)
    # every basis line u1 x u2_i x u3 ... is g1-stable with trivial action
    all_trivial = all(op.is_zero() for op in w_ops) and all(w == (zero[0],) for w in w_weights)
    lines = 0
    for i in range(w_dim):
        v = {i: 1}
        if all(not op.apply(v) for op in w_ops):
            lines += 1
    w_res = module_oracle(w_weights, w_ops)
    g2_ops = _factor_matrices(w_mods, 1, [w_mods[1].root_matrix(k) for k in range(len(systems[1].roots))])
    w_full = module_oracle(_tensor_weights(w_mods, 1), g2_ops)
    return NonsimpleReport(types, lam, eta, v_dim, v_res.indecomposable, v_res.commutant_dim,
                           w_dim, lines, all_trivial, w_res.indecomposable, w_full.indecomposable)
