"""Indecomposability by commutant computation.

The restricted algebra is taken to contain the whole Cartan subalgebra
together with the root vectors of T.  A module is indecomposable iff its
commutant C is local, i.e. dim C - dim rad C = 1; in characteristic zero
rad C is the kernel of the trace form (X, Y) -> tr(XY) on C.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..closed_sets import RootSubset
from ..errors import BudgetExceeded
from ..linalg import SparseMatrix, nullspace, rank
from .module import ModuleRealization

ORACLE_CAP = 64


@dataclass(frozen=True)
class OracleResult:
    indecomposable: bool
    commutant_dim: int
    radical_dim: int

    @property
    def semisimple_quotient_dim(self) -> int:
        return self.commutant_dim - self.radical_dim


def commutant(weights: list, generators: Iterable[SparseMatrix], weight_preserving: bool = True,
              stop_at_scalars: bool = False) -> list[dict]:
    """Basis of {X : XA = AX for every generator A}.

    With ``weight_preserving`` the Cartan subalgebra is among the
    generators, so X is block diagonal over the weight spaces given by
    ``weights`` (the weight of each basis index); only those blocks are
    unknowns.  Returned matrices are dicts (row, col) -> value.
    """
    dim = len(weights)
    if weight_preserving:
        by_weight: dict = {}
        for idx, w in enumerate(weights):
            by_weight.setdefault(w, []).append(idx)
        var = {}
        for idxs in by_weight.values():
            for r in idxs:
                for c in idxs:
                    var[(r, c)] = len(var)
        same = {idx: by_weight[w] for idx, w in enumerate(weights)}
    else:
        var = {(r, c): r * dim + c for r in range(dim) for c in range(dim)}
        everything = list(range(dim))
        same = {idx: everything for idx in range(dim)}
    nvars = len(var)

    def equations():
        # (A X - X A)[r, c] = sum_k A[r,k] X[k,c] - sum_k X[r,k] A[k,c]
        for a in generators:
            rows_of = {}
            for k, col in a.cols.items():
                for r, v in col.items():
                    rows_of.setdefault(r, []).append((k, v))
            for c in range(dim):
                # rows where A X or X A can be nonzero in column c
                rows = {r for k in same[c] for r, _ in _col_items(a, k)}
                for k in a.cols.get(c, {}):
                    rows.update(same[k])
                for r in sorted(rows):
                    eq = {}
                    for k, v in rows_of.get(r, ()):
                        key = var.get((k, c))
                        if key is not None:
                            eq[key] = eq.get(key, 0) + v
                    for k, v in a.cols.get(c, {}).items():
                        key = var.get((r, k))
                        if key is not None:
                            eq[key] = eq.get(key, 0) - v
                    eq = {k: v for k, v in eq.items() if v}
                    if eq:
                        yield eq

    null = nullspace(equations(), nvars, stop_at=nvars - 1 if stop_at_scalars else None)
    inv = {v: k for k, v in var.items()}
    return [{inv[k]: v for k, v in x.items()} for x in null]


def _col_items(a: SparseMatrix, k: int):
    return a.cols.get(k, {}).items()


def trace_form_rank(basis: list[dict]) -> int:
    def tr(x: dict, y: dict):
        return sum((v * y[(c, r)] for (r, c), v in x.items() if (c, r) in y), Fraction(0))

    gram = [{j: t for j, y in enumerate(basis) if (t := tr(x, y))} for x in basis]
    return rank(gram)


def restricted_generators(m: ModuleRealization, T: RootSubset) -> list[SparseMatrix]:
    return [m.root_matrix(k) for k in T.indices()]


def is_indecomposable_oracle(m: ModuleRealization, T: RootSubset, cap: int = ORACLE_CAP) -> OracleResult:
    """Restrict V(lambda) to h + sum over beta in T of g_beta and decide
    indecomposability from the commutant."""
    if m.dim > cap:
        raise BudgetExceeded(f"module dimension {m.dim} exceeds the oracle cap {cap}")
    return module_oracle(m.weights, restricted_generators(m, T))


def module_oracle(weights: list, generators: list[SparseMatrix], weight_preserving: bool = True) -> OracleResult:
    basis = commutant(weights, generators, weight_preserving, stop_at_scalars=True)
    cdim = len(basis)
    if cdim == 1:
        return OracleResult(True, 1, 0)
    r = trace_form_rank(basis)
    return OracleResult(r == 1, cdim, cdim - r)
