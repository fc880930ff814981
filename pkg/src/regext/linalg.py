"""Exact sparse linear algebra over the rationals.

Vectors are ``dict[int, Fraction]`` with no stored zeros.  Matrices are
column-major dicts of such vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional

Vec = dict  # int -> Fraction


def vadd(x: Mapping, y: Mapping, c=1) -> Vec:
    """x + c*y."""
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(x: Mapping, c) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


class SparseMatrix:
    """Square or rectangular matrix with exact entries, stored by column."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Optional[dict] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = {j: c for j, c in (cols or {}).items() if c}

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_entries(cls, nrows, ncols, entries: Iterable[tuple[int, int, object]]):
        cols: dict = {}
        for r, c, v in entries:
            if v:
                cols.setdefault(c, {})[r] = Fraction(v)
        return cls(nrows, ncols, cols)

    def entries(self):
        """(row, col, value) triples in row-major order."""
        out = [(r, c, v) for c, col in self.cols.items() for r, v in col.items()]
        out.sort()
        return out

    def get(self, r: int, c: int):
        return self.cols.get(c, {}).get(r, 0)

    def apply(self, v: Mapping) -> Vec:
        out: Vec = {}
        for j, x in v.items():
            col = self.cols.get(j)
            if not col:
                continue
            for i, a in col.items():
                s = out.get(i, 0) + a * x
                if s:
                    out[i] = s
                else:
                    del out[i]
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        return SparseMatrix(self.nrows, other.ncols, {j: self.apply(c) for j, c in other.cols.items()})

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.combine(other, 1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.combine(other, -1)

    def combine(self, other: "SparseMatrix", c) -> "SparseMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("dimension mismatch")
        cols = dict(self.cols)
        for j, col in other.cols.items():
            cols[j] = vadd(cols.get(j, {}), col, c)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {j: vscale(col, c) for j, col in self.cols.items()})

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.cols) == (other.nrows, other.ncols, other.cols)

    def trace(self):
        return sum((col.get(j, 0) for j, col in self.cols.items()), Fraction(0))

    def ratio_to(self, other: "SparseMatrix"):
        """The scalar c with self == c * other, or None if not proportional."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        j, col = next(iter(other.cols.items()))
        i, v = next(iter(col.items()))
        c = Fraction(self.get(i, j)) / v
        return c if self == other.scale(c) else None


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return a @ b - b @ a


class Echelon:
    """Incremental reduced row echelon form.

    Each stored row remembers how it was built from the vectors passed to
    :meth:`add`, so vectors in the span can be written in terms of the
    accepted (independent) inputs.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[Hashable, Vec] = {}  # pivot -> row with 1 at pivot
        self.track = track
        self.combos: dict[Hashable, Vec] = {}
        self.accepted: list = []  # tags of independent inputs, in order

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Mapping) -> tuple[Vec, Vec]:
        """Residual of v modulo the span, and the pivot coefficients used."""
        used = {p: v[p] for p in v if p in self.rows}
        res = dict(v)
        for p, c in used.items():
            res = vadd(res, self.rows[p], -c)
        return res, used

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)[0]

    def add(self, v: Mapping, tag=None) -> bool:
        """Insert v; return True if it enlarged the span."""
        res, used = self.reduce(v)
        if not res:
            return False
        pivot = min(res)
        c = res[pivot]
        row = vscale(res, 1 / Fraction(c))
        combo: Vec = {}
        if self.track:
            # res = v - sum used[p] * row_p
            combo = {len(self.accepted): Fraction(1)}
            for p, u in used.items():
                combo = vadd(combo, self.combos[p], -u)
            combo = vscale(combo, 1 / Fraction(c))
        for p, r in self.rows.items():
            a = r.get(pivot)
            if a:
                self.rows[p] = vadd(r, row, -a)
                if self.track:
                    self.combos[p] = vadd(self.combos[p], combo, -a)
        self.rows[pivot] = row
        if self.track:
            self.combos[pivot] = combo
        self.accepted.append(tag)
        return True

    def coordinates(self, v: Mapping) -> Vec:
        """Coefficients of v over the accepted inputs (by acceptance order).

        Raises ValueError if v is outside the span."""
        if not self.track:
            raise RuntimeError("coordinates need track=True")
        res, used = self.reduce(v)
        if res:
            raise ValueError("vector not in span")
        out: Vec = {}
        for p, c in used.items():
            out = vadd(out, self.combos[p], c)
        return out


def nullspace(equations: Iterable[Mapping], nvars: int, stop_at: Optional[int] = None) -> list[Vec]:
    """Basis of {x : e.x = 0 for every equation e} over variables 0..nvars-1.

    If ``stop_at`` is given, elimination stops as soon as the rank reaches
    it; the returned basis then spans the solution space of the equations
    seen so far (callers use this only when that rank already forces the
    answer).
    """
    ech = Echelon()
    for e in equations:
        if e:
            ech.add(e)
            if stop_at is not None and len(ech) >= stop_at:
                break
    pivots = ech.rows
    basis = []
    for f in range(nvars):
        if f in pivots:
            continue
        x = {f: Fraction(1)}
        for p, row in pivots.items():
            a = row.get(f)
            if a:
                x[p] = -a
        basis.append(x)
    return basis


def rank(rows: Iterable[Mapping]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product; index (i, j) of the factors maps to i*dim_b + j."""
    cols: dict = {}
    for ca, cola in a.cols.items():
        for cb, colb in b.cols.items():
            cols[ca * b.ncols + cb] = {
                ra * b.nrows + rb: va * vb for ra, va in cola.items() for rb, vb in colb.items()
            }
    return SparseMatrix(a.nrows * b.nrows, a.ncols * b.ncols, cols)
