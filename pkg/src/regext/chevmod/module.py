"""Explicit simple modules V(lambda) over the rationals.

V(lambda) is built weight space by weight space, going down from the
highest weight.  A vector of weight mu != lambda in the simple module is
zero exactly when every raising operator e_j kills it, so each candidate
vector f_i b is represented by its tuple of images (e_1 f_i b, ..., e_n f_i b),
computed from already-built spaces with e_j f_i = f_i e_j + delta_ij h_i.
An echelon basis of these images is a basis of V(lambda)_mu.  Freudenthal's
multiplicities are checked against the result afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from ..closed_sets import RootSubset, require_closed, symmetrize
from ..errors import BudgetExceeded
from ..linalg import Echelon, SparseMatrix, commutator
from ..rootsys import Root, RootSystem, RootSystemError, Weight, weyl_dimension
from .character import expected_character

MODULE_CAP = 2000


@lru_cache(maxsize=None)
def root_recipes(sys: RootSystem) -> dict:
    """For each non-simple positive root index k: (i, g, p) with
    roots[k] = alpha_i + roots[g], i the least such simple index, and p the
    largest integer with roots[g] - p alpha_i a root.

    Root vectors are then e_k = [e_i, e_g] / (p+1) and
    f_k = -[f_i, f_g] / (p+1)."""
    out = {}
    for k in range(sys.positive_count):
        beta = sys.roots[k]
        if beta.height == 1:
            continue
        for i in range(sys.rank):
            gamma = beta - sys.simple_root(i)
            g = sys.index.get(gamma.coeffs)
            if g is not None and g < sys.positive_count:
                break
        else:  # pragma: no cover - every positive root of height > 1 has one
            raise AssertionError(f"no decomposition for {beta}")
        alpha = sys.simple_root(i)
        p = 0
        while sys.is_root((gamma - Root(tuple((p + 1) * a for a in alpha.coeffs))).coeffs):
            p += 1
        out[k] = (i, g, p)
    return out


def coroot_coeffs(sys: RootSystem, beta: Root) -> tuple[int, ...]:
    """h_beta as an integer combination of the simple coroots h_i."""
    nb = sys.form(beta, beta)
    out = []
    for j, b in enumerate(beta.coeffs):
        q, r = divmod(b * sys.norms[j], nb)
        assert r == 0
        out.append(q)
    return tuple(out)


@dataclass
class ModuleRealization:
    sys: RootSystem
    highest_weight: Weight
    weights: list  # Weight of each basis vector
    spaces: dict  # Weight -> (offset, multiplicity)
    e: list  # SparseMatrix per simple root
    f: list
    h: list
    _root_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def highest_vector(self) -> dict:
        return {self.spaces[self.highest_weight][0]: Fraction(1)}

    def space_indices(self, mu: Weight) -> range:
        off, m = self.spaces[mu]
        return range(off, off + m)

    def root_matrix(self, k: int) -> SparseMatrix:
        """Action of e_beta for beta = sys.roots[k] (f_{-beta} when beta < 0)."""
        if k in self._root_cache:
            return self._root_cache[k]
        sys = self.sys
        p = sys.positive_count
        pos = k if k < p else k - p
        if sys.roots[pos].height == 1:
            i = sys.simple_indices.index(pos)
            mat = self.e[i] if k < p else self.f[i]
        else:
            i, g, q = root_recipes(sys)[pos]
            if k < p:
                mat = commutator(self.e[i], self.root_matrix(g)).scale(Fraction(1, q + 1))
            else:
                mat = commutator(self.f[i], self.root_matrix(g + p)).scale(Fraction(-1, q + 1))
        self._root_cache[k] = mat
        return mat

    def coroot_matrix(self, beta: Root) -> SparseMatrix:
        c = coroot_coeffs(self.sys, beta)
        diag = {}
        for idx, mu in enumerate(self.weights):
            v = sum(ci * mi for ci, mi in zip(c, mu.coords))
            if v:
                diag[idx] = {idx: Fraction(v)}
        return SparseMatrix(self.dim, self.dim, diag)

    def rescaled(self, i: int, c) -> "ModuleRealization":
        """The same module with e_i -> c e_i and f_i -> f_i / c."""
        c = Fraction(c)
        e = list(self.e)
        f = list(self.f)
        e[i] = e[i].scale(c)
        f[i] = f[i].scale(1 / c)
        return ModuleRealization(self.sys, self.highest_weight, self.weights, self.spaces, e, f, self.h)

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        def mat(m: SparseMatrix):
            return [[r, c, v.numerator, v.denominator] for r, c, v in m.entries()]

        return {
            "type": str(self.sys.lie_type),
            "highest_weight": list(self.highest_weight.coords),
            "dim": self.dim,
            "basis_weights": [list(w.coords) for w in self.weights],
            "e": [mat(m) for m in self.e],
            "f": [mat(m) for m in self.f],
        }

    @classmethod
    def from_json(cls, doc: Union[dict, str]) -> "ModuleRealization":
        from ..rootsys import build_root_system

        if isinstance(doc, str):
            doc = json.loads(doc)
        sys = build_root_system(doc["type"])
        weights = [Weight(tuple(w)) for w in doc["basis_weights"]]
        n = len(weights)

        def mat(rows):
            return SparseMatrix.from_entries(n, n, ((r, c, Fraction(a, b)) for r, c, a, b in rows))

        return cls(
            sys,
            Weight(tuple(doc["highest_weight"])),
            weights,
            _spaces_of(weights),
            [mat(m) for m in doc["e"]],
            [mat(m) for m in doc["f"]],
            _cartan_matrices(sys, weights),
        )


def _spaces_of(weights: Sequence[Weight]) -> dict:
    spaces: dict = {}
    for idx, w in enumerate(weights):
        off, m = spaces.get(w, (idx, 0))
        if off + m != idx:
            raise ValueError("basis vectors of one weight must be contiguous")
        spaces[w] = (off, m + 1)
    return spaces


def _cartan_matrices(sys: RootSystem, weights: Sequence[Weight]) -> list:
    n = len(weights)
    return [
        SparseMatrix(n, n, {idx: {idx: Fraction(w.coords[i])} for idx, w in enumerate(weights) if w.coords[i]})
        for i in range(sys.rank)
    ]


def build_module(sys: RootSystem, lam: Weight, cap: int = MODULE_CAP) -> ModuleRealization:
    if len(lam.coords) != sys.rank or not lam.is_dominant():
        raise RootSystemError(f"{lam} is not a dominant weight of {sys.lie_type}")
    dim = weyl_dimension(sys, lam)
    if dim > cap:
        raise BudgetExceeded(f"dim V({lam}) = {dim} exceeds the module cap {cap}")
    return _build(sys, lam.coords)


@lru_cache(maxsize=64)
def _build(sys: RootSystem, lam_coords) -> ModuleRealization:
    n = sys.rank
    cartan = sys.cartan
    mult: dict = {lam_coords: 1}
    # e_blk[(j, mu)][b] : image of basis vector b of V_mu in V_{mu+alpha_j}
    # f_blk[(i, nu)][b] : image of basis vector b of V_nu in V_{nu-alpha_i}
    e_blk: dict = {(j, lam_coords): [{}] for j in range(n)}
    f_blk: dict = {}

    def up(mu, j):
        return tuple(x + a for x, a in zip(mu, cartan[j]))

    def down(mu, i):
        return tuple(x - a for x, a in zip(mu, cartan[i]))

    level = [lam_coords]
    order = [lam_coords]
    while level:
        targets = sorted({down(nu, i) for nu in level for i in range(n)}, reverse=True)
        nxt = []
        for mu in targets:
            cands = []  # (i, b, image)
            for i in range(n):
                nu = up(mu, i)
                if nu not in mult:
                    continue
                for b in range(mult[nu]):
                    image = {}
                    for j in range(n):
                        if up(mu, j) not in mult:
                            continue
                        # e_j f_i b = f_i (e_j b) + delta_ij <nu, alpha_i^vee> b
                        vec: dict = {}
                        blk = e_blk.get((j, nu))
                        eb = blk[b] if blk else None
                        if eb:
                            fcols = f_blk[(i, up(nu, j))]
                            for c, x in eb.items():
                                for r, y in fcols[c].items():
                                    vec[r] = vec.get(r, 0) + x * y
                        if i == j and nu[i]:
                            vec[b] = vec.get(b, 0) + nu[i]
                        for r, v in vec.items():
                            if v:
                                image[(j, r)] = Fraction(v)
                    cands.append((i, b, image))
            ech = Echelon(track=True)
            chosen = []
            for i, b, image in cands:
                if ech.add(image, (i, b)):
                    chosen.append(image)
            if not chosen:
                continue
            mult[mu] = len(chosen)
            nxt.append(mu)
            for j in range(n):
                if up(mu, j) in mult:
                    e_blk[(j, mu)] = [{r: v for (jj, r), v in img.items() if jj == j} for img in chosen]
            for i, b, image in cands:
                f_blk.setdefault((i, up(mu, i)), [{} for _ in range(mult[up(mu, i)])])[b] = ech.coordinates(image)
        order.extend(nxt)
        level = nxt

    # global basis: weights in construction order (depth, then descending)
    offsets = {}
    weights = []
    for mu in order:
        offsets[mu] = len(weights)
        weights.extend([Weight(mu)] * mult[mu])
    dim = len(weights)
    e_cols = [dict() for _ in range(n)]
    f_cols = [dict() for _ in range(n)]
    for (j, mu), cols in e_blk.items():
        tgt = up(mu, j)
        if tgt not in offsets:
            continue
        for b, col in enumerate(cols):
            if col:
                e_cols[j][offsets[mu] + b] = {offsets[tgt] + r: v for r, v in col.items()}
    for (i, nu), cols in f_blk.items():
        tgt = down(nu, i)
        for b, col in enumerate(cols):
            if col:
                f_cols[i][offsets[nu] + b] = {offsets[tgt] + r: Fraction(v) for r, v in col.items()}
    e = [SparseMatrix(dim, dim, c) for c in e_cols]
    f = [SparseMatrix(dim, dim, c) for c in f_cols]
    spaces = {Weight(mu): (offsets[mu], mult[mu]) for mu in order}
    m = ModuleRealization(sys, Weight(lam_coords), weights, spaces, e, f, _cartan_matrices(sys, weights))

    char = expected_character(sys, Weight(lam_coords), cap=max(dim, 1))
    got = {w: k for w, (_, k) in spaces.items()}
    if got != char.weights:
        raise AssertionError(f"V({Weight(lam_coords)}): weight spaces disagree with Freudenthal")
    return m


Generator = Union[Root, tuple]


def generator_matrix(m: ModuleRealization, g: Generator) -> SparseMatrix:
    """Root -> e_root (f_{-root} for negative roots); ("h", i) -> h_i."""
    if isinstance(g, tuple) and g and g[0] == "h":
        return m.h[g[1]]
    if not isinstance(g, Root):
        g = Root(tuple(g))
    return m.root_matrix(m.sys.root_index(g))


def act(m: ModuleRealization, word: Sequence[Generator], v: dict) -> dict:
    """g_1 g_2 ... g_k . v (the rightmost generator acts first)."""
    if any(not 0 <= k < m.dim for k in v):
        raise ValueError("vector index outside the module")
    out = dict(v)
    for g in reversed(list(word)):
        out = generator_matrix(m, g).apply(out)
    return out


@dataclass(frozen=True)
class SpanResult:
    dim: int
    weights: frozenset  # of Weight
    basis: tuple  # sparse vectors

    def is_full(self, m: ModuleRealization) -> bool:
        return self.dim == m.dim


def subalgebra_span(m: ModuleRealization, T: RootSubset) -> SpanResult:
    """[T u -T].lambda: the span of v_lambda under the lowering operators
    f_beta, beta a positive root of [T u -T]."""
    require_closed(T)
    return lowering_span(m, symmetrize(T))


def lowering_span(m: ModuleRealization, S: RootSubset) -> SpanResult:
    sys = m.sys
    p = sys.positive_count
    lowering = [m.root_matrix(k + p) for k in S.indices() if k < p]
    spaces: dict = {}
    basis = []
    start = m.highest_vector
    todo = [start]
    ech0 = Echelon()
    ech0.add(start)
    spaces[m.highest_weight] = ech0
    basis.append(start)
    while todo:
        v = todo.pop()
        for mat in lowering:
            w = mat.apply(v)
            if not w:
                continue
            mu = m.weights[next(iter(w))]
            ech = spaces.setdefault(mu, Echelon())
            if ech.add(w):
                basis.append(w)
                todo.append(w)
    weights = frozenset(mu for mu, ech in spaces.items() if len(ech))
    return SpanResult(len(basis), weights, tuple(basis))
