"""Irreducible root systems with exact integer pairings.

Roots are integer vectors in the simple-root basis, weights are integer
vectors in the fundamental-weight basis.  Node numbering is Bourbaki's; in
type E the branch node is alpha_2, attached to alpha_4.

The Cartan matrix is stored with ``cartan[i][j] = <alpha_i, alpha_j>
= 2(alpha_i, alpha_j) / (alpha_j, alpha_j)``, so row ``i`` is the root
``alpha_i`` written in fundamental-weight coordinates.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Union

__all__ = [
    "LieType",
    "Root",
    "Weight",
    "RootSystem",
    "RootSystemError",
    "build_root_system",
    "pairing",
    "reflect",
    "weyl_dimension",
    "dominant_weights_up_to",
    "expected_root_count",
]

FAMILIES = "ABCDEFG"
_TYPE_RE = re.compile(r"^\s*([A-Ga-g])\s*([0-9]+)\s*$")


class RootSystemError(ValueError):
    """Invalid Lie type, root or weight."""


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int
    # With strict=True the classical families start at C3 and D4, avoiding
    # the coincidences C2 = B2 and D3 = A3.
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        n = self.rank
        if fam not in FAMILIES:
            raise RootSystemError(f"unknown family {self.family!r}")
        if not isinstance(n, int) or n < 1:
            raise RootSystemError(f"rank must be a positive integer, got {n!r}")
        lo = {"A": 1, "B": 2, "C": 3 if self.strict else 2, "D": 4 if self.strict else 3}
        if fam in lo and n < lo[fam]:
            raise RootSystemError(f"type {fam} needs rank >= {lo[fam]}, got {n}")
        allowed = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
        if fam in allowed and n not in allowed[fam]:
            raise RootSystemError(f"type {fam} exists only in rank {allowed[fam]}, got {n}")

    @classmethod
    def parse(cls, text: str, strict: bool = False) -> "LieType":
        m = _TYPE_RE.match(text)
        if not m:
            raise RootSystemError(f"bad Lie type literal {text!r} (expected e.g. 'B3')")
        return cls(m.group(1), int(m.group(2)), strict)

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, order=True)
class Root:
    """A root in simple-root coordinates."""

    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __str__(self):
        return ",".join(map(str, self.coeffs))


@dataclass(frozen=True, order=True)
class Weight:
    """A weight in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """``"w:1,0"``; the ``w:`` prefix may be omitted."""
        body = text.strip()
        if body.lower().startswith("w:"):
            body = body[2:]
        try:
            return cls(tuple(int(x) for x in body.split(",")))
        except ValueError:
            raise RootSystemError(f"bad weight literal {text!r} (expected e.g. 'w:1,0')") from None

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __str__(self):
        return "w:" + ",".join(map(str, self.coords))


RootOrWeight = Union[Root, Weight]


def _diagram_data(t: LieType) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Squared lengths of the simple roots and the off-diagonal entries of
    the symmetric form, as (i, j, (alpha_i, alpha_j)) with 0-based nodes."""
    n = t.rank
    chain = [(i, i + 1, -1) for i in range(n - 1)]
    if t.family == "A":
        return [2] * n, chain
    if t.family == "B":
        return [4] * (n - 1) + [2], [(i, i + 1, -2) for i in range(n - 1)]
    if t.family == "C":
        return [2] * (n - 1) + [4], chain[:-1] + [(n - 2, n - 1, -2)]
    if t.family == "D":
        return [2] * n, chain[:-1] + [(n - 3, n - 1, -1)]
    if t.family == "E":
        edges = [(0, 2, -1), (1, 3, -1)] + [(i, i + 1, -1) for i in range(2, n - 1)]
        return [2] * n, edges
    if t.family == "F":
        return [4, 4, 2, 2], [(0, 1, -2), (1, 2, -2), (2, 3, -1)]
    # G2: alpha_1 short, alpha_2 long
    return [2, 6], [(0, 1, -3)]


class RootSystem:
    """The full root system of one simple type.

    ``roots`` lists the positive roots by height then lexicographically,
    followed by their negatives in the same order, so ``-roots[k]`` is
    ``roots[(k + positive_count) % len(roots)]``.
    """

    def __init__(self, lie_type: LieType):
        self.lie_type = lie_type
        self.rank = n = lie_type.rank
        norms, edges = _diagram_data(lie_type)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = norms[i]
        for i, j, v in edges:
            gram[i][j] = gram[j][i] = v
        self.norms = tuple(norms)
        self.gram = tuple(tuple(r) for r in gram)
        assert all(2 * gram[i][j] % norms[j] == 0 for i in range(n) for j in range(n))
        self.cartan = tuple(
            tuple(2 * gram[i][j] // norms[j] for j in range(n)) for i in range(n)
        )
        top = max(norms)
        self.symmetrizer = tuple(top // v for v in norms)

        positives = _reflection_closure(self.cartan)
        positives.sort(key=lambda c: (sum(c), c))
        self.positive_count = len(positives)
        self.roots = tuple(Root(c) for c in positives) + tuple(
            Root(tuple(-x for x in c)) for c in positives
        )
        self.index = {r.coeffs: k for k, r in enumerate(self.roots)}
        self.simple_indices = tuple(self.index[_unit(n, i)] for i in range(n))

    def __repr__(self):
        return f"RootSystem({self.lie_type})"

    def __len__(self):
        return len(self.roots)

    # -- lookups ---------------------------------------------------------

    def root_index(self, r: Union[Root, Iterable[int]]) -> int:
        key = r.coeffs if isinstance(r, Root) else tuple(r)
        try:
            return self.index[key]
        except KeyError:
            raise RootSystemError(f"{key} is not a root of {self.lie_type}") from None

    def is_root(self, coeffs: Iterable[int]) -> bool:
        return tuple(coeffs) in self.index

    def neg_index(self, k: int) -> int:
        p = self.positive_count
        return k + p if k < p else k - p

    def simple_root(self, i: int) -> Root:
        return self.roots[self.simple_indices[i]]

    def fundamental(self, i: int) -> Weight:
        return Weight(_unit(self.rank, i))

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return self.roots[: self.positive_count]

    @cached_property
    def sum_table(self) -> tuple[tuple[int, ...], ...]:
        """``sum_table[a][b]`` is the index of roots[a]+roots[b], or -1."""
        idx = self.index
        out = []
        for a in self.roots:
            row = []
            for b in self.roots:
                row.append(idx.get(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), -1))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def simple_reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        """Permutation of root indices induced by each simple reflection."""
        perms = []
        for i in range(self.rank):
            beta = self.simple_root(i)
            perms.append(tuple(self.index[reflect(r, beta, self).coeffs] for r in self.roots))
        return tuple(perms)

    @cached_property
    def highest_root(self) -> Root:
        return self.roots[self.positive_count - 1]

    @cached_property
    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    @cached_property
    def inverse_cartan(self):
        n = self.rank
        a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.cartan)]
        for c in range(n):
            p = next(r for r in range(c, n) if a[r][c] != 0)
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return tuple(tuple(row[n:]) for row in a)

    # -- conversions -----------------------------------------------------

    def root_to_weight(self, r: Root) -> Weight:
        n = self.rank
        return Weight(tuple(sum(r.coeffs[i] * self.cartan[i][j] for i in range(n)) for j in range(n)))

    def weight_in_root_coords(self, w: Weight):
        """Simple-root coordinates of a weight (rational in general)."""
        inv = self.inverse_cartan
        n = self.rank
        return tuple(sum(w.coords[i] * inv[i][j] for i in range(n)) for j in range(n))

    def form(self, x: RootOrWeight, y: RootOrWeight):
        """The invariant form, normalised so short roots have squared length 2.

        Integral on roots, rational once a weight is involved."""
        cx = x.coeffs if isinstance(x, Root) else self.weight_in_root_coords(x)
        cy = y.coeffs if isinstance(y, Root) else self.weight_in_root_coords(y)
        g = self.gram
        n = self.rank
        return sum(cx[i] * g[i][j] * cy[j] for i in range(n) for j in range(n) if g[i][j])


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def _reflection_closure(cartan) -> list[tuple[int, ...]]:
    """Positive roots from closing the simple roots under simple reflections."""
    n = len(cartan)
    seen = {_unit(n, i) for i in range(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for j in range(n):
                p = sum(c[i] * cartan[i][j] for i in range(n))
                if p == 0:
                    continue
                img = list(c)
                img[j] -= p
                img = tuple(img)
                if all(x <= 0 for x in img):
                    continue  # only -alpha_j; the positive system is closed under s_j otherwise
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return list(seen)


def build_root_system(t: Union[LieType, str]) -> RootSystem:
    if isinstance(t, str):
        t = LieType.parse(t)
    return _cached_system(t.family, t.rank)


_SYSTEMS: dict[tuple[str, int], RootSystem] = {}


def _cached_system(family: str, rank: int) -> RootSystem:
    key = (family, rank)
    if key not in _SYSTEMS:
        _SYSTEMS[key] = RootSystem(LieType(family, rank))
    return _SYSTEMS[key]


def expected_root_count(t: LieType) -> int:
    n = t.rank
    return {
        "A": n * (n + 1),
        "B": 2 * n * n,
        "C": 2 * n * n,
        "D": 2 * n * (n - 1),
        "E": {6: 72, 7: 126, 8: 240}.get(n, 0),
        "F": 48,
        "G": 12,
    }[t.family]


def pairing(x: RootOrWeight, beta: Root, sys: RootSystem) -> int:
    """Exact integer <x, beta> = 2(x, beta) / (beta, beta)."""
    if beta.coeffs not in sys.index:
        raise RootSystemError(f"{beta} is not a root of {sys.lie_type}")
    b = beta.coeffs
    n = sys.rank
    if isinstance(x, Weight):
        # beta^vee = sum_j b_j |alpha_j|^2 / |beta|^2 alpha_j^vee
        num = sum(x.coords[j] * b[j] * sys.norms[j] for j in range(n))
    else:
        num = sum(x.coeffs[j] * sys.cartan[j][k] * b[k] * sys.norms[k] for j in range(n) for k in range(n))
    den = sys.form(beta, beta)
    q, r = divmod(num, den)
    assert r == 0, "non-integral pairing"
    return q


def reflect(x: RootOrWeight, beta: Root, sys: RootSystem) -> RootOrWeight:
    """s_beta(x) = x - <x, beta> beta."""
    p = pairing(x, beta, sys)
    if isinstance(x, Weight):
        bw = sys.root_to_weight(beta)
        return Weight(tuple(a - p * b for a, b in zip(x.coords, bw.coords)))
    return Root(tuple(a - p * b for a, b in zip(x.coeffs, beta.coeffs)))


def weyl_dimension(sys: RootSystem, lam: Weight) -> int:
    """Weyl dimension formula, exact."""
    num = den = 1
    for beta in sys.positive_roots:
        shifted = pairing(lam + sys.rho, beta, sys)
        base = pairing(sys.rho, beta, sys)
        num *= shifted
        den *= base
    q, r = divmod(num, den)
    assert r == 0
    return q


def dominant_weights_up_to(sys: RootSystem, coeff_bound: int, dim_cap: float = math.inf) -> list[Weight]:
    """Nonzero dominant weights with every coordinate <= coeff_bound and
    Weyl dimension <= dim_cap, sorted by (coordinate sum, coordinates)."""
    if coeff_bound < 0:
        raise RootSystemError("coeff_bound must be >= 0")
    out = []
    for coords in product(range(coeff_bound + 1), repeat=sys.rank):
        if not any(coords):
            continue
        w = Weight(coords)
        if dim_cap != math.inf and weyl_dimension(sys, w) > dim_cap:
            continue
        out.append(w)
    out.sort(key=lambda w: (sum(w.coords), tuple(-c for c in w.coords)))
    return out
