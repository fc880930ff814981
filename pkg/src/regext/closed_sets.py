"""Closed subsets of a root system.

A subset is stored as a bit mask over ``sys.roots``.  Because negatives are
laid out after the positives in the same order, negation is a swap of the
two halves of the mask.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .errors import BudgetExceeded, NotClosedError
from .rootsys import Root, RootSystem, RootSystemError

ENUMERATION_CAP = 24
ORBIT_BUDGET = 200_000

KINDS = ("semisimple", "solvable", "levi_decomposable")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class RootSubset:
    sys: RootSystem
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.sys.roots):
            raise RootSystemError("mask refers to indices outside the root list")

    @classmethod
    def from_roots(cls, sys: RootSystem, roots: Iterable) -> "RootSubset":
        mask = 0
        for r in roots:
            mask |= 1 << sys.root_index(r)
        return cls(sys, mask)

    @classmethod
    def empty(cls, sys: RootSystem) -> "RootSubset":
        return cls(sys, 0)

    @classmethod
    def full(cls, sys: RootSystem) -> "RootSubset":
        return cls(sys, (1 << len(sys.roots)) - 1)

    @classmethod
    def parse(cls, sys: RootSystem, text: str) -> "RootSubset":
        """Parse ``"1,0;-1,0"`` style literals or a JSON array of arrays."""
        text = text.strip()
        if text.startswith("["):
            rows = json.loads(text)
        else:
            rows = [[int(x) for x in part.split(",")] for part in text.split(";") if part.strip()]
        for r in rows:
            if len(r) != sys.rank:
                raise RootSystemError(f"root {r} has {len(r)} coordinates, expected {sys.rank}")
        return cls.from_roots(sys, rows)

    def indices(self) -> list[int]:
        return list(_bits(self.mask))

    def roots(self) -> list[Root]:
        return [self.sys.roots[k] for k in _bits(self.mask)]

    def positive_roots(self) -> list[Root]:
        p = self.sys.positive_count
        return [self.sys.roots[k] for k in _bits(self.mask) if k < p]

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, r) -> bool:
        k = self.sys.index.get(r.coeffs if isinstance(r, Root) else tuple(r))
        return k is not None and bool(self.mask >> k & 1)

    def __iter__(self):
        return iter(self.roots())

    def _same(self, other: "RootSubset"):
        if other.sys is not self.sys:
            raise ValueError("subsets of different root systems")

    def __or__(self, other: "RootSubset") -> "RootSubset":
        self._same(other)
        return RootSubset(self.sys, self.mask | other.mask)

    def __and__(self, other: "RootSubset") -> "RootSubset":
        self._same(other)
        return RootSubset(self.sys, self.mask & other.mask)

    def __neg__(self) -> "RootSubset":
        return RootSubset(self.sys, negate_mask(self.sys, self.mask))

    def complement(self) -> "RootSubset":
        return RootSubset(self.sys, self.mask ^ ((1 << len(self.sys.roots)) - 1))

    def issubset(self, other: "RootSubset") -> bool:
        return self.mask & ~other.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << len(self.sys.roots)) - 1

    def literal(self) -> str:
        return ";".join(str(r) for r in self.roots())

    def to_json(self) -> list[list[int]]:
        return [list(r.coeffs) for r in self.roots()]

    def __repr__(self):
        return f"RootSubset({self.sys.lie_type}, {{{self.literal()}}})"


@dataclass(frozen=True)
class ClosedDecomposition:
    subset: RootSubset
    symmetric: RootSubset
    special: RootSubset
    kind: str


def negate_mask(sys: RootSystem, mask: int) -> int:
    p = sys.positive_count
    low = (1 << p) - 1
    return ((mask & low) << p) | (mask >> p)


@lru_cache(maxsize=None)
def _sum_pairs(sys: RootSystem) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """For each root a: (b, 1<<b, 1<<(a+b)) over roots b with a+b a root."""
    st = sys.sum_table
    n = len(sys.roots)
    return tuple(
        tuple((b, 1 << b, 1 << st[a][b]) for b in range(n) if st[a][b] >= 0) for a in range(n)
    )


def violating_pair(s: RootSubset) -> Optional[tuple[int, int]]:
    pairs = _sum_pairs(s.sys)
    m = s.mask
    for a in _bits(m):
        for b, bbit, cbit in pairs[a]:
            if m & bbit and not m & cbit:
                return a, b
    return None


def is_closed(s: RootSubset) -> bool:
    return violating_pair(s) is None


def closure(s: RootSubset) -> RootSubset:
    """Smallest closed subset containing s (worklist to a fixed point)."""
    pairs = _sum_pairs(s.sys)
    st = s.sys.sum_table
    m = s.mask
    todo = list(_bits(m))
    while todo:
        a = todo.pop()
        for b, bbit, cbit in pairs[a]:
            if m & bbit and not m & cbit:
                m |= cbit
                todo.append(st[a][b])
    return RootSubset(s.sys, m)


def symmetrize(s: RootSubset) -> RootSubset:
    """[T u -T]."""
    return closure(s | -s)


def require_closed(s: RootSubset) -> None:
    bad = violating_pair(s)
    if bad is not None:
        a, b = bad
        roots = s.sys.roots
        raise NotClosedError(roots[a], roots[b], roots[s.sys.sum_table[a][b]])


def decompose(s: RootSubset) -> ClosedDecomposition:
    require_closed(s)
    neg = negate_mask(s.sys, s.mask)
    sym = s.mask & neg
    spec = s.mask & ~neg
    if not sym:
        kind = "solvable"
    elif not spec:
        kind = "semisimple"
    else:
        kind = "levi_decomposable"
    return ClosedDecomposition(s, RootSubset(s.sys, sym), RootSubset(s.sys, spec), kind)


def _closed_masks(sys: RootSystem) -> list[int]:
    """All closed masks, by backtracking over the roots in index order.

    Root k may be added when no earlier chosen root a has a + k equal to an
    earlier rejected root; it may be rejected when no two earlier chosen
    roots sum to it.  Every full assignment passing both tests is closed.
    """
    st = sys.sum_table
    n = len(sys.roots)
    # pairs (a, b), a < b < k, summing to k
    makers = [[(a, b) for a in range(k) for b in range(a + 1, k) if st[a][b] == k] for k in range(n)]
    # roots a < k whose sum with k is an earlier root c < k
    lower = [[(a, st[a][k]) for a in range(k) if 0 <= st[a][k] < k] for k in range(n)]
    out: list[int] = []

    def rec(k: int, mask: int) -> None:
        if k == n:
            out.append(mask)
            return
        if all(not (mask >> a & 1) or mask >> c & 1 for a, c in lower[k]):
            rec(k + 1, mask | (1 << k))
        if not any(mask >> a & 1 and mask >> b & 1 for a, b in makers[k]):
            rec(k + 1, mask)

    rec(0, 0)
    return out


def _order_key(mask: int):
    return (bin(mask).count("1"), mask)


def enumerate_closed(sys: RootSystem, cap: int = ENUMERATION_CAP) -> Iterator[RootSubset]:
    """Every closed subset exactly once, ordered by size then mask value."""
    if len(sys.roots) > cap:
        raise BudgetExceeded(
            f"{sys.lie_type} has {len(sys.roots)} roots, above the enumeration cap {cap}"
        )
    for m in sorted(_closed_masks(sys), key=_order_key):
        yield RootSubset(sys, m)


def closed_subsets_bruteforce(sys: RootSystem) -> list[RootSubset]:
    """Filter all 2^|roots| subsets through is_closed.  Test oracle only."""
    n = len(sys.roots)
    if n > 20:
        raise BudgetExceeded("brute force over more than 2^20 subsets")
    subs = (RootSubset(sys, m) for m in range(1 << n))
    return sorted((s for s in subs if is_closed(s)), key=lambda s: _order_key(s.mask))


def permute_mask(mask: int, perm) -> int:
    out = 0
    for k in _bits(mask):
        out |= 1 << perm[k]
    return out


def weyl_orbit(s: RootSubset, budget: int = ORBIT_BUDGET) -> set[int]:
    perms = s.sys.simple_reflection_perms
    seen = {s.mask}
    todo = [s.mask]
    while todo:
        m = todo.pop()
        for p in perms:
            img = permute_mask(m, p)
            if img not in seen:
                seen.add(img)
                if len(seen) > budget:
                    raise BudgetExceeded(f"Weyl orbit larger than {budget}")
                todo.append(img)
    return seen


def weyl_canonical(s: RootSubset, budget: int = ORBIT_BUDGET) -> RootSubset:
    """Least mask in the Weyl orbit of s."""
    return RootSubset(s.sys, min(weyl_orbit(s, budget)))


def enumerate_closed_up_to_conjugacy(sys: RootSystem, cap: int = ENUMERATION_CAP) -> list[tuple[RootSubset, int]]:
    """One canonical representative per Weyl orbit of closed subsets, with
    the orbit size, in the same size-then-mask order."""
    reps: dict[int, int] = {}
    seen: set[int] = set()
    for s in enumerate_closed(sys, cap):
        if s.mask in seen:
            continue
        orbit = weyl_orbit(s)
        seen |= orbit
        reps[min(orbit)] = len(orbit)
    return [(RootSubset(sys, m), reps[m]) for m in sorted(reps, key=_order_key)]
