"""Dynkin diagrams, simple root paths and the escape-path search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .closed_sets import RootSubset
from .rootsys import Root, RootSystem


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class DynkinDiagram:
    sys: RootSystem
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return self.sys.rank

    def neighbors(self, i: int) -> list[int]:
        return [j for j, m in enumerate(self.adjacency[i]) if m]

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, multiplicity) with i < j, 0-based."""
        n = self.rank
        return [(i, j, self.adjacency[i][j]) for i in range(n) for j in range(i + 1, n) if self.adjacency[i][j]]

    def is_connected(self) -> bool:
        seen = {0}
        pending = [0]
        while pending:
            for j in self.neighbors(pending.pop()):
                if j not in seen:
                    seen.add(j)
                    pending.append(j)
        return len(seen) == self.rank


@dataclass(frozen=True)
class SimpleRootPath:
    """Distinct simple-root indices (0-based), consecutive ones adjacent."""

    vertices: tuple[int, ...]

    def __len__(self):
        return len(self.vertices)

    def label(self) -> str:
        return "(" + ",".join(str(v + 1) for v in self.vertices) + ")"

    def total(self, sys: RootSystem) -> Root:
        c = [0] * sys.rank
        for v in self.vertices:
            c[v] += 1
        return Root(tuple(c))


@lru_cache(maxsize=None)
def build_diagram(sys: RootSystem) -> DynkinDiagram:
    n = sys.rank
    a = sys.cartan
    adj = tuple(tuple(0 if i == j else a[i][j] * a[j][i] for j in range(n)) for i in range(n))
    d = DynkinDiagram(sys, adj)
    assert d.is_connected(), "irreducible systems have connected diagrams"
    return d


def check_path(p: SimpleRootPath, d: DynkinDiagram) -> None:
    vs = p.vertices
    if not vs:
        raise PathError("empty path")
    if len(set(vs)) != len(vs):
        raise PathError(f"repeated vertex in {p.label()}")
    if any(not 0 <= v < d.rank for v in vs):
        raise PathError(f"vertex out of range in {p.label()}")
    cartan = d.sys.cartan
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            pij = cartan[vs[i]][vs[j]]
            if j == i + 1 and pij >= 0:
                raise PathError(f"{vs[i] + 1} and {vs[j] + 1} are not adjacent")
            if j > i + 1 and pij != 0:
                raise PathError(f"non-consecutive vertices {vs[i] + 1}, {vs[j] + 1} are adjacent")


def path_partial_sums(p: SimpleRootPath, sys: RootSystem) -> list[Root]:
    """All contiguous sums beta_i + ... + beta_j, each checked to be a root."""
    d = build_diagram(sys)
    check_path(p, d)
    out = []
    vs = p.vertices
    for i in range(len(vs)):
        c = [0] * sys.rank
        for j in range(i, len(vs)):
            c[vs[j]] += 1
            if not sys.is_root(c):
                raise AssertionError(f"partial sum {c} of {p.label()} is not a root")
            out.append(Root(tuple(c)))
    return out


def tree_path(d: DynkinDiagram, start: int, end: int) -> SimpleRootPath:
    """The unique path between two vertices of the (tree) diagram."""
    parent = {start: None}
    pending = deque([start])
    while pending:
        u = pending.popleft()
        for v in d.neighbors(u):
            if v not in parent:
                parent[v] = u
                pending.append(v)
    seq = [end]
    while seq[-1] != start:
        seq.append(parent[seq[-1]])
    return SimpleRootPath(tuple(reversed(seq)))


def all_simple_root_paths(d: DynkinDiagram) -> Iterator[SimpleRootPath]:
    """Every simple root path, as ordered vertex sequences.

    Dynkin diagrams are trees, so there is exactly one path per ordered
    pair of endpoints (single vertices included)."""
    for s in range(d.rank):
        for e in range(d.rank):
            yield tree_path(d, s, e)


def escape_path(start: int, blocked: RootSubset, d: DynkinDiagram) -> SimpleRootPath:
    """Shortest path from alpha_start to the nearest simple root outside
    ``blocked``; ties go to the smallest vertex index."""
    sys = d.sys
    inside = [sys.simple_root(i) in blocked for i in range(d.rank)]
    if not inside[start]:
        raise PathError(f"alpha_{start + 1} is not blocked; no escape path needed")
    if all(inside):
        raise PathError("every simple root is blocked; the subset is wide")
    dist = {start: 0}
    parent = {start: None}
    pending = deque([start])
    best = None
    while pending:
        u = pending.popleft()
        if best is not None and dist[u] >= dist[best]:
            break
        for v in sorted(d.neighbors(u)):
            if v in dist:
                continue
            dist[v] = dist[u] + 1
            parent[v] = u
            if not inside[v]:
                if best is None or (dist[v], v) < (dist[best], best):
                    best = v
            else:
                pending.append(v)
    seq = [best]
    while parent[seq[-1]] is not None:
        seq.append(parent[seq[-1]])
    return SimpleRootPath(tuple(reversed(seq)))


def escape_paths_bruteforce(start: int, blocked: RootSubset, d: DynkinDiagram) -> list[SimpleRootPath]:
    """All valid escape paths from ``start``, by depth-first enumeration."""
    sys = d.sys
    inside = [sys.simple_root(i) in blocked for i in range(d.rank)]
    out = []

    def walk(seq):
        u = seq[-1]
        if not inside[u]:
            out.append(SimpleRootPath(tuple(seq)))
            return
        for v in d.neighbors(u):
            if v not in seq:
                walk(seq + [v])

    if inside[start]:
        walk([start])
    return out
