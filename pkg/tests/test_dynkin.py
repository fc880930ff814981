from itertools import product

import pytest

from regext.closed_sets import RootSubset, symmetrize
from regext.dynkin import (
    PathError,
    SimpleRootPath,
    all_simple_root_paths,
    build_diagram,
    check_path,
    escape_path,
    escape_paths_bruteforce,
    path_partial_sums,
)
from regext.rootsys import build_root_system

RANK_LE_8 = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(3, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


def blocked_by_simple(sys, bits):
    """RootSubset holding +-alpha_i for every i with bits[i] set."""
    roots = [sys.simple_root(i) for i, b in enumerate(bits) if b]
    return RootSubset.from_roots(sys, roots + [-r for r in roots])


def test_a3_edges():
    d = build_diagram(build_root_system("A3"))
    assert d.edges() == [(0, 1, 1), (1, 2, 1)]


def test_g2_triple_edge():
    d = build_diagram(build_root_system("G2"))
    assert d.edges() == [(0, 1, 3)]


def test_e8_branch():
    d = build_diagram(build_root_system("E8"))
    assert sorted(d.neighbors(1)) == [3]
    chain = [0, 2, 3, 4, 5, 6, 7]
    for a, b in zip(chain, chain[1:]):
        assert d.adjacency[a][b] == 1


@pytest.mark.parametrize("name", RANK_LE_8)
def test_diagram_invariants(name):
    d = build_diagram(build_root_system(name))
    n = d.rank
    for i, j in product(range(n), repeat=2):
        assert d.adjacency[i][j] == d.adjacency[j][i]
        assert d.adjacency[i][j] in (0, 1, 2, 3)
    assert d.is_connected()
    assert len(d.edges()) == n - 1


@pytest.mark.parametrize("name", RANK_LE_8)
def test_partial_sums_of_every_path(name):
    sys = build_root_system(name)
    d = build_diagram(sys)
    for p in all_simple_root_paths(d):
        sums = path_partial_sums(p, sys)
        k = len(p)
        assert len(sums) == k * (k + 1) // 2
        assert all(sys.is_root(r.coeffs) for r in sums)


def test_e8_path_from_figure():
    sys = build_root_system("E8")
    p = SimpleRootPath((1, 3, 4, 5))
    sums = path_partial_sums(p, sys)
    assert len(sums) == 10
    assert p.label() == "(2,4,5,6)"


def test_partial_sums_examples():
    a2 = build_root_system("A2")
    sums = path_partial_sums(SimpleRootPath((0, 1)), a2)
    assert {r.coeffs for r in sums} == {(1, 0), (0, 1), (1, 1)}
    assert [r.coeffs for r in path_partial_sums(SimpleRootPath((0,)), a2)] == [(1, 0)]


def test_path_validation():
    d = build_diagram(build_root_system("A3"))
    with pytest.raises(PathError):
        check_path(SimpleRootPath((0, 2)), d)
    with pytest.raises(PathError):
        check_path(SimpleRootPath((0, 1, 0)), d)
    with pytest.raises(PathError):
        check_path(SimpleRootPath(()), d)
    d4 = build_diagram(build_root_system("D4"))
    with pytest.raises(PathError):
        check_path(SimpleRootPath((0, 1, 2, 3)), d4)


def test_consecutive_pairings_negative():
    sys = build_root_system("F4")
    for p in all_simple_root_paths(build_diagram(sys)):
        vs = p.vertices
        for a, b in zip(vs, vs[1:]):
            assert sys.cartan[a][b] < 0


def test_escape_examples():
    a2 = build_root_system("A2")
    d = build_diagram(a2)
    assert escape_path(0, blocked_by_simple(a2, [1, 0]), d).vertices == (0, 1)
    a3 = build_root_system("A3")
    assert escape_path(0, blocked_by_simple(a3, [1, 1, 0]), build_diagram(a3)).vertices == (0, 1, 2)


def test_escape_rejections():
    a3 = build_root_system("A3")
    d = build_diagram(a3)
    with pytest.raises(PathError):
        escape_path(1, blocked_by_simple(a3, [1, 0, 0]), d)
    with pytest.raises(PathError):
        escape_path(0, RootSubset.full(a3), d)


def test_escape_tie_break_smallest_index():
    d4 = build_root_system("D4")
    # from the branch node alpha_2 every leaf is one step away
    p = escape_path(1, blocked_by_simple(d4, [0, 1, 0, 0]), build_diagram(d4))
    assert p.vertices == (1, 0)


@pytest.mark.parametrize("name", ["A3", "A5", "B4", "C3", "D4", "D5", "G2", "F4"])
def test_escape_minimal_against_bruteforce(name):
    sys = build_root_system(name)
    d = build_diagram(sys)
    n = sys.rank
    for bits in product((0, 1), repeat=n):
        if all(bits):
            continue
        blocked = blocked_by_simple(sys, bits)
        for start in range(n):
            if not bits[start]:
                continue
            p = escape_path(start, blocked, d)
            check_path(p, d)
            vs = p.vertices
            assert vs[0] == start
            assert all(bits[v] for v in vs[:-1]) and not bits[vs[-1]]
            brute = escape_paths_bruteforce(start, blocked, d)
            shortest = min(len(q) for q in brute)
            assert len(p) == shortest
            best = min(q.vertices[-1] for q in brute if len(q) == shortest)
            assert vs[-1] == best


def test_escape_uses_symmetrized_sets():
    sys = build_root_system("B3")
    T = RootSubset.from_roots(sys, [(1, 0, 0), (-1, 0, 0), (0, 1, 0)])
    U = symmetrize(T)
    p = escape_path(0, U, build_diagram(sys))
    assert p.vertices[0] == 0 and sys.simple_root(p.vertices[-1]) not in U
