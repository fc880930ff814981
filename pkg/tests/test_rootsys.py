import time

import pytest

from oracles import euclidean_cartan, euclidean_model, reflection_closure_count
from regext.rootsys import (
    LieType,
    Root,
    RootSystemError,
    Weight,
    build_root_system,
    dominant_weights_up_to,
    expected_root_count,
    pairing,
    reflect,
    weyl_dimension,
)

ALL_TYPES = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(3, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)
SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"]


def closed_form(t: LieType) -> int:
    n = t.rank
    table = {"A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1)}
    return table.get(t.family) or {"G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240}[str(t)]


@pytest.mark.parametrize("name", ALL_TYPES)
def test_root_count_closed_form(name):
    sys = build_root_system(name)
    assert len(sys.roots) == closed_form(sys.lie_type) == expected_root_count(sys.lie_type)
    assert len(sys.roots) == 2 * sys.positive_count


@pytest.mark.parametrize("name", ["A1", "A3", "A5", "B2", "B4", "C2", "C4", "D3", "D5", "G2", "F4", "E6", "E7", "E8"])
def test_matches_euclidean_model(name):
    t = LieType.parse(name)
    roots, simple = euclidean_model(t.family, t.rank)
    sys = build_root_system(t)
    assert sys.cartan == euclidean_cartan(simple)
    assert len(sys.roots) == len(set(roots)) == reflection_closure_count(simple)


def test_all_types_build_quickly():
    t0 = time.perf_counter()
    for name in ["A8", "B8", "C8", "D8", "E6", "E7", "E8", "F4", "G2"]:
        build_root_system(LieType.parse(name))
    assert time.perf_counter() - t0 < 5


@pytest.mark.parametrize("name", SMALL)
def test_cartan_invariants(name):
    sys = build_root_system(name)
    a = sys.cartan
    n = sys.rank
    for i in range(n):
        assert a[i][i] == 2
        for j in range(n):
            if i != j:
                assert a[i][j] <= 0
                assert (a[i][j] == 0) == (a[j][i] == 0)
                assert a[i][j] * a[j][i] in (0, 1, 2, 3)
                assert sys.symmetrizer[i] * a[i][j] == sys.symmetrizer[j] * a[j][i]


@pytest.mark.parametrize("name", SMALL + ["E6"])
def test_negation_and_reflections(name):
    sys = build_root_system(name)
    roots = set(sys.roots)
    for r in sys.roots:
        assert -r in roots
        pos = all(c >= 0 for c in r.coeffs)
        neg = all(c <= 0 for c in r.coeffs)
        assert pos != neg
    for i in range(sys.rank):
        images = {reflect(r, sys.simple_root(i), sys) for r in sys.roots}
        assert images == roots


@pytest.mark.parametrize("name", SMALL)
def test_pairings_bounded(name):
    sys = build_root_system(name)
    for x in sys.roots:
        for b in sys.roots:
            assert pairing(x, b, sys) in (0, 1, -1, 2, -2, 3, -3)


@pytest.mark.parametrize("name", SMALL + ["E8"])
def test_height_induction(name):
    sys = build_root_system(name)
    pos = sys.positive_roots
    assert [r.height for r in pos] == sorted(r.height for r in pos)
    for r in pos:
        if r.height > 1:
            assert any(sys.is_root((r - sys.simple_root(i)).coeffs) for i in range(sys.rank))


def test_order_positive_then_negative():
    sys = build_root_system("A2")
    assert [r.coeffs for r in sys.roots] == [(0, 1), (1, 0), (1, 1), (0, -1), (-1, 0), (-1, -1)]
    assert sys.positive_count == 3


def test_a1():
    sys = build_root_system("A1")
    assert [r.coeffs for r in sys.roots] == [(1,), (-1,)]
    assert sys.positive_count == 1


def test_g2_data():
    sys = build_root_system("G2")
    assert len(sys.roots) == 12
    assert sys.cartan == ((2, -1), (-3, 2))
    a1, a2 = sys.simple_root(0), sys.simple_root(1)
    assert pairing(a1, a2, sys) * pairing(a2, a1, sys) == 3


def test_pairing_examples():
    a2 = build_root_system("A2")
    a1, b = a2.simple_root(0), a2.simple_root(1)
    assert pairing(a1, a1, a2) == 2
    assert pairing(a1, b, a2) == -1
    assert pairing(a2.fundamental(0), a1, a2) == 1
    assert pairing(a2.fundamental(0), b, a2) == 0


def test_pairing_rejects_non_root():
    sys = build_root_system("A2")
    with pytest.raises(RootSystemError):
        pairing(sys.simple_root(0), Root((2, 0)), sys)


def test_reflect_examples():
    sys = build_root_system("A2")
    a1, a2 = sys.simple_root(0), sys.simple_root(1)
    assert reflect(a1, a1, sys) == -a1
    assert reflect(a2, a1, sys) == Root((1, 1))
    lam = sys.fundamental(0)
    assert reflect(lam, a1, sys) == lam - sys.root_to_weight(a1)
    assert reflect(reflect(lam, a1, sys), a1, sys) == lam


def test_dominant_weights_grid():
    a1, a2 = build_root_system("A1"), build_root_system("A2")
    assert dominant_weights_up_to(a1, 2) == [Weight((1,)), Weight((2,))]
    assert set(dominant_weights_up_to(a2, 1)) == {Weight((1, 0)), Weight((0, 1)), Weight((1, 1))}
    assert dominant_weights_up_to(a2, 0) == []
    capped = dominant_weights_up_to(a2, 2, dim_cap=6)
    assert all(weyl_dimension(a2, w) <= 6 for w in capped)
    assert Weight((1, 1)) not in capped


def test_weyl_dimension_rank_one():
    sys = build_root_system("A1")
    for m in range(6):
        assert weyl_dimension(sys, Weight((m,))) == m + 1


@pytest.mark.parametrize("bad", ["A0", "B1", "D2", "E5", "E9", "F3", "G3", "H2", "B", "3A"])
def test_lie_type_rejections(bad):
    with pytest.raises(RootSystemError):
        LieType.parse(bad)


def test_strict_convention():
    assert str(LieType.parse("C2")) == "C2"
    with pytest.raises(RootSystemError):
        LieType.parse("C2", strict=True)
    with pytest.raises(RootSystemError):
        LieType.parse("D3", strict=True)
    LieType.parse("D4", strict=True)


def test_weight_literal():
    assert Weight.parse("w:1,0,2") == Weight((1, 0, 2))
    assert str(Weight((1, 0))) == "w:1,0"
    with pytest.raises(RootSystemError):
        Weight.parse("w:a")


def test_rho_and_highest_root():
    sys = build_root_system("B3")
    assert sys.rho == Weight((1, 1, 1))
    top = sys.highest_root
    assert top.height == max(r.height for r in sys.roots)
    assert not any(sys.is_root((top + sys.simple_root(i)).coeffs) for i in range(sys.rank))
