"""Acceptance criteria, one test each.  A summary line per criterion is
printed at the end of the pytest run."""

import json
import subprocess
import sys
import time
from itertools import combinations_with_replacement

from oracles import euclidean_model, reflection_closure_count
from regext.chevmod import build_module, expected_character
from regext.chevmod.module import MODULE_CAP
from regext.classifier import nonsimple_demo, oracle_check
from regext.cli import run
from regext.closed_sets import enumerate_closed, is_closed, symmetrize
from regext.dynkin import SimpleRootPath, all_simple_root_paths, build_diagram, path_partial_sums
from regext.rootsys import LieType, RootSystem, Weight, build_root_system, dominant_weights_up_to, pairing, weyl_dimension

THROUGH_E8 = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(2, 9)]
    + [f"D{n}" for n in range(3, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)
RANK_LE_3 = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]
DESK_SCALE = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


def closed_form_count(t: LieType) -> int:
    n = t.rank
    if t.family == "A":
        return n * (n + 1)
    if t.family in "BC":
        return 2 * n * n
    if t.family == "D":
        return 2 * n * (n - 1)
    return {"G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240}[str(t)]


def test_criterion_1_root_counts(criterion):
    rec = criterion(1, "root counts through E8 match closed forms, < 5 s")
    types = [LieType.parse(name) for name in THROUGH_E8]
    t0 = time.perf_counter()
    built = [RootSystem(t) for t in types]  # uncached construction
    elapsed = time.perf_counter() - t0
    for t, sys_ in zip(types, built):
        assert len(sys_.roots) == closed_form_count(t), t
        _, simple = euclidean_model(t.family, t.rank)
        assert reflection_closure_count(simple) == closed_form_count(t), t
    rec.detail = f"{len(types)} types in {elapsed:.2f}s"
    assert elapsed < 5


def _encode(sys_):
    """Roots as integers, linear under addition (coordinates stay below 32 in size)."""
    base = 64
    return [sum(c * base**i for i, c in enumerate(r.coeffs)) for r in sys_.roots]


def test_criterion_2_closed_set_lemmas(criterion):
    rec = criterion(2, "closure-sum (k <= 4) and symmetrization over all closed subsets, < 2 min")
    t0 = time.perf_counter()
    checked = violations = 0
    for name in RANK_LE_3:
        sys_ = build_root_system(name)
        code = _encode(sys_)
        roots = set(code)
        for T in enumerate_closed(sys_):
            members = {code[k] for k in T.indices()}
            sums = set(members)
            for _ in range(3):  # multisets of size 2, 3, 4
                sums = {a + b for a in sums for b in members}
                if not (sums & roots) <= members:
                    violations += 1
            U = symmetrize(T)
            if not (is_closed(U) and -U == U and T.issubset(U)):
                violations += 1
            checked += 1
    elapsed = time.perf_counter() - t0
    rec.detail = f"{checked} subsets, {violations} violations, {elapsed:.1f}s"
    assert violations == 0
    assert elapsed < 120


def test_criterion_2_sum_sets_match_multisets():
    # the iterated sum-set above enumerates exactly the multiset sums
    sys_ = build_root_system("B2")
    code = _encode(sys_)
    for T in list(enumerate_closed(sys_))[::5]:
        members = sorted({code[k] for k in T.indices()})
        sums = set(members)
        for k in range(2, 5):
            sums = {a + b for a in sums for b in members}
            assert sums == {sum(c) for c in combinations_with_replacement(members, k)}


def test_criterion_3_path_lemma(criterion):
    rec = criterion(3, "partial sums of every simple root path are roots, rank <= 8")
    paths = 0
    for name in THROUGH_E8:
        sys_ = build_root_system(name)
        for p in all_simple_root_paths(build_diagram(sys_)):
            for r in path_partial_sums(p, sys_):
                assert sys_.is_root(r.coeffs)
            paths += 1
    e8 = build_root_system("E8")
    figure = path_partial_sums(SimpleRootPath((1, 3, 4, 5)), e8)
    assert len(figure) == 10 and all(e8.is_root(r.coeffs) for r in figure)
    rec.detail = f"{paths} paths, E8 path (2,4,5,6) included"


def test_criterion_4_module_integrity(criterion):
    rec = criterion(4, "built modules match Weyl dimension and Freudenthal multiplicities")
    built = 0
    for name in RANK_LE_3:
        sys_ = build_root_system(name)
        for lam in [Weight((0,) * sys_.rank)] + dominant_weights_up_to(sys_, 2, dim_cap=64):
            m = build_module(sys_, lam, cap=64)
            ch = expected_character(sys_, lam)
            assert m.dim == weyl_dimension(sys_, lam) == ch.dim
            assert {mu: mult for mu, (_, mult) in m.spaces.items()} == ch.weights
            built += 1
    rec.detail = f"{built} modules"


def test_criterion_5_theorem_equivalence(criterion):
    rec = criterion(5, "span criterion agrees with commutant oracle in A2, B2, G2")
    cases = agree = 0
    for name in ["A2", "B2", "G2"]:
        sys_ = build_root_system(name)
        grid = dominant_weights_up_to(sys_, 2, dim_cap=64)
        for T in enumerate_closed(sys_):
            for lam in grid:
                chk = oracle_check(T, lam, 64)
                cases += 1
                agree += chk.agree
    rec.detail = f"{agree}/{cases} agree"
    assert agree == cases


def test_criterion_6_regular_extreme(criterion, tmp_path):
    rec = criterion(6, "dichotomy with validated certificates on A1-A3, B2, B3, C3, G2 (bound 2), < 10 min")
    t0 = time.perf_counter()
    totals = []
    for name in DESK_SCALE:
        out = tmp_path / f"{name}.json"
        code = run(["verify-extreme", "--type", name, "--bound", "2", "--dim-cap", "64", "--output", str(out)])
        assert code == 0, name
        doc = json.loads(out.read_text())
        assert doc["dichotomy_holds"] and not doc["incomplete_flag"]
        grid = doc["grid"]["weights"]
        for r in doc["results"]:
            assert r["verdict"] in ("wide", "narrow")
            if r["verdict"] == "narrow":
                assert [c["lambda"] for c in r["certificates"]] == grid
                assert all(c["validated_by"] in ("module", "criterion") for c in r["certificates"])
            assert all(c["agree"] for c in r["oracle_checks"])
        totals.append(f"{name}:{doc['summary']['total']}")
    elapsed = time.perf_counter() - t0
    rec.detail = f"{' '.join(totals)} subsets, {elapsed:.0f}s"
    assert elapsed < 600


def test_criterion_7_nonsimple(criterion):
    rec = criterion(7, "non-simple counterexample: V indecomposable, W splits into dim V2(eta) lines")
    found = []
    for types, lam, eta in [(("A1", "A1"), (1,), (1,)), (("A1", "A2"), (2,), (1, 0))]:
        r = nonsimple_demo(list(types), Weight(lam), Weight(eta))
        expected = weyl_dimension(build_root_system(types[1]), Weight(eta))
        assert r.v_indecomposable
        assert r.w_summands == expected == r.w_dim
        assert r.w_all_trivial and not r.w_indecomposable_under_g1
        assert r.not_narrow and r.not_wide
        found.append(f"({','.join(types)}): {r.w_summands} lines")
    assert [int(f.split()[-2]) for f in found] == [2, 3]
    rec.detail = ", ".join(found)


def test_criterion_8_lowering_along_paths(criterion):
    rec = criterion(8, "f of a path sum does not kill v_lambda when <lambda, beta_1> > 0")
    checks = 0
    for name in RANK_LE_3:
        sys_ = build_root_system(name)
        paths = list(all_simple_root_paths(build_diagram(sys_)))
        for lam in dominant_weights_up_to(sys_, 2, dim_cap=MODULE_CAP):
            m = build_module(sys_, lam)
            for p in paths:
                if pairing(lam, sys_.simple_root(p.vertices[0]), sys_) <= 0:
                    continue
                k = sys_.root_index(-p.total(sys_))
                assert m.root_matrix(k).apply(m.highest_vector), (name, lam, p.label())
                checks += 1
    rec.detail = f"{checks} (path, lambda) pairs"


def test_criterion_9_determinism(criterion):
    rec = criterion(9, "two verify-extreme runs on B2 give byte-identical JSON")
    argv = [sys.executable, "-m", "regext.cli", "verify-extreme", "--type", "B2", "--bound", "2"]
    a = subprocess.run(argv, capture_output=True, check=False)
    b = subprocess.run(argv, capture_output=True, check=False)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and len(a.stdout) > 0
    rec.detail = f"{len(a.stdout)} bytes"
