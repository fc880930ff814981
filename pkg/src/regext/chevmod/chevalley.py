"""Chevalley basis structure constants.

Root vectors follow :func:`root_recipes`: for a non-simple positive root
beta = alpha_i + gamma (i least), e_beta = [e_i, e_gamma]/(p+1) and
f_beta = -[f_i, f_gamma]/(p+1).  The constants N_{a,b} are read off from
commutators in the smallest faithful module and then checked against the
Chevalley relations; any mismatch is an implementation fault.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..linalg import commutator, vadd
from ..rootsys import RootSystem, Weight, weyl_dimension
from .module import build_module, coroot_coeffs, root_recipes


class ChevalleyError(AssertionError):
    pass


@dataclass(frozen=True)
class ChevalleyBasis:
    sys: RootSystem
    N: dict  # (a, b) root indices with roots[a]+roots[b] a root -> int
    coroots: tuple  # per root index: h_root in the simple coroot basis
    recipes: dict

    def bracket_basis(self, x, y) -> dict:
        """[x, y] for basis elements ('e', k) and ('h', i)."""
        sys = self.sys
        if x[0] == "h" and y[0] == "h":
            return {}
        if x[0] == "h":
            return self._h_on_e(x[1], y[1])
        if y[0] == "h":
            return {k: -v for k, v in self._h_on_e(y[1], x[1]).items()}
        a, b = x[1], y[1]
        if b == sys.neg_index(a):
            return {("h", i): Fraction(c) for i, c in enumerate(self.coroots[a]) if c}
        s = sys.sum_table[a][b]
        if s < 0:
            return {}
        return {("e", s): Fraction(self.N[(a, b)])}

    def _h_on_e(self, i: int, k: int) -> dict:
        # [h_i, e_k] = <root_k, alpha_i> e_k
        r = self.sys.roots[k]
        v = sum(r.coeffs[j] * self.sys.cartan[j][i] for j in range(self.sys.rank))
        return {("e", k): Fraction(v)} if v else {}

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for kx, vx in x.items():
            for ky, vy in y.items():
                out = vadd(out, self.bracket_basis(kx, ky), vx * vy)
        return out

    def basis(self) -> list:
        return [("h", i) for i in range(self.sys.rank)] + [("e", k) for k in range(len(self.sys.roots))]


def smallest_faithful_weight(sys: RootSystem) -> Weight:
    best = min(range(sys.rank), key=lambda i: (weyl_dimension(sys, sys.fundamental(i)), i))
    return sys.fundamental(best)


def p_value(sys: RootSystem, a: int, b: int) -> int:
    """Largest p >= 0 with roots[b] - p roots[a] a root."""
    alpha = sys.roots[a].coeffs
    beta = sys.roots[b].coeffs
    p = 0
    while sys.is_root(tuple(y - (p + 1) * x for x, y in zip(alpha, beta))):
        p += 1
    return p


@lru_cache(maxsize=None)
def structure_constants(sys: RootSystem) -> ChevalleyBasis:
    m = build_module(sys, smallest_faithful_weight(sys), cap=10_000)
    nroots = len(sys.roots)
    mats = [m.root_matrix(k) for k in range(nroots)]
    coroots = tuple(coroot_coeffs(sys, r) for r in sys.roots)
    N = {}
    for a in range(nroots):
        for b in range(nroots):
            s = sys.sum_table[a][b]
            if s < 0:
                continue
            c = commutator(mats[a], mats[b]).ratio_to(mats[s])
            if c is None or c.denominator != 1:
                raise ChevalleyError(f"[e_{sys.roots[a]}, e_{sys.roots[b]}] is not an integer multiple of e_{sys.roots[s]}")
            N[(a, b)] = int(c)
    basis = ChevalleyBasis(sys, N, coroots, root_recipes(sys))
    _self_test(basis, m, mats)
    return basis


def _self_test(cb: ChevalleyBasis, m, mats) -> None:
    sys = cb.sys
    for (a, b), n in cb.N.items():
        if cb.N[(b, a)] != -n:
            raise ChevalleyError(f"N not antisymmetric at {a}, {b}")
        if abs(n) != p_value(sys, a, b) + 1:
            raise ChevalleyError(f"|N_{a},{b}| = {abs(n)} but p + 1 = {p_value(sys, a, b) + 1}")
    for k in range(sys.positive_count):
        nk = sys.neg_index(k)
        if commutator(mats[k], mats[nk]) != m.coroot_matrix(sys.roots[k]):
            raise ChevalleyError(f"[e, f] != h for root {sys.roots[k]}")
    for a in range(len(sys.roots)):
        for b in range(len(sys.roots)):
            if sys.sum_table[a][b] < 0 and b != sys.neg_index(a):
                if not commutator(mats[a], mats[b]).is_zero():
                    raise ChevalleyError(f"[e_a, e_b] != 0 with a + b not a root ({a}, {b})")
