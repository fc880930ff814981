"""Weight multiplicities of V(lambda) via Freudenthal's recursion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import BudgetExceeded
from ..rootsys import RootSystem, RootSystemError, Weight, weyl_dimension

CHARACTER_CAP = 5000


@dataclass(frozen=True)
class WeightDiagram:
    weights: dict  # Weight -> multiplicity
    dim: int

    def __contains__(self, mu: Weight) -> bool:
        return mu in self.weights

    def multiplicity(self, mu: Weight) -> int:
        return self.weights.get(mu, 0)


def dominant_conjugate(sys: RootSystem, mu: Weight) -> Weight:
    c = list(mu.coords)
    while True:
        i = next((k for k, x in enumerate(c) if x < 0), None)
        if i is None:
            return Weight(tuple(c))
        m = c[i]
        row = sys.cartan[i]
        c = [x - m * a for x, a in zip(c, row)]


def root_coords_of_difference(sys: RootSystem, lam: Weight, mu: Weight):
    """lambda - mu in simple-root coordinates (rational in general)."""
    return sys.weight_in_root_coords(lam - mu)


def is_weight_of(sys: RootSystem, lam: Weight, mu: Weight) -> bool:
    """mu is a weight of V(lambda) iff its dominant conjugate lies below
    lambda in the dominance order."""
    d = root_coords_of_difference(sys, lam, dominant_conjugate(sys, mu))
    return all(x >= 0 and x.denominator == 1 for x in map(Fraction, d))


def _norm2(sys: RootSystem, w: Weight) -> Fraction:
    c = sys.weight_in_root_coords(w)
    return sum((c[j] * w.coords[j] * Fraction(sys.norms[j], 2) for j in range(sys.rank)), Fraction(0))


def expected_character(sys: RootSystem, lam: Weight, cap: int = CHARACTER_CAP) -> WeightDiagram:
    if len(lam.coords) != sys.rank or not lam.is_dominant():
        raise RootSystemError(f"{lam} is not a dominant weight of {sys.lie_type}")
    dim = weyl_dimension(sys, lam)
    if dim > cap:
        raise BudgetExceeded(f"dim V({lam}) = {dim} exceeds the character cap {cap}")
    return _character(sys, lam.coords)


@lru_cache(maxsize=256)
def _character(sys: RootSystem, lam_coords) -> WeightDiagram:
    lam = Weight(lam_coords)
    n = sys.rank
    pos_w = [sys.root_to_weight(a).coords for a in sys.positive_roots]
    pos_len = [sys.form(a, a) for a in sys.positive_roots]
    half_norms = [Fraction(v, 2) for v in sys.norms]
    top = _norm2(sys, lam + sys.rho)

    # weights level by level; each weight below lambda is reached from one
    # a simple root higher
    levels = [[lam.coords]]
    member = {lam.coords}
    while levels[-1]:
        nxt = set()
        for mu in levels[-1]:
            for i in range(n):
                nu = tuple(x - a for x, a in zip(mu, sys.cartan[i]))
                if nu not in member and nu not in nxt and is_weight_of(sys, lam, Weight(nu)):
                    nxt.add(nu)
        member |= nxt
        levels.append(sorted(nxt, reverse=True))
    mult = {lam.coords: 1}
    for level in levels[1:]:
        for mu in level:
            denom = top - _norm2(sys, Weight(mu) + sys.rho)
            total = Fraction(0)
            for a, aw, alen in zip(sys.positive_roots, pos_w, pos_len):
                k = 1
                while True:
                    nu = tuple(x + k * y for x, y in zip(mu, aw))
                    m = mult.get(nu)
                    if not m:
                        break
                    # (nu, alpha) = sum_j nu_j |alpha_j|^2/2 * a_j
                    total += m * sum(nu[j] * half_norms[j] * a.coeffs[j] for j in range(n))
                    k += 1
            value = 2 * total / denom
            assert value.denominator == 1 and value > 0, f"Freudenthal gave {value} at {mu}"
            mult[mu] = int(value)
    table = {Weight(mu): m for mu, m in mult.items()}
    dim = sum(table.values())
    assert dim == weyl_dimension(sys, lam), "Freudenthal and Weyl disagree"
    return WeightDiagram(table, dim)
