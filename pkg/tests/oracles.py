"""Independent reference computations used by the tests."""

from itertools import combinations

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def closure(facets):
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


def betti_numbers(facets):
    """Rational Betti numbers via dense sympy ranks of boundary matrices over QQ."""
    simp = closure(facets)
    top = max(len(s) for s in simp) - 1
    by_dim = {d: sorted(s for s in simp if len(s) == d + 1) for d in range(top + 1)}
    ranks = {}
    for d in range(1, top + 1):
        rows = {s: i for i, s in enumerate(by_dim[d - 1])}
        m = [[QQ(0)] * len(by_dim[d]) for _ in rows]
        for j, s in enumerate(by_dim[d]):
            for k in range(len(s)):
                m[rows[s[:k] + s[k + 1:]]][j] = QQ((-1) ** k)
        ranks[d] = DomainMatrix(m, (len(rows), len(by_dim[d])), QQ).rank()
    return [len(by_dim[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(top + 1)]


def euler_characteristic(facets):
    return sum((-1) ** (len(s) - 1) for s in closure(facets))
