"""Intersection homology over Q from allowable simplicial chains, and the Witt check.

Chains live on a *working complex*: the pseudomanifold itself when its
filtration is trivial (every chain is allowable and IH is ordinary
homology), otherwise its first barycentric subdivision, on which every
filtration level is a full subcomplex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Echelon, ExactMatrix, exact_rank, kernel_basis
from .simplicial import (
    SimplicialPseudomanifold,
    Subdivision,
    link_of_stratum_point,
    subdivide_pseudomanifold,
)

__all__ = [
    "Perversity",
    "lower_middle_perversity",
    "upper_middle_perversity",
    "WorkingComplex",
    "working_complex",
    "allowable_chain_basis",
    "ih_ranks",
    "compute_ih",
    "IHGroup",
    "homology_basis",
    "cohomology_basis",
    "witt_check",
    "WittReport",
]


@dataclass(frozen=True)
class Perversity:
    """Goresky-MacPherson perversity: codimension k >= 2 -> p(k)."""

    values: tuple  # values[k - 2] = p(k)
    name: str = ""

    def __post_init__(self):
        v = self.values
        if v and v[0] != 0:
            raise ValueError("perversity must satisfy p(2) = 0")
        for a, b in zip(v, v[1:]):
            if b - a not in (0, 1):
                raise ValueError("perversity must satisfy p(k+1) - p(k) in {0, 1}")

    def __call__(self, k: int) -> int:
        if k < 2:
            raise ValueError("perversities are defined for codimension >= 2")
        if k - 2 >= len(self.values):
            raise ValueError(f"perversity not defined at codimension {k}")
        return self.values[k - 2]


def lower_middle_perversity(n: int) -> Perversity:
    """m(k) = floor((k - 2) / 2) for 2 <= k <= n."""
    if n < 2:
        raise ValueError("perversities need dimension >= 2")
    return Perversity(tuple((k - 2) // 2 for k in range(2, n + 1)), "lower")


def upper_middle_perversity(n: int) -> Perversity:
    """n(k) = floor((k - 1) / 2) for 2 <= k <= n."""
    if n < 2:
        raise ValueError("perversities need dimension >= 2")
    return Perversity(tuple((k - 1) // 2 for k in range(2, n + 1)), "upper")


def _perversity(X: SimplicialPseudomanifold, p) -> Perversity | None:
    if X.dim < 2:
        return None
    if p is None or p == "lower":
        return lower_middle_perversity(X.dim)
    if p == "upper":
        return upper_middle_perversity(X.dim)
    if isinstance(p, Perversity):
        return p
    raise ValueError(f"unknown perversity {p!r}")


@dataclass
class WorkingComplex:
    base: SimplicialPseudomanifold
    space: SimplicialPseudomanifold
    subdivision: Subdivision | None = None


def working_complex(X: SimplicialPseudomanifold, subdivide: bool | None = None) -> WorkingComplex:
    cache = X.__dict__.setdefault("_cache", {})
    key = ("working", subdivide)
    if key in cache:
        return cache[key]
    if subdivide is None:
        subdivide = not X.is_trivially_filtered()
    if subdivide:
        sub = subdivide_pseudomanifold(X)
        wc = WorkingComplex(X, sub.sd, sub)
    else:
        wc = WorkingComplex(X, X, None)
    cache[key] = wc
    return wc


def _meet_dim(s: tuple, level: frozenset) -> int | None:
    """Largest dimension of a face of s lying in ``level``; None if they are disjoint."""
    verts = tuple(v for v in s if (v,) in level)
    if not verts:
        return None
    if verts in level:
        return len(verts) - 1
    from itertools import combinations

    for k in range(len(verts) - 1, 0, -1):
        if any(c in level for c in combinations(verts, k)):
            return k - 1
    return 0


def _allowable_mask(W: SimplicialPseudomanifold, p: Perversity | None, i: int) -> list[bool]:
    if i < 0 or i > W.dim:
        return []
    simplices = W.complex.simplices[i]
    if p is None or W.is_trivially_filtered():
        return [True] * len(simplices)
    out = []
    for s in simplices:
        ok = True
        for li, lev in enumerate(W.levels):
            k = li + 2
            d = _meet_dim(s, lev)
            if d is not None and d > i - k + p(k):
                ok = False
                break
        out.append(ok)
    return out


def _restricted_columns(W, i, mask_cols, row_filter=None):
    cols = W.complex.boundary_columns(i)
    out = []
    for j, ok in enumerate(mask_cols):
        if not ok:
            continue
        c = cols[j]
        if row_filter is not None:
            c = {r: v for r, v in c.items() if row_filter[r]}
        out.append(c)
    return out


def allowable_chain_basis(X: SimplicialPseudomanifold, p, i: int, subdivide: bool | None = None) -> list[dict]:
    """Basis of the allowable i-chains: xi and its boundary both satisfy the perversity bounds."""
    wc = working_complex(X, subdivide)
    W = wc.space
    per = _perversity(X, p)
    mask = _allowable_mask(W, per, i)
    simplices = W.complex.simplices[i] if 0 <= i <= W.dim else ()
    idx = [j for j, ok in enumerate(mask) if ok]
    if i == 0 or all(_allowable_mask(W, per, i - 1)):
        return [{simplices[j]: Fraction(1)} for j in idx]
    bad_rows = [not ok for ok in _allowable_mask(W, per, i - 1)]
    cols = _restricted_columns(W, i, mask, bad_rows)
    basis = kernel_basis(cols)
    return [{simplices[idx[c]]: v for c, v in vec.items()} for vec in basis]


def _rank_of(cols: list[dict], nrows: int) -> int:
    if not cols:
        return 0
    return exact_rank(ExactMatrix.from_columns(nrows, cols))


def ih_ranks(X: SimplicialPseudomanifold, p=None, subdivide: bool | None = None) -> list[int]:
    """Ranks of IH_0 .. IH_n via exact ranks of restricted boundary matrices."""
    wc = working_complex(X, subdivide)
    W = wc.space
    per = _perversity(X, p)
    n = W.dim
    masks = [_allowable_mask(W, per, i) for i in range(n + 1)]
    rank_bd = [0] * (n + 2)  # rank of boundary restricted to allowable columns
    rank_bad = [0] * (n + 2)  # rank of its rows at non-allowable faces
    for i in range(1, n + 1):
        cols = _restricted_columns(W, i, masks[i])
        rank_bd[i] = _rank_of(cols, W.complex.count(i - 1))
        bad = [not ok for ok in masks[i - 1]]
        if any(bad):
            rank_bad[i] = _rank_of(_restricted_columns(W, i, masks[i], bad), W.complex.count(i - 1))
    out = []
    for i in range(n + 1):
        a = sum(masks[i])
        out.append(a - rank_bd[i] - rank_bd[i + 1] + rank_bad[i + 1])
    return out


@dataclass
class IHGroup:
    """IH_i with exact cycle representatives on the working complex."""

    degree: int
    rank: int
    representatives: list
    working: WorkingComplex
    perversity: Perversity | None
    _echelon: Echelon = field(repr=False, default=None)

    def coordinates(self, chain: dict) -> list[Fraction]:
        """Coordinates of an allowable cycle in the representative basis."""
        idx = self.working.space.complex.index[self.degree]
        vec = {}
        for s, c in chain.items():
            if c:
                vec[idx[s]] = vec.get(idx[s], 0) + c
        coords = self._echelon.coordinates({k: v for k, v in vec.items() if v})
        return [coords.get(r, Fraction(0)) for r in range(self.rank)]


def _quotient_reps(boundaries: list[dict], cycles: list[dict], expected: int | None = None):
    ech = Echelon()
    for b in boundaries:
        ech.add(b)
    reps = []
    for z in cycles:
        if expected is not None and len(reps) == expected:
            break
        if ech.add(z, {len(reps): Fraction(1)}):
            reps.append(z)
    return reps, ech


def compute_ih(X: SimplicialPseudomanifold, p=None, i: int = 0, subdivide: bool | None = None) -> IHGroup:
    """IH_i(X) with respect to perversity ``p`` (default lower middle)."""
    cache = X.__dict__.setdefault("_cache", {})
    key = ("ih", p if not isinstance(p, Perversity) else p.values, i, subdivide)
    if key in cache:
        return cache[key]
    wc = working_complex(X, subdivide)
    W = wc.space
    per = _perversity(X, p)
    n = W.dim
    if i < 0 or i > n:
        grp = IHGroup(i, 0, [], wc, per, Echelon())
        cache[key] = grp
        return grp
    simplices = W.complex.simplices[i]
    idx_i = W.complex.index[i]
    mask = _allowable_mask(W, per, i)
    cols_idx = [j for j, ok in enumerate(mask) if ok]
    cyc_cols = _restricted_columns(W, i, mask) if i >= 1 else [dict() for _ in cols_idx]
    cycles = [{cols_idx[c]: v for c, v in vec.items()} for vec in kernel_basis(cyc_cols)]
    boundaries = []
    if i < n:
        for chain in allowable_chain_basis(X, p, i + 1, subdivide):
            img = {}
            for s, c in chain.items():
                for k in range(len(s)):
                    f = idx_i[s[:k] + s[k + 1 :]]
                    img[f] = img.get(f, 0) + (c if k % 2 == 0 else -c)
            img = {k: v for k, v in img.items() if v}
            if img:
                boundaries.append(img)
    reps, ech = _quotient_reps(boundaries, cycles)
    rep_chains = [{simplices[k]: v for k, v in z.items()} for z in reps]
    grp = IHGroup(i, len(reps), rep_chains, wc, per, ech)
    cache[key] = grp
    return grp


def homology_basis(X: SimplicialPseudomanifold, i: int) -> IHGroup:
    """Ordinary simplicial homology H_i of the complex itself (no subdivision)."""
    cache = X.__dict__.setdefault("_cache", {})
    key = ("h", i)
    if key not in cache:
        triv = SimplicialPseudomanifold(X.complex, X.dim, X.orientation, ())
        triv.__dict__["_cache"] = {}
        grp = compute_ih(triv, None, i, subdivide=False)
        grp.working = WorkingComplex(X, triv, None)
        cache[key] = grp
    return cache[key]


@dataclass
class CohomologyGroup:
    degree: int
    rank: int
    representatives: list  # cocycles: dict simplex -> Fraction
    _echelon: Echelon = field(repr=False, default=None)
    _index: dict = field(repr=False, default=None)

    def coordinates(self, cochain: dict) -> list[Fraction]:
        vec = {self._index[s]: c for s, c in cochain.items() if c}
        coords = self._echelon.coordinates(vec)
        return [coords.get(r, Fraction(0)) for r in range(self.rank)]


def cohomology_basis(X: SimplicialPseudomanifold, i: int) -> CohomologyGroup:
    """Cocycle representatives of H^i(X; Q) on the complex itself."""
    cache = X.__dict__.setdefault("_cache", {})
    key = ("coh", i)
    if key in cache:
        return cache[key]
    cx = X.complex
    simp = cx.simplices[i] if 0 <= i <= cx.dim else ()
    # coboundary of an i-cochain e_s: sum over cofaces t of [t : s] e_t
    co_cols = [dict() for _ in simp]
    if i < cx.dim:
        for t_idx, col in enumerate(cx.boundary_columns(i + 1)):
            for s_idx, v in col.items():
                co_cols[s_idx][t_idx] = v
    cocycles = kernel_basis(co_cols)
    cobd = []
    if i >= 1:
        prev = [dict() for _ in cx.simplices[i - 1]]
        for s_idx, col in enumerate(cx.boundary_columns(i)):
            for r_idx, v in col.items():
                prev[r_idx][s_idx] = v
        cobd = [c for c in prev if c]
    reps, ech = _quotient_reps(cobd, cocycles)
    grp = CohomologyGroup(i, len(reps), [{simp[k]: v for k, v in z.items()} for z in reps], ech, cx.index[i])
    cache[key] = grp
    return grp


# ---------------------------------------------------------------------------
# Witt condition


@dataclass
class WittReport:
    is_witt: bool
    witnesses: list
    checked: list

    def to_json(self) -> dict:
        return {"is_witt": self.is_witt, "witnesses": self.witnesses, "checked": self.checked}


def _stratum_components(W: SimplicialPseudomanifold, stratum: set, top_dim: int) -> list[list[tuple]]:
    tops = sorted(s for s in stratum if len(s) == top_dim + 1)
    parent = {s: s for s in tops}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_face: dict = {}
    for s in tops:
        for k in range(len(s)):
            f = s[:k] + s[k + 1 :]
            if f and f in stratum:
                by_face.setdefault(f, []).append(s)
    for group in by_face.values():
        for other in group[1:]:
            a, b = find(group[0]), find(other)
            if a != b:
                parent[a] = b
    comps: dict = {}
    for s in tops:
        comps.setdefault(find(s), []).append(s)
    return sorted(comps.values())


def witt_check(X: SimplicialPseudomanifold) -> WittReport:
    """Middle-degree IH of the link of every odd-codimension stratum must vanish."""
    n = X.dim
    if n < 2 or X.is_trivially_filtered():
        return WittReport(True, [], [])
    W = X if X.levels_are_full() else working_complex(X, True).space
    witnesses, checked = [], []
    for li, lev in enumerate(W.levels):
        k = li + 2
        lower = W.levels[li + 1] if li + 1 < len(W.levels) else frozenset()
        stratum = set(lev - lower)
        if k % 2 == 0 or not stratum:
            continue
        ell = (k - 1) // 2
        for comp in _stratum_components(W, stratum, n - k):
            s = comp[0]
            link = link_of_stratum_point(W, s)
            rank = compute_ih(link, "lower", ell).rank
            where = s
            if W.labels is not None:
                where = W.labels[s[-1]]
            entry = {
                "codim": k,
                "simplex": list(where),
                "link_dim": link.dim,
                "link_f_vector": [link.complex.count(d) for d in range(link.dim + 1)],
                "middle_degree": ell,
                "middle_rank": rank,
            }
            checked.append(entry)
            if rank:
                witnesses.append(entry)
    return WittReport(not witnesses, witnesses, checked)
