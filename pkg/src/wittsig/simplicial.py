"""Simplicial complexes, filtered pseudomanifolds and finite cyclic actions.

Simplices are sorted tuples of vertex ids; the canonical orientation of a
simplex is its increasing vertex order.  Orientation signs of a
pseudomanifold are stored relative to that canonical order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

__all__ = [
    "InvalidComplexError",
    "SimplicialComplex",
    "SimplicialPseudomanifold",
    "CyclicAction",
    "DualBlockDecomposition",
    "FixedComponent",
    "sort_sign",
    "validate_pseudomanifold",
    "link_of_stratum_point",
    "barycentric_subdivide",
    "subdivide_pseudomanifold",
    "subdivision_chain",
    "dual_blocks",
    "validate_action",
    "fixed_subcomplex",
    "chain_boundary",
]


class InvalidComplexError(ValueError):
    """Raised with the full list of violated invariants."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def sort_sign(seq) -> tuple[tuple, int]:
    """Sorted tuple of ``seq`` and the sign of the sorting permutation."""
    items = list(seq)
    sign = 1
    # insertion sort counting transpositions; simplices are short
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            raise ValueError(f"repeated vertex in {tuple(seq)}")
    return tuple(items), sign


def chain_boundary(chain: dict) -> dict:
    out: dict = {}
    for s, c in chain.items():
        for i in range(len(s)):
            f = s[:i] + s[i + 1 :]
            if not f:
                continue
            v = out.get(f, 0) + (c if i % 2 == 0 else -c)
            if v:
                out[f] = v
            else:
                out.pop(f, None)
    return out


class SimplicialComplex:
    """A finite abstract simplicial complex given by its facets."""

    def __init__(self, facets, n_vertices: int | None = None):
        fs = []
        seen = set()
        for f in facets:
            t, _ = sort_sign(f)
            if not t:
                raise InvalidComplexError("empty facet")
            if t in seen:
                raise InvalidComplexError(f"duplicate facet {t}")
            seen.add(t)
            fs.append(t)
        if not fs:
            raise InvalidComplexError("empty complex")
        verts = sorted({v for f in fs for v in f})
        if n_vertices is not None:
            bad = [v for v in verts if not (isinstance(v, int) and 0 <= v < n_vertices)]
            if bad:
                raise InvalidComplexError(f"vertex indices out of range: {bad[:5]}")
        self.n_vertices = n_vertices if n_vertices is not None else len(verts)
        self.facets: tuple[tuple, ...] = tuple(fs)
        self.vertices: tuple = tuple(verts)
        faces = set()
        for f in fs:
            for k in range(1, len(f) + 1):
                faces.update(combinations(f, k))
        self.dim = max(len(f) for f in fs) - 1
        by_dim: list[list] = [[] for _ in range(self.dim + 1)]
        for s in faces:
            by_dim[len(s) - 1].append(s)
        self.simplices: tuple[tuple[tuple, ...], ...] = tuple(tuple(sorted(x)) for x in by_dim)
        self.index: tuple[dict, ...] = tuple({s: i for i, s in enumerate(x)} for x in self.simplices)
        self._cofaces = None
        self._bd_cache: dict[int, list[dict]] = {}

    def __contains__(self, s) -> bool:
        s = tuple(s)
        return 1 <= len(s) <= self.dim + 1 and s in self.index[len(s) - 1]

    def count(self, d: int) -> int:
        return len(self.simplices[d]) if 0 <= d <= self.dim else 0

    def all_simplices(self):
        for layer in self.simplices:
            yield from layer

    def cofaces(self, s: tuple) -> list[tuple]:
        """Simplices of dimension dim(s)+1 containing s."""
        if self._cofaces is None:
            cf = defaultdict(list)
            for layer in self.simplices[1:]:
                for t in layer:
                    for i in range(len(t)):
                        cf[t[:i] + t[i + 1 :]].append(t)
            self._cofaces = cf
        return self._cofaces.get(tuple(s), [])

    def boundary_columns(self, d: int) -> list[dict]:
        """Columns of the boundary C_d -> C_{d-1}, indexed by (d-1)-simplex position."""
        if d in self._bd_cache:
            return self._bd_cache[d]
        cols = []
        if 1 <= d <= self.dim:
            idx = self.index[d - 1]
            for s in self.simplices[d]:
                col = {}
                for i in range(len(s)):
                    col[idx[s[:i] + s[i + 1 :]]] = Fraction(1 if i % 2 == 0 else -1)
                cols.append(col)
        elif d == 0:
            cols = [dict() for _ in self.simplices[0]]
        self._bd_cache[d] = cols
        return cols

    def is_connected(self) -> bool:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.simplices[1] if self.dim >= 1 else ():
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[a] = b
        return len({find(v) for v in self.vertices}) == 1

    def __repr__(self):
        f = [len(x) for x in self.simplices]
        return f"SimplicialComplex(dim={self.dim}, f={f})"


def _closure(simplices) -> set:
    out = set()
    for s in simplices:
        t, _ = sort_sign(s)
        for k in range(1, len(t) + 1):
            out.update(combinations(t, k))
    return out


@dataclass
class SimplicialPseudomanifold:
    """Oriented n-pseudomanifold with filtration X_n ⊇ X_{n-2} ⊇ ... ⊇ X_0.

    ``levels[i]`` is the closed subcomplex X_{n-2-i}; X_{n-1} = X_{n-2}.
    """

    complex: SimplicialComplex
    dim: int
    orientation: dict
    levels: tuple = ()
    labels: dict | None = None  # optional vertex -> meaning (used by subdivisions)

    def level(self, j: int) -> frozenset:
        """The closed subcomplex X_j as a set of simplices."""
        n = self.dim
        if j >= n:
            return frozenset(self.complex.all_simplices())
        if j == n - 1:
            j = n - 2
        i = n - 2 - j
        if j < 0 or i >= len(self.levels):
            return frozenset()
        return self.levels[i]

    def stratum_codim(self, s: tuple) -> int:
        """Codimension of the stratum containing the interior of ``s`` (0 = regular)."""
        n = self.dim
        if not self.levels or s not in self.levels[0]:
            return 0
        j = n - 2
        for i in range(1, len(self.levels)):
            if s in self.levels[i]:
                j = n - 2 - i
            else:
                break
        return n - j

    def is_trivially_filtered(self) -> bool:
        return not any(self.levels)

    def fundamental_cycle(self) -> dict:
        return {s: Fraction(o) for s, o in self.orientation.items()}

    def singular_codims(self) -> list[int]:
        return sorted({self.stratum_codim(s) for s in (self.levels[0] if self.levels else ())})

    def levels_are_full(self) -> bool:
        """Every simplex of X whose vertices lie in X_j belongs to X_j."""
        for lev in self.levels:
            verts = {s[0] for s in lev if len(s) == 1}
            for s in self.complex.all_simplices():
                if s not in lev and all(v in verts for v in s):
                    return False
        return True


def _orient(cx: SimplicialComplex) -> dict | None:
    """A coherent orientation of a pseudomanifold, or None if non-orientable."""
    n = cx.dim
    if n == 0:
        return {f: 1 for f in cx.facets}
    orient: dict = {}
    adj = defaultdict(list)
    for f in cx.facets:
        for i in range(len(f)):
            adj[f[:i] + f[i + 1 :]].append((f, -1 if i % 2 else 1))
    for start in cx.facets:
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            f = stack.pop()
            for i in range(len(f)):
                face = f[:i] + f[i + 1 :]
                inc = orient[f] * (-1 if i % 2 else 1)
                for g, ginc in adj[face]:
                    if g == f:
                        continue
                    want = -inc * ginc
                    if g in orient:
                        if orient[g] != want:
                            return None
                    else:
                        orient[g] = want
                        stack.append(g)
    return orient


def validate_pseudomanifold(cx: SimplicialComplex, filtration=None, orientation=None) -> SimplicialPseudomanifold:
    """Check the pseudomanifold axioms and the filtration; collect every violation.

    ``filtration`` lists generating simplices of X_{n-2}, X_{n-3}, ..., X_0
    (missing trailing levels are empty).  ``orientation`` is either a dict
    facet -> sign (canonical order) or a list of signs aligned with the
    facets as originally listed; when omitted a coherent one is computed.
    """
    n = cx.dim
    problems = []
    if any(len(f) != n + 1 for f in cx.facets):
        problems.append("non-pure complex: some facet has dimension < n")
    if n >= 1:
        for s in cx.simplices[n - 1]:
            k = len(cx.cofaces(s))
            if k != 2:
                problems.append(f"(n-1)-simplex {s} has {k} cofaces (need exactly 2)")
                if len(problems) > 20:
                    break

    orient = None
    if not problems:
        if orientation is None:
            orient = _orient(cx)
            if orient is None:
                problems.append("complex is not orientable")
        else:
            if isinstance(orientation, dict):
                orient = {sort_sign(f)[0]: int(v) for f, v in orientation.items()}
            else:
                raise TypeError("orientation must be a dict facet -> sign")
            if set(orient) != set(cx.facets) or any(v not in (1, -1) for v in orient.values()):
                problems.append("orientation must assign +-1 to every facet")
            elif n >= 1 and chain_boundary({f: Fraction(v) for f, v in orient.items()}):
                problems.append("orientation signs do not cancel across shared (n-1)-faces")

    levels = []
    if filtration:
        if len(filtration) > max(n - 1, 0):
            problems.append(f"filtration has {len(filtration)} levels; at most {max(n - 1, 0)} allowed")
        all_s = set(cx.all_simplices())
        prev = None
        for i, gens in enumerate(filtration):
            j = n - 2 - i
            try:
                lev = frozenset(_closure(gens))
            except ValueError as exc:
                problems.append(f"X_{j}: {exc}")
                lev = frozenset()
            if not lev <= all_s:
                problems.append(f"X_{j} contains simplices not in the complex")
            if lev and max(len(s) for s in lev) - 1 > j:
                problems.append(f"X_{j} has dimension > {j}")
            if prev is not None and not lev <= prev:
                problems.append(f"filtration not descending at X_{j}")
            levels.append(lev)
            prev = lev
        # strata X_j - X_{j-1} must be pure j-dimensional
        for i, lev in enumerate(levels):
            j = n - 2 - i
            lower = levels[i + 1] if i + 1 < len(levels) else frozenset()
            stratum = lev - lower
            tops = [s for s in stratum if len(s) == j + 1]
            covered = _closure(tops)
            stray = [s for s in stratum if s not in covered]
            if stray:
                problems.append(f"stratum X_{j} - X_{j - 1} is not pure {j}-dimensional near {stray[0]}")
        while levels and not levels[-1]:
            levels.pop()

    if problems:
        raise InvalidComplexError(problems)
    return SimplicialPseudomanifold(cx, n, orient, tuple(levels))


def pseudomanifold_from_listing(n_vertices, facets, orientation=None, filtration=None) -> SimplicialPseudomanifold:
    """Validate a complex whose orientation signs refer to the facets as listed."""
    cx = SimplicialComplex(facets, n_vertices)
    orient = None
    if orientation is not None:
        if len(orientation) != len(facets):
            raise InvalidComplexError("orientation length differs from facet count")
        orient = {}
        for f, o in zip(facets, orientation):
            t, sg = sort_sign(f)
            orient[t] = int(o) * sg
    return validate_pseudomanifold(cx, filtration, orient)


# ---------------------------------------------------------------------------
# links


def link_of_stratum_point(X: SimplicialPseudomanifold, s) -> SimplicialPseudomanifold:
    """Simplicial link of ``s`` with induced orientation and filtration.

    Requires the filtration levels to be full subcomplexes near ``s`` for the
    induced filtration to be the normal one (always true after subdivision).
    """
    s, _ = sort_sign(s)
    cx = X.complex
    if s not in cx:
        raise InvalidComplexError(f"simplex {s} is not in the complex")
    sset = set(s)
    facets = []
    orient = {}
    for f, o in X.orientation.items():
        if sset.issubset(f):
            rest = tuple(v for v in f if v not in sset)
            if not rest:
                continue
            _, sg = sort_sign(s + rest)
            facets.append(rest)
            orient[rest] = o * sg
    if not facets:
        raise InvalidComplexError(f"simplex {s} is a facet; its link is empty")
    lk = SimplicialComplex(facets)
    ell = lk.dim
    filt = []
    for i, lev in enumerate(X.levels):
        if i > ell - 2:
            break
        gens = [t for t in lk.all_simplices() if tuple(sorted(t + s)) in lev]
        filt.append(gens)
    return validate_pseudomanifold(lk, filt, orient)


# ---------------------------------------------------------------------------
# barycentric subdivision


def _flags_ending_at(s: tuple):
    """All full flags (s_0 < ... < s_k = s) as lists of simplices, with vertex-order sign."""
    if len(s) == 1:
        yield [s], (s[0],)
        return
    for i in range(len(s)):
        face = s[:i] + s[i + 1 :]
        for flag, order in _flags_ending_at(face):
            yield flag + [s], order + (s[i],)


def barycentric_subdivide(cx: SimplicialComplex):
    """First barycentric subdivision.

    Returns ``(sd, vertex_of)`` where ``vertex_of`` maps each simplex of
    ``cx`` to its barycenter vertex in ``sd``.  Barycenters are numbered by
    (dimension, simplex), so increasing vertex order in ``sd`` walks a flag
    from its smallest simplex to its largest.
    """
    ordered = [s for layer in cx.simplices for s in layer]
    vertex_of = {s: i for i, s in enumerate(ordered)}
    facets = []
    for f in cx.facets:
        for flag, _ in _flags_ending_at(f):
            facets.append(tuple(vertex_of[t] for t in flag))
    sd = SimplicialComplex(facets, len(ordered))
    sd.labels = {i: s for s, i in vertex_of.items()}
    return sd, vertex_of


def subdivision_chain(vertex_of: dict, s: tuple) -> dict:
    """Image of the oriented simplex ``s`` under the subdivision chain map."""
    out = {}
    for flag, order in _flags_ending_at(tuple(s)):
        _, sg = sort_sign(order)
        out[tuple(vertex_of[t] for t in flag)] = Fraction(sg)
    return out


def subdivide_chain(vertex_of: dict, chain: dict) -> dict:
    out: dict = {}
    for s, c in chain.items():
        for t, v in subdivision_chain(vertex_of, s).items():
            nv = out.get(t, 0) + c * v
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
    return out


@dataclass
class Subdivision:
    base: SimplicialPseudomanifold
    sd: SimplicialPseudomanifold
    vertex_of: dict

    def simplex_of(self, v: int) -> tuple:
        return self.sd.complex.labels[v]

    def approx_vertex(self, v: int):
        """Simplicial approximation of the identity: barycenter -> largest vertex."""
        return self.simplex_of(v)[-1]


def subdivide_pseudomanifold(X: SimplicialPseudomanifold) -> Subdivision:
    sd, vertex_of = barycentric_subdivide(X.complex)
    orient = {}
    for f, o in X.orientation.items():
        for t, v in subdivision_chain(vertex_of, f).items():
            orient[t] = int(o * v)
    levels = []
    for lev in X.levels:
        verts = [vertex_of[s] for s in lev]
        vs = set(verts)
        levels.append(frozenset(t for t in sd.all_simplices() if all(v in vs for v in t)))
    sdX = SimplicialPseudomanifold(sd, X.dim, orient, tuple(levels), labels=sd.labels)
    return Subdivision(X, sdX, vertex_of)


# ---------------------------------------------------------------------------
# dual blocks


@dataclass
class DualBlockDecomposition:
    """Dual block D(s) of every simplex s, as oriented chains in the subdivision.

    ``incidence[s]`` expresses the boundary of D(s) as a combination of
    blocks D(r) for the cofaces r of s.
    """

    subdivision: Subdivision
    blocks: dict
    incidence: dict

    def block_dim(self, s) -> int:
        return self.subdivision.base.dim - (len(s) - 1)


def _dual_block_chain(X: SimplicialPseudomanifold, vertex_of: dict, s: tuple) -> dict:
    n = X.dim
    out = {}

    def extend(path, verts, top):
        if len(top) == n + 1:
            o = X.orientation.get(top)
            if o is None:
                return
            _, sg = sort_sign(verts)
            out[tuple(vertex_of[t] for t in path)] = Fraction(o * sg)
            return
        for r in X.complex.cofaces(top):
            (extra,) = set(r) - set(top)
            extend(path + [r], verts + (extra,), r)

    extend([s], tuple(s), s)
    return out


def dual_blocks(X: SimplicialPseudomanifold, subdivision: Subdivision | None = None) -> DualBlockDecomposition:
    sub = subdivision or subdivide_pseudomanifold(X)
    vertex_of = sub.vertex_of
    blocks = {s: _dual_block_chain(X, vertex_of, s) for s in X.complex.all_simplices()}
    incidence = {}
    for s, chain in blocks.items():
        bd = chain_boundary(chain)
        grouped: dict = defaultdict(dict)
        for t, c in bd.items():
            grouped[sub.simplex_of(t[0])][t] = c
        inc = {}
        for r, part in grouped.items():
            ref = blocks[r]
            t0 = next(iter(part))
            ratio = part[t0] / ref[t0]
            if any(ref.get(t) is None or part[t] != ratio * ref[t] for t in part) or len(part) != len(ref):
                raise InvalidComplexError(f"boundary of D{s} is not a union of blocks near D{r}")
            inc[r] = ratio
        incidence[s] = inc
    return DualBlockDecomposition(sub, blocks, incidence)


# ---------------------------------------------------------------------------
# cyclic actions


@dataclass
class CyclicAction:
    order: int
    perm: dict
    orientation_sign: int = 1
    exact_order: int = 1

    def __call__(self, v):
        return self.perm[v]

    def power(self, k: int) -> "CyclicAction":
        k %= self.order
        p = {}
        for v in self.perm:
            w = v
            for _ in range(k):
                w = self.perm[w]
            p[v] = w
        return CyclicAction(self.order, p, self.orientation_sign ** k, self.exact_order)

    def inverse(self) -> "CyclicAction":
        return self.power(self.order - 1)

    def apply_simplex(self, s: tuple) -> tuple[tuple, int]:
        return sort_sign(tuple(self.perm[v] for v in s))

    def apply_chain(self, chain: dict) -> dict:
        out = {}
        for s, c in chain.items():
            t, sg = self.apply_simplex(s)
            out[t] = out.get(t, 0) + sg * c
        return {k: v for k, v in out.items() if v}

    def on_subdivision(self, sub: Subdivision) -> "CyclicAction":
        p = {}
        for s, v in sub.vertex_of.items():
            t, _ = self.apply_simplex(s)
            p[v] = sub.vertex_of[t]
        return CyclicAction(self.order, p, self.orientation_sign, self.exact_order)

    def to_json(self) -> dict:
        return {"order": self.order, "vertex_perm": [self.perm[v] for v in sorted(self.perm)]}


def validate_action(X: SimplicialPseudomanifold, order: int, perm) -> CyclicAction:
    """Check a vertex permutation generates an orientation- and strata-preserving Z/order action."""
    cx = X.complex
    if isinstance(perm, (list, tuple)):
        perm = {v: perm[v] for v in range(len(perm))} if len(perm) >= cx.n_vertices else None
        if perm is None:
            raise InvalidComplexError("vertex_perm shorter than the vertex count")
    problems = []
    verts = set(cx.vertices)
    if order < 1:
        raise InvalidComplexError("order must be positive")
    if set(perm.get(v) for v in verts) != verts:
        raise InvalidComplexError("vertex_perm is not a permutation of the vertices")
    perm = {v: perm[v] for v in verts}
    act = CyclicAction(order, perm)
    facet_set = set(cx.facets)
    for f in cx.facets:
        t, _ = act.apply_simplex(f)
        if t not in facet_set:
            problems.append(f"permutation maps facet {f} to non-simplex {t}")
            break
    if problems:
        raise InvalidComplexError(problems)
    # exact order of the permutation
    k, cur = 1, dict(perm)
    while any(cur[v] != v for v in verts):
        cur = {v: perm[cur[v]] for v in verts}
        k += 1
    if order % k:
        problems.append(f"order mismatch: generator has order {k}, which does not divide {order}")
    signs = set()
    for f, o in X.orientation.items():
        t, sg = act.apply_simplex(f)
        signs.add(o * sg * X.orientation[t])
    if signs != {1}:
        problems.append("orientation sign -1: generator reverses the orientation")
    for i, lev in enumerate(X.levels):
        if any(act.apply_simplex(s)[0] not in lev for s in lev):
            problems.append(f"stratum not preserved: X_{X.dim - 2 - i} is not invariant")
    if problems:
        raise InvalidComplexError(problems)
    return CyclicAction(order, perm, 1, k)


@dataclass
class FixedComponent:
    """A connected component of the fixed set, as a subcomplex of the first subdivision.

    ``simplices`` are the invariant simplices of X whose barycenters span the
    component; its simplices are the flags of these.
    """

    simplices: tuple
    dim: int
    flags: tuple = field(repr=False, default=())

    @property
    def is_even_dimensional(self) -> bool:
        return self.dim % 2 == 0

    def as_pseudomanifold(self) -> SimplicialPseudomanifold:
        ids = {s: i for i, s in enumerate(sorted(self.simplices, key=lambda s: (len(s), s)))}
        tops = []
        flagset = {tuple(ids[s] for s in fl) for fl in self.flags}
        for fl in flagset:
            if not any(set(fl) < set(g) for g in flagset if len(g) == len(fl) + 1):
                tops.append(fl)
        cx = SimplicialComplex(tops, len(ids))
        return validate_pseudomanifold(cx)


def fixed_subcomplex(X: SimplicialPseudomanifold, act: CyclicAction) -> list[FixedComponent]:
    """Connected components of the fixed point set of the generator.

    Works in the first barycentric subdivision, where the action is regular:
    the fixed set is spanned by barycenters of setwise-invariant simplices.
    """
    inv = [s for s in X.complex.all_simplices() if act.apply_simplex(s)[0] == s]
    if not inv:
        return []
    inv_set = set(inv)
    parent = {s: s for s in inv}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in inv:
        for k in range(1, len(s)):
            for f in combinations(s, k):
                if f in inv_set:
                    a, b = find(s), find(f)
                    if a != b:
                        parent[a] = b
    groups = defaultdict(list)
    for s in inv:
        groups[find(s)].append(s)
    comps = []
    for members in groups.values():
        mset = set(members)
        longest = {}
        flags_to = {}
        for s in sorted(members, key=len):
            best, fl = 0, [(s,)]
            subs = [f for k in range(1, len(s)) for f in combinations(s, k) if f in mset]
            if subs:
                best = max(longest[f] for f in subs) + 1
                fl = [p + (s,) for f in subs for p in flags_to[f]] + [(s,)]
            longest[s] = best
            flags_to[s] = fl
        all_flags = tuple(sorted({p for s in members for p in flags_to[s]}))
        comps.append(FixedComponent(tuple(sorted(members, key=lambda s: (len(s), s))), max(longest.values()), all_flags))
    comps.sort(key=lambda c: (c.dim, c.simplices))
    return comps
