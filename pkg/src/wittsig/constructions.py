"""Small triangulations used by the fixture corpus and the tests."""

from __future__ import annotations

from itertools import combinations


__all__ = [
    "boundary_simplex",
    "octahedron",
    "OCTAHEDRON_QUARTER_TURN",
    "OCTAHEDRON_REFLECTION",
    "cycle_graph",
    "torus7",
    "torus_grid",
    "cp2_9",
    "suspension",
    "wedge",
    "product",
    "octahedron_edge_order",
]


def boundary_simplex(n: int) -> list[tuple]:
    """Facets of the boundary of the n-simplex (an (n-1)-sphere)."""
    return list(combinations(range(n + 1), n))


# vertices 0:+x 1:+y 2:-x 3:-y 4:+z 5:-z
_OCTA = [(4, 0, 1), (4, 1, 2), (4, 2, 3), (4, 3, 0), (5, 0, 1), (5, 1, 2), (5, 2, 3), (5, 3, 0)]
OCTAHEDRON_QUARTER_TURN = [1, 2, 3, 0, 4, 5]
OCTAHEDRON_REFLECTION = [0, 3, 2, 1, 4, 5]  # y -> -y


def octahedron() -> list[tuple]:
    return [tuple(sorted(f)) for f in _OCTA]


def octahedron_edge_order(u: int, v: int) -> bool:
    """Rotation-invariant acyclic edge orientation: is u before v?

    North pole first, south pole last, equator oriented 0 -> 1 -> 2 -> 3 -> 0.
    """
    if u == 4 or v == 5:
        return True
    if u == 5 or v == 4:
        return False
    return (v - u) % 4 == 1


def cycle_graph(n: int) -> list[tuple]:
    return [(i, (i + 1) % n) for i in range(n)]


def torus7() -> list[tuple]:
    """Möbius' 7-vertex torus."""
    out = set()
    for i in range(7):
        out.add(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        out.add(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return sorted(out)


def torus_grid(k: int = 3) -> list[tuple]:
    """The k x k grid torus (k >= 3), vertex (i, j) -> i*k + j."""
    def v(i, j):
        return (i % k) * k + (j % k)

    out = []
    for i in range(k):
        for j in range(k):
            out.append(tuple(sorted((v(i, j), v(i + 1, j), v(i + 1, j + 1)))))
            out.append(tuple(sorted((v(i, j), v(i, j + 1), v(i + 1, j + 1)))))
    return out


_CP2 = [
    (1, 2, 3, 4, 5), (1, 2, 3, 4, 7), (1, 2, 3, 5, 8), (1, 2, 3, 7, 8), (1, 2, 4, 5, 6),
    (1, 2, 4, 6, 7), (1, 2, 5, 6, 8), (1, 2, 6, 7, 9), (1, 2, 6, 8, 9), (1, 2, 7, 8, 9),
    (1, 3, 4, 5, 9), (1, 3, 4, 7, 8), (1, 3, 4, 8, 9), (1, 3, 5, 6, 8), (1, 3, 5, 6, 9),
    (1, 3, 6, 8, 9), (1, 4, 5, 6, 7), (1, 4, 5, 7, 9), (1, 4, 7, 8, 9), (1, 5, 6, 7, 9),
    (2, 3, 4, 5, 9), (2, 3, 4, 6, 7), (2, 3, 4, 6, 9), (2, 3, 5, 7, 8), (2, 3, 5, 7, 9),
    (2, 3, 6, 7, 9), (2, 4, 5, 6, 8), (2, 4, 5, 8, 9), (2, 4, 6, 8, 9), (2, 5, 7, 8, 9),
    (3, 4, 6, 7, 8), (3, 4, 6, 8, 9), (3, 5, 6, 7, 8), (3, 5, 6, 7, 9), (4, 5, 6, 7, 8),
    (4, 5, 7, 8, 9),
]


def cp2_9() -> list[tuple]:
    """Kühnel's 9-vertex complex projective plane (vertices relabelled 0..8)."""
    return [tuple(v - 1 for v in f) for f in _CP2]


def suspension(facets, n_vertices: int) -> tuple[list[tuple], int, int]:
    """Facets of the suspension; returns (facets, north, south) with apexes appended."""
    a, b = n_vertices, n_vertices + 1
    out = [tuple(f) + (a,) for f in facets] + [tuple(f) + (b,) for f in facets]
    return out, a, b


def wedge(facets_a, n_a: int, facets_b, shared_a: int = 0, shared_b: int = 0) -> tuple[list[tuple], int]:
    """Glue two complexes at one vertex; returns (facets, wedge vertex)."""
    def relabel(v):
        if v == shared_b:
            return shared_a
        return n_a + v - (1 if v > shared_b else 0)

    out = [tuple(f) for f in facets_a] + [tuple(relabel(v) for v in f) for f in facets_b]
    return out, shared_a


def _local_sort(face, before):
    items = list(face)
    # insertion sort by an acyclic relation on the face's edges
    for i in range(1, len(items)):
        j = i
        while j > 0 and not before(items[j - 1], items[j]):
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    return items


def product(facets_a, facets_b, n_b: int, before_a, before_b) -> list[tuple]:
    """Staircase triangulation of a product of locally ordered complexes.

    ``before_x(u, v)`` is an acyclic orientation of the edges of each
    factor; the triangulation is invariant under any simplicial maps
    preserving these orientations.  Vertex (a, b) gets id a * n_b + b.
    """
    out = []
    for fa in facets_a:
        oa = _local_sort(fa, before_a)
        for fb in facets_b:
            ob = _local_sort(fb, before_b)
            p, q = len(oa) - 1, len(ob) - 1
            for ups in combinations(range(p + q), p):
                i = j = 0
                verts = [oa[0] * n_b + ob[0]]
                for step in range(p + q):
                    if step in ups:
                        i += 1
                    else:
                        j += 1
                    verts.append(oa[i] * n_b + ob[j])
                out.append(tuple(sorted(verts)))
    return out
