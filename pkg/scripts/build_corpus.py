#!/usr/bin/env python3
"""Regenerate the fixture corpus shipped in src/wittsig/corpus.

Rotation angles at isolated fixed points are read off the triangulation
(the oriented link of a fixed vertex, or the oriented boundary of an
invariant triangle), then encoded with the orientation convention
documented in wittsig.charclass: the natural character on each normal
line, conjugated once more when the complex codimension is odd.
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from pathlib import Path

from wittsig.constructions import (
    OCTAHEDRON_QUARTER_TURN,
    boundary_simplex,
    cp2_9,
    cycle_graph,
    octahedron,
    octahedron_edge_order,
    product,
    suspension,
    torus7,
    torus_grid,
    wedge,
)
from wittsig.cyclotomic import Cyclotomic
from wittsig.simplicial import (
    SimplicialComplex,
    link_of_stratum_point,
    pseudomanifold_from_listing,
    sort_sign,
    validate_action,
    validate_pseudomanifold,
)

OUT = Path(__file__).resolve().parent.parent / "src" / "wittsig" / "corpus"

POINT = {"dim": 0, "basis": [{"degree": 0}], "products": [], "l_class": [1]}
SPHERE_BASIS = [{"degree": 0}, {"degree": 2}]


def complex_block(facets, n_vertices, filtration=(), flip=False):
    """Facets as listed, with a coherent orientation aligned to that listing."""
    X = validate_pseudomanifold(SimplicialComplex(facets, n_vertices))
    orient = []
    for f in facets:
        t, sg = sort_sign(f)
        orient.append(X.orientation[t] * sg * (-1 if flip else 1))
    return {
        "vertices": n_vertices,
        "facets": [list(f) for f in facets],
        "orientation": orient,
        "filtration": [[list(s) for s in lev] for lev in filtration],
    }


def vertex_rotation(facets, n_vertices, perm, v) -> Fraction:
    """Rotation of a fixed vertex of an oriented surface, as a fraction of a full turn."""
    X = validate_pseudomanifold(SimplicialComplex(facets, n_vertices))
    lk = link_of_stratum_point(X, (v,))
    succ = {}
    for (a, b), o in lk.orientation.items():
        if o > 0:
            succ[a] = b
        else:
            succ[b] = a
    u = next(iter(succ))
    steps, w = 0, u
    while w != perm[u]:
        w = succ[w]
        steps += 1
    return Fraction(steps, len(succ))


def triangle_rotation(facets, n_vertices, perm, tri) -> Fraction:
    X = validate_pseudomanifold(SimplicialComplex(facets, n_vertices))
    t = tuple(sorted(tri))
    cyc = list(t) if X.orientation[t] > 0 else [t[0], t[2], t[1]]
    k = (cyc.index(perm[cyc[0]])) % 3
    return Fraction(k, 3)


def point_component(name, turns, order):
    """Isolated fixed point with natural rotation fractions ``turns`` (one per normal line)."""
    normal = []
    for t in turns:
        t = t % 1
        conj = t > Fraction(1, 2)
        a = min(t, 1 - t)
        rec = {"angle_num": int(a * order), "angle_den": order, "rank": 1, "chern": []}
        if conj:
            rec["conjugate"] = True
        normal.append(rec)
    if len(turns) % 2 == 1:
        # odd complex codimension: conjugate one line (skip theta = pi, whose factor vanishes)
        for rec in normal:
            if 2 * rec["angle_num"] != rec["angle_den"]:
                rec["conjugate"] = not rec.get("conjugate", False)
                if not rec["conjugate"]:
                    del rec["conjugate"]
                break
    return dict(POINT, name=name, normal=normal)


def cyc(value: Cyclotomic) -> dict:
    d = value.to_json()
    d.pop("float")
    return d


def rational(order, q) -> dict:
    return cyc(Cyclotomic.rational(order, q))


def fixtures():
    out = {}

    # manifolds
    out["boundary_4simplex"] = {
        "description": "boundary of the 4-simplex, a 3-sphere",
        "complex": complex_block(boundary_simplex(4), 5),
        "expected": {
            "homology_ranks": [1, 0, 0, 1],
            "ih_ranks": [1, 0, 0, 1],
            "is_witt": True,
            "provenance": "sphere homology",
        },
    }
    out["boundary_5simplex"] = {
        "description": "boundary of the 5-simplex, a 4-sphere",
        "complex": complex_block(boundary_simplex(5), 6),
        "expected": {
            "homology_ranks": [1, 0, 0, 0, 1],
            "ih_ranks": [1, 0, 0, 0, 1],
            "is_witt": True,
            "signature": 0,
            "sign_identity": 0,
            "provenance": "sphere homology; empty middle form",
        },
    }
    octa = octahedron()
    out["octahedron"] = {
        "description": "octahedral 2-sphere",
        "complex": complex_block(octa, 6),
        "expected": {
            "homology_ranks": [1, 0, 1],
            "ih_ranks": [1, 0, 1],
            "is_witt": True,
            "signature": 0,
            "sign_identity": 0,
            "provenance": "sphere homology",
        },
    }
    Q = OCTAHEDRON_QUARTER_TURN
    north = vertex_rotation(octa, 6, Q, 4)
    south = vertex_rotation(octa, 6, Q, 5)
    out["octahedron_rotation"] = {
        "description": "octahedral 2-sphere under a quarter turn about the polar axis",
        "complex": complex_block(octa, 6),
        "action": {"order": 4, "vertex_perm": Q},
        "fixed_data": {
            "order": 4,
            "ambient_dim": 2,
            "components": [point_component("north pole", [north], 4), point_component("south pole", [south], 4)],
        },
        "expected": {
            "fixed_component_dims": [0, 0],
            "sign_g": rational(4, 0),
            "formula": rational(4, 0),
            "crosscheck": True,
            "provenance": "IH_1 of the sphere vanishes; pole contributions cancel",
        },
    }
    hexagon = cycle_graph(6)
    out["hexagon_circle"] = {
        "description": "hexagonal circle with the free rotation by one step",
        "complex": complex_block(hexagon, 6),
        "action": {"order": 6, "vertex_perm": [(i + 1) % 6 for i in range(6)]},
        "expected": {
            "homology_ranks": [1, 1],
            "ih_ranks": [1, 1],
            "is_witt": True,
            "fixed_component_dims": [],
            "provenance": "circle homology; free action",
        },
    }
    out["cp2_9vertex"] = {
        "description": "9-vertex complex projective plane, oriented so that the signature is +1",
        "complex": complex_block(cp2_9(), 9, flip=True),
        "expected": {
            "homology_ranks": [1, 0, 1, 0, 1],
            "ih_ranks": [1, 0, 1, 0, 1],
            "is_witt": True,
            "signature": 1,
            "sign_identity": 1,
            "provenance": "homology of CP^2; orientation normalization",
        },
    }

    # S^2 x S^2
    s2s2 = product(octa, octa, 6, octahedron_edge_order, octahedron_edge_order)
    swap = [b * 6 + a for a in range(6) for b in range(6)]
    rot = [Q[a] * 6 + Q[b] for a in range(6) for b in range(6)]
    diagonal = {
        "name": "diagonal 2-sphere",
        "dim": 2,
        "basis": SPHERE_BASIS,
        "products": [],
        "l_class": [0, 1],
        "normal": [{"angle_num": 1, "angle_den": 2, "rank": 1, "chern": [[2, [0, -2]]]}],
    }
    out["s2xs2_swap"] = {
        "description": "product of two octahedra with the factor swap",
        "complex": complex_block(s2s2, 36),
        "action": {"order": 2, "vertex_perm": swap},
        "fixed_data": {"order": 2, "ambient_dim": 4, "components": [diagonal]},
        "expected": {
            "homology_ranks": [1, 0, 2, 0, 1],
            "ih_ranks": [1, 0, 2, 0, 1],
            "is_witt": True,
            "signature": 0,
            "sign_identity": 0,
            "fixed_component_dims": [2],
            "sign_g": rational(2, 2),
            "formula": rational(2, 2),
            "crosscheck": True,
            "provenance": "swap fixes a+b and negates a-b; diagonal self-intersection 2",
        },
    }
    comps = []
    for a, na in ((4, "N"), (5, "S")):
        for b, nb in ((4, "N"), (5, "S")):
            ta = vertex_rotation(octa, 6, Q, a)
            tb = vertex_rotation(octa, 6, Q, b)
            comps.append(point_component(f"({na},{nb})", [ta, tb], 4))
    out["s2xs2_rotation"] = {
        "description": "product of two octahedra with the quarter turn on both factors",
        "complex": complex_block(s2s2, 36),
        "action": {"order": 4, "vertex_perm": rot},
        "fixed_data": {"order": 4, "ambient_dim": 4, "components": comps},
        "expected": {
            "fixed_component_dims": [0, 0, 0, 0],
            "sign_g": rational(4, 0),
            "formula": rational(4, 0),
            "crosscheck": True,
            "provenance": "g acts trivially on H_2; four point contributions -1, 1, 1, -1",
        },
    }

    # singular spaces
    grid = torus_grid(3)
    f, a, b = suspension(grid, 9)
    out["suspension_torus"] = {
        "description": "suspension of the 3x3 grid torus; cone points form a codimension-3 stratum",
        "complex": complex_block(f, 11, [[[a], [b]], [[a], [b]]]),
        "expected": {
            "ih_ranks": [1, 2, 0, 1],
            "ih_ranks_upper": [1, 0, 2, 1],
            "is_witt": False,
            "witness_ranks": [2, 2],
            "provenance": "cone formula: IH_k of the suspension is H_k of the torus below the cutoff",
        },
    }
    f, a, b = suspension(boundary_simplex(5), 6)
    out["suspension_s4"] = {
        "description": "suspension of the boundary of the 5-simplex",
        "complex": complex_block(f, 8, [[[a], [b]]] * 4),
        "expected": {
            "ih_ranks": [1, 0, 0, 0, 0, 1],
            "is_witt": True,
            "provenance": "link S^4 has no middle homology",
        },
    }
    f, a, b = suspension(cp2_9(), 9)
    out["suspension_cp2"] = {
        "description": "suspension of the 9-vertex CP^2; not a Witt space",
        "complex": complex_block(f, 11, [[[a], [b]]] * 4),
        "expected": {
            "is_witt": False,
            "witness_ranks": [1, 1],
            "provenance": "simplicial H_2 of the 9-vertex CP^2 has rank 1",
        },
    }
    w, pt = wedge(boundary_simplex(3), 4, boundary_simplex(3))
    out["wedge_two_spheres"] = {
        "description": "two tetrahedral 2-spheres glued at a vertex, which is the singular stratum",
        "complex": complex_block(w, 7, [[[pt]]]),
        "expected": {
            "homology_ranks": [1, 0, 2],
            "ih_ranks": [2, 0, 2],
            "is_witt": True,
            "signature": 0,
            "provenance": "IH of a normalization: two disjoint spheres",
        },
    }

    # tori with odd middle degree
    t7 = torus7()
    inv = [(-i) % 7 for i in range(7)]
    pts = [point_component("vertex 0", [Fraction(1, 2)], 2)]
    for e in ((1, 6), (2, 5), (3, 4)):
        pts.append(point_component(f"edge {e}", [Fraction(1, 2)], 2))
    out["torus7_involution"] = {
        "description": "7-vertex torus with x -> -x, four isolated fixed points",
        "complex": complex_block(t7, 7),
        "action": {"order": 2, "vertex_perm": inv},
        "fixed_data": {"order": 2, "ambient_dim": 2, "components": pts},
        "expected": {
            "homology_ranks": [1, 2, 1],
            "ih_ranks": [1, 2, 1],
            "is_witt": True,
            "signature": 0,
            "sign_identity": 0,
            "fixed_component_dims": [0, 0, 0, 0],
            "sign_g": rational(2, 0),
            "formula": rational(2, 0),
            "crosscheck": True,
            "provenance": "g_* = -1 on H_1, trace imaginary part 0",
        },
    }
    out["torus7_marked_involution"] = {
        "description": "the same involution with the fixed vertex declared a point stratum",
        "complex": complex_block(t7, 7, [[[0]]]),
        "action": {"order": 2, "vertex_perm": inv},
        "fixed_data": {"order": 2, "ambient_dim": 2, "components": pts},
        "expected": {
            "ih_ranks": [1, 2, 1],
            "is_witt": True,
            "signature": 0,
            "sign_g": rational(2, 0),
            "formula": rational(2, 0),
            "crosscheck": True,
            "provenance": "marking a manifold point does not change IH",
        },
    }
    tri = [2 * i % 7 for i in range(7)]
    pts3 = [point_component("vertex 0", [vertex_rotation(t7, 7, tri, 0)], 3)]
    for t in ((1, 2, 4), (3, 5, 6)):
        pts3.append(point_component(f"triangle {t}", [triangle_rotation(t7, 7, tri, t)], 3))
    minus_i_sqrt3 = Cyclotomic.from_exponents(3, [(0, -1), (1, -2)])
    out["torus7_order3"] = {
        "description": "7-vertex torus with x -> 2x, three isolated fixed points",
        "complex": complex_block(t7, 7),
        "action": {"order": 3, "vertex_perm": tri},
        "fixed_data": {"order": 3, "ambient_dim": 2, "components": pts3},
        "expected": {
            "fixed_component_dims": [0, 0, 0],
            "sign_g": cyc(minus_i_sqrt3),
            "formula": cyc(minus_i_sqrt3),
            "crosscheck": True,
            "provenance": "three points each contributing -i/sqrt(3)",
        },
    }

    # formula-only cases
    out["cp2_involution_formula"] = {
        "description": "CP^2 with [x:y:z] -> [-x:y:z]; fixed set a point and a projective line",
        "fixed_data": {
            "order": 2,
            "ambient_dim": 4,
            "components": [
                dict(POINT, name="point", normal=[{"angle_num": 1, "angle_den": 2, "rank": 2, "chern": []}]),
                {
                    "name": "line",
                    "dim": 2,
                    "basis": SPHERE_BASIS,
                    "products": [],
                    "l_class": [0, 1],
                    "normal": [{"angle_num": 1, "angle_den": 2, "rank": 1, "chern": [[2, [0, -1]]]}],
                },
            ],
        },
        "expected": {
            "formula": rational(2, 1),
            "crosscheck": True,
            "provenance": "g is homotopic to the identity, so Sign(g) = signature = 1",
        },
    }
    out["s2_rotation_formula"] = {
        "description": "round S^2 rotated by 2 pi / 5; the poles rotate in opposite senses",
        "fixed_data": {
            "order": 5,
            "ambient_dim": 2,
            "components": [
                point_component("north", [Fraction(1, 5)], 5),
                point_component("south", [Fraction(4, 5)], 5),
            ],
        },
        "expected": {
            "formula": rational(5, 0),
            "crosscheck": True,
            "provenance": "the two cotangent contributions are negatives of each other",
        },
    }
    out["cp2_identity_formula"] = {
        "description": "trivial action on CP^2; L-class derived from p_1 = 3h^2",
        "fixed_data": {
            "order": 1,
            "ambient_dim": 4,
            "components": [
                {
                    "name": "CP^2",
                    "dim": 4,
                    "basis": [{"degree": 0}, {"degree": 2}, {"degree": 4}],
                    "products": [[1, 1, [0, 0, 1]]],
                    "pontryagin": [[4, [0, 0, 3]]],
                    "fundamental": [0, 0, 1],
                    "normal": [],
                }
            ],
        },
        "expected": {
            "formula": rational(1, 1),
            "crosscheck": True,
            "provenance": "<p_1/3, [CP^2]> = 1",
        },
    }
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, doc in sorted(fixtures().items()):
        doc = dict(doc, name=name)
        text = json.dumps(doc, sort_keys=True, indent=1)
        (args.out / f"{name}.json").write_text(text + "\n")
        print(f"wrote {name}.json")
    # sanity: every action in the corpus validates
    for name, doc in fixtures().items():
        if "action" in doc:
            c = doc["complex"]
            X = pseudomanifold_from_listing(c["vertices"], [tuple(f) for f in c["facets"]], c["orientation"], [[tuple(s) for s in lev] for lev in c["filtration"]])
            validate_action(X, doc["action"]["order"], doc["action"]["vertex_perm"])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
