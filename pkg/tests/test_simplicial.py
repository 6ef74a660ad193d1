import pytest
from hypothesis import given, strategies as st

from oracles import betti_numbers, euler_characteristic
from wittsig import constructions as C
from wittsig.simplicial import (
    CyclicAction,
    InvalidComplexError,
    SimplicialComplex,
    barycentric_subdivide,
    dual_blocks,
    fixed_subcomplex,
    link_of_stratum_point,
    pseudomanifold_from_listing,
    subdivide_pseudomanifold,
    validate_action,
)


def test_boundary_simplex_validates():
    X = pseudomanifold_from_listing(5, C.boundary_simplex(4))
    assert X.dim == 3
    assert sum(1 for v in X.orientation.values()) == 5


def test_orientation_is_checked():
    facets = C.boundary_simplex(3)
    with pytest.raises(InvalidComplexError, match="do not cancel"):
        pseudomanifold_from_listing(4, facets, [1, 1, 1, 1])


def test_non_pseudomanifold_rejected():
    # three triangles sharing an edge
    with pytest.raises(InvalidComplexError, match="cofaces"):
        pseudomanifold_from_listing(5, [(0, 1, 2), (0, 1, 3), (0, 1, 4)])


def test_non_pure_rejected():
    with pytest.raises(InvalidComplexError):
        pseudomanifold_from_listing(6, C.boundary_simplex(3) + [(4, 5)])


def test_filtration_dimension_checked():
    facets, north, south = C.suspension(C.torus7(), 7)
    with pytest.raises(InvalidComplexError, match="dimension"):
        pseudomanifold_from_listing(9, facets, filtration=[[(0, 1, 3)]])
    X = pseudomanifold_from_listing(9, facets, filtration=[[(north,), (south,)], [(north,), (south,)]])
    assert X.singular_codims() == [3]


def test_link_of_cone_point_is_torus():
    facets, north, south = C.suspension(C.torus7(), 7)
    X = pseudomanifold_from_listing(9, facets, filtration=[[(north,), (south,)], [(north,), (south,)]])
    L = link_of_stratum_point(X, (north,))
    assert L.dim == 2
    assert betti_numbers(list(L.complex.facets)) == [1, 2, 1]


@pytest.mark.parametrize("facets,n", [(C.boundary_simplex(3), 4), (C.octahedron(), 6), (C.torus7(), 7)])
def test_subdivision_preserves_homology(facets, n):
    X = pseudomanifold_from_listing(n, facets)
    sub = subdivide_pseudomanifold(X)
    sd_facets = list(sub.sd.complex.facets)
    assert betti_numbers(sd_facets) == betti_numbers(facets)
    assert euler_characteristic(sd_facets) == euler_characteristic(facets)
    assert len(sd_facets) == len(facets) * 6


def test_barycentric_counts():
    cx = SimplicialComplex(C.boundary_simplex(3), 4)
    sd = barycentric_subdivide(cx)
    sd_cx = sd[0] if isinstance(sd, tuple) else sd.complex
    assert sd_cx.count(0) == 4 + 6 + 4
    assert sd_cx.count(2) == 24


def test_dual_blocks_cover():
    X = pseudomanifold_from_listing(6, C.octahedron())
    db = dual_blocks(X)
    for s in X.complex.all_simplices():
        assert db.block_dim(s) == X.dim - (len(s) - 1)


@given(st.integers(0, 3))
def test_action_powers(k):
    X = pseudomanifold_from_listing(6, C.octahedron())
    act = validate_action(X, 4, C.OCTAHEDRON_QUARTER_TURN)
    g = act.power(k)
    assert isinstance(g, CyclicAction)
    for v in X.complex.vertices:
        w = (v,)
        for _ in range(k):
            w = act.apply_simplex(w)[0]
        assert g.apply_simplex((v,))[0] == w
        assert act.power(4).apply_simplex((v,))[0] == (v,)


def test_action_validation_errors():
    X = pseudomanifold_from_listing(6, C.octahedron())
    with pytest.raises(InvalidComplexError, match="order mismatch"):
        validate_action(X, 3, C.OCTAHEDRON_QUARTER_TURN)
    with pytest.raises(InvalidComplexError, match="orientation sign -1"):
        validate_action(X, 2, C.OCTAHEDRON_REFLECTION)
    with pytest.raises(InvalidComplexError, match="non-simplex"):
        validate_action(X, 2, [4, 1, 2, 3, 0, 5])


def test_stratum_must_be_preserved():
    facets, north, south = C.suspension(C.boundary_simplex(2), 3)
    # suspended triangle is a 2-sphere; mark only the north pole
    X = pseudomanifold_from_listing(5, facets, filtration=[[(north,)]])
    perm = list(range(5))
    perm[north], perm[south] = south, north
    perm[0], perm[1] = 1, 0
    with pytest.raises(InvalidComplexError, match="stratum not preserved"):
        validate_action(X, 2, perm)


def test_fixed_points_of_rotation():
    X = pseudomanifold_from_listing(6, C.octahedron())
    act = validate_action(X, 4, C.OCTAHEDRON_QUARTER_TURN)
    comps = fixed_subcomplex(X, act)
    assert sorted(c.dim for c in comps) == [0, 0]


def test_fixed_circle_of_involution_on_torus_grid():
    X = pseudomanifold_from_listing(7, C.torus7())
    act = validate_action(X, 2, [(-v) % 7 for v in range(7)])
    assert sorted(c.dim for c in fixed_subcomplex(X, act)) == [0, 0, 0, 0]
