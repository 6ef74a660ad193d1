import pytest
from hypothesis import given, settings, strategies as st

from oracles import betti_numbers
from wittsig import constructions as C
from wittsig.ih import (
    Perversity,
    allowable_chain_basis,
    cohomology_basis,
    compute_ih,
    homology_basis,
    ih_ranks,
    lower_middle_perversity,
    upper_middle_perversity,
    witt_check,
)
from wittsig.simplicial import pseudomanifold_from_listing

BASE = {
    "sphere2": (C.boundary_simplex(3), 4),
    "octahedron": (C.octahedron(), 6),
    "torus": (C.torus7(), 7),
}


def stellar(facets, n, picks):
    """Starring a sequence of facets keeps the homeomorphism type."""
    facets = [tuple(f) for f in facets]
    for k in picks:
        f = facets.pop(k % len(facets))
        for i in range(len(f)):
            facets.append(f[:i] + f[i + 1:] + (n,))
        n += 1
    return facets, n


def relabel(facets, n, perm):
    return [tuple(perm[v] for v in f) for f in facets], n


surfaces = st.builds(
    lambda key, picks, seed: relabel(*stellar(*BASE[key], picks), _perm(BASE[key][1] + len(picks), seed)),
    st.sampled_from(sorted(BASE)),
    st.lists(st.integers(0, 100), max_size=3),
    st.randoms(use_true_random=False),
)


def _perm(n, rnd):
    p = list(range(n))
    rnd.shuffle(p)
    return p


def suspension_space(facets, n):
    sf, north, south = C.suspension(facets, n)
    pts = [(north,), (south,)]
    dim = len(sf[0]) - 1
    return pseudomanifold_from_listing(n + 2, sf, filtration=[pts] * (dim - 1))


def cone_formula(betti, n, p):
    cut = n - 1 - p
    red = [b - (1 if i == 0 else 0) for i, b in enumerate(betti)]
    out = [1]
    for i in range(1, n + 1):
        if i < cut:
            out.append(red[i] if i < len(red) else 0)
        elif i > cut:
            out.append(red[i - 1] if i - 1 < len(red) else 0)
        else:
            out.append(0)
    return out


def test_perversities():
    lo, up = lower_middle_perversity(6), upper_middle_perversity(6)
    assert [lo(k) for k in range(2, 7)] == [0, 0, 1, 1, 2]
    assert [up(k) for k in range(2, 7)] == [0, 1, 1, 2, 2]
    with pytest.raises(ValueError):
        Perversity((1, 1))
    with pytest.raises(ValueError):
        Perversity((0, 2))
    with pytest.raises(ValueError):
        lo(7)


@given(surfaces)
@settings(max_examples=15)
def test_manifold_ih_equals_homology(data):
    facets, n = data
    X = pseudomanifold_from_listing(n, facets)
    assert ih_ranks(X) == betti_numbers(facets)
    assert [homology_basis(X, i).rank for i in range(3)] == betti_numbers(facets)
    assert [cohomology_basis(X, i).rank for i in range(3)] == betti_numbers(facets)


@given(surfaces)
@settings(max_examples=6)
def test_suspension_cone_formula(data):
    facets, n = data
    X = suspension_space(facets, n)
    b = betti_numbers(facets)
    assert ih_ranks(X, "lower") == cone_formula(b, 3, 0)
    assert ih_ranks(X, "upper") == cone_formula(b, 3, 1)
    w = witt_check(X)
    assert w.is_witt == (b[1] == 0)
    assert all(x["middle_rank"] == b[1] for x in w.witnesses)


def test_duality_between_perversities():
    X = suspension_space(C.torus7(), 7)
    lo, up = ih_ranks(X, "lower"), ih_ranks(X, "upper")
    assert lo == up[::-1]


def test_suspension_of_s4_is_witt():
    X = suspension_space(C.boundary_simplex(5), 6)
    assert ih_ranks(X) == [1, 0, 0, 0, 0, 1]
    assert witt_check(X).is_witt


def test_subdivided_path_agrees():
    facets, n = BASE["torus"]
    X = pseudomanifold_from_listing(n, facets)
    assert ih_ranks(X, subdivide=True) == ih_ranks(X, subdivide=False) == [1, 2, 1]


def test_representatives_are_allowable_cycles():
    X = suspension_space(C.torus7(), 7)
    g = compute_ih(X, "lower", 1)
    assert g.rank == 2
    allowed = allowable_chain_basis(X, "lower", 1)
    assert allowed
    for rep in g.representatives:
        assert any(rep)
        assert g.coordinates(rep) != [0] * g.rank


def test_witt_report_contents():
    X = suspension_space(C.torus7(), 7)
    rep = witt_check(X).to_json()
    assert rep["is_witt"] is False
    assert {tuple(w["simplex"]) for w in rep["witnesses"]} == {(7,), (8,)}
    assert all(w["link_f_vector"] == [7, 21, 14] for w in rep["witnesses"])
