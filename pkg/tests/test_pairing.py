
import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import corpus_fixture
from test_ih import surfaces
from wittsig.cyclotomic import Cyclotomic, embed_complex
from wittsig.pairing import (
    PairingError,
    action_matrix,
    cup_product_form,
    g_signature_direct,
    intersection_form,
    odd_signature_float_oracle,
    signature,
)
from wittsig.simplicial import pseudomanifold_from_listing, validate_action


def identity_action(X):
    return validate_action(X, 1, {v: v for v in X.complex.vertices})


def test_cp2_form_matches_cup_product():
    X = corpus_fixture("cp2_9vertex").space
    form = intersection_form(X)
    assert form.degree == 2 and form.rank == 1
    assert form.matrix == cup_product_form(X)
    assert abs(form.matrix[0][0]) == 1
    assert signature(X) == 1


def test_s2xs2_form_is_hyperbolic():
    X = corpus_fixture("s2xs2_swap").space
    form = intersection_form(X)
    m = sympy.Matrix(form.matrix)
    assert m == m.T and m.det() == -1
    assert all(form.matrix[i][i] % 2 == 0 for i in range(2))
    assert signature(X) == 0


def test_reversed_orientation_flips_signature():
    fx = corpus_fixture("cp2_9vertex")
    X = fx.space
    flipped = pseudomanifold_from_listing(
        len(X.complex.vertices), list(X.orientation), [-o for o in X.orientation.values()]
    )
    assert signature(flipped) == -signature(X)


@given(surfaces)
@settings(max_examples=10)
def test_surface_forms_are_unimodular_and_skew(data):
    facets, n = data
    X = pseudomanifold_from_listing(n, facets)
    form = intersection_form(X)
    m = sympy.Matrix(form.matrix) if form.rank else sympy.zeros(0, 0)
    assert m == -m.T
    if form.rank:
        assert m.det() == 1
    rep = g_signature_direct(X, identity_action(X))
    assert rep.value.is_zero()


def test_sphere_forms_are_empty():
    X = corpus_fixture("octahedron").space
    assert intersection_form(X).rank == 0
    assert g_signature_direct(X, identity_action(X)).value.is_zero()


def test_non_witt_space_is_rejected():
    with pytest.raises(PairingError):
        intersection_form(corpus_fixture("suspension_torus").space)


def test_swap_and_rotation():
    sw = corpus_fixture("s2xs2_swap")
    rep = g_signature_direct(sw.space, sw.action)
    assert rep.value == Cyclotomic.rational(rep.value.order, 2)
    assert rep.inertia == {0: (1, 0, 0), 1: (0, 1, 0)}
    rot = corpus_fixture("s2xs2_rotation")
    assert g_signature_direct(rot.space, rot.action).value.is_zero()


def test_action_matrix_preserves_form():
    fx = corpus_fixture("s2xs2_swap")
    B = intersection_form(fx.space).matrix
    G = action_matrix(fx.space, fx.action)
    GT = [list(r) for r in zip(*G)]
    prod = [[sum(GT[i][k] * B[k][l] * G[l][j] for k in range(2) for l in range(2)) for j in range(2)] for i in range(2)]
    assert prod == B


def _to_mpc(c: Cyclotomic):
    re, im = embed_complex(c, 256)
    return mpmath.mpc(re, im)


@pytest.mark.parametrize("name", ["torus7_involution", "torus7_order3"])
@given(seed=st.integers(0, 10**6), power=st.integers(-4, 4))
@settings(max_examples=8)
def test_odd_exact_matches_float_oracle(name, seed, power):
    fx = corpus_fixture(name)
    exact = g_signature_direct(fx.space, fx.action, power).value
    with mpmath.workprec(256):
        approx = odd_signature_float_oracle(fx.space, fx.action, power, 256, seed)
        assert abs(approx - _to_mpc(exact)) < mpmath.mpf(10) ** -30


def test_torus_order3_values():
    fx = corpus_fixture("torus7_order3")
    g = g_signature_direct(fx.space, fx.action).value
    g2 = g_signature_direct(fx.space, fx.action, 2).value
    assert g * g == Cyclotomic.rational(g.order, -3)
    assert g2 == g.conj()


def test_identity_power_gives_zero_for_odd_degree():
    fx = corpus_fixture("torus7_involution")
    assert g_signature_direct(fx.space, fx.action, 0).value.is_zero()
    rep = g_signature_direct(fx.space, fx.action)
    assert rep.rank == 2 and rep.value.is_zero()
