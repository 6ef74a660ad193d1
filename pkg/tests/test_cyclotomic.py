import cmath
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from wittsig.cyclotomic import Cyclotomic, cyclotomic_polynomial, embed_complex, euler_phi, real_sign

ORDERS = [1, 2, 3, 4, 5, 6, 8, 12, 15]
rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


@st.composite
def elements(draw, order=None):
    n = order or draw(st.sampled_from(ORDERS))
    terms = draw(st.lists(st.tuples(st.integers(0, n - 1), rationals), max_size=5))
    return Cyclotomic.from_exponents(n, terms)


def as_complex(a: Cyclotomic) -> complex:
    re, im = embed_complex(a, 80)
    return complex(float(re), float(im))


def direct_value(n, terms) -> complex:
    return sum(float(c) * cmath.exp(2j * cmath.pi * k / n) for k, c in terms)


@pytest.mark.parametrize("n,expected", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (12, (1, 0, -1, 0, 1))])
def test_cyclotomic_polynomials(n, expected):
    assert cyclotomic_polynomial(n) == expected
    assert euler_phi(n) == len(expected) - 1


@given(st.sampled_from(ORDERS), st.lists(st.tuples(st.integers(-30, 30), rationals), max_size=6))
def test_embedding_matches_direct_sum(n, terms):
    a = Cyclotomic.from_exponents(n, terms)
    assert abs(as_complex(a) - direct_value(n, terms)) < 1e-9 * (1 + sum(abs(float(c)) for _, c in terms))


@given(st.data())
def test_ring_laws(data):
    n = data.draw(st.sampled_from(ORDERS))
    a, b, c = (data.draw(elements(n)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()
    assert abs(as_complex(a * b) - as_complex(a) * as_complex(b)) < 1e-6 * (1 + abs(as_complex(a)) * abs(as_complex(b)))


@given(elements())
def test_inverse_and_conjugate(a):
    if not a.is_zero():
        assert (a * a.inverse()) == Cyclotomic.one(a.order)
    assert a.conj().conj() == a
    assert abs(as_complex(a.conj()) - as_complex(a).conjugate()) < 1e-6 * (1 + abs(as_complex(a)))
    assert (a * a.conj()).is_real()


@given(elements(), st.sampled_from([2, 3, 4]))
def test_lift_preserves_value(a, k):
    b = a.lift(a.order * k)
    assert abs(as_complex(a) - as_complex(b)) < 1e-9 * (1 + abs(as_complex(a)))


def test_zeta_powers():
    z = Cyclotomic.zeta(12)
    p = Cyclotomic.one(12)
    for _ in range(12):
        p = p * z
    assert p == Cyclotomic.one(12)
    assert Cyclotomic.zeta(4) * Cyclotomic.zeta(4) == Cyclotomic.rational(4, -1)


def test_sqrt3_relation():
    # (1 - 2 zeta_12^2)^2 = -3
    a = Cyclotomic.from_exponents(12, [(0, 1), (2, -2)])
    assert a * a == Cyclotomic.rational(12, -3)


@given(elements())
def test_real_sign(a):
    r = a + a.conj()
    v = as_complex(r).real
    s = real_sign(r)
    if abs(v) > 1e-6:
        assert s == (1 if v > 0 else -1)
    if r.is_zero():
        assert s == 0


def test_real_sign_near_cancellation():
    # 2cos(pi/6) - sqrt(3) = 0 exactly, and tiny rational offsets keep their sign
    root3 = Cyclotomic.from_exponents(12, [(1, 1), (11, 1)])
    three = Cyclotomic.rational(12, 3)
    assert (root3 * root3 - three).is_zero()
    eps = Cyclotomic.rational(12, Fraction(1, 10**40))
    assert real_sign(root3 * root3 - three + eps) == 1
    assert real_sign(root3 * root3 - three - eps) == -1


def test_json_round_trip():
    a = Cyclotomic.from_exponents(8, [(1, Fraction(2, 3)), (3, -1)])
    d = a.to_json(128)
    assert Cyclotomic.from_json(d) == a
    assert abs(complex(*d["float"]) - as_complex(a)) < 1e-12
    with mpmath.workprec(64):
        assert d["order"] == 8
