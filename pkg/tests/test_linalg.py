from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from wittsig.cyclotomic import Cyclotomic
from wittsig.linalg import ExactMatrix, Echelon, exact_rank, hermitian_signature, kernel_basis, mat_mul, solve_square

small = st.integers(-3, 3).map(Fraction)


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    density = draw(st.sampled_from([0.2, 0.5, 1.0]))
    rows = [[draw(small) if draw(st.floats(0, 1)) < density else Fraction(0) for _ in range(c)] for _ in range(r)]
    return rows


@given(matrices())
def test_rank_matches_sympy(rows):
    assert exact_rank(ExactMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()


@given(matrices())
def test_kernel_basis(rows):
    m = ExactMatrix.from_rows(rows)
    cols = m.column_vectors()
    ker = kernel_basis(cols)
    assert len(ker) == len(rows[0]) - sympy.Matrix(rows).rank()
    for v in ker:
        image = {}
        for j, c in v.items():
            for i, x in cols[j].items():
                image[i] = image.get(i, 0) + c * x
        assert all(x == 0 for x in image.values())


@given(matrices())
def test_echelon_membership(rows):
    ech = Echelon()
    for r in rows:
        ech.add({j: x for j, x in enumerate(r) if x})
    for r in rows:
        assert ech.contains({j: x for j, x in enumerate(r) if x})


@given(st.integers(1, 5), st.data())
def test_symmetric_signature_matches_eigenvalues(n, data):
    a = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    h = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
    p, q, z = hermitian_signature(h)
    ev = sympy.Matrix(h).eigenvals()
    sp = sum(m for v, m in ev.items() if sympy.re(sympy.N(v, 50)) > 1e-20)
    sn = sum(m for v, m in ev.items() if sympy.re(sympy.N(v, 50)) < -1e-20)
    assert (p, q, z) == (sp, sn, n - sp - sn)


def test_hermitian_signature_over_gaussian_rationals():
    i = Cyclotomic.zeta(4)
    one = Cyclotomic.one(4)
    zero = Cyclotomic.zero(4)
    # [[0, i], [-i, 0]] has eigenvalues +1 and -1
    assert hermitian_signature([[zero, i], [-i, zero]]) == (1, 1, 0)
    assert hermitian_signature([[one, i], [-i, one]]) == (1, 0, 1)


@given(st.integers(1, 4), st.data())
def test_solve_square(n, data):
    a = [[data.draw(small) for _ in range(n)] for _ in range(n)]
    if sympy.Matrix(a).det() == 0:
        return
    b = [[data.draw(small)] for _ in range(n)]
    x = solve_square(a, b)
    assert mat_mul(a, x) == b
