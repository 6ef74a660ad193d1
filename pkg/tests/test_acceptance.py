"""Acceptance criteria 1-10. Each test records one PASS/FAIL line.

The lines are printed as each test finishes and again in pytest's terminal
summary. ``python tests/test_acceptance.py`` runs them without pytest.
"""

import sys
import time
from fractions import Fraction

import mpmath

from conftest import corpus_fixture
from oracles import betti_numbers
from wittsig.charclass import GradedClass, PowerSeries1D, genus_expand, l_genus_series, polynomial_presentation
from wittsig.cli import identity_check
from wittsig.config import IdentityCheckConfig
from wittsig.cyclotomic import Cyclotomic, embed_complex, lcm
from wittsig.harness import dumps, run_corpus, run_crosscheck
from wittsig.ih import homology_basis, ih_ranks, witt_check
from wittsig.pairing import g_signature_direct, odd_signature_float_oracle, signature
from wittsig.simplicial import validate_action

RESULTS: dict[int, str] = {}
_CORPUS_RUNS: list[str] = []
_CORPUS_SECONDS: list[float] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def _corpus_json() -> str:
    if not _CORPUS_RUNS:
        t0 = time.perf_counter()
        _CORPUS_RUNS.append(dumps(run_corpus()))
        _CORPUS_SECONDS.append(time.perf_counter() - t0)
    return _CORPUS_RUNS[0]


def _eq(a: Cyclotomic, b: Cyclotomic) -> bool:
    m = lcm(a.order, b.order)
    return (a.lift(m) - b.lift(m)).is_zero()


def test_criterion_01_manifold_reduction():
    names = ["boundary_4simplex", "boundary_5simplex", "octahedron", "cp2_9vertex", "s2xs2_swap"]
    bad = []
    for name in names:
        X = corpus_fixture(name).space
        ih = ih_ranks(X)
        h = [homology_basis(X, i).rank for i in range(X.dim + 1)]
        if ih != h or h != betti_numbers(list(X.complex.facets)):
            bad.append(name)
    _corpus_json()
    secs = _CORPUS_SECONDS[0]
    record(1, not bad and secs < 60, f"IH = H on {len(names) - len(bad)}/{len(names)} manifolds; corpus run {secs:.1f} s (< 60 s)")


def test_criterion_02_witt_classifier():
    s4 = witt_check(corpus_fixture("suspension_s4").space)
    cp2 = witt_check(corpus_fixture("suspension_cp2").space)
    h2 = betti_numbers(list(corpus_fixture("cp2_9vertex").space.complex.facets))[2]
    ranks = sorted(w["middle_rank"] for w in cp2.witnesses)
    ok = s4.is_witt and not cp2.is_witt and ranks == [h2, h2] and h2 == 1
    record(2, ok, f"Sigma S^4 Witt={s4.is_witt}; Sigma CP^2 Witt={cp2.is_witt}, witness ranks {ranks} (oracle H_2 = {h2})")


def test_criterion_03_signature_normalization():
    a = signature(corpus_fixture("cp2_9vertex").space)
    b = signature(corpus_fixture("s2xs2_swap").space)
    record(3, a == 1 and b == 0, f"signature(CP^2) = {a}, signature(S^2 x S^2) = {b}")


def test_criterion_04_equivariant_direct_values():
    sw = corpus_fixture("s2xs2_swap")
    rot = corpus_fixture("s2xs2_rotation")
    v_sw = g_signature_direct(sw.space, sw.action).value
    v_rot = g_signature_direct(rot.space, rot.action).value
    even = ["octahedron", "boundary_5simplex", "cp2_9vertex", "s2xs2_swap", "torus7_involution", "wedge_two_spheres"]
    mism = []
    for name in even:
        X = corpus_fixture(name).space
        e = validate_action(X, 1, {v: v for v in X.complex.vertices})
        if not _eq(g_signature_direct(X, e).value, Cyclotomic.rational(1, signature(X))):
            mism.append(name)
    ok = _eq(v_sw, Cyclotomic.rational(1, 2)) and v_rot.is_zero() and not mism
    record(4, ok, f"Sign(swap) = {v_sw}, Sign(rot) = {v_rot}; Sign(e) = signature on {len(even) - len(mism)}/{len(even)} even-dim fixtures")


def test_criterion_05_crosscheck():
    names = ["s2xs2_swap", "s2xs2_rotation", "octahedron_rotation"]
    parts, ok = [], True
    for name in names:
        rep = run_crosscheck(corpus_fixture(name))
        good = rep.passed and rep.residual.is_zero()
        ok &= good
        parts.append(f"{name}: direct {rep.direct} formula {rep.formula}")
    record(5, ok, "residual exactly 0; " + "; ".join(parts))


def test_criterion_06_two_forms_identity():
    rep = identity_check(IdentityCheckConfig(max_rank=3, max_degree=8, trials=34, seed=2024))
    datasets = rep["datasets"]
    record(6, rep["pass"] and datasets >= 100, f"{datasets} datasets x 5 angles, ranks <= 3, truncation 8: {len(rep['failures'])} nonzero residuals")


def test_criterion_07_l_genus():
    # x / tanh x in Chern roots of a rank-2 bundle: degree 4 is (c1^2 - 2 c2)/3 = p1/3
    pres = polynomial_presentation([2, 4], 4)
    idx = pres._monomials
    vec = [Fraction(0)] * pres.size
    vec[0] = vec[idx[(0,)]] = vec[idx[(1,)]] = Fraction(1)
    chern = GradedClass.from_vector(pres, 1, vec)
    x_over_tanh = PowerSeries1D.from_rationals(1, [1, 0, Fraction(1, 3), 0, Fraction(-1, 45)])
    deg4 = genus_expand(x_over_tanh, chern, 2).part(4)
    want = {idx[(0, 0)]: Fraction(1, 3), idx[(1,)]: Fraction(-2, 3)}
    ok_roots = all(c == Cyclotomic.rational(1, want.get(k, 0)) for k, c in enumerate(deg4.coeffs))
    cp2 = polynomial_presentation([2], 4)
    pont = GradedClass.from_vector(cp2, 1, [1, 0, 3])
    L = genus_expand(l_genus_series(2), pont, 2, root_degree=4)
    value = L.pair((0, 0, 1))
    record(7, ok_roots and value == Cyclotomic.rational(1, 1), f"degree-4 term = p1/3: {ok_roots}; <L(CP^2), [CP^2]> = {value}")


def test_criterion_08_character_conjugation():
    names = ["octahedron_rotation", "s2xs2_swap", "s2xs2_rotation", "torus7_involution", "torus7_marked_involution", "torus7_order3"]
    bad = []
    for name in names:
        fx = corpus_fixture(name)
        g = g_signature_direct(fx.space, fx.action).value
        gi = g_signature_direct(fx.space, fx.action, -1).value
        rep = run_crosscheck(fx)
        if not (_eq(gi, g.conj()) and rep.inverse_passed and _eq(rep.inverse_formula, rep.formula.conj())):
            bad.append(name)
    record(8, not bad, f"Sign(g^-1) = conj Sign(g) directly and via the formula on {len(names) - len(bad)}/{len(names)} fixtures")


def test_criterion_09_odd_oracle():
    fx = corpus_fixture("torus7_involution")
    exact = g_signature_direct(fx.space, fx.action).value
    with mpmath.workprec(256):
        approx = odd_signature_float_oracle(fx.space, fx.action, 1, 256, 0)
        re, im = embed_complex(exact, 256)
        err = abs(approx - mpmath.mpc(re, im))
        ok = err < mpmath.mpf(10) ** -30 and exact.is_zero() and abs(approx) < mpmath.mpf(10) ** -30
        shown = mpmath.nstr(err, 3)
    record(9, ok, f"exact {exact}, float |difference| = {shown} (< 1e-30), H_1 rank {ih_ranks(fx.space)[1]}")


def test_criterion_10_determinism():
    first = _corpus_json()
    second = dumps(run_corpus())
    record(10, first == second, f"two corpus runs byte-identical ({len(first)} bytes)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
