"""Characteristic classes of fixed components and the fixed-point formula.

Cohomology of a fixed component F is given by a presentation: a graded
basis (unit first) and structure constants.  Classes are coefficient
vectors over that basis with entries in Q(zeta_N).  Multiplicative classes
are expanded from a one-variable power series f through power sums of the
Chern roots.

Orientation convention
----------------------
A normal eigenbundle E_F(e^{i theta}) carries the complex structure in
which g acts by e^{i theta}, 0 < theta <= pi.  The fixed component and the
normal data are oriented so that

    o(F) + o_C(E_F) = (-1)^{codim_C F} o(X).

With this choice the formula reproduces the direct signature: the
diagonal of S^2 x S^2 under the factor swap has c_1(E(-1)) = -2, and a
fixed point of a surface rotating by theta is recorded with the
conjugate character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from .cyclotomic import Cyclotomic, lcm

__all__ = [
    "FixedDataError",
    "CohomologyPresentation",
    "GradedClass",
    "PowerSeries1D",
    "polynomial_presentation",
    "genus_expand",
    "c_class",
    "m_theta_class",
    "two_forms_identity_check",
    "l_genus_series",
    "renormalized_l_class",
    "l_class_from_pontryagin",
    "NormalRecord",
    "FixedComponentData",
    "component_from_json",
    "evaluate_component",
    "evaluate_formula",
]


class FixedDataError(ValueError):
    """Fixed-point data violating a structural invariant."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise FixedDataError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# graded algebra


@dataclass(frozen=True)
class CohomologyPresentation:
    """Graded basis of H^even(F; Q), unit first, with structure constants."""

    dim: int
    degrees: tuple
    products: dict = field(default_factory=dict)  # (i, j), i <= j -> tuple of Fractions

    def __post_init__(self):
        d = self.degrees
        if not d or d[0] != 0:
            raise FixedDataError("basis must start with the unit in degree 0")
        if d.count(0) != 1:
            raise FixedDataError("fixed components must be connected (one degree-0 basis element)")
        for k in d:
            if k % 2 or k < 0 or k > self.dim:
                raise FixedDataError(f"basis degree {k} must be even and at most dim F = {self.dim}")
        n = len(d)
        for (i, j), v in self.products.items():
            if not (0 <= i < n and 0 <= j < n) or len(v) != n:
                raise FixedDataError(f"bad product entry for ({i}, {j})")
            for k, c in enumerate(v):
                if c and d[k] != d[i] + d[j]:
                    raise FixedDataError(f"product e{i}*e{j} has a term of the wrong degree")
            if i == 0 and any(c != (1 if k == j else 0) for k, c in enumerate(v)):
                raise FixedDataError("degree-0 basis element must act as the unit")

    @property
    def size(self) -> int:
        return len(self.degrees)

    def product(self, i: int, j: int) -> dict:
        """e_i * e_j as a sparse coefficient dict."""
        if i == 0:
            return {j: Fraction(1)}
        if j == 0:
            return {i: Fraction(1)}
        key = (i, j) if i <= j else (j, i)
        v = self.products.get(key)
        if v is None:
            return {}
        return {k: c for k, c in enumerate(v) if c}

    def indices_of_degree(self, deg: int) -> list[int]:
        return [k for k, d in enumerate(self.degrees) if d == deg]

    @classmethod
    def from_json(cls, dim: int, basis: list, products: list) -> "CohomologyPresentation":
        degrees = tuple(int(b["degree"]) for b in basis)
        prods = {}
        for entry in products or []:
            i, j, coeffs = entry
            i, j = int(i), int(j)
            key = (i, j) if i <= j else (j, i)
            prods[key] = tuple(_frac(c) for c in coeffs)
        return cls(int(dim), degrees, prods)


def polynomial_presentation(generator_degrees, max_degree: int) -> CohomologyPresentation:
    """Q[u_1, ..., u_r] truncated above ``max_degree`` (all monomials are a basis)."""
    gens = list(generator_degrees)
    monos = [()]
    for total in range(1, max_degree // min(gens) + 1 if gens else 1):
        for combo in combinations_with_replacement(range(len(gens)), total):
            if sum(gens[g] for g in combo) <= max_degree:
                monos.append(combo)
    monos.sort(key=lambda m: (sum(gens[g] for g in m), m))
    index = {m: k for k, m in enumerate(monos)}
    degrees = tuple(sum(gens[g] for g in m) for m in monos)
    prods = {}
    n = len(monos)
    for i in range(1, n):
        for j in range(i, n):
            m = tuple(sorted(monos[i] + monos[j]))
            if m in index:
                v = [Fraction(0)] * n
                v[index[m]] = Fraction(1)
                prods[(i, j)] = tuple(v)
    pres = CohomologyPresentation(max_degree, degrees, prods)
    object.__setattr__(pres, "_monomials", index)
    return pres


@dataclass(frozen=True)
class GradedClass:
    """Element of H^even(F; Q(zeta_order)) as coefficients over the presentation basis."""

    pres: CohomologyPresentation
    order: int
    coeffs: tuple

    @classmethod
    def zero(cls, pres, order):
        return cls(pres, order, tuple(Cyclotomic.zero(order) for _ in pres.degrees))

    @classmethod
    def one(cls, pres, order):
        return cls.scalar(pres, order, 1)

    @classmethod
    def scalar(cls, pres, order, c):
        z = Cyclotomic.zero(order)
        c = c if isinstance(c, Cyclotomic) else Cyclotomic.rational(order, c)
        return cls(pres, order, (c,) + tuple(z for _ in pres.degrees[1:]))

    @classmethod
    def from_vector(cls, pres, order, vec):
        if len(vec) != pres.size:
            raise FixedDataError("coefficient vector length differs from the basis size")
        return cls(pres, order, tuple(v.lift(order) if isinstance(v, Cyclotomic) else Cyclotomic.rational(order, _frac(v)) for v in vec))

    def lift(self, order: int) -> "GradedClass":
        if order == self.order:
            return self
        return GradedClass(self.pres, order, tuple(c.lift(order) for c in self.coeffs))

    def _common(self, other):
        if other.pres is not self.pres and other.pres != self.pres:
            raise FixedDataError("classes live in different presentations")
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        return GradedClass(a.pres, a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other):
        a, b = self._common(other)
        return GradedClass(a.pres, a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def scale(self, c) -> "GradedClass":
        if isinstance(c, Cyclotomic):
            m = lcm(self.order, c.order)
            a, c = self.lift(m), c.lift(m)
        else:
            a = self
        return GradedClass(a.pres, a.order, tuple(x * c for x in a.coeffs))

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            return self.scale(other)
        a, b = self._common(other)
        out = [Cyclotomic.zero(a.order) for _ in a.coeffs]
        for i, x in enumerate(a.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(b.coeffs):
                if y.is_zero() or a.pres.degrees[i] + a.pres.degrees[j] > a.pres.dim:
                    continue
                xy = x * y
                for k, c in a.pres.product(i, j).items():
                    out[k] = out[k] + xy * c
        return GradedClass(a.pres, a.order, tuple(out))

    def part(self, degree: int) -> "GradedClass":
        z = Cyclotomic.zero(self.order)
        return GradedClass(self.pres, self.order, tuple(c if d == degree else z for c, d in zip(self.coeffs, self.pres.degrees)))

    @property
    def constant(self) -> Cyclotomic:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def conj(self) -> "GradedClass":
        return GradedClass(self.pres, self.order, tuple(c.conj() for c in self.coeffs))

    def pair(self, functional) -> Cyclotomic:
        """Evaluate against a functional given by its values on the basis."""
        s = Cyclotomic.zero(self.order)
        for c, f in zip(self.coeffs, functional):
            if f:
                s = s + c * f
        return s

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


# ---------------------------------------------------------------------------
# one-variable power series


@dataclass(frozen=True)
class PowerSeries1D:
    """Truncated series sum c_k x^k, k = 0 .. len(coeffs) - 1, over Q(zeta_order)."""

    order: int
    coeffs: tuple

    @property
    def length(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_rationals(cls, order, values):
        return cls(order, tuple(Cyclotomic.rational(order, _frac(v)) for v in values))

    @classmethod
    def scaled_exp(cls, order: int, lam: Cyclotomic, n: int) -> "PowerSeries1D":
        """lam * e^x."""
        return cls(order, tuple(lam * Fraction(1, factorial(k)) for k in range(n)))

    def __add__(self, other):
        return PowerSeries1D(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if not isinstance(other, PowerSeries1D):
            return PowerSeries1D(self.order, tuple(a * other for a in self.coeffs))
        n = min(self.length, other.length)
        out = [Cyclotomic.zero(self.order) for _ in range(n)]
        for i, a in enumerate(self.coeffs[:n]):
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return PowerSeries1D(self.order, tuple(out))

    def inverse(self) -> "PowerSeries1D":
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        out = [inv0]
        for k in range(1, self.length):
            s = Cyclotomic.zero(self.order)
            for j in range(1, k + 1):
                s = s + self.coeffs[j] * out[k - j]
            out.append(-s * inv0)
        return PowerSeries1D(self.order, tuple(out))

    def __truediv__(self, other):
        return self * other.inverse()

    def log_normalized(self) -> list:
        """Coefficients a_1, a_2, ... of log(f / f(0))."""
        g = self * self.coeffs[0].inverse()
        n = self.length
        # log g = integral of g'/g
        dg = PowerSeries1D(self.order, tuple(g.coeffs[k] * k for k in range(1, n)) + (Cyclotomic.zero(self.order),))
        q = dg / g
        return [q.coeffs[k - 1] * Fraction(1, k) for k in range(1, n)]


def _one_plus_scaled_exp(order, lam, n, sign=1):
    """1 + sign * lam * e^x."""
    e = PowerSeries1D.scaled_exp(order, lam, n)
    one = Cyclotomic.one(order)
    c = [x * sign for x in e.coeffs]
    c[0] = c[0] + one
    return PowerSeries1D(order, tuple(c))


def l_genus_series(n: int) -> PowerSeries1D:
    """sqrt(y) / tanh(sqrt(y)) = 1 + y/3 - y^2/45 + ...  in the Pontryagin-root variable y."""
    # x/tanh x = sum 2^{2k} B_{2k} x^{2k} / (2k)!
    bern = _bernoulli(2 * n)
    vals = [Fraction(2 ** (2 * k)) * bern[2 * k] / factorial(2 * k) for k in range(n)]
    return PowerSeries1D.from_rationals(1, vals)


def _bernoulli(n: int) -> list[Fraction]:
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        s = sum(Fraction(factorial(m + 1), factorial(k) * factorial(m + 1 - k)) * b[k] for k in range(m))
        b[m] = -s / (m + 1)
    return b


# ---------------------------------------------------------------------------
# multiplicative classes


def genus_expand(f: PowerSeries1D, chern: GradedClass, rank: int, root_degree: int = 2) -> GradedClass:
    """prod_l f(x_l) over the roots of a class with elementary symmetric parts c_k.

    ``root_degree`` is the cohomological degree of a root: 2 for Chern
    roots, 4 for Pontryagin roots (f then a series in y = x^2).
    """
    pres = chern.pres
    order = lcm(f.order, chern.order)
    f = PowerSeries1D(order, tuple(c.lift(order) for c in f.coeffs))
    chern = chern.lift(order)
    K = pres.dim // root_degree
    if f.length < K + 1:
        raise ValueError(f"series truncated at {f.length - 1}, need {K}")
    f0 = f.coeffs[0]
    if f0.is_zero():
        raise ValueError("genus series must have nonzero constant term")
    if chern.constant != 1:
        raise FixedDataError("total characteristic class must have constant term 1")
    for k in range(rank + 1, pres.dim // root_degree + 1):
        if not chern.part(root_degree * k).is_zero():
            raise FixedDataError(f"class has a component in degree {root_degree * k} beyond rank {rank}")
    f = PowerSeries1D(order, f.coeffs[: K + 1])
    a = f.log_normalized()
    e = [None] + [chern.part(root_degree * k) for k in range(1, K + 1)]
    zero = GradedClass.zero(pres, order)
    p = [None]
    for k in range(1, K + 1):
        acc = zero
        for i in range(1, k):
            term = e[i] * p[k - i]
            acc = acc + term if i % 2 == 1 else acc - term
        last = e[k].scale(Fraction(k))
        acc = acc + last if k % 2 == 1 else acc - last
        p.append(acc)
    y = zero
    for k in range(1, K + 1):
        if not a[k - 1].is_zero():
            y = y + p[k].scale(a[k - 1])
    result = GradedClass.one(pres, order)
    power = GradedClass.one(pres, order)
    for j in range(1, K + 1):
        power = power * y
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, factorial(j)))
    return result.scale(f0 ** rank)


def _angle(a: int, N: int, conjugate: bool):
    if N <= 0 or not (0 < 2 * a <= N):
        raise FixedDataError(f"angle {a}/{N} of a full turn is outside (0, 1/2]")
    return Cyclotomic.zeta(N, -a if conjugate else a)


def c_class(a: int, N: int, chern: GradedClass, rank: int, conjugate: bool = False) -> GradedClass:
    """C(E(e^{i theta})) = prod (1 + lam e^{x}) / (1 - lam e^{x}), theta = 2 pi a / N, lam = e^{i theta}."""
    lam = _angle(a, N, conjugate)
    order = lcm(N, chern.order)
    lam = lam.lift(order)
    n = chern.pres.dim // 2 + 1
    if 2 * a == N:
        # (1 - e^x)/(1 + e^x) = x * g(x): top Chern class times the genus of g
        g_num = PowerSeries1D.from_rationals(order, [Fraction(-1, factorial(k + 1)) for k in range(n)])
        g = g_num / _one_plus_scaled_exp(order, Cyclotomic.one(order), n)
        top = chern.lift(order).part(2 * rank)
        if rank == 0:
            return GradedClass.one(chern.pres, order)
        return top * genus_expand(g, chern, rank)
    f = _one_plus_scaled_exp(order, lam, n) / _one_plus_scaled_exp(order, lam, n, -1)
    return genus_expand(f, chern, rank)


def m_theta_class(a: int, N: int, chern: GradedClass, rank: int, conjugate: bool = False) -> GradedClass:
    """M^theta(E) = prod tanh(i theta/2) / tanh((x + i theta)/2), for 0 < theta < pi."""
    if 2 * a == N:
        raise FixedDataError("the M-class is undefined at theta = pi")
    lam = _angle(a, N, conjugate)
    order = lcm(N, chern.order)
    lam = lam.lift(order)
    one = Cyclotomic.one(order)
    t = (lam - one) / (lam + one)  # tanh(i theta / 2)
    n = chern.pres.dim // 2 + 1
    # tanh((x + i theta)/2) = (lam e^x - 1)/(lam e^x + 1)
    f = (_one_plus_scaled_exp(order, lam, n) / _one_plus_scaled_exp(order, lam, n, -1)) * (-t)
    return genus_expand(f, chern, rank)


def two_forms_identity_check(a: int, N: int, chern: GradedClass, rank: int, conjugate: bool = False) -> GradedClass:
    """C(E) - (-1)^s (i tan(theta/2))^{-s} M^theta(E); identically zero."""
    order = lcm(N, 4, chern.order)
    lam = _angle(a, N, conjugate).lift(order)
    one = Cyclotomic.one(order)
    i = Cyclotomic.zeta(order, order // 4)
    tan_half = i * (one - lam) / (one + lam)
    factor = ((i * tan_half).inverse()) ** rank
    if rank % 2:
        factor = -factor
    c = c_class(a, N, chern, rank, conjugate).lift(order)
    m = m_theta_class(a, N, chern, rank, conjugate).lift(order)
    return c - m.scale(factor)


def renormalized_l_class(pres: CohomologyPresentation, l_values) -> tuple:
    """Multiply the value on each degree-2j basis element by 2^j."""
    if len(l_values) != pres.size:
        raise FixedDataError("l_class length differs from the basis size")
    return tuple(_frac(v) * 2 ** (d // 2) for v, d in zip(l_values, pres.degrees))


def l_class_from_pontryagin(pres: CohomologyPresentation, pontryagin: GradedClass, fundamental) -> tuple:
    """Homology L-class of a smooth F as a functional: e_i -> <e_i L(TF), [F]>."""
    L = genus_expand(l_genus_series(pres.dim // 4 + 1), pontryagin, max(pres.dim // 2, 1), root_degree=4)
    out = []
    for k in range(pres.size):
        e = GradedClass.from_vector(pres, 1, [1 if j == k else 0 for j in range(pres.size)])
        v = (e * L).pair(tuple(_frac(x) for x in fundamental))
        if not v.is_rational():
            raise FixedDataError("L-class must be rational")
        out.append(v.rational_value())
    return tuple(out)


# ---------------------------------------------------------------------------
# fixed-point data


@dataclass
class NormalRecord:
    angle_num: int
    angle_den: int
    rank: int
    chern: GradedClass
    conjugate: bool = False

    @property
    def is_minus_one(self) -> bool:
        return 2 * self.angle_num == self.angle_den


@dataclass
class FixedComponentData:
    name: str
    dim: int
    presentation: CohomologyPresentation
    l_class: tuple  # un-renormalized values on the basis
    normal: list

    @property
    def codim(self) -> int:
        return sum(2 * r.rank for r in self.normal)


def _class_from_degree_list(pres, entries, what: str) -> GradedClass:
    vec = [Fraction(0)] * pres.size
    vec[0] = Fraction(1)
    for entry in entries or []:
        deg, coeffs = entry
        deg = int(deg)
        if len(coeffs) != pres.size:
            raise FixedDataError(f"{what}: degree-{deg} coefficients have the wrong length")
        for k, c in enumerate(coeffs):
            c = _frac(c)
            if c and pres.degrees[k] != deg:
                raise FixedDataError(f"{what}: degree-{deg} entry has a term on a basis element of degree {pres.degrees[k]}")
            if deg == 0:
                if c != (1 if k == 0 else 0):
                    raise FixedDataError(f"{what}: constant term must be 1")
            elif c:
                vec[k] += c
    return GradedClass.from_vector(pres, 1, vec)


def component_from_json(d: dict, ambient_dim: int) -> FixedComponentData:
    problems = []
    name = str(d.get("name", ""))
    dim = int(d["dim"])
    if dim % 2:
        problems.append(f"component {name!r}: fixed components must be even dimensional, got {dim}")
        raise FixedDataError(problems)
    pres = CohomologyPresentation.from_json(dim, d["basis"], d.get("products", []))
    normal = []
    seen_pi = False
    for rec in d.get("normal", []):
        a, N, s = int(rec["angle_num"]), int(rec["angle_den"]), int(rec["rank"])
        if N <= 0 or not (0 < 2 * a <= N):
            problems.append(f"component {name!r}: angle {a}/{N} outside (0, 1/2]")
            continue
        if s <= 0:
            problems.append(f"component {name!r}: normal rank must be positive")
            continue
        if 2 * a == N:
            if seen_pi:
                problems.append(f"component {name!r}: more than one theta = pi record")
            seen_pi = True
        chern = _class_from_degree_list(pres, rec.get("chern"), f"component {name!r} chern")
        for k in range(s + 1, dim // 2 + 1):
            if not chern.part(2 * k).is_zero():
                problems.append(f"component {name!r}: chern class beyond rank {s}")
        normal.append(NormalRecord(a, N, s, chern, bool(rec.get("conjugate", False))))
    codim = sum(2 * r.rank for r in normal)
    if codim + dim != ambient_dim:
        problems.append(f"component {name!r}: dim {dim} + normal rank {codim} != ambient dimension {ambient_dim}")
    if "l_class" in d:
        l_vals = tuple(_frac(v) for v in d["l_class"])
        if len(l_vals) != pres.size:
            problems.append(f"component {name!r}: l_class length differs from the basis size")
    elif "pontryagin" in d and "fundamental" in d:
        pont = _class_from_degree_list(pres, d["pontryagin"], f"component {name!r} pontryagin")
        l_vals = l_class_from_pontryagin(pres, pont, d["fundamental"])
    else:
        problems.append(f"component {name!r}: needs l_class, or pontryagin and fundamental")
        l_vals = ()
    if problems:
        raise FixedDataError(problems)
    return FixedComponentData(name, dim, pres, l_vals, normal)


def evaluate_component(comp: FixedComponentData, order: int) -> Cyclotomic:
    cls = GradedClass.one(comp.presentation, order)
    for rec in comp.normal:
        cls = cls * c_class(rec.angle_num, rec.angle_den, rec.chern, rec.rank, rec.conjugate)
    L = renormalized_l_class(comp.presentation, comp.l_class)
    val = cls.pair(L)
    return val.lift(lcm(order, val.order))


def evaluate_formula(components, order: int) -> Cyclotomic:
    """Sum over fixed components of < prod_j C(E_F(e^{i theta_j})) ; renormalized L_*(F) >."""
    total = Cyclotomic.zero(order)
    for comp in components:
        v = evaluate_component(comp, order)
        m = lcm(total.order, v.order)
        total = total.lift(m) + v.lift(m)
    return total
