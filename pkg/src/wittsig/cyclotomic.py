"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) of
Q(zeta_N), with z = zeta_N reduced modulo the N-th cyclotomic polynomial.
The complex embedding is fixed once and for all as zeta_N -> exp(2 pi i / N).
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _RationalABC

import mpmath
from mpmath import iv

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "cyclotomic_mul",
    "embed_complex",
    "real_sign",
    "lcm",
]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("order must be positive")
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low -> high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of Phi_n."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of z^k, 0 <= k < n, in the power basis of Q(zeta_n)."""
    phi = euler_phi(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    cur = [Fraction(0)] * phi
    cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(phi):
                nxt[i] -= top * cyc[i]
        cur = nxt
    return tuple(rows)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Cyclotomic:
    """An element of Q(zeta_N) in the reduced power basis."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        phi = euler_phi(order)
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for order {order}, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_exponents(cls, order: int, terms) -> "Cyclotomic":
        """Build sum c_k * zeta^k from an iterable of (k, c_k); k is taken mod order."""
        table = _power_table(order)
        acc = [Fraction(0)] * euler_phi(order)
        for k, c in terms:
            c = _as_fraction(c)
            if not c:
                continue
            row = table[k % order]
            for i, r in enumerate(row):
                if r:
                    acc[i] += c * r
        return cls(order, acc)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "Cyclotomic":
        return cls.from_exponents(order, [(k, 1)])

    @classmethod
    def rational(cls, order: int, q) -> "Cyclotomic":
        c = [Fraction(0)] * euler_phi(order)
        c[0] = _as_fraction(q)
        return cls(order, c)

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls.rational(order, 0)

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls.rational(order, 1)

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self == self.conj()

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"order mismatch: {self.order} vs {other.order}; lift to a common order first"
                )
            return other
        return Cyclotomic.rational(self.order, _as_fraction(other))

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Cyclotomic):
            return cyclotomic_mul(self, other)
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(self.order, [a * q for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            return cyclotomic_mul(self, self._coerce(other).inverse())
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(self.order, [a / q for a in self.coeffs])

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^(-1)."""
        return Cyclotomic.from_exponents(
            self.order, [(-i, c) for i, c in enumerate(self.coeffs) if c]
        )

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.order
        phi = euler_phi(n)
        if phi == 1:
            return Cyclotomic.rational(n, 1 / self.coeffs[0])
        # columns of the multiplication-by-self matrix are self * z^j
        cols = [self * Cyclotomic.zeta(n, j) for j in range(phi)]
        mat = [[cols[j].coeffs[i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if mat[r][c])
            mat[c], mat[piv] = mat[piv], mat[c]
            inv = 1 / mat[c][c]
            mat[c] = [v * inv for v in mat[c]]
            for r in range(phi):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
        return Cyclotomic(n, [mat[i][phi] for i in range(phi)])

    def lift(self, order: int) -> "Cyclotomic":
        """Embed into Q(zeta_order); requires self.order | order."""
        if order % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {order}")
        step = order // self.order
        return Cyclotomic.from_exponents(
            order, [(i * step, c) for i, c in enumerate(self.coeffs) if c]
        )

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return self.coeffs == other.coeffs
            m = lcm(self.order, other.order)
            return self.lift(m).coeffs == other.lift(m).coeffs
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_rational() and self.coeffs[0] == q

    def __hash__(self):
        if self._hash is None:
            # equality lifts across orders, so only rationals get a discriminating hash
            h = hash(self.coeffs[0]) if self.is_rational() else hash("cyclotomic")
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                z = "z" if i == 1 else f"z^{i}"
                terms.append(z if c == 1 else f"{c}*{z}")
        body = " + ".join(terms) if terms else "0"
        return f"Cyclotomic[{self.order}]({body})"

    def to_json(self, precision: int = 64) -> dict:
        re, im = embed_complex(self, max(precision, 64))
        return {
            "order": self.order,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
            "float": [float(re), float(im)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        coeffs = []
        for c in data["coeffs"]:
            if isinstance(c, (list, tuple)):
                coeffs.append(Fraction(int(c[0]), int(c[1])))
            else:
                coeffs.append(Fraction(str(c)))
        return cls(int(data["order"]), coeffs)


def cyclotomic_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    """Exact product of two elements of the same cyclotomic field."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order
    prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                prod[i + j] += x * y
    return Cyclotomic.from_exponents(n, enumerate(prod))


def embed_complex(a: Cyclotomic, precision: int = 64) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Image of ``a`` under zeta_N -> exp(2 pi i/N), as (re, im) at ``precision`` bits."""
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    with mpmath.workprec(precision + 20):
        re = mpmath.mpf(0)
        im = mpmath.mpf(0)
        for k, c in enumerate(a.coeffs):
            if not c:
                continue
            cf = mpmath.mpf(c.numerator) / c.denominator
            ang = 2 * mpmath.pi * k / a.order
            re += cf * mpmath.cos(ang)
            im += cf * mpmath.sin(ang)
    with mpmath.workprec(precision):
        return +re, +im


_IV_LOCK = threading.Lock()


def real_sign(a: Cyclotomic, start_precision: int = 128) -> int:
    """Sign (-1, 0, 1) of a real element of Q(zeta_N).

    Zero is decided symbolically; otherwise the real part is enclosed with
    interval arithmetic, doubling the precision until the enclosure excludes 0.
    """
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.coeffs[0] > 0 else -1
    if not a.is_real():
        raise ValueError(f"sign requested for non-real element {a}")
    prec = start_precision
    with _IV_LOCK:
        saved = iv.prec
        try:
            while True:
                iv.prec = prec
                total = iv.mpf(0)
                two_pi = 2 * iv.pi
                for k, c in enumerate(a.coeffs):
                    if c:
                        total += (iv.mpf(c.numerator) / c.denominator) * iv.cos(two_pi * k / a.order)
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
                prec *= 2
                if prec > 1 << 20:
                    raise ArithmeticError("sign determination did not converge")
        finally:
            iv.prec = saved
