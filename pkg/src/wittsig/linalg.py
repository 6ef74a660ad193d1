"""Exact linear algebra over Q and Q(zeta_N).

Sparse vectors are plain ``dict`` objects mapping an index to a nonzero
exact scalar (``Fraction`` or ``Cyclotomic``).  Nothing here uses floating
point; the only non-rational step is the sign of a real cyclotomic number,
delegated to :func:`wittsig.cyclotomic.real_sign`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import heapq
from math import gcd

from .cyclotomic import Cyclotomic, real_sign

__all__ = [
    "ExactMatrix",
    "Echelon",
    "exact_rank",
    "kernel_basis",
    "hermitian_signature",
    "solve_square",
    "mat_mul",
    "mat_transpose",
    "identity",
]


@dataclass(frozen=True)
class ExactMatrix:
    """A rows x cols matrix with sparse exact entries keyed by (i, j)."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        ent = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if isinstance(v, int):
                    v = Fraction(v)
                if v != 0:
                    ent[(i, j)] = v
        return cls(len(rows), ncols, ent)

    @classmethod
    def from_columns(cls, nrows: int, columns) -> "ExactMatrix":
        ent = {}
        columns = list(columns)
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v != 0:
                    ent[(i, j)] = v
        return cls(nrows, len(columns), ent)

    def to_rows(self, zero=Fraction(0)) -> list[list]:
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def column_vectors(self) -> list[dict]:
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    def row_vectors(self) -> list[dict]:
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def is_cyclotomic(self) -> bool:
        return any(isinstance(v, Cyclotomic) for v in self.entries.values())


# ---------------------------------------------------------------------------
# sparse vector helpers


def _axpy(y: dict, a, x: dict) -> None:
    """y += a * x, in place, dropping zeros."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv == 0:
            y.pop(k, None)
        else:
            y[k] = nv


def _scaled(a, x: dict) -> dict:
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incrementally built echelon basis of a subspace, with optional tags.

    Each stored vector carries a *tag*: a sparse vector recording which
    linear combination of the inserted vectors it is.  Reducing a vector
    that lies in the span returns the matching combination of tags, which
    is how coordinates with respect to a chosen basis are recovered.
    """

    def __init__(self):
        self._rows: dict[int, tuple[dict, dict]] = {}

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: dict, tag: dict | None = None) -> tuple[dict, dict]:
        v = dict(vec)
        t = dict(tag) if tag else {}
        rows = self._rows
        while v:
            lead = min(v)
            row = rows.get(lead)
            if row is None:
                break
            pv, pt = row
            c = v[lead] / pv[lead]
            _axpy(v, -c, pv)
            if pt:
                _axpy(t, -c, pt)
        return v, t

    def add(self, vec: dict, tag: dict | None = None) -> bool:
        """Insert ``vec``; return True when it was independent of the basis."""
        v, t = self.reduce(vec, tag)
        if not v:
            return False
        self._rows[min(v)] = (v, t)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def coordinates(self, vec: dict) -> dict:
        """Tag combination expressing ``vec``; raises if vec is not in the span.

        Tags are accumulated with the sign convention vec = sum(tag_i * inserted_i).
        """
        v, t = self.reduce(vec)
        if v:
            raise ValueError("vector is not in the span")
        return {k: -c for k, c in t.items()}


def kernel_basis(columns: list[dict]) -> list[dict]:
    """Basis of {x : sum_j x_j * columns[j] = 0}, as sparse vectors over column indices."""
    ech = Echelon()
    out = []
    for j, col in enumerate(columns):
        v, t = ech.reduce(col, {j: Fraction(1) if not _is_cyc(col) else _one_like(col)})
        if not v:
            out.append(t)
        else:
            ech._rows[min(v)] = (v, t)
    return out


def _is_cyc(vec: dict) -> bool:
    return any(isinstance(x, Cyclotomic) for x in vec.values())


def _one_like(vec: dict):
    for x in vec.values():
        if isinstance(x, Cyclotomic):
            return Cyclotomic.one(x.order)
    return Fraction(1)


# ---------------------------------------------------------------------------
# rank


def _integer_rows(m: ExactMatrix) -> list[dict]:
    rows = []
    for r in m.row_vectors():
        if not r:
            continue
        den = 1
        for v in r.values():
            den = den * v.denominator // gcd(den, v.denominator)
        rows.append({k: int(v * den) for k, v in r.items()})
    return rows


def _fraction_free_rank(rows: list[dict]) -> int:
    """Rank of an integer matrix by sparse fraction-free elimination.

    Pivots are chosen Markowitz-style: the column with fewest live entries,
    and within it the shortest row, preferring unit entries.  On boundary
    matrices this keeps fill-in and coefficient growth small.
    """
    rows = [dict(r) for r in rows if r]
    cols: dict[int, set] = {}
    for i, r in enumerate(rows):
        for k in r:
            cols.setdefault(k, set()).add(i)
    cur = {k: len(s) for k, s in cols.items()}
    heap = [(n, k) for k, n in cur.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        s = cols.get(c)
        if s is None or cur[c] != cnt:
            continue
        if not s:
            del cols[c]
            continue
        p = min(s, key=lambda i: (abs(rows[i][c]) != 1, len(rows[i]), i))
        prow = rows[p]
        a = prow[c]
        for k in prow:
            cols[k].discard(p)
        del cols[c]
        rank += 1
        for i in list(s):
            r = rows[i]
            b = r[c]
            if a in (1, -1):
                f = b * a
                for k, v in prow.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        if k not in r:
                            cols[k].add(i)
                        r[k] = nv
                    else:
                        r.pop(k, None)
                        if k != c:
                            cols[k].discard(i)
            else:
                g = gcd(a, b)
                aa, bb = a // g, b // g
                new = {k: aa * v for k, v in r.items()}
                for k, v in prow.items():
                    nv = new.get(k, 0) - bb * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                cont = 0
                for v in new.values():
                    cont = gcd(cont, v)
                if cont > 1:
                    new = {k: v // cont for k, v in new.items()}
                for k in r:
                    if k not in new and k != c:
                        cols[k].discard(i)
                for k in new:
                    if k not in r:
                        cols[k].add(i)
                rows[i] = new
        for k in prow:
            if k != c and k in cols and len(cols[k]) != cur[k]:
                cur[k] = len(cols[k])
                heapq.heappush(heap, (cur[k], k))
    return rank


def exact_rank(m: ExactMatrix) -> int:
    """Rank over the fraction field of the entries (Q or Q(zeta_N))."""
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    if not m.is_cyclotomic():
        return _fraction_free_rank(_integer_rows(m))
    order = next(v.order for v in m.entries.values() if isinstance(v, Cyclotomic))
    ech = Echelon()
    rank = 0
    for r in m.row_vectors():
        r = {k: (v if isinstance(v, Cyclotomic) else Cyclotomic.rational(order, v)) for k, v in r.items()}
        if ech.add(r):
            rank += 1
    return rank


# ---------------------------------------------------------------------------
# dense helpers (small matrices: forms, group actions)


def identity(n: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_transpose(a: list[list]) -> list[list]:
    return [list(r) for r in zip(*a)] if a else []


def mat_mul(a: list[list], b: list[list], zero=Fraction(0)) -> list[list]:
    if not a or not b:
        return [[] for _ in a]
    bt = mat_transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = zero
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def solve_square(a: list[list], b: list[list]) -> list[list]:
    """Solve a X = b exactly for square invertible ``a``."""
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# inertia


def _conj(x):
    return x.conj() if isinstance(x, Cyclotomic) else x


def _sign(x) -> int:
    if isinstance(x, Cyclotomic):
        return real_sign(x)
    return (x > 0) - (x < 0)


def hermitian_signature(h) -> tuple[int, int, int]:
    """Inertia (positive, negative, zero) of a Hermitian matrix over Q or Q(zeta_N).

    Congruence diagonalisation (LDL* with symmetric pivoting); no eigenvalues.
    Accepts an :class:`ExactMatrix` or a dense list of rows.
    """
    if isinstance(h, ExactMatrix):
        if h.rows != h.cols:
            raise ValueError("Hermitian matrix must be square")
        zero = Fraction(0)
        if h.is_cyclotomic():
            order = next(v.order for v in h.entries.values() if isinstance(v, Cyclotomic))
            zero = Cyclotomic.zero(order)
        a = h.to_rows(zero)
    else:
        a = [list(r) for r in h]
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("Hermitian matrix must be square")
        for j in range(i, n):
            if a[j][i] != _conj(a[i][j]):
                raise ValueError(f"matrix is not Hermitian at ({i}, {j})")

    pos = neg = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in live for j in live if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # x = e_i + t e_j with t = conj(a_ij) gives x* A x = 2 |a_ij|^2 > 0
            t = _conj(a[i][j])
            for r in range(n):
                a[r][i] = a[r][i] + a[r][j] * t
            tc = _conj(t)
            for c in range(n):
                a[i][c] = a[i][c] + a[j][c] * tc
            piv = i
        d = a[piv][piv]
        s = _sign(d)
        if s > 0:
            pos += 1
        else:
            neg += 1
        live.remove(piv)
        col = [a[r][piv] for r in range(n)]
        row = a[piv]
        dinv = 1 / d
        for r in live:
            if col[r] == 0:
                continue
            f = col[r] * dinv
            for c in live:
                if row[c] != 0:
                    a[r][c] = a[r][c] - f * row[c]
    return pos, neg, n - pos - neg
