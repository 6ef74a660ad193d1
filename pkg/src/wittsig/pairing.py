"""Middle-degree intersection form, signature and the equivariant signature.

The form is computed by a Poincare-duality construction.  A basis of
H^m(K) is capped with the fundamental cycle of the working complex (front
face Alexander-Whitney cap), which produces dual-block cycles
D(phi) = sum_tau phi(tau) D(tau).  These are transverse to every simplicial
m-cycle, and the intersection number of an allowable cycle z with D(phi)
is the Kronecker pairing <phi, z>.  Writing the D(phi_k) in the IH basis
then determines B in that basis.  The normalization is

    B(D psi, D phi) = <psi cup phi, [X]>,

so the cup-product Gram matrix on a manifold is an exact oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .cyclotomic import Cyclotomic, lcm
from .ih import cohomology_basis, compute_ih, witt_check
from .linalg import Echelon, hermitian_signature, identity, mat_mul, mat_transpose, solve_square
from .simplicial import CyclicAction, SimplicialPseudomanifold, sort_sign

__all__ = [
    "PairingError",
    "IntersectionForm",
    "EquivariantSignatureReport",
    "intersection_form",
    "cup_product_form",
    "signature",
    "action_matrix",
    "g_signature_direct",
    "odd_signature_float_oracle",
]


class PairingError(RuntimeError):
    """The intersection form could not be built consistently."""


@dataclass
class IntersectionForm:
    degree: int
    matrix: list  # dense rows of Fractions, in the IH representative basis
    representatives: list = field(repr=False, default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def parity(self) -> int:
        return self.degree % 2

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rank": self.rank,
            "matrix": [[str(v) for v in row] for row in self.matrix],
        }


def _transfer(W: SimplicialPseudomanifold, X: SimplicialPseudomanifold, sub):
    """Cochain map C^*(K) -> C^*(W): identity, or pullback along the vertex approximation."""
    if sub is None:
        return lambda phi, tau: phi.get(tau, 0)

    def pull(phi, tau):
        img = tuple(sub.approx_vertex(v) for v in tau)
        if len(set(img)) < len(img):
            return 0
        s, sg = sort_sign(img)
        c = phi.get(s, 0)
        return sg * c if c else 0

    return pull


def _cap(W: SimplicialPseudomanifold, pull, phi: dict, m: int) -> dict:
    out: dict = {}
    for sigma, o in W.orientation.items():
        c = pull(phi, sigma[: m + 1])
        if c:
            back = sigma[m:]
            v = out.get(back, 0) + o * c
            if v:
                out[back] = v
            else:
                out.pop(back, None)
    return out


def _kronecker(pull, phi: dict, chain: dict):
    s = Fraction(0)
    for tau, c in chain.items():
        v = pull(phi, tau)
        if v:
            s += v * c
    return s


def intersection_form(X: SimplicialPseudomanifold, check_witt: bool = True) -> IntersectionForm:
    """Exact intersection form on IH_m (lower middle perversity), n = 2m."""
    if X.dim % 2:
        raise PairingError(f"intersection form needs even dimension, got {X.dim}")
    cache = X.__dict__.setdefault("_cache", {})
    if "form" in cache:
        return cache["form"]
    if check_witt and not witt_check(X).is_witt:
        raise PairingError("not a Witt space: middle IH of an odd-codimension link is nonzero")
    m = X.dim // 2
    grp = compute_ih(X, "lower", m)
    r = grp.rank
    if r == 0:
        form = IntersectionForm(m, [], [])
        cache["form"] = form
        return form
    W = grp.working.space
    pull = _transfer(W, X, grp.working.subdivision)
    coh = cohomology_basis(X, m)
    P, E = [], []
    for phi in coh.representatives:
        try:
            P.append(grp.coordinates(_cap(W, pull, phi, m)))
        except ValueError as exc:
            raise PairingError("dual-block cycle is not an allowable cycle") from exc
        E.append([_kronecker(pull, phi, z) for z in grp.representatives])
    # E[k][i] = B(z_i, D phi_k) = sum_j P[k][j] B(z_i, z_j)
    ech, chosen = Echelon(), []
    for k, row in enumerate(P):
        if ech.add({j: v for j, v in enumerate(row) if v}):
            chosen.append(k)
    if len(chosen) < r:
        raise PairingError(
            f"H^{m} -> IH_{m} has rank {len(chosen)} < {r}; dual-block cycles do not span IH"
        )
    Ps = [P[k] for k in chosen]  # r x r, rows = coordinates of D phi_k
    Es = [E[k] for k in chosen]  # r x r, Es[k][i] = (B Ps^T)[i][k]
    # B Ps^T = Es^T  <=>  Ps B^T = Es
    Bt = solve_square(Ps, Es)
    B = mat_transpose(Bt)
    sgn = 1 if m % 2 == 0 else -1
    for i in range(r):
        for j in range(r):
            if B[i][j] != sgn * B[j][i]:
                raise PairingError("intersection form fails (skew-)symmetry")
    if any(v == 0 for v in [_det(B)]):
        raise PairingError("intersection form is degenerate")
    form = IntersectionForm(m, B, grp.representatives)
    cache["form"] = form
    return form


def _det(a: list) -> Fraction:
    n = len(a)
    a = [list(r) for r in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def cup_product_form(X: SimplicialPseudomanifold) -> list:
    """Gram matrix <phi_a cup phi_b, [X]> on a basis of H^m(K), computed on K itself."""
    if X.dim % 2:
        raise PairingError("cup form needs even dimension")
    m = X.dim // 2
    coh = cohomology_basis(X, m)
    out = []
    for a in coh.representatives:
        row = []
        for b in coh.representatives:
            s = Fraction(0)
            for sigma, o in X.orientation.items():
                x = a.get(sigma[: m + 1])
                if x:
                    y = b.get(sigma[m:])
                    if y:
                        s += o * x * y
            row.append(s)
        out.append(row)
    return out


def signature(X: SimplicialPseudomanifold) -> int:
    """Signature of the middle form; 0 when the middle degree is odd."""
    form = intersection_form(X)
    if form.parity:
        return 0
    p, q, _ = hermitian_signature(form.matrix) if form.rank else (0, 0, 0)
    return p - q


# ---------------------------------------------------------------------------
# group action on IH_m


def action_matrix(X: SimplicialPseudomanifold, act: CyclicAction) -> list:
    """Matrix of g_* on IH_m in the representative basis (columns are images)."""
    form = intersection_form(X)
    m = form.degree
    grp = compute_ih(X, "lower", m)
    sub = grp.working.subdivision
    g = act.on_subdivision(sub) if sub is not None else act
    cols = []
    for z in grp.representatives:
        try:
            cols.append(grp.coordinates(g.apply_chain(z)))
        except ValueError as exc:
            raise PairingError("pushed-forward cycle is not an allowable cycle") from exc
    G = mat_transpose(cols) if cols else []
    r = form.rank
    B = form.matrix
    if r and mat_mul(mat_transpose(G), mat_mul(B, G)) != B:
        raise PairingError("intersection form is not invariant under the action")
    return G


@dataclass
class EquivariantSignatureReport:
    order: int
    power: int
    value: Cyclotomic
    inertia: dict  # exponent a (eigenvalue zeta_N^a) -> (p, q, z)
    signature: int
    parity: int
    rank: int

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "power": self.power,
            "sign_g": self.value.to_json(),
            "inertia": {str(a): list(v) for a, v in sorted(self.inertia.items())},
            "signature": self.signature,
            "parity": "odd" if self.parity else "even",
            "rank": self.rank,
        }


def _mat_pow_list(G: list, N: int) -> list:
    r = len(G)
    out = [identity(r)]
    for _ in range(N - 1):
        out.append(mat_mul(G, out[-1]))
    return out


def g_signature_direct(X: SimplicialPseudomanifold, act: CyclicAction, power: int = 1) -> EquivariantSignatureReport:
    """Sign(g^power, X) from eigenspace inertia of the intersection form."""
    form = intersection_form(X)
    N = act.order
    power %= N
    m, r = form.degree, form.rank
    F = N if m % 2 == 0 else lcm(N, 4)
    step = F // N
    if r == 0:
        return EquivariantSignatureReport(N, power, Cyclotomic.zero(F), {}, 0, m % 2, 0)
    G1 = action_matrix(X, act)
    G = _mat_pow_list(G1, power + 1)[power] if power else identity(r)
    Gk = _mat_pow_list(G, N)
    if mat_mul(G, Gk[-1]) != identity(r):
        raise PairingError("g_* does not have the stated order on IH")
    zero = Cyclotomic.zero(F)
    Bc = [[Cyclotomic.rational(F, v) for v in row] for row in form.matrix]
    minus_i = Cyclotomic.from_exponents(F, [(3 * F // 4, 1)]) if m % 2 else None
    value = zero
    inertia = {}
    total = 0
    for a in range(N):
        # projector onto the zeta^a eigenspace: (1/N) sum_k zeta^{-ak} G^k
        proj = [[zero] * r for _ in range(r)]
        for k in range(N):
            w = Cyclotomic.from_exponents(F, [(-a * k * step, Fraction(1, N))])
            for i in range(r):
                for j in range(r):
                    if Gk[k][i][j]:
                        proj[i][j] = proj[i][j] + w * Gk[k][i][j]
        ech, basis = Echelon(), []
        for j in range(r):
            col = {i: proj[i][j] for i in range(r) if not proj[i][j].is_zero()}
            if col and ech.add(col):
                basis.append([proj[i][j] for i in range(r)])
        if not basis:
            continue
        BV = mat_mul(Bc, mat_transpose(basis), zero)  # r x d
        h = [[sum((x.conj() * BV[k][j] for k, x in enumerate(v) if not x.is_zero()), zero) for j in range(len(basis))] for v in basis]
        if minus_i is not None:
            h = [[minus_i * x for x in row] for row in h]
        p, q, z = hermitian_signature(h)
        if z:
            raise PairingError(f"form degenerate on eigenspace {a}")
        inertia[a] = (p, q, z)
        total += p + q
        value = value + Cyclotomic.from_exponents(F, [(a * step, p - q)])
    if total != r:
        raise PairingError("eigenspaces do not exhaust IH")
    sig = sum(p - q for p, q, _ in inertia.values()) if m % 2 == 0 else 0
    return EquivariantSignatureReport(N, power, value, inertia, sig, m % 2, r)


# ---------------------------------------------------------------------------
# floating point oracle for odd middle degree


def odd_signature_float_oracle(X: SimplicialPseudomanifold, act: CyclicAction, power: int = 1, precision: int = 256, seed: int = 0):
    """Sign(g) for odd m through the complex structure J = A (A A*)^(-1/2), in floating point.

    Averages a random inner product over the group, writes B(x, y) = <x, A y>,
    passes to orthonormal coordinates, and returns -i tr(J g), which equals
    tr(g | +i eigenspace of J) - tr(g | -i eigenspace).
    """
    form = intersection_form(X)
    if form.parity != 1:
        raise PairingError("float oracle is for odd middle degree")
    r = form.rank
    ctx = mpmath.mp.clone()
    ctx.prec = precision
    if r == 0:
        return ctx.mpc(0)
    G1 = action_matrix(X, act)
    N = act.order
    G = _mat_pow_list(G1, power % N + 1)[power % N]
    Gs = _mat_pow_list(G1, N)
    rng = random.Random(seed)
    M = ctx.matrix([[rng.randint(-3, 3) for _ in range(r)] for _ in range(r)])
    Q0 = M.T * M + ctx.eye(r)
    Q = ctx.zeros(r, r)
    for Gk in Gs:
        Gm = ctx.matrix([[ctx.mpf(x.numerator) / x.denominator for x in row] for row in Gk])
        Q += Gm.T * Q0 * Gm
    Bm = ctx.matrix([[ctx.mpf(x.numerator) / x.denominator for x in row] for row in form.matrix])
    Gm = ctx.matrix([[ctx.mpf(x.numerator) / x.denominator for x in row] for row in G])
    A = ctx.inverse(Q) * Bm
    R = ctx.cholesky(Q).T  # Q = R^T R
    Rinv = ctx.inverse(R)
    At = R * A * Rinv
    S = -(At * At)
    S = (S + S.T) / 2
    evals, U = ctx.eigsy(S)
    inv_sqrt = U * ctx.diag([1 / ctx.sqrt(e) for e in evals]) * U.T
    J = At * inv_sqrt
    Gt = R * Gm * Rinv
    tr = sum((J * Gt)[i, i] for i in range(r))
    return ctx.mpc(0, -1) * tr
