"""Augmentation oracles: support circuits, minimum-ratio circuits, and
maximal steps.

The ratio oracle solves  min <c,z>  s.t.  Az = 0, <w, z^-> <= 1  (weights may
be +inf, which pins z_i >= 0) through an exact LP reformulation, then reduces
the optimal solution to a single elementary vector by conformal decomposition
and a mediant argument.  Its dual certificate (y, s, lam) satisfies
s = c - A^T y, 0 <= s <= lam*w, lam >= 0; any such (y, s) is feasible for the
dual of the underlying LP, so <b, y> bounds the LP optimum from below.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InfeasibleStartError,
    InvariantBreachError,
    NotInKernelError,
    UnboundedRatioLPError,
    ZeroDirectionError,
)
from .circuits import ElementaryVector, conformal_decompose, find_circuit_through, circuit_vector
from .linalg import (
    INF,
    LpInstance,
    Matrix,
    Vec,
    as_vec,
    frac,
    is_finite_upper,
    support,
    vadd,
    vdot,
    vscale,
    vsub,
    zeros,
)
from .simplex import simplex_solve


@dataclass(frozen=True)
class DualCertificate:
    """(y, s, lam) with s = c - A^T y, 0 <= s <= lam * w (no cap where w_i is
    infinite), lam >= 0.  When <b, y> > 0 this certifies OPT > 0 by weak
    duality."""

    y: Vec
    s: Vec
    lam: Fraction


@dataclass(frozen=True)
class RatioCircuitResult:
    """direction is None exactly when the ratio LP optimum is zero (lam = 0),
    i.e. no negative-ratio circuit exists and the caller's iterate is optimal
    for its LP."""

    direction: ElementaryVector
    dual: DualCertificate

    @property
    def is_zero(self) -> bool:
        return self.direction is None


def check_dual_certificate(A: Matrix, c: Vec, w, cert: DualCertificate) -> bool:
    """Exact feasibility of (y, s, lam) for the ratio oracle's dual."""
    if cert.lam < 0:
        return False
    if cert.s != vsub(c, A.rmatvec(cert.y)):
        return False
    for si, wi in zip(cert.s, w):
        if si < 0:
            return False
        if is_finite_upper(wi) and si > cert.lam * wi:
            return False
    return True


def support_circuit(A: Matrix, c: Vec, x: Vec, targets):
    """Elementary z with supp(z) ⊆ supp(x), supp(z) ∩ targets != ∅ and
    <c, z> <= 0, or None when no circuit of supp(x) meets the target set.

    Deterministic: target indices are probed in ascending order and the
    greedy circuit shrink is index-ordered.
    """
    live = support(x)
    for s in sorted(set(targets) & live):
        circ = find_circuit_through(A, live, s)
        if circ is None:
            continue
        v = circuit_vector(A, circ)
        if vdot(c, v) > 0:
            v = tuple(-t for t in v)
        return ElementaryVector(v, circ)
    return None


def _neg_part(z: Vec) -> Vec:
    return tuple(-t if t < 0 else Fraction(0) for t in z)


def weighted_neg(w, z: Vec):
    """<w, z^-> under the convention inf * 0 = 0; math.inf when any z_i < 0
    has infinite weight."""
    total = Fraction(0)
    for wi, zi in zip(w, z):
        if zi < 0:
            if not is_finite_upper(wi):
                return INF
            total += wi * (-zi)
    return total


def ratio_circuit(A: Matrix, c: Vec, w) -> RatioCircuitResult:
    """Minimum cost-to-weight circuit oracle.

    Reformulates with z = p - q, p, q >= 0: rows A(p - q) = 0 plus a budget
    row <w, q> + tau = 1; coordinates with infinite weight get no q column
    (z_i >= 0 is forced).  A basic optimal solution of the reformulation is
    post-processed into an elementary vector of the same optimal ratio.

    Raises UnboundedRatioLPError when a nonnegative kernel ray has negative
    cost (the caller's LP is unbounded).
    """
    c = as_vec(c)
    m, n = A.m, A.n
    if len(w) != n or len(c) != n:
        raise NotInKernelError("weight/cost length mismatch")
    for wi in w:
        if is_finite_upper(wi) and frac(wi) < 0:
            raise ValueError("weights must be nonnegative")
    finite = [i for i in range(n) if is_finite_upper(w[i])]

    rows = []
    for i in range(m):
        row = list(A.rows[i])
        row += [-A.rows[i][j] for j in finite]
        row.append(Fraction(0))
        rows.append(row)
    budget = [Fraction(0)] * n + [frac(w[j]) for j in finite] + [Fraction(1)]
    rows.append(budget)
    rhs = zeros(m) + (Fraction(1),)
    cost = list(c) + [-c[j] for j in finite] + [Fraction(0)]

    outcome = simplex_solve(LpInstance(Matrix(rows), rhs, tuple(cost)))
    if outcome.status == "unbounded":
        raise UnboundedRatioLPError(
            "a nonnegative kernel ray has negative cost: LP is unbounded"
        )
    if outcome.status != "optimal":
        raise InvariantBreachError("ratio LP cannot be infeasible (0 is feasible)")

    y = outcome.y[:m]
    lam = -outcome.y[m]
    s = vsub(c, A.rmatvec(y))
    cert = DualCertificate(y=y, s=s, lam=lam)
    value = outcome.objective
    if lam != -value or not check_dual_certificate(A, c, w, cert):
        raise InvariantBreachError("ratio oracle dual extraction failed")
    if value == 0:
        return RatioCircuitResult(direction=None, dual=cert)

    z = list(outcome.x[:n])
    for pos, j in enumerate(finite):
        z[j] -= outcome.x[n + pos]
    z = tuple(z)

    best = None  # (ratio, part index, part, denominator)
    for idx, part in enumerate(conformal_decompose(A, z).parts):
        den = weighted_neg(w, part.vector)
        num = vdot(c, part.vector)
        if den == 0:
            if num < 0:
                raise InvariantBreachError("free negative-cost part in a bounded LP")
            continue
        ratio = num / den
        if best is None or ratio < best[0]:
            best = (ratio, idx, part, den)
    if best is None or best[0] != value:
        raise InvariantBreachError("mediant reduction lost the optimal ratio")
    g = best[2].scaled(Fraction(1) / best[3])  # now <w, g^-> = 1 exactly
    return RatioCircuitResult(direction=g, dual=cert)


def augment_maximal(A: Matrix, b: Vec, u, x: Vec, g):
    """Largest step keeping 0 <= x + alpha*g (<= u when capacitated).

    Returns (new point, alpha); an unbounded direction is reported as
    (x, math.inf) without moving.
    """
    gvec = g.vector if isinstance(g, ElementaryVector) else tuple(g)
    if all(t == 0 for t in gvec):
        raise ZeroDirectionError("zero augmentation direction")
    if A.matvec(gvec) != zeros(A.m):
        raise NotInKernelError("direction leaves the kernel")
    if A.matvec(x) != tuple(b):
        raise InfeasibleStartError("point does not satisfy Ax = b")
    if any(t < 0 for t in x):
        raise InfeasibleStartError("point has negative coordinates")
    if u is not None and any(
        is_finite_upper(cap) and xi > cap for xi, cap in zip(x, u)
    ):
        raise InfeasibleStartError("point exceeds an upper bound")

    alpha = None
    for i, gi in enumerate(gvec):
        if gi < 0:
            bound = x[i] / (-gi)
            alpha = bound if alpha is None else min(alpha, bound)
        elif gi > 0 and u is not None and is_finite_upper(u[i]):
            bound = (frac(u[i]) - x[i]) / gi
            alpha = bound if alpha is None else min(alpha, bound)
    if alpha is None:
        return x, math.inf
    return vadd(x, vscale(alpha, gvec)), alpha
