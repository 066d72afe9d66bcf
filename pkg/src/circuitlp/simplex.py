"""Exact two-phase primal simplex with Bland's rule.

This is the package's reference LP oracle: it powers the minimum-ratio
circuit oracle's reformulated LP and acts as the independent optimum in the
test suites.  Dense Fraction tableau, no tolerances, finite termination by
Bland's anti-cycling rule.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantBreachError
from .linalg import LpInstance, Matrix, Vec, solve_square, vdot, vsub


@dataclass(frozen=True)
class SimplexOutcome:
    """Primal/dual pair at termination.

    status is one of "optimal", "unbounded", "infeasible".  For "optimal",
    x is primal optimal, (y, s) is the dual pair with s = c - A^T y >= 0 and
    <s, x> = 0, and basis is the final set of basic columns.
    """

    status: str
    x: Vec = None
    y: Vec = None
    s: Vec = None
    basis: frozenset = None
    objective: Fraction = None


def _reduced_cost(T, basis, cost, j, m):
    rc = cost[j]
    for i in range(m):
        cb = cost[basis[i]]
        if cb != 0 and T[i][j] != 0:
            rc -= cb * T[i][j]
    return rc


def _pivot(T, basis, row, col):
    piv = T[row][col]
    if piv != 1:
        T[row] = [x / piv for x in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * b for a, b in zip(T[i], T[row])]
    basis[row] = col


def _bland(T, basis, cost, allowed, m):
    """Run Bland's rule to optimality; returns "optimal" or "unbounded"."""
    while True:
        entering = None
        for j in allowed:
            if _reduced_cost(T, basis, cost, j, m) < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        leaving = None
        best = None
        for i in range(m):
            coeff = T[i][entering]
            if coeff > 0:
                ratio = T[i][-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return "unbounded"
        _pivot(T, basis, leaving, entering)


def simplex_solve(inst: LpInstance) -> SimplexOutcome:
    """Solve min <c,x> s.t. Ax = b, x >= 0 exactly.

    Capacitated instances are out of scope here; reformulate with slacks
    first (see walks.capacitated_reformulation).
    """
    if inst.u is not None:
        raise ValueError("simplex_solve handles standard form only; add slacks first")
    A, b, c = inst.A, inst.b, inst.c
    m, n = A.m, A.n

    T = []
    for i in range(m):
        row = list(A.rows[i])
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(1 if k == i else 0) for k in range(m)]
        T.append(row + art + [rhs])
    basis = [n + i for i in range(m)]

    phase1_cost = [Fraction(0)] * n + [Fraction(1)] * m
    _bland(T, basis, phase1_cost, range(n + m), m)
    infeas = sum((T[i][-1] for i in range(m) if basis[i] >= n), Fraction(0))
    if infeas > 0:
        return SimplexOutcome(status="infeasible")

    # Drive zero-valued artificials out of the basis; full row rank
    # guarantees every such row has a real column to pivot on.
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                raise InvariantBreachError("redundant row survived rank validation")
            _pivot(T, basis, i, col)

    phase2_cost = list(c) + [Fraction(0)] * m
    status = _bland(T, basis, phase2_cost, range(n), m)
    if status == "unbounded":
        return SimplexOutcome(status="unbounded")

    x = [Fraction(0)] * n
    for i in range(m):
        x[basis[i]] = T[i][-1]
    x = tuple(x)
    basic = sorted(basis)
    y = solve_square(A.cols(basic).transpose(), tuple(c[j] for j in basic))
    if y is None:
        raise InvariantBreachError("final basis is singular")
    s = vsub(c, A.rmatvec(y))
    if any(v < 0 for v in s) or vdot(s, x) != 0:
        raise InvariantBreachError("simplex dual failed the optimality identities")
    return SimplexOutcome(
        status="optimal",
        x=x,
        y=y,
        s=s,
        basis=frozenset(basic),
        objective=vdot(c, x),
    )
