"""Exact rational dense linear algebra.

Scalars are `fractions.Fraction` throughout; nothing here ever rounds.  The
matroid-style primitives (rank of a column set, closure, kernel basis, basic
solutions, kernel projection) that the rest of the package consumes all live
in this module, together with the validated LP instance container.

Vectors are plain tuples of Fractions.  Index sets are frozensets of 0-based
column indices.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionMismatchError,
    RankDeficientError,
    SingularBasisError,
    ZeroVectorError,
)

INF = math.inf

Vec = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction; floats are rejected except inf."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass Fraction/int/str")
    return Fraction(x)


def as_vec(items) -> Vec:
    return tuple(frac(x) for x in items)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(t, a: Vec) -> Vec:
    t = frac(t)
    return tuple(t * x for x in a)


def vdot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def vneg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def norm1(a: Vec) -> Fraction:
    return sum((abs(x) for x in a), Fraction(0))


def norminf(a: Vec) -> Fraction:
    return max((abs(x) for x in a), default=Fraction(0))


def support(a: Vec) -> frozenset:
    return frozenset(i for i, x in enumerate(a) if x != 0)


def subvec(a: Vec, idx) -> Vec:
    return tuple(a[i] for i in idx)


def restrict(a: Vec, s) -> Vec:
    """Zero out every coordinate not in s."""
    return tuple(x if i in s else Fraction(0) for i, x in enumerate(a))


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def floor_log2(q: Fraction) -> int:
    """Largest k with 2**k <= q, for q > 0."""
    if q <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    k = q.numerator.bit_length() - q.denominator.bit_length()
    while Fraction(2) ** k > q:
        k -= 1
    while Fraction(2) ** (k + 1) <= q:
        k += 1
    return k


def ceil_log2(q: Fraction) -> int:
    """Smallest k with 2**k >= q, for q > 0."""
    k = floor_log2(q)
    return k if Fraction(2) ** k == q else k + 1


class Matrix:
    """Immutable dense matrix of Fractions, row major."""

    __slots__ = ("rows", "m", "n")

    def __init__(self, rows):
        grid = tuple(tuple(frac(x) for x in row) for row in rows)
        if not grid or not grid[0]:
            raise DimensionMismatchError("matrix needs at least one row and column")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise DimensionMismatchError("ragged matrix rows")
        object.__setattr__(self, "rows", grid)
        object.__setattr__(self, "m", len(grid))
        object.__setattr__(self, "n", width)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix({self.m}x{self.n}: {body})"

    def row(self, i) -> Vec:
        return self.rows[i]

    def col(self, j) -> Vec:
        return tuple(r[j] for r in self.rows)

    def cols(self, idx) -> "Matrix":
        """Column submatrix, columns taken in the order given (sets are sorted)."""
        order = sorted(idx) if isinstance(idx, (set, frozenset)) else list(idx)
        if not order:
            raise DimensionMismatchError("empty column selection")
        return Matrix(tuple(tuple(r[j] for j in order) for r in self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows)))

    def matvec(self, v: Vec) -> Vec:
        if len(v) != self.n:
            raise DimensionMismatchError(f"matvec: {self.n} columns vs vector of {len(v)}")
        return tuple(vdot(r, v) for r in self.rows)

    def rmatvec(self, v: Vec) -> Vec:
        """Transpose-apply: A^T v."""
        if len(v) != self.m:
            raise DimensionMismatchError(f"rmatvec: {self.m} rows vs vector of {len(v)}")
        return tuple(
            sum((self.rows[i][j] * v[i] for i in range(self.m)), Fraction(0))
            for j in range(self.n)
        )

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.n != other.m:
            raise DimensionMismatchError("matmul shape mismatch")
        cols = [other.col(j) for j in range(other.n)]
        return Matrix(tuple(tuple(vdot(r, c) for c in cols) for r in self.rows))

    @staticmethod
    def identity(k: int) -> "Matrix":
        return Matrix(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(k)) for i in range(k)
            )
        )

    @staticmethod
    def from_columns(cols) -> "Matrix":
        return Matrix(tuple(zip(*cols)))


def _bitsize(x: Fraction) -> int:
    return abs(x.numerator).bit_length() + x.denominator.bit_length()


def _row_reduce(grid):
    """In-place fraction Gaussian elimination to reduced row echelon form.

    Pivots are chosen by smallest bit size within the column (coefficient
    growth heuristic; correctness does not depend on the choice).  Returns the
    list of pivot column indices.
    """
    if not grid:
        return []
    nrows, ncols = len(grid), len(grid[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            if grid[i][c] != 0:
                size = _bitsize(grid[i][c])
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        grid[r], grid[i] = grid[i], grid[r]
        piv = grid[r][c]
        if piv != 1:
            grid[r] = [x / piv for x in grid[r]]
        for i in range(nrows):
            if i != r and grid[i][c] != 0:
                f = grid[i][c]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(A: Matrix, cols=None) -> int:
    """rk(A_S): rank of the column set in the linear matroid of A."""
    if cols is not None:
        order = sorted(cols)
        if not order:
            return 0
        grid = [[r[j] for j in order] for r in A.rows]
    else:
        grid = [list(r) for r in A.rows]
    return len(_row_reduce(grid))


def is_independent(A: Matrix, cols) -> bool:
    cols = list(cols)
    return rank(A, cols) == len(cols)


def closure(A: Matrix, cols) -> frozenset:
    """All columns whose addition leaves rk(A_S) unchanged; always contains S."""
    base = rank(A, cols)
    s = frozenset(cols)
    out = set(s)
    for i in range(A.n):
        if i not in s and rank(A, s | {i}) == base:
            out.add(i)
    return frozenset(out)


def kernel_basis(A: Matrix):
    """Exact basis of ker(A) as a tuple of column vectors (may be empty)."""
    grid = [list(r) for r in A.rows]
    pivots = _row_reduce(grid)
    pivot_set = set(pivots)
    free = [j for j in range(A.n) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -grid[r][f]
        basis.append(tuple(v))
    return tuple(basis)


def solve_square(M: Matrix, rhs: Vec):
    """Solve M x = rhs for square M; None if singular."""
    if M.m != M.n or len(rhs) != M.m:
        raise DimensionMismatchError("solve_square expects square M and matching rhs")
    grid = [list(r) + [b] for r, b in zip(M.rows, rhs)]
    pivots = _row_reduce(grid)
    if len(pivots) < M.n or pivots[-1] >= M.n:
        return None
    return tuple(grid[r][M.n] for r in range(M.n))


def solve_linear(A: Matrix, b: Vec):
    """Any exact solution of A x = b, or None if the system is inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if len(b) != A.m:
        raise DimensionMismatchError("rhs length mismatch")
    grid = [list(r) + [v] for r, v in zip(A.rows, b)]
    pivots = _row_reduce(grid)
    if any(p == A.n for p in pivots):
        return None
    x = [Fraction(0)] * A.n
    for r, p in enumerate(pivots):
        x[p] = grid[r][A.n]
    return tuple(x)


def basic_solution(A: Matrix, b: Vec, basis) -> Vec:
    """x with x_B = A_B^{-1} b and zeros elsewhere.  Nonnegativity is the
    caller's business."""
    order = sorted(basis)
    if len(order) != A.m:
        raise DimensionMismatchError(f"basis size {len(order)} != m = {A.m}")
    sol = solve_square(A.cols(order), b)
    if sol is None:
        raise SingularBasisError(f"columns {order} are not a basis")
    x = [Fraction(0)] * A.n
    for j, val in zip(order, sol):
        x[j] = val
    return tuple(x)


def project_to_kernel(A: Matrix, c: Vec) -> Vec:
    """Orthogonal projection of c onto ker(A): c - A^T (A A^T)^{-1} A c.

    Requires full row rank (A A^T invertible), which LpInstance guarantees.
    """
    gram = A.matmul(A.transpose())
    y = solve_square(gram, A.matvec(c))
    if y is None:
        raise RankDeficientError("A A^T singular: matrix does not have full row rank")
    return vsub(c, A.rmatvec(y))


def scale_to_unit_band(c: Vec):
    """Scale c by a power of two so that ||c||_2^2 lands in [1, 4).

    Returns (scaled vector, scale factor 2**k).  Exact stand-in for unit
    normalization: the 2-norm itself is irrational in general.
    """
    sq = vdot(c, c)
    if sq == 0:
        raise ZeroVectorError("cannot scale the zero vector")
    k = 0
    while sq < 1:
        sq *= 4
        k += 1
    while sq >= 4:
        sq /= 4
        k -= 1
    factor = Fraction(2) ** k
    return vscale(factor, c), factor


def is_finite_upper(u) -> bool:
    return not (isinstance(u, float) and math.isinf(u))


@dataclass(frozen=True)
class LpInstance:
    """Standard-form data min <c,x> s.t. Ax = b, 0 <= x (<= u when capacitated).

    Full row rank is validated at construction: dependent rows are rejected,
    never dropped silently.  Finite upper bounds must be positive.
    """

    A: Matrix
    b: Vec
    c: Vec
    u: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "b", as_vec(self.b))
        object.__setattr__(self, "c", as_vec(self.c))
        if len(self.b) != self.A.m:
            raise DimensionMismatchError(f"b has {len(self.b)} entries, expected {self.A.m}")
        if len(self.c) != self.A.n:
            raise DimensionMismatchError(f"c has {len(self.c)} entries, expected {self.A.n}")
        if self.u is not None:
            caps = tuple(x if (isinstance(x, float) and math.isinf(x)) else frac(x) for x in self.u)
            if len(caps) != self.A.n:
                raise DimensionMismatchError(f"u has {len(caps)} entries, expected {self.A.n}")
            if any(is_finite_upper(x) and x <= 0 for x in caps):
                raise DimensionMismatchError("finite upper bounds must be positive")
            object.__setattr__(self, "u", caps)
        if rank(self.A) != self.A.m:
            raise RankDeficientError("constraint matrix has dependent rows")

    @property
    def m(self) -> int:
        return self.A.m

    @property
    def n(self) -> int:
        return self.A.n

    def is_feasible(self, x: Vec) -> bool:
        if len(x) != self.n:
            return False
        if any(v < 0 for v in x):
            return False
        if self.u is not None and any(
            is_finite_upper(cap) and v > cap for v, cap in zip(x, self.u)
        ):
            return False
        return self.A.matvec(x) == self.b
