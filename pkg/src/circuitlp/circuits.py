"""Elementary vectors, circuits, conformal decompositions, and the circuit
imbalance measure.

An elementary vector is a support-minimal nonzero member of ker(A); its
support is a circuit of the linear matroid of A.  Everything here is exact:
support minimality and imbalance ratios are combinatorial predicates that
floating point would corrupt.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    EstimateCeilingError,
    KappaFailure,
    NotInKernelError,
    TooLargeError,
    ZeroVectorError,
)
from .linalg import Matrix, Vec, kernel_basis, rank, support, vadd, vscale, vsub, zeros

#: enumeration beyond this many columns is refused (exponential blowup)
ENUMERATION_CAP = 14

#: squarings of the imbalance estimate before giving up; overflow here means
#: the caller's failure detection is unsound and must surface loudly
MAX_DOUBLINGS = 30


def canonical_vector(v: Vec) -> Vec:
    """Scale to coprime integers with the first nonzero entry positive."""
    nz = [x for x in v if x != 0]
    if not nz:
        raise ZeroVectorError("cannot canonicalize the zero vector")
    mult = lcm(*(x.denominator for x in nz))
    ints = [x * mult for x in v]
    div = gcd(*(int(x) for x in ints if x != 0))
    ints = [x / div for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class ElementaryVector:
    """Support-minimal kernel vector together with its circuit supp(g)."""

    vector: Vec
    circuit: frozenset

    @staticmethod
    def from_vector(v: Vec) -> "ElementaryVector":
        return ElementaryVector(tuple(v), support(v))

    def scaled(self, t) -> "ElementaryVector":
        return ElementaryVector(vscale(t, self.vector), self.circuit)

    def canonical(self) -> "ElementaryVector":
        return ElementaryVector(canonical_vector(self.vector), self.circuit)

    def negated(self) -> "ElementaryVector":
        return ElementaryVector(tuple(-x for x in self.vector), self.circuit)


def is_circuit(A: Matrix, cols) -> bool:
    """Minimal dependent column set: rk(C) = |C|-1 and every C\\{i} independent."""
    c = sorted(cols)
    k = len(c)
    if k == 0 or rank(A, c) != k - 1:
        return False
    return all(rank(A, [j for j in c if j != i]) == k - 1 for i in c)


def is_elementary(A: Matrix, v: Vec) -> bool:
    """Exact membership test: v in ker(A), v != 0, supp(v) is a circuit."""
    if A.matvec(v) != zeros(A.m):
        return False
    s = support(v)
    if not s:
        return False
    return is_circuit(A, s)


def find_circuit(A: Matrix, cols):
    """Any circuit inside the dependent column set, found by greedy removal.

    Returns None when the columns are independent.  Deterministic: removal is
    attempted in ascending index order.
    """
    current = sorted(cols)
    if rank(A, current) == len(current):
        return None
    for i in list(current):
        trial = [j for j in current if j != i]
        if rank(A, trial) < len(trial):
            current = trial
    return frozenset(current)


def find_circuit_through(A: Matrix, cols, pivot: int):
    """Circuit inside `cols` that contains `pivot`, or None.

    Exists iff column `pivot` lies in the span of the remaining columns; the
    greedy shrink keeps that dependency while removing everything redundant.
    """
    rest = sorted(set(cols) - {pivot})
    if rank(A, rest + [pivot]) != rank(A, rest):
        return None
    for i in list(rest):
        trial = [j for j in rest if j != i]
        if rank(A, trial + [pivot]) == rank(A, trial):
            rest = trial
    return frozenset(rest) | {pivot}


def circuit_vector(A: Matrix, circuit) -> Vec:
    """The (unique up to scale) kernel vector supported on a circuit,
    canonically scaled."""
    order = sorted(circuit)
    basis = kernel_basis(A.cols(order))
    if len(basis) != 1:
        raise ValueError(f"{order} is not a circuit of the matrix")
    local = basis[0]
    full = [Fraction(0)] * A.n
    for j, val in zip(order, local):
        full[j] = val
    return canonical_vector(tuple(full))


def enumerate_elementary_vectors(A: Matrix, cap: int = ENUMERATION_CAP):
    """One canonically scaled representative per circuit of ker(A).

    Exhaustive over supports in (size, lexicographic) order; every support
    whose columns are minimally dependent is a circuit.  Only for small n.
    """
    if A.n > cap:
        raise TooLargeError(f"n = {A.n} exceeds enumeration cap {cap}")
    full_rank = rank(A)
    found = []
    circuits = []
    for size in range(1, full_rank + 2):
        for combo in itertools.combinations(range(A.n), size):
            cset = set(combo)
            if any(c <= cset for c in circuits):
                continue
            if rank(A, combo) == size - 1:
                circuits.append(frozenset(combo))
                found.append(
                    ElementaryVector(circuit_vector(A, combo), frozenset(combo))
                )
    return tuple(found)


@dataclass(frozen=True)
class KappaEstimate:
    """Circuit imbalance value; `exact` marks enumeration-verified values."""

    value: Fraction
    exact: bool


def _imbalance(v: Vec) -> Fraction:
    entries = [abs(x) for x in v if x != 0]
    return max(entries) / min(entries)


def kappa_exact(A: Matrix, cap: int = ENUMERATION_CAP) -> KappaEstimate:
    """Exact circuit imbalance max |g_j/g_i| by exhaustive enumeration."""
    vectors = enumerate_elementary_vectors(A, cap)
    value = max((_imbalance(g.vector) for g in vectors), default=Fraction(1))
    return KappaEstimate(value, True)


def kappa_dual(A: Matrix, cap: int = ENUMERATION_CAP) -> KappaEstimate:
    """Imbalance of the orthogonal complement Im(A^T), via a matrix whose
    kernel is that space (the transposed kernel basis of A)."""
    basis = kernel_basis(A)
    if not basis:
        # ker(A) = 0, so Im(A^T) is the whole space: circuits are singletons.
        return KappaEstimate(Fraction(1), True)
    B = Matrix(basis)  # rows = kernel basis vectors; ker(B) = Im(A^T)
    return kappa_exact(B, cap)


@dataclass(frozen=True)
class ConformalDecomposition:
    """x written as a sum of elementary vectors, each sign-compatible with x
    and coordinate-wise no larger (h ⊑ x)."""

    parts: tuple
    target: Vec


def conforms(h: Vec, x: Vec) -> bool:
    """h ⊑ x: sign-compatible and |h_i| <= |x_i| everywhere."""
    return all(hi * xi >= 0 and abs(hi) <= abs(xi) for hi, xi in zip(h, x, strict=True))


def sign_compatible_circuit(A: Matrix, r: Vec) -> Vec:
    """Elementary vector h with supp(h) ⊆ supp(r) and h_i r_i > 0 on supp(h).

    Constructive repair loop: take any circuit of supp(v); if its kernel
    vector disagrees in sign with v somewhere, cancel the worst offending
    coordinate by adding the right multiple, shrinking the support, and
    retry.  The support shrinks every round, so this terminates.
    """
    v = r
    while True:
        circ = find_circuit(A, support(v))
        if circ is None:
            raise ZeroVectorError("vector has independent support; not in the kernel")
        h = circuit_vector(A, circ)
        anchor = min(circ)
        if h[anchor] * v[anchor] < 0:
            h = tuple(-x for x in h)
        bad = [i for i in circ if h[i] * v[i] < 0]
        if not bad:
            return h
        step = min(-v[i] / h[i] for i in bad)
        v = vadd(v, vscale(step, h))


def conformal_decompose(A: Matrix, x: Vec) -> ConformalDecomposition:
    """Greedy conformal peeling: repeatedly extract a sign-compatible circuit
    of the residual and subtract the largest multiple staying within it.

    Each round zeroes at least one coordinate, and the parts are linearly
    independent (each is nonzero on a coordinate all later parts avoid), so
    the count is bounded by min(dim ker A, |supp(x)|).
    """
    if len(x) != A.n:
        raise NotInKernelError("vector length does not match the matrix")
    if A.matvec(x) != zeros(A.m):
        raise NotInKernelError("A x != 0")
    if all(v == 0 for v in x):
        raise ZeroVectorError("cannot decompose the zero vector")
    residual = x
    parts = []
    while any(v != 0 for v in residual):
        h = sign_compatible_circuit(A, residual)
        alpha = min(residual[i] / h[i] for i in support(h))
        parts.append(ElementaryVector.from_vector(vscale(alpha, h)))
        residual = vsub(residual, parts[-1].vector)
    return ConformalDecomposition(tuple(parts), x)


def kappa_doubling_run(runner, initial, max_doublings: int = MAX_DOUBLINGS):
    """Guess-and-square driver for the imbalance estimate.

    `runner(kappa_hat)` must return its result on success and raise
    KappaFailure only when the estimate is genuinely too small.  Returns
    (result, estimate used).  Exhausting the budget signals a bug in the
    runner's failure detection, not a huge instance.
    """
    estimate = Fraction(initial)
    if estimate < 1:
        estimate = Fraction(1)
    for _ in range(max_doublings + 1):
        try:
            return runner(estimate), estimate
        except KappaFailure:
            estimate = estimate * estimate
            if estimate < 2:
                estimate = Fraction(2)  # 1 squares to 1; force real growth
    raise EstimateCeilingError(
        f"imbalance estimate exceeded {max_doublings} doublings; "
        "failure detection looks unsound"
    )
