"""Symmetric rational realizations of totally real algebraic integers.

Three steps: find a symmetric matrix with a prescribed characteristic
polynomial (bounded search), compute its eigenvector over Q(theta) exactly,
and rotate by an element of SO(n; Q) until that eigenvector is positive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .config import PipelineConfig
from .errors import PreconditionError, SearchExhausted, VerificationError
from .exact.field import FieldElement, NumberField
from .exact.linalg import (
    charpoly,
    charpoly_coeffs,
    det,
    identity,
    inverse,
    is_symmetric,
    mat_add,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    to_matrix,
    transpose,
)
from .exact.poly import Poly
from .exact.roots import AlgebraicReal, isolate_roots


@dataclass(frozen=True)
class RationalSymmetricMatrix:
    entries: tuple

    def __post_init__(self):
        rows = to_matrix(self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise PreconditionError("matrix must be square and non-empty")
        if not is_symmetric(rows):
            raise PreconditionError("matrix is not symmetric")
        object.__setattr__(self, "entries", tuple(tuple(Fraction(x) for x in r) for r in rows))

    @property
    def n(self):
        return len(self.entries)

    @cached_property
    def charpoly(self) -> Poly:
        return charpoly(self.entries)

    @property
    def integral_charpoly(self):
        return self.charpoly.is_integral()

    def is_integral(self):
        return all(x.denominator == 1 for r in self.entries for x in r)

    def min_entry(self):
        return min(x for r in self.entries for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def as_symmetric(Q) -> RationalSymmetricMatrix:
    return Q if isinstance(Q, RationalSymmetricMatrix) else RationalSymmetricMatrix(tuple(map(tuple, Q)))


@dataclass(frozen=True)
class FieldVector:
    coords: tuple

    def __post_init__(self):
        if not self.coords or all(c.is_zero() for c in self.coords):
            raise PreconditionError("zero vector")

    @property
    def field(self) -> NumberField:
        return self.coords[0].field

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def signs(self):
        return tuple(c.sign() for c in self.coords)

    def is_positive(self):
        return all(s > 0 for s in self.signs())

    def floats(self):
        return [float(c) for c in self.coords]


@dataclass(frozen=True)
class RationalRotation:
    entries: tuple

    def __post_init__(self):
        U = to_matrix(self.entries)
        object.__setattr__(self, "entries", tuple(tuple(Fraction(x) for x in r) for r in U))
        n = len(U)
        if mat_mul(transpose(self.entries), self.entries) != identity(n):
            raise VerificationError("rotation is not orthogonal")
        if det(self.entries) != 1:
            raise VerificationError("rotation does not have determinant 1")

    @property
    def n(self):
        return len(self.entries)

    def is_identity(self):
        return self.entries == identity(self.n)

    def conjugate(self, Q) -> RationalSymmetricMatrix:
        """U Q U^T."""
        Q = as_symmetric(Q)
        return RationalSymmetricMatrix(mat_mul(mat_mul(self.entries, Q.entries), transpose(self.entries)))


def char_poly(Q) -> Poly:
    Q = Q.entries if isinstance(Q, RationalSymmetricMatrix) else to_matrix(Q)
    return charpoly(Q)


# --------------------------------------------------------------------------
# realization search


@dataclass(frozen=True)
class Realization:
    matrix: RationalSymmetricMatrix
    e: int
    seed: dict = field(default_factory=dict)


def _check_totally_real(g):
    if g.is_zero() or g.degree < 1 or not g.is_monic() or not g.is_integral():
        raise PreconditionError(f"{g} must be a monic integer polynomial of positive degree")
    if not g.is_irreducible():
        raise PreconditionError(f"{g} is reducible")
    if len(isolate_roots(g)) != g.degree:
        raise PreconditionError(f"{g} is not totally real")


def _square_vectors(length, total, values):
    """Vectors over ``values`` (in the given order, lexicographically) with sum of squares ``total``."""
    if length == 0:
        if total == 0:
            yield ()
        return
    cap = (length - 1) * max(v * v for v in values)
    for v in values:
        rest = total - v * v
        if rest < 0 or rest > cap:
            continue
        for tail in _square_vectors(length - 1, rest, values):
            yield (v,) + tail


def _scan(target, m, bound, tridiagonal):
    """Integer symmetric m x m matrices with characteristic coefficients ``target``.

    Candidates come in lexicographic order of (diagonal, off-diagonal upper
    triangle row by row) with larger values first; the last diagonal entry is
    fixed by the trace and the off-diagonal sum of squares by the second
    coefficient, which prunes most of the space.
    """
    trace = -target[1]
    a2 = target[2] if m >= 2 else 0
    values = range(bound, -bound - 1, -1)
    off_values = range(bound, 0, -1) if tridiagonal else values
    if tridiagonal:
        slots = [(i, i + 1) for i in range(m - 1)]
    else:
        slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    tried = 0
    for head in itertools.product(values, repeat=m - 1):
        last = trace - sum(head)
        if abs(last) > bound:
            continue
        diag = head + (last,)
        e2 = sum(diag[i] * diag[j] for i in range(m) for j in range(i + 1, m))
        squares = e2 - a2
        if squares < 0:
            continue
        for off in _square_vectors(len(slots), squares, off_values):
            A = [[0] * m for _ in range(m)]
            for i in range(m):
                A[i][i] = diag[i]
            for (i, j), v in zip(slots, off):
                A[i][j] = A[j][i] = v
            tried += 1
            if charpoly_coeffs(A) == target:
                return A, tried
    return None, tried


def realize_symmetric(g, e_max=None, search_bound=None, config: PipelineConfig | None = None) -> Realization:
    """Symmetric rational Q with det(xI - Q) = g(x)(x - 1)^e for the least e found.

    Order: for e = 0, 1, ...: dense integer matrices (sizes up to
    dense_max_dim), then tridiagonal integer matrices, then matrices with
    entries in (1/D)Z for D = 2, 3, ... (small sizes only); first hit wins.
    """
    cfg = config or PipelineConfig()
    e_max = cfg.e_max if e_max is None else e_max
    bound = cfg.search_bound if search_bound is None else search_bound
    if e_max not in (0, 1, 2):
        raise PreconditionError("e_max must be 0, 1 or 2")
    if bound < 1:
        raise PreconditionError("search_bound must be positive")
    _check_totally_real(g)
    tried_total = 0
    for e in range(e_max + 1):
        f = g * Poly([-1, 1]) ** e
        m = f.degree
        target = [int(c) for c in reversed(f.coeffs)]
        phases = []
        if m <= cfg.dense_max_dim:
            phases.append(("dense", 1))
        if m >= 3:                       # tridiagonal = dense for m <= 2
            phases.append(("tridiagonal", 1))
        if m <= cfg.rational_max_dim:
            phases += [("dense", D) for D in range(2, cfg.max_denominator + 1)]
        for pattern, D in phases:
            # D*Q is integral with characteristic coefficients c_k D^k
            scaled = [c * D ** k for k, c in enumerate(target)]
            A, tried = _scan(scaled, m, bound * D, pattern == "tridiagonal")
            tried_total += tried
            if A is not None:
                Q = RationalSymmetricMatrix(tuple(tuple(Fraction(x, D) for x in r) for r in A))
                if Q.charpoly != f:
                    raise VerificationError("search hit fails the characteristic polynomial check")
                seed = {"e": e, "pattern": pattern, "denominator": D, "bound": bound, "candidates": tried_total}
                return Realization(Q, e, seed)
    raise SearchExhausted(
        f"realization not found within bound {bound} (e <= {e_max}, denominators <= {cfg.max_denominator}); "
        "raise --search-bound or supply a matrix"
    )


# --------------------------------------------------------------------------
# eigenvectors and positivity


def _theta_multiplicity(Q: RationalSymmetricMatrix, theta: AlgebraicReal):
    p, mp = Q.charpoly, theta.minpoly
    k = 0
    while mp.divides(p):
        p = p.exact_div(mp)
        k += 1
    return k


def kernel_vector(A, theta: AlgebraicReal) -> FieldVector:
    """Kernel vector of A - theta I over Q(theta) for any square rational A, first nonzero coordinate 1."""
    A = to_matrix(A)
    n = len(A)
    if not theta.minpoly.divides(charpoly(A)):
        raise PreconditionError(f"{theta} is not an eigenvalue of the matrix")
    K = NumberField(theta)
    t = K.gen
    AK = [[K(A[i][j]) for j in range(n)] for i in range(n)]
    basis = nullspace([[AK[i][j] - (t if i == j else 0) for j in range(n)] for i in range(n)])
    if not basis:
        raise VerificationError("empty kernel for an eigenvalue")
    v = basis[0]
    lead = next(c for c in v if not c.is_zero())
    v = tuple(c / lead for c in v)
    residual = [sum((AK[i][j] * v[j] for j in range(n)), K.zero) - t * v[i] for i in range(n)]
    if any(not r.is_zero() for r in residual):
        raise VerificationError("eigen residual is nonzero")
    return FieldVector(v)


def eigenvector_exact(Q, theta: AlgebraicReal) -> FieldVector:
    """Eigenvector of symmetric Q for theta over Q(theta), first nonzero coordinate 1."""
    return kernel_vector(as_symmetric(Q).entries, theta)


def _dyadic(x, bits):
    return Fraction(round(x * (1 << bits)), 1 << bits)


def cayley(S) -> RationalRotation:
    """(I - S)^-1 (I + S) for rational skew-symmetric S."""
    n = len(S)
    I = identity(n)
    return RationalRotation(mat_mul(inverse(mat_sub(I, S)), mat_add(I, S)))


def _numeric_rotation(u):
    """Orthogonal R (det 1) rotating unit u onto the diagonal direction, acting in span(u, 1)."""
    n = len(u)
    w = np.full(n, 1 / np.sqrt(n))
    K = np.outer(w, u) - np.outer(u, w)
    c = float(u @ w)
    return np.eye(n) + K + K @ K / (1 + c)


def positivize(Q, theta: AlgebraicReal, bits=None, retries=None, config: PipelineConfig | None = None):
    """(U, U Q U^T) with U in SO(n; Q) making the theta-eigenvector positive."""
    cfg = config or PipelineConfig()
    bits = cfg.positivize_bits if bits is None else bits
    retries = cfg.positivize_retries if retries is None else retries
    Q = as_symmetric(Q)
    mult = _theta_multiplicity(Q, theta)
    if mult == 0:
        raise PreconditionError(f"{theta} is not an eigenvalue of the matrix")
    if mult > 1:
        raise PreconditionError(f"{theta} is a multiple eigenvalue")
    v = eigenvector_exact(Q, theta)
    n = Q.n
    if v.is_positive():
        return RationalRotation(identity(n)), Q
    u = np.array(v.floats())
    u /= np.linalg.norm(u)
    if u.sum() < 0:
        u = -u
    R = _numeric_rotation(u)
    S_num = (R - np.eye(n)) @ np.linalg.inv(R + np.eye(n))
    for attempt in range(retries):
        b = bits + 4 * attempt
        S = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                S[i][j] = _dyadic(S_num[i, j], b)
                S[j][i] = -S[i][j]
        U = cayley(tuple(map(tuple, S)))
        Qp = U.conjugate(Q)
        if eigenvector_exact(Qp, theta).is_positive():
            return U, Qp
    raise VerificationError(f"positivize did not converge after {retries} refinements (last grid 2^-{b})")


def rotate_vector(U: RationalRotation, v: FieldVector) -> FieldVector:
    return FieldVector(tuple(mat_vec(U.entries, v.coords)))


__all__ = [
    "FieldElement",
    "FieldVector",
    "RationalRotation",
    "RationalSymmetricMatrix",
    "Realization",
    "as_symmetric",
    "cayley",
    "char_poly",
    "eigenvector_exact",
    "kernel_vector",
    "positivize",
    "realize_symmetric",
    "rotate_vector",
]
