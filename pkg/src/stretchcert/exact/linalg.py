"""Exact dense linear algebra on tuple-of-tuples matrices.

The routines only use ``+ - * /`` and comparison with 0, so they work for
Fractions, Python ints (where no division is needed) and number-field elements.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm

from .poly import Poly


def to_matrix(rows):
    return tuple(tuple(x if not isinstance(x, (int, str)) else Fraction(x) for x in r) for r in rows)


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(n, m=None, zero=Fraction(0)):
    m = n if m is None else m
    return tuple(tuple(zero for _ in range(m)) for _ in range(n))


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def transpose(A):
    return tuple(zip(*A))


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(A, c):
    return tuple(tuple(a * c for a in r) for r in A)


def mat_mul(A, B):
    Bt = tuple(zip(*B))
    out = []
    for r in A:
        row = []
        for c in Bt:
            acc = r[0] * c[0]
            for a, b in zip(r[1:], c[1:]):
                if a != 0 and b != 0:
                    acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(A, v):
    out = []
    for r in A:
        acc = r[0] * v[0]
        for a, b in zip(r[1:], v[1:]):
            acc = acc + a * b
        out.append(acc)
    return tuple(out)


def mat_pow(A, k):
    n = len(A)
    out = identity(n)
    base = A
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def block(rows_of_blocks):
    """Assemble a block matrix from a grid of equally-sized square blocks."""
    out = []
    for brow in rows_of_blocks:
        for i in range(len(brow[0])):
            out.append(tuple(x for blk in brow for x in blk[i]))
    return tuple(out)


def is_symmetric(A):
    return all(A[i][j] == A[j][i] for i in range(len(A)) for j in range(i))


def is_integral(A):
    return all(getattr(x, "denominator", 1) == 1 for r in A for x in r)


def common_denominator(A):
    return reduce(lcm, (Fraction(x).denominator for r in A for x in r), 1)


def charpoly_coeffs(A):
    """Coefficients of det(xI - A), highest degree first (Berkowitz, division-free).

    Works over any commutative ring, so integer matrices stay in Python ints.
    """
    n = len(A)
    if n == 0:
        return [1]
    C = [1, -A[0][0]]
    for r in range(1, n):
        R = A[r][:r]                        # row left of the diagonal
        vec = [A[i][r] for i in range(r)]   # column above the diagonal
        q = [1, -A[r][r]]
        for _ in range(r):
            q.append(-sum(a * b for a, b in zip(R, vec)))
            vec = [sum(A[i][j] * vec[j] for j in range(r)) for i in range(r)]
        C = [sum(q[i - j] * C[j] for j in range(max(0, i - r - 1), min(i, r) + 1)) for i in range(r + 2)]
    return C


def charpoly(A):
    """det(xI - A) as a Poly."""
    return Poly(list(reversed(charpoly_coeffs(A))))


def det(A):
    """Determinant by Gaussian elimination over a field."""
    n = len(A)
    M = [list(r) for r in A]
    sign = 1
    out = None
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return M[0][0] * 0 if n else Fraction(1)
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        piv = M[c][c]
        out = piv if out is None else out * piv
        for r in range(c + 1, n):
            f = M[r][c]
            if f == 0:
                continue
            f = f / piv
            M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    if out is None:
        return Fraction(1)
    return out if sign > 0 else -out


def rref(A):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in A]
    nrows, ncols = len(M), (len(M[0]) if M else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, pivots


def nullspace(A):
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    M, pivots = rref(A)
    ncols = len(A[0])
    zero = A[0][0] * 0
    one = zero + 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(M, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def rank(A):
    return len(rref(A)[1])


def inverse(A):
    n = len(A)
    one = A[0][0] * 0 + 1
    zero = one * 0
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    M, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in M)


def solve(A, b):
    n = len(A)
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    M, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(r[n] for r in M[:n])


def hermite_basis(vectors):
    """Row-style Hermite normal form basis of the Z-span of integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    for c in range(ncols):
        # gcd-reduce column c among remaining rows
        while True:
            nz = [r for r in rows if r[c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[c]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[c] // piv[c]
                for j in range(ncols):
                    r[j] -= q * piv[j]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[c] != 0]
        if nz:
            piv = nz[0]
            if piv[c] < 0:
                piv[:] = [-x for x in piv]
            rows = [r for r in rows if r is not piv]
            basis.append(piv)
    for i, b in enumerate(basis):
        c = next(j for j, x in enumerate(b) if x)
        for prev in basis[:i]:
            q = prev[c] // b[c]
            if q:
                prev[:] = [x - q * y for x, y in zip(prev, b)]
    return [tuple(b) for b in basis]
