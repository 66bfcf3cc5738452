"""The block matrix M = [[Q, -I], [I, 0]], the Chebyshev blocks Q_k, and their exponents.

M^k + M^-k = diag(QQ_k, QQ_k) with QQ_k = 2 Q_k - Q Q_{k-1}, where
Q_0 = I, Q_1 = Q, Q_{k+1} = Q Q_k - Q_{k-1}. Equivalently QQ_k = V_k(Q) for the
Dickson polynomial V_k(x + 1/x) = x^k + x^-k. When M^k is integral, so is QQ_k,
and once QQ_k is positive it is the intersection matrix the surface needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from operator import mul

import sympy

from .config import PipelineConfig
from .errors import PreconditionError, SearchExhausted, VerificationError, stage
from .exact.field import NumberField
from .exact.linalg import (
    block,
    charpoly,
    common_denominator,
    det,
    hermite_basis,
    identity,
    inverse,
    is_integral,
    mat_add,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub,
    mat_vec,
    rank,
    transpose,
    zeros,
)
from .exact.poly import Poly, reciprocal_lift
from .exact.roots import AlgebraicReal, isolate_roots
from .exact.salem import classify_salem, trace_polynomial
from .formats import (
    algebraic_from_json,
    algebraic_to_json,
    element_from_json,
    matrix_from_json,
    matrix_to_json,
    poly_from_str,
    poly_to_str,
    vector_to_json,
)
from .realize import (
    FieldVector,
    RationalRotation,
    RationalSymmetricMatrix,
    as_symmetric,
    eigenvector_exact,
    positivize,
    realize_symmetric,
)

CYCLOTOMIC_6 = Poly([1, -1, 1])   # x^2 - x + 1, the lift of x - 1


@dataclass(frozen=True)
class BlockCompanion:
    Q: RationalSymmetricMatrix

    @cached_property
    def entries(self):
        m = self.Q.n
        I, Z = identity(m), zeros(m)
        return block([[self.Q.entries, mat_scale(I, -1)], [I, Z]])

    @cached_property
    def inverse_entries(self):
        m = self.Q.n
        I, Z = identity(m), zeros(m)
        return block([[Z, I], [mat_scale(I, -1), self.Q.entries]])

    @cached_property
    def charpoly(self):
        return charpoly(self.entries)

    @property
    def size(self):
        return 2 * self.Q.n

    def det(self):
        return det(self.entries)


def build_block(Q, salem_poly: Poly | None = None) -> BlockCompanion:
    """M for Q, with det M = 1 and the lift identity for its characteristic polynomial checked."""
    B = BlockCompanion(as_symmetric(Q))
    if B.det() != 1:
        raise VerificationError("det of the block matrix is not 1")
    if mat_mul(B.entries, B.inverse_entries) != identity(B.size):
        raise VerificationError("block inverse formula failed")
    if B.charpoly != reciprocal_lift(B.Q.charpoly):
        raise VerificationError("char poly of M is not the reciprocal lift of char poly of Q")
    if salem_poly is not None:
        g = trace_polynomial(salem_poly)
        e = B.Q.n - g.degree
        if e < 0 or B.Q.charpoly != g * Poly([-1, 1]) ** e:
            raise VerificationError("char poly of Q is not trace polynomial times (x-1)^e")
        if B.charpoly != salem_poly * CYCLOTOMIC_6 ** e:
            raise VerificationError("char poly of M is not p(x)(x^2-x+1)^e")
    return B


# --------------------------------------------------------------------------
# Q_k, QQ_k


def q_sequence(Q, k):
    """(Q_k, QQ_k) by the three-term recursion."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    Qm = as_symmetric(Q).entries
    prev, cur = identity(len(Qm)), Qm
    for _ in range(k - 1):
        prev, cur = cur, mat_sub(mat_mul(Qm, cur), prev)
    return cur, mat_sub(mat_scale(cur, 2), mat_mul(Qm, prev))


def chebyshev_ladder(x, k, two, one_x=None):
    """V_k(x) by doubling: V_2j = V_j^2 - 2, V_2j+1 = V_j V_j+1 - x.

    ``two`` is the element 2 of the ring (2I for matrices); multiplication is ``*``
    or matmul via ``one_x`` adapters, see ``qq_fast``.
    """
    mul, sub = one_x if one_x else (lambda a, b: a * b, lambda a, b: a - b)
    a, b = two, x                       # (V_j, V_j+1), starting at j = 0
    for bit in bin(k)[2:]:
        if bit == "1":
            a, b = sub(mul(a, b), x), sub(mul(b, b), two)
        else:
            a, b = sub(mul(a, a), two), sub(mul(a, b), x)
    return a


def qq_fast(Q, k):
    """QQ_k by fast doubling."""
    Qm = as_symmetric(Q).entries if not isinstance(Q, tuple) else Q
    two = mat_scale(identity(len(Qm)), 2)
    return chebyshev_ladder(Qm, k, two, (mat_mul, mat_sub))


def dickson_value(x, k):
    """V_k(x) for a ring element x supporting + - * with ints."""
    return chebyshev_ladder(x, k, x * 0 + 2)


def verify_skew(Q, k):
    """Direct powering of M and M^-1 against the recursion's QQ_k."""
    B = BlockCompanion(as_symmetric(Q))
    m = B.Q.n
    S = mat_add(mat_pow(B.entries, k), mat_pow(B.inverse_entries, k))
    top = tuple(r[:m] for r in S[:m])
    bottom = tuple(r[m:] for r in S[m:])
    off = [x for r in S[:m] for x in r[m:]] + [x for r in S[m:] for x in r[:m]]
    _, QQ = q_sequence(B.Q, k)
    return all(x == 0 for x in off) and top == QQ and bottom == QQ


def skew_profile(Q, k_max):
    """verify_skew for k = 1..k_max with incremental powering; list of booleans."""
    B = BlockCompanion(as_symmetric(Q))
    m = B.Q.n
    Qm = B.Q.entries
    P, Pi = B.entries, B.inverse_entries
    prev, cur = identity(m), Qm
    out = []
    for k in range(1, k_max + 1):
        if k > 1:
            P, Pi = mat_mul(P, B.entries), mat_mul(Pi, B.inverse_entries)
            prev, cur = cur, mat_sub(mat_mul(Qm, cur), prev)
        QQ = mat_sub(mat_scale(cur, 2), mat_mul(Qm, prev))
        S = mat_add(P, Pi)
        ok = (all(x == 0 for r in S[:m] for x in r[m:]) and all(x == 0 for r in S[m:] for x in r[:m])
              and tuple(r[:m] for r in S[:m]) == QQ and tuple(r[m:] for r in S[m:]) == QQ)
        out.append(ok)
    return out


# --------------------------------------------------------------------------
# integrality exponent


@dataclass(frozen=True)
class IntegralityCertificate:
    k0: int
    method: str            # "integral", "krylov" or "lattice"
    c: int                 # denominator of the basis matrix A
    d: int                 # denominator of A^-1
    modulus: int           # N = c d
    order: int             # order of Omega modulo N; M^order is integral
    omega: tuple = ()      # integral matrix with M A = A Omega
    basis: tuple = ()      # A

    def to_json(self):
        return {
            "k0": self.k0, "method": self.method, "c": self.c, "d": self.d,
            "modulus": self.modulus, "order": self.order,
            "omega": matrix_to_json(self.omega), "basis": matrix_to_json(self.basis),
        }


def _mod_matmul(A, B, N):
    Bt = list(zip(*B))
    return tuple(tuple(sum(map(mul, r, c)) % N for c in Bt) for r in A)


def _mod_pow(A, k, N):
    n = len(A)
    out = tuple(tuple(int(i == j) % N for j in range(n)) for i in range(n))
    base = tuple(tuple(x % N for x in r) for r in A)
    while k:
        if k & 1:
            out = _mod_matmul(out, base, N)
        base = _mod_matmul(base, base, N)
        k >>= 1
    return out


def _int_matrix(A):
    return tuple(tuple(int(x) for x in r) for r in A)


def _merge(into, factors):
    for q, a in factors.items():
        into[q] = max(into.get(q, 0), a)


def gl_exponent_factored(n, p, a):
    """Factorization of a multiple of the exponent of GL_n(Z/p^a).

    The exponent divides p^(a-1) p^ceil(log_p n) lcm(p^i - 1, i <= n); each
    p^i - 1 is split into cyclotomic values Phi_d(p) before factoring.
    """
    e, ppow = a - 1, 1
    while ppow < n:
        ppow *= p
        e += 1
    cyclo = {d: sympy.factorint(int(sympy.cyclotomic_poly(d, p))) for d in range(1, n + 1)}
    out = {p: e} if e else {}
    for i in range(1, n + 1):
        fi = {}
        for d in sympy.divisors(i):
            for q, b in cyclo[d].items():
                fi[q] = fi.get(q, 0) + b
        _merge(out, fi)
    return out


def gl_exponent_bound(n, N):
    """A multiple of the exponent of GL_n(Z/N)."""
    E = 1
    for p, a in sympy.factorint(N).items():
        for q, b in gl_exponent_factored(n, p, a).items():
            E = lcm(E, q ** b)
    return E


def _least_exponent(base, factors, inside, N):
    """Least k dividing E = prod q^b with inside(base^k mod N), where the exponents with
    inside(base^k) form a subgroup containing E.

    For each prime q, X = base^(E / q^b) is raised to q until it lands inside;
    the number of steps is the q-adic valuation of the answer.
    """
    E = 1
    for q, b in factors.items():
        E *= q ** b
    k = 1
    for q, b in sorted(factors.items()):
        X = _mod_pow(base, E // q ** b, N)
        j = 0
        while not inside(X):
            if j == b:
                raise VerificationError("exponent bound is not a multiple of the order")
            X = _mod_pow(X, q, N)
            j += 1
        k *= q ** j
    return k


def matrix_order_mod(Omega, N):
    """Multiplicative order of integer Omega in GL_n(Z/N): lcm of the orders modulo each p^a."""
    n = len(Omega)
    if N == 1:
        return 1
    order = 1
    for p, a in sympy.factorint(N).items():
        m = p ** a
        I = tuple(tuple(int(i == j) % m for j in range(n)) for i in range(n))
        fac = gl_exponent_factored(n, p, a)
        E = 1
        for q, b in fac.items():
            E *= q ** b
        if _mod_pow(Omega, E, m) != I:
            raise VerificationError(f"matrix not invertible modulo {m}")
        order = lcm(order, _least_exponent(Omega, fac, lambda X: X == I, m))
    return order


def _invariant_basis(M):
    """(A, Omega, method): columns of A span an M-invariant lattice containing Z^n, M A = A Omega."""
    n = len(M)
    for i in range(n):
        v = tuple(Fraction(int(r == i)) for r in range(n))
        cols = [v]
        for _ in range(n - 1):
            cols.append(mat_vec(M, cols[-1]))
        K = transpose(cols)
        if rank(K) == n:
            return K, mat_mul(mat_mul(inverse(K), M), K), "krylov"
    # lattice spanned by M^i e_j, i < n (invariant by Cayley-Hamilton with integer char poly)
    gens, cur = [], identity(n)
    for _ in range(n):
        gens.extend(transpose(cur))
        cur = mat_mul(M, cur)
    D = lcm(*(common_denominator([g]) for g in gens))
    H = hermite_basis([tuple(int(x * D) for x in g) for g in gens])
    A = transpose([tuple(Fraction(x, D) for x in h) for h in H])
    return A, mat_mul(mat_mul(inverse(A), M), A), "lattice"


def integrality_exponent(B: BlockCompanion, max_power=None) -> IntegralityCertificate:
    """Smallest k0 >= 1 with M^k0 integral, certified by the order of Omega mod cd."""
    if not B.charpoly.is_integral():
        raise PreconditionError("char poly of M is not integral")
    if B.det() != 1:
        raise PreconditionError("det M != 1")
    return integral_power_exponent(B.entries, max_power)


def integral_power_exponent(M, max_power=None) -> IntegralityCertificate:
    """Smallest k0 >= 1 with M^k0 integral for rational M with integral char poly and det +-1.

    If A has denominator c and A^-1 denominator d and Omega^t = I + cd X, then
    M^t = I + cd A X A^-1 is integral; the integral exponents form the subgroup
    k0 Z (M^-k is integral whenever M^k is, the determinant being a unit), so
    k0 divides t and stripping prime factors of t while integrality persists lands on k0.
    """
    cp = charpoly(M)
    if not cp.is_integral() or abs(cp[0]) != 1:
        raise PreconditionError("need an integral char poly with constant term +-1")
    n = len(M)
    if is_integral(M):
        return IntegralityCertificate(1, "integral", 1, 1, 1, 1, identity(n), identity(n))
    A, Omega, method = _invariant_basis(M)
    if not is_integral(Omega):
        raise VerificationError("Omega is not integral")
    c, d = common_denominator(A), common_denominator(inverse(A))
    N = c * d
    Om = tuple(tuple(int(x) for x in r) for r in Omega)
    t = matrix_order_mod(Om, N)
    # M^k = A' Omega^k A'' / N with A' = cA, A'' = dA^-1 integral, so integrality
    # of M^k depends only on Omega^k mod N
    Ai = _int_matrix(mat_scale(A, c))
    Aii = _int_matrix(mat_scale(inverse(A), d))

    def integral_part(W):
        W = _mod_matmul(_mod_matmul(Ai, W, N), Aii, N)
        return all(x == 0 for r in W for x in r)

    if not integral_part(_mod_pow(Om, t, N)):
        raise VerificationError("M^order is not integral")
    k0 = _least_exponent(Om, sympy.factorint(t), integral_part, N)
    if k0 <= 64 and not is_integral(mat_pow(M, k0)):
        raise VerificationError("modular integrality test disagrees with direct powering")
    if max_power is not None and k0 > max_power:
        raise SearchExhausted(f"integrality exponent {k0} exceeds max_power {max_power}")
    return IntegralityCertificate(k0, method, c, d, N, t, Omega, A)


# --------------------------------------------------------------------------
# positivity


def _other_eigen_radius(poly, theta):
    """(multiplicity of theta, list of the other roots) for a char poly."""
    roots = isolate_roots(poly)
    mp = theta.minpoly
    mult, k = 0, poly
    while mp.divides(k):
        k = k.exact_div(mp)
        mult += 1
    others = [r for r in roots if r != theta]
    return mult, others


def check_dominance(Q, theta: AlgebraicReal):
    """theta is a simple eigenvalue of Q strictly larger than |every other eigenvalue|."""
    mult, others = _other_eigen_radius(as_symmetric(Q).charpoly, theta)
    if mult != 1:
        raise PreconditionError("no unique dominating eigenvalue (theta is not a simple eigenvalue)")
    for r in others:
        if theta.abs_compare(r) <= 0 or theta.sign() <= 0:
            raise PreconditionError("no unique dominating eigenvalue")
    return others


def _growth_data(theta, others, v: FieldVector, floor_radius):
    """Rational (theta_lo, r_hi, m_lo) with r >= max(floor_radius, |others|) and m <= v_i^2/|v|^2."""
    K = v.field
    norm2 = sum((c * c for c in v.coords), K.zero)
    width = Fraction(1, 16)
    while True:
        for r in others:
            r.refine(width)
        r_hi = Fraction(floor_radius)
        for r in others:
            lo, hi = r.enclosure()
            r_hi = max(r_hi, abs(lo), abs(hi))
        theta.refine(width)
        t_lo = theta.enclosure()[0]
        if t_lo > r_hi:
            break
        width /= 16
    m_lo = min((c * c / norm2).enclosure(width)[0] for c in v.coords)
    if m_lo <= 0:
        m_lo = min((c * c / norm2).enclosure(width / 1024)[0] for c in v.coords)
    return t_lo, r_hi, m_lo


def _bound_exponent(f, t_lo, r_hi, m_lo, floor, step, max_power, allowed=lambda k: True):
    """Least multiple k of step with f(k, t_lo) m_lo - f(k, r_hi) >= floor (and allowed(k))."""
    if m_lo <= 0:
        raise VerificationError("eigenvector enclosure does not separate from 0")
    k = step
    while k <= max_power:
        if allowed(k) and f(k, t_lo) * m_lo - f(k, r_hi) >= floor:
            return k
        k += step
    raise SearchExhausted(f"growth bound exceeds max_power {max_power}")


def _dickson_at(k, x):
    return dickson_value(Fraction(x), k)


@dataclass(frozen=True)
class PositivityResult:
    k: int
    QQk: tuple
    k_bound: int           # certified upper bound from the growth estimate
    eigenvalue: object     # FieldElement V_k(theta) in Q(theta)

    def to_json(self):
        return {"k": self.k, "k_bound": self.k_bound, "Qk": matrix_to_json(self.QQk)}


def positivity_exponent(Q, theta: AlgebraicReal, step=1, entry_floor=1, max_power=10000) -> PositivityResult:
    """Least multiple k of step with QQ_k integral and every entry >= entry_floor.

    Termination is certified before searching: writing QQ_k in an orthonormal
    eigenbasis, every entry is at least V_k(theta) min_i v_i^2 - V_k(r) where r
    bounds max(2, |other eigenvalues|), because |V_k(t)| <= V_k(max(2, |t|)).
    """
    Q = as_symmetric(Q)
    with stage("dominance"):
        others = check_dominance(Q, theta)
        if theta.compare(2) <= 0:
            raise PreconditionError("no unique dominating eigenvalue above 2; QQ_k stays bounded")
        v = eigenvector_exact(Q, theta)
        if not v.is_positive():
            raise PreconditionError("eigenvector is not positive; positivize first")
    t_lo, r_hi, m_lo = _growth_data(theta, others, v, 2)
    k_bound = _bound_exponent(_dickson_at, t_lo, r_hi, m_lo, entry_floor, step, max_power)
    Qm = Q.entries
    Qs = qq_fast(Qm, step)
    two = mat_scale(identity(Q.n), 2)
    prev, cur, k = two, Qs, step
    while True:
        if is_integral(cur) and min(x for r in cur for x in r) >= entry_floor:
            break
        if k >= k_bound:
            raise VerificationError("growth bound violated: no positive block at the certified exponent")
        prev, cur, k = cur, mat_sub(mat_mul(Qs, cur), prev), k + step
    if qq_fast(Qm, k) != cur or q_sequence(Q, k)[1] != cur:
        raise VerificationError("fast doubling, recursion and stepped sequence disagree")
    K = v.field
    lam = dickson_value(K.gen, k)
    QK = [[K(x) for x in r] for r in cur]
    if any((sum((QK[i][j] * v[j] for j in range(Q.n)), K.zero) - lam * v[i]) != 0 for i in range(Q.n)):
        raise VerificationError("eigenvector of Q is not an eigenvector of QQ_k")
    return PositivityResult(k, cur, k_bound, lam)


def positive_power_exponent(B, theta: AlgebraicReal, entry_floor=1, max_power=10000):
    """Least k with B^k integral-positive (entries >= entry_floor) and det B^k = 1.

    Same certificate as positivity_exponent with x^k in place of V_k: every
    entry of B^k is at least theta^k min v_i^2 - r^k.
    """
    B = as_symmetric(B)
    others = check_dominance(B, theta)
    v = eigenvector_exact(B, theta)
    if not v.is_positive():
        raise PreconditionError("eigenvector is not positive; positivize first")
    if not B.is_integral():
        raise PreconditionError("matrix must be integral")
    odd_ok = det(B.entries) == 1
    t_lo, r_hi, m_lo = _growth_data(theta, others, v, 0)
    k_bound = _bound_exponent(lambda k, x: Fraction(x) ** k, t_lo, r_hi, m_lo, entry_floor, 1, max_power,
                              allowed=lambda k: odd_ok or k % 2 == 0)
    P, k = B.entries, 1
    while not ((odd_ok or k % 2 == 0) and min(x for r in P for x in r) >= entry_floor):
        if k >= k_bound:
            raise VerificationError("growth bound violated for plain powers")
        P, k = mat_mul(P, B.entries), k + 1
    if mat_pow(B.entries, k) != P:
        raise VerificationError("power mismatch")
    return k, P, k_bound


# --------------------------------------------------------------------------
# the Salem certificate


def chart_value(k):
    """V_k(1) = 2 cos(k pi / 3): the eigenvalue of QQ_k coming from each eigenvalue 1 of Q."""
    return (2, 1, -1, -2, -1, 1)[k % 6]


@dataclass(frozen=True)
class SkewPowerCertificate:
    p: Poly
    trace_poly: Poly
    base: RationalSymmetricMatrix          # realization before rotation
    e: int
    seed: dict
    rotation: RationalRotation
    Q: RationalSymmetricMatrix
    theta: AlgebraicReal                   # lambda + 1/lambda
    eigenvector: FieldVector
    integrality: IntegralityCertificate
    k: int
    k_bound: int
    Qk: tuple
    eigenvalue: AlgebraicReal              # lambda^k + lambda^-k
    eigenvalue_element: object             # the same, in Q(theta)
    char_poly_of_Qk: Poly
    entry_floor: int
    verdict: str = ""
    digits: int = 12

    @property
    def salem_root_power(self):
        return self.k

    def to_json(self):
        return {
            "kind": "skew-power-certificate",
            "polynomial": poly_to_str(self.p),
            "verdict": self.verdict,
            "trace_polynomial": poly_to_str(self.trace_poly),
            "realization": {
                "matrix": matrix_to_json(self.base.entries),
                "e": self.e,
                "seed": self.seed,
            },
            "rotation": matrix_to_json(self.rotation.entries),
            "Q": matrix_to_json(self.Q.entries),
            "theta": algebraic_to_json(self.theta, self.digits),
            "eigenvector": vector_to_json(self.eigenvector),
            "integrality": self.integrality.to_json(),
            "entry_floor": self.entry_floor,
            "k": self.k,
            "k_bound": self.k_bound,
            "Qk": matrix_to_json(self.Qk),
            "eigenvalue": algebraic_to_json(self.eigenvalue, self.digits),
            "char_poly_of_Qk": poly_to_str(self.char_poly_of_Qk),
        }


def salem_certificate(p: Poly, entry_floor=1, config: PipelineConfig | None = None, Q=None) -> SkewPowerCertificate:
    """classify -> trace polynomial -> realize -> positivize -> integrality -> positivity."""
    cfg = config or PipelineConfig(entry_floor=entry_floor)
    with stage("classify"):
        cls = classify_salem(p)
        if not cls.accepted:
            raise PreconditionError(f"{p} is not Salem or a quadratic reciprocal unit: {cls.reason}")
    with stage("trace"):
        g = trace_polynomial(p)
        theta = isolate_roots(g)[-1]
    with stage("realize"):
        if Q is None:
            real = realize_symmetric(g, config=cfg)
            base, e, seed = real.matrix, real.e, real.seed
        else:
            base = as_symmetric(Q)
            e = base.n - g.degree
            if e < 0 or base.charpoly != g * Poly([-1, 1]) ** e:
                raise PreconditionError("supplied Q does not have char poly g(x)(x-1)^e")
            seed = {"supplied": True}
    with stage("positivize"):
        U, Qp = positivize(base, theta, config=cfg)
        v = eigenvector_exact(Qp, theta)
    with stage("block"):
        B = build_block(Qp, salem_poly=p)
    with stage("integrality"):
        ic = integrality_exponent(B, cfg.max_power)
    with stage("positivity"):
        pos = positivity_exponent(Qp, theta, ic.k0, entry_floor, cfg.max_power)
    with stage("chart"):
        gk = pos.eigenvalue.charpoly()
        cp = charpoly(pos.QQk)
        if cp != gk * Poly([-chart_value(pos.k), 1]) ** e:
            raise VerificationError("char poly of QQ_k does not match g_k(x)(x-a)^e")
        lam_k = pos.eigenvalue.to_algebraic()
    return SkewPowerCertificate(
        p, g, base, e, seed, U, Qp, theta, v, ic, pos.k, pos.k_bound, pos.QQk, lam_k, pos.eigenvalue, cp,
        entry_floor, cls.verdict, cfg.precision,
    )


def verify_certificate_json(doc):
    """Re-check every invariant of a serialized certificate without re-running any search.

    Returns a list of (check name, passed) pairs.
    """
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception:
            ok = False
        checks.append((name, ok))
        return ok

    p = poly_from_str(doc["polynomial"])
    g = poly_from_str(doc["trace_polynomial"])
    base = matrix_from_json(doc["realization"]["matrix"])
    e = doc["realization"]["e"]
    U = matrix_from_json(doc["rotation"])
    Q = matrix_from_json(doc["Q"])
    Qk = matrix_from_json(doc["Qk"])
    k = doc["k"]
    floor = doc["entry_floor"]
    theta = algebraic_from_json(doc["theta"])
    ic = doc["integrality"]
    check("classification", lambda: classify_salem(p).accepted)
    check("trace polynomial", lambda: trace_polynomial(p) == g)
    check("realization char poly", lambda: charpoly(base) == g * Poly([-1, 1]) ** e)
    check("rotation orthogonal", lambda: RationalRotation(U) is not None)
    check("Q = U base U^T", lambda: mat_mul(mat_mul(U, base), transpose(U)) == Q)
    check("theta largest root of g", lambda: theta == isolate_roots(g)[-1])
    check("block det and char poly", lambda: build_block(Q, salem_poly=p) is not None)
    B = BlockCompanion(as_symmetric(Q))
    check("M^k0 integral", lambda: is_integral(mat_pow(B.entries, ic["k0"])))
    check("k0 minimal", lambda: not any(is_integral(mat_pow(B.entries, j)) for j in range(1, ic["k0"])))
    check("k0 divides order", lambda: ic["order"] % ic["k0"] == 0)
    check("M^order integral", lambda: is_integral(mat_pow(B.entries, ic["order"])))
    check("k multiple of k0", lambda: k % ic["k0"] == 0)
    check("Qk by recursion", lambda: q_sequence(Q, k)[1] == Qk)
    check("Qk by doubling", lambda: qq_fast(Q, k) == Qk)
    check("Qk entries >= floor", lambda: is_integral(Qk) and min(x for r in Qk for x in r) >= floor)
    check("k minimal", lambda: not any(
        is_integral(q) and min(x for r in q for x in r) >= floor
        for q in (q_sequence(Q, j)[1] for j in range(ic["k0"], k, ic["k0"]))))
    K = NumberField(theta)
    vec = [element_from_json(K, c) for c in doc["eigenvector"]]
    check("eigenvector positive", lambda: FieldVector(tuple(vec)).is_positive())
    check("Q v = theta v", lambda: all(
        sum((K(Q[i][j]) * vec[j] for j in range(len(Q))), K.zero) == K.gen * vec[i] for i in range(len(Q))))
    lam = dickson_value(K.gen, k)
    check("Qk v = V_k(theta) v", lambda: all(
        sum((K(Qk[i][j]) * vec[j] for j in range(len(Q))), K.zero) == lam * vec[i] for i in range(len(Q))))
    check("eigenvalue", lambda: algebraic_from_json(doc["eigenvalue"]) == lam.to_algebraic())
    check("char poly chart", lambda: charpoly(Qk) == poly_from_str(doc["char_poly_of_Qk"])
          == lam.charpoly() * Poly([-chart_value(k), 1]) ** e)
    return checks


__all__ = [
    "BlockCompanion",
    "IntegralityCertificate",
    "PositivityResult",
    "SkewPowerCertificate",
    "build_block",
    "chart_value",
    "check_dominance",
    "dickson_value",
    "integral_power_exponent",
    "integrality_exponent",
    "matrix_order_mod",
    "positive_power_exponent",
    "positivity_exponent",
    "q_sequence",
    "qq_fast",
    "salem_certificate",
    "skew_profile",
    "verify_certificate_json",
    "verify_skew",
]
