"""Units of totally real fields and the field-to-stretch-factor pipeline.

A unit u with |sigma_1(u)| > 1 and |sigma_j(u)| < 1 (j >= 2), all absolute
values distinct, gives alpha = u^2: totally positive, alpha > 1, every other
conjugate in (0, 1). Such an alpha is the dominant eigenvalue of a positive
symmetric integral matrix Q (after realizing, rotating and powering), and the
word T_C T_D on the surface built from Q has lambda + 1/lambda = alpha^2 - 2,
which generates the field again.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath
import sympy

from .config import PipelineConfig
from .errors import PreconditionError, SearchExhausted, VerificationError, stage
from .exact.field import FieldElement, NumberField
from .exact.linalg import mat_pow, solve, transpose
from .exact.poly import Poly, format_poly, parse_poly
from .exact.roots import AlgebraicReal, isolate_roots
from .formats import algebraic_to_json, element_to_json, matrix_to_json, poly_to_str
from .realize import RationalSymmetricMatrix, positivize, realize_symmetric
from .skewpower import integral_power_exponent, positive_power_exponent
from .surface import analyze, build_surface
from .thurston import PSEUDO_ANOSOV, classify_word, pf_data, veech_check

iv = mpmath.iv


class TotallyRealField:
    """Q(theta) for a monic irreducible integer polynomial with only real roots.

    ``embeddings`` lists the roots in decreasing order; sigma_1 (the largest) is
    the designated real embedding and ``field`` is Q(sigma_1).
    """

    def __init__(self, defining_poly):
        f = parse_poly(defining_poly) if isinstance(defining_poly, str) else defining_poly
        if f.degree < 1 or not f.is_monic() or not f.is_integral():
            raise PreconditionError(f"{f} must be monic with integer coefficients")
        if not f.is_irreducible():
            raise PreconditionError(f"{f} is reducible")
        roots = isolate_roots(f)
        if len(roots) != f.degree:
            raise PreconditionError(f"{f} is not totally real")
        self.defining_poly = f
        self.embeddings = tuple(reversed(roots))
        self.fields = tuple(NumberField(r) for r in self.embeddings)
        self.field = self.fields[0]

    @property
    def degree(self):
        return self.defining_poly.degree

    def element(self, value):
        if isinstance(value, str):
            value = parse_poly(value.replace("θ", "x"))
        return self.field(value)

    def conjugates(self, x: FieldElement):
        """sigma_i(x) as elements of Q(sigma_i(theta)), i = 1..n."""
        return [F(x.poly) for F in self.fields]

    def __repr__(self):
        return f"TotallyRealField({format_poly(self.defining_poly)})"


def iv_bounds(x):
    """Endpoints of an mpmath interval as plain mpf numbers."""
    lo, hi = x._mpi_
    return mpmath.mpf(lo), mpmath.mpf(hi)


def _is_unit(x: FieldElement):
    mp = x.minpoly()
    return mp.is_monic() and mp.is_integral() and abs(mp[0]) == 1


def _abs_enclosure(c: FieldElement, rel_bits):
    """Rational interval for |c| with relative width below 2^-rel_bits."""
    width = Fraction(1, 1 << 8)
    while True:
        lo, hi = c.enclosure(width)
        if lo > 0 or hi < 0:
            lo, hi = sorted((abs(lo), abs(hi)))
            if (hi - lo) * (1 << rel_bits) <= lo:
                return lo, hi
        width /= 1 << 8


def log_embedding(x: FieldElement, K: TotallyRealField, bits=60):
    """Certified intervals for log|sigma_i(x)|."""
    if x.is_zero():
        raise PreconditionError("log embedding of 0")
    out = []
    saved, iv.prec = iv.prec, bits + 20
    try:
        for c in K.conjugates(x):
            lo, hi = _abs_enclosure(c, bits)
            # outward-rounded interval division keeps the rational endpoints inside
            box = iv.mpf(lo.numerator) / lo.denominator
            box = iv.mpf([box.a, (iv.mpf(hi.numerator) / hi.denominator).b])
            out.append(iv.log(box))
    finally:
        iv.prec = saved
    return out


def _iv_det(rows):
    n = len(rows)
    total = iv.mpf(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        sign = -1 if inversions % 2 else 1
        term = iv.mpf(sign)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


@dataclass(frozen=True)
class UnitSystem:
    K: TotallyRealField
    units: tuple

    @classmethod
    def build(cls, K: TotallyRealField, units):
        """Validate units and normalize each so that sigma_1(u) > 1."""
        out = []
        for u in units:
            u = K.element(u) if not isinstance(u, FieldElement) else u
            if u.is_zero() or not _is_unit(u):
                raise PreconditionError(f"{u} is not an algebraic unit")
            if u.sign() < 0:
                u = -u
            if u.compare(1) < 0:
                u = u.inverse()
            if u.compare(1) == 0:
                raise PreconditionError("unit +-1 is torsion")
            out.append(u)
        if len(out) != K.degree - 1:
            raise PreconditionError(f"need {K.degree - 1} independent units, got {len(out)}")
        system = cls(K, tuple(out))
        system.check_rank()
        return system

    def check_rank(self, bits=60):
        n = self.K.degree
        if n == 1:
            return True
        rows = [log_embedding(u, self.K, bits)[: n - 1] for u in self.units]
        for r, u in zip(rows, self.units):
            full = log_embedding(u, self.K, bits)
            s = sum(full, iv.mpf(0))
            if 0 not in s:
                raise VerificationError("log embedding of a unit does not sum to 0")
        d = _iv_det(rows)
        if 0 in d:
            raise PreconditionError("units are not independent (log regulator minor not certified nonzero)")
        return True


def _squarefree(d):
    return all(e == 1 for e in sympy.factorint(d).values())


def fundamental_unit_quadratic(d) -> FieldElement:
    """Fundamental unit > 1 of Q(sqrt d), in the field generated by sqrt d.

    Continued fraction of omega, the generator of the ring of integers; the
    first convergent p/q with N(p - q omega) = +-1 gives the unit p - q omega'.
    """
    d = int(d)
    if d <= 1 or not _squarefree(d):
        raise PreconditionError(f"d = {d} must be a squarefree integer > 1")
    K = NumberField(isolate_roots(Poly([-d, 0, 1]))[-1])
    r = K.gen
    if d % 4 == 1:
        P, Qd = 1, 2
        w, wbar = (1 + r) / 2, (1 - r) / 2
    else:
        P, Qd = 0, 1
        w, wbar = r, -r
    tr, nm = (w + wbar).rational_value(), (w * wbar).rational_value()
    s = isqrt(d)
    p0, q0, p1, q1 = 1, 0, 0, 1     # convergents p_{-1}/q_{-1}, p_{-2}/q_{-2}
    for _ in range(10_000):
        a = (P + s) // Qd
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        norm = p0 * p0 - p0 * q0 * tr + q0 * q0 * nm
        if abs(norm) == 1:
            eps = p0 - q0 * wbar
            if eps.compare(1) <= 0 or not _is_unit(eps):
                raise VerificationError("continued fraction produced a bad unit")
            return eps
        P = a * Qd - P
        Qd = (d - P * P) // Qd
    raise SearchExhausted("continued fraction did not reach a unit")


def quadratic_units(K: TotallyRealField) -> UnitSystem:
    """Built-in unit system for a real quadratic field given by x^2 + b x + c."""
    if K.degree != 2:
        raise PreconditionError("built-in units exist only for quadratic fields; supply --units")
    c, b = K.defining_poly[0], K.defining_poly[1]
    D = int(b * b - 4 * c)
    core = sympy.factorint(D)
    d = 1
    s = 1
    for p, e in core.items():
        d *= p ** (e % 2)
        s *= p ** (e // 2)
    eps = fundamental_unit_quadratic(d)
    # theta = (-b + s sqrt d) / 2, so sqrt d = (2 theta + b) / s
    a0, a1 = eps.poly[0], eps.poly[1]
    sqrt_d = (2 * K.field.gen + b) / s
    return UnitSystem.build(K, [a0 + a1 * sqrt_d])


@dataclass(frozen=True)
class GeneratorUnit:
    alpha: FieldElement
    conjugate_values: tuple      # AlgebraicReal sigma_i(alpha)
    exponents: tuple             # b_i with u = prod u_i^b_i, alpha = u^2
    log_vector: tuple            # intervals for sum b_i log|sigma(u_i)|

    def to_json(self, digits=12):
        return {
            "alpha": element_to_json(self.alpha),
            "minpoly": poly_to_str(self.alpha.minpoly()),
            "conjugates": [algebraic_to_json(a, digits) for a in self.conjugate_values],
            "exponents": list(self.exponents),
            "log_vector": [[mpmath.nstr(lo, 17), mpmath.nstr(hi, 17)] for lo, hi in map(iv_bounds, self.log_vector)],
        }


def _shells(dim, bound):
    for r in range(1, bound + 1):
        for b in itertools.product(range(-r, r + 1), repeat=dim):
            if max(abs(x) for x in b) == r:
                yield b


def find_alpha(K: TotallyRealField, U: UnitSystem, bound=20) -> GeneratorUnit:
    """Search b in increasing max-norm so that u = prod u_i^b_i has |sigma_1 u| > 1 > |sigma_j u|.

    The conditions are decided exactly on the conjugates rather than on the
    log intervals: log|sigma_1 u| > 0, log|sigma_j u| < 0 and distinct logs.
    """
    n = K.degree
    if n == 1:
        raise PreconditionError("degree-1 field handled by pipeline special case")
    if len(U.units) != n - 1:
        raise PreconditionError("unit system has the wrong rank")
    for b in _shells(n - 1, bound):
        u = K.field.one
        for ui, bi in zip(U.units, b):
            u = u * ui ** bi
        conj = [abs(c) for c in K.conjugates(u)]
        if conj[0].compare(1) <= 0 or any(c.compare(1) >= 0 for c in conj[1:]):
            continue
        vals = [c.to_algebraic() for c in conj]
        if len(set(vals)) != n:
            continue
        alpha = u * u
        vec = log_embedding(u, K)
        s = sum(vec, iv.mpf(0))
        if 0 not in s:
            raise VerificationError("unit log vector does not sum to 0")
        gu = GeneratorUnit(alpha, tuple(c.to_algebraic() for c in K.conjugates(alpha)), b, tuple(vec))
        _check_generator(K, gu)
        return gu
    raise SearchExhausted(f"no exponent vector with max-norm <= {bound}; raise the bound")


def _check_generator(K, gu: GeneratorUnit):
    vals = gu.conjugate_values
    if vals[0].compare(1) <= 0:
        raise VerificationError("alpha <= 1")
    if any(v.sign() <= 0 or v.compare(1) >= 0 for v in vals[1:]):
        raise VerificationError("a conjugate of alpha leaves (0, 1)")
    if len(set(vals)) != K.degree:
        raise VerificationError("conjugates of alpha are not distinct")
    mp = gu.alpha.minpoly()
    if abs(mp[0]) != 1 or not mp.is_monic():
        raise VerificationError("alpha is not a unit")
    for m in range(1, 5):
        if (gu.alpha ** m).minpoly().degree != K.degree:
            raise VerificationError(f"alpha^{m} does not generate the field")


def field_equality(K: TotallyRealField, tau_K: FieldElement, tau: AlgebraicReal):
    """Q(tau) = K, given tau both as an element of K and as an algebraic number from elsewhere.

    Writes theta as a polynomial in tau (linear algebra in K), then checks in
    Q(tau) that the defining polynomial vanishes there and that the element
    is the designated root sigma_1.
    """
    n = K.degree
    mp = tau_K.minpoly()
    if mp != tau.minpoly or tau_K.to_algebraic() != tau:
        return False, "the two computations of lambda + 1/lambda disagree"
    if mp.degree != n:
        return False, f"degree {mp.degree} != {n}"
    powers = [tau_K ** i for i in range(n)]
    A = transpose([tuple(p.poly[j] for j in range(n)) for p in powers])
    coeffs = solve(A, tuple(K.field.gen.poly[j] for j in range(n)))
    L = NumberField(tau)
    theta_in_L = L.from_coeffs(list(coeffs))
    f = K.defining_poly
    val = L.zero
    for c in reversed(f.coeffs):
        val = val * theta_in_L + c
    if not val.is_zero():
        return False, "defining polynomial has no root in Q(lambda + 1/lambda)"
    if theta_in_L.to_algebraic() != K.embeddings[0]:
        return False, "root found is not the designated embedding"
    return True, "theta = " + format_poly(Poly(list(coeffs)), "τ")


@dataclass
class FieldPipelineReport:
    K: TotallyRealField
    doc: dict
    field_equal: bool

    def to_json(self):
        return self.doc


def _normalize_above_two(alpha: FieldElement):
    m, beta = 1, alpha
    while beta.compare(2) <= 0:
        m += 1
        beta = beta * alpha
    return m, beta


def theoremB_pipeline(K, U: UnitSystem | None = None, config: PipelineConfig | None = None, rational_c=3):
    cfg = config or PipelineConfig()
    K = K if isinstance(K, TotallyRealField) else TotallyRealField(K)
    n = K.degree
    doc = {"kind": "field-pipeline", "field": poly_to_str(K.defining_poly), "degree": n}
    if n == 1:
        with stage("rational-field"):
            if rational_c < 3:
                raise PreconditionError("rational special case needs c >= 3")
            Q = ((Fraction(rational_c),),)
            doc["special_case"] = "degree-1 field: 1x1 matrix, unit machinery bypassed"
            beta_alg = AlgebraicReal.rational(rational_c)
            tau_K = None
            details = {}
    else:
        with stage("units"):
            U = U or quadratic_units(K)
            doc["units"] = [element_to_json(u) for u in U.units]
        with stage("alpha"):
            gu = find_alpha(K, U)
            m, beta = _normalize_above_two(gu.alpha)
            doc["alpha"] = gu.to_json(cfg.precision)
            doc["alpha_power"] = m
        with stage("realize"):
            beta_alg = beta.to_algebraic()
            real = realize_symmetric(beta.minpoly(), config=cfg)
        with stage("positivize"):
            _, B = positivize(real.matrix, beta_alg, config=cfg)
        with stage("integrality"):
            ic = integral_power_exponent(B.entries, cfg.max_power)
            C = RationalSymmetricMatrix(mat_pow(B.entries, ic.k0))
            gamma = beta ** ic.k0
        with stage("positivity"):
            k, P, k_bound = positive_power_exponent(C, gamma.to_algebraic(), cfg.entry_floor, cfg.max_power)
            Q = P
            final = gamma ** k
        details = {
            "realization": {"matrix": matrix_to_json(real.matrix.entries), "e": real.e, "seed": real.seed},
            "rotated": matrix_to_json(B.entries),
            "integrality_exponent": ic.k0,
            "integrality": ic.to_json(),
            "positivity_exponent": k,
            "positivity_bound": k_bound,
            "dominant_eigenvalue": algebraic_to_json(final.to_algebraic(), cfg.precision),
        }
        tau_K = final * final - 2
    doc.update(details)
    doc["Q"] = matrix_to_json(Q)
    with stage("surface"):
        surf = analyze(build_surface(Q))
        doc["surface"] = surf.to_json()
        if tuple(tuple(Fraction(x) for x in r) for r in surf.intersection) != tuple(tuple(Fraction(x) for x in r) for r in Q):
            raise VerificationError("surface does not recover Q")
    with stage("thurston"):
        pf = pf_data(Q)
        rep = classify_word("CD", pf)
        if rep.verdict != PSEUDO_ANOSOV:
            raise VerificationError("T_C T_D is not pseudo-Anosov")
        ok, tf = veech_check(rep.stretch)
        doc["thurston"] = rep.to_json(cfg.precision)
        doc["veech"] = {"passed": ok, "trace_field_poly": poly_to_str(tf)}
    with stage("field-equality"):
        tau = abs(rep.trace).to_algebraic()
        if tau_K is None:
            equal = tau.is_rational() and tf.degree == 1
            why = "rational"
        else:
            equal, why = field_equality(K, tau_K, tau)
        doc["field_equality"] = {"passed": bool(equal), "detail": why,
                                 "lambda_plus_inverse": algebraic_to_json(tau, cfg.precision)}
    return FieldPipelineReport(K, doc, bool(equal))


__all__ = [
    "FieldPipelineReport",
    "GeneratorUnit",
    "TotallyRealField",
    "UnitSystem",
    "field_equality",
    "find_alpha",
    "fundamental_unit_quadratic",
    "iv_bounds",
    "log_embedding",
    "quadratic_units",
    "theoremB_pipeline",
]
