"""Thurston's construction: PF data, twist representatives in PSL(2), words and stretch factors.

Q has one row per D curve and one column per C curve; M weights the D curves
and N the C curves. With P = M Q N Q^T and nu its PF eigenvalue, the widths
ell form the PF eigenvector of P and the heights are h = N Q^T ell, which
makes both twists affine. After rescaling, T_C and T_D act on the flat
structure by [[1, 1], [0, 1]] and [[1, 0], [-nu, 1]].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import PreconditionError, VerificationError
from .exact.field import FieldElement, NumberField
from .exact.linalg import charpoly, mat_mul, to_matrix, transpose
from .exact.poly import Poly, reciprocal_lift
from .exact.roots import AlgebraicReal, isolate_roots, sqrt_bounds
from .exact.salem import NOT_SALEM, SalemClassification, classify_salem, trace_polynomial
from .formats import algebraic_to_json, element_to_json, matrix_to_json, poly_to_str, vector_to_json
from .realize import FieldVector, kernel_vector

PSEUDO_ANOSOV = "pseudoAnosov"
PARABOLIC = "parabolic"
ELLIPTIC = "elliptic"


@dataclass(frozen=True)
class TwistWeights:
    N: tuple     # one per C curve (columns of Q)
    M: tuple     # one per D curve (rows of Q)

    def __post_init__(self):
        if any(int(x) != x or x < 1 for x in self.N + self.M):
            raise PreconditionError("twist weights must be positive integers")

    @classmethod
    def unit(cls, rows, cols):
        return cls(tuple([1] * cols), tuple([1] * rows))


@dataclass(frozen=True)
class PFData:
    nu: AlgebraicReal
    field: NumberField
    product: tuple                  # M Q N Q^T
    ell: FieldVector
    h: Optional[FieldVector] = None
    Q: Optional[tuple] = None
    weights: Optional[TwistWeights] = None

    def to_json(self, digits=12):
        doc = {
            "nu": algebraic_to_json(self.nu, digits),
            "product": matrix_to_json(self.product),
            "widths": vector_to_json(self.ell),
        }
        if self.h is not None:
            doc["heights"] = vector_to_json(self.h)
        return doc


def _irreducible_nonnegative(P):
    n = len(P)
    if any(x < 0 for r in P for x in r):
        return False
    reach = [[i == j or P[i][j] > 0 for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    return all(all(r) for r in reach)


def _pf_root(P):
    if not _irreducible_nonnegative(P):
        raise PreconditionError("Perron-Frobenius inapplicable: matrix is not irreducible nonnegative")
    roots = isolate_roots(charpoly(P))
    nu = roots[-1]
    if nu.sign() <= 0:
        raise PreconditionError("Perron-Frobenius eigenvalue is not positive")
    if any(nu.abs_compare(r) < 0 for r in roots[:-1]):
        raise VerificationError("largest real root is not the spectral radius")
    return nu


def pf_data_from_product(P) -> PFData:
    """PF eigenvalue and eigenvector of a supplied product matrix."""
    P = to_matrix(P)
    nu = _pf_root(P)
    ell = kernel_vector(P, nu)
    if not ell.is_positive():
        raise VerificationError("PF eigenvector is not positive")
    return PFData(nu, ell.field, P, ell)


def pf_data(Q, W: TwistWeights | None = None) -> PFData:
    Q = to_matrix(Q)
    rows, cols = len(Q), len(Q[0])
    if any(len(r) != cols for r in Q) or any(x < 0 or x.denominator != 1 for r in Q for x in r):
        raise PreconditionError("Q must be a rectangular nonnegative integer matrix")
    if any(not any(r) for r in Q) or any(not any(c) for c in transpose(Q)):
        raise PreconditionError("every curve must meet the other multicurve: Q has a zero row or column")
    W = W or TwistWeights.unit(rows, cols)
    if len(W.M) != rows or len(W.N) != cols:
        raise PreconditionError("weights do not match the matrix shape")
    MQ = tuple(tuple(W.M[i] * x for x in r) for i, r in enumerate(Q))
    NQt = tuple(tuple(W.N[i] * x for x in r) for i, r in enumerate(transpose(Q)))
    P = mat_mul(MQ, NQt)
    base = pf_data_from_product(P)
    K, ell = base.field, base.ell
    h = FieldVector(tuple(W.N[i] * sum((ell[r] * Q[r][i] for r in range(rows)), K.zero) for i in range(cols)))
    if not h.is_positive():
        raise VerificationError("heights are not positive")
    _check_affine(Q, W, ell, h, K.gen)
    return PFData(base.nu, K, P, ell, h, Q, W)


def _check_affine(Q, W, ell, h, nu):
    """h_i / (n_i sum_r ell_r Q_ri) and ell_j / (m_j sum_s Q_js h_s) are constant (1 and 1/nu)."""
    rows, cols = len(Q), len(Q[0])
    K = nu.field
    a = [h[i] / (W.N[i] * sum((ell[r] * Q[r][i] for r in range(rows)), K.zero)) for i in range(cols)]
    b = [ell[j] / (W.M[j] * sum((h[s] * Q[j][s] for s in range(cols)), K.zero)) for j in range(rows)]
    if any(x != a[0] for x in a) or any(x != b[0] for x in b) or b[0] * nu != 1:
        raise VerificationError("affine conditions fail")
    return a[0], b[0]


def twist_reps(nu, K: NumberField | None = None):
    """[T_C] = [[1, 1], [0, 1]] and [T_D] = [[1, 0], [-nu, 1]] over Q(nu)."""
    if isinstance(nu, AlgebraicReal):
        if nu.sign() <= 0:
            raise PreconditionError("nu must be positive")
        K = K or NumberField(nu)
        v = K.gen
    else:
        v = nu
        K = v.field
    one, zero = K.one, K.zero
    return ((one, one), (zero, one)), ((one, zero), (-v, one))


_TOKEN = re.compile(r"\s*([CDcd])\s*(?:\^\s*)?(\(?\s*[+-]?\d+\s*\)?)?\s*[·*.]?")


def parse_word(text):
    """'CD', 'C^2 D^-1', 'C2·D-3' -> [(letter, exponent)], merging adjacent equal letters."""
    if isinstance(text, (list, tuple)):
        items = [(str(a).upper(), int(b)) for a, b in text]
    else:
        items, pos = [], 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PreconditionError(f"cannot parse word at {text[pos:]!r}")
            exp = int(m.group(2).strip("() ")) if m.group(2) else 1
            items.append((m.group(1).upper(), exp))
            pos = m.end()
    if any(b == 0 for _, b in items):
        raise PreconditionError("exponents must be nonzero")
    out = []
    for a, b in items:
        if out and out[-1][0] == a:
            out[-1] = (a, out[-1][1] + b)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((a, b))
    if not out:
        raise PreconditionError("word is empty")
    return out


def format_word(word):
    return "".join(a if b == 1 else f"{a}^{b}" for a, b in word)


def _mul2(A, B):
    return tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2))


def word_rep(word, K: NumberField):
    nu = K.gen
    one, zero = K.one, K.zero
    R = ((one, zero), (zero, one))
    for a, b in word:
        G = ((one, K(b)), (zero, one)) if a == "C" else ((one, zero), (-nu * b, one))
        R = _mul2(R, G)
    return R


@dataclass(frozen=True)
class PseudoAnosovReport:
    word: str
    nu: AlgebraicReal
    rep: tuple
    trace: FieldElement
    verdict: str
    stretch: Optional[AlgebraicReal]
    trace_field_poly: Poly          # minimal polynomial of |trace| = lambda + 1/lambda

    def to_json(self, digits=12):
        doc = {
            "word": self.word,
            "nu": algebraic_to_json(self.nu, digits),
            "rep": [[element_to_json(x) for x in r] for r in self.rep],
            "trace": element_to_json(self.trace),
            "trace_decimal": _decimal(self.trace, digits),
            "verdict": self.verdict,
            "trace_field_poly": poly_to_str(self.trace_field_poly),
            "stretch": algebraic_to_json(self.stretch, digits) if self.stretch is not None else None,
        }
        return doc


def _decimal(x: FieldElement, digits):
    a = x.to_algebraic()
    return a.decimal(digits)


def stretch_from_trace(tau: AlgebraicReal) -> AlgebraicReal:
    """Larger root of x^2 - tau x + 1 for tau > 2, as an exact algebraic number.

    lambda = f(tau) = (tau + sqrt(tau^2 - 4)) / 2 is increasing, so an enclosure
    of tau maps to one of lambda; the root is picked among the roots of the
    reciprocal lift of tau's minimal polynomial.
    """
    lift = reciprocal_lift(tau.minpoly)
    candidates = isolate_roots(lift)
    k = 0
    while True:
        lo, hi = tau.enclosure()
        if lo <= 2:
            tau._bisect()
            continue
        bits = 32 + 8 * k
        s_lo = sqrt_bounds(lo * lo - 4, bits)[0]
        s_hi = sqrt_bounds(hi * hi - 4, bits)[1]
        e_lo, e_hi = (lo + s_lo) / 2, (hi + s_hi) / 2
        live = [r for r in candidates if not (r._hi < e_lo or r._lo > e_hi)]
        if len(live) == 1:
            lam = live[0]
            break
        if not live:
            raise VerificationError("stretch root selection failed")
        for r in live:
            r._bisect()
        tau._bisect()
        k += 1
    # exact check: lambda + 1/lambda = tau
    K = NumberField(lam)
    s = K.gen + K.gen.inverse()
    if s.minpoly() != tau.minpoly or s.to_algebraic() != tau:
        raise VerificationError("stretch does not satisfy lambda + 1/lambda = |trace|")
    return lam


def classify_word(word, nu, K: NumberField | None = None) -> PseudoAnosovReport:
    w = parse_word(word)
    if isinstance(nu, PFData):
        K, nu = nu.field, nu.nu
    if not isinstance(nu, AlgebraicReal):
        nu = AlgebraicReal.rational(Fraction(nu))
    if nu.sign() <= 0:
        raise PreconditionError("nu must be positive")
    K = K or NumberField(nu)
    R = word_rep(w, K)
    d = R[0][0] * R[1][1] - R[0][1] * R[1][0]
    if d != 1:
        raise VerificationError("word representative does not have determinant 1")
    t = R[0][0] + R[1][1]
    at = abs(t)
    c = at.compare(2)
    verdict = PSEUDO_ANOSOV if c > 0 else PARABOLIC if c == 0 else ELLIPTIC
    tau = at.to_algebraic()
    stretch = stretch_from_trace(tau) if verdict == PSEUDO_ANOSOV else None
    return PseudoAnosovReport(format_word(w), nu, R, t, verdict, stretch, tau.minpoly)


def veech_check(stretch: AlgebraicReal):
    """(all conjugates of lambda + 1/lambda real, minimal polynomial of lambda + 1/lambda)."""
    if stretch.compare(1) <= 0:
        raise PreconditionError("stretch must exceed 1")
    K = NumberField(stretch)
    s = K.gen + K.gen.inverse()
    mp = s.minpoly()
    p = stretch.minpoly
    if p.is_reciprocal() and p.degree % 2 == 0 and p.degree > 0:
        if trace_polynomial(p.monic()).primitive() != mp:
            raise VerificationError("trace polynomial and field minimal polynomial disagree")
    return len(isolate_roots(mp)) == mp.degree, mp


def salem_from_2x2(S) -> SalemClassification:
    """Classify lambda from f(x) = (x^2 - (2 - nu)x + 1)(x^2 - (2 - mu)x + 1), nu > mu the eigenvalues of S.

    The roots of the nu-factor are -lambda and -1/lambda, so lambda is the
    largest root of f(-x).
    """
    S = to_matrix(S)
    if len(S) != 2 or any(len(r) != 2 for r in S) or S[0][1] != S[1][0]:
        raise PreconditionError("S must be a symmetric 2x2 matrix")
    if any(x.denominator != 1 or x < 0 for r in S for x in r):
        raise PreconditionError("S must be a nonnegative integer matrix")
    cp = charpoly(S)
    g = cp.compose(Poly([2, -1]))      # (t - 2 + nu)(t - 2 + mu)
    roots = isolate_roots(cp)
    if len(roots) != 2 or roots[0].sign() <= 0 or cp.derivative().gcd(cp).degree > 0:
        raise PreconditionError("S needs distinct positive eigenvalues nu > mu > 0")
    mu, nu = roots
    f = reciprocal_lift(g)
    if not mu.compare(4) < 0:
        return SalemClassification(NOT_SALEM, reason="small eigenvalue escapes unit-circle window", minpoly=f)
    if not nu.compare(4) > 0:
        return SalemClassification(NOT_SALEM, reason="large eigenvalue gives |2 - nu| <= 2", minpoly=f)
    fm = f.shift_sign()
    lam = isolate_roots(fm)[-1]
    res = classify_salem(lam.minpoly)
    return SalemClassification(res.verdict, res.salem_root, res.reason or f"f(x) = {f}", res.minpoly)


__all__ = [
    "ELLIPTIC",
    "PARABOLIC",
    "PSEUDO_ANOSOV",
    "PFData",
    "PseudoAnosovReport",
    "TwistWeights",
    "classify_word",
    "format_word",
    "parse_word",
    "pf_data",
    "pf_data_from_product",
    "salem_from_2x2",
    "stretch_from_trace",
    "twist_reps",
    "veech_check",
    "word_rep",
]
