"""Exact real root isolation (Sturm sequences + dyadic bisection) and algebraic reals."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import PreconditionError
from .poly import Poly


# -- rational interval arithmetic ---------------------------------------------
# Intervals are plain (lo, hi) tuples of Fractions with lo <= hi.

def iv_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def iv_neg(a):
    return (-a[1], -a[0])


def iv_sub(a, b):
    return (a[0] - b[1], a[1] - b[0])


def iv_mul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def iv_scale(a, c):
    return (a[0] * c, a[1] * c) if c >= 0 else (a[1] * c, a[0] * c)


def iv_abs(a):
    if a[0] >= 0:
        return a
    if a[1] <= 0:
        return iv_neg(a)
    return (Fraction(0), max(-a[0], a[1]))


def iv_horner(p, x):
    """Enclosure of p over the interval x (naive Horner)."""
    if p.is_zero():
        return (Fraction(0), Fraction(0))
    acc = (p.coeffs[-1], p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = iv_mul(acc, x)
        acc = (acc[0] + c, acc[1] + c)
    return acc


def sqrt_bounds(q, bits=64):
    """Rational (lo, hi) with lo <= sqrt(q) <= hi, width about 2^-bits."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative")
    scale = 1 << bits
    n = q.numerator * scale * scale
    d = q.denominator
    r = isqrt(n // d)
    lo = Fraction(r, scale)
    hi = Fraction(r + 1, scale)
    return lo, hi


# -- Sturm machinery -------------------------------------------------------------

def sturm_sequence(p):
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        # positive rescaling keeps signs and keeps the numbers small
        r = -r
        seq.append(r * (1 / abs(r.lead)))
    return seq


def _sign_changes(seq, x):
    prev = 0
    changes = 0
    for q in seq:
        v = q(x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


def count_roots(p, lo, hi, seq=None):
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    if seq is None:
        seq = sturm_sequence(p.squarefree_part())
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def count_roots_closed(p, lo, hi, seq=None):
    sf = p.squarefree_part()
    if seq is None:
        seq = sturm_sequence(sf)
    return count_roots(sf, lo, hi, seq) + (1 if sf(lo) == 0 else 0)


def root_bound(p):
    """A power of two strictly exceeding every |root| of p (Cauchy bound)."""
    lead = abs(p.lead)
    m = max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    bound = 1 + m
    b = Fraction(1)
    while b <= bound:
        b *= 2
    return b


def _isolate_squarefree(p):
    """Isolating intervals for the distinct real roots of squarefree p, ascending.

    Returns (lo, hi) pairs; lo == hi marks an exact rational root. For lo < hi
    the root lies strictly inside and p changes sign between the endpoints.
    """
    if p.degree < 1:
        return []
    seq = sturm_sequence(p)
    B = root_bound(p)
    out = []
    stack = [(-B, B, count_roots(p, -B, B, seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_tighten_single(p, lo, hi, seq))
            continue
        mid = (lo + hi) / 2
        left = count_roots(p, lo, mid, seq)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def _tighten_single(p, lo, hi, seq):
    """Turn (lo, hi] holding one root into a sign-change interval or a point."""
    while True:
        if p(hi) == 0:
            return (hi, hi)
        if p(lo) != 0:
            return (lo, hi)
        # lo is a neighbouring root left over from an earlier bisection
        mid = (lo + hi) / 2
        if count_roots(p, mid, hi, seq) == 1:
            lo = mid
        else:
            hi = mid


def isolate_roots(p):
    """All distinct real roots of the nonzero polynomial p, ascending, as AlgebraicReals."""
    if p.is_zero():
        raise PreconditionError("zero polynomial")
    roots = []
    for f, _ in p.factor():
        for lo, hi in _isolate_squarefree(f):
            roots.append(AlgebraicReal(f, lo, hi, _trusted=True))
    # roots of different factors are distinct numbers; shrink until ordered
    _separate(roots)
    roots.sort(key=lambda r: r._lo)
    return roots


def _separate(roots):
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: r._lo)
        for a, b in zip(roots, roots[1:]):
            if a._hi >= b._lo:
                a._bisect()
                b._bisect()
                changed = True


# -- algebraic reals ----------------------------------------------------------

class AlgebraicReal:
    """A real root of an irreducible integer polynomial, pinned by a rational interval.

    ``interval`` is the canonical isolating interval fixed at construction; a
    private cache holds the tightest interval computed so far. The value never
    changes, so the object behaves as immutable.
    """

    __slots__ = ("minpoly", "interval", "_lo", "_hi")

    def __init__(self, minpoly, lo, hi=None, _trusted=False):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        mp = minpoly.primitive()
        if not _trusted:
            if lo > hi:
                raise PreconditionError("empty interval")
            if lo == hi:
                if mp(lo) != 0:
                    raise PreconditionError(f"{lo} is not a root of {mp}")
            elif mp(lo) * mp(hi) >= 0 or count_roots(mp, lo, hi) != 1:
                raise PreconditionError(f"[{lo}, {hi}] does not isolate a root of {mp}")
        if mp.degree == 1 and lo != hi:
            lo = hi = -mp.coeffs[0] / mp.coeffs[1]
        self.minpoly = mp
        self.interval = (lo, hi)
        self._lo, self._hi = lo, hi

    @classmethod
    def rational(cls, q):
        q = Fraction(q)
        return cls(Poly([-q, 1]), q, q, _trusted=True)

    # refinement ---------------------------------------------------------
    @property
    def degree(self):
        return self.minpoly.degree

    def is_rational(self):
        return self.minpoly.degree == 1

    @property
    def width(self):
        return self._hi - self._lo

    def _bisect(self):
        if self._lo == self._hi:
            return
        mid = (self._lo + self._hi) / 2
        v = self.minpoly(mid)
        if v == 0:  # only possible for degree 1, handled at construction
            self._lo = self._hi = mid
        elif (v > 0) == (self.minpoly(self._lo) > 0):
            self._lo = mid
        else:
            self._hi = mid

    def refine(self, width):
        """Current enclosure after bisecting until hi - lo <= width."""
        width = Fraction(width)
        while self._hi - self._lo > width:
            self._bisect()
        return self._lo, self._hi

    def enclosure(self):
        return self._lo, self._hi

    # comparisons -------------------------------------------------------
    def sign(self):
        return self.compare(0)

    def compare(self, other):
        """-1, 0, 1 as self <, ==, > other (a rational or another AlgebraicReal)."""
        if isinstance(other, AlgebraicReal):
            return self._compare_alg(other)
        q = Fraction(other)
        if self.is_rational():
            return (self._lo > q) - (self._lo < q)
        while True:
            if self._lo > q:
                return 1
            if self._hi < q:
                return -1
            self._bisect()

    def _compare_alg(self, other):
        if other.is_rational():
            return self.compare(other._lo)
        if self.is_rational():
            return -other.compare(self._lo)
        same_poly = self.minpoly == other.minpoly
        while True:
            if self._hi < other._lo:
                return -1
            if other._hi < self._lo:
                return 1
            if same_poly:
                lo = min(self._lo, other._lo)
                hi = max(self._hi, other._hi)
                if count_roots_closed(self.minpoly, lo, hi) == 1:
                    return 0
            if self.width >= other.width:
                self._bisect()
            else:
                other._bisect()

    def __eq__(self, other):
        if isinstance(other, (AlgebraicReal, int, Fraction)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.minpoly)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def abs_compare(self, other):
        """Compare |self| with |other| exactly."""
        a = self if self.sign() >= 0 else self.negated()
        b = other if other.sign() >= 0 else other.negated()
        return a.compare(b)

    def negated(self):
        mp = self.minpoly.shift_sign()
        return AlgebraicReal(mp, -self._hi, -self._lo, _trusted=True)

    # presentation ------------------------------------------------------
    def __float__(self):
        lo, hi = self.refine(Fraction(1, 1 << 60) * max(1, abs(self._lo)))
        return float((lo + hi) / 2)

    def decimal(self, digits=12):
        """Midpoint of an enclosure of width < 10^-digits, rounded to ``digits`` places."""
        lo, hi = self.refine(Fraction(1, 10 ** (digits + 1)))
        mid = (lo + hi) / 2
        scaled = mid * 10 ** digits
        n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
        sign = "-" if n < 0 else ""
        n = abs(n)
        whole, frac = divmod(n, 10 ** digits)
        return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"

    def __repr__(self):
        return f"AlgebraicReal({self.minpoly}, ~{float(self):.12g})"


def select_root(poly, enclosure):
    """The unique root of irreducible ``poly`` lying in a shrinking enclosure.

    ``enclosure(k)`` must return a rational interval containing the target value
    with width tending to 0 as k grows.
    """
    candidates = isolate_roots(poly)
    k = 0
    while True:
        lo, hi = enclosure(k)
        live = [r for r in candidates if not (r._hi < lo or r._lo > hi)]
        if not live:
            raise ArithmeticError(f"no root of {poly} in [{lo}, {hi}]")
        if len(live) == 1:
            return live[0]
        for r in live:
            r._bisect()
        k += 1
