"""Exact truncated Laurent series in u^{-1} (and in a second variable v^{-1}).

A ``TruncSeries`` stores finitely many terms ``c_e * u^{-e}`` with exponents
``-2 <= e <= K``.  The order ``K`` is fixed per series and mixing orders is an
error; positive powers are limited to u, u^2, which is all the relation
checkers ever need after clearing denominators.  Coefficients may be ints,
``fractions.Fraction``, or noncommutative elements from :mod:`refleq.freealg`;
all arithmetic is exact, nothing is ever rounded.

Truncation semantics: the product of two series exact to order K has exact
coefficients at order e only when e + (positive powers involved) <= K.  The
relation checkers account for this by building images with slack (order K+1
or K+2) and comparing coefficients up to K only.
"""

from fractions import Fraction
from math import comb

from .errors import ConfigurationError, SingularSeriesError

MIN_EXP = -2  # allow u^2 and u^1 alongside the u^{-1} tail


def _is_zero(c):
    return not c


def _coeff_inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    if isinstance(c, Fraction):
        return 1 / c
    return c.scalar_inverse()


class TruncSeries:
    """Sparse exact series sum_e c_e u^{-e}, -2 <= e <= K."""

    __slots__ = ("K", "c")

    def __init__(self, K, coeffs=None):
        if K < 1:
            raise ConfigurationError("truncation order K must be >= 1")
        self.K = K
        self.c = {}
        if coeffs:
            for e, v in coeffs.items():
                if e < MIN_EXP:
                    raise ConfigurationError(f"exponent u^{-e} outside the supported range")
                if e <= K and not _is_zero(v):
                    self.c[e] = v

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, K, value):
        return cls(K, {0: value})

    @classmethod
    def one(cls, K):
        return cls(K, {0: 1})

    @classmethod
    def u_power(cls, K, e, coeff=1):
        """coeff * u^{-e}."""
        return cls(K, {e: coeff})

    # -- ring operations ----------------------------------------------

    def _check(self, other):
        if self.K != other.K:
            raise ConfigurationError(f"mixed truncation orders {self.K} != {other.K}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.c)
        for e, v in other.c.items():
            s = out.get(e, 0) + v
            if _is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        r = TruncSeries(self.K)
        r.c = out
        return r

    def __neg__(self):
        r = TruncSeries(self.K)
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.rmul_coeff(other)
        self._check(other)
        out = {}
        K = self.K
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                if e > K:
                    continue
                if e < MIN_EXP:
                    raise ConfigurationError("product left the supported Laurent range")
                s = out.get(e, 0) + v1 * v2
                if _is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        r = TruncSeries(K)
        r.c = out
        return r

    def __rmul__(self, other):
        # scalar (or NC coefficient) on the left
        return self.lmul_coeff(other)

    def lmul_coeff(self, coeff):
        r = TruncSeries(self.K)
        if not _is_zero(coeff):
            for e, v in self.c.items():
                s = coeff * v
                if not _is_zero(s):
                    r.c[e] = s
        return r

    def rmul_coeff(self, coeff):
        r = TruncSeries(self.K)
        if not _is_zero(coeff):
            for e, v in self.c.items():
                s = v * coeff
                if not _is_zero(s):
                    r.c[e] = s
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.const(self.K, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.K == other.K and (self - other).is_zero()

    def __hash__(self):
        raise TypeError("TruncSeries is unhashable")

    def is_zero(self):
        return not self.c

    def coeff(self, e):
        return self.c.get(e, 0)

    def upto(self, order):
        """The same series with coefficients beyond `order` discarded.  K unchanged."""
        r = TruncSeries(self.K)
        r.c = {e: v for e, v in self.c.items() if e <= order}
        return r

    def eq_upto(self, other, order):
        self._check(other)
        d = self - other
        return all(e > order for e in d.c)

    # -- the operations holding the relation checks together -----------

    def inv(self):
        """Two-sided inverse up to order K.

        The leading coefficient (smallest exponent present) must be a unit of
        the coefficient ring; the inverse must itself fit in the Laurent range.
        """
        if self.is_zero():
            raise SingularSeriesError("cannot invert the zero series")
        e0 = min(self.c)
        lead = self.c[e0]
        try:
            lead_inv = _coeff_inv(lead)
        except (ZeroDivisionError, ArithmeticError) as exc:
            raise SingularSeriesError(f"leading coefficient {lead!r} is not a unit") from exc
        if -e0 < MIN_EXP or -e0 > self.K:
            raise SingularSeriesError("inverse falls outside the supported Laurent range")
        # self = lead*u^{-e0} * (1 + r) with r of strictly positive order
        t_inv = TruncSeries.u_power(self.K, -e0, lead_inv)
        r = t_inv * self - TruncSeries.one(self.K)
        acc = TruncSeries.one(self.K)
        term = TruncSeries.one(self.K)
        for _ in range(self.K + 2):
            term = -term * r
            if term.is_zero():
                break
            acc = acc + term
        return acc * t_inv

    def negate_var(self):
        """Substitute u -> -u: the coefficient at u^{-e} picks up (-1)^e."""
        r = TruncSeries(self.K)
        r.c = {e: (v if e % 2 == 0 else -v) for e, v in self.c.items()}
        return r

    def reexpand(self, z):
        """Re-expand a series given in powers of (u-z)^{-1} as a series in u^{-1}.

        (u-z)^{-k} = sum_{j>=0} C(k+j-1, j) z^j u^{-k-j}, truncated at K;
        polynomial powers (k < 0) expand by the binomial theorem exactly.
        """
        if not z:
            return self
        K = self.K
        out = {}
        for e, v in self.c.items():
            if e > 0:
                for j in range(K - e + 1):
                    term = v * (comb(e + j - 1, j) * z**j)
                    if _is_zero(term):
                        continue
                    s = out.get(e + j, 0) + term
                    if _is_zero(s):
                        out.pop(e + j, None)
                    else:
                        out[e + j] = s
            elif e == 0:
                s = out.get(0, 0) + v
                if _is_zero(s):
                    out.pop(0, None)
                else:
                    out[0] = s
            else:
                # (u-z)^p with p = -e in {1, 2}
                p = -e
                for t in range(p + 1):
                    term = v * (comb(p, t) * (-z) ** t)
                    if _is_zero(term):
                        continue
                    ee = -(p - t)
                    s = out.get(ee, 0) + term
                    if _is_zero(s):
                        out.pop(ee, None)
                    else:
                        out[ee] = s
        r = TruncSeries(K)
        r.c = out
        return r

    def shift(self, z):
        """Substitute u -> u - z (re-expanding in u^{-1})."""
        return self.reexpand(z)

    def sub_neg_shift(self, z):
        """Substitute u -> -u - z."""
        return self.negate_var().reexpand(-z)

    def map_coeffs(self, fn):
        r = TruncSeries(self.K)
        for e, v in self.c.items():
            w = fn(v)
            if not _is_zero(w):
                r.c[e] = w
        return r

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                parts.append(f"{v}")
            elif e < 0:
                parts.append(f"({v})*u^{-e}")
            else:
                parts.append(f"({v})*u^-{e}")
        return " + ".join(parts)


def geometric(K, z=1):
    """1/(1 - z u^{-1}) = 1 + z u^{-1} + z^2 u^{-2} + ...  (handy in tests)."""
    return TruncSeries(K, {e: z**e for e in range(K + 1)})


class BiTruncSeries:
    """Sparse exact series in two variables, terms c * u^{-e} v^{-f}.

    Only what the cleared two-variable relations need: addition, outer
    products of one-variable series, multiplication by u and v, and
    comparison of coefficients up to a given order in each variable.
    """

    __slots__ = ("K", "c")

    def __init__(self, K, coeffs=None):
        self.K = K
        self.c = {}
        if coeffs:
            for ef, v in coeffs.items():
                if not _is_zero(v):
                    self.c[ef] = v

    @classmethod
    def outer(cls, a, b):
        """a(u) * b(v) with a's coefficients multiplying on the left."""
        if a.K != b.K:
            raise ConfigurationError("mixed truncation orders in outer product")
        r = cls(a.K)
        for e, va in a.c.items():
            for f, vb in b.c.items():
                p = va * vb
                if not _is_zero(p):
                    r.c[(e, f)] = p
        return r

    def __add__(self, other):
        if self.K != other.K:
            raise ConfigurationError("mixed truncation orders")
        out = dict(self.c)
        for ef, v in other.c.items():
            s = out.get(ef, 0) + v
            if _is_zero(s):
                out.pop(ef, None)
            else:
                out[ef] = s
        r = BiTruncSeries(self.K)
        r.c = out
        return r

    def __neg__(self):
        r = BiTruncSeries(self.K)
        r.c = {ef: -v for ef, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        r = BiTruncSeries(self.K)
        for ef, v in self.c.items():
            s = coeff * v
            if not _is_zero(s):
                r.c[ef] = s
        return r

    def mul_u(self, power=1):
        """Multiply by u^power (power >= 0 raises exponents toward u^2)."""
        r = BiTruncSeries(self.K)
        for (e, f), v in self.c.items():
            ee = e - power
            if ee < MIN_EXP:
                raise ConfigurationError("u-multiplication left the Laurent range")
            r.c[(ee, f)] = v
        return r

    def mul_v(self, power=1):
        r = BiTruncSeries(self.K)
        for (e, f), v in self.c.items():
            ff = f - power
            if ff < MIN_EXP:
                raise ConfigurationError("v-multiplication left the Laurent range")
            r.c[(e, ff)] = v
        return r

    def eq_upto(self, other, order):
        """Coefficients agree wherever both exponents are <= order."""
        if self.K != other.K:
            raise ConfigurationError("mixed truncation orders")
        d = self - other
        return all(e > order or f > order for (e, f) in d.c)

    def max_bad(self, other, order):
        """Witness exponent pairs where the two sides disagree (for reports)."""
        d = self - other
        return sorted(ef for ef in d.c if ef[0] <= order and ef[1] <= order)

    def __repr__(self):
        return f"BiTruncSeries({len(self.c)} terms, K={self.K})"
