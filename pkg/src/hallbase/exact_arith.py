"""Exact scalars: Laurent polynomials in v, rational functions in v, quantum
integers, the bar involution and evaluation at v = sqrt(q).

Coefficients are Python ints or ``fractions.Fraction``; nothing here ever
touches a float.
"""

from fractions import Fraction
from math import isqrt
import json

__all__ = [
    "LaurentPoly", "RationalFunction", "Surd", "V", "ONE", "ZERO",
    "qint", "qfactorial", "qbinom", "gauss_binom_q", "bar",
    "specialize_sqrt", "specialize_surd", "congruent_mod_vinv", "as_rf", "q_power",
]

_EXP_LIMIT = 1 << 31


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, bool):
        return int(c)
    return c


def _parse_coeff(s):
    if "/" in s:
        return _norm_coeff(Fraction(s))
    return int(s)


def _fmt_coeff(c):
    if isinstance(c, Fraction):
        return "%d/%d" % (c.numerator, c.denominator)
    return str(c)


class LaurentPoly:
    """Finite sum of c_k v^k with rational c_k.  Immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, a in items:
                e = int(e)
                if not -_EXP_LIMIT < e < _EXP_LIMIT:
                    raise OverflowError("exponent %d out of range" % e)
                a = _norm_coeff(a)
                if a:
                    a = _norm_coeff(c.get(e, 0) + a)
                    if a:
                        c[e] = a
                    else:
                        c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, a):
        a = _norm_coeff(a)
        return cls._raw({0: a} if a else {})

    @classmethod
    def monomial(cls, k, a=1):
        a = _norm_coeff(a)
        return cls._raw({int(k): a} if a else {})

    # -- inspection
    def items(self):
        return sorted(self._c.items())

    def coeff(self, k):
        return self._c.get(k, 0)

    def is_zero(self):
        return not self._c

    def is_monomial(self):
        return len(self._c) == 1

    def max_deg(self):
        return max(self._c) if self._c else None

    def min_deg(self):
        return min(self._c) if self._c else None

    def is_integral(self):
        return all(isinstance(a, int) for a in self._c.values())

    def constant(self):
        return self._c.get(0, 0)

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            s = _norm_coeff(c.get(e, 0) + a)
            if s:
                c[e] = s
            else:
                del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _norm_coeff(other)
            if not other:
                return ZERO
            return LaurentPoly._raw({e: _norm_coeff(a * other) for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        c = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly._raw({e: _norm_coeff(a) for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if self.is_monomial():
                (e, a), = self._c.items()
                return LaurentPoly.monomial(e * n, Fraction(1, 1) / Fraction(a) ** (-n))
            raise ValueError("negative power of a non-monomial")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        """Multiply by v^k."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self):
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def subs_power(self, m):
        """Substitute v -> v^m."""
        return LaurentPoly._raw({e * m: a for e, a in self._c.items()})

    def divmod_exact(self, other):
        """Return self/other if the division is exact in Q[v, 1/v], else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        if other.is_monomial():
            (e, a), = other._c.items()
            return LaurentPoly._raw({k - e: _norm_coeff(Fraction(b) / a) for k, b in self._c.items()})
        num = _to_poly(self)
        den = _to_poly(other)
        q, r = _poly_divmod(num[1], den[1])
        if any(r):
            return None
        return _from_poly(q, num[0] - den[0])

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == LaurentPoly.const(other)._c
        if isinstance(other, RationalFunction):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __call__(self, x):
        total = 0
        for e, a in self._c.items():
            total += a * (Fraction(x) ** e)
        return _norm_coeff(total)

    # -- I/O
    def to_json(self):
        return {str(e): _fmt_coeff(a) for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj):
        return cls({int(k): _parse_coeff(str(s)) for k, s in obj.items()})

    def __repr__(self):
        return "LaurentPoly(%s)" % json.dumps(self.to_json())

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "v"
            else:
                mono = "v^%d" % e
            if mono and a == 1:
                s = mono
            elif mono and a == -1:
                s = "-" + mono
            elif mono:
                s = "%s*%s" % (_fmt_coeff(a) if not isinstance(a, Fraction) else "(%s)" % _fmt_coeff(a), mono)
            else:
                s = _fmt_coeff(a)
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
V = LaurentPoly.monomial(1)


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient lists, ascending degree)

def _to_poly(f):
    lo = f.min_deg()
    hi = f.max_deg()
    return lo, [Fraction(f.coeff(k)) for k in range(lo, hi + 1)]


def _from_poly(coeffs, shift=0):
    return LaurentPoly({i + shift: a for i, a in enumerate(coeffs) if a})


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                r[i + j] -= c * bj
    return _trim(q), _trim(r[:len(b) - 1])


def _poly_gcd(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [x / lead for x in a]


# ---------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(v) stored as num/den in canonical reduced form.

    The denominator is a polynomial in v with nonzero constant term and
    leading coefficient 1; every power of v lives in the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if den is None:
            den = ONE
        elif not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._hash = None
        if _reduced or den == ONE:
            self.num, self.den = num, den
            return
        self.num, self.den = _reduce(num, den)

    @classmethod
    def of(cls, x):
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    def is_laurent(self):
        return self.den == ONE

    def as_laurent(self):
        if self.den != ONE:
            raise ValueError("not a Laurent polynomial: %s" % self)
        return self.num

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == ONE and other.den == ONE:
            return RationalFunction(self.num + other.num, _reduced=True)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == ONE and other.den == ONE:
            return RationalFunction(self.num * other.num, _reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction(ONE)
        for _ in range(n):
            out = out * self
        return out

    def bar(self):
        return RationalFunction(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(LaurentPoly.from_json(obj["num"]), LaurentPoly.from_json(obj["den"]))

    def __repr__(self):
        return "RationalFunction(%s)" % json.dumps(self.to_json())

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RationalFunction(x)
    return NotImplemented


def as_rf(x):
    """Coerce ints, Fractions and Laurent polynomials to RationalFunction."""
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError("cannot coerce %r" % (x,))
    return out


def _reduce(num, den):
    if num.is_zero():
        return ZERO, ONE
    lo = den.min_deg()
    den = den.shift(-lo)
    num = num.shift(-lo)
    if den.is_monomial():
        a = den.constant()
        return num * (Fraction(1) / a), ONE
    nlo, npoly = _to_poly(num)
    _, dpoly = _to_poly(den)
    g = _poly_gcd(npoly, dpoly)
    if len(g) > 1:
        npoly, r1 = _poly_divmod(npoly, g)
        dpoly, r2 = _poly_divmod(dpoly, g)
        assert not r1 and not r2
    lead = dpoly[-1]
    npoly = [a / lead for a in npoly]
    dpoly = [a / lead for a in dpoly]
    return _from_poly(npoly, nlo), _from_poly(dpoly)


# ---------------------------------------------------------------------------

def qint(n):
    """[n] = v^(n-1) + v^(n-3) + ... + v^(1-n); [0] = 0."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


def qfactorial(n):
    out = ONE
    for r in range(1, n + 1):
        out = out * qint(r)
    return out


_QBINOM = {}


def qbinom(n, k):
    """Quantum binomial [n choose k] as a Laurent polynomial."""
    if k < 0 or k > n:
        raise ValueError("qbinom needs 0 <= k <= n, got (%d, %d)" % (n, k))
    key = (n, k)
    hit = _QBINOM.get(key)
    if hit is not None:
        return hit
    if k == 0 or k == n:
        out = ONE
    else:
        # [n,k] = v^(n-k) [n-1,k-1] + v^(-k) [n-1,k]
        out = qbinom(n - 1, k - 1).shift(n - k) + qbinom(n - 1, k).shift(-k)
    _QBINOM[key] = out
    return out


def q_power(k):
    """q^k written in v (q = v^2)."""
    return LaurentPoly.monomial(2 * k)


def gauss_binom_q(n, k):
    """Ordinary Gaussian binomial in q, expressed in v with q = v^2."""
    if k < 0 or k > n:
        return ZERO
    return qbinom(n, k).shift(k * (n - k))


def bar(f):
    """The involution v -> 1/v."""
    if isinstance(f, (int, Fraction)):
        return RationalFunction(f)
    return f.bar()


def congruent_mod_vinv(f, g):
    """True iff f - g lies in v^-1 Q[[v^-1]] (as a rational function)."""
    h = as_rf(f) - as_rf(g)
    if h.is_zero():
        return True
    return h.num.max_deg() < h.den.max_deg()


# ---------------------------------------------------------------------------

class Surd:
    """a + b*sqrt(q) with rational a, b.  For square q the b part is folded in."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b=0, q=2):
        a = Fraction(a)
        b = Fraction(b)
        r = isqrt(q)
        if r * r == q and b:
            a += b * r
            b = Fraction(0)
        self.a, self.b, self.q = a, b, q

    def _lift(self, other):
        if isinstance(other, Surd):
            if other.q != self.q:
                raise ValueError("mixing evaluations at q=%d and q=%d" % (self.q, other.q))
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Surd(self.a + other.a, self.b + other.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Surd(self.a * other.a + self.q * self.b * other.b,
                    self.a * other.b + self.b * other.a, self.q)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.q * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("non-invertible element of Q(sqrt %d)" % self.q)
        return Surd(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def pair(self):
        return (self.a, self.b)

    def __repr__(self):
        return "Surd(%s, %s, q=%d)" % (self.a, self.b, self.q)


def _eval_laurent(f, q):
    total = Surd(0, 0, q)
    for e, c in f.items():
        k, odd = divmod(e, 2)
        scale = Fraction(q) ** k
        total = total + (Surd(0, c * scale, q) if odd else Surd(c * scale, 0, q))
    return total


def specialize_sqrt(f, q):
    """Evaluate f at v = sqrt(q); returns (a, b) meaning a + b*sqrt(q)."""
    return specialize_surd(f, q).pair()


def specialize_surd(f, q):
    f = as_rf(f)
    num = _eval_laurent(f.num, q)
    den = _eval_laurent(f.den, q)
    if not den:
        raise ZeroDivisionError("denominator vanishes at v = sqrt(%d)" % q)
    return num / den
