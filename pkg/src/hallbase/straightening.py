"""Normal ordering of products of Kronecker PBW generators.

Internally a monomial is a *word*: a sorted tuple of letters, each letter a
sort key

    P_n  -> (0, n)     preprojective generator E_(n+1, n)
    D_k  -> (1, k)     imaginary generator E_(k delta)
    I_n  -> (2, -n)    preinjective generator E_(n, n+1)

so that sorted order is the PBW order.  Words use plain powers; the divided
powers of the basis are restored when converting back to PBW indices.
"""

from functools import lru_cache
import threading

from .exact_arith import (
    LaurentPoly, RationalFunction, ONE, ZERO, qint, qfactorial, as_rf,
)
from .kronecker_model import PBWIndex, DimVector, weight

__all__ = [
    "AlgebraElement", "basis_element", "multiply", "e_tilde", "monomial_E",
    "monomial_of_index", "unit", "generator", "pbw_pair_coefficients",
    "coprime_form_pairs",
]

_Q = LaurentPoly.monomial(2)


def _qpow(k):
    return LaurentPoly.monomial(2 * k)


def _qint_q(k):
    """1 + q + ... + q^(k-1) written in v."""
    return LaurentPoly({2 * i: 1 for i in range(k)})


@lru_cache(maxsize=None)
def coprime_form_pairs(d1, d2):
    """Number of pairs (f, g) of nonzero binary forms of degrees d1, d2 with no
    common factor, as a polynomial in q (expressed in v)."""
    total = (_qpow(d1 + 1) - 1) * (_qpow(d2 + 1) - 1)
    for k in range(1, min(d1, d2) + 1):
        total = total - _qint_q(k + 1) * coprime_form_pairs(d1 - k, d2 - k)
    return total


@lru_cache(maxsize=None)
def pbw_pair_coefficients(r):
    """Coefficients c_h, 0 <= h <= r//2, with

        P_(m+r) * P_m = sum_h c_h * P_(m+h) * P_(m+r-h)      (plain powers)

    independent of m.  Derived from the line-bundle picture: extensions of
    O(m+r) by O(m) with middle term O(m+h) + O(m+r-h) are counted by coprime
    pairs of forms of degrees (h, r-h)."""
    out = []
    for h in range(r // 2 + 1):
        n1 = coprime_form_pairs(h, r - h)
        if h == 0:
            n1 = n1 + (_Q - 1)
        if r - h == 0:
            n1 = n1 + (_Q - 1)
        g = n1.divmod_exact(_Q - 1)
        assert g is not None
        a, b = h, r - h
        c = g.shift(-r + a - b)
        if a == b:
            c2 = c.divmod_exact(_Q + 1)
            if c2 is None:
                raise ArithmeticError("non-integral square coefficient at r=%d" % r)
            c = c2
        out.append(c)
    return tuple(out)


def P(n):
    return (0, n)


def D(k):
    return (1, k)


def I(n):
    return (2, -n)


@lru_cache(maxsize=None)
def _etilde_words(n):
    """Words-with-coefficients of the D-polynomial for the modified generator."""
    out = {(D(n),): qint(n)}
    for s in range(1, n):
        for w, c in _etilde_words(s).items():
            key = tuple(sorted(w + (D(n - s),)))
            out[key] = out.get(key, ZERO) - c.shift(s - n)
    return {w: c for w, c in out.items() if c}


def _add(acc, word, c):
    v = acc.get(word)
    v = c if v is None else v + c
    if v:
        acc[word] = v
    else:
        acc.pop(word, None)


@lru_cache(maxsize=None)
def _rewrite(x, g):
    """x * g for letters x > g, as a dict word -> coefficient (words normal)."""
    tx, ty = x[0], g[0]
    out = {}
    if tx == 0 and ty == 0:
        n, m = x[1], g[1]
        for h, c in enumerate(pbw_pair_coefficients(n - m)):
            _add(out, (P(m + h), P(n - h)), c)
    elif tx == 1 and ty == 0:
        k, m = x[1], g[1]
        for j in range(k + 1):
            w = (P(m + k - j),) + ((D(j),) if j else ())
            _add(out, w, qint(k + 1 - j))
    elif tx == 1 and ty == 1:
        _add(out, (g, x), ONE)
    elif tx == 2 and ty == 0:
        r, s = -x[1], g[1]
        _add(out, (g, x), LaurentPoly.monomial(-2))
        for w, c in _etilde_words(r + s + 1).items():
            _add(out, w, c)
    elif tx == 2 and ty == 1:
        m, k = -x[1], g[1]
        for j in range(k + 1):
            w = ((D(j),) if j else ()) + (I(m + k - j),)
            _add(out, w, qint(k + 1 - j))
    elif tx == 2 and ty == 2:
        m, n = -x[1], -g[1]
        # I_m * I_n with m < n
        for h, c in enumerate(pbw_pair_coefficients(n - m)):
            _add(out, (I(n - h), I(m + h)), c)
    else:
        raise AssertionError("letters already ordered: %r %r" % (x, g))
    return out


_lock = threading.Lock()
_RIGHT = {}


def _right_mul(word, g):
    """word * g with word normal; returns dict of normal words."""
    if not word or word[-1] <= g:
        return {word + (g,): ONE}
    key = (word, g)
    hit = _RIGHT.get(key)
    if hit is not None:
        return hit
    prefix = word[:-1]
    out = {}
    for rw, c in _rewrite(word[-1], g).items():
        part = {prefix: c}
        for letter in rw:
            nxt = {}
            for w, cw in part.items():
                for w2, c2 in _right_mul(w, letter).items():
                    _add(nxt, w2, cw * c2)
            part = nxt
        for w, cw in part.items():
            _add(out, w, cw)
    with _lock:
        _RIGHT.setdefault(key, out)
    return out


@lru_cache(maxsize=None)
def _mul_words(a, b):
    part = {a: ONE}
    for letter in b:
        nxt = {}
        for w, cw in part.items():
            for w2, c2 in _right_mul(w, letter).items():
                _add(nxt, w2, cw * c2)
        part = nxt
    return part


def _index_to_word(c):
    w = []
    for n, k in c.prep:
        w.extend([P(n)] * k)
    w.extend(D(k) for k in c.im)
    for n, k in c.prei:
        w.extend([I(n)] * k)
    return tuple(sorted(w))


def _word_to_index(w):
    prep, im, prei = {}, [], {}
    for t, n in w:
        if t == 0:
            prep[n] = prep.get(n, 0) + 1
        elif t == 1:
            im.append(n)
        else:
            prei[-n] = prei.get(-n, 0) + 1
    return PBWIndex(prep, im, prei)


@lru_cache(maxsize=None)
def _divided_factor(c):
    """prod [k]! over the real multiplicities: word = factor * E^c."""
    f = ONE
    for _, k in c.prep + c.prei:
        f = f * qfactorial(k)
    return f


@lru_cache(maxsize=None)
def _basis_product(c1, c2):
    raw = _mul_words(_index_to_word(c1), _index_to_word(c2))
    den = _divided_factor(c1) * _divided_factor(c2)
    out = {}
    for w, coef in raw.items():
        c = _word_to_index(w)
        num = coef * _divided_factor(c)
        exact = num.divmod_exact(den)
        out[c] = RationalFunction(exact) if exact is not None else RationalFunction(num, den)
    return out


class AlgebraElement:
    """Finite sum of PBW basis elements with coefficients in Q(v)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for c, a in terms.items():
                a = as_rf(a)
                if a:
                    t[c] = t[c] + a if c in t else a
                    if not t[c]:
                        del t[c]
        self.terms = t

    def __add__(self, other):
        out = dict(self.terms)
        for c, a in other.terms.items():
            s = out[c] + a if c in out else a
            if s:
                out[c] = s
            else:
                out.pop(c, None)
        return AlgebraElement._raw(out)

    def __neg__(self):
        return AlgebraElement._raw({c: -a for c, a in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_rf(s)
        if not s:
            return AlgebraElement()
        return AlgebraElement._raw({c: a * s for c, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    @classmethod
    def _raw(cls, t):
        obj = cls.__new__(cls)
        obj.terms = t
        return obj

    def coeff(self, c):
        return self.terms.get(c, RationalFunction(0))

    def is_zero(self):
        return not self.terms

    def weights(self):
        return {weight(c) for c in self.terms}

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].serialize())

    def to_json(self):
        return {"terms": [{"index": c.to_json(), "coeff": a.to_json()} for c, a in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj):
        return cls({PBWIndex.from_json(t["index"]): RationalFunction.from_json(t["coeff"]) for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*[%s]" % (a, c.shorthand()) for c, a in self.sorted_terms())


def basis_element(c):
    return AlgebraElement._raw({c: RationalFunction(ONE)})


def unit():
    return basis_element(PBWIndex())


def generator(kind, n):
    """Single generator: kind 'P' (E_(n+1,n)), 'D' (E_(n delta)) or 'I' (E_(n,n+1))."""
    if kind == "P":
        return basis_element(PBWIndex({n: 1}))
    if kind == "I":
        return basis_element(PBWIndex(None, (), {n: 1}))
    if kind == "D":
        return basis_element(PBWIndex(None, (n,)))
    raise ValueError("unknown generator kind %r" % kind)


def multiply(x, y):
    out = {}
    for c1, a1 in x.terms.items():
        for c2, a2 in y.terms.items():
            a = a1 * a2
            for c, b in _basis_product(c1, c2).items():
                s = out[c] + a * b if c in out else a * b
                if s:
                    out[c] = s
                else:
                    out.pop(c, None)
    return AlgebraElement._raw(out)


def e_tilde(n):
    if n < 1:
        raise ValueError("e_tilde needs n >= 1")
    return AlgebraElement({_word_to_index(w): c for w, c in _etilde_words(n).items()})


@lru_cache(maxsize=None)
def _monomial_E(d1, d2):
    left = basis_element(PBWIndex(None, (), {0: d2})) if d2 else unit()
    right = basis_element(PBWIndex({0: d1})) if d1 else unit()
    return multiply(left, right)


def monomial_E(d):
    d = d if isinstance(d, DimVector) else DimVector(*d)
    return _monomial_E(d.d1, d.d2)


@lru_cache(maxsize=None)
def _monomial_of_index(c):
    out = unit()
    for n, k in c.prep:
        out = multiply(out, monomial_E((k * (n + 1), k * n)))
    for w in c.im:
        out = multiply(out, monomial_E((w, w)))
    for n, k in sorted(c.prei, reverse=True):
        out = multiply(out, monomial_E((k * n, k * (n + 1))))
    return out


def monomial_of_index(c):
    return _monomial_of_index(c)
