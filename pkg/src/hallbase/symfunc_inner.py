"""Green's inner product on the Kronecker composition algebra.

The imaginary part E_{k delta} <-> h_k is a polynomial ring, so symmetric
function bases (h, p, Schur) transport to it.  Inner products of imaginary
elements are computed by summing over strata of regular modules: a regular
module is a direct sum over closed points x of P^1 of nilpotent modules of
type lambda_x over a discrete valuation ring with residue field F_{q^e(x)}.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .exact_arith import (
    LaurentPoly, RationalFunction, ONE, ZERO, as_rf, gauss_binom_q, congruent_mod_vinv,
)
from .kronecker_model import PBWIndex, DimVector, partitions, weight, order_key, geometric_less, Order
from . import straightening as st
from .bar_canonical import BasisFamily, canonical_basis, mat_mul, TriangularityError

__all__ = [
    "h_mul", "schur_in_h", "newton_p_in_h", "p_product_in_h", "z_value",
    "kostka", "Stratum", "regular_strata", "point_count", "a_partition",
    "end_partition", "submodule_count", "imag_gram", "imag_gram_closed",
    "real_inner", "pbw_gram", "e_prime", "e_prime_newton", "schur_pbw_e",
    "canonical_prime", "inner", "imag_element", "gram_of", "leading_class",
]

_Q = LaurentPoly.monomial(2)


def _qp(k):
    return LaurentPoly.monomial(2 * k)


# -- symmetric functions in the h alphabet ---------------------------------------
# an expression is {partition: Fraction}, partition a weakly decreasing tuple

def _merge(a, b):
    return tuple(sorted(a + b, reverse=True))


def h_mul(x, y):
    out = {}
    for a, c in x.items():
        for b, d in y.items():
            k = _merge(a, b)
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def _h_add(x, y, s=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def _h(k):
    if k < 0:
        return {}
    return {((k,) if k else ()): Fraction(1)}


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, ln = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def _schur(lam):
    n = len(lam)
    out = {}
    for p in permutations(range(n)):
        term = {(): Fraction(_perm_sign(p))}
        for i in range(n):
            term = h_mul(term, _h(lam[i] - i + p[i]))
            if not term:
                break
        out = _h_add(out, term)
    return out


def schur_in_h(lam):
    """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j})."""
    return dict(_schur(tuple(lam)))


@lru_cache(maxsize=None)
def _newton(n):
    out = {(n,): Fraction(n)}
    for k in range(1, n):
        out = _h_add(out, h_mul(_h(k), _newton(n - k)), -1)
    return out


def newton_p_in_h(n):
    """p_n = n h_n - sum_{k<n} h_k p_{n-k}."""
    if n < 1:
        raise ValueError("power sums start at 1")
    return dict(_newton(n))


def p_product_in_h(w):
    out = {(): Fraction(1)}
    for part in w:
        out = h_mul(out, _newton(part))
    return out


def z_value(lam):
    out = 1
    for i in set(lam):
        r = lam.count(i)
        out *= i ** r * factorial(r)
    return out


def _ssyt_count(shape, content):
    """Semistandard tableaux of the given shape and content (Kostka number)."""
    shape = list(shape)
    total = sum(shape)
    if total != sum(content):
        return 0

    def rec(filled, k):
        # filled: current inner shape after placing values < k
        if k == len(content):
            return 1 if filled == shape else 0
        # place content[k] copies of k as a horizontal strip
        return sum(rec(new, k + 1) for new in _horizontal_strips(filled, shape, content[k]))

    return rec([0] * len(shape), 0)


def _horizontal_strips(inner, outer, size):
    n = len(outer)

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                yield list(cur)
            return
        lo = inner[i]
        hi = outer[i] if i == 0 else min(outer[i], inner[i - 1])
        for v in range(lo, min(hi, lo + left) + 1):
            cur.append(v)
            yield from rec(i + 1, left - (v - lo), cur)
            cur.pop()

    return rec(0, size, [])


def kostka(lam, mu):
    return _ssyt_count(tuple(lam), tuple(mu))


# -- regular strata ----------------------------------------------------------------

def _mobius(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


@lru_cache(maxsize=None)
def point_count(e):
    """Closed points of degree e on P^1 over F_q, as a polynomial in q (in v)."""
    if e == 1:
        return _Q + 1
    acc = ZERO
    for d in range(1, e + 1):
        if e % d == 0:
            acc = acc + LaurentPoly.monomial(2 * d, _mobius(e // d))
    return acc * Fraction(1, e)


def _n_of(lam):
    return sum(i * x for i, x in enumerate(lam))


def _conj(lam):
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0])) if lam else ()


def end_partition(lam):
    """dim End of the nilpotent module of type lam over its residue field."""
    return sum(x * x for x in _conj(lam))


def a_partition(lam, e=1):
    """|Aut| of the nilpotent module of type lam over a DVR with residue field F_{q^e}."""
    Q = e
    out = LaurentPoly.monomial(2 * Q * (sum(lam) + 2 * _n_of(lam)))
    for i in set(lam):
        m = lam.count(i)
        for k in range(1, m + 1):
            out = out * (ONE - LaurentPoly.monomial(-2 * Q * k))
    return out


@dataclass(frozen=True)
class Stratum:
    """Multiset of (degree e, partition) for distinct closed points."""

    points: tuple

    def size(self):
        return sum(e * sum(lam) for e, lam in self.points)

    def count(self):
        """Number of iso classes in the stratum, a polynomial in q."""
        out = ONE
        by_deg = {}
        for e, lam in self.points:
            by_deg.setdefault(e, []).append(lam)
        for e, lams in sorted(by_deg.items()):
            N = point_count(e)
            for k in range(len(lams)):
                out = out * (N - k)
            for lam in set(lams):
                out = out * Fraction(1, factorial(lams.count(lam)))
        return out

    def end_dim(self):
        return sum(e * end_partition(lam) for e, lam in self.points)

    def aut(self):
        out = ONE
        for e, lam in self.points:
            out = out * a_partition(lam, e)
        return out


def _point_multisets(n, min_key):
    """Multisets of (e, lam) pairs, nondecreasing in key order, total size n."""
    if n == 0:
        yield ()
        return
    for e in range(1, n + 1):
        for size in range(1, n // e + 1):
            for lam in partitions(size):
                key = (e, lam)
                if min_key is not None and key < min_key:
                    continue
                for rest in _point_multisets(n - e * size, key):
                    yield (key,) + rest


@lru_cache(maxsize=None)
def regular_strata(n):
    return tuple(Stratum(p) for p in _point_multisets(n, None))


# -- submodule counts in a single point ----------------------------------------

@lru_cache(maxsize=None)
def _birkhoff(lam, mu, e):
    """Submodules of type mu in the module of type lam (residue field F_{q^e})."""
    lc, mc = _conj(lam), _conj(mu)
    if len(mc) > len(lc) or any(mc[i] > lc[i] for i in range(len(mc))):
        return ZERO
    out = ONE
    for i in range(len(lc)):
        li = lc[i]
        mi = mc[i] if i < len(mc) else 0
        mn = mc[i + 1] if i + 1 < len(mc) else 0
        out = out * gauss_binom_q(li - mn, mi - mn).subs_power(e) * LaurentPoly.monomial(2 * e * mn * (li - mi))
    return out


def submodule_count(lam, mu, e=1):
    return _birkhoff(tuple(lam), tuple(mu), e)


def _sub_partitions(lam):
    out = set()

    def rec(i, prev, acc):
        if i == len(lam):
            out.add(tuple(x for x in acc if x))
            return
        for x in range(min(lam[i], prev), -1, -1):
            rec(i + 1, x, acc + [x])

    rec(0, lam[0] if lam else 0, [])
    return out


@lru_cache(maxsize=None)
def _flag_count(points, w):
    """Chains of regular submodules with successive quotients of sizes w (top first)."""
    if not w:
        return ONE if not points else ZERO
    target = sum(e * sum(lam) for e, lam in points) - w[0]
    if target < 0:
        return ZERO
    out = ZERO
    options = [[(mu, _birkhoff(lam, mu, e)) for mu in _sub_partitions(lam)] for e, lam in points]

    def rec(i, size, chosen, coeff):
        nonlocal out
        if size > target:
            return
        if i == len(points):
            if size == target:
                sub = tuple(sorted((points[k][0], mu) for k, mu in enumerate(chosen) if mu))
                out = out + coeff * _flag_count(sub, w[1:])
            return
        e = points[i][0]
        for mu, c in options[i]:
            if c:
                rec(i + 1, size + e * sum(mu), chosen + [mu], coeff * c)

    rec(0, 0, [], ONE)
    return out


def flag_count(stratum, w):
    return _flag_count(stratum.points, tuple(w))


# -- imaginary Gram matrices ----------------------------------------------------------

@lru_cache(maxsize=None)
def _imag_gram(n):
    parts = partitions(n)
    G = {}
    strata = regular_strata(n)
    data = []
    for s in strata:
        # (u_L, u_L) = q^(2n) / a_L cancels against the v^(-2n) normalizations
        weight_ = RationalFunction(s.count(), s.aut())
        data.append((weight_, {w: flag_count(s, w) for w in parts}))
    for a in parts:
        for b in parts:
            if (b, a) in G:
                G[(a, b)] = G[(b, a)]
                continue
            acc = RationalFunction(0)
            for wt, fc in data:
                x = fc[a] * fc[b]
                if x:
                    acc = acc + wt * RationalFunction(x)
            G[(a, b)] = acc
    return G


def imag_gram(n):
    """{(w, w'): (E_{w delta}, E_{w' delta})} over partitions of n."""
    if n == 0:
        return {((), ()): RationalFunction(1)}
    return dict(_imag_gram(n))


def _p_norm(r):
    q_r = _qp(r)
    return RationalFunction(LaurentPoly.const(r) * (q_r + 1), q_r - 1)


@lru_cache(maxsize=None)
def _imag_gram_closed(n):
    """Second route: power sums are orthogonal with (p_r, p_r) = r (q^r+1)/(q^r-1)."""
    parts = partitions(n)
    # h_w = sum_lam c_{w lam} p_lam
    h_in_p = {}
    for w in parts:
        expr = {(): Fraction(1)}
        for k in w:
            hk = {}
            for lam in partitions(k):
                hk[lam] = Fraction(1, z_value(lam))
            out = {}
            for a, c in expr.items():
                for b, d in hk.items():
                    key = _merge(a, b)
                    out[key] = out.get(key, 0) + c * d
            expr = out
        h_in_p[w] = expr
    norm = {}
    for lam in parts:
        val = RationalFunction(z_value(lam))
        for i in set(lam):
            val = val * _p_norm(i) ** lam.count(i) * RationalFunction(Fraction(1, i ** lam.count(i)))
        norm[lam] = val
    G = {}
    for a in parts:
        for b in parts:
            acc = RationalFunction(0)
            for lam, c in h_in_p[a].items():
                d = h_in_p[b].get(lam)
                if d:
                    acc = acc + norm[lam] * RationalFunction(c * d)
            G[(a, b)] = acc
    return G


def imag_gram_closed(n):
    return dict(_imag_gram_closed(n))


# -- real parts and PBW Gram ---------------------------------------------------------

def _real_label(c):
    return (tuple(n for n, k in c.prep for _ in range(k)), (), tuple(n for n, k in c.prei for _ in range(k)))


class _KrCombinatorics:
    """Field-free access to the Kronecker label combinatorics."""

    def __init__(self):
        from .finite_field_oracle import KroneckerOracle
        self._cls = KroneckerOracle

    def dim_end(self, label):
        sm = self._cls.summands(label)
        from .finite_field_oracle import kr_hom
        return sum(m1 * m2 * kr_hom(a, b) for a, m1 in sm for b, m2 in sm)

    def aut_poly(self, label):
        from .finite_field_oracle import _gl_poly
        sm = self._cls.summands(label)
        semis = sum(m * m for s, m in sm)
        out = LaurentPoly.monomial(2 * (self.dim_end(label) - semis))
        for s, m in sm:
            out = out * _gl_poly(m, 1)
        return out


_KR = _KrCombinatorics()


def real_inner(x, y):
    """(E^x, E^y) for purely real PBW indices: delta * v^(2 dim End)/a."""
    if x.im or y.im:
        raise ValueError("real_inner takes indices without imaginary part")
    if x != y:
        return RationalFunction(0)
    lab = _real_label(x)
    return RationalFunction(LaurentPoly.monomial(2 * _KR.dim_end(lab)), _KR.aut_poly(lab))


def inner(c1, c2):
    """(E^c1, E^c2) on PBW basis elements."""
    if weight(c1) != weight(c2):
        return RationalFunction(0)
    if c1.prep != c2.prep or c1.prei != c2.prei:
        return RationalFunction(0)
    n = sum(c1.im)
    if sum(c2.im) != n:
        return RationalFunction(0)
    P = PBWIndex(c1.prep)
    I = PBWIndex(None, (), c1.prei)
    return real_inner(P, P) * real_inner(I, I) * imag_gram(n)[(c1.im, c2.im)]


def pbw_gram(d):
    d = d if isinstance(d, DimVector) else DimVector(*d)
    from .kronecker_model import enumerate_indices
    idx = sorted(enumerate_indices(d), key=order_key)
    return idx, [[inner(a, b) for b in idx] for a in idx]


def gram_of(elements, coords=None):
    """Gram matrix of AlgebraElements under the PBW inner product."""
    out = []
    for x in elements:
        row = []
        for y in elements:
            acc = RationalFunction(0)
            for c1, a in x.terms.items():
                for c2, b in y.terms.items():
                    g = inner(c1, c2)
                    if g:
                        acc = acc + a * b * g
            row.append(acc)
        out.append(row)
    return out


# -- orthogonalized imaginary elements ---------------------------------------------------

def imag_element(expr, extra=None):
    """h-expression -> AlgebraElement via h_w -> E_{w delta}."""
    return st.AlgebraElement({PBWIndex(None, w): RationalFunction(c) for w, c in expr.items()})


def _solve(A, b):
    """Exact Gaussian elimination over Q(v)."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise ArithmeticError("singular Gram matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


@lru_cache(maxsize=None)
def _e_prime(n):
    G = imag_gram(n)
    others = [w for w in partitions(n) if w != (n,)]
    if not others:
        return imag_element({(n,): Fraction(1)})
    A = [[G[(a, b)] for b in others] for a in others]
    rhs = [G[(a, (n,))] for a in others]
    x = _solve(A, rhs)
    out = st.AlgebraElement({PBWIndex(None, (n,)): RationalFunction(1)})
    for w, c in zip(others, x):
        out = out - st.AlgebraElement({PBWIndex(None, w): c})
    return out


def e_prime(n):
    """E_{n delta} orthogonalized against all other imaginary monomials of weight n delta."""
    return _e_prime(n)


def e_prime_newton(n):
    """Image of p_n / n under h_k -> E_{k delta}."""
    return imag_element({k: v / n for k, v in newton_p_in_h(n).items()})


def leading_class(f):
    """Constant term of the expansion of f in Q[[v^-1]], or None if f has positive degree."""
    f = as_rf(f)
    if not f:
        return Fraction(0)
    num, den = f.num, f.den
    dn, dd = num.max_deg(), den.max_deg()
    if dn > dd:
        return None
    if dn < dd:
        return Fraction(0)
    return Fraction(num.coeff(dn)) / Fraction(den.coeff(dd))


# -- Schur-modified PBW basis and its canonical basis ---------------------------------------

def schur_pbw_e(c):
    """E^c with the imaginary block h_w replaced by s_w."""
    out = {}
    for mu, a in schur_in_h(c.im).items():
        out[PBWIndex(c.prep, mu, c.prei)] = RationalFunction(a)
    return st.AlgebraElement(out)


def _kr_less(a, b):
    return geometric_less(a, b) is Order.LESS


def _lower_inverse(L):
    n = len(L)
    zero, one = RationalFunction(0), RationalFunction(1)
    X = [[zero] * n for _ in range(n)]
    for i in range(n):
        if L[i][i] != one:
            raise TriangularityError("Schur transition is not unitriangular")
        X[i][i] = one
        for j in range(i - 1, -1, -1):
            s = zero
            for k in range(j, i):
                if L[i][k] and X[k][j]:
                    s = s + L[i][k] * X[k][j]
            X[i][j] = -s
    return X


def canonical_prime(d, return_data=False):
    """Canonical basis built from the Schur-modified PBW family; returns E-coordinates."""
    d = d if isinstance(d, DimVector) else DimVector(*d)
    from .kronecker_model import sorted_indices
    idx = sorted_indices(d)
    pos = {c: i for i, c in enumerate(idx)}
    n = len(idx)
    zero = RationalFunction(0)
    S = [[zero] * n for _ in range(n)]
    for i, c in enumerate(idx):
        for c2, a in schur_pbw_e(c).terms.items():
            S[i][pos[c2]] = a
    Sinv = _lower_inverse(S)
    H = [[zero] * n for _ in range(n)]
    for i, c in enumerate(idx):
        for c2, a in st.monomial_of_index(c).terms.items():
            H[i][pos[c2]] = a
    Hp = mat_mul(H, Sinv)
    rows = {c: {idx[j]: Hp[i][j] for j in range(n) if Hp[i][j]} for i, c in enumerate(idx)}
    fam = BasisFamily(
        label="schur %d,%d" % (d.d1, d.d2), indices=idx, less=_kr_less,
        monomial=lambda c: rows[c], to_element=None, integral=False,
    )
    zs, data = canonical_basis(fam, return_data=True)
    ZS = mat_mul(data.zeta, S)
    elems = [st.AlgebraElement({idx[j]: ZS[i][j] for j in range(n) if ZS[i][j]}) for i in range(n)]
    if return_data:
        return elems, {"indices": idx, "S": S, "H": H, "H_prime": Hp, "Omega": data.Omega, "zeta": data.zeta}
    return elems
