"""Brute-force ground truth over small finite fields.

Representations are explicit matrices over GF(q).  Hall numbers are counted
either directly (enumerating submodules) or through Riedtmann's formula
(enumerating Ext classes and identifying the middle terms).  Everything is
exact: counts are integers, coefficients live in Q(sqrt q).

Two quivers are supported: the Kronecker quiver (vertex index 0 is the sink
"1", index 1 the source "2") and the cyclic quiver of rank n with arrows
i -> i+1 (nilpotent representations only).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product, combinations
import threading

import numpy as np

from .exact_arith import Surd, LaurentPoly, ZERO, specialize_surd, qint
from .kronecker_model import partitions

__all__ = [
    "GF", "Quiver", "KRONECKER", "cyclic_quiver", "FFRep", "BudgetExceeded",
    "OracleError", "SUPPORTED_Q", "rref", "rank", "nullspace", "inverse",
    "matmul", "hom_dim", "ext_dim", "KroneckerOracle", "TubeOracle",
    "IsoClassTable", "classify", "hall_number", "aut_order", "aut_order_poly",
    "interpolate_hall_polynomial", "lagrange_interpolate",
    "specialize_composition_element", "verify_relation", "RELATIONS",
    "filtration_count", "get_oracle", "compare", "specialize_index",
]

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)
DEFAULT_BUDGET = 1 << 20

# modulus polynomials (ascending coefficients) for the non-prime fields
_MODULI = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}


class BudgetExceeded(Exception):
    def __init__(self, what, required, budget):
        super().__init__("%s needs %d > budget %d" % (what, required, budget))
        self.required = required
        self.budget = budget


class OracleError(Exception):
    pass


class GF:
    """GF(q) with elements encoded as 0..q-1 (base-p digits = polynomial coefficients)."""

    _cache = {}

    def __new__(cls, q):
        hit = cls._cache.get(q)
        if hit is not None:
            return hit
        obj = super().__new__(cls)
        obj._setup(q)
        cls._cache[q] = obj
        return obj

    def _setup(self, q):
        if q not in SUPPORTED_Q:
            raise ValueError("unsupported field size %d (supported: %s)" % (q, SUPPORTED_Q))
        self.q = q
        if q in _MODULI:
            p, mod = _MODULI[q]
            k = len(mod) - 1
        else:
            p, mod, k = q, None, 1
        self.p, self.k = p, k
        self.prime = mod is None

        def digits(a):
            return [(a // p ** i) % p for i in range(k)]

        def enc(ds):
            return sum(int(d) * p ** i for i, d in enumerate(ds))

        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = digits(a)
            for b in range(q):
                db = digits(b)
                add[a, b] = enc([(x + y) % p for x, y in zip(da, db)])
                prod_ = [0] * (2 * k - 1)
                for i, x in enumerate(da):
                    for j, y in enumerate(db):
                        prod_[i + j] = (prod_[i + j] + x * y) % p
                if mod is not None:
                    for deg in range(len(prod_) - 1, k - 1, -1):
                        c = prod_[deg]
                        if c:
                            for i, m in enumerate(mod):
                                prod_[deg - k + i] = (prod_[deg - k + i] - c * m) % p
                mul[a, b] = enc(prod_[:k])
        neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        sub = add[:, neg]
        self.add, self.mul, self.neg, self.inv, self.sub = add, mul, neg, inv, sub
        self.elements = list(range(q))
        self.nonzero = list(range(1, q))

    def __repr__(self):
        return "GF(%d)" % self.q

    def __reduce__(self):
        return (GF, (self.q,))


# ---------------------------------------------------------------------------
# linear algebra over GF(q); matrices are int64 numpy arrays of field codes

def _arr(a, shape=None):
    a = np.asarray(a, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a


def matmul(F, A, B):
    A = _arr(A)
    B = _arr(B)
    if F.prime:
        return (A @ B) % F.p
    C = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        C = F.add[C, F.mul[A[:, k][:, None], B[k][None, :]]]
    return C


def madd(F, A, B):
    return F.add[_arr(A), _arr(B)]


def msub(F, A, B):
    return F.sub[_arr(A), _arr(B)]


def kron(F, A, B):
    A, B = _arr(A), _arr(B)
    out = F.mul[A[:, None, :, None], B[None, :, None, :]]
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def identity(n):
    return np.eye(n, dtype=np.int64)


def rref(F, M):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = _arr(M).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        if R[r, c] != 1:
            R[r] = F.mul[F.inv[R[r, c]], R[r]]
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            R[nzr] = F.sub[R[nzr], F.mul[col[nzr][:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, M):
    M = _arr(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F, M):
    """Basis (as rows) of {x : M x = 0}."""
    M = _arr(M)
    cols = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(piv):
            x[pc] = F.neg[R[i, f]]
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def inverse(F, M):
    M = _arr(M)
    n = M.shape[0]
    R, piv = rref(F, np.hstack([M, identity(n)]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise OracleError("singular matrix")
    return R[:, n:]


def subspaces(F, n, k):
    """All k-dimensional subspaces of GF(q)^n as k x n RREF row bases."""
    q = F.q
    for piv in combinations(range(n), k):
        slots = [(i, j) for i, pc in enumerate(piv) for j in range(pc + 1, n) if j not in piv]
        for vals in product(range(q), repeat=len(slots)):
            B = np.zeros((k, n), dtype=np.int64)
            for i, pc in enumerate(piv):
                B[i, pc] = 1
            for (i, j), a in zip(slots, vals):
                B[i, j] = a
            yield B


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quiver:
    nverts: int
    arrows: tuple  # (source, target) pairs
    name: str = ""


KRONECKER = Quiver(2, ((1, 0), (1, 0)), "kronecker")


@lru_cache(maxsize=None)
def cyclic_quiver(n):
    if n < 2:
        raise ValueError("cyclic quiver rank must be >= 2")
    return Quiver(n, tuple((i, (i + 1) % n) for i in range(n)), "cyclic%d" % n)


@dataclass
class FFRep:
    """A representation over GF(q): per-vertex dims and one matrix per arrow
    (shape dims[target] x dims[source])."""

    q: int
    quiver: Quiver
    dims: tuple
    mats: tuple
    _key: bytes = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        self.mats = tuple(_arr(m, (self.dims[t], self.dims[s])) for m, (s, t) in zip(self.mats, self.quiver.arrows))

    def key(self):
        if self._key is None:
            parts = [repr((self.q, self.quiver.name, self.dims)).encode()]
            parts += [m.tobytes() for m in self.mats]
            self._key = b"|".join(parts)
        return self._key

    @property
    def field(self):
        return GF(self.q)

    def total_dim(self):
        return sum(self.dims)


def direct_sum(reps, quiver, q):
    dims = [0] * quiver.nverts
    for r in reps:
        for v in range(quiver.nverts):
            dims[v] += r.dims[v]
    mats = [np.zeros((dims[t], dims[s]), dtype=np.int64) for s, t in quiver.arrows]
    off = [0] * quiver.nverts
    for r in reps:
        for a, (s, t) in enumerate(quiver.arrows):
            mats[a][off[t]:off[t] + r.dims[t], off[s]:off[s] + r.dims[s]] = r.mats[a]
        for v in range(quiver.nverts):
            off[v] += r.dims[v]
    return FFRep(q, quiver, tuple(dims), tuple(mats))


def _hom_matrix(F, M, N):
    """Matrix of X -> (N_a X_s - X_t M_a)_a on the unknowns X_v (n_v x m_v)."""
    Q = M.quiver
    col_off = [0]
    for v in range(Q.nverts):
        col_off.append(col_off[-1] + N.dims[v] * M.dims[v])
    row_off = [0]
    for s, t in Q.arrows:
        row_off.append(row_off[-1] + N.dims[t] * M.dims[s])
    D = np.zeros((row_off[-1], col_off[-1]), dtype=np.int64)
    for a, (s, t) in enumerate(Q.arrows):
        r0, r1 = row_off[a], row_off[a + 1]
        if r0 == r1:
            continue
        if N.dims[s] * M.dims[s]:
            blk = kron(F, N.mats[a], identity(M.dims[s]))
            D[r0:r1, col_off[s]:col_off[s + 1]] = F.add[D[r0:r1, col_off[s]:col_off[s + 1]], blk]
        if N.dims[t] * M.dims[t]:
            blk = kron(F, identity(N.dims[t]), M.mats[a].T)
            D[r0:r1, col_off[t]:col_off[t + 1]] = F.sub[D[r0:r1, col_off[t]:col_off[t + 1]], blk]
    return D, row_off, col_off


_HOM_CACHE = {}
_hom_lock = threading.Lock()


def hom_dim(M, N):
    key = (M.key(), N.key())
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    F = GF(M.q)
    D, _, col_off = _hom_matrix(F, M, N)
    out = col_off[-1] - rank(F, D)
    with _hom_lock:
        _HOM_CACHE[key] = out
    return out


def ext_dim(M, N):
    F = GF(M.q)
    D, row_off, _ = _hom_matrix(F, M, N)
    return row_off[-1] - rank(F, D)


def hom_space(M, N):
    """Basis of Hom(M, N) as lists of per-vertex matrices."""
    F = GF(M.q)
    D, _, col_off = _hom_matrix(F, M, N)
    basis = nullspace(F, D)
    out = []
    for b in basis:
        out.append([b[col_off[v]:col_off[v + 1]].reshape(N.dims[v], M.dims[v]) for v in range(M.quiver.nverts)])
    return out


def extensions(M, N, budget=DEFAULT_BUDGET):
    """Yield one middle term L per class of Ext^1(M, N) (N sub, M quotient).

    Also returns the dimension of Hom(M, N) through the first yielded item."""
    F = GF(M.q)
    Q = M.quiver
    D, row_off, col_off = _hom_matrix(F, M, N)
    rows = row_off[-1]
    if rows:
        _, piv = rref(F, D.T) if D.size else (None, [])
    else:
        piv = []
    comp = [j for j in range(rows) if j not in set(piv)]
    size = F.q ** len(comp)
    if size > budget:
        raise BudgetExceeded("Ext enumeration", size, budget)
    dims = tuple(N.dims[v] + M.dims[v] for v in range(Q.nverts))
    for vals in product(range(F.q), repeat=len(comp)):
        z = np.zeros(rows, dtype=np.int64)
        for j, a in zip(comp, vals):
            z[j] = a
        mats = []
        for a_, (s, t) in enumerate(Q.arrows):
            L = np.zeros((dims[t], dims[s]), dtype=np.int64)
            nt, ns = N.dims[t], N.dims[s]
            L[:nt, :ns] = N.mats[a_]
            L[nt:, ns:] = M.mats[a_]
            L[:nt, ns:] = z[row_off[a_]:row_off[a_ + 1]].reshape(nt, M.dims[s])
            mats.append(L)
        yield FFRep(M.q, Q, dims, tuple(mats))


def _restrict(F, L, W):
    """Sub- and quotient representations for a subrepresentation given by row bases W[v].

    Returns (sub, quot) or None when W is not arrow-stable."""
    Q = L.quiver
    T, Tinv, ks = [], [], []
    for v in range(Q.nverts):
        n = L.dims[v]
        B = W[v]
        k = B.shape[0]
        ks.append(k)
        if n == 0:
            T.append(np.zeros((0, 0), dtype=np.int64))
            Tinv.append(np.zeros((0, 0), dtype=np.int64))
            continue
        if k:
            _, piv = rref(F, B)
        else:
            piv = []
        comp = [j for j in range(n) if j not in piv]
        C = np.zeros((len(comp), n), dtype=np.int64)
        for i, j in enumerate(comp):
            C[i, j] = 1
        Tv = np.vstack([B.reshape(k, n), C]).T
        T.append(Tv)
        Tinv.append(inverse(F, Tv))
    subm, quotm = [], []
    for a, (s, t) in enumerate(Q.arrows):
        X = matmul(F, matmul(F, Tinv[t], L.mats[a]), T[s])
        if np.any(X[ks[t]:, :ks[s]]):
            return None
        subm.append(X[:ks[t], :ks[s]])
        quotm.append(X[ks[t]:, ks[s]:])
    sub = FFRep(L.q, Q, tuple(ks), tuple(subm))
    quot = FFRep(L.q, Q, tuple(L.dims[v] - ks[v] for v in range(Q.nverts)), tuple(quotm))
    return sub, quot


def submodules(L, dims):
    """Yield (sub, quotient) for every subrepresentation of L with the given dims."""
    F = GF(L.q)
    Q = L.quiver
    choices = [list(subspaces(F, L.dims[v], dims[v])) for v in range(Q.nverts)]
    for W in product(*choices):
        res = _restrict(F, L, W)
        if res is not None:
            yield res


# ---------------------------------------------------------------------------
# polynomials over GF(q) (ascending coefficient tuples)

def _poly_mul(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = int(F.add[out[i + j], F.mul[x, y]])
    return tuple(out)


def _poly_rem(F, a, b):
    a = list(a)
    lb = b[-1]
    inv_lb = int(F.inv[lb])
    while len(a) >= len(b):
        c = int(F.mul[a[-1], inv_lb])
        if c:
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = int(F.sub[a[shift + i], F.mul[c, y]])
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


@lru_cache(maxsize=None)
def monic_irreducibles(q, e):
    F = GF(q)
    if e == 1:
        return tuple((a, 1) for a in range(q))
    smaller = [f for d in range(1, e // 2 + 1) for f in monic_irreducibles(q, d)]
    out = []
    for coeffs in product(range(q), repeat=e):
        f = tuple(coeffs) + (1,)
        if coeffs[0] == 0:
            continue
        if all(_poly_rem(F, f, g) for g in smaller):
            out.append(f)
    return tuple(out)


def companion(F, f):
    n = len(f) - 1
    C = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        C[i, i - 1] = 1
    for i in range(n):
        C[i, n - 1] = F.neg[f[i]]
    return C


INF = (-1,)


def point_degree(pt):
    return 1 if pt == INF else len(pt) - 1


# ---------------------------------------------------------------------------

def _gl_order(n, Q):
    out = 1
    for i in range(n):
        out *= Q ** n - Q ** i
    return out


def _gl_poly(n, e):
    """|GL_n(F_{q^e})| as a Laurent polynomial in v (q = v^2)."""
    out = LaurentPoly.const(1)
    for i in range(n):
        out = out * (LaurentPoly.monomial(2 * e * n) - LaurentPoly.monomial(2 * e * i))
    return out


def _vpow(k, q):
    """v^k at v = sqrt(q) as a Surd."""
    h, odd = divmod(k, 2)
    base = Fraction(q) ** h
    return Surd(0, base, q) if odd else Surd(base, 0, q)


class _OracleBase:
    """Shared machinery: representatives, identification, Riedtmann products."""

    quiver = None

    def __init__(self, q, budget=DEFAULT_BUDGET):
        self.F = GF(q)
        self.q = q
        self.budget = budget
        self._prod = {}
        self._ident = {}
        self._reps = {}
        self._lock = threading.Lock()

    # subclasses supply: summands(label), rep_of_summand(s), hom_summands(a, b),
    # summand_degree(s), dim_of(label), identify_rep(rep), zero_label, euler(a, b)

    def rep(self, label):
        hit = self._reps.get(label)
        if hit is None:
            parts = []
            for s, mult in self.summands(label):
                parts.extend([self.rep_of_summand(s)] * mult)
            hit = direct_sum(parts, self.quiver, self.q)
            self._reps[label] = hit
        return hit

    def identify(self, rep):
        k = rep.key()
        hit = self._ident.get(k)
        if hit is None:
            hit = self.identify_rep(rep)
            self._ident[k] = hit
        return hit

    def dim_end(self, label):
        sm = self.summands(label)
        return sum(m1 * m2 * self.hom_summands(a, b) for a, m1 in sm for b, m2 in sm)

    def dim_hom_labels(self, a_label, b_label):
        sa, sb = self.summands(a_label), self.summands(b_label)
        return sum(m1 * m2 * self.hom_summands(a, b) for a, m1 in sa for b, m2 in sb)

    def aut(self, label):
        sm = self.summands(label)
        semis = sum(m * m * self.summand_degree(s) for s, m in sm)
        out = self.q ** (self.dim_end(label) - semis)
        for s, m in sm:
            out *= _gl_order(m, self.q ** self.summand_degree(s))
        return out

    def aut_poly(self, label):
        sm = self.summands(label)
        semis = sum(m * m * self.summand_degree(s) for s, m in sm)
        out = LaurentPoly.monomial(2 * (self.dim_end(label) - semis))
        for s, m in sm:
            out = out * _gl_poly(m, self.summand_degree(s))
        return out

    def hall_product(self, M, N):
        """{L: g^L_{M N}} via Riedtmann's formula (untwisted u_M u_N)."""
        key = (M, N)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        RM, RN = self.rep(M), self.rep(N)
        counts = {}
        for L in extensions(RM, RN, self.budget):
            lab = self.identify(L)
            counts[lab] = counts.get(lab, 0) + 1
        hom = self.q ** hom_dim(RM, RN)
        den = hom * self.aut(M) * self.aut(N)
        out = {}
        for lab, c in counts.items():
            g = Fraction(c * self.aut(lab), den)
            if g.denominator != 1:
                raise OracleError("non-integral Hall number for %r" % (lab,))
            out[lab] = int(g)
        with self._lock:
            self._prod[key] = out
        return out

    # -- Hall algebra elements: dict label -> Surd
    def u(self, label, coeff=1):
        return {label: Surd(coeff, 0, self.q)}

    def angle(self, label):
        """<M> = v^(-dim M + dim End M) u_M."""
        return {label: _vpow(-self.total_dim(label) + self.dim_end(label), self.q)}

    def add(self, x, y, scale=1):
        out = dict(x)
        for k, a in y.items():
            s = out.get(k, Surd(0, 0, self.q)) + a * scale
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def scale(self, x, s):
        out = {}
        for k, a in x.items():
            b = a * s
            if b:
                out[k] = b
        return out

    def mul(self, x, y, twisted=True):
        out = {}
        for M, a in x.items():
            dm = self.dim_of(M)
            for N, b in y.items():
                c = a * b
                if twisted:
                    c = c * _vpow(self.euler(dm, self.dim_of(N)), self.q)
                for L, g in self.hall_product(M, N).items():
                    s = out.get(L, Surd(0, 0, self.q)) + c * g
                    if s:
                        out[L] = s
                    else:
                        out.pop(L, None)
        return out

    def one(self):
        return {self.zero_label: Surd(1, 0, self.q)}

    def total_dim(self, label):
        return sum(self.dim_of(label))


# ---------------------------------------------------------------------------
# Kronecker quiver.  Summands: ('P', n), ('I', n), ('R', point, l).
# Class label: (prep tuple, reg tuple of (point, partition), prei tuple).

def _kr_dim_summand(s):
    if s[0] == "P":
        return (s[1] + 1, s[1])
    if s[0] == "I":
        return (s[1], s[1] + 1)
    e = point_degree(s[1]) * s[2]
    return (e, e)


def kr_hom(a, b):
    """dim Hom between Kronecker indecomposables."""
    ta, tb = a[0], b[0]
    if ta == "P":
        if tb == "P":
            return max(0, b[1] - a[1] + 1)
        if tb == "R":
            return point_degree(b[1]) * b[2]
        return a[1] + b[1]
    if ta == "R":
        if tb == "P":
            return 0
        if tb == "R":
            return point_degree(a[1]) * min(a[2], b[2]) if a[1] == b[1] else 0
        return point_degree(a[1]) * a[2]
    if tb == "I":
        return max(0, a[1] - b[1] + 1)
    return 0


class KroneckerOracle(_OracleBase):
    quiver = KRONECKER
    zero_label = ((), (), ())

    def __init__(self, q, budget=DEFAULT_BUDGET):
        super().__init__(q, budget)
        self._classes = {}
        self._tests = {}

    def points(self, max_deg):
        out = [(INF, 1)]
        for e in range(1, max_deg + 1):
            out.extend((f, e) for f in monic_irreducibles(self.q, e))
        return out

    @staticmethod
    def summands(label):
        prep, reg, prei = label
        out = {}
        for n in prep:
            out[("P", n)] = out.get(("P", n), 0) + 1
        for pt, lam in reg:
            for l in lam:
                out[("R", pt, l)] = out.get(("R", pt, l), 0) + 1
        for n in prei:
            out[("I", n)] = out.get(("I", n), 0) + 1
        return sorted(out.items())

    @staticmethod
    def summand_degree(s):
        return point_degree(s[1]) if s[0] == "R" else 1

    hom_summands = staticmethod(kr_hom)

    @staticmethod
    def euler(a, b):
        return a[0] * b[0] + a[1] * b[1] - 2 * a[1] * b[0]

    @staticmethod
    def dim_of(label):
        d1 = d2 = 0
        for s, m in KroneckerOracle.summands(label):
            a, b = _kr_dim_summand(s)
            d1 += m * a
            d2 += m * b
        return (d1, d2)

    def rep_of_summand(self, s):
        F = self.F
        if s[0] == "P":
            n = s[1]
            A = np.zeros((n + 1, n), dtype=np.int64)
            B = np.zeros((n + 1, n), dtype=np.int64)
            A[:n, :n] = identity(n)
            B[1:, :] = identity(n)
        elif s[0] == "I":
            n = s[1]
            A = np.zeros((n, n + 1), dtype=np.int64)
            B = np.zeros((n, n + 1), dtype=np.int64)
            A[:, :n] = identity(n)
            B[:, 1:] = identity(n)
        else:
            pt, l = s[1], s[2]
            if pt == INF:
                A = np.zeros((l, l), dtype=np.int64)
                for i in range(l - 1):
                    A[i, i + 1] = 1
                B = identity(l)
            else:
                g = (1,)
                for _ in range(l):
                    g = _poly_mul(F, g, pt)
                A = identity(len(g) - 1)
                B = companion(F, g)
        d = _kr_dim_summand(s)
        return FFRep(self.q, KRONECKER, d, (A, B))

    def classes(self, d):
        """All iso-class labels of dimension d, sorted."""
        d = tuple(d)
        hit = self._classes.get(d)
        if hit is not None:
            return hit
        d1, d2 = d
        out = []

        def real_multisets(kind, a, b, start):
            yield (), 0, 0
            n = start
            while True:
                r = (n + 1, n) if kind == "P" else (n, n + 1)
                if r[0] > a or r[1] > b:
                    return
                for rest, u1, u2 in real_multisets(kind, a - r[0], b - r[1], n):
                    yield (n,) + rest, u1 + r[0], u2 + r[1]
                n += 1

        pts = self.points(min(d1, d2))

        def reg_parts(m, i):
            if m == 0:
                yield ()
                return
            if i >= len(pts):
                return
            for rest in reg_parts(m, i + 1):
                yield rest
            pt, e = pts[i]
            for size in range(1, m // e + 1):
                for lam in partitions(size):
                    for rest in reg_parts(m - e * size, i + 1):
                        yield ((pt, lam),) + rest

        for prep, p1, p2 in real_multisets("P", d1, d2, 0):
            for prei, i1, i2 in real_multisets("I", d1 - p1, d2 - p2, 0):
                r1, r2 = d1 - p1 - i1, d2 - p2 - i2
                if r1 != r2:
                    continue
                for reg in reg_parts(r1, 0):
                    out.append((prep, tuple(sorted(reg)), prei))
        out.sort()
        self._classes[d] = out
        return out

    def test_modules(self, d):
        d = tuple(d)
        hit = self._tests.get(d)
        if hit is not None:
            return hit
        d1, d2 = d
        tests = []
        for n in range(0, d1 + 1):
            if n + 1 <= d1 and n <= d2:
                tests.append(("P", n))
        for n in range(0, d2 + 1):
            if n <= d1 and n + 1 <= d2:
                tests.append(("I", n))
        m = min(d1, d2)
        pts = self.points(m)
        for pt, e in pts:
            if e == 1:
                for l in range(1, m + 1):
                    tests.append(("R", pt, l))
        for pt, e in pts:
            if e > 1:
                for l in range(1, m // e + 1):
                    tests.append(("R", pt, l))
        self._tests[d] = tests
        return tests

    def predicted(self, test, label):
        return sum(m * kr_hom(test, s) for s, m in self.summands(label))

    def identify_rep(self, rep):
        d = rep.dims
        cands = self.classes(d)
        tests = self.test_modules(d)
        trep = {}
        ti = 0
        while len(cands) > 1:
            while ti < len(tests):
                t = tests[ti]
                vals = {self.predicted(t, c) for c in cands}
                if len(vals) > 1:
                    break
                ti += 1
            else:
                raise OracleError("test set fails to separate %d candidates" % len(cands))
            t = tests[ti]
            ti += 1
            tr = trep.get(t)
            if tr is None:
                tr = trep[t] = self.rep_of_summand(t)
            actual = hom_dim(tr, rep)
            cands = [c for c in cands if self.predicted(t, c) == actual]
        if not cands:
            raise OracleError("representation matches no class")
        return cands[0]

    # -- algebra-level helpers
    def prep_classes(self, d):
        return [c for c in self.classes(d) if not c[1] and not c[2]]

    def prei_classes(self, d):
        return [c for c in self.classes(d) if not c[0] and not c[1]]

    def regular_sum(self, m):
        if m == 0:
            return self.one()
        out = {}
        for c in self.classes((m, m)):
            if not c[0] and not c[2]:
                out[c] = Surd(1, 0, self.q)
        return out

    def E_imag(self, k):
        return self.scale(self.regular_sum(k), _vpow(-2 * k, self.q))

    def E_prep(self, n, k=1):
        return self.angle(((n,) * k, (), ()))

    def E_prei(self, n, k=1):
        return self.angle(((), (), (n,) * k))


# ---------------------------------------------------------------------------
# cyclic quiver.  Summands: (i, l) = S_i[l] with top i (0-based), length l.
# Class label: multipartition as a tuple of n partitions (lengths by top vertex).

def cyc_hom(n, a, b):
    i, la = a
    j, lb = b
    return sum(1 for p in range(max(0, lb - la), lb) if (p - (i - j)) % n == 0)


class TubeOracle(_OracleBase):
    def __init__(self, n, q, budget=DEFAULT_BUDGET):
        super().__init__(q, budget)
        self.n = n
        self.quiver = cyclic_quiver(n)
        self.zero_label = tuple(() for _ in range(n))

    def summands(self, label):
        out = {}
        for i, lam in enumerate(label):
            for l in lam:
                out[(i, l)] = out.get((i, l), 0) + 1
        return sorted(out.items())

    @staticmethod
    def summand_degree(s):
        return 1

    def hom_summands(self, a, b):
        return cyc_hom(self.n, a, b)

    def euler(self, a, b):
        n = self.n
        return sum(a[i] * b[i] for i in range(n)) - sum(a[i] * b[(i + 1) % n] for i in range(n))

    def dim_of(self, label):
        d = [0] * self.n
        for i, lam in enumerate(label):
            for l in lam:
                for p in range(l):
                    d[(i + p) % self.n] += 1
        return tuple(d)

    def rep_of_summand(self, s):
        i, l = s
        n = self.n
        dims = [0] * n
        pos = []
        for p in range(l):
            v = (i + p) % n
            pos.append((v, dims[v]))
            dims[v] += 1
        mats = [np.zeros((dims[(u + 1) % n], dims[u]), dtype=np.int64) for u in range(n)]
        for p in range(l - 1):
            v, iv = pos[p]
            w, iw = pos[p + 1]
            mats[v][iw, iv] = 1
        return FFRep(self.q, self.quiver, tuple(dims), tuple(mats))

    def identify_rep(self, rep):
        F = self.F
        n = self.n
        total = rep.total_dim()
        # powers[i][k] = x^k restricted to V_i
        ranks = {}
        for i in range(n):
            P = identity(rep.dims[i])
            ranks[(i, 0)] = rep.dims[i]
            for k in range(1, total + 1):
                v = (i + k - 1) % n
                P = matmul(F, rep.mats[v], P)
                ranks[(i, k)] = rank(F, P) if P.size else 0
        parts = []
        for i in range(n):
            counts = []
            for k in range(1, total + 1):
                c = ranks[(i, k - 1)] - ranks[((i - 1) % n, k)]
                counts.append(c)
            lam = []
            for k in range(1, total + 1):
                exact = counts[k - 1] - (counts[k] if k < total else 0)
                lam.extend([k] * exact)
            parts.append(tuple(sorted(lam, reverse=True)))
        return tuple(parts)

    def classes(self, dims):
        """All nilpotent classes with the given dimension vector."""
        dims = tuple(dims)
        n = self.n
        if len(dims) != n:
            raise ValueError("dimension vector %r does not match rank %d" % (dims, n))
        total = sum(dims)
        blocks = [(i, l) for i in range(n) for l in range(1, total + 1)]
        out = set()

        def rec(k, rem, chosen):
            if not any(rem):
                lab = [[] for _ in range(n)]
                for (i, l) in chosen:
                    lab[i].append(l)
                out.add(tuple(tuple(sorted(x, reverse=True)) for x in lab))
                return
            if k == len(blocks):
                return
            rec(k + 1, rem, chosen)
            i, l = blocks[k]
            r = list(rem)
            c = list(chosen)
            while True:
                ok = True
                for p in range(l):
                    v = (i + p) % n
                    r[v] -= 1
                    if r[v] < 0:
                        ok = False
                if not ok:
                    break
                c.append((i, l))
                rec(k + 1, tuple(r), tuple(c))
        rec(0, dims, ())
        return sorted(out)


# ---------------------------------------------------------------------------

_ORACLES = {}
_oracle_lock = threading.Lock()


def get_oracle(q, rank=None, budget=DEFAULT_BUDGET):
    key = (q, rank, budget)
    with _oracle_lock:
        hit = _ORACLES.get(key)
        if hit is None:
            hit = KroneckerOracle(q, budget) if rank is None else TubeOracle(rank, q, budget)
            _ORACLES[key] = hit
    return hit


@dataclass
class IsoClassTable:
    weight: tuple
    q: int
    labels: list
    representatives: list
    fingerprint: dict


def classify(d, q, rank=None, budget=DEFAULT_BUDGET, exhaustive=False):
    """Complete list of iso classes of dimension d over GF(q).

    Classes are built from their combinatorial labels; completeness is
    certified by the orbit-counting identity sum_M |G_d| / |Aut M| = |E_d|,
    and distinctness by Hom fingerprints.  With exhaustive=True every point
    of the representation space is identified as well (subject to budget)."""
    orc = get_oracle(q, rank, budget)
    d = tuple(d)
    labels = orc.classes(d)
    reps = [orc.rep(c) for c in labels]
    Q = orc.quiver
    # fingerprints against all indecomposables of smaller or equal dimension
    if rank is None:
        tests = orc.test_modules(d)
        fp = {c: tuple(orc.predicted(t, c) for t in tests) for c in labels}
        for c, r in zip(labels, reps):
            actual = tuple(hom_dim(orc.rep_of_summand(t), r) for t in tests)
            if actual != fp[c]:
                raise OracleError("fingerprint mismatch for %r" % (c,))
    else:
        total = sum(d)
        tests = [(i, l) for i in range(rank) for l in range(1, total + 1)]
        fp = {c: tuple(sum(m * cyc_hom(rank, t, s) for s, m in orc.summands(c)) for t in tests) for c in labels}
    if len(set(fp.values())) != len(labels):
        raise OracleError("fingerprints do not separate the classes of %r" % (d,))
    # orbit count
    group = 1
    for v in range(Q.nverts):
        group *= _gl_order(d[v], q)
    space = 0
    for s, t in Q.arrows:
        space += d[s] * d[t]
    total_pts = Fraction(0)
    for c in labels:
        total_pts += Fraction(group, orc.aut(c))
    if rank is None:
        expected = q ** space
    else:
        expected = _nilpotent_count(d, q, rank)
    if total_pts != expected:
        raise OracleError("orbit count %s != %s for %r" % (total_pts, expected, d))
    if exhaustive:
        if q ** space > budget:
            raise BudgetExceeded("full orbit enumeration", q ** space, budget)
        seen = {}
        F = GF(q)
        for vals in product(range(q), repeat=space):
            mats, off = [], 0
            for s, t in Q.arrows:
                k = d[s] * d[t]
                mats.append(np.array(vals[off:off + k], dtype=np.int64).reshape(d[t], d[s]))
                off += k
            rep = FFRep(q, Q, d, tuple(mats))
            if rank is not None and not _is_nilpotent(F, rep):
                continue
            lab = orc.identify(rep)
            seen[lab] = seen.get(lab, 0) + 1
        for c in labels:
            if seen.get(c, 0) * orc.aut(c) != group:
                raise OracleError("orbit of %r has %d points, expected %s" % (c, seen.get(c, 0), Fraction(group, orc.aut(c))))
    return IsoClassTable(d, q, labels, reps, fp)


def _is_nilpotent(F, rep):
    n = rep.quiver.nverts
    total = rep.total_dim()
    for i in range(n):
        P = identity(rep.dims[i])
        for k in range(1, total + 1):
            P = matmul(F, rep.mats[(i + k - 1) % n], P)
        if P.size and np.any(P):
            return False
    return True


def _nilpotent_count(d, q, n):
    """Number of nilpotent representations of the cyclic quiver with dims d.

    Computed by brute force (small cases only) so that the class list is
    certified independently of the label enumeration."""
    F = GF(q)
    Q = cyclic_quiver(n)
    space = sum(d[s] * d[t] for s, t in Q.arrows)
    if q ** space > DEFAULT_BUDGET:
        raise BudgetExceeded("nilpotent point count", q ** space, DEFAULT_BUDGET)
    cnt = 0
    for vals in product(range(q), repeat=space):
        mats, off = [], 0
        for s, t in Q.arrows:
            k = d[s] * d[t]
            mats.append(np.array(vals[off:off + k], dtype=np.int64).reshape(d[t], d[s]))
            off += k
        if _is_nilpotent(F, FFRep(q, Q, d, tuple(mats))):
            cnt += 1
    return cnt


# ---------------------------------------------------------------------------

def hall_number(L, M_class, N_class, q=None, rank=None):
    """Count submodules W of the explicit representation L with W ~ N, L/W ~ M."""
    q = L.q if q is None else q
    orc = get_oracle(q, rank)
    ndim = orc.dim_of(N_class)
    mdim = orc.dim_of(M_class)
    if tuple(a + b for a, b in zip(ndim, mdim)) != tuple(L.dims):
        raise ValueError("dimension mismatch")
    cnt = 0
    for sub, quot in submodules(L, ndim):
        if orc.identify(sub) == N_class and orc.identify(quot) == M_class:
            cnt += 1
    return cnt


def aut_order(M):
    """|Aut M| by enumerating all endomorphisms and testing invertibility."""
    F = GF(M.q)
    basis = hom_space(M, M)
    if F.q ** len(basis) > DEFAULT_BUDGET:
        raise BudgetExceeded("automorphism enumeration", F.q ** len(basis), DEFAULT_BUDGET)
    cnt = 0
    nv = M.quiver.nverts
    for coeffs in product(range(F.q), repeat=len(basis)):
        ok = True
        for v in range(nv):
            n = M.dims[v]
            if n == 0:
                continue
            X = np.zeros((n, n), dtype=np.int64)
            for c, b in zip(coeffs, basis):
                if c:
                    X = F.add[X, F.mul[c, b[v]]]
            if rank(F, X) < n:
                ok = False
                break
        if ok:
            cnt += 1
    return cnt


def aut_order_poly(label, rank=None):
    """|Aut M| as a polynomial in q (returned in v with q = v^2).

    Uses the label's combinatorial data only; points must be given through
    their degree-preserving encoding, so any field-valid label works."""
    orc = get_oracle(2, rank)
    return orc.aut_poly(label)


def lagrange_interpolate(points):
    """Coefficients (ascending) of the unique polynomial through (x, y) points."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            den *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / den
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_eval(coeffs, x):
    out = Fraction(0)
    for c in reversed(coeffs):
        out = out * x + c
    return out


def interpolate_values(values, bound, extra_check=True):
    """Fit a polynomial of degree <= bound through {q: value}; verify leftovers.

    Returns the polynomial as a Laurent polynomial in v (q = v^2)."""
    qs = sorted(values)
    if len(qs) < bound + 1:
        raise BudgetExceeded("interpolation sample points", bound + 1, len(qs))
    coeffs = lagrange_interpolate([(x, values[x]) for x in qs[:bound + 1]])
    for x in qs[bound + 1:]:
        if _poly_eval(coeffs, x) != values[x]:
            raise OracleError("samples inconsistent with any polynomial of degree <= %d" % bound)
    return LaurentPoly({2 * i: c for i, c in enumerate(coeffs) if c})


def interpolate_hall_polynomial(M_class, N_class, L_class, rank=None, qs=None, bound=None):
    """The Hall polynomial g^L_{M N}(q) fitted through exact counts."""
    qs = list(qs) if qs is not None else list(SUPPORTED_Q)
    orc2 = get_oracle(qs[0], rank)
    if bound is None:
        dm, dn = orc2.dim_of(M_class), orc2.dim_of(N_class)
        if rank is None:
            bound = orc2.dim_end(L_class)
        else:
            bound = (-orc2.euler(dm, dn) + orc2.dim_end(L_class)
                     - orc2.dim_end(M_class) - orc2.dim_end(N_class))
        bound = max(bound, 0)
    values = {}
    for q in qs[:bound + 2] if len(qs) > bound + 1 else qs:
        orc = get_oracle(q, rank)
        values[q] = orc.hall_product(M_class, N_class).get(L_class, 0)
    return interpolate_values(values, bound)


def filtration_count(label, word, q, rank):
    """Number of filtrations of M(label) whose subquotients, read from the top,
    are e_r S_{j_r} for the tight word [(j_1, e_1), ...] (0-based vertices)."""
    orc = get_oracle(q, rank)
    return _filtration_count(orc, label, tuple(tuple(x) for x in word))


def _filtration_count(orc, label, word, _memo={}):
    key = (orc.q, orc.n, label, word)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if not word:
        out = 1 if label == orc.zero_label else 0
        _memo[key] = out
        return out
    j, e = word[0]
    L = orc.rep(label)
    F = orc.F
    n = orc.n
    if L.dims[j] < e:
        _memo[key] = 0
        return 0
    # W must contain every V_i (i != j) and the image of the arrow into j
    img = L.mats[(j - 1) % n]
    dj = L.dims[j]
    if img.size:
        R, piv = rref(F, img.T)
        radj = R[:len(piv)]
    else:
        radj = np.zeros((0, dj), dtype=np.int64)
    r = radj.shape[0]
    if dj - r < e:
        _memo[key] = 0
        return 0
    # subspaces W_j with rad_j <= W_j, codim e: choose a subspace of the
    # quotient V_j / rad_j of dim (dj - r - e) and lift it
    _, piv = rref(F, radj) if r else (None, [])
    comp = [c for c in range(dj) if c not in piv]
    counts = {}
    for S in subspaces(F, len(comp), dj - r - e):
        lift = np.zeros((S.shape[0], dj), dtype=np.int64)
        lift[:, comp] = S
        Wj = np.vstack([radj, lift]) if r else lift
        W = []
        for v in range(n):
            W.append(Wj if v == j else identity(L.dims[v]))
        res = _restrict(F, L, W)
        assert res is not None
        sub, _ = res
        lab = orc.identify(sub)
        counts[lab] = counts.get(lab, 0) + 1
    out = 0
    for lab, c in counts.items():
        out += c * _filtration_count(orc, lab, word[1:])
    _memo[key] = out
    return out


# ---------------------------------------------------------------------------
# specialization of Kronecker PBW elements

def specialize_index(orc, c):
    """The PBW basis element E^c as an element of the twisted Hall algebra over GF(q)."""
    out = orc.one()
    for n, k in c.prep:
        out = orc.mul(out, orc.E_prep(n, k))
    for w in c.im:
        out = orc.mul(out, orc.E_imag(w))
    for n, k in sorted(c.prei, reverse=True):
        out = orc.mul(out, orc.E_prei(n, k))
    return out


def specialize_composition_element(x, q, budget=DEFAULT_BUDGET):
    orc = get_oracle(q, None, budget)
    out = {}
    for c, coeff in x.terms.items():
        s = specialize_surd(coeff, q)
        out = orc.add(out, specialize_index(orc, c), s)
    return out


def compare(x, y):
    """(True, None) if equal, else (False, first differing label)."""
    keys = sorted(set(x) | set(y))
    for k in keys:
        a, b = x.get(k), y.get(k)
        a = a if a is not None else 0
        b = b if b is not None else 0
        if not (a == b if not isinstance(a, int) else b == a):
            return False, k
    return True, None


# -- registered relations ----------------------------------------------------

def _sum(orc, terms):
    out = {}
    for coeff, x in terms:
        out = orc.add(out, x, coeff)
    return out


def _surd_of(orc, f):
    return specialize_surd(f, orc.q)


def _rel_regular_recursion(orc, nmax=2):
    """R_delta = u2 u1 - u1 u2 and the two recursions for u_(n+1,n), u_(n,n+1)
    (untwisted products)."""
    q = orc.q
    u1 = orc.u(((0,), (), ()))
    u2 = orc.u(((), (), (0,)))
    R = orc.regular_sum(1)
    yield "R_delta", R, orc.add(orc.mul(u2, u1, False), orc.mul(u1, u2, False), -1)
    for n in range(1, nmax + 1):
        prev = orc.u(((n - 1,), (), ()))
        lhs = orc.u(((n,), (), ()))
        rhs = orc.add(orc.mul(R, prev, False), orc.mul(prev, R, False), -q)
        yield "u_(%d,%d)" % (n + 1, n), lhs, orc.scale(rhs, Fraction(1, q + 1))
        prev = orc.u(((), (), (n - 1,)))
        lhs = orc.u(((), (), (n,)))
        rhs = orc.add(orc.mul(prev, R, False), orc.mul(R, prev, False), -q)
        yield "u_(%d,%d)" % (n, n + 1), lhs, orc.scale(rhs, Fraction(1, q + 1))


def _rel_adjacent_real(orc):
    q = orc.q
    E1, E21 = orc.E_prep(0), orc.E_prep(1)
    E2, E12 = orc.E_prei(0), orc.E_prei(1)
    v2 = _vpow(2, q)
    yield "E(2,1)*E1", orc.mul(E21, E1), orc.scale(orc.mul(E1, E21), v2)
    yield "E2*E(1,2)", orc.mul(E2, E12), orc.scale(orc.mul(E12, E2), v2)


def _etilde_hall(orc, n):
    q = orc.q
    A = orc.E_prei(n - 1)
    E1 = orc.E_prep(0)
    return orc.add(orc.mul(A, E1), orc.mul(E1, A), _vpow(-2, q) * -1)


def _rel_modified_imaginary(orc, nmax=3):
    q = orc.q
    for r in range(nmax):
        for s in range(nmax - r):
            lhs = _etilde_hall(orc, r + s + 1)
            A, B = orc.E_prei(r), orc.E_prep(s)
            rhs = orc.add(orc.mul(A, B), orc.mul(B, A), _vpow(-2, q) * -1)
            yield "r=%d,s=%d" % (r, s), lhs, rhs


def _rel_imaginary_recursion(orc, kmax=3):
    """E_(k delta) from the recursive definition through the modified generators
    equals v^(-2k) R_(k delta)."""
    q = orc.q
    E = {0: orc.one()}
    for k in range(1, kmax + 1):
        acc = {}
        for s in range(1, k + 1):
            acc = orc.add(acc, orc.mul(_etilde_hall(orc, s), E[k - s]), _vpow(s - k, q))
        inv_k = _surd_of(orc, qint(k)).inverse()
        E[k] = orc.scale(acc, inv_k)
        yield "k=%d" % k, E[k], orc.E_imag(k)


def _rel_imaginary_real(orc, nmax=2, mmax=2):
    q = orc.q
    for n in range(1, nmax + 1):
        for m in range(0, mmax + 1):
            lhs = orc.mul(orc.E_imag(n), orc.E_prep(m))
            rhs = {}
            for k in range(n + 1):
                rhs = orc.add(rhs, orc.mul(orc.E_prep(m + n - k), orc.E_imag(k) if k else orc.one()),
                              _surd_of(orc, qint(n + 1 - k)))
            yield "first n=%d,m=%d" % (n, m), lhs, rhs
            lhs = orc.mul(orc.E_prei(m), orc.E_imag(n))
            rhs = {}
            for k in range(n + 1):
                rhs = orc.add(rhs, orc.mul(orc.E_imag(k) if k else orc.one(), orc.E_prei(m + n - k)),
                              _surd_of(orc, qint(n + 1 - k)))
            yield "second n=%d,m=%d" % (n, m), lhs, rhs


def _divided(orc, x, k):
    from .exact_arith import qfactorial
    out = orc.one()
    for _ in range(k):
        out = orc.mul(out, x)
    return orc.scale(out, _surd_of(orc, qfactorial(k)).inverse())


def _rel_divided_power_product(orc, nmax=2):
    """E2^(n) * E1^(n) = E_(n delta) + sum over nonzero preprojective P of
    dim (s+p, s), preinjective I of dim (t, t+p), s+t+l+p = n, p >= 1, of
    v^(-dimEnd P - dimEnd I - p(s+2l+t)) <P> * E_(l delta) * <I>."""
    q = orc.q
    E1, E2 = orc.E_prep(0), orc.E_prei(0)
    for n in range(1, nmax + 1):
        lhs = orc.mul(_divided(orc, E2, n), _divided(orc, E1, n))
        rhs = orc.E_imag(n)
        for p in range(1, n + 1):
            for l in range(0, n - p + 1):
                for s in range(0, n - p - l + 1):
                    t = n - p - l - s
                    for P in orc.prep_classes((s + p, s)):
                        for I in orc.prei_classes((t, t + p)):
                            ex = -orc.dim_end(P) - orc.dim_end(I) - p * (s + 2 * l + t)
                            term = orc.mul(orc.mul(orc.angle(P), orc.E_imag(l) if l else orc.one()), orc.angle(I))
                            rhs = orc.add(rhs, term, _vpow(ex, q))
        yield "n=%d" % n, lhs, rhs


RELATIONS = {
    "regular-recursion": _rel_regular_recursion,
    "adjacent-real-commutation": _rel_adjacent_real,
    "modified-imaginary": _rel_modified_imaginary,
    "imaginary-recursion": _rel_imaginary_recursion,
    "imaginary-real-straightening": _rel_imaginary_real,
    "divided-power-product": _rel_divided_power_product,
}


def verify_relation(rel_id, q, budget=DEFAULT_BUDGET, **params):
    """Evaluate both sides of a registered identity over GF(q)."""
    if rel_id not in RELATIONS:
        raise KeyError("unknown relation id %r" % rel_id)
    orc = get_oracle(q, None, budget)
    cases = []
    status = "equal"
    first = None
    for name, lhs, rhs in RELATIONS[rel_id](orc, **params):
        ok, where = compare(lhs, rhs)
        cases.append({"case": name, "status": "equal" if ok else "unequal"})
        if not ok and first is None:
            status = "unequal"
            a, b = lhs.get(where), rhs.get(where)
            first = {"case": name, "class": repr(where),
                     "lhs": None if a is None else [str(x) for x in a.pair()],
                     "rhs": None if b is None else [str(x) for x in b.pair()]}
    report = {"relation": rel_id, "q": q, "status": status, "cases": cases}
    if first is not None:
        report["first_difference"] = first
    return report
