"""Composition algebra of a tube (nilpotent representations of a cyclic quiver).

Vertices are 1..n in the public API (arrows i -> i+1 mod n); internally tops
are stored 0-based, so ``parts[i]`` lists the lengths of the blocks S_{i+1}[l].
Elements are expanded in the normalized basis <M(lambda)>.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import json
import re

import numpy as np

from .exact_arith import LaurentPoly, RationalFunction, ONE, ZERO, as_rf, gauss_binom_q
from .kronecker_model import partitions

__all__ = [
    "Multipartition", "TubeElement", "parse_word", "word_str", "tight",
    "dim_hom", "end_dim", "aperiodic", "generic_ext", "wp",
    "distinguished_word", "filtration_polys", "monomial_m", "pbw_E",
    "deg_leq", "multipartitions", "aperiodic_classes", "euler", "socle_step",
    "dim_vectors", "word_degree_bound", "order_key",
]


@dataclass(frozen=True)
class Multipartition:
    parts: tuple

    def __init__(self, parts):
        ps = tuple(tuple(sorted((int(x) for x in p), reverse=True)) for p in parts)
        if len(ps) < 2:
            raise ValueError("tube rank must be >= 2")
        if any(x <= 0 for p in ps for x in p):
            raise ValueError("partition parts must be positive")
        object.__setattr__(self, "parts", ps)

    @classmethod
    def zero(cls, rank):
        return cls([()] * rank)

    @property
    def rank(self):
        return len(self.parts)

    def blocks(self):
        """(top, length) pairs, top 0-based."""
        return [(i, l) for i, p in enumerate(self.parts) for l in p]

    def dim_vector(self):
        n = self.rank
        d = [0] * n
        for i, l in self.blocks():
            for p in range(l):
                d[(i + p) % n] += 1
        return tuple(d)

    def total(self):
        return sum(sum(p) for p in self.parts)

    def is_zero(self):
        return not any(self.parts)

    def label(self):
        return self.parts

    def to_json(self):
        return {"rank": self.rank, "parts": [list(p) for p in self.parts]}

    @classmethod
    def from_json(cls, obj):
        if len(obj["parts"]) != obj["rank"]:
            raise ValueError("rank does not match number of partitions")
        return cls(obj["parts"])

    def serialize(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return "Multipartition(%s)" % (list(map(list, self.parts)),)


def _mp(x, rank=None):
    if isinstance(x, Multipartition):
        return x
    return Multipartition(x)


# -- words ------------------------------------------------------------------

def tight(seq):
    """Merge equal neighbours: [(1,1),(1,1),(2,1)] -> ((1,2),(2,1))."""
    out = []
    for j, e in seq:
        if e <= 0:
            raise ValueError("exponents must be positive")
        if out and out[-1][0] == j:
            out[-1] = (j, out[-1][1] + e)
        else:
            out.append((j, e))
    return tuple(out)


_WORD_TOKEN = re.compile(r"\s*(\d+)(?:\^(\d+))?")


def parse_word(s):
    """'1^2 2 1' or '121' (single-digit vertices) -> tight word."""
    s = s.strip()
    if not s:
        return ()
    if " " not in s and "^" not in s and s.isdigit():
        return tight((int(c), 1) for c in s)
    out, pos = [], 0
    while pos < len(s):
        m = _WORD_TOKEN.match(s, pos)
        if not m:
            raise ValueError("cannot parse word at position %d: %r" % (pos, s))
        out.append((int(m.group(1)), int(m.group(2) or 1)))
        pos = m.end()
    return tight(out)


def word_str(w):
    return " ".join("%d" % j + ("^%d" % e if e > 1 else "") for j, e in w)


# -- Hom dimensions by exact rational linear algebra -------------------------

def _block_model(n, top, length):
    """Integer matrices of S_top[length] (top 0-based)."""
    dims = [0] * n
    pos = []
    for p in range(length):
        v = (top + p) % n
        pos.append((v, dims[v]))
        dims[v] += 1
    mats = [np.zeros((dims[(u + 1) % n], dims[u]), dtype=np.int64) for u in range(n)]
    for p in range(length - 1):
        v, iv = pos[p]
        _, iw = pos[p + 1]
        mats[v][iw, iv] = 1
    return dims, mats


def _rank_rational(M):
    rows = [[Fraction(int(x)) for x in r] for r in M]
    rk, ncols = 0, (len(rows[0]) if rows else 0)
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        pr = rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][c] != 0:
                f = rows[i][c] / pr[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rk += 1
    return rk


@lru_cache(maxsize=None)
def _hom_blocks(n, a, b):
    """dim Hom(S_a[la], S_b[lb]) from the intertwiner system over Q."""
    dm, Mm = _block_model(n, *a)
    dn, Nm = _block_model(n, *b)
    cols = [0]
    for v in range(n):
        cols.append(cols[-1] + dn[v] * dm[v])
    blocks = []
    for u in range(n):
        t = (u + 1) % n
        r = dn[t] * dm[u]
        if r == 0:
            continue
        D = np.zeros((r, cols[-1]), dtype=np.int64)
        if dn[u] * dm[u]:
            D[:, cols[u]:cols[u + 1]] += np.kron(Nm[u], np.eye(dm[u], dtype=np.int64))
        if dn[t] * dm[t]:
            D[:, cols[t]:cols[t + 1]] -= np.kron(np.eye(dn[t], dtype=np.int64), Mm[u].T)
        blocks.append(D)
    if not blocks:
        return cols[-1]
    return cols[-1] - _rank_rational(np.vstack(blocks).tolist())


def dim_hom(mu, lam):
    """dim Hom(M(mu), M(lam))."""
    mu, lam = _mp(mu), _mp(lam)
    if mu.rank != lam.rank:
        raise ValueError("rank mismatch")
    n = mu.rank
    return sum(_hom_blocks(n, a, b) for a in mu.blocks() for b in lam.blocks())


def end_dim(pi):
    return dim_hom(pi, pi)


def euler(a, b):
    n = len(a)
    return sum(a[i] * b[i] for i in range(n)) - sum(a[i] * b[(i + 1) % n] for i in range(n))


def aperiodic(pi):
    pi = _mp(pi)
    top = max((l for p in pi.parts for l in p), default=0)
    for l in range(1, top + 1):
        if all(l in p for p in pi.parts):
            return False
    return True


# -- enumeration --------------------------------------------------------------

def dim_vectors(rank, total):
    """All dimension vectors of the given rank and total dimension."""
    if rank == 1:
        return [(total,)]
    return [(a,) + rest for a in range(total, -1, -1) for rest in dim_vectors(rank - 1, total - a)]


@lru_cache(maxsize=None)
def _multipartitions(dims):
    n = len(dims)
    total = sum(dims)
    out = set()
    blocks = [(i, l) for i in range(n) for l in range(1, total + 1)]

    def rec(k, rem, chosen):
        if not any(rem):
            lab = [[] for _ in range(n)]
            for i, l in chosen:
                lab[i].append(l)
            out.add(Multipartition(lab))
            return
        if k == len(blocks):
            return
        rec(k + 1, rem, chosen)
        i, l = blocks[k]
        r = list(rem)
        c = list(chosen)
        while True:
            for p in range(l):
                r[(i + p) % n] -= 1
            if min(r) < 0:
                return
            c.append((i, l))
            rec(k + 1, tuple(r), tuple(c))

    rec(0, tuple(dims), ())
    return tuple(sorted(out, key=lambda m: m.serialize()))


def multipartitions(dims):
    return list(_multipartitions(tuple(dims)))


def order_key(pi):
    """Linear extension of the degeneration order (smaller first)."""
    return (-end_dim(pi), pi.serialize())


def aperiodic_classes(dims):
    return sorted((m for m in _multipartitions(tuple(dims)) if aperiodic(m)), key=order_key)


# -- degeneration order --------------------------------------------------------

def deg_leq(mu, lam):
    """mu below lam: dim Hom(S, M(mu)) >= dim Hom(S, M(lam)) for all test S."""
    mu, lam = _mp(mu), _mp(lam)
    if mu.dim_vector() != lam.dim_vector():
        raise ValueError("dimension vectors differ")
    n = mu.rank
    total = mu.total()
    for i in range(n):
        for l in range(1, total + 1):
            t = Multipartition([(l,) if k == i else () for k in range(n)])
            if dim_hom(t, mu) < dim_hom(t, lam):
                return False
    return True


# -- Hall numbers against semisimple modules --------------------------------

def _qpow(k):
    return LaurentPoly.monomial(2 * k)


@lru_cache(maxsize=None)
def socle_step(x, j, e):
    """{L: g^L_{X, e S_j}} as polynomials in q = v^2 (j 0-based).

    L arises from X by lengthening r_l blocks ending just before j
    (r_1 new copies of S_j); the submodules W = e S_j inside soc_j(L) that
    realize this pattern are counted via a filtered Grassmannian."""
    n = x.rank
    total = x.total() + e
    # blocks of X with socle at j-1, by length l-1 (top = j-l+1)
    avail = {}
    for l in range(2, total + 1):
        top = (j - l + 1) % n
        avail[l] = x.parts[top].count(l - 1)
    avail[1] = e
    lengths = sorted(avail)
    out = {}

    def rec(idx, left, chosen):
        if idx == len(lengths):
            if left == 0:
                yield dict(chosen)
            return
        l = lengths[idx]
        for r in range(0, min(left, avail[l]) + 1):
            chosen.append((l, r))
            yield from rec(idx + 1, left - r, chosen)
            chosen.pop()

    for r in rec(0, e, []):
        parts = [list(p) for p in x.parts]
        for l, k in r.items():
            if not k:
                continue
            top = (j - l + 1) % n
            for _ in range(k):
                if l > 1:
                    parts[top].remove(l - 1)
                parts[top].append(l)
        L = Multipartition(parts)
        m = {l: L.parts[(j - l + 1) % n].count(l) for l in lengths}
        g = ONE
        for l in lengths:
            rl = r.get(l, 0)
            above = sum(m[k] - r.get(k, 0) for k in lengths if k > l)
            g = g * gauss_binom_q(m[l], rl) * _qpow(rl * above)
        out[L] = out.get(L, ZERO) + g
    return out


@lru_cache(maxsize=None)
def filtration_polys(rank, w):
    """{lambda: g^lambda_w(q)} for a tight word w (1-based vertices)."""
    cur = {Multipartition.zero(rank): ONE}
    for j, e in w:
        if not 1 <= j <= rank:
            raise ValueError("vertex %d out of range" % j)
        nxt = {}
        for x, c in cur.items():
            for L, g in socle_step(x, j - 1, e).items():
                nxt[L] = nxt.get(L, ZERO) + c * g
        cur = {k: v for k, v in nxt.items() if v}
    return cur


def _word_dim(rank, w):
    d = [0] * rank
    for j, e in w:
        d[j - 1] += e
    return tuple(d)


def _twist(rank, w):
    """Exponent of v relating the monomial to sum g u_lambda."""
    c = sum(e * e - e for _, e in w)
    for r in range(len(w)):
        for s in range(r + 1, len(w)):
            a = [0] * rank
            b = [0] * rank
            a[w[r][0] - 1] = w[r][1]
            b[w[s][0] - 1] = w[s][1]
            c += euler(a, b)
    return c


def word_degree_bound(rank, w, lam):
    """Degree bound (in q) for g^lam_w from iterating Riedtmann's formula."""
    dim = sum(_word_dim(rank, w))
    return max(0, end_dim(lam) - dim - _twist(rank, w))


# -- generic extensions --------------------------------------------------------

def _min_end(cands):
    best = min(end_dim(c) for c in cands)
    top = [c for c in cands if end_dim(c) == best]
    if len(top) != 1:
        raise ArithmeticError("generic extension not unique: %r" % (top,))
    return top[0]


def _single_vertex(b):
    """(j, e) if M(b) = e S_j semisimple, else None."""
    hit = [(i, len(p)) for i, p in enumerate(b.parts) if p]
    if len(hit) == 1 and all(l == 1 for l in b.parts[hit[0][0]]):
        return hit[0]
    return None


@lru_cache(maxsize=None)
def _generic_ext(a, b):
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    sv = _single_vertex(b)
    if sv is not None:
        return _min_end(list(socle_step(a, sv[0], sv[1])))
    from .finite_field_oracle import get_oracle
    cands = set()
    for q in (2, 3):
        cands.update(Multipartition(L) for L, g in get_oracle(q, a.rank).hall_product(a.parts, b.parts).items() if g)
    return _min_end(sorted(cands, key=lambda m: m.serialize()))


def generic_ext(a, b):
    """M(a) <> M(b): the extension of M(a) by M(b) with minimal dim End."""
    a, b = _mp(a), _mp(b)
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    return _generic_ext(a, b)


def _semisimple(rank, j, e):
    return Multipartition([(1,) * e if i == j - 1 else () for i in range(rank)])


def wp(w, rank):
    """Left fold of generic extensions along the word."""
    cur = Multipartition.zero(rank)
    for j, e in tight(w):
        cur = generic_ext(cur, _semisimple(rank, j, e))
    return cur


# -- distinguished words -------------------------------------------------------

def _top_dims(x):
    """dim of the top of M(x) at each vertex (0-based)."""
    t = [0] * x.rank
    for i, l in x.blocks():
        t[i] += 1
    return t


def _candidates(x, prev):
    """Peeling moves (j, e): quotient e S_j off the top, full top first."""
    t = _top_dims(x)
    out = []
    for j in range(x.rank):
        if j + 1 == prev or not t[j]:
            continue
        for e in range(t[j], 0, -1):
            out.append((j, e))
    out.sort(key=lambda je: (-je[1], je[0]))
    return out


def _peel(x, j, e):
    """Submodule classes W with M(x)/W = e S_j (full top: unique W)."""
    if e == _top_dims(x)[j]:
        parts = [list(p) for p in x.parts]
        nxt = (j + 1) % x.rank
        for l in list(parts[j]):
            parts[j].remove(l)
            if l > 1:
                parts[nxt].append(l - 1)
        return [Multipartition(parts)]
    return None


@lru_cache(maxsize=None)
def distinguished_word(pi, limit=200000):
    """A tight word w with wp(w) = pi and g^pi_w = 1 (deterministic search)."""
    pi = _mp(pi)
    if not aperiodic(pi):
        raise ValueError("multipartition is not aperiodic: %r" % (pi,))
    if pi.is_zero():
        return ()
    rank = pi.rank
    budget = [limit]

    def ok(w):
        return wp(w, rank) == pi and filtration_polys(rank, w).get(pi) == ONE

    def greedy(x, prev, acc):
        # peel full tops only; the word is read from the top down
        if x.is_zero():
            w = tuple(acc)
            return w if ok(w) else None
        for j, e in _candidates(x, prev):
            if e != _top_dims(x)[j]:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                return None
            (W,) = _peel(x, j, e)
            r = greedy(W, j + 1, acc + [(j + 1, e)])
            if r is not None:
                return r
        return None

    w = greedy(pi, None, [])
    if w is not None:
        return w
    # breadth-first over all tight words of the right content
    dim = pi.dim_vector()
    for w in _words_of_content(rank, dim):
        budget[0] -= 1
        if budget[0] < 0:
            break
        if ok(w):
            return w
    raise RuntimeError("no distinguished word found for %r" % (pi,))


def _words_of_content(rank, dim):
    total = sum(dim)

    def rec(rem, prev):
        if not any(rem):
            yield ()
            return
        for j in range(rank):
            if j + 1 == prev:
                continue
            for e in range(rem[j], 0, -1):
                r = list(rem)
                r[j] -= e
                for rest in rec(tuple(r), j + 1):
                    yield ((j + 1, e),) + rest

    words = sorted(rec(tuple(dim), None), key=lambda w: (len(w), w))
    return words


# -- elements -------------------------------------------------------------------

class TubeElement:
    """Finite sum of <M(lambda)> with coefficients in Q(v)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, a in (terms or {}).items():
            a = as_rf(a)
            if a:
                self.terms[k] = self.terms[k] + a if k in self.terms else a
                if not self.terms[k]:
                    del self.terms[k]

    def __add__(self, other):
        out = dict(self.terms)
        for k, a in other.terms.items():
            s = out[k] + a if k in out else a
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        t = TubeElement()
        t.terms = out
        return t

    def __neg__(self):
        t = TubeElement()
        t.terms = {k: -a for k, a in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return TubeElement({k: a * as_rf(s) for k, a in self.terms.items()})

    def coeff(self, lam):
        return self.terms.get(lam, RationalFunction(0))

    def __eq__(self, other):
        return isinstance(other, TubeElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].serialize())

    def to_json(self):
        return {"terms": [{"index": k.to_json(), "coeff": a.to_json()} for k, a in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj):
        return cls({Multipartition.from_json(t["index"]): RationalFunction.from_json(t["coeff"]) for t in obj["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)<%s>" % (a, list(map(list, k.parts))) for k, a in self.sorted_terms())


@lru_cache(maxsize=None)
def _monomial(rank, w):
    polys = filtration_polys(rank, w)
    dim = sum(_word_dim(rank, w))
    c = _twist(rank, w)
    return TubeElement({lam: g.shift(c + dim - end_dim(lam)) for lam, g in polys.items()})


def monomial_m(w, rank):
    """E_{j1}^(e1) * ... * E_{jt}^(et) in the <M(lambda)> basis."""
    return _monomial(rank, tight(w))


def transition_row(pi):
    """{lambda aperiodic: coefficient of E_lambda in the monomial of pi}."""
    pi = _mp(pi)
    w = distinguished_word(pi)
    polys = filtration_polys(pi.rank, w)
    dpi = end_dim(pi)
    out = {}
    for lam, g in polys.items():
        if aperiodic(lam):
            out[lam] = g.shift(dpi - end_dim(lam))
    return out


@lru_cache(maxsize=None)
def _pbw(pi):
    w = distinguished_word(pi)
    out = _monomial(pi.rank, w)
    for lam, c in sorted(transition_row(pi).items(), key=lambda kv: kv[0].serialize()):
        if lam == pi:
            continue
        out = out - _pbw(lam).scale(c)
    return out


def pbw_E(pi):
    pi = _mp(pi)
    if not aperiodic(pi):
        raise ValueError("PBW elements are indexed by aperiodic multipartitions")
    return _pbw(pi)
