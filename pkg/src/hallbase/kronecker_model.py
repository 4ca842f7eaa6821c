"""Combinatorics of the Kronecker quiver (two arrows 2 -> 1).

Dimension vectors are pairs (d1, d2) with d1 at the sink.  Positive roots
come in three families: preprojective (n+1, n), imaginary m*delta and
preinjective (n, n+1).  A PBW index records a multiplicity for every root,
with the imaginary multiplicities packed into a partition.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
import json

__all__ = [
    "DimVector", "Root", "PBWIndex", "Order",
    "ALPHA1", "ALPHA2", "DELTA",
    "euler_form", "root_less", "weight", "enumerate_indices", "end_dim",
    "orbit_dim", "geometric_less", "dominates", "partitions", "order_key",
    "sorted_indices",
]


@dataclass(frozen=True, order=True)
class DimVector:
    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 0 or self.d2 < 0:
            raise ValueError("dimension vector must be nonnegative: %r" % ((self.d1, self.d2),))

    def __add__(self, other):
        return DimVector(self.d1 + other.d1, self.d2 + other.d2)

    def scale(self, k):
        return DimVector(k * self.d1, k * self.d2)

    def total(self):
        return self.d1 + self.d2

    def __iter__(self):
        yield self.d1
        yield self.d2


ALPHA1 = DimVector(1, 0)
ALPHA2 = DimVector(0, 1)
DELTA = DimVector(1, 1)


def _dv(d):
    return d if isinstance(d, DimVector) else DimVector(*d)


def euler_form(a, b):
    a, b = _dv(a), _dv(b)
    return a.d1 * b.d1 + a.d2 * b.d2 - 2 * a.d2 * b.d1


@dataclass(frozen=True)
class Root:
    """kind is 'prep', 'imag' or 'prei'."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("prep", "imag", "prei"):
            raise ValueError("unknown root kind %r" % self.kind)
        if self.n < (1 if self.kind == "imag" else 0):
            raise ValueError("bad root parameter %d for %s" % (self.n, self.kind))

    @classmethod
    def Prep(cls, n):
        return cls("prep", n)

    @classmethod
    def Imag(cls, m):
        return cls("imag", m)

    @classmethod
    def Prei(cls, n):
        return cls("prei", n)

    def dim(self):
        if self.kind == "prep":
            return DimVector(self.n + 1, self.n)
        if self.kind == "prei":
            return DimVector(self.n, self.n + 1)
        return DimVector(self.n, self.n)


_KIND_RANK = {"prep": 0, "imag": 1, "prei": 2}


def root_less(r1, r2):
    """Strict total order on real roots; imaginary roots only compare with real ones."""
    k1, k2 = _KIND_RANK[r1.kind], _KIND_RANK[r2.kind]
    if k1 != k2:
        return k1 < k2
    if r1.kind == "prep":
        return r1.n < r2.n
    if r1.kind == "prei":
        return r1.n > r2.n
    return False


class Order(Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "EqualIndex"
    INCOMPARABLE = "Incomparable"


def _freeze_map(m):
    if m is None:
        return ()
    if isinstance(m, dict):
        items = m.items()
    else:
        items = m
    out = {}
    for n, k in items:
        n, k = int(n), int(k)
        if n < 0:
            raise ValueError("root parameter must be >= 0")
        if k < 0:
            raise ValueError("multiplicity must be >= 0")
        if k:
            out[n] = out.get(n, 0) + k
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class PBWIndex:
    prep: tuple = ()
    im: tuple = ()
    prei: tuple = ()

    def __init__(self, prep=None, im=(), prei=None):
        im = tuple(sorted((int(x) for x in im), reverse=True))
        if any(x <= 0 for x in im):
            raise ValueError("imaginary partition parts must be positive")
        object.__setattr__(self, "prep", _freeze_map(prep))
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "prei", _freeze_map(prei))

    def to_json(self):
        return {
            "prep": {str(n): k for n, k in self.prep},
            "im": list(self.im),
            "prei": {str(n): k for n, k in self.prei},
        }

    @classmethod
    def from_json(cls, obj):
        return cls(obj.get("prep", {}), obj.get("im", []), obj.get("prei", {}))

    def serialize(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def is_unit(self):
        return not (self.prep or self.im or self.prei)

    def real_part(self):
        return PBWIndex(self.prep, (), self.prei)

    def __repr__(self):
        parts = []
        if self.prep:
            parts.append("prep=" + ",".join("%d:%d" % x for x in self.prep))
        if self.im:
            parts.append("im=" + ",".join(map(str, self.im)))
        if self.prei:
            parts.append("prei=" + ",".join("%d:%d" % x for x in self.prei))
        return "PBWIndex(%s)" % "; ".join(parts)

    def shorthand(self):
        """Human form such as 'P0^2 * D(2,1) * I1'."""
        out = []
        for n, k in self.prep:
            out.append("P%d" % n + ("^%d" % k if k > 1 else ""))
        if self.im:
            out.append("D(%s)" % ",".join(map(str, self.im)))
        for n, k in sorted(self.prei, reverse=True):
            out.append("I%d" % n + ("^%d" % k if k > 1 else ""))
        return " * ".join(out) if out else "1"


def weight(c):
    d1 = d2 = 0
    for n, k in c.prep:
        d1 += k * (n + 1)
        d2 += k * n
    m = sum(c.im)
    d1 += m
    d2 += m
    for n, k in c.prei:
        d1 += k * n
        d2 += k * (n + 1)
    return DimVector(d1, d2)


@lru_cache(maxsize=None)
def partitions(n, max_part=None):
    """All partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _multisets(d1, d2, kind, start):
    """Multisets of real roots of one family fitting inside (d1, d2).

    Yields (map, used_d1, used_d2)."""
    yield (), 0, 0
    n = start
    while True:
        r = Root(kind, n).dim()
        if r.d1 > d1 or r.d2 > d2:
            return
        kmax = min(d1 // r.d1 if r.d1 else d2, d2 // r.d2 if r.d2 else d1)
        for k in range(1, kmax + 1):
            for rest, u1, u2 in _multisets(d1 - k * r.d1, d2 - k * r.d2, kind, n + 1):
                yield ((n, k),) + rest, u1 + k * r.d1, u2 + k * r.d2
        n += 1


@lru_cache(maxsize=None)
def _enumerate(d1, d2):
    out = []
    for prep, p1, p2 in _multisets(d1, d2, "prep", 0):
        for prei, i1, i2 in _multisets(d1 - p1, d2 - p2, "prei", 0):
            r1, r2 = d1 - p1 - i1, d2 - p2 - i2
            if r1 != r2 or r1 < 0:
                continue
            for lam in partitions(r1):
                out.append(PBWIndex(prep, lam, prei))
    out.sort(key=lambda c: c.serialize())
    return tuple(out)


def enumerate_indices(d):
    d = _dv(d)
    return list(_enumerate(d.d1, d.d2))


def _hom_prep(a, b):
    return max(0, b - a + 1)


def _hom_prei(a, b):
    return max(0, a - b + 1)


@lru_cache(maxsize=None)
def end_dim(c):
    """dim End of P + V_{w delta} + I, tubes of the imaginary parts pairwise distinct."""
    total = 0
    for a, s in c.prep:
        for b, t in c.prep:
            total += s * t * _hom_prep(a, b)
    for a, s in c.prei:
        for b, t in c.prei:
            total += s * t * _hom_prei(a, b)
    total += sum(c.im)
    m = sum(c.im)
    reg = DimVector(m, m)
    pdim = weight(PBWIndex(c.prep))
    idim = weight(PBWIndex(None, (), c.prei))
    total += euler_form(pdim, reg) + euler_form(reg, idim) + euler_form(pdim, idim)
    return total


def orbit_dim(c):
    d = weight(c)
    return 2 * d.d1 * d.d2 - end_dim(c) + euler_form(d, d)


def dominates(a, b):
    """Weak dominance a >= b for partitions of the same size."""
    if sum(a) != sum(b):
        return False
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def geometric_less(c, c2):
    """Compare two indices of the same weight: is c below c2?"""
    if weight(c) != weight(c2):
        raise ValueError("weights differ: %r vs %r" % (weight(c), weight(c2)))
    if c == c2:
        return Order.EQUAL
    o1, o2 = orbit_dim(c), orbit_dim(c2)
    if o1 < o2:
        return Order.LESS
    if o1 > o2:
        return Order.GREATER
    if c.im != c2.im:
        # the dominance-larger partition is the smaller element
        if dominates(c.im, c2.im):
            return Order.LESS
        if dominates(c2.im, c.im):
            return Order.GREATER
    return Order.INCOMPARABLE


def order_key(c):
    """Sort key refining geometric_less into a total order (lower first)."""
    return (orbit_dim(c), tuple(-x for x in c.im), c.serialize())


def sorted_indices(d):
    return sorted(enumerate_indices(d), key=order_key)
