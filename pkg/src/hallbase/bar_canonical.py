"""Triangular solver producing canonical bases from monomial/PBW transitions.

A family is an ordered list of indices (a linear extension of a strict
partial order), and for every index the PBW coordinates of a bar-invariant
monomial.  From the transition matrix H the bar matrix is Omega = bar(H)^-1 H,
and the canonical coefficients zeta solve zeta = bar(zeta) Omega with zeta
unitriangular and strictly lower entries in v^-1 Z[v^-1].
"""

from dataclasses import dataclass, field
import logging
from typing import Callable, List

from .exact_arith import LaurentPoly, RationalFunction, ZERO, ONE, as_rf
from . import kronecker_model as km
from . import straightening as st
from . import tube_algebra as ta

__all__ = [
    "BasisFamily", "TransitionData", "TriangularityError", "build_H",
    "bar_matrix", "solve_zeta", "canonical_basis", "solve_antisymmetric",
    "kronecker_family", "tube_family", "mat_mul", "mat_bar", "is_identity",
    "check_bar_invariant", "run",
]

log = logging.getLogger(__name__)

_RZERO = RationalFunction(0)
_RONE = RationalFunction(1)


class TriangularityError(Exception):
    pass


@dataclass
class BasisFamily:
    label: str
    indices: list
    less: Callable           # strict order: less(a, b) means a below b
    monomial: Callable       # index -> {index: coefficient} in PBW coordinates
    to_element: Callable = None   # {index: coefficient} -> element
    integral: bool = True
    serialize: Callable = None


@dataclass
class TransitionData:
    indices: list
    H: list
    Omega: list
    zeta: list


def _rf(x):
    return as_rf(x)


def mat_bar(M):
    return [[x.bar() for x in row] for row in M]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = _RZERO
            for t in range(k):
                a = A[i][t]
                if a:
                    b = B[t][j]
                    if b:
                        s = s + a * b
            row.append(s)
        out.append(row)
    return out


def is_identity(M):
    return all((M[i][j] == _RONE) if i == j else (not M[i][j]) for i in range(len(M)) for j in range(len(M)))


def _lower_unitriangular_inverse(L):
    n = len(L)
    X = [[_RZERO] * n for _ in range(n)]
    for i in range(n):
        X[i][i] = _RONE
        for j in range(i - 1, -1, -1):
            s = _RZERO
            for k in range(j, i):
                if L[i][k] and X[k][j]:
                    s = s + L[i][k] * X[k][j]
            X[i][j] = -s
    return X


def _check_unitriangular(M, indices, less, what):
    n = len(indices)
    for i in range(n):
        if M[i][i] != _RONE:
            raise TriangularityError("%s: diagonal entry at %r is %s" % (what, indices[i], M[i][i]))
        for j in range(n):
            if j != i and M[i][j] and not less(indices[j], indices[i]):
                raise TriangularityError("%s: nonzero entry at (%r, %r) outside the order" % (what, indices[i], indices[j]))


def build_H(family):
    """Rows: PBW coordinates of the monomial attached to each index."""
    idx = family.indices
    pos = {c: i for i, c in enumerate(idx)}
    n = len(idx)
    H = [[_RZERO] * n for _ in range(n)]
    for i, c in enumerate(idx):
        for c2, a in family.monomial(c).items():
            if c2 not in pos:
                raise TriangularityError("monomial of %r leaves the weight space at %r" % (c, c2))
            H[i][pos[c2]] = _rf(a)
    _check_unitriangular(H, idx, family.less, "H")
    if family.integral:
        for i in range(n):
            for j in range(n):
                x = H[i][j]
                if x and not (x.is_laurent() and x.as_laurent().is_integral()):
                    log.warning("non-integral transition entry at (%r, %r): %s", idx[i], idx[j], x)
    return H


def bar_matrix(H):
    return mat_mul(_lower_unitriangular_inverse(mat_bar(H)), H)


def solve_antisymmetric(r):
    """x in v^-1 Q[v^-1] with x - bar(x) = r."""
    r = _rf(r)
    if not r:
        return _RZERO
    if not r.is_laurent():
        raise ArithmeticError("right-hand side is not a Laurent polynomial: %s" % r)
    p = r.as_laurent()
    if p.coeff(0):
        raise ArithmeticError("right-hand side has nonzero constant term: %s" % p)
    for k, a in p.items():
        if p.coeff(-k) != -a:
            raise ArithmeticError("right-hand side is not bar-antisymmetric: %s" % p)
    return RationalFunction(LaurentPoly({k: a for k, a in p.items() if k < 0}))


def solve_zeta(Omega, indices, less):
    n = len(indices)
    Z = [[_RZERO] * n for _ in range(n)]
    for c in range(n):
        Z[c][c] = _RONE
        for cp in range(c - 1, -1, -1):
            r = _RZERO
            for cpp in range(cp + 1, c + 1):
                z, w = Z[c][cpp], Omega[cpp][cp]
                if z and w:
                    r = r + z.bar() * w
            x = solve_antisymmetric(r)
            if x and not less(indices[cp], indices[c]):
                raise TriangularityError("canonical coefficient at incomparable pair (%r, %r)" % (indices[c], indices[cp]))
            Z[c][cp] = x
    return Z


def check_bar_invariant(Omega, zeta):
    """zeta = bar(zeta) * Omega row by row."""
    return mat_mul(mat_bar(zeta), Omega) == zeta


def canonical_basis(family, return_data=False):
    H = build_H(family)
    Om = bar_matrix(H)
    _check_unitriangular(Om, family.indices, family.less, "Omega")
    if not is_identity(mat_mul(mat_bar(Om), Om)):
        raise TriangularityError("bar matrix is not an involution")
    Z = solve_zeta(Om, family.indices, family.less)
    if not check_bar_invariant(Om, Z):
        raise TriangularityError("solution is not bar-invariant")
    if family.integral:
        for i, row in enumerate(Z):
            for j, x in enumerate(row):
                if x and not x.as_laurent().is_integral():
                    log.warning("non-integral canonical coefficient at (%r, %r): %s", family.indices[i], family.indices[j], x)
    elems = []
    for i, c in enumerate(family.indices):
        coords = {family.indices[j]: Z[i][j] for j in range(len(family.indices)) if Z[i][j]}
        elems.append(family.to_element(coords) if family.to_element else coords)
    if return_data:
        return elems, TransitionData(list(family.indices), H, Om, Z)
    return elems


# -- families ------------------------------------------------------------------

def _kr_less(a, b):
    return km.geometric_less(a, b) is km.Order.LESS


def kronecker_family(d):
    d = d if isinstance(d, km.DimVector) else km.DimVector(*d)
    return BasisFamily(
        label="kronecker %d,%d" % (d.d1, d.d2),
        indices=km.sorted_indices(d),
        less=_kr_less,
        monomial=lambda c: st.monomial_of_index(c).terms,
        to_element=st.AlgebraElement,
        integral=True,
        serialize=lambda c: c.serialize(),
    )


def _tube_less(a, b):
    return a != b and ta.deg_leq(a, b)


def _tube_element(coords):
    out = ta.TubeElement()
    for lam, z in sorted(coords.items(), key=lambda kv: kv[0].serialize()):
        out = out + ta.pbw_E(lam).scale(z)
    return out


def tube_family(rank, dims):
    dims = tuple(dims)
    if len(dims) != rank:
        raise ValueError("dimension vector does not match rank")
    return BasisFamily(
        label="tube %d %s" % (rank, ",".join(map(str, dims))),
        indices=ta.aperiodic_classes(dims),
        less=_tube_less,
        monomial=ta.transition_row,
        to_element=_tube_element,
        integral=True,
        serialize=lambda m: m.serialize(),
    )


def run(family):
    """Canonical basis with transition data for a family."""
    return canonical_basis(family, return_data=True)
