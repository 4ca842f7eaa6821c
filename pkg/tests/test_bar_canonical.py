import pytest

from hallbase import bar_canonical as bc
from hallbase import straightening as st
from hallbase import tube_algebra as ta
from hallbase.exact_arith import LaurentPoly, RationalFunction
from hallbase.kronecker_model import PBWIndex

REAL = PBWIndex({0: 1}, (), {0: 1})
D1 = PBWIndex(None, (1,))
ONE = RationalFunction(1)
ZERO = RationalFunction(0)


def vp(k):
    return RationalFunction(LaurentPoly.monomial(k))


def test_H_at_delta():
    fam = bc.kronecker_family((1, 1))
    assert fam.indices == [REAL, D1]
    assert bc.build_H(fam) == [[ONE, ZERO], [vp(-2), ONE]]


def test_H_trivial_weights():
    assert bc.build_H(bc.kronecker_family((1, 0))) == [[ONE]]
    H = bc.build_H(bc.kronecker_family((2, 2)))
    assert len(H) == 6


def test_bar_matrix_examples():
    Om = bc.bar_matrix([[ONE, ZERO], [vp(-2), ONE]])
    assert Om == [[ONE, ZERO], [vp(-2) - vp(2), ONE]]
    assert bc.bar_matrix([[ONE, ZERO], [ZERO, ONE]]) == [[ONE, ZERO], [ZERO, ONE]]
    assert bc.is_identity(bc.mat_mul(bc.mat_bar(Om), Om))


def test_solve_antisymmetric():
    assert bc.solve_antisymmetric(vp(-2) - vp(2)) == vp(-2)
    assert bc.solve_antisymmetric(ZERO) == ZERO
    with pytest.raises(ArithmeticError):
        bc.solve_antisymmetric(vp(0) + vp(2))
    with pytest.raises(ArithmeticError):
        bc.solve_antisymmetric(vp(2))


def test_canonical_basis_at_delta():
    elems, data = bc.run(bc.kronecker_family((1, 1)))
    assert data.zeta == [[ONE, ZERO], [vp(-2), ONE]]
    e1e2 = st.multiply(st.generator("P", 0), st.generator("I", 0))
    e2e1 = st.multiply(st.generator("I", 0), st.generator("P", 0))
    assert elems == [e1e2, e2e1]


def test_minimal_index_is_pbw():
    for d in [(2, 2), (3, 2)]:
        elems, data = bc.run(bc.kronecker_family(d))
        assert elems[0] == st.basis_element(data.indices[0])


def test_tube_rank2_delta_antichain():
    elems, data = bc.run(bc.tube_family(2, (1, 1)))
    assert len(elems) == 2
    assert bc.is_identity(data.zeta)
    assert elems == [ta.pbw_E(pi) for pi in data.indices]


def test_tube_family_rank_check():
    with pytest.raises(ValueError):
        bc.tube_family(2, (1, 1, 1))


def _family(rows, less):
    idx = list(range(len(rows)))
    return bc.BasisFamily("toy", idx, less, lambda c: {j: x for j, x in enumerate(rows[c]) if x})


def test_triangularity_violations():
    less = lambda a, b: a < b
    upper = [[ONE, vp(1)], [ZERO, ONE]]
    with pytest.raises(bc.TriangularityError):
        bc.build_H(_family(upper, less))
    diag = [[vp(1), ZERO], [ZERO, ONE]]
    with pytest.raises(bc.TriangularityError):
        bc.build_H(_family(diag, less))


def test_incomparable_nonzero_coefficient():
    H = [[ONE, ZERO], [vp(-2), ONE]]
    fam = _family(H, lambda a, b: False)
    with pytest.raises(bc.TriangularityError):
        bc.canonical_basis(fam)
