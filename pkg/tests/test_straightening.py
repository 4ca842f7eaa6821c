from hallbase.exact_arith import LaurentPoly, RationalFunction, qint
from hallbase.kronecker_model import PBWIndex, weight
from hallbase.straightening import (
    AlgebraElement, basis_element, e_tilde, generator, monomial_E,
    monomial_of_index, multiply, pbw_pair_coefficients, unit,
)

P0 = PBWIndex({0: 1})
P1 = PBWIndex({1: 1})
I0 = PBWIndex(None, (), {0: 1})
D1 = PBWIndex(None, (1,))
D2 = PBWIndex(None, (2,))
REAL = PBWIndex({0: 1}, (), {0: 1})


def el(d):
    return AlgebraElement(d)


def m(k):
    return LaurentPoly.monomial(k)


def test_basis_element_and_unit():
    assert basis_element(PBWIndex()) == unit()
    assert multiply(unit(), generator("P", 0)) == generator("P", 0)


def test_basis_element_is_ordered_product():
    c = PBWIndex(None, (2, 1))
    assert basis_element(c) == multiply(generator("D", 2), generator("D", 1))


def test_e2_times_e1():
    assert multiply(generator("I", 0), generator("P", 0)) == el({D1: 1, REAL: m(-2)})


def test_e_delta_times_e1():
    got = multiply(generator("D", 1), generator("P", 0))
    assert got == el({P1: qint(2), PBWIndex({0: 1}, (1,)): 1})


def test_pair_of_adjacent_preprojectives():
    got = multiply(generator("P", 1), generator("P", 0))
    assert got == el({PBWIndex({0: 1, 1: 1}): m(2)})


def test_divided_power_merge():
    assert multiply(generator("P", 0), generator("P", 0)) == el({PBWIndex({0: 2}): qint(2)})


def test_e_tilde_small():
    assert e_tilde(1) == el({D1: 1})
    assert e_tilde(2) == el({D2: qint(2)}) - multiply(generator("D", 1), generator("D", 1)).scale(m(-1))


def test_e_tilde_three():
    d = lambda k: generator("D", k)
    expected = (el({PBWIndex(None, (3,)): qint(3)})
                - multiply(e_tilde(2), d(1)).scale(m(-1))
                - multiply(d(1), d(2)).scale(m(-2)))
    assert e_tilde(3) == expected


def test_monomial_E_examples():
    assert monomial_E((1, 1)) == el({D1: 1, REAL: m(-2)})
    assert monomial_E((1, 0)) == generator("P", 0)
    assert monomial_E((0, 0)) == unit()
    lead = monomial_E((2, 1))
    assert lead.coeff(P1) == RationalFunction(1)


def test_monomial_of_index_examples():
    assert monomial_of_index(D1) == monomial_E((1, 1))
    assert monomial_of_index(REAL) == basis_element(REAL)
    assert monomial_of_index(PBWIndex(None, (2, 1))) == multiply(monomial_E((2, 2)), monomial_E((1, 1)))


def test_products_are_homogeneous():
    gens = [generator("P", 0), generator("P", 1), generator("I", 0), generator("I", 1), generator("D", 1)]
    for x in gens:
        for y in gens:
            z = multiply(x, y)
            assert len(z.weights()) == 1


def test_pair_coefficients_frozen():
    # P_(m+r) P_m = sum_h c_h P_(m+h) P_(m+r-h); values confirmed against GF(2), GF(3), GF(4) counts
    lp = LaurentPoly
    assert pbw_pair_coefficients(1) == (m(2),)
    assert pbw_pair_coefficients(2) == (m(2), lp({2: 1, 0: -1}))
    assert pbw_pair_coefficients(3) == (m(2), lp({4: 1, 0: -1}))
    assert pbw_pair_coefficients(4) == (m(2), lp({4: 1, 0: -1}), lp({4: 1, 2: -1}))


def test_pair_rewrite_independent_of_offset():
    for r in (1, 2, 3):
        for base in (0, 1, 2):
            got = multiply(generator("P", base + r), generator("P", base))
            expected = AlgebraElement()
            for h, c in enumerate(pbw_pair_coefficients(r)):
                expected = expected + multiply(generator("P", base + h), generator("P", base + r - h)).scale(c)
            assert got == expected


def test_json_roundtrip():
    x = multiply(generator("I", 1), generator("P", 0))
    assert AlgebraElement.from_json(x.to_json()) == x
