from fractions import Fraction

import pytest

from hallbase.exact_arith import (
    LaurentPoly, RationalFunction, Surd, ONE, qint, qbinom, qfactorial, bar,
    specialize_sqrt, congruent_mod_vinv, gauss_binom_q,
)

v = LaurentPoly.monomial(1)
vi = LaurentPoly.monomial(-1)


def lp(d):
    return LaurentPoly(d)


@pytest.mark.parametrize("n, expected", [
    (0, {}),
    (1, {0: 1}),
    (2, {1: 1, -1: 1}),
    (3, {2: 1, 0: 1, -2: 1}),
])
def test_qint(n, expected):
    assert qint(n) == lp(expected)


def test_qint_is_ratio():
    for n in range(1, 8):
        num = LaurentPoly.monomial(n) - LaurentPoly.monomial(-n)
        assert RationalFunction(num, v - vi) == RationalFunction(qint(n))


@pytest.mark.parametrize("n, k, expected", [
    (2, 1, {1: 1, -1: 1}),
    (4, 2, {4: 1, 2: 1, 0: 2, -2: 1, -4: 1}),
    (5, 0, {0: 1}),
    (5, 5, {0: 1}),
])
def test_qbinom(n, k, expected):
    assert qbinom(n, k) == lp(expected)


def test_qbinom_matches_factorials():
    for n in range(7):
        for k in range(n + 1):
            lhs = RationalFunction(qbinom(n, k))
            rhs = RationalFunction(qfactorial(n), qfactorial(k) * qfactorial(n - k))
            assert lhs == rhs


def test_qbinom_out_of_range():
    with pytest.raises(ValueError):
        qbinom(2, 3)


def test_gauss_binom_counts_subspaces_of_f2():
    # 2-planes in F_2^4
    assert specialize_sqrt(gauss_binom_q(4, 2), 2) == (35, 0)


def test_bar_examples():
    assert bar(RationalFunction(lp({2: 1, 0: 3}))) == RationalFunction(lp({-2: 1, 0: 3}))
    for n in range(11):
        assert bar(RationalFunction(qint(n))) == RationalFunction(qint(n))
    x = RationalFunction(ONE, v - vi)
    assert bar(x) == -x


def test_bar_is_involution_on_quotients():
    f = RationalFunction(lp({3: 2, -1: 1}), lp({2: 1, 0: -1}))
    assert bar(bar(f)) == f


def test_specialize_examples():
    assert specialize_sqrt(RationalFunction(lp({2: 1})), 3) == (3, 0)
    assert specialize_sqrt(RationalFunction(qint(2)), 4) == (Fraction(5, 2), 0)
    assert specialize_sqrt(RationalFunction(qint(2)), 2) == (0, Fraction(3, 2))


def test_specialize_pole():
    with pytest.raises(ZeroDivisionError):
        specialize_sqrt(RationalFunction(ONE, lp({2: 1, 0: -2})), 2)


def test_congruence_examples():
    q = lp({2: 1})
    assert congruent_mod_vinv(RationalFunction(q + 1, q - 1), RationalFunction(1))
    assert not congruent_mod_vinv(RationalFunction(v), RationalFunction(0))
    assert congruent_mod_vinv(RationalFunction(vi + 5), RationalFunction(5))


def test_rational_normal_form_is_canonical():
    a = RationalFunction(lp({2: 1, 0: -1}), lp({1: 1, 0: -1}))
    b = RationalFunction(lp({1: 1, 0: 1}))
    assert a == b and hash(a) == hash(b)
    assert RationalFunction.from_json(a.to_json()) == a


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(ONE, LaurentPoly())


def test_surd_arithmetic():
    s = Surd(1, 1, 2)
    assert s * s.inverse() == Surd(1, 0, 2)
    assert Surd(0, 1, 4) == Surd(2, 0, 4)
