import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl1zeta.ratfunc import (LaurentPoly, RationalFunc, ZeroDenominatorError,
                             rf_add, rf_close, rf_discrepancy, rf_div,
                             rf_dual_subst, rf_mul, rf_series_coeffs)

Q = 5


def geom(q, alpha=1.0):
    # 1 / (1 - alpha X)
    return RationalFunc(LaurentPoly.one(q),
                        LaurentPoly.one(q) - LaurentPoly.monomial(q, 1, alpha))


def test_inverse_pair():
    one = RationalFunc.one(Q)
    x = RationalFunc.monomial(Q, 1)
    assert rf_close(rf_mul(geom(Q), one - x), one)


def test_common_denominator():
    a, b = 0.3 + 0.1j, -0.7j
    lhs = rf_add(geom(Q, a), geom(Q, b))
    num = LaurentPoly(Q, {0: 2.0, 1: -(a + b)})
    den = (LaurentPoly.one(Q) - LaurentPoly.monomial(Q, 1, a)) * \
          (LaurentPoly.one(Q) - LaurentPoly.monomial(Q, 1, b))
    assert rf_close(lhs, RationalFunc(num, den))


def test_cancellation_to_one():
    poly = LaurentPoly(Q, {0: 1.0, 1: -1.0})
    assert rf_close(RationalFunc(poly, poly), RationalFunc.one(Q))


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroDenominatorError):
        rf_div(RationalFunc.one(Q), RationalFunc.zero(Q))
    with pytest.raises(ZeroDenominatorError):
        RationalFunc(LaurentPoly.one(Q), LaurentPoly.zero(Q))


def test_dual_subst_defining_cases():
    x = RationalFunc.monomial(Q, 1)
    d = rf_dual_subst(x)
    # X -> q^{-1} X^{-1}
    assert rf_close(d, RationalFunc.monomial(Q, -1, 1.0 / Q))
    c = RationalFunc.const(Q, 2.5 - 1j)
    assert rf_close(rf_dual_subst(c), c)


def test_dual_subst_numeric_oracle():
    # evaluating the substituted function at s must match the original at 1-s
    rng = random.Random(1)
    a = RationalFunc(LaurentPoly(Q, {0: 1, 1: 0.3 + 0.1j}),
                     LaurentPoly(Q, {0: 1, 1: -0.2j, 2: 0.05}))
    da = rf_dual_subst(a)
    for _ in range(5):
        s = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        assert abs(da.eval_at_s(s) - a.eval_at_s(1 - s)) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False,
                                   allow_infinity=False), min_size=1, max_size=4),
       st.lists(st.complex_numbers(min_magnitude=0.1, max_magnitude=2,
                                   allow_nan=False, allow_infinity=False),
                min_size=1, max_size=3))
def test_dual_subst_involution(num_coeffs, den_coeffs):
    num = LaurentPoly(Q, dict(enumerate(num_coeffs, start=-1)))
    den = LaurentPoly.one(Q) + LaurentPoly(Q, dict(enumerate(den_coeffs, start=1)))
    if num.is_zero():
        return
    a = RationalFunc(num, den)
    scale = max(a.num.max_abs(), a.den.max_abs(), 1.0)
    assert rf_discrepancy(rf_dual_subst(rf_dual_subst(a)), a) < 1e-10 * scale ** 2


def test_series_geometric():
    assert rf_series_coeffs(geom(Q, 0.5), 0, 3) == [1, 0.5, 0.25, 0.125]


def test_series_long_division_oracle():
    # (1+X)/(1-X) = 1 + 2X + 2X^2 + ... (long division)
    a = RationalFunc(LaurentPoly(Q, {0: 1, 1: 1}),
                     LaurentPoly(Q, {0: 1, 1: -1}))
    assert rf_series_coeffs(a, 0, 2) == [1, 2, 2]


def test_series_monomial():
    c = 1.5 - 2j
    a = RationalFunc.monomial(Q, 2, c)
    assert rf_series_coeffs(a, 0, 3) == [0, 0, c, 0]


def test_series_of_product_is_convolution():
    rng = random.Random(3)
    for _ in range(10):
        a = RationalFunc(LaurentPoly(Q, {e: complex(rng.uniform(-1, 1)) for e in range(-2, 2)}),
                         LaurentPoly(Q, {0: 1, 1: rng.uniform(-0.5, 0.5), 2: rng.uniform(-0.5, 0.5)}))
        b = RationalFunc(LaurentPoly(Q, {e: complex(rng.uniform(-1, 1)) for e in range(0, 3)}),
                         LaurentPoly(Q, {0: 1, 1: rng.uniform(-0.5, 0.5)}))
        la, lb = a.num.min_exp(), b.num.min_exp()
        hi = 6
        sa = rf_series_coeffs(a, la, hi)
        sb = rf_series_coeffs(b, lb, hi)
        sab = rf_series_coeffs(a * b, la + lb, 4)
        for i, m in enumerate(range(la + lb, 5)):
            conv = sum(sa[u - la] * sb[m - u - lb]
                       for u in range(la, m - lb + 1)
                       if u - la < len(sa) and 0 <= m - u - lb < len(sb))
            assert abs(conv - sab[i]) < 1e-9


def test_equality_is_equivalence():
    # a/b == c/d iff ad - cb ~ 0; reflexive, symmetric, transitive on scaled copies
    a = RationalFunc(LaurentPoly(Q, {0: 2, 1: 1j}), LaurentPoly(Q, {0: 1, 1: 0.5}))
    b = RationalFunc(a.num.scale(3.0), a.den.scale(3.0))
    c = RationalFunc(a.num * a.den, a.den * a.den)
    assert rf_close(a, a) and rf_close(a, b) and rf_close(b, c) and rf_close(a, c)


def test_canonical_form_den_constant_term_one():
    a = RationalFunc(LaurentPoly(Q, {0: 3.0}),
                     LaurentPoly(Q, {1: 2.0, 2: -1.0}))  # den = 2X - X^2
    assert a.den.coeffs[0] == 1
    assert a.den.min_exp() == 0
    # monomial factor moved into the numerator
    assert a.num.min_exp() == -1


def test_nan_guard():
    import math
    with pytest.raises(ArithmeticError):
        LaurentPoly(Q, {0: complex(math.nan, 0)})
