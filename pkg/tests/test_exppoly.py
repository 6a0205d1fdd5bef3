import math

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from wlrecursion.exppoly import ExpPoly, ParameterError, as_rational

ONE = mpq(1)


def E(terms, rate=1):
    return ExpPoly(rate, terms)


def test_add_cancellation():
    f = E({(0, 0): 1, (1, 0): -1})
    g = E({(1, 0): 1})
    assert f + g == E({(0, 0): 1})


def test_add_identity_and_doubling():
    f = E({(1, 1): 1})
    assert f + ExpPoly.zero(1) == f
    assert f + f == E({(1, 1): 2})


def test_add_rate_mismatch():
    with pytest.raises(ParameterError):
        E({(0, 0): 1}, 1) + E({(0, 0): 1}, 2)


def test_mul_monomial():
    f = E({(0, 0): 1, (1, 0): -1})
    assert f.mul_monomial(1, 0) == E({(0, 1): 1, (1, 1): -1})
    lam = mpq(3, 2)
    assert ExpPoly.constant(lam).mul_monomial(0, 2) == E({(2, 0): 1}, lam)
    assert E({(0, 1): 1}).mul_monomial(2, 1) == E({(1, 3): 1})


def test_differentiate():
    assert E({(0, 0): 1, (1, 0): -1}).differentiate() == E({(1, 0): 1})
    assert E({(0, 2): 1}).differentiate() == E({(0, 1): 2})
    # rate 2 with j=1 represents e^{-2x}
    assert E({(1, 1): 1}, 2).differentiate() == E({(1, 0): 1, (1, 1): -2}, 2)


def test_integrate_examples():
    assert E({(1, 0): 1}).integrate_from_zero() == E({(0, 0): 1, (1, 0): -1})
    assert E({(1, 1): 1}).integrate_from_zero() == \
        E({(0, 0): 1, (1, 0): -1, (1, 1): -1})
    assert E({(0, 2): 1}).integrate_from_zero() == E({(0, 3): mpq(1, 3)})


@pytest.mark.parametrize('a', range(6))
@pytest.mark.parametrize('beta', [1, 2, 3, 4])
def test_integrate_weight_closed_form(a, beta):
    # a! (2/b)^(a+1) [1 - e^{-bx/2} sum_k (bx/2)^k / k!]
    lam = mpq(beta, 2)
    got = E({(1, a): 1}, lam).integrate_from_zero()
    pref = math.factorial(a) * (1 / lam) ** (a + 1)
    want = {(0, 0): pref}
    for k in range(a + 1):
        want[(1, k)] = -pref * lam ** k / math.factorial(k)
    assert got == E(want, lam)


def test_evaluate_examples():
    f = E({(0, 0): 1, (1, 0): -1})
    assert f.evaluate(0, 30) == 0
    assert E({(0, 2): 1}).evaluate(3, 16) == 9
    q = E({(0, 0): 1, (1, 0): -2, (1, 2): -1, (2, 0): 1})
    with mpmath.workdps(60):
        want = 1 - 3 * mpmath.exp(-1) + mpmath.exp(-2)
        assert abs(q.evaluate(1, 50) - want) < mpmath.mpf(10) ** -48
    assert abs(float(q.evaluate(1, 50)) - 0.031696959722285727) < 1e-16


def test_evaluate_rejects_low_precision():
    with pytest.raises(ParameterError):
        E({(0, 0): 1}).evaluate(1, 8)


def test_evaluate_survives_cancellation():
    # (1 + x)^40 e^{-x} expanded, huge alternating partner block
    p = {(1, k): math.comb(40, k) for k in range(41)}
    p[(2, 0)] = mpq(10) ** 30
    f = E(p)
    x = mpq(60)
    with mpmath.workdps(120):
        want = 61 ** 40 * mpmath.exp(-60) + mpmath.mpf(10) ** 30 \
            * mpmath.exp(-120)
        assert abs(f.evaluate(x, 40) - want) / want < mpmath.mpf(10) ** -35


def test_repr_and_len():
    f = E({(0, 0): 1, (2, 3): mpq(-1, 2)})
    assert len(f) == 2
    assert 'x^3' in repr(f)
    assert f.terms == {0: ((0, ONE),), 2: ((3, mpq(-1, 2)),)}


def test_canonical_zero_dropped():
    assert len(E({(0, 0): 0, (1, 2): 0})) == 0
    assert E({(1, 1): 1}) - E({(1, 1): 1}) == ExpPoly.zero(1)


def test_as_rational_float_is_exact():
    assert as_rational(0.1) == mpq(3602879701896397, 36028797018963968)
    assert as_rational('3/4') == mpq(3, 4)


# ==========
# Properties
# ==========

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=12)
rates = st.sampled_from([mpq(1, 2), mpq(1), mpq(3, 2), mpq(2)])
term_maps = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 6)), coeff, max_size=8)


@st.composite
def exppolys(draw, rate=None):
    r = rate if rate is not None else draw(rates)
    return ExpPoly(r, draw(term_maps))


@settings(max_examples=150, deadline=None)
@given(exppolys())
def test_derivative_of_integral_is_identity(f):
    assert f.integrate_from_zero().differentiate() == f


@settings(max_examples=150, deadline=None)
@given(exppolys())
def test_integral_vanishes_at_zero(f):
    F = f.integrate_from_zero()
    assert sum(F.exact_block_values(0).values()) == 0


@settings(max_examples=100, deadline=None)
@given(rates.flatmap(lambda r: st.tuples(exppolys(r), exppolys(r))),
       coeff, coeff)
def test_linearity(fg, s, t):
    f, g = fg
    h = f.scale(s) + g.scale(t)
    assert h.differentiate() == \
        f.differentiate().scale(s) + g.differentiate().scale(t)
    assert h.integrate_from_zero() == \
        f.integrate_from_zero().scale(s) + g.integrate_from_zero().scale(t)
    assert h.mul_monomial(2, 1) == \
        f.mul_monomial(2, 1).scale(s) + g.mul_monomial(2, 1).scale(t)


@settings(max_examples=60, deadline=None)
@given(exppolys(), st.fractions(min_value=0, max_value=30,
                                max_denominator=7))
def test_precision_self_check(f, x):
    p = 24
    lo = f.evaluate(x, p)
    hi = f.evaluate(x, 2 * p)
    scale = max(1, abs(hi))
    assert abs(lo - hi) <= scale * mpmath.mpf(10) ** (-(p // 2))


@settings(max_examples=60, deadline=None)
@given(exppolys(), st.fractions(min_value=0, max_value=10,
                                max_denominator=5))
def test_evaluate_matches_direct_mpmath(f, x):
    with mpmath.workdps(80):
        xm = mpmath.mpf(x.numerator) / x.denominator
        lam = mpmath.mpf(f.rate_unit.numerator) / f.rate_unit.denominator
        want = mpmath.fsum(
            mpmath.mpf(c.numerator) / c.denominator * xm ** k
            * mpmath.exp(-j * lam * xm)
            for (j, k), c in f.coefficients().items())
        got = f.evaluate(x, 40)
        assert abs(got - want) <= mpmath.mpf(10) ** -30 * max(1, abs(want))
