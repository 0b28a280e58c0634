"""Special-function layer: log-gamma with sign, Pochhammer, Gegenbauer."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_gegenbauer, eval_legendre

from bergbesov.specfun import PoleError, gegenbauer, log_gamma, log_pochhammer, pochhammer

mpmath.mp.dps = 40


def test_log_gamma_matches_mpmath():
    for x in (0.5, 1.0, 3.7, 12.25, -0.5, -1.5, -3.3, -7.9):
        lg, sg = log_gamma(x)
        ref = mpmath.gamma(x)
        assert sg == (1.0 if ref > 0 else -1.0)
        assert lg == pytest.approx(float(mpmath.log(abs(ref))), rel=1e-13)


def test_log_gamma_pole_raises():
    for x in (0.0, -1.0, -2.0, -7.0):
        with pytest.raises(PoleError):
            log_gamma(x)


def test_pochhammer_frozen_values():
    # (0.5)_2 = 0.5 * 1.5
    assert pochhammer(0.5, 2) == 0.75
    # (a)_0 = 1 for any a, empty product
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(-4.5, 0) == 1.0
    # (1)_5 = 5!
    assert pochhammer(1.0, 5) == 120.0
    # (-2)_3 = (-2)(-1)(0): exact zero via the finite product
    assert pochhammer(-2.0, 3) == 0.0
    # (-2.5)_2 = (-2.5)(-1.5)
    assert pochhammer(-2.5, 2) == 3.75
    # (1.5)_{0.5} = Gamma(2)/Gamma(1.5) = 2/sqrt(pi)
    assert pochhammer(1.5, 0.5) == pytest.approx(2.0 / math.sqrt(math.pi), rel=1e-13)


def test_pochhammer_matches_mpmath():
    cases = [(0.3, 4), (2.7, 11), (5.0, 0.75), (0.9, 2.6), (-0.4, 3), (8.5, 20)]
    for a, b in cases:
        assert pochhammer(a, b) == pytest.approx(float(mpmath.rf(a, b)), rel=1e-12)


def test_pochhammer_integer_b_survives_gamma_poles():
    # finite product is exact where the Gamma-ratio form would hit a pole
    assert pochhammer(-3.0, 5) == 0.0
    assert pochhammer(-3.0, 2) == 6.0
    assert pochhammer(0.0, 4) == 0.0


def test_pochhammer_pole_raises_for_noninteger_b():
    with pytest.raises(PoleError):
        pochhammer(-1.0, 0.5)
    with pytest.raises(PoleError):
        pochhammer(-2.0, 1.5)


@given(
    a=st.floats(min_value=0.2, max_value=5.0),
    b1=st.floats(min_value=0.0, max_value=4.0),
    b2=st.floats(min_value=0.0, max_value=4.0),
)
@settings(max_examples=200, deadline=None)
def test_pochhammer_additivity(a, b1, b2):
    # (a)_{b1+b2} = (a)_{b1} * (a+b1)_{b2}
    lhs = pochhammer(a, b1 + b2)
    rhs = pochhammer(a, b1) * pochhammer(a + b1, b2)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_log_pochhammer_consistency():
    for a, b in [(2.5, 3.0), (0.7, 1.3), (-2.5, 2.0), (-2.5, 1.0)]:
        lp, sg = log_pochhammer(a, b)
        want = pochhammer(a, b)
        assert sg * math.exp(lp) == pytest.approx(want, rel=1e-11)


def test_log_pochhammer_handles_huge_arguments():
    lp, sg = log_pochhammer(1.0, 1e5)
    # (1)_k = k!, so check against lgamma(k+1)
    assert sg == 1.0
    assert lp == pytest.approx(math.lgamma(1e5 + 1.0), rel=1e-13)


def test_gegenbauer_half_is_legendre():
    ts = np.linspace(-1.0, 1.0, 17)
    for k in range(13):
        for t in ts:
            assert gegenbauer(k, 0.5, t) == pytest.approx(
                float(eval_legendre(k, t)), rel=1e-11, abs=1e-13
            )


def test_gegenbauer_matches_scipy():
    for lam in (0.5, 1.0, 2.3):
        for k in (0, 1, 2, 5, 9):
            for t in (-0.95, -0.4, 0.0, 0.3, 0.99):
                assert gegenbauer(k, lam, t) == pytest.approx(
                    float(eval_gegenbauer(k, lam, t)), rel=1e-10, abs=1e-12
                )


def test_pochhammer_ratio_stirling_stabilizes():
    # (a)_c / (b)_c ~ c^(a-b): consecutive dyadic normalized ratios within 2%
    a, b = 2.7, 1.2
    vals = []
    for j in range(6, 15):
        c = float(2**j)
        la, _ = log_pochhammer(a, c)
        lb, _ = log_pochhammer(b, c)
        vals.append(math.exp(la - lb - (a - b) * math.log(c)))
    for prev, cur in zip(vals, vals[1:]):
        assert abs(cur / prev - 1.0) < 0.02


def test_gegenbauer_frozen_examples():
    assert gegenbauer(0, 2.2, -0.4) == 1.0
    assert gegenbauer(1, 1.0, 0.5) == 1.0
    assert gegenbauer(2, 1.0, 1.0) == pytest.approx(3.0, rel=1e-14)


def test_gegenbauer_quadratic_closed_form():
    # C_2^lam(t) = 2 lam (lam+1) t^2 - lam
    lam, t = 0.75, 0.3
    assert gegenbauer(2, lam, t) == pytest.approx(2 * lam * (lam + 1) * t * t - lam, rel=1e-14)


def test_gegenbauer_validation():
    with pytest.raises(ValueError):
        gegenbauer(-1, 0.5, 0.0)
    with pytest.raises(ValueError):
        gegenbauer(1.5, 0.5, 0.0)
    with pytest.raises(ValueError):
        gegenbauer(2, -0.5, 0.0)


@given(
    k=st.integers(min_value=0, max_value=10),
    lam=st.floats(min_value=0.05, max_value=3.0),
    t=st.floats(min_value=-1.0, max_value=1.0),
)
@settings(max_examples=200, deadline=None)
def test_gegenbauer_bounded_by_endpoint(k, lam, t):
    # for lam > 0 the max over [-1,1] is at t=1: C_k^lam(1) = (2 lam)_k / k!
    bound = pochhammer(2.0 * lam, k) / math.factorial(k)
    assert abs(gegenbauer(k, lam, t)) <= bound * (1.0 + 1e-12) + 1e-12
