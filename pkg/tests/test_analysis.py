import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from fdspectral.analysis import (K_condition, chebyshev_points, convergence_rate,
                                 f_regularity, factored_error_norm, fitted_rate,
                                 inv_K_derivative_condition, linf_error, monomial_regularity,
                                 predict_rates, terms_regularity, weighted_error_norm)
from fdspectral.problem import SingularTerm
from fdspectral.quadrature import QuadratureError
from fdspectral.special import beta_fn


def test_weighted_norm_examples():
    assert weighted_error_norm(np.sin, np.sin, (0.3, 0.3), 32) == 0.0
    assert weighted_error_norm(lambda x: x, lambda x: 0 * x, (0, 0), 8) == pytest.approx(1 / math.sqrt(3))
    val = weighted_error_norm(lambda x: x ** 0.9, lambda x: 0 * x, (-0.5, -0.5), 2048)
    assert val == pytest.approx(math.sqrt(beta_fn(0.5, 2.3)), rel=1e-9)


def test_weighted_norm_symmetric_and_validated():
    g, h = np.exp, np.cos
    assert weighted_error_norm(g, h, (0.2, -0.4), 64) == weighted_error_norm(h, g, (0.2, -0.4), 64)
    with pytest.raises(QuadratureError):
        weighted_error_norm(g, h, (-1.0, 0), 10)


def test_factored_norm_matches_direct_sampling():
    # e = x^{-0.3}(1 + x) (1 - x)^{0.2} sin(x) in L2 with weight (0.5, 0.4)
    pieces = [(SingularTerm(1.0, 0.2, -0.3), np.sin), (SingularTerm(1.0, 0.2, 0.7), np.sin)]
    got = factored_error_norm(pieces, (0.5, 0.4), 64)
    ref, _ = quad(lambda x: ((1 + x) * np.sin(x)) ** 2,
                  0, 1, weight="alg", wvar=(0.4 - 0.6, 0.5 + 0.4), epsabs=0, epsrel=1e-12)
    assert got == pytest.approx(math.sqrt(ref), rel=1e-12)


def test_factored_norm_exact_cancellation():
    # e = 1 - x^{-0.5} * x^{0.5}: identically zero although both pieces are O(1)
    pieces = [(SingularTerm(1.0), lambda x: np.ones_like(x)),
              (SingularTerm(-1.0, 0.0, -0.5), lambda x: np.sqrt(x))]
    assert factored_error_norm(pieces, (0.0, 0.5), 64) < 1e-7


def test_chebyshev_points():
    x = chebyshev_points(5)
    np.testing.assert_allclose(x, [0, (1 - math.cos(math.pi / 4)) / 2, 0.5,
                                   (1 + math.cos(math.pi / 4)) / 2, 1], atol=1e-16)
    with pytest.raises(ValueError):
        chebyshev_points(1)


def test_linf_examples():
    assert linf_error(np.exp, np.exp) == 0.0
    assert linf_error(lambda x: x * (1 - x), lambda x: 0 * x, 1001) == pytest.approx(0.25, abs=1e-5)


def test_convergence_rate_examples():
    assert convergence_rate(1e-2, 1e-4, 10, 100) == pytest.approx(2.0)
    assert convergence_rate(3e-3, 3e-3, 4, 9) == 0.0
    assert convergence_rate(4.87e-4, 3.09e-4, 16, 20) == pytest.approx(2.04, abs=5e-3)
    with pytest.raises(ValueError):
        convergence_rate(1e-2, 1e-3, 20, 10)
    with pytest.raises(ValueError):
        convergence_rate(0.0, 1e-3, 10, 20)


@settings(max_examples=50, deadline=None)
@given(rate=st.floats(0.1, 5), c=st.floats(1e-3, 1e3))
def test_fitted_rate_recovers_power_law(rate, c):
    N = np.array([16, 20, 24, 28, 32, 36])
    assert fitted_rate(N, c * N ** -rate) == pytest.approx(rate, rel=1e-9)


def test_monomial_regularity_examples():
    assert monomial_regularity(1 - 1.6, (0.8, 0.8), "left").t_max == pytest.approx(0.60)
    assert monomial_regularity(0.0, (0.3, 0.7), "left").t_max == pytest.approx(1.7)
    assert monomial_regularity(1 - 1.3, (0.5, 0.8), "right").t_max == pytest.approx(0.90)
    with pytest.raises(ValueError):
        monomial_regularity(-2.0, (0.0, 0.0), "left")
    with pytest.raises(ValueError):
        monomial_regularity(0.1, (0.0, 0.0), "middle")


@settings(max_examples=50, deadline=None)
@given(mu=st.floats(-0.4, 2), dmu=st.floats(0.01, 1), b=st.floats(-0.2, 1), db=st.floats(0.01, 1))
def test_monomial_regularity_monotone(mu, dmu, b, db):
    base = monomial_regularity(mu, (0.0, b), "left").t_max
    assert monomial_regularity(mu + dmu, (0.0, b), "left").t_max > base
    assert monomial_regularity(mu, (0.0, b + db), "left").t_max > base


def test_f_regularity_examples():
    assert f_regularity(1.6, 0.8).t_max == pytest.approx(0.60, abs=1e-12)
    assert f_regularity(1.3, 0.5).t_max == pytest.approx(0.90, abs=1e-12)
    a = 1.42
    assert f_regularity(a, a / 2).t_max == pytest.approx(3 - 1.5 * a, abs=1e-12)
    assert "(1-x)" in f_regularity(1.3, 0.5).limiting_term


def test_terms_regularity_matches_manufactured():
    alpha, beta = 1.3, 0.5
    f_terms = [SingularTerm(-0.3, 0.0, 1 - alpha), SingularTerm(0.7, 1 - alpha, 0.0)]
    got = terms_regularity(f_terms, (beta, alpha - beta))
    assert got.t_max == pytest.approx(f_regularity(alpha, beta).t_max)
    assert terms_regularity([SingularTerm(1.0, 2.0, 1.0)], (0.2, 0.3)).t_max == math.inf


def test_K_condition_examples():
    assert K_condition(0.8, 1.6, 0.8)
    assert not K_condition(0.1, 1.3, 0.5)
    assert K_condition(1.0, 1.3, 0.5)
    assert K_condition(1.0, 1.9, 0.95)
    terms = [SingularTerm(1.0), SingularTerm(1.0, 0.0, 0.1)]
    assert inv_K_derivative_condition(terms, 1.3, 0.5) == K_condition(0.1, 1.3, 0.5)


def test_predict_rates_examples():
    p = predict_rates(1.6, 0.8, 0.6, True)
    assert (p.rate_L2_weighted, p.rate_D_weighted, p.rate_Linf) == pytest.approx((2.2, 1.2, 1.2))
    p = predict_rates(1.3, 0.5, 0.9, True)
    assert (p.rate_L2_weighted, p.rate_D_weighted, p.rate_Linf) == pytest.approx((2.2, 1.2, 1.2))
    p = predict_rates(1.3, 0.5, 0.9, False)
    assert (p.rate_L2_weighted, p.rate_D_weighted, p.rate_Linf) == pytest.approx((1.2, 1.2, 1.2))
    assert not p.K_condition_holds
    with pytest.raises(ValueError):
        predict_rates(1.3, 0.5, -0.1, True)


@settings(max_examples=50, deadline=None)
@given(alpha=st.floats(1.01, 1.99), t=st.floats(0, 3), k_ok=st.booleans())
def test_predict_rates_gap(alpha, t, k_ok):
    p = predict_rates(alpha, alpha / 2, t, k_ok)
    gap = p.rate_L2_weighted - p.rate_Linf
    assert gap == pytest.approx(1.0 if k_ok else 0.0)
