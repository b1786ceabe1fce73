import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rzfractal.fractal import (FractalParams, affine_residual, affine_truncation_bound,
                               box_counting_dimension, eval_A)


def brute_A(x, gamma, sigma=1.0, d=1.5, m_lo=-30, m_hi=30):
    # same rounded frequencies as the library so only the summation differs
    freq = gamma ** np.arange(m_lo, m_hi + 1, dtype=float)
    return sigma * math.fsum((-1) ** m * math.sin(f * x) / gamma ** ((2 - d) * m)
                             for m, f in zip(range(m_lo, m_hi + 1), freq))


def argument_noise(x, gamma, M):
    """Bound on residual noise from rounding in the arguments gamma^m x."""
    m = np.arange(-M, M + 2, dtype=float)
    arg_err = 4 * np.finfo(float).eps * gamma ** m[:, None] * np.abs(x)[None, :]
    per_term = np.minimum(2.0, arg_err) * gamma ** (-m[:, None] / 2)
    return (1 + math.sqrt(gamma)) * per_term.sum(axis=0) + 1e-14


def test_zero_at_origin():
    for g in (1.2, 3.0, 9.5):
        assert eval_A(0.0, FractalParams(g, 2.0)) == 0.0


@pytest.mark.parametrize("gamma", [1.5, 3.0, 9.0])
@pytest.mark.parametrize("x", [0.3, 1.7, 12.5, -4.0])
def test_matches_term_by_term_sum(gamma, x):
    p = FractalParams(gamma, 1.3)
    assert eval_A(x, p) == pytest.approx(brute_A(x, gamma, 1.3), rel=1e-12, abs=1e-12)


def test_term_count_contract():
    p = FractalParams(2.0, 1.0, 1.5, -3, 5)
    assert p.n_terms == 9
    assert eval_A(0.7, p) == pytest.approx(brute_A(0.7, 2.0, m_lo=-3, m_hi=5), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(-50, 50), st.floats(1.01, 10), st.floats(0, 10))
def test_oddness_exact(x, gamma, sigma):
    p = FractalParams(gamma, sigma)
    assert eval_A(-x, p) == -eval_A(x, p)


@settings(max_examples=60, deadline=None)
@given(st.floats(-50, 50), st.floats(1.01, 10), st.floats(0, 5), st.floats(0, 5))
def test_linear_in_sigma(x, gamma, a, b):
    lhs = eval_A(x, FractalParams(gamma, a * b))
    rhs = a * eval_A(x, FractalParams(gamma, b))
    assert lhs == pytest.approx(rhs, rel=1e-14, abs=1e-300)


def test_sigma_two_doubles():
    x = np.linspace(-5, 5, 101)
    np.testing.assert_array_equal(eval_A(x, FractalParams(2.5, 2.0)), 2.0 * eval_A(x, FractalParams(2.5, 1.0)))


def test_invalid_params():
    for bad in [dict(gamma=1.0), dict(gamma=2, sigma=-1), dict(gamma=2, d=2.0),
                dict(gamma=2, m_lo=1), dict(gamma=2, m_hi=-1)]:
        with pytest.raises(ValueError):
            FractalParams(**bad)
    with pytest.raises(ValueError):
        eval_A(float("nan"), FractalParams(2.0))


def test_affine_residual_at_origin():
    assert affine_residual(0.0, 1.5) == 0.0


@pytest.mark.parametrize("gamma", [1.5, 2.0, 3.0, 9.0])
def test_affine_residual_is_exactly_the_edge_terms(gamma):
    # shifting m by one leaves sqrt(gamma) * (term(-M) - term(M+1)) as the whole residual
    x = np.linspace(0.1, 10, 200)
    M = 30
    edge = math.sqrt(gamma) * np.abs(np.sin(gamma ** -M * x) / gamma ** (-M / 2)
                                     - (-1) ** (M + 1) * np.sin(gamma ** (M + 1) * x) / gamma ** ((M + 1) / 2))
    noise = argument_noise(x, gamma, M)
    res = affine_residual(x, gamma)
    assert np.all(np.abs(res - edge) <= noise)
    assert np.all(res <= affine_truncation_bound(x, gamma) + noise)


def test_larger_cutoff_reduces_worst_residual():
    x = np.linspace(0.1, 10, 500)
    worst = [affine_residual(x, 1.5, m_cutoff=M).max() for M in (10, 20, 30, 40)]
    assert all(a > b for a, b in zip(worst, worst[1:]))


def test_box_dimension_three_halves():
    est = box_counting_dimension(FractalParams(1.5, 1.0, 1.5))
    assert 1.3 <= est <= 1.7


def test_box_dimension_flat():
    assert box_counting_dimension(FractalParams(1.5, 0.0)) == pytest.approx(1.0, abs=1e-9)


def test_box_dimension_grows_with_d():
    lo = box_counting_dimension(FractalParams(1.5, 1.0, 1.5))
    hi = box_counting_dimension(FractalParams(1.5, 1.0, 1.8))
    assert hi > lo


def test_box_dimension_degenerate_window():
    with pytest.raises(ValueError):
        box_counting_dimension(FractalParams(1.5), window=(2.0, 2.0))
