import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import lambertw

from rzfractal.fractal import FractalParams, eval_A
from rzfractal.potential import (V0_DEFAULT, PotentialGrid, PotentialSpec, Variant, build_grid,
                                 default_half_width, dx_ws_dV, higher_order_residual,
                                 invert_potential, lambert_w, smooth_samples, v_asymptotic,
                                 x_ws, x_ws_higher, InversionError)

V0 = V0_DEFAULT


def abel_x(V, v0=V0):
    # x(V) = (1/2pi) int_{v0}^{V} ln(E/2pi) / sqrt(V-E) dE, with E = V - u^2
    f = lambda u: math.log((V - u * u) / (2 * math.pi)) / math.pi
    return quad(f, 0.0, math.sqrt(V - v0), epsabs=1e-14, epsrel=1e-14)[0]


def test_v0_value():
    assert V0 == pytest.approx(9.741, abs=1e-3)


def test_x_ws_vanishes_at_v0():
    assert x_ws(V0) == 0.0


def test_x_ws_reference_value():
    assert x_ws(4 * V0) == pytest.approx(2.5464931714883000213, rel=1e-14)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
@pytest.mark.parametrize("V", [V0 * 1.001, 15.0, 40.0, 200.0, 1e4, 1e6])
def test_x_ws_matches_counting_integral(V):
    assert x_ws(V) == pytest.approx(abel_x(V), rel=1e-10, abs=1e-13)


def test_x_ws_domain():
    with pytest.raises(ValueError):
        x_ws(V0 - 0.1)
    with pytest.raises(ValueError):
        x_ws(float("inf"))


@settings(max_examples=80, deadline=None)
@given(st.floats(1e-6, 1e5))
def test_x_ws_strictly_increasing(dv):
    V = V0 + dv
    assert x_ws(V * (1 + 1e-9) + 1e-9) > x_ws(V)
    assert dx_ws_dV(V) > 0


def test_derivative_matches_finite_difference():
    for V in (12.0, 50.0, 400.0):
        h = 1e-5 * V
        fd = (x_ws(V + h) - x_ws(V - h)) / (2 * h)
        assert dx_ws_dV(V) == pytest.approx(fd, rel=1e-7)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 1e3))
def test_inversion_round_trip(x):
    V = invert_potential(x)
    # near the bottom V = v0 + s^2 cannot hold s^2 below one ulp of v0
    floor = math.log(V0 / (2 * math.pi)) / math.pi * math.sqrt(2 * np.spacing(V0))
    assert abs(x_ws(V) - x) <= 1e-10 * max(1.0, x) + floor


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-6, 1e3))
def test_inversion_round_trip_away_from_bottom(x):
    V = invert_potential(x)
    assert abs(x_ws(V) - x) <= 1e-10 * max(1.0, x)


@pytest.mark.parametrize("x", [0.0, 1e-8, 0.5, 3.0, 17.0, 250.0])
def test_inversion_matches_bracketed_root(x):
    if x == 0.0:
        ref = V0
    else:
        ref = brentq(lambda V: x_ws(V) - x, V0, V0 + 1e3 * (1 + x) ** 2, xtol=1e-14, rtol=1e-15)
    assert invert_potential(x) == pytest.approx(ref, rel=1e-11)


def test_inversion_vectorised_and_errors():
    xs = np.linspace(0, 20, 50)
    v = invert_potential(xs)
    assert v.shape == xs.shape and np.all(np.diff(v) > 0)
    assert invert_potential(-3.0) == invert_potential(3.0)
    with pytest.raises(ValueError):
        invert_potential(float("nan"))
    with pytest.raises(InversionError):
        invert_potential(1.0, v0=2.0)


def test_higher_order_reference_value():
    assert x_ws_higher(V0) == pytest.approx(0.019909257257068158, rel=1e-10)


@pytest.mark.parametrize("V", [V0, 20.0, 100.0, 1e3, 1e4])
def test_higher_order_is_real(V):
    assert higher_order_residual(V) < 1e-12


def test_higher_order_offset_is_small_and_smooth():
    V = np.linspace(V0, 500, 200)
    diff = x_ws(V) - x_ws_higher(V)
    assert np.all(diff < 0) and np.all(np.abs(diff) < 0.03)
    assert np.ptp(diff) < 0.01


def test_higher_order_offset_shape():
    # negative throughout, one minimum just above the well bottom, rising after it
    V = V0 + np.geomspace(1e-8, 99 * V0, 2000)
    diff = x_ws(V) - x_ws_higher(V)
    k = int(np.argmin(diff))
    assert np.all(diff < 0)
    assert 15.0 < V[k] < 17.0
    assert np.all(np.diff(diff[:k + 1]) < 0) and np.all(np.diff(diff[k:]) > 0)


def test_higher_order_residual_raises():
    with pytest.raises(ArithmeticError):
        higher_order_residual(1e3, rel_tol=0.0)


def test_lambert_w_branch_point():
    assert lambert_w(-1 / math.e) == pytest.approx(-1.0, abs=1e-7)


@pytest.mark.parametrize("z", [-0.3, -0.1, 0.0, 1e-10, 0.5, 1.0, math.e, 10.0, 1e3, 1e10, 1e300])
def test_lambert_w_against_scipy(z):
    assert lambert_w(z) == pytest.approx(lambertw(z).real, rel=1e-13, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1 / math.e + 1e-12, 1e12))
def test_lambert_w_defining_identity(z):
    w = lambert_w(z)
    assert w >= -1.0
    assert w * math.exp(w) == pytest.approx(z, rel=1e-12, abs=1e-14)


def test_lambert_w_domain():
    with pytest.raises(ValueError):
        lambert_w(-0.5)


def test_asymptotic_form():
    assert v_asymptotic(0.0) == pytest.approx(math.pi * math.e ** 2 / 2)
    assert v_asymptotic(-7.0) == v_asymptotic(7.0)
    x = 200.0
    assert v_asymptotic(x) / invert_potential(x) == pytest.approx(1.0, abs=1e-3)
    assert abs(v_asymptotic(1e-9) - v_asymptotic(0.0)) < 1e-6


def test_asymptotic_ratio_tends_to_one():
    xs = np.array([20.0, 50.0, 100.0, 200.0])
    err = np.abs(v_asymptotic(xs) / invert_potential(xs) - 1)
    assert np.all(np.diff(err) < 0)


def test_spec_validation():
    with pytest.raises(ValueError):
        PotentialSpec(Variant.HIGHER_ORDER, fractal=FractalParams(2.0))
    with pytest.raises(ValueError):
        PotentialSpec(v0=-1.0)
    assert PotentialSpec("asymptotic").variant is Variant.ASYMPTOTIC
    spec = PotentialSpec(fractal=FractalParams(2.0))
    assert spec.smooth().fractal is None


def test_grid_interior_and_evenness():
    g = build_grid(PotentialSpec(), 10.0, 0.05)
    assert g.x.size == 399 and g.x[0] == pytest.approx(-9.95) and g.x[-1] == pytest.approx(9.95)
    np.testing.assert_array_equal(g.v, g.v[::-1])
    assert g.v.min() == pytest.approx(V0, abs=1e-12)


def test_grid_with_fractal_adds_series():
    p = FractalParams(2.5, 1.5)
    g0 = build_grid(PotentialSpec(), 5.0, 0.1)
    g1 = build_grid(PotentialSpec(fractal=p), 5.0, 0.1)
    np.testing.assert_allclose(g1.v - g0.v, eval_A(g0.x, p), atol=1e-12)
    assert g1.resample(0.05).x.size == 199


def test_grid_rejects_bad_step():
    with pytest.raises(ValueError):
        build_grid(PotentialSpec(), 10.0, 0.03)


def test_higher_order_grid_not_available():
    with pytest.raises(NotImplementedError):
        smooth_samples(Variant.HIGHER_ORDER, V0, 5.0, 0.1)


def test_cached_samples_are_read_only():
    v = smooth_samples(Variant.LEADING, V0, 5.0, 0.1)
    with pytest.raises(ValueError):
        v[0] = 0.0


def test_from_function_and_half_width():
    g = PotentialGrid.from_function(lambda x: x ** 2, 4.0, 0.5)
    assert g.barrier == pytest.approx(3.5 ** 2)
    L = default_half_width(100.0)
    assert x_ws(150.0) <= L < x_ws(150.0) + 1
