import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmeis import schwartz as sw
from harmeis.verify import check_d_function, ft_tail_quadrature

coord = st.floats(-3.0, 3.0)
taus = st.builds(complex, st.floats(-1.0, 1.0), st.floats(0.5, 2.0))


def test_phi_examples():
    assert sw.phi(1j, 0.0, 0.7) == 0
    assert sw.phi(1j, 1.0, 0.0) == pytest.approx(math.sqrt(2) * math.exp(-math.pi), rel=1e-14)


@given(taus, coord, coord)
def test_odd_in_x(tau, x, y):
    for f in (sw.phi, sw.phi_star, sw.phi_plus, sw.phi_tilde):
        assert f(tau, -x, y) == pytest.approx(-f(tau, x, y), abs=1e-15)
    assert sw.d_function(tau, -x, y) == pytest.approx(-sw.d_function(tau, x, y), abs=1e-15)


def test_phi_star_examples():
    assert sw.phi_star(1j, 0.0, 1.0) == 0
    ref = float(mpmath.exp(mpmath.pi) * mpmath.erfc(mpmath.sqrt(2 * mpmath.pi)))
    assert sw.phi_star(1j, 1.0, 0.0) == pytest.approx(ref, rel=1e-13)
    jump = sw.phi_star(1j, 1e-8, 1.0) - sw.phi_star(1j, -1e-8, 1.0)
    assert jump == pytest.approx(2 * math.exp(-math.pi), abs=1e-7)


def test_phi_plus_examples():
    assert sw.phi_plus(1j, 2.0, 1.0) == 0
    assert sw.phi_plus(1j, 1.0, 1.0) == 0
    assert sw.phi_plus(1j, 1.0, 2.0) == pytest.approx(math.exp(-3 * math.pi), rel=1e-14)
    assert sw.phi_plus(1j, -1.0, 2.0) == pytest.approx(-math.exp(-3 * math.pi), rel=1e-14)


def test_phi_tilde_examples():
    assert sw.phi_tilde(1j, 0.0, 2.0) == 0
    tau = 0.2 + 6j
    x, y = 0.8, 1.3
    assert sw.phi_tilde(tau, x, y) == pytest.approx(sw.e((y * y - x * x) * tau / 2), rel=1e-9)


def test_phi_tilde_bounded():
    rng = np.random.default_rng(0)
    xs, ys = rng.uniform(-5, 5, 10 ** 4), rng.uniform(-5, 5, 10 ** 4)
    assert np.max(np.abs(sw.phi_tilde(1j, xs, ys))) <= 1 + 1e-12


@given(taus, coord, coord)
def test_phi_tilde_T_factor(tau, x, y):
    lhs = sw.phi_tilde(tau + 1, x, y)
    rhs = cmath.exp(1j * math.pi * (y * y - x * x)) * sw.phi_tilde(tau, x, y)
    assert abs(lhs - rhs) < 1e-12


def test_xi_numeric_examples():
    assert sw.xi_numeric(lambda z: math.log(z.imag), 1, 0.3 + 1.2j) == pytest.approx(1.0, abs=1e-8)
    assert abs(sw.xi_numeric(lambda z: cmath.exp(2j * math.pi * z), 1, 0.3 + 1.2j)) < 1e-8
    with pytest.raises(ValueError):
        sw.xi_numeric(lambda z: z, 1, 1j, step=1e-7)


@given(taus, coord, coord)
def test_xi_of_phi_star_and_tilde(tau, x, y):
    target = sw.phi(tau, x, y)
    assert abs(sw.xi_numeric(lambda z: sw.phi_star(z, x, y), 1, tau) + target) < 1e-6
    assert abs(sw.xi_numeric(lambda z: sw.phi_tilde(z, x, y), 1, tau) - target) < 1e-6


def test_xi_second_order():
    f = lambda z: sw.phi_tilde(z, 0.7, 0.3)
    tau = 0.2 + 0.9j
    target = sw.phi(tau, 0.7, 0.3)
    errs = [abs(sw.xi_numeric(f, 1, tau, h) - target) for h in (4e-3, 2e-3, 1e-3)]
    slopes = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(slopes) >= 1.9


def test_d_function_examples():
    assert sw.d_function(1j, 0.0, 1.0) == 0
    tau, y = 0.3 + 1.1j, 0.6
    jump = sw.d_function(tau, 1e-9, y) - sw.d_function(tau, -1e-9, y)
    assert jump == pytest.approx(2 * sw.e(y * y * tau / 2), abs=1e-8)
    # continuous off x = 0
    a, b = sw.d_function(tau, 0.5, y), sw.d_function(tau, 0.5 + 1e-9, y)
    assert abs(a - b) < 1e-8


def test_d_function_normalization():
    # the bounded solution of phi* - F(phi*_{-1/tau})/tau uses erfc(sqrt(-pi i tau)|x|)
    assert check_d_function().passed
    rng = np.random.default_rng(3)
    tau, x, y = 0.1 + 1.2j, 0.6, 0.2
    taup = -1 / tau
    ft = sw.ft2d(lambda w, z: sw.phi_star(taup, w, z), x, y,
                 sw.QuadConfig(radius=7.0 / math.sqrt(taup.imag), panel_width=0.25, nodes=16))
    lhs = sw.phi_star(tau, x, y) - ft.value / tau
    assert abs(lhs - sw.d_function(tau, x, y)) < 1e-8
    for other in ("literal", "2pi"):
        assert abs(lhs - sw.d_function(tau, x, y, normalization=other)) > 1e-3


def test_ft2d_gaussian_pair():
    # 1D pair int e^{-pi a w^2} e(-w x) dw = a^{-1/2} e^{-pi x^2 / a}, applied twice
    a, b = 1.3, 0.6 - 0.4j
    f = lambda w, z: np.exp(-np.pi * a * w * w - np.pi * b * z * z)
    for x, y in ((0.0, 0.0), (0.4, -0.7), (1.1, 0.3)):
        ref = cmath.exp(-math.pi * x * x / a) / math.sqrt(a) * cmath.exp(-math.pi * y * y / b) / cmath.sqrt(b)
        res = sw.ft2d(f, x, y, sw.QuadConfig(radius=9.0, tol=1e-10))
        assert res.converged
        assert abs(res.value - ref) < 1e-10


def test_ft2d_linearity():
    rng = np.random.default_rng(1)
    f = lambda w, z: np.exp(-2 * w * w - z * z) * w
    g = lambda w, z: np.exp(-(w - 0.3) ** 2 - 3 * z * z)
    a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    x, y = rng.normal(size=2)
    lhs = sw.ft2d(lambda w, z: a * f(w, z) + b * g(w, z), x, y).value
    rhs = a * sw.ft2d(f, x, y).value + b * sw.ft2d(g, x, y).value
    assert abs(lhs - rhs) < 1e-12


def test_ft2d_flags_nonconvergence():
    # eight oscillations per unit against four nodes per quarter-unit panel
    f = lambda w, z: np.exp(-w * w - z * z)
    assert not sw.ft2d(f, 8.0, 0.2, sw.QuadConfig(radius=6.0, nodes=4, tol=1e-10)).converged


@pytest.mark.parametrize("xp, yp", [(1.0, 1.0), (0.5, 1.5), (-0.8, -0.4), (0.7, -0.6), (-1.2, 0.3)])
def test_ft_tail_closed_form(xp, yp):
    tau = 1j
    assert abs(ft_tail_quadrature(tau, xp, yp) - sw.ft_phi_plus_tail(tau, xp, yp)) < 1e-6


def test_rotation():
    xp, yp = sw.rotate(1.0, 1.0)
    assert (xp, yp) == pytest.approx((math.sqrt(2), 0.0))
    assert xp * yp == pytest.approx(0.5 * (1.0 - 1.0))
    xp, yp = sw.rotate(0.3, 1.7)
    assert xp * yp == pytest.approx(0.5 * (1.7 ** 2 - 0.3 ** 2))


@pytest.mark.parametrize("x, y", [(1.3, 0.4), (0.2, -0.9), (0.9, -0.1), (-1.0, 0.2), (0.1, 1.2)])
def test_ft_phi_plus_two_paths(x, y):
    tau = complex(0.3, 1.2)
    quad = sw.QuadConfig(radius=45.0, panel_width=0.25, nodes=12, coords="lightcone", taper=True, tol=1e-8)
    two_d = sw.ft2d(lambda w, z: sw.phi_plus(tau, w, z), x, y, quad)
    assert abs(two_d.value - sw.ft_phi_plus(tau, x, y)) < 1e-5


def test_ft_phi_plus_bounded_off_cone():
    tau = complex(-0.2, 0.9)
    vals = [abs(sw.ft_phi_plus(tau, x, y)) for x in np.linspace(-2, 2, 9) for y in np.linspace(-2.05, 2.05, 9)
            if abs(x * x - y * y) > 1e-3]
    assert max(vals) < 10.0
    with pytest.raises(ValueError):
        sw.ft_phi_plus(tau, 1.0, 1.0)


def test_modular_point():
    assert sw.ModularPoint(0.5, 2.0).tau == 0.5 + 2j
    with pytest.raises(ValueError):
        sw.ModularPoint(0.0, 0.0)
    assert sw.SplitPoint(3.0, 1.0).q() == 4.0
