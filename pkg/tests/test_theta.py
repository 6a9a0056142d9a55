import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from harmeis import _kernels, theta as th
from harmeis import schwartz as sw
from harmeis.lattice import LatticeContext, LatticeVector, quad_form
from harmeis.verify import eps_limit_errors, poisson_residual, tilde_modularity_residuals

CTX3 = LatticeContext(3)


@given(st.integers(1, 8), st.integers(-50, 50), st.integers(-50, 50), st.floats(0.05, 20.0))
def test_iota_isometry(N, a, b, t):
    ctx = LatticeContext(N)
    X = LatticeVector(a, b)
    p = th.iota(ctx, t, X)
    q = float(quad_form(ctx, X))
    scale = 1.0 + (a * a / (t * t) + t * t * b * b) / N
    assert abs(p.q() - q) <= 1e-12 * scale


def test_iota_examples():
    p = th.iota(LatticeContext(2), 1.0, LatticeVector(1, 1))
    assert (p.x, p.y) == pytest.approx((1.0, 0.0))
    p = th.iota(CTX3, 2.5, LatticeVector(0, 0))
    assert (p.x, p.y) == (0.0, 0.0)


def test_c_minus1():
    assert th.c_minus1(LatticeContext(1), (0, 0)) == 2
    assert th.c_minus1(CTX3, (0, 0)) == 2
    assert th.c_minus1(CTX3, (1, 0)) == 1
    assert th.c_minus1(CTX3, (1, 2)) == 0


def test_shift_and_frame_validation():
    with pytest.raises(ValueError):
        th.ShiftPair(0.5, 0.0)
    with pytest.raises(ValueError):
        th.FramePoint(0.0)
    with pytest.raises(ValueError):
        th.theta_h(CTX3, (1, 0), 1.0 - 0.1j, 1.0)


def test_theta_vanishes_for_level_one():
    for tau, t in ((1j, 1.0), (0.3 + 0.8j, 2.2), (-0.4 + 1.7j, 0.4)):
        assert abs(th.theta_h(LatticeContext(1), (0, 0), tau, t).value) < 1e-14


@pytest.mark.parametrize("tau", [1j, 0.37 + 0.9j])
def test_theta_odd_under_negation(tau):
    for h in CTX3.cosets():
        a = th.theta_h(CTX3, h, tau, 1.3).value
        b = th.theta_h(CTX3, CTX3.neg(h), tau, 1.3).value
        assert abs(a + b) < 1e-13


def test_theta_radius_doubling():
    tau, t = 1j, 1.0
    val = th.theta_h(CTX3, (1, 0), tau, t, tol=1e-12)
    assert abs(val.value) > 1e-3 and val.tail_bound < 1e-12
    R = th.truncation_radius(CTX3, tau, t, 1e-12)
    X1, X2 = th._box(CTX3, t, R + 5)
    wide = _kernels.theta_sum(3, 1, 0, 0.0, 1.0, t, X1, X2)
    assert abs(wide - val.value) < 1e-12


def test_truncation_radius_monotone():
    radii = [th.truncation_radius(CTX3, 1j, 1.3, tol) for tol in (1e-4, 5e-5, 1e-8, 5e-9, 1e-14)]
    assert radii == sorted(radii)
    assert th.truncation_radius(CTX3, 4j, 1.3, 1e-12) < th.truncation_radius(CTX3, 1j, 1.3, 1e-12)
    with pytest.raises(ValueError):
        th.truncation_radius(CTX3, 1j, 1.0, 0.0)


def test_star_limit_adds_one():
    # the X = 0 vector enters the sum with value erfc(0) = 1 once eps > 0
    base = th.theta_star_h(CTX3, (0, 0), 0.2 + 1.1j, 0.9).value
    for sign in (1, -1):
        shifted = th.theta_star_h(CTX3, (0, 0), 0.2 + 1.1j, 0.9, th.ShiftPair(1e-7, sign * 1e-7)).value
        assert abs(shifted - base - 1) < 1e-5


def test_star_radius_doubling():
    val = th.theta_star_h(CTX3, (1, 0), 1j, 1.0, tol=1e-12)
    R = th.truncation_radius(CTX3, 1j, 1.0, 1e-12)
    X1, X2 = th._box(CTX3, 1.0, 2 * R)
    wide = _kernels.star_sum(3, 1, 0, 0.0, 1.0, 1.0, 0.0, 0.0, X1, X2)
    assert abs(wide - val.value) < 1e-10


def _pointwise_term(ctx, tau, t, a1, a2, epsp):
    # phi_plus at iota_t of the shifted vector, times e(B(X, eps'(1,1)))
    s = math.sqrt(2 * ctx.level)
    x, y = (a1 / t + t * a2) / s, (a1 / t - t * a2) / s
    return sw.phi_plus(tau, x, y) * cmath.exp(2j * math.pi * (a1 + a2) * epsp / ctx.level)


@pytest.mark.parametrize("h, eps", [((0, 1), 1e-2), ((0, 1), -1e-2), ((2, 0), 1e-2), ((0, 0), 3e-2)])
def test_ray_closed_form_vs_partial_sums(h, eps):
    tau, t, epsp = 1j, 1.0, -eps
    N = CTX3.level
    direct = 0j
    for k in range(-500, 501):
        if h[0] % N == 0:
            direct += _pointwise_term(CTX3, tau, t, eps, h[1] + N * k + eps, epsp)
        if h[1] % N == 0:
            direct += _pointwise_term(CTX3, tau, t, h[0] + N * k + eps, eps, epsp)
    closed = th.ray_sum(CTX3, CTX3.coset(h), tau, t, th.ShiftPair(eps, epsp))
    assert abs(closed - direct) < 1e-10


def test_rays_absent_off_axes():
    assert th.ray_sum(CTX3, CTX3.coset(1, 2), 1j, 1.0, th.ShiftPair(0.1, 0.1)) == 0
    assert th.ray_sum(CTX3, CTX3.coset(0, 0), 1j, 1.0, th.ZERO_SHIFT) == 0
    with pytest.raises(ValueError):
        th.ray_sum(CTX3, CTX3.coset(0, 1), 1j, 3.0, th.ShiftPair(0.2, 0.0))


@pytest.mark.parametrize("h, shift", [((1, 0), (0.1, -0.1)), ((1, 2), (0.0, 0.0)), ((1, 0), (0.0, 0.0)),
                                      ((0, 0), (-0.05, 0.2))])
def test_plus_against_box_sum(h, shift):
    tau, t = 0.3 + 1.1j, 1.0
    eps, epsp = shift
    N = CTX3.level
    n1 = np.arange(-600 + h[0], 601, N) + eps
    n2 = np.arange(-600 + h[1], 601, N) + eps
    A, B = np.meshgrid(n1, n2, indexing="ij")
    s = math.sqrt(2 * N)
    vals = sw.phi_plus(tau, (A / t + t * B) / s, (A / t - t * B) / s)
    direct = complex(np.sum(vals * np.exp(2j * np.pi * (A + B) * epsp / N)))
    ours = th.theta_plus_h(CTX3, h, tau, t, th.ShiftPair(eps, epsp), tol=1e-13)
    assert abs(ours.value - direct) < 1e-10


def test_tilde_shifted_is_plus_minus_star():
    shift = th.ShiftPair(0.07, -0.03)
    p = th.theta_plus_h(CTX3, (1, 0), 1j, 1.2, shift).value
    s = th.theta_star_h(CTX3, (1, 0), 1j, 1.2, shift).value
    assert th.theta_tilde_shifted_h(CTX3, (1, 0), 1j, 1.2, shift).value == pytest.approx(p - s, abs=1e-15)


def test_tilde_bounded_in_t():
    vals = [abs(th.theta_tilde_h(CTX3, (1, 0), 0.1 + 1j, t).value) for t in np.geomspace(1e-2, 1e2, 41)]
    assert max(vals) < 5.0


@pytest.mark.parametrize("N", [2, 3, 4])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_poisson_identity(N, t):
    assert poisson_residual(LatticeContext(N), 1j, t, 0.1, 0.1) < 1e-8


def test_poisson_phase_without_level_fails():
    # the relation with phase e(2 eps eps') (no division by N) does not hold
    ctx = LatticeContext(3)
    tau, t, eps = 1j, 1.0, 0.1
    Sd = np.conj(__import__("harmeis").weil.rho_S(ctx).matrix)
    lhs = th.theta_tilde_shifted_vector(ctx, -1 / tau, t, th.ShiftPair(eps, eps)).components / tau
    rhs = th.theta_tilde_shifted_vector(ctx, tau, t, th.ShiftPair(-eps, eps)).components
    assert np.max(np.abs(lhs - cmath.exp(4j * math.pi * eps * eps) * (Sd @ rhs))) > 1e-3


@pytest.mark.parametrize("sign", [1, -1])
def test_eps_limit_linear(sign):
    grid = (1e-2, 5e-3, 2.5e-3)
    for h in ((0, 0), (1, 0), (0, 2)):
        err = eps_limit_errors(CTX3, CTX3.coset(h), 0.2 + 1.1j, 0.8, grid, sign)
        orders = [math.log2(err[i] / err[i + 1]) for i in range(2)]
        assert min(orders) >= 0.9


def test_selected_variant_is_modular_and_printed_is_not():
    ctx = LatticeContext(3)
    rT, rS = tilde_modularity_residuals(ctx, 0.2 + 1.1j, 0.8, "minus")
    assert max(rT, rS) < 1e-10
    _, rS_printed = tilde_modularity_residuals(ctx, 0.2 + 1.1j, 0.8, "printed")
    assert rS_printed > 1e-2
    with pytest.raises(ValueError):
        th.theta_tilde_h(ctx, (1, 0), 1j, 1.0, variant="plus")


def test_xi_of_completed_kernel():
    tau, t = 0.25 + 0.95j, 1.4
    f = lambda z: th.theta_tilde_vector(CTX3, z, t, tol=1e-15).components
    target = th.theta_vector(CTX3, tau, t, tol=1e-15).components
    assert np.max(np.abs(sw.xi_numeric(f, 1, tau) - target)) < 1e-6


@pytest.mark.parametrize("name", ["theta", "star", "plus"])
def test_backends_agree(name):
    args = {
        "theta": (3, 1, 2, 0.3, 0.9, 1.2, 14.0, 11.0),
        "star": (3, 1, 0, 0.3, 0.9, 1.2, 0.07, -0.02, 14.0, 11.0),
        "plus": (3, 1, 0, 0.3, 0.9, 1.2, 0.07, -0.02, 400),
    }[name]
    loop = complex(*_kernels.LOOP_KERNELS[name](*args))
    vec = _kernels.NUMPY_KERNELS[name](*args)
    assert abs(loop - vec) <= 1e-13 * max(1.0, abs(vec))
