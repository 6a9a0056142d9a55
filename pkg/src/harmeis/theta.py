"""Theta kernels for L = N Z^2 on the frame t -> Z_t.

``theta_h`` is the holomorphic-side kernel Theta_h(tau, t).  The completed
kernel is assembled from two series over the shifted coset L + h + eps(1, 1):

* ``theta_star_h``: the Gaussian-decaying part built from phi_star,
* ``theta_plus_h``: the indefinite part built from phi_plus, split into the
  anisotropic sum over n1 n2 <= -1 and closed-form geometric sums along the
  isotropic rays n1 = 0 or n2 = 0.

All sums are truncated with an explicit tail bound which is returned with the
value.
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .eisenstein import CertificationError, Certified, c0, series_tail
from .lattice import CosetIndex
from .schwartz import SplitPoint
from .special import frac_angle

# Which completion of the kernel is used by default.  ``"minus"`` is
# c_h(0) + Theta+ - Theta*; ``"printed"`` is c_h(0) + Theta+ + Theta*.  The
# verification harness evaluates both and reports which one passes.
SELECTED_VARIANT = "minus"
VARIANTS = ("minus", "printed")

_MAX_RADIUS = 5000.0


@dataclass(frozen=True)
class FramePoint:
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError("t must be positive")


@dataclass(frozen=True)
class ShiftPair:
    eps: float = 0.0
    eps_prime: float = 0.0

    def __post_init__(self):
        if not (abs(self.eps) < 0.5 and abs(self.eps_prime) < 0.5):
            raise ValueError("shifts must lie in (-1/2, 1/2)")


ZERO_SHIFT = ShiftPair()


@dataclass(frozen=True)
class KernelValue:
    components: np.ndarray
    truncation_bound: float


def _tau(tau):
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half-plane")
    return tau


def _t(t):
    t = t.t if isinstance(t, FramePoint) else float(t)
    if not t > 0:
        raise ValueError("t must be positive")
    return t


def _coset(ctx, h):
    return h if isinstance(h, CosetIndex) else ctx.coset(h)


def iota(ctx, t, X):
    """X -> ((x1/t + t x2), (x1/t - t x2)) / sqrt(2N)."""
    t = _t(t)
    s = math.sqrt(2.0 * ctx.level)
    return SplitPoint((X.x1 / t + t * X.x2) / s, (X.x1 / t - t * X.x2) / s)


def c_minus1(ctx, h):
    """Number of coordinates of h divisible by N."""
    h = _coset(ctx, h)
    return int(h.h1 % ctx.level == 0) + int(h.h2 % ctx.level == 0)


# ---------------------------------------------------------------------------
# truncation


def gaussian_tail(ctx, v, t, R):
    """Bound on sum of e^{-pi v Q_t(X)} over X in any shifted coset outside the
    box |x1| <= t sqrt(2NR), |x2| <= sqrt(2NR)/t.

    Every kernel summand here is at most e^{-pi v Q_t(X)} in modulus, and the
    box contains the ellipse Q_t(X) <= R.
    """
    N = ctx.level
    X = math.sqrt(2.0 * N * R)
    tail, full = [], []
    for alpha, Xi in ((math.pi * v / (2 * N * t * t), t * X), (math.pi * v * t * t / (2 * N), X / t)):
        tail.append(2.0 * math.exp(-math.pi * v * R) / -math.expm1(-2.0 * alpha * Xi * N))
        full.append(2.0 + math.sqrt(math.pi / alpha) / N)
    return tail[0] * full[1] + full[0] * tail[1]


def truncation_radius(ctx, tau, t, tol):
    """Smallest R (on a 1/8 grid) with ``gaussian_tail`` below ``tol``."""
    v = _tau(tau).imag
    t = _t(t)
    if not tol > 0:
        raise ValueError("tol must be positive")
    R = 0.125
    while gaussian_tail(ctx, v, t, R) > tol:
        R *= 2.0
        if R > _MAX_RADIUS:
            raise CertificationError(f"tolerance {tol:.1e} needs a box beyond majorant {_MAX_RADIUS}")
    lo, hi = R / 2.0, R
    while hi - lo > 0.125:
        mid = 0.5 * (lo + hi)
        if gaussian_tail(ctx, v, t, mid) > tol:
            lo = mid
        else:
            hi = mid
    return hi


def _box(ctx, t, R):
    X = math.sqrt(2.0 * ctx.level * R)
    return t * X, X / t


# ---------------------------------------------------------------------------
# kernels


def theta_h(ctx, h, tau, t, tol=1e-12):
    """Theta_h(tau, t) with a certified truncation bound."""
    h = _coset(ctx, h)
    tau, t = _tau(tau), _t(t)
    R = truncation_radius(ctx, tau, t, tol)
    X1, X2 = _box(ctx, t, R)
    val = _kernels.theta_sum(ctx.level, h.h1, h.h2, tau.real, tau.imag, t, X1, X2)
    return Certified(val, gaussian_tail(ctx, tau.imag, t, R))


def theta_star_h(ctx, h, tau, t, shift=ZERO_SHIFT, tol=1e-12):
    """Sum of phi_star(iota_t(X)) e(B(X, eps'(1,1))) over X in L + h + eps(1,1)."""
    h = _coset(ctx, h)
    tau, t = _tau(tau), _t(t)
    R = truncation_radius(ctx, tau, t, tol)
    X1, X2 = _box(ctx, t, R)
    val = _kernels.star_sum(ctx.level, h.h1, h.h2, tau.real, tau.imag, t,
                            shift.eps, shift.eps_prime, X1, X2)
    return Certified(val, gaussian_tail(ctx, tau.imag, t, R))


def admissible_eps(t):
    """Upper limit of |eps| for which the ray signs are constant."""
    t = _t(t)
    return min(1.0 / (1.0 + t * t), t * t / (1.0 + t * t))


def _plus_tail(c, K):
    # sum_{k > K} 4 sqrt(k) e^{-c k}
    return series_tail(lambda k: 4.0 * math.sqrt(k) * math.exp(-c * k), K + 1,
                       lambda k: math.sqrt(1.0 + 1.0 / k) * math.exp(-c), math.exp(-c))


def plus_cutoff(ctx, v, eps, tol, cap=10 ** 7):
    """Smallest K with the anisotropic tail over |n1 n2| > K below ``tol``."""
    # |(n1+eps)(n2+eps)| > |n1 n2|/2 for |eps| < 1/2, and exactly |n1 n2| at eps = 0
    c = (2.0 if eps == 0 else 1.0) * math.pi * v / ctx.level
    K = 1
    while _plus_tail(c, K) > tol:
        K *= 2
        if K > cap:
            raise CertificationError(f"tolerance {tol:.1e} needs |n1 n2| beyond {cap}")
    lo, hi = K // 2, K
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _plus_tail(c, mid) > tol:
            lo = mid
        else:
            hi = mid
    return hi, _plus_tail(c, hi)


def _e(z):
    return cmath.exp(2j * cmath.pi * z)


def ray_sum(ctx, h, tau, t, shift):
    """Closed form of the isotropic-ray part of Theta+ (zero at eps = 0)."""
    h = _coset(ctx, h)
    eps, epsp = shift.eps, shift.eps_prime
    rays = c_minus1(ctx, h)
    if eps == 0 or rays == 0:
        return 0j
    if abs(eps) >= admissible_eps(t):
        raise ValueError(f"|eps| = {abs(eps)} outside the admissible window "
                         f"(0, {admissible_eps(t):.6g}) for t = {t}")
    N = ctx.level
    s = -1 if eps > 0 else 1
    z = s * (epsp - eps * tau)
    pref = s * _e((2 * eps * epsp - eps * eps * tau) / N) / (1.0 - _e(z))
    total = 0j
    # ray n1 = 0 runs over n2 = h2 (mod N), and symmetrically
    for hi, hj in ((h.h1, h.h2), (h.h2, h.h1)):
        if hi % N == 0:
            total += pref * _e(z * float(frac_angle(Fraction(s * hj, N))))
    return total


def theta_plus_h(ctx, h, tau, t, shift=ZERO_SHIFT, tol=1e-12):
    """Sum of phi_plus(iota_t(X)) e(B(X, eps'(1,1))) over X in L + h + eps(1,1).

    At eps = 0 no isotropic vector lies in the support, so only the
    anisotropic part remains.  For eps != 0 with rays present, |eps| must be
    below :func:`admissible_eps`.
    """
    h = _coset(ctx, h)
    tau, t = _tau(tau), _t(t)
    rays = ray_sum(ctx, h, tau, t, shift)
    K, bound = plus_cutoff(ctx, tau.imag, shift.eps, tol)
    val = _kernels.plus_sum(ctx.level, h.h1, h.h2, tau.real, tau.imag, t,
                            shift.eps, shift.eps_prime, K)
    return Certified(val + rays, bound)


def theta_tilde_shifted_h(ctx, h, tau, t, shift, tol=1e-12):
    """Theta~_h(tau, t; eps, eps') = Theta+ - Theta*."""
    p = theta_plus_h(ctx, h, tau, t, shift, tol)
    s = theta_star_h(ctx, h, tau, t, shift, tol)
    return Certified(p.value - s.value, p.tail_bound + s.tail_bound)


def pole_term(ctx, h, tau, eps, sign=1):
    """c_{-1}(h) / (2 pi i (tau - sign) eps), the divergence along eps' = sign eps."""
    return c_minus1(ctx, h) / (2j * math.pi * (_tau(tau) - sign) * eps)


def theta_tilde_h(ctx, h, tau, t, tol=1e-12, variant=None):
    """Completed kernel c_h(0) + Theta+(0, 0) -/+ Theta*(0, 0)."""
    variant = variant or SELECTED_VARIANT
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    p = theta_plus_h(ctx, h, tau, t, ZERO_SHIFT, tol)
    s = theta_star_h(ctx, h, tau, t, ZERO_SHIFT, tol)
    sign = -1.0 if variant == "minus" else 1.0
    val = float(c0(ctx, h)) + p.value + sign * s.value
    return Certified(val, p.tail_bound + s.tail_bound)


def _vector(fn, ctx, *args, **kw):
    vals = [fn(ctx, h, *args, **kw) for h in ctx.cosets()]
    return KernelValue(np.array([r.value for r in vals]), max(r.tail_bound for r in vals))


def theta_vector(ctx, tau, t, tol=1e-12):
    return _vector(theta_h, ctx, tau, t, tol=tol)


def theta_tilde_vector(ctx, tau, t, tol=1e-12, variant=None):
    return _vector(theta_tilde_h, ctx, tau, t, tol=tol, variant=variant)


def theta_tilde_shifted_vector(ctx, tau, t, shift, tol=1e-12):
    return _vector(theta_tilde_shifted_h, ctx, tau, t, shift, tol=tol)

