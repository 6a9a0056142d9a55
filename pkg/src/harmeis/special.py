"""Special functions used by the coefficient formulas and the kernels.

Everything here is implemented from elementary operations.  Scalar routines
are numba-compilable (see :mod:`harmeis._accel`); ``erfcx_array`` is the
vectorized numpy counterpart used by the numpy backend.
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._accel import jit

EULER_GAMMA = 0.57721566490153286061
SQRT_PI = 1.7724538509055160273
LOG_2PI = 1.8378770664093454836

# B_2, B_4, ..., B_16
_BERNOULLI_EVEN = np.array([
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
])

_SERIES_CUTOFF = 1.5


@dataclass(frozen=True)
class Accuracy:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")

    def close(self, a, b):
        return abs(a - b) <= max(self.abs_tol, self.rel_tol * abs(b))


@jit
def _erf_series_scaled(x):
    # sum_k 2^k x^(2k+1) / (2k+1)!!  so that erf(x) = 2/sqrt(pi) e^{-x^2} * sum
    term = x
    total = x
    k = 0
    while k < 200:
        k += 1
        term *= 2.0 * x * x / (2 * k + 1)
        total += term
        if term <= 1e-17 * total:
            break
    return total


@jit
def _erfcx_cf(x):
    # Laplace continued fraction, evaluated backwards; x >= _SERIES_CUTOFF
    n = 30 + int(240.0 / (x * x))
    f = x
    for k in range(n, 0, -1):
        f = x + 0.5 * k / f
    return 1.0 / (SQRT_PI * f)


@jit
def erfcx_real(x):
    """Scaled complementary error function exp(x^2) erfc(x)."""
    a = abs(x)
    if a < _SERIES_CUTOFF:
        r = math.exp(a * a) - 2.0 / SQRT_PI * _erf_series_scaled(a)
    else:
        r = _erfcx_cf(a)
    if x < 0.0:
        return 2.0 * math.exp(x * x) - r
    return r


@jit
def erfc_real(x):
    """Complementary error function 1 - erf(x)."""
    a = abs(x)
    if a < _SERIES_CUTOFF:
        r = 1.0 - 2.0 / SQRT_PI * math.exp(-a * a) * _erf_series_scaled(a)
    elif a > 27.3:
        r = 0.0
    else:
        r = math.exp(-a * a) * _erfcx_cf(a)
    if x < 0.0:
        return 2.0 - r
    return r


def erfcx_array(x):
    """Vectorized ``erfcx_real`` (numpy backend)."""
    x_in = np.asarray(x, dtype=float)
    x = np.abs(x_in)
    out = np.empty_like(x)
    small = x < _SERIES_CUTOFF
    xs = x[small]
    if xs.size:
        term = xs.copy()
        total = xs.copy()
        for k in range(1, 60):
            term = term * 2.0 * xs * xs / (2 * k + 1)
            total += term
        out[small] = np.exp(xs * xs) - 2.0 / SQRT_PI * total
    xl = x[~small]
    if xl.size:
        n = 30 + int(240.0 / (_SERIES_CUTOFF * _SERIES_CUTOFF))
        f = xl.copy()
        for k in range(n, 0, -1):
            f = xl + 0.5 * k / f
        out[~small] = 1.0 / (SQRT_PI * f)
    neg = x_in < 0
    out[neg] = 2.0 * np.exp(x[neg] ** 2) - out[neg]
    return out


def _erfc_complex(z):
    # Re z > 0 is guaranteed by callers (|arg z| < pi/4)
    if abs(z) < 2.0:
        term = z
        total = z
        for k in range(1, 400):
            term *= 2.0 * z * z / (2 * k + 1)
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return 1.0 - 2.0 / SQRT_PI * cmath.exp(-z * z) * total
    n = 60 + int(2000.0 / abs(z * z))
    f = z
    for k in range(n, 0, -1):
        f = z + 0.5 * k / f
    return cmath.exp(-z * z) / (SQRT_PI * f)


def erfc_scaled(tau, x):
    """erfc(sqrt(-i tau) |x|), the holomorphic extension of erfc(sqrt(v)|x|).

    Uses the principal square root; -i tau lies in the right half-plane so the
    branch cut is never crossed.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    z = cmath.sqrt(-1j * tau) * abs(x)
    if z == 0:
        return 1.0 + 0.0j
    return _erfc_complex(z)


@jit
def gamma0(x):
    """Upper incomplete gamma Gamma(0, x) = E_1(x) for x > 0."""
    if x <= 0.0:
        raise ValueError("gamma0 requires x > 0")
    if x <= 1.0:
        total = 0.0
        term = 1.0
        k = 0
        while k < 100:
            k += 1
            term *= -x / k
            total += term / k
            if abs(term / k) < 1e-18:
                break
        return -EULER_GAMMA - math.log(x) - total
    # modified Lentz on the continued fraction for e^x E_1(x)
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


@jit
def _stirling_log_gamma(x):
    s = (x - 0.5) * math.log(x) - x + 0.5 * LOG_2PI
    xx = x * x
    p = x
    for k in range(8):
        s += _BERNOULLI_EVEN[k] / ((2 * k + 2) * (2 * k + 1) * p)
        p *= xx
    return s


@jit
def log_gamma(x):
    """log Gamma(x) for x > 0 via Stirling's series after upward recursion."""
    if x <= 0.0:
        raise ValueError("log_gamma requires x > 0")
    shift = 0.0
    while x < 15.0:
        shift += math.log(x)
        x += 1.0
    return _stirling_log_gamma(x) - shift


@jit
def digamma(x):
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    if x <= 0.0:
        raise ValueError("digamma requires x > 0")
    acc = 0.0
    while x < 15.0:
        acc -= 1.0 / x
        x += 1.0
    s = math.log(x) - 0.5 / x
    xx = x * x
    p = xx
    for k in range(8):
        s -= _BERNOULLI_EVEN[k] / ((2 * k + 2) * p)
        p *= xx
    return s + acc


def digamma_half():
    """Gamma'(1/2)/Gamma(1/2) = -gamma - 2 log 2."""
    return digamma(0.5)


@jit
def hurwitz(s, x):
    """Hurwitz zeta H(s, x) = sum_{n>=0} (x+n)^(-s), analytically continued in s.

    Euler-Maclaurin with 8 Bernoulli correction terms after shifting x past 15.
    """
    if s == 1.0:
        raise ValueError("hurwitz zeta has a pole at s = 1")
    if not (0.0 < x <= 1.0):
        raise ValueError("hurwitz requires x in (0, 1]")
    m = 15 + int(abs(s))
    total = 0.0
    for n in range(m):
        total += (x + n) ** (-s)
    a = x + m
    total += a ** (1.0 - s) / (s - 1.0) + 0.5 * a ** (-s)
    # rising factorial s (s+1) ... (s+2k-2) / (2k)!
    coef = s
    fact = 2.0
    power = a ** (-s - 1.0)
    for k in range(8):
        total += _BERNOULLI_EVEN[k] * coef / fact * power
        coef *= (s + 2 * k + 1) * (s + 2 * k + 2)
        fact *= (2 * k + 3) * (2 * k + 4)
        power /= a * a
    return total


def frac_angle(x):
    """Representative of x mod 1 in the half-open interval (0, 1]."""
    x = Fraction(x)
    r = x - (x.numerator // x.denominator)
    return r if r != 0 else Fraction(1)
