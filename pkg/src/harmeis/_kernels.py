"""Lattice-sum kernels behind the theta functions.

Each kernel has a loop implementation (compiled by numba when available) and
a vectorized numpy implementation; ``BACKEND`` in :mod:`harmeis._accel`
decides which one the public wrappers call.  Both sum in the same
lexicographic order over the same index set.

Conventions: the coset is (h1, h2) mod N, the shift adds ``eps`` to both
coordinates, and ``epsp`` enters through the character e((n1 + n2) epsp / N)
with n the shifted vector.
"""
import math

import numpy as np

from ._accel import USE_NUMBA, jit
from .special import erfcx_array, erfcx_real

TWO_PI = 2.0 * math.pi


@jit
def _first_in_coset(h, N, lo):
    # smallest n >= lo with n = h mod N
    r = (h - lo) % N
    return lo + r


@jit
def _theta_loop(N, h1, h2, u, v, t, X1, X2):
    pref = math.sqrt(v / N)
    re = 0.0
    im = 0.0
    n1 = _first_in_coset(h1, N, -int(math.floor(X1)))
    while n1 <= X1:
        n2 = _first_in_coset(h2, N, -int(math.floor(X2)))
        while n2 <= X2:
            lin = n1 / t + t * n2
            if lin != 0.0:
                mag = pref * lin * math.exp(-math.pi * v * (n1 * n1 / (t * t) + t * t * n2 * n2) / N)
                ph = TWO_PI * u * (n1 * n2) / N
                re += mag * math.cos(ph)
                im += mag * math.sin(ph)
            n2 += N
        n1 += N
    return re, im


@jit
def _star_loop(N, h1, h2, u, v, t, eps, epsp, X1, X2):
    re = 0.0
    im = 0.0
    s2n = math.sqrt(2.0 * N)
    c = math.sqrt(TWO_PI * v)
    n1 = _first_in_coset(h1, N, -int(math.floor(X1 + eps)) - 1)
    while n1 + eps <= X1:
        a1 = n1 + eps
        n2 = _first_in_coset(h2, N, -int(math.floor(X2 + eps)) - 1)
        while n2 + eps <= X2:
            a2 = n2 + eps
            if abs(a1) <= X1 and abs(a2) <= X2:
                x = (a1 / t + t * a2) / s2n
                if x != 0.0:
                    qt = (a1 * a1 / (t * t) + t * t * a2 * a2) / (2.0 * N)
                    mag = erfcx_real(c * abs(x)) * math.exp(-TWO_PI * v * qt)
                    if x < 0.0:
                        mag = -mag
                    ph = TWO_PI * (-(a1 * a2) * u + (a1 + a2) * epsp) / N
                    re += mag * math.cos(ph)
                    im += mag * math.sin(ph)
            n2 += N
        n1 += N
    return re, im


@jit
def _plus_loop(N, h1, h2, u, v, t, eps, epsp, K):
    # anisotropic part: n1 n2 <= -1 and |n1 n2| <= K
    re = 0.0
    im = 0.0
    n1 = _first_in_coset(h1, N, -K)
    while n1 <= K:
        if n1 != 0:
            lim = K // abs(n1)
            n2 = _first_in_coset(h2, N, -lim)
            while n2 <= lim:
                if n1 * n2 <= -1:
                    a1 = n1 + eps
                    a2 = n2 + eps
                    lin = a1 / t + t * a2
                    if lin != 0.0:
                        prod = a1 * a2
                        mag = math.exp(TWO_PI * v * prod / N)
                        if lin < 0.0:
                            mag = -mag
                        ph = TWO_PI * (-prod * u + (a1 + a2) * epsp) / N
                        re += mag * math.cos(ph)
                        im += mag * math.sin(ph)
                n2 += N
        n1 += N
    return re, im


def _coset_range(h, N, lo, hi):
    start = lo + (h - lo) % N
    return np.arange(start, hi + 1, N)


def _theta_np(N, h1, h2, u, v, t, X1, X2):
    n1 = _coset_range(h1, N, -int(math.floor(X1)), int(math.floor(X1)))
    n2 = _coset_range(h2, N, -int(math.floor(X2)), int(math.floor(X2)))
    A, B = np.meshgrid(n1.astype(float), n2.astype(float), indexing="ij")
    lin = A / t + t * B
    mag = math.sqrt(v / N) * lin * np.exp(-math.pi * v * (A * A / (t * t) + t * t * B * B) / N)
    ph = TWO_PI * u * (A * B) / N
    z = mag * np.exp(1j * ph)
    return complex(z.sum())


def _star_np(N, h1, h2, u, v, t, eps, epsp, X1, X2):
    n1 = _coset_range(h1, N, -int(math.floor(X1 + eps)) - 1, int(math.floor(X1 - eps)) + 1)
    n2 = _coset_range(h2, N, -int(math.floor(X2 + eps)) - 1, int(math.floor(X2 - eps)) + 1)
    a1 = n1 + eps
    a2 = n2 + eps
    a1 = a1[np.abs(a1) <= X1]
    a2 = a2[np.abs(a2) <= X2]
    A, B = np.meshgrid(a1, a2, indexing="ij")
    x = (A / t + t * B) / math.sqrt(2.0 * N)
    qt = (A * A / (t * t) + t * t * B * B) / (2.0 * N)
    mag = np.sign(x) * erfcx_array(math.sqrt(TWO_PI * v) * np.abs(x)) * np.exp(-TWO_PI * v * qt)
    ph = TWO_PI * (-(A * B) * u + (A + B) * epsp) / N
    return complex((mag * np.exp(1j * ph)).sum())


def _plus_np(N, h1, h2, u, v, t, eps, epsp, K):
    rows1, rows2 = [], []
    for n1 in _coset_range(h1, N, -K, K):
        if n1 == 0:
            continue
        lim = K // abs(n1)
        n2 = _coset_range(h2, N, -lim, lim)
        n2 = n2[n1 * n2 <= -1]
        rows1.append(np.full(n2.size, n1))
        rows2.append(n2)
    if not rows1:
        return 0j
    a1 = np.concatenate(rows1) + eps
    a2 = np.concatenate(rows2) + eps
    lin = a1 / t + t * a2
    prod = a1 * a2
    mag = np.sign(lin) * np.exp(TWO_PI * v * prod / N)
    ph = TWO_PI * (-prod * u + (a1 + a2) * epsp) / N
    return complex((mag * np.exp(1j * ph)).sum())


def theta_sum(N, h1, h2, u, v, t, X1, X2):
    if USE_NUMBA:
        re, im = _theta_loop(N, h1, h2, u, v, t, X1, X2)
        return complex(re, im)
    return _theta_np(N, h1, h2, u, v, t, X1, X2)


def star_sum(N, h1, h2, u, v, t, eps, epsp, X1, X2):
    if USE_NUMBA:
        re, im = _star_loop(N, h1, h2, u, v, t, eps, epsp, X1, X2)
        return complex(re, im)
    return _star_np(N, h1, h2, u, v, t, eps, epsp, X1, X2)


def plus_sum(N, h1, h2, u, v, t, eps, epsp, K):
    if USE_NUMBA:
        re, im = _plus_loop(N, h1, h2, u, v, t, eps, epsp, K)
        return complex(re, im)
    return _plus_np(N, h1, h2, u, v, t, eps, epsp, K)


# exposed for the backend benchmark
LOOP_KERNELS = {"theta": _theta_loop, "star": _star_loop, "plus": _plus_loop}
NUMPY_KERNELS = {"theta": _theta_np, "star": _star_np, "plus": _plus_np}
