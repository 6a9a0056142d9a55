"""Pointwise functions on R^{1,1} (quadratic form (x^2 - y^2)/2) and their
Fourier transforms with respect to the negated form.

All pointwise functions are vectorized in (x, y) and use sgn(0) = 0, so every
odd-in-x function vanishes on x = 0.  The light cone y^2 = x^2 is assigned the
value of the open indicator (zero).
"""
import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .quadrature import integrate, panel_rule
from .special import erfc_scaled, erfcx_array

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SplitPoint:
    x: float
    y: float

    def q(self):
        return 0.5 * (self.x * self.x - self.y * self.y)


@dataclass(frozen=True)
class ModularPoint:
    u: float
    v: float

    def __post_init__(self):
        if not self.v > 0:
            raise ValueError("v must be positive")

    @property
    def tau(self):
        return complex(self.u, self.v)


def _tau(tau):
    if isinstance(tau, ModularPoint):
        return tau.tau
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half-plane")
    return tau


def e(z):
    """e(z) = exp(2 pi i z)."""
    return np.exp(2j * np.pi * np.asarray(z)) if np.ndim(z) else cmath.exp(2j * cmath.pi * z)


def _scalar(out):
    return complex(out) if np.ndim(out) == 0 else out


def phi(tau, x, y):
    """sqrt(2v) x e(x^2 tau / 2 - y^2 conj(tau) / 2)."""
    tau = _tau(tau)
    x, y = np.asarray(x, float), np.asarray(y, float)
    out = math.sqrt(2 * tau.imag) * x * np.exp(1j * np.pi * (x * x * tau - y * y * tau.conjugate()))
    return _scalar(out)


def _gauss_erfc_factor(tau, x, y, scale):
    # e((y^2 - x^2) tau / 2) * erfc(scale |x|) written without overflow
    u, v = tau.real, tau.imag
    a = scale * np.abs(x)
    return (np.exp(1j * np.pi * u * (y * y - x * x) - np.pi * v * (y * y - x * x) - a * a)
            * erfcx_array(a))


def phi_star(tau, x, y):
    """sgn(x) e((y^2 - x^2) tau / 2) erfc(sqrt(2 pi v) |x|)."""
    tau = _tau(tau)
    x, y = np.asarray(x, float), np.asarray(y, float)
    out = np.sign(x) * _gauss_erfc_factor(tau, x, y, math.sqrt(TWO_PI * tau.imag))
    return _scalar(out)


def phi_plus(tau, x, y):
    """sgn(x) e((y^2 - x^2) tau / 2) on {y^2 > x^2}, zero elsewhere."""
    tau = _tau(tau)
    x, y = np.asarray(x, float), np.asarray(y, float)
    inside = y * y > x * x
    d = np.where(inside, y * y - x * x, 0.0)
    out = np.sign(x) * inside * np.exp(1j * np.pi * d * tau)
    return _scalar(out)


def phi_tilde(tau, x, y):
    """phi_plus - phi_star; bounded by 1 in modulus."""
    return phi_plus(tau, x, y) - phi_star(tau, x, y)


def d_function(tau, x, y, normalization="pi"):
    """sgn(x) e((y^2 - x^2) tau / 2) erfc(c sqrt(-i tau) |x|).

    The default ``normalization="pi"`` (c = sqrt(pi)) is the bounded solution
    that equals phi_star - F(phi_star at -1/tau)/tau.  ``"literal"`` (c = 1)
    and ``"2pi"`` (c = sqrt(2 pi), agreeing with phi_star on the imaginary
    axis) are kept for comparison.
    """
    tau = _tau(tau)
    c = {"literal": 1.0, "2pi": math.sqrt(TWO_PI), "pi": math.sqrt(math.pi)}[normalization]
    x, y = float(x), float(y)
    if x == 0.0:
        return 0j
    return math.copysign(1.0, x) * cmath.exp(1j * math.pi * (y * y - x * x) * tau) \
        * erfc_scaled(tau, c * x)


def xi_numeric(f, k, tau, step=1e-4):
    """Central-difference xi_k f = 2 i v^k conj(df/d tau-bar); O(step^2) error.

    ``f`` maps a complex tau to a complex scalar or array.
    """
    if step < 1e-6:
        raise ValueError("step below 1e-6 loses too many digits to cancellation")
    tau = _tau(tau)
    fu = (np.asarray(f(tau + step)) - np.asarray(f(tau - step))) / (2 * step)
    fv = (np.asarray(f(tau + 1j * step)) - np.asarray(f(tau - 1j * step))) / (2 * step)
    dbar = 0.5 * (fu + 1j * fv)
    return _scalar(2j * tau.imag ** k * np.conj(dbar))


# ---------------------------------------------------------------------------
# Fourier transforms


@dataclass(frozen=True)
class QuadConfig:
    """Quadrature configuration for :func:`ft2d`.

    ``coords="cartesian"`` is a tensor Gauss-Legendre rule on [-R, R]^2 with a
    panel edge on both axes.  ``coords="lightcone"`` integrates in the rotated
    coordinates a = (w+z)/sqrt2, b = (z-w)/sqrt2 over the quadrants ab > 0,
    splitting at a = b and grading panels toward the axes; it is meant for
    functions supported in y^2 > x^2.  ``taper`` multiplies by the analytic
    window :func:`smooth_cutoff`, which sums conditionally convergent
    integrals; the refined rule then also enlarges R by a quarter.
    """
    radius: float = 8.0
    panel_width: float = 0.25
    nodes: int = 12
    coords: str = "cartesian"
    taper: bool = False
    tol: float = 1e-6

    def refined(self):
        radius = self.radius * 1.25 if self.taper else self.radius
        return replace(self, nodes=self.nodes + self.nodes // 2, radius=radius)


@dataclass
class FTResult:
    value: complex
    error: float
    converged: bool


def smooth_cutoff(s, start=0.2):
    """Analytic window: ~1 for |s| <= start, ~1e-13 at |s| = 1.

    An erfc-shaped step centred between ``start`` and 1, so its Fourier
    transform has Gaussian decay.
    """
    s = np.abs(np.asarray(s, float))
    centre = 0.5 * (1.0 + start)
    sigma = (1.0 - centre) / (7.2 * math.sqrt(2.0))
    return 0.5 * _erfc_np((s - centre) / (math.sqrt(2.0) * sigma))


def _erfc_np(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = np.exp(-z[pos] ** 2) * erfcx_array(z[pos])
    out[~pos] = 2.0 - np.exp(-z[~pos] ** 2) * erfcx_array(-z[~pos])
    return out


def _symmetric_rule(R, width, n):
    m = max(1, int(math.ceil(R / width)))
    edges = np.linspace(0.0, R, m + 1)
    x, w = panel_rule(edges, n)
    return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])


def _graded_edges(R, width, smallest=1e-5):
    geo = [0.0]
    g = smallest
    while g < min(1.0, R):
        geo.append(g)
        g *= 2.0
    start = geo[-1]
    m = max(1, int(math.ceil((R - start) / width)))
    return np.concatenate([geo, np.linspace(start, R, m + 1)[1:]])


def _ft_cartesian(f, x, y, cfg):
    R = cfg.radius
    s, ws = _symmetric_rule(R, cfg.panel_width, cfg.nodes)
    W, Z = np.meshgrid(s, s, indexing="ij")
    vals = f(W, Z) * np.exp(2j * np.pi * (-W * x + y * Z))
    if cfg.taper:
        vals = vals * smooth_cutoff(W / R) * smooth_cutoff(Z / R)
    return complex(ws @ vals @ ws)


def _unit_rule_graded(n, smallest=1e-6, width=0.05):
    edges = _graded_edges(1.0, width, smallest)
    return panel_rule(edges, n)


def _ft_lightcone(f, x, y, cfg, v_decay=1.0, chunk=1024):
    R = cfg.radius
    xp, yp = rotate(x, y)
    a_nodes, a_w = panel_rule(_graded_edges(R, cfg.panel_width), cfg.nodes)
    s_lo, w_lo = _unit_rule_graded(cfg.nodes)
    # beyond |a| = a_cut the strip |b| > |a| carries weight below e^{-2 pi v a^2} ~ 1e-17
    a_cut = math.sqrt(40.0 / (TWO_PI * v_decay))
    near = a_nodes <= a_cut
    total = 0j
    for sign in (1.0, -1.0):
        for start in range(0, a_nodes.size, chunk):
            A = sign * a_nodes[start:start + chunk, None]
            wa = a_w[start:start + chunk, None]
            B = A * s_lo[None, :]
            total += _lightcone_block(f, A, B, wa * np.abs(A) * w_lo[None, :], xp, yp, cfg)
        an = a_nodes[near]
        b_edges = np.linspace(0.0, 1.0, int(math.ceil(R / cfg.panel_width)) + 1)
        s_hi, w_hi = panel_rule(b_edges, cfg.nodes)
        A = sign * an[:, None]
        span = R - an[:, None]
        B = A + sign * span * s_hi[None, :]
        total += _lightcone_block(f, A, B, a_w[near, None] * span * w_hi[None, :], xp, yp, cfg)
    return complex(total)


def _lightcone_block(f, A, B, weights, xp, yp, cfg):
    w_ = (A - B) / math.sqrt(2.0)
    z_ = (A + B) / math.sqrt(2.0)
    vals = f(w_, z_) * np.exp(2j * np.pi * (A * yp + B * xp))
    if cfg.taper:
        R = cfg.radius
        vals = vals * smooth_cutoff(A / R) * smooth_cutoff(B / R)
    return np.sum(weights * vals)


def ft2d(f, x, y, quad=QuadConfig()):
    """F(f)(x, y) = int f(w, z) e(-w x + y z) dw dz by Gauss-Legendre quadrature.

    The error estimate is the change under :meth:`QuadConfig.refined`;
    ``converged`` is False when it exceeds ``quad.tol``.
    """
    rule = {"cartesian": _ft_cartesian, "lightcone": _ft_lightcone}[quad.coords]
    v1 = rule(f, x, y, quad)
    v2 = rule(f, x, y, quad.refined())
    err = abs(v2 - v1)
    return FTResult(v2, err, err <= quad.tol)


def rotate(x, y):
    """(x', y') = A (x, y) with A = [[1, 1], [-1, 1]] / sqrt 2."""
    return (x + y) / math.sqrt(2.0), (y - x) / math.sqrt(2.0)


def ft_phi_plus_tail(tau, xp, yp):
    """Closed form of int e(a y') / (2 pi i (a tau + x')) da (symmetric limit)."""
    tau = _tau(tau)
    if xp * yp <= 0:
        return 0j
    return math.copysign(1.0, yp) * cmath.exp(-2j * math.pi * xp * yp / tau) / tau


def ft_phi_plus(tau, x, y, rotated=False, tol=1e-11):
    """F(phi_plus_tau) at (x, y) through the one-dimensional reduction.

    F = int [e(a^2 tau + a(x'+y')) / (pi i (a tau + x'))] da - tail(x', y'),
    with the Gaussian term integrated adaptively and the tail in closed form.
    """
    tau = _tau(tau)
    xp, yp = (x, y) if rotated else rotate(x, y)
    if abs(xp * yp) < 1e-14:
        raise ValueError("F(phi_plus) is evaluated off the light cone only")
    v = tau.imag
    L = math.sqrt(40.0 / (TWO_PI * v))

    def g(a):
        return np.exp(2j * np.pi * (a * a * tau + a * (xp + yp))) / (1j * np.pi * (a * tau + xp))

    first = integrate(g, -L, L, abs_tol=tol, rel_tol=tol).value
    return complex(first - ft_phi_plus_tail(tau, xp, yp))
