"""Fourier coefficients of the weight-one Eisenstein series and its harmonic
preimage, with evaluation of the truncated expansions.

For a coset h of L = N Z^2 the holomorphic series is

    vartheta_h(tau) = c_h(0) + sum_{m > 0} c_h(m) e(m tau / N)

and its preimage under xi_1 is

    theta~_h(tau) = sum_{m >= 0} c~_h(m) e(m tau / N) + c_h(0) log v
                    - sum_{m > 0} c_h(m) Gamma(0, 4 pi v m / N) e(-m tau / N).

Coefficients are indexed by the integer m = N n.  The c_h are exact
(``Fraction``); the c~_h are floats that also carry an exact skeleton as a
sum of rational multiples of log p.
"""
import csv
import io
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .lattice import CosetIndex, LatticeContext, vectors_with_norm
from .special import digamma_half, frac_angle, gamma0, log_gamma


class CertificationError(RuntimeError):
    """A certified tail bound exceeds the requested tolerance."""


@dataclass(frozen=True)
class Certified:
    value: complex
    tail_bound: float


@dataclass
class QExpansion:
    ctx: LatticeContext
    h: CosetIndex
    coeffs: dict
    m_max: int

    def __eq__(self, other):
        return (isinstance(other, QExpansion) and self.ctx == other.ctx and self.h == other.h
                and self.m_max == other.m_max and _nonzero(self.coeffs) == _nonzero(other.coeffs))


@dataclass
class HarmonicExpansion:
    ctx: LatticeContext
    h: CosetIndex
    hol_coeffs: dict
    log_v_coeff: Fraction
    nonhol_coeffs: dict
    m_max: int
    hol_symbolic: dict = field(default_factory=dict)


def _nonzero(d):
    return {k: v for k, v in d.items() if v != 0}


def _coset(ctx, h):
    return h if isinstance(h, CosetIndex) else ctx.coset(h)


# ---------------------------------------------------------------------------
# coefficients


def c0(ctx, h):
    """Constant term c_h(0) as an exact rational."""
    h = _coset(ctx, h)
    N = ctx.level
    d1, d2 = h.h1 % N == 0, h.h2 % N == 0
    if d2 and not d1:
        return Fraction(1, 2) - frac_angle(Fraction(h.h1, N))
    if d1 and not d2:
        return Fraction(1, 2) - frac_angle(Fraction(h.h2, N))
    return Fraction(0)


def c(ctx, h, m):
    """c_h(m/N): signed count of X in L + h with x1 x2 = m."""
    if m <= 0:
        raise ValueError("c is defined for m > 0; use c0 for the constant term")
    h = _coset(ctx, h)
    return sum((1 if X.x1 > 0 else -1) for X in vectors_with_norm(ctx, h, m))


def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def c_tilde_symbolic(ctx, h, m):
    """Exact form of c~_h(m/N) as {prime: rational coefficient of log prime}."""
    if m <= 0:
        raise ValueError("c_tilde is defined for m > 0; use c_tilde0 for the constant term")
    h = _coset(ctx, h)
    acc = defaultdict(Fraction)
    for X in vectors_with_norm(ctx, h, -m):
        s = 1 if X.x1 > 0 else -1
        for p, k in _factor(abs(X.x1)).items():
            acc[p] += s * k
        for p, k in _factor(abs(X.x2)).items():
            acc[p] -= s * k
    return {p: q for p, q in sorted(acc.items()) if q != 0}


def symbolic_value(sym):
    return math.fsum(float(q) * math.log(p) for p, q in sym.items())


def c_tilde(ctx, h, m):
    """c~_h(m/N) = sum of sgn(x1) log|x1/x2| over X in L + h with x1 x2 = -m."""
    if m <= 0:
        raise ValueError("c_tilde is defined for m > 0; use c_tilde0 for the constant term")
    h = _coset(ctx, h)
    return math.fsum((1 if X.x1 > 0 else -1) * math.log(abs(X.x1 / X.x2))
                     for X in vectors_with_norm(ctx, h, -m))


def c_tilde0(ctx, h):
    """Constant term of the holomorphic part.

    c_h(0) (log(pi N) - psi(1/2)) - log Gamma(a) + log Gamma(1 - a), where a is
    <h1/N> when N | h2 and <h2/N> when N | h1 (zero when neither or both).
    """
    h = _coset(ctx, h)
    N = ctx.level
    d1, d2 = h.h1 % N == 0, h.h2 % N == 0
    if d1 == d2:
        return 0.0
    a = float(frac_angle(Fraction(h.h1 if d2 else h.h2, N)))
    k = float(c0(ctx, h))
    return k * (math.log(math.pi * N) - digamma_half()) - log_gamma(a) + log_gamma(1.0 - a)


# ---------------------------------------------------------------------------
# expansions


def q_expansion(ctx, h, m_max):
    """c_h(m/N) for m = 0 and every 0 < m <= m_max with m = h1 h2 (mod N)."""
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    h = _coset(ctx, h)
    N = ctx.level
    r = (h.h1 * h.h2) % N
    coeffs = {0: c0(ctx, h)}
    for m in range(r if r else N, m_max + 1, N):
        coeffs[m] = Fraction(c(ctx, h, m))
    return QExpansion(ctx, h, coeffs, m_max)


def harmonic_expansion(ctx, h, m_max):
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    h = _coset(ctx, h)
    N = ctx.level
    q = q_expansion(ctx, h, m_max)
    hol = {0: c_tilde0(ctx, h)}
    sym = {}
    r = (-h.h1 * h.h2) % N
    for m in range(r if r else N, m_max + 1, N):
        hol[m] = c_tilde(ctx, h, m)
        sym[m] = c_tilde_symbolic(ctx, h, m)
    nonhol = {m: v for m, v in q.coeffs.items() if m > 0}
    return HarmonicExpansion(ctx, h, hol, q.coeffs[0], nonhol, m_max, sym)


def xi_expansion(exp):
    """Coefficient-level xi_1: log v -> its coefficient, -c Gamma(0, .) q^-n -> c q^n,
    holomorphic part -> 0."""
    coeffs = {0: Fraction(exp.log_v_coeff)}
    coeffs.update({m: Fraction(v) for m, v in exp.nonhol_coeffs.items()})
    return QExpansion(exp.ctx, exp.h, coeffs, exp.m_max)


# ---------------------------------------------------------------------------
# evaluation with certified tails


def series_tail(term, start, ratio, limit):
    """Bound sum_{k >= start} term(k) for a positive term whose successive
    ratio is bounded by ``ratio(k)``, decreasing to ``limit`` < 1.

    Terms are summed explicitly until the ratio bound drops below the
    midpoint of ``limit`` and 1; the rest is closed by a geometric series.
    """
    if not limit < 1.0:
        raise ValueError("series does not converge geometrically")
    target = 0.5 * (1.0 + limit)
    total = 0.0
    k = start
    while ratio(k) > target:
        total += term(k)
        k += 1
    return total + term(k) / (1.0 - ratio(k))


def _count_bound(n):
    # number of X with x1 x2 = +-n is at most 2 d(n) <= 4 sqrt(n)
    return 4.0 * math.sqrt(n)


def vartheta_tail(ctx, v, m_max):
    """Bound for sum_{m > m_max} |c_h(m)| e^{-2 pi v m / N}."""
    N = ctx.level
    cst = 2.0 * math.pi * v / N

    def term(m):
        return _count_bound(m) * math.exp(-cst * m)

    def ratio(m):
        return math.sqrt(1.0 + 1.0 / m) * math.exp(-cst)

    return series_tail(term, m_max + 1, ratio, math.exp(-cst))


def vartheta_tilde_tail(ctx, v, m_max):
    """Bound for the holomorphic and Gamma(0, .) tails beyond m_max."""
    N = ctx.level
    cst = 2.0 * math.pi * v / N

    def term(m):
        # log|x1/x2| <= log m; Gamma(0, x) e^{x/2} < e^{-x/2} / x
        hol = math.log(max(m, 2)) * math.exp(-cst * m)
        nonhol = math.exp(-cst * m) / (2.0 * cst * m)
        return _count_bound(m) * (hol + nonhol)

    def ratio(m):
        lg = math.log(max(m + 1, 2)) / math.log(max(m, 2))
        return math.sqrt(1.0 + 1.0 / m) * max(lg, 1.0) * math.exp(-cst)

    return series_tail(term, m_max + 1, ratio, math.exp(-cst))


def _tau(tau):
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half-plane")
    return tau


def _check(bound, tol):
    if tol is not None and bound > tol:
        raise CertificationError(f"tail bound {bound:.3e} exceeds tolerance {tol:.3e}; raise m_max")


def eval_vartheta(exp, tau, tol=None):
    tau = _tau(tau)
    N = exp.ctx.level
    m = np.array(sorted(exp.coeffs), dtype=float)
    cf = np.array([float(exp.coeffs[k]) for k in sorted(exp.coeffs)])
    value = complex(np.sum(cf * np.exp(2j * np.pi * m * tau / N)))
    bound = vartheta_tail(exp.ctx, tau.imag, exp.m_max)
    _check(bound, tol)
    return Certified(value, bound)


def eval_vartheta_tilde(exp, tau, tol=None):
    tau = _tau(tau)
    N = exp.ctx.level
    v = tau.imag
    value = complex(float(exp.log_v_coeff) * math.log(v))
    for m in sorted(exp.hol_coeffs):
        value += exp.hol_coeffs[m] * np.exp(2j * np.pi * m * tau / N)
    for m in sorted(exp.nonhol_coeffs):
        cm = exp.nonhol_coeffs[m]
        x = 4.0 * math.pi * v * m / N
        if cm and x < 1400.0:
            # |Gamma(0, x) e(-m tau / N)| = Gamma(0, x) e^{x/2}
            g = gamma0(x) * math.exp(x / 2.0)
            value -= float(cm) * g * np.exp(-2j * np.pi * m * tau.real / N)
    bound = vartheta_tilde_tail(exp.ctx, v, exp.m_max)
    _check(bound, tol)
    return Certified(complex(value), bound)


def m_max_for(ctx, tau, tol, tilde=False, cap=100000):
    """Smallest multiple-of-N m_max whose certified tail is below ``tol``."""
    v = _tau(tau).imag
    tail = vartheta_tilde_tail if tilde else vartheta_tail
    m = ctx.level
    while tail(ctx, v, m) > tol:
        m *= 2
        if m > cap:
            raise CertificationError(f"tolerance {tol:.1e} needs m_max beyond {cap}")
    lo, hi = m // 2, m
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail(ctx, v, mid) > tol:
            lo = mid
        else:
            hi = mid
    return hi


def vartheta_vector(ctx, tau, tol=1e-12):
    m = m_max_for(ctx, tau, tol)
    vals = [eval_vartheta(q_expansion(ctx, h, m), tau, tol) for h in ctx.cosets()]
    return np.array([r.value for r in vals]), max(r.tail_bound for r in vals)


def vartheta_tilde_vector(ctx, tau, tol=1e-12):
    m = m_max_for(ctx, tau, tol, tilde=True)
    vals = [eval_vartheta_tilde(harmonic_expansion(ctx, h, m), tau, tol) for h in ctx.cosets()]
    return np.array([r.value for r in vals]), max(r.tail_bound for r in vals)


# ---------------------------------------------------------------------------
# serialization


def _rat(q):
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def to_json(exp):
    """Serialize a QExpansion or HarmonicExpansion.

    A harmonic expansion writes its log v / Gamma(0, .) coefficients under
    "c" (they are the c_h) and the holomorphic part under "c_tilde".
    """
    if isinstance(exp, HarmonicExpansion):
        cs = {0: exp.log_v_coeff, **exp.nonhol_coeffs}
    else:
        cs = exp.coeffs
    d = {
        "N": exp.ctx.level,
        "h": [exp.h.h1, exp.h.h2],
        "m_max": exp.m_max,
        "c": [{"m": m, **_rat(cs[m])} for m in sorted(cs)],
    }
    if isinstance(exp, HarmonicExpansion):
        d["c_tilde"] = [
            {"m": m, "value": exp.hol_coeffs[m],
             "symbolic": [[p, [q.numerator, q.denominator]]
                          for p, q in exp.hol_symbolic.get(m, {}).items()]}
            for m in sorted(exp.hol_coeffs)
        ]
    return json.dumps(d)


def from_json(text):
    d = json.loads(text) if isinstance(text, str) else text
    ctx = LatticeContext(d["N"])
    h = ctx.coset(d["h"])
    cs = {e["m"]: Fraction(e["num"], e["den"]) for e in d["c"]}
    if "c_tilde" not in d:
        return QExpansion(ctx, h, cs, d["m_max"])
    hol = {e["m"]: e["value"] for e in d["c_tilde"]}
    sym = {e["m"]: {p: Fraction(n, q) for p, (n, q) in e["symbolic"]}
           for e in d["c_tilde"] if e["m"] > 0}
    nonhol = {m: v for m, v in cs.items() if m > 0}
    return HarmonicExpansion(ctx, h, hol, cs.get(0, Fraction(0)), nonhol, d["m_max"], sym)


CSV_HEADER = ["N", "h1", "h2", "m", "c_num", "c_den", "c_tilde", "c_tilde_symbolic"]


def to_csv_rows(exp):
    """One row per m; blank cells where a coefficient lies outside its support."""
    rows = []
    cs = {0: exp.log_v_coeff, **exp.nonhol_coeffs}
    for m in sorted(set(cs) | set(exp.hol_coeffs)):
        cq = cs.get(m)
        sym = exp.hol_symbolic.get(m, {})
        rows.append([
            exp.ctx.level, exp.h.h1, exp.h.h2, m,
            "" if cq is None else Fraction(cq).numerator,
            "" if cq is None else Fraction(cq).denominator,
            "" if m not in exp.hol_coeffs else repr(exp.hol_coeffs[m]),
            " ".join(f"{q}*log({p})" for p, q in sym.items()),
        ])
    return rows


def to_csv(exps):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for exp in exps:
        w.writerows(to_csv_rows(exp))
    return buf.getvalue()

