"""The split lattice L = N Z^2 with Q(a, b) = ab/N.

The dual lattice is Z^2 and the discriminant group is (Z/N)^2.  Norms of dual
vectors live in (1/N)Z, so norm indices are carried around as the integer
m = N * Q(X).
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class CosetIndex:
    h1: int
    h2: int

    def __iter__(self):
        yield self.h1
        yield self.h2


@dataclass(frozen=True)
class LatticeVector:
    x1: int
    x2: int

    def __add__(self, other):
        return LatticeVector(self.x1 + other.x1, self.x2 + other.x2)

    def __neg__(self):
        return LatticeVector(-self.x1, -self.x2)

    def __iter__(self):
        yield self.x1
        yield self.x2


@dataclass(frozen=True)
class LatticeContext:
    level: int

    def __post_init__(self):
        if not isinstance(self.level, int) or self.level < 1:
            raise ValueError(f"level must be a positive integer, got {self.level!r}")

    @property
    def N(self):
        return self.level

    @property
    def discriminant_order(self):
        return self.level * self.level

    def coset(self, h1, h2=None):
        """Canonical coset index; accepts (h1, h2), a pair, or a CosetIndex."""
        if h2 is None:
            h1, h2 = h1
        return CosetIndex(h1 % self.level, h2 % self.level)

    def cosets(self):
        """All of L*/L in the fixed row-major (h1, h2) order."""
        N = self.level
        return [CosetIndex(a, b) for a in range(N) for b in range(N)]

    def coset_position(self, h):
        return h.h1 * self.level + h.h2

    def neg(self, h):
        N = self.level
        return CosetIndex((N - h.h1) % N, (N - h.h2) % N)


def quad_form(ctx, X):
    return Fraction(X.x1 * X.x2, ctx.level)


def bilinear(ctx, X, Y):
    return Fraction(X.x1 * Y.x2 + X.x2 * Y.x1, ctx.level)


def majorant(ctx, X, t):
    """Positive-definite majorant Q(X)_t = (x1^2/t^2 + t^2 x2^2) / (2N)."""
    if t <= 0:
        raise ValueError("t must be positive")
    return (X.x1 ** 2 / t ** 2 + t ** 2 * X.x2 ** 2) / (2 * ctx.level)


@lru_cache(maxsize=4096)
def divisors(n):
    """Positive divisors of |n| in increasing order."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return tuple(small + large[::-1])


def vectors_with_norm(ctx, h, m):
    """All X in L + h with N*Q(X) = x1*x2 = m, sorted by x1.

    ``m == 0`` is the isotropic case, which has infinitely many solutions.
    """
    if m == 0:
        raise ValueError("m = 0: isotropic vectors are infinite in number")
    N = ctx.level
    out = []
    for d in divisors(m):
        for x1 in (d, -d):
            if (x1 - h.h1) % N:
                continue
            x2 = m // x1
            if (x2 - h.h2) % N == 0:
                out.append(LatticeVector(x1, x2))
    out.sort(key=lambda X: X.x1)
    return out


def vectors_with_norm_scan(ctx, h, m, bound=None):
    """Box-scan reference for :func:`vectors_with_norm` (|x1|, |x2| <= bound)."""
    N = ctx.level
    if bound is None:
        bound = abs(m) * N
    out = []
    for x1 in range(-bound, bound + 1):
        if (x1 - h.h1) % N:
            continue
        for x2 in range(-bound, bound + 1):
            if (x2 - h.h2) % N == 0 and x1 * x2 == m:
                out.append(LatticeVector(x1, x2))
    return out


def num_divisors(n):
    return len(divisors(n))
