"""Compare the numba loop kernels with the vectorized numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat 20] [--tol 1e-12]

Cases are the lattice sums behind Theta, Theta* and Theta+ at a few levels
and truncation sizes.  The first numba call (compilation) is excluded.
"""
import argparse
import math
import timeit

from harmeis import _accel
from harmeis._kernels import LOOP_KERNELS, NUMPY_KERNELS
from harmeis.lattice import LatticeContext
from harmeis.theta import _box, plus_cutoff, truncation_radius


def cases(tol):
    for N, tau, t in ((2, 1j, 1.0), (3, 0.2 + 0.6j, 0.5), (5, 0.1 + 0.3j, 2.0), (7, 0.4 + 0.15j, 1.0), (2, 0.3 + 0.01j, 1.0)):
        ctx = LatticeContext(N)
        R = truncation_radius(ctx, tau, t, tol)
        X1, X2 = _box(ctx, t, R)
        K, _ = plus_cutoff(ctx, tau.imag, 0.07, tol)
        u, v = tau.real, tau.imag
        label = f"N={N} tau={tau} t={t}"
        yield "theta", label, (N, 1, 0, u, v, t, X1, X2)
        yield "star", label, (N, 1, 0, u, v, t, 0.07, -0.03, X1, X2)
        yield "plus", label + f" K={K}", (N, 1, 0, u, v, t, 0.07, -0.03, K)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-12)
    args = p.parse_args()
    if not _accel.USE_NUMBA:
        print("numba backend disabled (HARMEIS_BACKEND=numpy or numba missing); "
              "loop kernels run as plain Python")
    print(f"{'kernel':<6} {'case':<40} {'loop [ms]':>10} {'numpy [ms]':>11} {'speedup':>8} {'|diff|':>9}")
    for name, label, a in cases(args.tol):
        loop, vec = LOOP_KERNELS[name], NUMPY_KERNELS[name]
        ref = complex(*loop(*a))  # warm-up / compile
        diff = abs(ref - vec(*a))
        n = args.repeat
        t_loop = min(timeit.repeat(lambda: loop(*a), number=1, repeat=n)) * 1e3
        t_vec = min(timeit.repeat(lambda: vec(*a), number=1, repeat=n)) * 1e3
        print(f"{name:<6} {label:<40} {t_loop:>10.3f} {t_vec:>11.3f} {t_vec / t_loop:>7.1f}x "
              f"{diff:>9.1e}")


if __name__ == "__main__":
    main()
