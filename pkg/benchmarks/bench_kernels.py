"""Benchmark the numba kernels against their pure-numpy fallbacks.

Runs each hot kernel through both implementations on identical inputs,
reporting wall time and the largest value discrepancy between the paths.
JIT compilation is triggered by an untimed warmup call.

Usage:  python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import time

import numpy as np

from asymsqueeze import SqueezeParams, coefficients, complex_form_matrix
from asymsqueeze import _kernels


def timed(fn, *args, repeat):
    best = math.inf
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_bell(repeat):
    rng = np.random.default_rng(7)
    n = 64 * 64 * 200
    args = (
        np.full(n, 0.5),
        np.full(n, 1.0),
        rng.uniform(0.001, 2.0, n),
        rng.uniform(0.0, 2 * math.pi, n),
        rng.uniform(0.0, 2 * math.pi, n),
    )
    _kernels.bell_values_jit(*(a[:16] for a in args))  # warmup/compile
    t_jit, out_jit = timed(_kernels.bell_values_jit, *args, repeat=repeat)
    t_np, out_np = timed(_kernels.bell_values_numpy, *args, repeat=repeat)
    return f"CHSH grid ({n} pts)", t_jit, t_np, float(np.max(np.abs(out_jit - out_np)))


def bench_fock(repeat):
    c = coefficients(SqueezeParams(0.5, 1.0))
    norm = 2.0 / math.sqrt(c.L)
    _kernels.fock_series_table_jit(c.A, c.B, norm, 10)  # warmup/compile
    t_jit, out_jit = timed(_kernels.fock_series_table_jit, c.A, c.B, norm, 120, repeat=repeat)
    t_np, out_np = timed(_kernels.fock_series_table_numpy, c.A, c.B, norm, 120, repeat=repeat)
    return "Fock series table (cutoff 120)", t_jit, t_np, float(np.max(np.abs(out_jit - out_np)))


def bench_teleport(repeat):
    m = complex_form_matrix(SqueezeParams(0.8, -0.6))
    xs = np.linspace(-6.0, 6.0, 721)
    ys = np.linspace(-6.0, 6.0, 721)
    _kernels.teleport_integrand_jit(xs[:4], ys[:4], m, 1, 0.7, 0j)  # warmup/compile
    t_jit, out_jit = timed(_kernels.teleport_integrand_jit, xs, ys, m, 1, 0.7, 0j, repeat=repeat)
    t_np, out_np = timed(_kernels.teleport_integrand_numpy, xs, ys, m, 1, 0.7, 0j, repeat=repeat)
    return "fidelity integrand (721x721)", t_jit, t_np, float(np.max(np.abs(out_jit - out_np)))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _kernels._NUMBA_OK:
        print("numba is not importable; nothing to compare")
        return

    print(f"{'kernel':<32s} {'jit':>10s} {'numpy':>10s} {'speedup':>8s} {'max |diff|':>12s}")
    for bench in (bench_bell, bench_fock, bench_teleport):
        name, t_jit, t_np, diff = bench(args.repeat)
        print(f"{name:<32s} {t_jit * 1e3:>8.1f}ms {t_np * 1e3:>8.1f}ms {t_np / t_jit:>7.1f}x {diff:>12.2e}")


if __name__ == "__main__":
    main()
