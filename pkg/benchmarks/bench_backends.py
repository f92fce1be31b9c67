#!/usr/bin/env python3
"""Benchmark the compiled Jacobi kernel against the pure-Python twin.

Times raw eigensolves per dimension and an end-to-end reality-variation
workload (the hot path of the verification sweeps).  Run from the repo
root with ``PYTHONPATH=src python3 benchmarks/bench_backends.py`` after
building the extension in place, or after ``pip install -e .``.
"""

import time

import numpy as np

from realmon import _jacobi_py, linalg
from realmon.reality import delta_reality_other
from realmon.sampling import random_density, random_observable
from realmon.states import DensityOperator

try:
    from realmon import _jacobi as _jacobi_ext
except ImportError:
    _jacobi_ext = None

KERNELS = [("python", _jacobi_py)] + ([("compiled", _jacobi_ext)] if _jacobi_ext else [])


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def bench_eigensolves():
    print("raw Hermitian eigensolve (cyclic Jacobi), microseconds per solve")
    header = f"{'d':>4}" + "".join(f"{name:>12}" for name, _ in KERNELS) + f"{'speedup':>10}"
    print(header)
    rng = np.random.default_rng(0)
    for d in (2, 3, 4, 8, 16):
        mats = [random_hermitian(d, rng) for _ in range(400)]
        times = []
        for _, kernel in KERNELS:
            start = time.perf_counter()
            for m in mats:
                linalg._eig_with_kernel(m, kernel)
            times.append((time.perf_counter() - start) / len(mats) * 1e6)
        speedup = times[0] / times[-1] if len(times) > 1 else 1.0
        row = f"{d:>4}" + "".join(f"{t:>12.1f}" for t in times) + f"{speedup:>9.1f}x"
        print(row)


def bench_reality_workload():
    print("\nend-to-end probe-gain evaluation (random instances), ms per instance")
    rng = np.random.default_rng(1)
    instances = []
    for k in range(300):
        d = (2, 3, 4)[k % 3]
        instances.append(
            (
                random_observable(d, rng),
                random_observable(d, rng),
                float(rng.random()),
                random_density(d, rng).matrix,
            )
        )
    saved = linalg._KERNEL
    try:
        for name, kernel in KERNELS:
            linalg._KERNEL = kernel
            start = time.perf_counter()
            for x, xp, eps, mat in instances:
                # fresh state per pass so no cached spectra leak across kernels
                delta_reality_other(xp, x, eps, DensityOperator(mat, validate=False))
            per = (time.perf_counter() - start) / len(instances) * 1e3
            print(f"  {name:>9}: {per:.3f} ms")
    finally:
        linalg._KERNEL = saved


if __name__ == "__main__":
    active = linalg.eig_backend()
    print(f"active backend at import: {active}")
    if _jacobi_ext is None:
        print("compiled kernel not built; benchmarking the pure kernel only")
    bench_eigensolves()
    bench_reality_workload()
