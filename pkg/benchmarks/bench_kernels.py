"""Time the compiled kernels against the numpy fallback.

Both backends are imported directly (no env-var games) and fed identical
prepared inputs; each cell is the best of --repeats runs.  Agreement is
checked while timing so a speedup never hides a semantic drift.

Usage: python3 benchmarks/bench_kernels.py [--repeats 3]
"""

import argparse
import time

import numpy as np

from hooleyff import _kernels_py
from hooleyff.base_field import Field
from hooleyff.characters import pairing_matrix
from hooleyff.polyring import Poly, ResidueRing, first_irreducible

try:
    from hooleyff import _kernels
except ImportError:
    _kernels = None

CASES = [
    ("F3, deg 5", Field(3), 5),
    ("F3, deg 6", Field(3), 6),
    ("F3, deg 7", Field(3), 7),
    ("F5, deg 4", Field(5), 4),
    ("F2, deg 10", Field(2), 10),
]


def best_of(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled extension not built; timing the numpy backend alone")
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])

    rng = np.random.default_rng(0)
    header = f"{'ring':<12} {'N':>5}  {'kernel':<13}" + "".join(
        f" {name + ' (ms)':>12}" for name, _ in backends)
    if _kernels is not None:
        header += f" {'speedup':>8} {'max diff':>9}"
    print(header)
    print("-" * len(header))

    for label, field, d in CASES:
        g = first_irreducible(field, d)
        ring = ResidueRing(g)
        values = rng.uniform(-1, 1, ring.N) + 1j * rng.uniform(-1, 1, ring.N)
        M = np.ascontiguousarray(pairing_matrix(ring))
        units = ring.unit_indices
        mats = np.stack([ring.mul_matrix(ring.unrank(int(x))) for x in units])
        w = rng.uniform(-1, 1, ring.N) + 1j * rng.uniform(-1, 1, ring.N)

        jobs = [
            ("dft_bilinear", lambda impl: impl.dft_bilinear(
                values, ring.digits, M, field.p)),
            ("mult_convolve", lambda impl: impl.mult_convolve(
                values, w, units, mats, ring.digits, field.p, ring.p_pows)),
        ]
        for kernel, call in jobs:
            row = f"{label:<12} {ring.N:>5}  {kernel:<13}"
            times, outs = [], []
            for _, impl in backends:
                t, out = best_of(lambda: call(impl), args.repeats)
                times.append(t)
                outs.append(out)
                row += f" {t * 1e3:>12.2f}"
            if len(outs) == 2:
                diff = float(np.max(np.abs(outs[0] - outs[1])))
                row += f" {times[0] / times[1]:>7.1f}x {diff:>9.1e}"
            print(row)


if __name__ == "__main__":
    main()
