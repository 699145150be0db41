"""Pure-numpy implementations of the two quadratic-time kernels.

These mirror the compiled versions in ``_kernels.pyx`` and are selected by
``kernels`` when the extension is not built.  Both kernels see only integer
digit data and complex values; all ring structure is prepared by the caller.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

# cap on the number of complex entries materialized per block
_BLOCK_ENTRIES = 1 << 22


def dft_bilinear(values: np.ndarray, digits: np.ndarray,
                 phase_matrix: np.ndarray, p: int) -> np.ndarray:
    """out[h] = sum_f values[f] * zeta_p^(dig(f)^T M dig(h)).

    values: (N,) complex128; digits: (N, D) uint8; phase_matrix: (D, D) ints.
    """
    N = values.shape[0]
    digs = digits.astype(np.int64)
    zeta = np.exp(2j * np.pi * np.arange(p) / p)
    W = (digs @ (phase_matrix % p))  # (N, D), row h gives weights for dig(f)
    out = np.empty(N, dtype=np.complex128)
    block = max(1, _BLOCK_ENTRIES // max(N, 1))
    for lo in range(0, N, block):
        hi = min(N, lo + block)
        ph = (W[lo:hi] @ digs.T) % p          # (B, N) integer phases
        out[lo:hi] = zeta[ph] @ values
    return out


def mult_convolve(v: np.ndarray, w: np.ndarray, unit_indices: np.ndarray,
                  unit_matrices: np.ndarray, digits: np.ndarray,
                  p: int, p_pows: np.ndarray) -> np.ndarray:
    """out[x*y] += v[x] * w[y] over unit x and all y.

    unit_matrices[j] is the digit matrix of multiplication by unit j, so the
    index map y -> x*y is a permutation computed per unit.
    """
    N = w.shape[0]
    digs = digits.astype(np.int64)
    out = np.zeros(N, dtype=np.complex128)
    for j, x in enumerate(unit_indices):
        c = v[x]
        if c == 0:
            continue
        perm = ((digs @ unit_matrices[j].T) % p) @ p_pows
        out[perm] += c * w
    return out
