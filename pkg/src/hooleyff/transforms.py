"""Short intervals, complete sums, and the additive Fourier transform.

A short interval of height n around a center c is {c + f : deg f < n}; with
the little-endian residue indexing the centered interval is exactly
``range(q**n)`` and a general one is its translate.  The Fourier transform is

    t_hat(h) = sum_f t(f) * e(f*h/g),

evaluated through the digit bilinear form of the ring (see ``characters``),
with the heavy double loop delegated to the selected kernel backend.  The
annihilator of the centered interval of height n is the centered interval of
height m - n: phases e(f*h/g) with deg f < n, deg h < m - n involve only
coefficients of f*h below u^{m-1}, and counting shows nothing else
annihilates.  That turns every short sum into a dual short sum over the
annihilator, which is the restriction identity checked by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .characters import pairing_matrix
from .errors import RingMismatch, Validation
from .polyring import Poly, ResidueRing
from .tracefn import TraceFunction


@dataclass(frozen=True)
class Interval:
    """{center + f : deg f < n} inside a residue ring."""

    ring: ResidueRing
    n: int
    center: Poly

    def __post_init__(self):
        if not 0 <= self.n <= self.ring.m:
            raise Validation(f"interval height {self.n} outside [0, {self.ring.m}]")

    @classmethod
    def centered(cls, ring: ResidueRing, n: int) -> "Interval":
        return cls(ring, n, Poly.zero(ring.field))

    @property
    def cardinality(self) -> int:
        return self.ring.field.q ** self.n

    def indices(self) -> np.ndarray:
        base = np.arange(self.cardinality, dtype=np.int64)
        if self.center.is_zero():
            return base
        return self.ring.add_perm(self.center)[base]

    def contains(self, f: Poly) -> bool:
        return (self.ring.reduce(f - self.center)).degree < self.n


def complete_sum(t: TraceFunction) -> complex:
    return complex(t.values.sum())


def short_sum(t: TraceFunction, interval: Interval) -> complex:
    if interval.ring != t.ring:
        raise RingMismatch("interval and trace function live on different rings")
    return complex(t.values[interval.indices()].sum())


def dft(t: TraceFunction) -> TraceFunction:
    """t_hat(h) = sum_f t(f) e(f*h/g)."""
    ring = t.ring
    M = pairing_matrix(ring)
    out = kernels.dft_bilinear(np.ascontiguousarray(t.values), ring.digits,
                               np.ascontiguousarray(M), ring.field.p)
    return TraceFunction(ring, out, f"dft({t.family})", t.rank_r, t.conductor_c)


def inverse_dft(t: TraceFunction) -> TraceFunction:
    """Inverse of :func:`dft`: t(f) = N^{-1} sum_h t_hat(h) e(-f*h/g)."""
    ring = t.ring
    M = pairing_matrix(ring)
    out = kernels.dft_bilinear(np.ascontiguousarray(np.conj(t.values)),
                               ring.digits, np.ascontiguousarray(M), ring.field.p)
    return TraceFunction(ring, np.conj(out) / ring.N, f"idft({t.family})",
                         t.rank_r, t.conductor_c)


def perp_space(interval: Interval) -> np.ndarray:
    """Indices of the annihilator of a centered interval: {deg h < m - n}."""
    if not interval.center.is_zero():
        raise Validation("annihilator is defined for centered intervals")
    q = interval.ring.field.q
    return np.arange(q ** (interval.ring.m - interval.n), dtype=np.int64)


def restriction_sum(t_hat: TraceFunction, interval: Interval) -> complex:
    """Short sum of t over the interval, computed from the Fourier side:

        sum_{x in c + V} t(x) = (|V| / N) * sum_{h in V_perp} t_hat(h) e(-c*h/g)
    """
    ring = t_hat.ring
    if interval.ring != ring:
        raise RingMismatch("interval and transform live on different rings")
    perp = perp_space(Interval.centered(ring, interval.n))
    p = ring.field.p
    M = pairing_matrix(ring)
    cd = ring.digits_of_index(ring.index(interval.center))
    phases = (ring.digits[perp].astype(np.int64) @ (M @ cd)) % p
    zeta = np.exp(2j * np.pi * np.arange(p) / p)
    vals = t_hat.values[perp] * np.conj(zeta[phases])
    return complex(vals.sum() * interval.cardinality / ring.N)


def negate(t: TraceFunction) -> TraceFunction:
    """x -> t(-x)."""
    return TraceFunction(t.ring, t.values[t.ring.neg_perm], t.family,
                         t.rank_r, t.conductor_c)


def autocorrelation(t1: TraceFunction, t2: TraceFunction, h: Poly) -> complex:
    """N^{-1} sum_f t1(f) * conj(t2(f - h))."""
    if t1.ring != t2.ring:
        raise RingMismatch("autocorrelation of trace functions on different rings")
    ring = t1.ring
    shifted = t2.values[ring.add_perm(-h)]
    return complex(np.sum(t1.values * np.conj(shifted)) / ring.N)
