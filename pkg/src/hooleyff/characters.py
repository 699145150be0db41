"""Additive and multiplicative characters of residue rings of F_q[u].

Additive side.  For a rational function f/g the residue at infinity is the
coefficient of u^{-1} in its expansion at infinity.  Writing r = f mod g with
deg r < m = deg g, that coefficient equals r_{m-1} / lc(g), so it comes out of
a single reduction.  The character is

    e(f/g) = exp(2*pi*i * Tr(res_inf(f/g)) / p),

with Tr the absolute trace to F_p.  The pairing (f, h) -> e(f*h/g) is
F_p-bilinear in the index digits of f and h; ``pairing_matrix`` materializes
the corresponding matrix once per ring, and every bulk phase computation is a
digit-matrix product followed by one table lookup into the p-th roots of
unity.  Phases are therefore exact integers mod p until the final lookup.

Multiplicative side.  A character mod squarefree g is a tuple of exponents,
one per irreducible factor pi, taken against the fixed generator of each
factor field: the pi-component sends x to zeta^(k_pi * dlog_pi(x)) where zeta
is a primitive root of unity of order |pi| - 1.  The character vanishes on
non-units, is primitive iff every exponent is nonzero, and its order is the
lcm of the component orders.  Phase accumulation across factors is done with
exact integer arithmetic modulo the lcm of the component orders; a single
complex exponential is taken at the end.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .base_field import Field
from .errors import DivisionByZeroPoly, ExponentOutOfRange
from .polyring import Poly, ResidueRing


class AdditiveChar:
    """Evaluator for e(f/g) over a fixed coefficient field."""

    def __init__(self, field: Field):
        self.field = field
        self.zeta_pow = np.exp(2j * np.pi * np.arange(field.p) / field.p)

    def residue_at_infinity(self, f: Poly, g: Poly) -> int:
        """Coefficient of u^{-1} in the expansion of f/g at infinity."""
        if g.is_zero():
            raise DivisionByZeroPoly("residue at infinity of f/0")
        r = f % g
        c = r[int(g.degree) - 1]
        lc = g.lc()
        return c if lc == 1 else self.field.div(c, lc)

    def phase(self, f: Poly, g: Poly) -> int:
        """Tr(res_inf(f/g)) as an integer in [0, p)."""
        return self.field.trace(self.residue_at_infinity(f, g))

    def value(self, f: Poly, g: Poly) -> complex:
        return complex(self.zeta_pow[self.phase(f, g)])


def pairing_matrix(ring: ResidueRing) -> np.ndarray:
    """(D, D) matrix M with M[s, t] = phase of (basis_s * basis_t / g).

    The phase of f*h/g is then dig(f)^T M dig(h) mod p; the matrix is
    symmetric because the product in the ring is commutative.
    """
    if "pairing_matrix" not in ring._cache:
        add = AdditiveChar(ring.field)
        D = ring.D
        M = np.empty((D, D), dtype=np.int64)
        basis = [ring.basis_residue(t) for t in range(D)]
        for s in range(D):
            for t in range(s, D):
                ph = add.phase(basis[s] * basis[t], ring.modulus)
                M[s, t] = ph
                M[t, s] = ph
        ring._cache["pairing_matrix"] = M
    return ring._cache["pairing_matrix"]


def linear_phase_vector(ring: ResidueRing, b: Poly) -> np.ndarray:
    """Vector w with phase of (b * x / g) = dig(x) . w mod p for all x."""
    add = AdditiveChar(ring.field)
    return np.array([add.phase(b * ring.basis_residue(t), ring.modulus)
                     for t in range(ring.D)], dtype=np.int64)


def additive_phase_table(ring: ResidueRing, b: Poly) -> np.ndarray:
    """Phases of e(b * x / g) for every residue x, as integers mod p."""
    w = linear_phase_vector(ring, b)
    return (ring.digits.astype(np.int64) @ w) % ring.field.p


def additive_char_table(ring: ResidueRing, b: Poly) -> np.ndarray:
    """Values e(b * x / g) for every residue x."""
    zeta = np.exp(2j * np.pi * np.arange(ring.field.p) / ring.field.p)
    return zeta[additive_phase_table(ring, b)]


class MultChar:
    """A multiplicative character mod squarefree g, given by factor exponents.

    ``exponents[i]`` lies in [0, Q_i - 2] where Q_i is the order of the i-th
    factor field, factors in the ring's sorted order.
    """

    def __init__(self, ring: ResidueRing, exponents):
        exponents = tuple(int(k) for k in exponents)
        if len(exponents) != len(ring.factors):
            raise ExponentOutOfRange(
                f"{len(exponents)} exponents for {len(ring.factors)} factors")
        for k, rf in zip(exponents, ring.residue_fields):
            if not 0 <= k <= rf.Q - 2:
                raise ExponentOutOfRange(
                    f"exponent {k} outside [0, {rf.Q - 2}] for factor {rf.pi}")
        self.ring = ring
        self.exponents = exponents
        orders = [(rf.Q - 1) // math.gcd(k, rf.Q - 1)
                  for k, rf in zip(exponents, ring.residue_fields)]
        self.order = math.lcm(*orders) if orders else 1
        self.is_primitive = all(k != 0 for k in exponents)
        self.is_principal = all(k == 0 for k in exponents)
        # common denominator for exact phase accumulation
        self._L = math.lcm(*[rf.Q - 1 for rf in ring.residue_fields])
        self._mults = [k * (self._L // (rf.Q - 1))
                       for k, rf in zip(exponents, ring.residue_fields)]

    def conj(self) -> "MultChar":
        return MultChar(self.ring, [(-k) % (rf.Q - 1)
                                    for k, rf in zip(self.exponents, self.ring.residue_fields)])

    def eval(self, x: Poly) -> complex:
        ring = self.ring
        num = 0
        for i, rf in enumerate(ring.residue_fields):
            comp = rf.index(x % rf.pi)
            if comp == 0:
                return 0j
            num += self._mults[i] * rf.dlog(comp)
        return complex(np.exp(2j * np.pi * (num % self._L) / self._L))

    def table(self) -> np.ndarray:
        """Values on every residue index; zero off the units."""
        key = ("char_table", self.exponents)
        if key not in self.ring._cache:
            ring = self.ring
            num = np.zeros(ring.N, dtype=np.int64)
            for i, rf in enumerate(ring.residue_fields):
                comp = ring.split_indices(i)
                dl = np.zeros(ring.N, dtype=np.int64)
                nz = comp != 0
                dl[nz] = rf.log_table[comp[nz]]
                num += self._mults[i] * dl
            vals = np.exp(2j * np.pi * (num % self._L) / self._L)
            vals[~ring.unit_mask] = 0
            self.ring._cache[key] = vals
        return self.ring._cache[key]

    def to_json(self) -> dict:
        return {"modulus": self.ring.modulus.to_json(),
                "exponents": list(self.exponents)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultChar) and self.ring == other.ring
                and self.exponents == other.exponents)

    def __hash__(self) -> int:
        return hash((self.ring, self.exponents))

    def __repr__(self) -> str:
        return f"MultChar({self.ring.modulus}, {self.exponents})"


def mult_char_create(ring: ResidueRing, exponents) -> MultChar:
    return MultChar(ring, exponents)


def principal_character(ring: ResidueRing) -> MultChar:
    return MultChar(ring, [0] * len(ring.factors))


def all_characters(ring: ResidueRing):
    """All characters of the unit group, principal first, deterministic order."""
    ranges = [range(rf.Q - 1) for rf in ring.residue_fields]
    for exps in itertools.product(*ranges):
        yield MultChar(ring, exps)


def primitive_characters(ring: ResidueRing):
    ranges = [range(1, rf.Q - 1) for rf in ring.residue_fields]
    for exps in itertools.product(*ranges):
        yield MultChar(ring, exps)
