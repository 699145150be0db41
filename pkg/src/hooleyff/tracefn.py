"""Trace functions: complex tables over a residue ring, plus the built-in
families and their hypothesis checks.

A :class:`TraceFunction` is a read-only complex vector indexed by residues,
tagged with a family label and the (rank, conductor) metadata that the bound
formulas consume.  Families:

* mixed character: t(h) = chi(F(h)) * e(a(h) * inv(b(h)) / g), zero where
  b(h) is not a unit (and wherever chi vanishes).  F, a, b are polynomials
  in an outer variable T with coefficients in F_q[u]; per-factor hypotheses
  are enforced and violations are reported naming the factor and clause.
* normalized hyper-Kloosterman: Kl_k(a; b) built by repeated multiplicative
  convolution of the one-variable table x -> e(b*x/g) over units.
* value-set indicator of a T-polynomial over a residue field.

Polynomials in T are plain tuples of :class:`Poly` coefficients, constant
term first ("tpoly" helpers below).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .base_field import Field
from .characters import AdditiveChar, MultChar, additive_phase_table
from .errors import (
    DegreeTooLargeForCharacteristic,
    HypothesisViolation,
    KTooSmall,
    NotCoprime,
    NotPrimitive,
    RingMismatch,
    Validation,
)
from .polyring import NEG_INF, Poly, ResidueField, ResidueRing, poly_gcd

# ------------------------------------------------------------------- tpoly
# polynomials in T over F_q[u]: tuple of Poly coefficients, constant first


def tpoly(coeffs) -> tuple[Poly, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def tpoly_constant(c: Poly) -> tuple[Poly, ...]:
    return tpoly([c])


def tpoly_degree(tp) -> int | float:
    return len(tp) - 1 if tp else NEG_INF


def tpoly_eval(tp, h: Poly, g: Poly) -> Poly:
    """Evaluate at a residue, reducing mod g along the way."""
    acc = Poly.zero(h.field)
    for c in reversed(tp):
        acc = (acc * h + c) % g
    return acc


def tpoly_reduce(tp, pi: Poly) -> tuple[Poly, ...]:
    return tpoly(c % pi for c in tp)


def tpoly_to_json(tp) -> list:
    return [c.to_json() for c in tp]


def tpoly_from_json(field: Field, obj) -> tuple[Poly, ...]:
    return tpoly(Poly.from_json(field, c) for c in obj)


def tpoly_str(tp) -> str:
    if not tp:
        return "0"
    parts = []
    for i, c in enumerate(tp):
        if c.is_zero():
            continue
        cs = str(c)
        if i == 0:
            parts.append(cs)
            continue
        head = "" if cs == "1" else f"({cs})*"
        parts.append(f"{head}T^{i}" if i > 1 else f"{head}T")
    return " + ".join(reversed(parts))


def _tpoly_divides(b, a, rf: ResidueField) -> bool:
    """Does b divide a in (F_q[u]/pi)[T]?  Inputs already reduced mod pi."""
    if not b:
        return not a
    rem = [c % rf.pi for c in a]
    db = len(b) - 1
    lc_inv = rf.unrank(rf.inv_index(rf.index(b[-1])))
    while len(rem) - 1 >= db and rem:
        lead = (rem[-1] * lc_inv) % rf.pi
        if not lead.is_zero():
            off = len(rem) - 1 - db
            for i in range(db):
                rem[off + i] = (rem[off + i] - lead * b[i]) % rf.pi
        rem.pop()
        while rem and rem[-1].is_zero():
            rem.pop()
    return not rem


# ----------------------------------------------------------- TraceFunction


class TraceFunction:
    """A complex-valued function on the residues of a ring, with metadata.

    ``rank_r`` and ``conductor_c`` feed the square-root cancellation bound;
    they are carried with the table so every report can state which bound was
    applied.
    """

    __slots__ = ("ring", "values", "family", "rank_r", "conductor_c")

    def __init__(self, ring: ResidueRing, values, family: str = "custom",
                 rank_r: int = 1, conductor_c: int = 0):
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (ring.N,):
            raise Validation(
                f"table length {values.shape} does not match ring size {ring.N}")
        if rank_r != int(rank_r) or int(rank_r) < 1:
            raise Validation(f"rank_r = {rank_r} must be an integer >= 1")
        if conductor_c != int(conductor_c) or int(conductor_c) < 0:
            raise Validation(f"conductor_c = {conductor_c} must be an integer >= 0")
        rank_r, conductor_c = int(rank_r), int(conductor_c)
        values = values.copy()
        values.setflags(write=False)
        self.ring = ring
        self.values = values
        self.family = family
        self.rank_r = rank_r
        self.conductor_c = conductor_c

    def __call__(self, f: Poly) -> complex:
        return complex(self.values[self.ring.index(f)])

    def with_metadata(self, rank_r: int | None = None,
                      conductor_c: int | None = None) -> "TraceFunction":
        return TraceFunction(self.ring, self.values, self.family,
                             self.rank_r if rank_r is None else rank_r,
                             self.conductor_c if conductor_c is None else conductor_c)

    def translate(self, c: Poly) -> "TraceFunction":
        """x -> t(x + c)."""
        perm = self.ring.add_perm(c)
        return TraceFunction(self.ring, self.values[perm], self.family,
                             self.rank_r, self.conductor_c)

    def conjugate(self) -> "TraceFunction":
        return TraceFunction(self.ring, np.conj(self.values), self.family,
                             self.rank_r, self.conductor_c)

    # ----------------------------------------------------------------- io

    def export_csv(self, path) -> None:
        path = Path(path)
        with path.open("w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["residue_index", "residue_poly", "re", "im"])
            for i in range(self.ring.N):
                v = self.values[i]
                wr.writerow([i, str(self.ring.unrank(i)), repr(float(v.real)),
                             repr(float(v.imag))])
        sidecar = {
            "family": self.family,
            "rank_r": self.rank_r,
            "conductor_c": self.conductor_c,
            "field": self.ring.field.to_json(),
            "modulus": self.ring.modulus.to_json(),
        }
        path.with_suffix(path.suffix + ".json").write_text(
            json.dumps(sidecar, indent=2, sort_keys=True) + "\n")

    @classmethod
    def import_csv(cls, path, ring: ResidueRing | None = None) -> "TraceFunction":
        path = Path(path)
        sidecar = json.loads(path.with_suffix(path.suffix + ".json").read_text())
        field = Field.from_json(sidecar["field"])
        modulus = Poly.from_json(field, sidecar["modulus"])
        if ring is None:
            ring = ResidueRing(modulus)
        elif ring.field != field or ring.modulus != modulus:
            raise RingMismatch("sidecar ring does not match the provided ring")
        values = np.zeros(ring.N, dtype=np.complex128)
        with path.open(newline="") as fh:
            rd = csv.reader(fh)
            header = next(rd)
            if header[:4] != ["residue_index", "residue_poly", "re", "im"]:
                raise Validation(f"unexpected trace table header {header}")
            for row in rd:
                values[int(row[0])] = float(row[2]) + 1j * float(row[3])
        return cls(ring, values, sidecar.get("family", "custom"),
                   int(sidecar.get("rank_r", 1)), int(sidecar.get("conductor_c", 0)))

    def __repr__(self) -> str:
        return (f"TraceFunction({self.family} mod {self.ring.modulus}, "
                f"r={self.rank_r}, c={self.conductor_c})")


# --------------------------------------------------- mixed character family


@dataclass(frozen=True)
class MixedCharSpec:
    """chi(F(h)) * e(a(h) * inv(b(h)) / g): the data (chi, F, a, b)."""

    chi: MultChar
    F: tuple[Poly, ...]
    a: tuple[Poly, ...]
    b: tuple[Poly, ...]

    def validate(self) -> None:
        if not self.chi.is_primitive:
            raise NotPrimitive(
                f"character {self.chi.exponents} mod {self.chi.ring.modulus} "
                "is not primitive")
        ring = self.chi.ring
        p = ring.field.p
        for i, pi in enumerate(ring.factors):
            rf = ring.factor_ring(i)
            Fp = tpoly_reduce(self.F, pi)
            ap = tpoly_reduce(self.a, pi)
            bp = tpoly_reduce(self.b, pi)
            if not bp:
                raise HypothesisViolation(f"factor {pi}: b vanishes mod the factor")
            db = tpoly_degree(bp)
            if db >= p:
                raise HypothesisViolation(
                    f"factor {pi}: deg_T(b) = {db} is not < p = {p}")
            da = tpoly_degree(ap)
            if da != NEG_INF and da > db + 1:
                raise HypothesisViolation(
                    f"factor {pi}: deg_T(a) = {da} exceeds deg_T(b) + 1 = {db + 1}")
            if tpoly_degree(Fp) in (NEG_INF, 0) and _tpoly_divides(bp, ap, rf):
                raise HypothesisViolation(
                    f"factor {pi}: F is constant mod the factor and b divides a")

    def conductor(self) -> int:
        """max over factors of max(deg_T F + 2 deg_T b, 2 deg_T b), floored at 0."""
        ring = self.chi.ring
        best = 0
        for pi in ring.factors:
            dF = tpoly_degree(tpoly_reduce(self.F, pi))
            db = tpoly_degree(tpoly_reduce(self.b, pi))
            dF = 0 if dF is NEG_INF else int(dF)
            db = 0 if db is NEG_INF else int(db)
            best = max(best, dF + 2 * db, 2 * db)
        return best


def mixed_char_tables(ring: ResidueRing, F, a, b):
    """Per-modulus tables shared by every character: for each residue h, the
    index of F(h), the additive phase of a(h)*inv(b(h))/g, and whether b(h)
    is a unit.  Cached on the ring."""
    key = ("mixed_tables", tuple(F), tuple(a), tuple(b))
    if key not in ring._cache:
        g = ring.modulus
        N = ring.N
        p = ring.field.p
        chi_arg = np.zeros(N, dtype=np.int64)
        phase = np.zeros(N, dtype=np.int64)
        ok = np.zeros(N, dtype=bool)
        inv_idx = ring.inv_indices
        add = AdditiveChar(ring.field)
        for i in range(N):
            h = ring.unrank(i)
            chi_arg[i] = ring.index(tpoly_eval(F, h, g))
            bv = tpoly_eval(b, h, g)
            j = ring.index(bv)
            if inv_idx[j] < 0:
                continue
            ok[i] = True
            av = tpoly_eval(a, h, g)
            phase[i] = add.phase(av * ring.unrank(int(inv_idx[j])), g)
        ring._cache[key] = (chi_arg, phase, ok)
    return ring._cache[key]


def from_mixed_char(spec: MixedCharSpec, rank_r: int | None = None,
                    conductor_c: int | None = None) -> TraceFunction:
    spec.validate()
    ring = spec.chi.ring
    chi_arg, phase, ok = mixed_char_tables(ring, spec.F, spec.a, spec.b)
    zeta = np.exp(2j * np.pi * np.arange(ring.field.p) / ring.field.p)
    values = spec.chi.table()[chi_arg] * zeta[phase]
    values[~ok] = 0
    name = (f"mixed-char(chi={list(spec.chi.exponents)}, F={tpoly_str(spec.F)}, "
            f"a={tpoly_str(spec.a)}, b={tpoly_str(spec.b)})")
    return TraceFunction(ring, values, name,
                         1 if rank_r is None else rank_r,
                         spec.conductor() if conductor_c is None else conductor_c)


# -------------------------------------------------- hyper-Kloosterman family


@dataclass(frozen=True)
class KloostermanSpec:
    k: int
    b: Poly

    def validate(self, ring: ResidueRing) -> None:
        if self.k < 2:
            raise KTooSmall(f"hyper-Kloosterman rank {self.k} must be >= 2")
        if poly_gcd(self.b % ring.modulus, ring.modulus).degree != 0:
            raise NotCoprime(f"twist {self.b} shares a factor with {ring.modulus}")


def from_kloosterman(spec: KloostermanSpec, ring: ResidueRing,
                     conductor_c: int | None = None) -> TraceFunction:
    """Kl_k(a; b) = (-1)^(k-1) |g|^(-(k-1)/2) * sum over unit tuples with
    x_1 * ... * x_k = a of e(b * (x_1 + ... + x_k) / g)."""
    spec.validate(ring)
    zeta = np.exp(2j * np.pi * np.arange(ring.field.p) / ring.field.p)
    base = zeta[additive_phase_table(ring, spec.b % ring.modulus)]
    base[~ring.unit_mask] = 0
    units = ring.unit_indices
    mats = np.stack([ring.mul_matrix(ring.unrank(int(x))) for x in units])
    acc = base
    for _ in range(spec.k - 1):
        acc = kernels.mult_convolve(base, acc, units, mats, ring.digits,
                                    ring.field.p, ring.p_pows)
    norm = float(ring.N) ** ((spec.k - 1) / 2.0)
    values = acc * ((-1.0) ** (spec.k - 1) / norm)
    return TraceFunction(ring, values, f"kloosterman(k={spec.k}, b={spec.b})",
                         spec.k, spec.k if conductor_c is None else conductor_c)


# ------------------------------------------------------ value-set indicator


def value_set(P, rf: ResidueField):
    """Value set of a T-polynomial on a residue field, and its indicator.

    Returns (sorted index array of the value set, indicator TraceFunction on
    the ring mod pi).  The degree d of P must satisfy 1 <= d < p; rank and
    conductor metadata are both d!.
    """
    d = tpoly_degree(P)
    if d is NEG_INF or d < 1:
        raise Validation(f"value-set polynomial must be nonconstant, got degree {d}")
    p = rf.field.p
    if d >= p:
        raise DegreeTooLargeForCharacteristic(
            f"deg_T P = {d} is not below the characteristic {p}")
    Q = rf.Q
    coeff_idx = [rf.index(c % rf.pi) for c in P]
    ys = np.arange(Q, dtype=np.int64)
    acc = np.zeros(Q, dtype=np.int64)
    for c in reversed(coeff_idx):
        acc = _rf_mul_vec(rf, acc, ys)
        acc = _rf_add_const(rf, acc, c)
    members = np.unique(acc)
    ring = ResidueRing(rf.pi)
    values = np.zeros(Q, dtype=np.complex128)
    values[members] = 1.0
    fact = math.factorial(int(d))
    t = TraceFunction(ring, values, f"value-set({tpoly_str(P)} mod {rf.pi})",
                      fact, fact)
    return members, t


def _rf_mul_vec(rf: ResidueField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    out = np.zeros_like(A)
    nz = (A != 0) & (B != 0)
    out[nz] = rf.exp_table[(rf.log_table[A[nz]] + rf.log_table[B[nz]]) % (rf.Q - 1)]
    return out


def _rf_add_const(rf: ResidueField, A: np.ndarray, c: int) -> np.ndarray:
    if c == 0:
        return A
    p = rf.field.p
    D = rf.d * rf.field.e
    t = A.copy()
    out = np.zeros_like(A)
    pw = 1
    for s in range(D):
        cd = c % p
        c //= p
        out += ((t % p + cd) % p) * pw
        t //= p
        pw *= p
    return out
