"""Polynomials over F_q in the variable u, and residue rings F_q[u]/(g).

A :class:`Poly` stores its coefficients as a tuple of field-element integers,
constant term first, always trimmed, so equal polynomials are equal tuples.
The zero polynomial has an empty tuple and degree ``-inf``; the norm is
``q**deg`` with ``|0| = 0``.

Residues modulo g (deg g = m) are indexed by the integer

    index(f) = sum_j elem(c_j) * q**j,   f = sum_j c_j u^j,  deg f < m,

so ``range(q**n)`` is exactly the short interval {deg f < n}, and the base-p
digit expansion of an index lists the F_p coordinates of the residue.  All
bulk operations (translation, multiplication by a fixed unit, reduction mod a
factor, CRT lifting) are F_p-linear in those digits and are realized as small
matrices applied to the digit table with numpy.

Squarefree moduli are factored by distinct-degree splitting followed by
seeded equal-degree splitting, so factor order and every table derived from
it are reproducible.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .base_field import Field, prime_factors
from .errors import (
    DivisionByZeroPoly,
    NotMonic,
    NotSquarefree,
    Reducible,
    TooLarge,
    ZeroArgument,
)

NEG_INF = float("-inf")

#: largest residue ring/field cardinality for which index tables are built
RING_LIMIT = 1 << 20


class Poly:
    """A polynomial in F_q[u], immutable, coefficients constant-term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=(), normalize: bool = True):
        if normalize:
            coeffs = list(coeffs)
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # ------------------------------------------------------------- builders

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: Field, c: int) -> "Poly":
        return cls(field, (c % field.q,) if c % field.q else ())

    @classmethod
    def from_coeffs(cls, field: Field, coeffs) -> "Poly":
        return cls(field, coeffs)

    # ----------------------------------------------------------- structure

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroArgument("leading coefficient of the zero polynomial")
        return self.coeffs[-1]

    def norm(self) -> int:
        """|f| = q**deg f, with |0| = 0."""
        return self.field.q ** (len(self.coeffs) - 1) if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # ----------------------------------------------------------- arithmetic

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs], normalize=False)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out, normalize=False)

    def scale(self, c: int) -> "Poly":
        F = self.field
        if c == 0:
            return Poly(F, ())
        return Poly(F, [F.mul(a, c) for a in self.coeffs], normalize=False)

    def shift(self, k: int) -> "Poly":
        """Multiply by u**k."""
        if not self.coeffs:
            return self
        return Poly(self.field, (0,) * k + self.coeffs, normalize=False)

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero():
            raise DivisionByZeroPoly("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(F, ()), self
        inv_lc = F.inv(other.lc())
        rem = list(self.coeffs)
        quot = [0] * (len(rem) - len(other.coeffs) + 1)
        d = len(other.coeffs)
        while len(rem) >= d:
            c = F.mul(rem[-1], inv_lc)
            if c:
                quot[len(rem) - d] = c
                off = len(rem) - d
                for i in range(d - 1):
                    rem[off + i] = F.sub(rem[off + i], F.mul(c, other.coeffs[i]))
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quot), Poly(F, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.lc()))

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            # i * c_i means adding c_i to itself i times in characteristic p
            k = i % F.p
            acc = 0
            for _ in range(k):
                acc = F.add(acc, self.coeffs[i])
            out.append(acc)
        return Poly(F, out)

    def evaluate(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    # -------------------------------------------------------- serialization

    def to_json(self) -> list:
        F = self.field
        return [list(F.coeffs(c)) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: Field, obj) -> "Poly":
        return cls(field, [field.from_coeffs(cs) for cs in obj])

    # -------------------------------------------------------------- dunders

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        F = self.field
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            s = F.elem_str(c)
            if i == 0:
                parts.append(s)
            else:
                head = "" if c == 1 else s + "*"
                parts.append(f"{head}u^{i}" if i > 1 else f"{head}u")
        return " + ".join(reversed(parts))


# ------------------------------------------------------- free-function layer


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.is_zero() and r0.lc() != 1:
        c = F.inv(r0.lc())
        r0, s0, t0 = r0.scale(c), s0.scale(c), t0.scale(c)
    return r0, s0, t0


def pow_mod(a: Poly, n: int, mod: Poly) -> Poly:
    result = Poly.one(a.field)
    base = a % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility test over F_q."""
    d = f.degree
    if d is NEG_INF or d == 0:
        return False
    if d == 1:
        return True
    q = f.field.q
    x = Poly.x(f.field)
    if pow_mod(x, q ** d, f) != x % f:
        return False
    for r in prime_factors(d):
        h = pow_mod(x, q ** (d // r), f) - x
        if poly_gcd(f, h).degree != 0:
            return False
    return True


def iter_monic(field: Field, degree: int):
    """All monic polynomials of exact degree, in index order of the low part."""
    q = field.q
    for idx in range(q ** degree):
        coeffs = []
        t = idx
        for _ in range(degree):
            t, c = divmod(t, q)
            coeffs.append(c)
        yield Poly(field, coeffs + [1], normalize=False)


def iter_monic_squarefree(field: Field, degree: int):
    for f in iter_monic(field, degree):
        d = f.derivative()
        if not d.is_zero() and poly_gcd(f, d).degree == 0:
            yield f


def first_irreducible(field: Field, degree: int) -> Poly:
    for f in iter_monic(field, degree):
        if is_irreducible(f):
            return f
    raise Reducible(f"no monic irreducible of degree {degree}")  # pragma: no cover


def _random_poly(field: Field, degree_lt: int, rng: random.Random) -> Poly:
    return Poly(field, [rng.randrange(field.q) for _ in range(degree_lt)])


def _edf(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Equal-degree splitting of a squarefree product of degree-d irreducibles."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    q = F.q
    while True:
        r = _random_poly(F, int(f.degree), rng)
        if r.degree is NEG_INF or r.degree == 0:
            continue
        if q % 2 == 1:
            s = pow_mod(r, (q ** d - 1) // 2, f) - Poly.one(F)
        else:
            # characteristic 2: additive (trace) splitting
            s = Poly.zero(F)
            t = r % f
            for _ in range(F.e * d):
                s = (s + t) % f
                t = (t * t) % f
        u = poly_gcd(f, s)
        if u.degree not in (NEG_INF, 0) and u.degree < f.degree:
            return sorted(_edf(u, d, rng) + _edf(f // u, d, rng),
                          key=lambda h: h.coeffs)


def factor_squarefree(g: Poly, seed: int = 0) -> tuple[Poly, ...]:
    """Irreducible factors of a monic squarefree g, sorted by (degree, coeffs).

    Raises NotMonic / NotSquarefree when the input does not qualify.
    """
    if g.is_zero() or not g.is_monic():
        raise NotMonic(f"modulus {g} is not monic")
    if g.degree < 1:
        raise NotSquarefree("constant modulus has no residue ring")
    dg = g.derivative()
    if dg.is_zero() or poly_gcd(g, dg).degree != 0:
        raise NotSquarefree(f"modulus {g} is not squarefree")
    rng = random.Random(seed)
    q = g.field.q
    x = Poly.x(g.field)
    factors: list[Poly] = []
    f = g
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            factors.append(f.monic())
            break
        h = pow_mod(h, q, f)
        part = poly_gcd(f, h - x)
        if part.degree not in (NEG_INF, 0):
            factors.extend(_edf(part, d, rng))
            f = f // part
            h = h % f
    return tuple(sorted(factors, key=lambda t: (t.degree, t.coeffs)))


# ---------------------------------------------------------------- ResidueRing


class ResidueRing:
    """F_q[u]/(g) for monic squarefree g, with index tables and CRT data.

    ``bezout`` holds one polynomial f_pi per factor with
    ``sum_pi f_pi * (g / pi) = 1`` exactly; the summands are the CRT
    idempotents used for lifting.
    """

    def __init__(self, g: Poly, seed: int = 0):
        self.field = g.field
        self.factors = factor_squarefree(g, seed)
        self.modulus = g
        self.m = int(g.degree)
        self.N = self.field.q ** self.m
        if self.N > RING_LIMIT:
            raise TooLarge(f"residue ring of size {self.N} exceeds {RING_LIMIT}")
        bez = []
        for pi in self.factors:
            co = g // pi
            _, _, t = poly_xgcd(pi, co % pi)
            bez.append(t % pi)  # (g/pi)^{-1} mod pi
        self.bezout = tuple(bez)
        check = Poly.zero(self.field)
        for fpi, pi in zip(self.bezout, self.factors):
            check = check + fpi * (g // pi)
        assert check == Poly.one(self.field), "CRT normalization failed"
        self.D = self.m * self.field.e
        self._cache: dict = {}

    # ------------------------------------------------------------- indexing

    def index(self, f: Poly) -> int:
        f = f % self.modulus
        q = self.field.q
        return sum(c * q ** j for j, c in enumerate(f.coeffs))

    def unrank(self, i: int) -> Poly:
        q = self.field.q
        coeffs = []
        for _ in range(self.m):
            i, c = divmod(i, q)
            coeffs.append(c)
        return Poly(self.field, coeffs)

    def iter_residues(self):
        for i in range(self.N):
            yield self.unrank(i)

    def reduce(self, f: Poly) -> Poly:
        return f % self.modulus

    # ------------------------------------------------------------------ CRT

    def crt_split(self, f: Poly) -> tuple[Poly, ...]:
        return tuple(f % pi for pi in self.factors)

    def crt_lift(self, components) -> Poly:
        g = self.modulus
        acc = Poly.zero(self.field)
        for comp, fpi, pi in zip(components, self.bezout, self.factors):
            acc = acc + comp * fpi * (g // pi)
        return acc % g

    # ----------------------------------------------------- digit machinery

    @property
    def p_pows(self) -> np.ndarray:
        if "p_pows" not in self._cache:
            self._cache["p_pows"] = self.field.p ** np.arange(self.D, dtype=np.int64)
        return self._cache["p_pows"]

    @property
    def digits(self) -> np.ndarray:
        """(N, D) uint8 table: base-p digits of every residue index."""
        if "digits" not in self._cache:
            p = self.field.p
            t = np.arange(self.N, dtype=np.int64)
            digs = np.empty((self.N, self.D), dtype=np.uint8)
            for i in range(self.D):
                digs[:, i] = t % p
                t //= p
            self._cache["digits"] = digs
        return self._cache["digits"]

    def basis_residue(self, t: int) -> Poly:
        """Residue whose index is p**t: u^j * w^l with t = j*e + l."""
        j, l = divmod(t, self.field.e)
        return Poly(self.field, [0] * j + [self.field.p ** l])

    def digits_of_index(self, i: int) -> np.ndarray:
        p = self.field.p
        out = np.empty(self.D, dtype=np.int64)
        for t in range(self.D):
            i, out[t] = divmod(i, p)
        return out

    def linear_map_matrix(self, image_indices) -> np.ndarray:
        """Digit matrix of the F_p-linear map sending basis residue t to the
        residue with the given index; columns are digit vectors."""
        M = np.empty((self.D, self.D), dtype=np.int64)
        for t, idx in enumerate(image_indices):
            M[:, t] = self.digits_of_index(idx)
        return M

    def mul_matrix(self, y: Poly) -> np.ndarray:
        """Matrix of multiplication by y on residue digits."""
        return self.linear_map_matrix(
            [self.index(y * self.basis_residue(t)) for t in range(self.D)])

    def apply_linear(self, M: np.ndarray) -> np.ndarray:
        """Index permutation/map i -> index(L(x_i)) for a digit matrix L."""
        p = self.field.p
        return ((self.digits.astype(np.int64) @ M.T) % p) @ self.p_pows

    def mul_perm(self, y: Poly) -> np.ndarray:
        return self.apply_linear(self.mul_matrix(y))

    def add_perm(self, c: Poly) -> np.ndarray:
        """Index permutation i -> index(x_i + c)."""
        p = self.field.p
        cd = self.digits_of_index(self.index(c))
        return ((self.digits.astype(np.int64) + cd) % p) @ self.p_pows

    @property
    def neg_perm(self) -> np.ndarray:
        if "neg_perm" not in self._cache:
            p = self.field.p
            self._cache["neg_perm"] = ((-self.digits.astype(np.int64)) % p) @ self.p_pows
        return self._cache["neg_perm"]

    # -------------------------------------------------- factor-level tables

    def factor_ring(self, i: int) -> "ResidueField":
        key = ("factor_ring", i)
        if key not in self._cache:
            self._cache[key] = ResidueField(self.factors[i])
        return self._cache[key]

    @property
    def residue_fields(self) -> tuple["ResidueField", ...]:
        return tuple(self.factor_ring(i) for i in range(len(self.factors)))

    def split_indices(self, i: int) -> np.ndarray:
        """Index of (x mod pi_i) in the factor field, for every residue x."""
        key = ("split", i)
        if key not in self._cache:
            pi = self.factors[i]
            rf = self.factor_ring(i)
            d = int(pi.degree)
            Di = d * self.field.e
            M = np.zeros((Di, self.D), dtype=np.int64)
            for t in range(self.D):
                red = self.basis_residue(t) % pi
                idx = rf.index(red)
                col = np.empty(Di, dtype=np.int64)
                for s in range(Di):
                    idx, col[s] = divmod(idx, self.field.p)
                M[:, t] = col
            p = self.field.p
            pp = p ** np.arange(Di, dtype=np.int64)
            self._cache[key] = ((self.digits.astype(np.int64) @ M.T) % p) @ pp
        return self._cache[key]

    @property
    def unit_mask(self) -> np.ndarray:
        if "unit_mask" not in self._cache:
            mask = np.ones(self.N, dtype=bool)
            for i in range(len(self.factors)):
                mask &= self.split_indices(i) != 0
            self._cache["unit_mask"] = mask
        return self._cache["unit_mask"]

    @property
    def unit_indices(self) -> np.ndarray:
        if "unit_indices" not in self._cache:
            self._cache["unit_indices"] = np.nonzero(self.unit_mask)[0].astype(np.int64)
        return self._cache["unit_indices"]

    def lift_matrix(self, i: int) -> np.ndarray:
        """Digit matrix carrying factor-i component digits to ring digits of
        the CRT summand comp * f_pi * (g/pi)."""
        key = ("lift", i)
        if key not in self._cache:
            pi = self.factors[i]
            rf = self.factor_ring(i)
            d = int(pi.degree)
            Di = d * self.field.e
            E = (self.bezout[i] * (self.modulus // pi)) % self.modulus
            M = np.empty((self.D, Di), dtype=np.int64)
            for t in range(Di):
                j, l = divmod(t, self.field.e)
                basis = Poly(self.field, [0] * j + [self.field.p ** l])
                M[:, t] = self.digits_of_index(self.index(basis * E))
            self._cache[key] = M
        return self._cache[key]

    @property
    def inv_indices(self) -> np.ndarray:
        """index(x^{-1}) for units, -1 elsewhere."""
        if "inv_indices" not in self._cache:
            p = self.field.p
            total = np.zeros((self.N, self.D), dtype=np.int64)
            for i in range(len(self.factors)):
                rf = self.factor_ring(i)
                comp = self.split_indices(i)
                inv_comp = np.zeros_like(comp)
                nz = comp != 0
                inv_comp[nz] = rf.inv_index_table[comp[nz]]
                Di = int(self.factors[i].degree) * self.field.e
                digs = np.empty((self.N, Di), dtype=np.int64)
                t = inv_comp.copy()
                for s in range(Di):
                    digs[:, s] = t % p
                    t //= p
                total += digs @ self.lift_matrix(i).T
            out = (total % p) @ self.p_pows
            out[~self.unit_mask] = -1
            self._cache["inv_indices"] = out
        return self._cache["inv_indices"]

    # -------------------------------------------------------------- dunders

    def __eq__(self, other) -> bool:
        return (isinstance(other, ResidueRing)
                and self.field == other.field and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.field, self.modulus))

    def __repr__(self) -> str:
        return f"ResidueRing({self.modulus})"


def factor_squarefree_modulus(g: Poly, seed: int = 0) -> ResidueRing:
    """Construct the residue ring, factoring and validating the modulus."""
    return ResidueRing(g, seed)


# --------------------------------------------------------------- ResidueField


class ResidueField:
    """F_q[u]/(pi) for irreducible pi, with exp/log tables over indices.

    The generator is the first residue, in index order, whose multiplicative
    order is Q - 1.
    """

    def __init__(self, pi: Poly):
        if not is_irreducible(pi):
            raise Reducible(f"modulus {pi} is reducible")
        if not pi.is_monic():
            raise NotMonic(f"modulus {pi} is not monic")
        self.field = pi.field
        self.pi = pi
        self.d = int(pi.degree)
        self.Q = self.field.q ** self.d
        if self.Q > RING_LIMIT:
            raise TooLarge(f"residue field of size {self.Q} exceeds {RING_LIMIT}")
        self._build_tables()

    def index(self, f: Poly) -> int:
        f = f % self.pi
        q = self.field.q
        return sum(c * q ** j for j, c in enumerate(f.coeffs))

    def unrank(self, i: int) -> Poly:
        q = self.field.q
        coeffs = []
        for _ in range(self.d):
            i, c = divmod(i, q)
            coeffs.append(c)
        return Poly(self.field, coeffs)

    def _build_tables(self) -> None:
        Q = self.Q
        factors = prime_factors(Q - 1) if Q > 2 else []
        gen_idx = 1
        for cand in range(1, Q):
            x = self.unrank(cand)
            if Q == 2 or all(pow_mod(x, (Q - 1) // r, self.pi) != Poly.one(self.field)
                             for r in factors):
                gen_idx = cand
                break
        self.generator = gen_idx
        exp = np.empty(Q - 1, dtype=np.int64)
        log = np.full(Q, -1, dtype=np.int64)
        g = self.unrank(gen_idx)
        acc = Poly.one(self.field)
        for k in range(Q - 1):
            i = self.index(acc)
            exp[k] = i
            log[i] = k
            acc = (acc * g) % self.pi
        self.exp_table = exp
        self.log_table = log
        inv = np.full(Q, -1, dtype=np.int64)
        inv[exp] = exp[(-log[exp]) % (Q - 1)]
        self.inv_index_table = inv

    # ------------------------------------------------------ index arithmetic

    def mul_index(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        return int(self.exp_table[(self.log_table[i] + self.log_table[j]) % (self.Q - 1)])

    def inv_index(self, i: int) -> int:
        if i == 0:
            raise ZeroArgument("inverse of zero residue")
        return int(self.inv_index_table[i])

    def pow_index(self, i: int, n: int) -> int:
        if i == 0:
            if n < 0:
                raise ZeroArgument("negative power of zero residue")
            return 1 if n == 0 else 0
        return int(self.exp_table[(int(self.log_table[i]) * n) % (self.Q - 1)])

    def dlog(self, i: int) -> int:
        if i == 0:
            raise ZeroArgument("discrete log of zero residue")
        return int(self.log_table[i])

    def __eq__(self, other) -> bool:
        return (isinstance(other, ResidueField)
                and self.field == other.field and self.pi == other.pi)

    def __hash__(self) -> int:
        return hash((self.field, self.pi, "rf"))

    def __repr__(self) -> str:
        return f"ResidueField({self.pi})"


def residue_field_create(pi: Poly) -> ResidueField:
    return ResidueField(pi)
