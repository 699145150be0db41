"""Arithmetic in a finite coefficient field F_q, q = p^e.

Elements are stored as canonical integers in ``range(q)``: the element with
power-basis coordinates ``(c_0, ..., c_{e-1})`` (so the element is
``sum c_i * w^i`` for a fixed root ``w`` of the defining modulus) is encoded as
``sum c_i * p^i``.  With this encoding ``0`` and ``1`` are the additive and
multiplicative identities, addition is digit-wise mod p, and enumerating
``range(q)`` walks the elements in base-p positional order.

Multiplication, inversion and discrete logarithms run off exp/log tables
against a fixed generator of the unit group; the tables are built once at
construction.  Fields with q above ``TABLE_LIMIT`` are rejected outright, so
the tables are always present.

The absolute trace ``Tr(x) = x + x^p + ... + x^(p^(e-1))`` lands in F_p and is
precomputed per basis element, so ``trace`` is a table lookup.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import (
    DegreeMismatch,
    NotPrime,
    ReducibleModulus,
    TableUnavailable,
    TooLarge,
    ZeroArgument,
)

#: largest field order for which construction (and hence dlog tables) is allowed
TABLE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --- helpers on F_p[x] polynomials as coefficient lists (constant first) ---
# Only used while constructing a Field; everything after that goes through
# the element tables.


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by monic mod
    d = len(mod) - 1
    while len(prod) > d:
        lead = prod.pop()
        if lead:
            for k in range(d):
                prod[len(prod) - d + k] = (prod[len(prod) - d + k] - lead * mod[k]) % p
    return _fp_trim(prod)

def _fp_powmod(a: list[int], n: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = list(a)
    while n:
        if n & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b):
            lead = (r[-1] * inv) % p
            if lead:
                off = len(r) - len(b)
                for k in range(len(b)):
                    r[off + k] = (r[off + k] - lead * b[k]) % p
            r.pop()
            _fp_trim(r)
            if not r:
                break
        a, b = b, r
    return a


def _fp_irreducible(mod: list[int], p: int) -> bool:
    """Rabin test for a monic polynomial over F_p."""
    e = len(mod) - 1
    if e < 1:
        return False
    x = [0, 1]
    xq = _fp_powmod(x, p ** e, mod, p)
    sub = _fp_trim([(xq[i] if i < len(xq) else 0) - (x[i] if i < len(x) else 0)
                    for i in range(max(len(xq), len(x)))])
    if _fp_trim([c % p for c in sub]):
        return False
    for r in prime_factors(e):
        xr = _fp_powmod(x, p ** (e // r), mod, p)
        diff = [(xr[i] if i < len(xr) else 0) - (x[i] if i < len(x) else 0) for i in range(max(len(xr), len(x)))]
        g = _fp_gcd(mod, [c % p for c in diff], p)
        if len(g) - 1 > 0:
            return False
    return True


class Field:
    """The finite field F_q with q = p^e, with table-backed arithmetic.

    Parameters
    ----------
    p : characteristic, a prime.
    e : extension degree over the prime field.
    modulus : optional coefficient list (constant first, length e+1) of a monic
        irreducible defining polynomial over F_p.  When omitted, the first
        irreducible in positional coefficient order is used, so the choice is
        deterministic.
    """

    def __init__(self, p: int, e: int = 1, modulus: list[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if e < 1:
            raise DegreeMismatch(f"extension degree {e} must be >= 1")
        q = p ** e
        if q > TABLE_LIMIT:
            raise TooLarge(f"field order {q} exceeds table limit {TABLE_LIMIT}")
        self.p = p
        self.e = e
        self.q = q
        if modulus is None:
            modulus = self._find_modulus(p, e)
        else:
            modulus = [c % p for c in modulus]
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise DegreeMismatch(
                    f"modulus {modulus} is not monic of degree {e}")
            if e > 1 and not _fp_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self._build_tables()

    @staticmethod
    def _find_modulus(p: int, e: int) -> list[int]:
        if e == 1:
            return [0, 1]
        for low in itertools.product(range(p), repeat=e):
            cand = list(low) + [1]
            if _fp_irreducible(cand, p):
                return cand
        raise ReducibleModulus(f"no irreducible of degree {e} over F_{p}")  # pragma: no cover

    # ------------------------------------------------------------ encoding

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Power-basis coordinates (c_0, ..., c_{e-1}) of an element."""
        out = []
        for _ in range(self.e):
            x, c = divmod(x, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.e:
            raise DegreeMismatch(f"{len(cs)} coordinates for extension degree {self.e}")
        return sum((c % self.p) * self.p ** i for i, c in enumerate(cs))

    # ---------------------------------------------------------- arithmetic

    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        if self._add_table is not None:
            return int(self._add_table[x, y])
        return self.from_coeffs(a + b for a, b in zip(self.coeffs(x), self.coeffs(y)))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def neg(self, x: int) -> int:
        if self.e == 1:
            return (-x) % self.p
        if self._add_table is not None:
            return int(self._neg_table[x])
        return self.from_coeffs(-a for a in self.coeffs(x))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp_table[(self._log[x] + self._log[y]) % (self.q - 1)])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroArgument("inverse of zero in the coefficient field")
        return int(self.exp_table[(-self._log[x]) % (self.q - 1)])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            if n < 0:
                raise ZeroArgument("negative power of zero")
            return 1 if n == 0 else 0
        return int(self.exp_table[(self._log[x] * n) % (self.q - 1)])

    def trace(self, x: int) -> int:
        """Absolute trace to the prime field, as an integer in [0, p)."""
        return int(self._trace_table[x])

    def dlog(self, x: int) -> int:
        """Discrete log base the fixed generator; errors on zero."""
        if x == 0:
            raise ZeroArgument("discrete log of zero")
        if self.log_table is None:  # pragma: no cover - tables always built
            raise TableUnavailable(f"no dlog table for field of order {self.q}")
        return int(self.log_table[x])

    # --------------------------------------------------------------- tables

    def _raw_mul(self, x: int, y: int) -> int:
        """Multiplication straight from the defining modulus (setup only)."""
        a, b = self.coeffs(x), self.coeffs(y)
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for k in range(2 * e - 2, e - 1, -1):
            lead = prod[k]
            if lead:
                prod[k] = 0
                for t in range(e):
                    prod[k - e + t] = (prod[k - e + t] - lead * self.modulus[t]) % p
        return sum(prod[i] * p ** i for i in range(e))

    def _order_is_full(self, x: int, factors: list[int]) -> bool:
        n = self.q - 1
        for r in factors:
            y, k = 1, n // r
            b = x
            while k:
                if k & 1:
                    y = self._raw_mul(y, b)
                b = self._raw_mul(b, b)
                k >>= 1
            if y == 1:
                return False
        return True

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        self._add_table = None
        if e > 1 and q <= 4096:
            idx = np.arange(q)
            digs = np.empty((q, e), dtype=np.int64)
            t = idx.copy()
            for i in range(e):
                digs[:, i] = t % p
                t //= p
            pp = p ** np.arange(e)
            self._neg_table = ((-digs) % p) @ pp
            self._add_table = ((digs[:, None, :] + digs[None, :, :]) % p) @ pp
        # generator: first element of full multiplicative order, in
        # positional coefficient order
        factors = prime_factors(q - 1) if q > 2 else []
        gen = 1
        for cand in range(1, q):
            if q == 2 or self._order_is_full(cand, factors):
                gen = cand
                break
        self.generator = gen
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        acc = 1
        for k in range(q - 1):
            exp[k] = acc
            log[acc] = k
            acc = self._raw_mul(acc, gen)
        self.exp_table = exp
        self.log_table = log
        self._log = log
        # trace of each basis element w^i, extended to all elements by linearity
        if e == 1:
            self._trace_table = np.arange(p, dtype=np.int64)
        else:
            tr_basis = []
            for i in range(e):
                acc_t, y = 0, p ** i
                for _ in range(e):
                    acc_t = self.add(acc_t, y)
                    y = self._frobenius_raw(y)
                tr_basis.append(acc_t)
            digs = np.empty((q, e), dtype=np.int64)
            t = np.arange(q)
            for i in range(e):
                digs[:, i] = t % p
                t //= p
            self._trace_table = (digs @ np.array(tr_basis, dtype=np.int64)) % p

    def _frobenius_raw(self, x: int) -> int:
        y, b, k = 1, x, self.p
        while k:
            if k & 1:
                y = self._raw_mul(y, b)
            b = self._raw_mul(b, b)
            k >>= 1
        return y

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    # -------------------------------------------------------- serialization

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "Field":
        return cls(int(obj["p"]), int(obj["e"]), [int(c) for c in obj["modulus"]])

    # -------------------------------------------------------------- dunders

    def __eq__(self, other) -> bool:
        return (isinstance(other, Field)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"Field(p={self.p}, e={self.e})"

    def elem_str(self, x: int) -> str:
        if self.e == 1:
            return str(x)
        return "(" + ",".join(str(c) for c in self.coeffs(x)) + ")"


@functools.lru_cache(maxsize=None)
def field_create(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> Field:
    """Cached constructor; fields compare equal by (p, e, modulus)."""
    return Field(p, e, None if modulus is None else list(modulus))
