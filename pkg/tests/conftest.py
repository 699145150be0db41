"""Shared oracles and helpers for the test suite.

The residue-at-infinity oracle here inverts the modulus as a power series in
1/u (the formal-expansion route), independently of the library's closed-form
coefficient extraction.
"""

from __future__ import annotations

from hooleyff.base_field import Field
from hooleyff.polyring import Poly


def res_inf_series(f: Poly, g: Poly) -> int:
    """Coefficient of u^{-1} of f/g via series inversion at infinity.

    Write g = lc * u^m * (1 + a_1/u + ... + a_m/u^m) and invert the series:
    (1 + sum a_j v^j)^{-1} = sum b_i v^i with b_0 = 1 and
    b_i = -sum_{j=1..i} a_j b_{i-j}.  Then the u^{-1} coefficient of f/g is
    lc^{-1} * sum_k f_k b_{k-m+1}.
    """
    F = f.field
    m = int(g.degree)
    lc = g.lc()
    a = [F.div(g[m - j], lc) for j in range(m + 1)]  # a[0] = 1
    deg_f = len(f.coeffs) - 1
    terms = max(0, deg_f - m + 1) + 1
    b = [1] + [0] * terms
    for i in range(1, terms + 1):
        acc = 0
        for j in range(1, min(i, m) + 1):
            acc = F.add(acc, F.mul(a[j], b[i - j]))
        b[i] = F.neg(acc)
    res = 0
    for k, fk in enumerate(f.coeffs):
        i = k - m + 1
        if i >= 0:
            res = F.add(res, F.mul(fk, b[i]))
    return F.div(res, lc)


def random_poly(field: Field, deg: int, rng, monic: bool = False) -> Poly:
    """Uniform polynomial of exact degree ``deg`` (negative gives zero)."""
    if deg < 0:
        return Poly.zero(field)
    coeffs = [rng.randrange(field.q) for _ in range(deg)]
    coeffs.append(1 if monic else rng.randrange(1, field.q))
    return Poly(field, coeffs)
