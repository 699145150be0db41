"""Built-in family catalog: named (F, a, b) triples and other presets.

Each triple is constructed over a given ring's coefficient field; they are
chosen so the per-factor hypotheses hold over every squarefree modulus (for
the stated minimum characteristic), so the whole catalog can be swept against
every primitive character of every modulus in range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .base_field import Field
from .errors import Validation
from .polyring import Poly
from .tracefn import tpoly


@dataclass(frozen=True)
class CatalogTriple:
    name: str
    description: str
    min_p: int
    make: Callable[[Field], tuple]

    def build(self, field: Field):
        """(F, a, b) as T-polynomials over the field."""
        return self.make(field)


def _c(field: Field, k: int) -> Poly:
    return Poly.constant(field, k % field.p)


def _triple_hooley(field: Field):
    one = Poly.one(field)
    return (tpoly([one]), tpoly([one]), tpoly([Poly.zero(field), one]))


def _triple_burgess_linear(field: Field):
    one = Poly.one(field)
    return (tpoly([Poly.zero(field), one]), tpoly([]), tpoly([one]))


def _triple_burgess_quadratic(field: Field):
    zero, one = Poly.zero(field), Poly.one(field)
    return (tpoly([one, zero, one]), tpoly([]), tpoly([one]))


def _triple_twisted_inverse(field: Field):
    zero, one = Poly.zero(field), Poly.one(field)
    return (tpoly([zero, one]), tpoly([one]), tpoly([zero, one]))


def _triple_split_inverses(field: Field):
    # a/b = 1/T + 1/(T+1): a = 2T + 1, b = T^2 + T
    zero, one = Poly.zero(field), Poly.one(field)
    return (tpoly([one]), tpoly([one, _c(field, 2)]), tpoly([zero, one, one]))


def _triple_symmetric_inverse(field: Field):
    # a/b = (T^2 + 1)/T, the T + 1/T phase
    zero, one = Poly.zero(field), Poly.one(field)
    return (tpoly([one]), tpoly([one, zero, one]), tpoly([zero, one]))


TRIPLES: tuple[CatalogTriple, ...] = (
    CatalogTriple(
        "hooley", "chi(1) * e(inv(h)/g): the shifted-inverse phase", 2,
        _triple_hooley),
    CatalogTriple(
        "burgess-linear", "chi(h): a bare character sum", 2,
        _triple_burgess_linear),
    CatalogTriple(
        "burgess-quadratic", "chi(h^2 + 1): character of a quadratic", 2,
        _triple_burgess_quadratic),
    CatalogTriple(
        "twisted-inverse", "chi(h) * e(inv(h)/g): character times inverse phase", 2,
        _triple_twisted_inverse),
    CatalogTriple(
        "split-inverses", "e((inv(h) + inv(h+1))/g): two shifted inverses", 3,
        _triple_split_inverses),
    CatalogTriple(
        "symmetric-inverse", "e((h + inv(h))/g): the rank-2 symmetric phase", 3,
        _triple_symmetric_inverse),
)


def get_triple(name: str) -> CatalogTriple:
    for tr in TRIPLES:
        if tr.name == name:
            return tr
    raise Validation(f"no catalog triple named {name!r}; "
                     f"known: {', '.join(t.name for t in TRIPLES)}")


def triples_for_field(field: Field):
    return [tr for tr in TRIPLES if field.p >= tr.min_p]


OTHER_FAMILIES: tuple[tuple[str, str], ...] = (
    ("kloosterman", "normalized hyper-Kloosterman Kl_k(a; b), k >= 2"),
    ("value-set", "indicator of the value set of a T-polynomial mod pi"),
    ("custom", "trace table imported from CSV (+ JSON sidecar)"),
)


def catalog_text() -> str:
    lines = ["mixed-character triples (F, a, b):"]
    for tr in TRIPLES:
        lines.append(f"  {tr.name:20s} {tr.description}  [p >= {tr.min_p}]")
    lines.append("other families:")
    for name, desc in OTHER_FAMILIES:
        lines.append(f"  {name:20s} {desc}")
    return "\n".join(lines) + "\n"
