"""Truncated polynomial algebras k[x_1..x_m]/(monomials of degree >= d)."""

from __future__ import annotations

from itertools import product

from .algebra import FinAlgebra, Ideal, ideal_closure
from .field import Field

_VARS = "xyzuvw"


def _label(exps) -> str:
    parts = []
    for v, e in zip(_VARS, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def truncated_polynomial(F: Field, nvars: int, degree: int, unital: bool = True) -> FinAlgebra:
    """Monomial basis of total degree below ``degree`` (degree 0 only if ``unital``).

    ``truncated_polynomial(F, 1, 4)`` is k[x]/(x^4) with basis 1, x, x^2, x^3.
    """
    if nvars > len(_VARS):
        raise ValueError("too many variables")
    lo = 0 if unital else 1
    monos = sorted(
        (e for e in product(range(degree), repeat=nvars) if lo <= sum(e) < degree),
        key=lambda e: (sum(e), tuple(-x for x in e)),
    )
    index = {e: i for i, e in enumerate(monos)}
    n = len(monos)
    mul = []
    for a in monos:
        row = []
        for b in monos:
            c = tuple(x + y for x, y in zip(a, b))
            row.append(((index[c], 1),) if c in index else ())
        mul.append(row)
    name = f"k[{','.join(_VARS[:nvars])}]/deg{degree}" + ("" if unital else "+")
    return FinAlgebra(F, n, mul, [_label(e) for e in monos], name)


def basis_vector(A: FinAlgebra, label: str) -> tuple:
    return A.unit(A.labels.index(label))


def monomial_ideal(A: FinAlgebra, labels) -> Ideal:
    return ideal_closure(A, [basis_vector(A, l) for l in labels])
