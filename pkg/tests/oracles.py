"""Independent reference computations for the tests.

Linear algebra goes through sympy's DomainMatrix, which shares no code with
``quadmod.exactalg``. Ideal closure and quotient checks are deliberately
naive: iterate products until the rank stops growing, then test defining
properties instead of comparing internal representations.
"""

from fractions import Fraction

from sympy import GF as SGF
from sympy import QQ as SQQ
from sympy.polys.matrices import DomainMatrix


def _domain(F):
    return SGF(F.characteristic) if F.characteristic else SQQ


def _conv(F, a):
    K = _domain(F)
    if F.characteristic:
        return K(int(a))
    a = Fraction(a)
    return K(a.numerator, a.denominator)


def matrix(F, rows, ncols):
    rows = [list(r) for r in rows]
    K = _domain(F)
    return DomainMatrix([[_conv(F, a) for a in r] for r in rows], (len(rows), ncols), K)


def rank(F, vectors, n) -> int:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    return matrix(F, vectors, n).rank()


def same_span(F, U, V, n) -> bool:
    r = rank(F, list(U) + list(V), n)
    return r == rank(F, U, n) == rank(F, V, n)


def contains(F, U, v, n) -> bool:
    return rank(F, list(U) + [v], n) == rank(F, U, n)


def nullity(F, columns, source_dim, target_dim) -> int:
    """Dimension of the kernel of the map with these image columns."""
    return source_dim - rank(F, columns, target_dim)


def closure(A, gens) -> list:
    """Naive ideal closure: keep multiplying by basis elements until the rank stops growing."""
    F, n = A.field, A.dim
    current = [tuple(g) for g in gens]
    r = rank(F, current, n)
    while True:
        new = current + [A.mult(v, e) for v in current for e in A.units()]
        r2 = rank(F, new, n)
        if r2 == r:
            return current
        current, r = new, r2


def is_quotient(A, I_basis, q) -> bool:
    """``q`` is a surjective algebra map with kernel exactly span(I)."""
    F = A.field
    cols = [q.project(e) for e in A.units()]
    d = q.algebra.dim
    if rank(F, cols, d) != d:
        return False
    if nullity(F, cols, A.dim, d) != rank(F, I_basis, A.dim):
        return False
    if any(any(q.project(v)) for v in I_basis):
        return False
    return all(q.project(A.mult(a, b)) == q.algebra.mult(q.project(a), q.project(b))
               for a in A.units() for b in A.units())


def homology_dims(F, d_in_cols, d_out_cols, mid_dim, in_dim, out_dim) -> int:
    """``dim ker(d_out) - rank(d_in)`` at the middle term."""
    ker = mid_dim - rank(F, d_out_cols, out_dim) if out_dim else mid_dim
    im = rank(F, d_in_cols, mid_dim) if in_dim else 0
    return ker - im
