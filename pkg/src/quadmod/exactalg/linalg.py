"""Exact dense linear algebra: reduced echelon form, subspaces, linear maps.

Vectors are tuples of field scalars. A :class:`Subspace` always stores its
basis in reduced row echelon form, so two subspaces are equal exactly when
their stored bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .field import Field

__all__ = [
    "rref",
    "Subspace",
    "LinMap",
    "QuotientSpace",
    "kernel",
    "zero_vector",
    "unit_vector",
    "vadd",
    "vsub",
    "vscale",
    "vcomb",
    "is_zero",
]


def zero_vector(F: Field, n: int) -> tuple:
    z = F.zero
    return (z,) * n


def unit_vector(F: Field, n: int, i: int) -> tuple:
    v = [F.zero] * n
    v[i] = F.one
    return tuple(v)


def vadd(F: Field, u, v) -> tuple:
    return tuple(F.norm(a + b) for a, b in zip(u, v))


def vsub(F: Field, u, v) -> tuple:
    return tuple(F.norm(a - b) for a, b in zip(u, v))


def vscale(F: Field, c, v) -> tuple:
    return tuple(F.norm(c * a) for a in v)


def vcomb(F: Field, n: int, terms) -> tuple:
    """Linear combination of ``(coefficient, vector)`` pairs."""
    acc = [F.zero] * n
    for c, v in terms:
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] += c * a
    return tuple(F.norm(a) for a in acc)


def is_zero(v) -> bool:
    return not any(v)


def rref(F: Field, rows: Iterable[Sequence], ncols: int):
    """Reduced row echelon form of ``rows``.

    Returns ``(basis, pivots)``: the nonzero rows of the echelon form (as
    tuples, ordered by pivot column) and their pivot columns.
    """
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a {ncols}-column matrix")
    pivots = []
    top = 0
    for col in range(ncols):
        if top == len(mat):
            break
        sel = None
        for i in range(top, len(mat)):
            if mat[i][col]:
                sel = i
                break
        if sel is None:
            continue
        mat[top], mat[sel] = mat[sel], mat[top]
        prow = mat[top]
        inv = F.inv(prow[col])
        if inv != 1:
            prow = [F.norm(a * inv) for a in prow]
            mat[top] = prow
        for i in range(len(mat)):
            if i != top:
                row = mat[i]
                c = row[col]
                if c:
                    mat[i] = [F.norm(a - c * b) if b else a for a, b in zip(row, prow)]
        pivots.append(col)
        top += 1
    return tuple(tuple(r) for r in mat[:top]), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held in canonical (reduced echelon) form."""

    field: Field
    ambient_dim: int
    basis: tuple
    pivots: tuple = dc_field(compare=False)

    @classmethod
    def span(cls, F: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        basis, pivots = rref(F, vectors, n)
        return cls(F, n, basis, pivots)

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, (), ())

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls.span(F, n, (unit_vector(F, n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v) -> tuple:
        """Residue of ``v`` after eliminating every pivot coordinate."""
        F = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                v = [F.norm(a - c * b) if b else a for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        return is_zero(self.reduce(v))

    __contains__ = contains

    def coords(self, v) -> tuple:
        """Coordinates of ``v`` in the echelon basis; ``v`` must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c) -> tuple:
        return vcomb(self.field, self.ambient_dim, zip(c, self.basis))

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    __le__ = issubset

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F, n = self.field, self.ambient_dim
        if not self.dim or not other.dim:
            return Subspace.zero(F, n)
        # u = sum a_i b_i lies in other iff its residue mod other vanishes
        residues = [other.reduce(b) for b in self.basis]
        res_map = LinMap.from_columns(F, n, residues, source_dim=self.dim)
        ker = res_map.kernel()
        return Subspace.span(F, n, (self.from_coords(k) for k in ker.basis))

    __and__ = intersect

    def inclusion(self) -> "LinMap":
        """The map F^dim -> F^n sending coordinates to vectors."""
        return LinMap.from_columns(self.field, self.ambient_dim, self.basis, source_dim=self.dim)

    def _check(self, other):
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValueError("subspaces live in different ambient spaces")

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class QuotientSpace:
    """The quotient ``V/W`` of nested subspaces ``W <= V <= F^n``.

    The canonical complement of W in V is the echelon form of V's basis
    reduced modulo W; quotient coordinates are read off at its pivots.
    """

    def __init__(self, V: Subspace, W: Subspace):
        if not W <= V:
            raise ValueError("quotient requires W to be contained in V")
        self.V, self.W = V, W
        F, n = V.field, V.ambient_dim
        reduced = [W.reduce(b) for b in V.basis]
        self.complement = Subspace.span(F, n, reduced)
        self.field = F

    @property
    def dim(self) -> int:
        return self.complement.dim

    def project(self, v) -> tuple:
        if not self.V.contains(v):
            raise ValueError("vector does not lie in V")
        r = self.W.reduce(v)
        return tuple(r[p] for p in self.complement.pivots)

    def lift(self, c) -> tuple:
        return self.complement.from_coords(c)

    def projection_matrix(self) -> "LinMap":
        """Projection expressed on the coordinates of ``V``'s basis."""
        cols = [self.project(b) for b in self.V.basis]
        return LinMap.from_columns(self.field, self.dim, cols, source_dim=self.V.dim)


@dataclass(frozen=True)
class LinMap:
    """A linear map F^source_dim -> F^target_dim, stored as target x source rows.

    Column i of the matrix is the image of the i-th source basis vector.
    """

    field: Field
    source_dim: int
    target_dim: int
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.target_dim or any(len(r) != self.source_dim for r in self.rows):
            raise ValueError(
                f"matrix shape does not match declared dimensions {self.target_dim}x{self.source_dim}"
            )

    @classmethod
    def from_rows(cls, F: Field, rows, source_dim: int | None = None) -> "LinMap":
        rows = tuple(tuple(F.norm(a) for a in r) for r in rows)
        if source_dim is None:
            if not rows:
                raise ValueError("source_dim required for a map into the zero space")
            source_dim = len(rows[0])
        return cls(F, source_dim, len(rows), rows)

    @classmethod
    def from_columns(cls, F: Field, target_dim: int, columns, source_dim: int | None = None) -> "LinMap":
        columns = list(columns)
        if source_dim is None:
            source_dim = len(columns)
        if len(columns) != source_dim:
            raise ValueError("wrong number of columns")
        rows = tuple(tuple(F.norm(col[k]) for col in columns) for k in range(target_dim))
        return cls(F, source_dim, target_dim, rows)

    @classmethod
    def from_function(cls, F: Field, source_dim: int, target_dim: int, f) -> "LinMap":
        return cls.from_columns(F, target_dim, [f(unit_vector(F, source_dim, i)) for i in range(source_dim)], source_dim)

    @classmethod
    def identity(cls, F: Field, n: int) -> "LinMap":
        return cls.from_columns(F, n, [unit_vector(F, n, i) for i in range(n)], n)

    @classmethod
    def zero(cls, F: Field, source_dim: int, target_dim: int) -> "LinMap":
        z = F.zero
        return cls(F, source_dim, target_dim, tuple((z,) * source_dim for _ in range(target_dim)))

    def column(self, i: int) -> tuple:
        return tuple(r[i] for r in self.rows)

    def columns(self):
        return [self.column(i) for i in range(self.source_dim)]

    def __call__(self, v) -> tuple:
        if len(v) != self.source_dim:
            raise ValueError(f"vector of length {len(v)} applied to a map from dim {self.source_dim}")
        F = self.field
        nz = [(j, a) for j, a in enumerate(v) if a]
        return tuple(F.norm(sum(r[j] * a for j, a in nz)) if nz else F.zero for r in self.rows)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        """Composition ``self o other``."""
        if other.target_dim != self.source_dim:
            raise ValueError("composition of incompatible maps")
        return LinMap.from_columns(self.field, self.target_dim, [self(c) for c in other.columns()], other.source_dim)

    def __add__(self, other: "LinMap") -> "LinMap":
        self._same_shape(other)
        F = self.field
        return LinMap(F, self.source_dim, self.target_dim,
                      tuple(tuple(F.norm(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + other.scale(-1)

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def scale(self, c) -> "LinMap":
        F = self.field
        return LinMap(F, self.source_dim, self.target_dim, tuple(tuple(F.norm(c * a) for a in r) for r in self.rows))

    def _same_shape(self, other):
        if (self.source_dim, self.target_dim) != (other.source_dim, other.target_dim):
            raise ValueError("maps of different shapes")

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def kernel(self) -> Subspace:
        return kernel(self)

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.target_dim, self.columns())

    def image_of(self, S: Subspace) -> Subspace:
        return Subspace.span(self.field, self.target_dim, (self(b) for b in S.basis))

    def preimage(self, S: Subspace) -> Subspace:
        """``{v : self(v) in S}``."""
        residues = [S.reduce(c) for c in self.columns()]
        return LinMap.from_columns(self.field, self.target_dim, residues, self.source_dim).kernel()

    @property
    def rank(self) -> int:
        return self.image().dim

    def solve(self, b):
        """Some ``x`` with ``self(x) == b`` (canonical choice), or None."""
        F = self.field
        n, m = self.source_dim, self.target_dim
        aug = [list(self.rows[k]) + [b[k]] for k in range(m)]
        basis, pivots = rref(F, aug, n + 1)
        if pivots and pivots[-1] == n:
            return None
        x = [F.zero] * n
        for row, p in zip(basis, pivots):
            x[p] = row[n]
        return tuple(x)

    def __repr__(self):
        return f"LinMap({self.source_dim}->{self.target_dim})"


def kernel(f: LinMap) -> Subspace:
    """Canonical basis of ``{v : f(v) = 0}``."""
    F, n = f.field, f.source_dim
    basis, pivots = rref(F, f.rows, n)
    free = [j for j in range(n) if j not in set(pivots)]
    vecs = []
    for j in free:
        v = [F.zero] * n
        v[j] = F.one
        for row, p in zip(basis, pivots):
            v[p] = F.norm(-row[j])
        vecs.append(v)
    return Subspace.span(F, n, vecs)
