"""Bilinear maps stored on basis pairs."""

from __future__ import annotations

from typing import Callable

from .field import Field
from .linalg import LinMap, unit_vector


class Bilinear:
    """``f: U x V -> W`` with ``table[i][j] = f(e_i, e_j)``.

    Liftings, h-maps and quadratic maps are all of this shape; validators
    expand axioms by bilinearity, so checking basis pairs is enough.
    """

    def __init__(self, field: Field, left_dim: int, right_dim: int, target_dim: int, table):
        self.field = field
        self.left_dim, self.right_dim, self.target_dim = left_dim, right_dim, target_dim
        if len(table) != left_dim or any(len(row) != right_dim for row in table):
            raise ValueError("bilinear table has the wrong shape")
        self.table = tuple(tuple(tuple(field.norm(a) for a in v) for v in row) for row in table)
        if any(len(v) != target_dim for row in self.table for v in row):
            raise ValueError("bilinear table entry has the wrong length")

    @classmethod
    def from_function(cls, F: Field, left_dim: int, right_dim: int, target_dim: int,
                      f: Callable) -> "Bilinear":
        return cls(F, left_dim, right_dim, target_dim,
                   [[f(unit_vector(F, left_dim, i), unit_vector(F, right_dim, j))
                     for j in range(right_dim)] for i in range(left_dim)])

    @classmethod
    def zero(cls, F: Field, left_dim: int, right_dim: int, target_dim: int) -> "Bilinear":
        z = (F.zero,) * target_dim
        return cls(F, left_dim, right_dim, target_dim, [[z] * right_dim for _ in range(left_dim)])

    def __call__(self, u, v) -> tuple:
        F = self.field
        acc = [F.zero] * self.target_dim
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.table[i]
            for j, b in nv:
                ab = a * b
                for k, x in enumerate(row[j]):
                    if x:
                        acc[k] += ab * x
        return tuple(F.norm(x) for x in acc)

    def entry(self, i: int, j: int) -> tuple:
        return self.table[i][j]

    def replace(self, i: int, j: int, value) -> "Bilinear":
        """Copy with one table entry changed (used to build corrupted fixtures)."""
        rows = [list(r) for r in self.table]
        rows[i][j] = tuple(value)
        return Bilinear(self.field, self.left_dim, self.right_dim, self.target_dim, rows)

    def scale(self, c) -> "Bilinear":
        F = self.field
        return Bilinear(F, self.left_dim, self.right_dim, self.target_dim,
                        [[tuple(F.norm(c * a) for a in v) for v in row] for row in self.table])

    def __neg__(self) -> "Bilinear":
        return self.scale(-1)

    def compose(self, f: LinMap) -> "Bilinear":
        """``f o self``."""
        return Bilinear(self.field, self.left_dim, self.right_dim, f.target_dim,
                        [[f(v) for v in row] for row in self.table])

    def precompose(self, a: LinMap, b: LinMap) -> "Bilinear":
        """``(u, v) -> self(a u, b v)``."""
        return Bilinear.from_function(self.field, a.source_dim, b.source_dim, self.target_dim,
                                      lambda u, v: self(a(u), b(v)))

    def is_zero(self) -> bool:
        return not any(any(v) for row in self.table for v in row)

    def __eq__(self, other):
        return isinstance(other, Bilinear) and other.table == self.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Bilinear({self.left_dim}x{self.right_dim} -> {self.target_dim})"
