"""Truncated simplicial commutative algebras and their Moore complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .exactalg import (
    AlgebraError,
    FinAlgebra,
    Ideal,
    LinMap,
    QuotientSpace,
    Subspace,
    ideal_closure,
    validate_algebra,
)
from .exactalg.algebra import AlgMorphism, validate_morphism
from .report import ValidationReport

MAX_TRUNCATION = 5


class TruncationError(AlgebraError):
    """An operation needs a simplicial level beyond the stored truncation."""


@dataclass(frozen=True, eq=False)
class TruncSimplicialAlgebra:
    """Levels ``E_0..E_N`` with faces ``d_i^n`` and degeneracies ``s_i^n``.

    ``faces[(n, i)]`` maps E_n -> E_{n-1} (0 <= i <= n); ``degens[(n, i)]``
    maps E_n -> E_{n+1} (0 <= i <= n < N).
    """

    levels: tuple
    faces: Mapping
    degens: Mapping
    name: str = ""

    def __post_init__(self):
        N = len(self.levels) - 1
        if not 0 <= N <= MAX_TRUNCATION:
            raise ValueError(f"truncation {N} outside the supported range 0..{MAX_TRUNCATION}")
        for n in range(1, N + 1):
            for i in range(n + 1):
                f = self.faces[(n, i)]
                if (f.source_dim, f.target_dim) != (self.levels[n].dim, self.levels[n - 1].dim):
                    raise ValueError(f"face d_{i}^{n} has the wrong shape")
        for n in range(N):
            for i in range(n + 1):
                s = self.degens[(n, i)]
                if (s.source_dim, s.target_dim) != (self.levels[n].dim, self.levels[n + 1].dim):
                    raise ValueError(f"degeneracy s_{i}^{n} has the wrong shape")

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    @property
    def field(self):
        return self.levels[0].field

    def d(self, n: int, i: int) -> LinMap:
        return self.faces[(n, i)]

    def s(self, n: int, i: int) -> LinMap:
        if n >= self.N:
            raise TruncationError(f"degeneracy out of level {n} needs level {n + 1}")
        return self.degens[(n, i)]

    def require(self, n: int) -> None:
        if n > self.N:
            raise TruncationError(f"level {n} is beyond truncation {self.N}")

    def apply_degeneracies(self, level: int, indices: Iterable[int], v) -> tuple:
        """``s_{i_r} ... s_{i_1} v`` for ascending ``indices`` (i_1 applied first)."""
        for i in indices:
            v = self.s(level, i)(v)
            level += 1
        return v

    @cached_property
    def moore(self) -> "MooreComplex":
        return moore(self)


def validate_simplicial(E: TruncSimplicialAlgebra) -> ValidationReport:
    """Check every simplicial identity instance, plus algebra and morphism laws."""
    rep = ValidationReport(f"simplicial algebra{' ' + E.name if E.name else ''}")
    N = E.N
    for n, A in enumerate(E.levels):
        rep.merge(validate_algebra(A), f"E_{n} ")
    for (n, i), f in sorted(E.faces.items()):
        rep.merge(validate_morphism(AlgMorphism(E.levels[n], E.levels[n - 1], f)), f"d_{i}^{n} ")
    for (n, i), f in sorted(E.degens.items()):
        rep.merge(validate_morphism(AlgMorphism(E.levels[n], E.levels[n + 1], f)), f"s_{i}^{n} ")

    # d_i d_j = d_{j-1} d_i for i < j, on E_n
    rep.ran("dd")
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                if E.d(n - 1, i) @ E.d(n, j) != E.d(n - 1, j - 1) @ E.d(n, i):
                    rep.fail("dd", (n, i, j), "d_i d_j != d_{j-1} d_i")
    # s_i s_j = s_{j+1} s_i for i <= j, on E_n
    rep.ran("ss")
    for n in range(0, N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if E.s(n + 1, i) @ E.s(n, j) != E.s(n + 1, j + 1) @ E.s(n, i):
                    rep.fail("ss", (n, i, j), "s_i s_j != s_{j+1} s_i")
    # d_i s_j on E_n
    rep.ran("ds")
    for n in range(0, N):
        ident = LinMap.identity(E.field, E.levels[n].dim)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = E.d(n + 1, i) @ E.s(n, j)
                if i < j:
                    rhs, name = E.s(n - 1, j - 1) @ E.d(n, i), "d_i s_j = s_{j-1} d_i"
                elif i in (j, j + 1):
                    rhs, name = ident, "d_i s_j = id"
                else:
                    rhs, name = E.s(n - 1, j) @ E.d(n, i - 1), "d_i s_j = s_j d_{i-1}"
                if lhs != rhs:
                    rep.fail("ds", (n, i, j), name)
    return rep


@dataclass(frozen=True, eq=False)
class MooreComplex:
    """``NE_n`` as subspaces of ``E_n`` and boundaries on echelon coordinates."""

    source: TruncSimplicialAlgebra
    spaces: tuple
    boundaries: tuple  # boundaries[n] : NE_n -> NE_{n-1}; boundaries[0] is None

    def dims(self) -> list[int]:
        return [S.dim for S in self.spaces]

    def image(self, n: int) -> Subspace:
        """``d_n(NE_n)`` as a subspace of ``E_{n-1}``."""
        return self.source.d(n, n).image_of(self.spaces[n])

    def cycles(self, n: int) -> Subspace:
        if n == 0:
            return self.spaces[0]
        return self.spaces[n] & self.source.d(n, n).kernel()

    @property
    def length(self) -> int | None:
        """Least k with NE_n = 0 for all stored n > k."""
        k = 0
        for n, S in enumerate(self.spaces):
            if S.dim:
                k = n
        return k


def kernel_K(E: TruncSimplicialAlgebra, n: int, I: Iterable[int]) -> Subspace:
    """``K_I``: the intersection of ``ker d_i^n`` over ``i`` in ``I``."""
    E.require(n)
    I = sorted(set(I))
    if not I:
        raise ValueError("K_I needs a nonempty index set")
    if I[0] < 0 or I[-1] > n or n == 0:
        raise ValueError(f"face indices {I} invalid at level {n}")
    S = E.d(n, I[0]).kernel()
    for i in I[1:]:
        S = S & E.d(n, i).kernel()
    return S


def moore(E: TruncSimplicialAlgebra) -> MooreComplex:
    spaces = [E.levels[0].full()]
    for n in range(1, E.N + 1):
        spaces.append(kernel_K(E, n, range(n)))
    boundaries = [None]
    for n in range(1, E.N + 1):
        dn = E.d(n, n)
        tgt = spaces[n - 1]
        cols = []
        for b in spaces[n].basis:
            img = dn(b)
            if not tgt.contains(img):
                raise AlgebraError(f"d_{n}^{n} does not map NE_{n} into NE_{n - 1}")
            cols.append(tgt.coords(img))
        boundaries.append(LinMap.from_columns(E.field, tgt.dim, cols, spaces[n].dim))
    for n in range(2, E.N + 1):
        if not (boundaries[n - 1] @ boundaries[n]).is_zero():
            raise AlgebraError(f"Moore boundary composite at level {n} is nonzero")
    return MooreComplex(E, tuple(spaces), tuple(boundaries))


def degenerate_ideal(E: TruncSimplicialAlgebra, n: int) -> Ideal:
    """``D_n``: the ideal of ``E_n`` generated by all degenerate elements."""
    if not 1 <= n <= E.N:
        raise ValueError(f"D_n needs 1 <= n <= {E.N}")
    gens = [c for i in range(n) for c in E.s(n - 1, i).columns()]
    return ideal_closure(E.levels[n], gens)


@dataclass(frozen=True)
class HomotopyEntry:
    degree: int
    dim: int | None
    quotient: QuotientSpace | None = field(default=None, compare=False, repr=False)
    note: str = ""

    @property
    def defined(self) -> bool:
        return self.dim is not None


@dataclass(frozen=True)
class HomotopyTable:
    """Homotopy modules by degree.

    ``convention`` is ``"moore"`` (H_n of the Moore complex) or
    ``"structure"`` (classifying-space indexing used by crossed structures:
    pi_1 = coker of the bottom map, pi_0 = 0).
    """

    convention: str
    entries: tuple

    def dims(self) -> dict:
        return {e.degree: e.dim for e in self.entries}

    def __getitem__(self, degree: int) -> HomotopyEntry:
        for e in self.entries:
            if e.degree == degree:
                return e
        return HomotopyEntry(degree, 0, None, "zero by definition")

    def as_structure(self) -> "HomotopyTable":
        """Shift a Moore table into structure indexing: H_n becomes pi_{n+1}."""
        if self.convention == "structure":
            return self
        shifted = [HomotopyEntry(0, 0, None, "zero by definition")]
        shifted += [HomotopyEntry(e.degree + 1, e.dim, e.quotient, e.note) for e in self.entries]
        return HomotopyTable("structure", tuple(shifted))

    def to_dict(self) -> dict:
        return {
            "convention": self.convention,
            "dims": {str(e.degree): e.dim for e in self.entries},
            "notes": {str(e.degree): e.note for e in self.entries if e.note},
        }


def homotopy_simplicial(E: TruncSimplicialAlgebra) -> HomotopyTable:
    """``pi_n = ker d_n / d_{n+1}(NE_{n+1})`` for n < N; pi_N is undefined."""
    mc = E.moore
    entries = []
    for n in range(E.N + 1):
        if n == E.N:
            entries.append(HomotopyEntry(n, None, None, "not defined at this truncation"))
            continue
        Q = QuotientSpace(mc.cycles(n), mc.image(n + 1))
        entries.append(HomotopyEntry(n, Q.dim, Q))
    return HomotopyTable("moore", tuple(entries))


def constant_simplicial(A: FinAlgebra, N: int = 4, name: str = "") -> TruncSimplicialAlgebra:
    """All levels ``A``, every face and degeneracy the identity."""
    ident = LinMap.identity(A.field, A.dim)
    faces = {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, i): ident for n in range(N) for i in range(n + 1)}
    return TruncSimplicialAlgebra(tuple([A] * (N + 1)), faces, degens, name or f"CONST({A.name or A.dim})")
