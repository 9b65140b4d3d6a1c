"""Finite-dimensional commutative algebras given by structure constants.

Algebras need not be unital. Everything here is exact and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from ..report import ValidationReport
from .field import Field
from .linalg import LinMap, Subspace, is_zero, unit_vector

__all__ = [
    "AlgebraError",
    "DescentError",
    "InvalidStructure",
    "FinAlgebra",
    "AlgMorphism",
    "Ideal",
    "Action",
    "Quotient",
    "Semidirect",
    "validate_algebra",
    "validate_morphism",
    "validate_action",
    "ideal_closure",
    "is_ideal",
    "as_ideal",
    "product_span",
    "quotient_algebra",
    "subalgebra",
    "semidirect",
    "singularise",
    "zero_algebra",
]


class AlgebraError(ValueError):
    """Raised when a construction is applied to data violating its preconditions."""


class DescentError(AlgebraError):
    """A map or action does not descend to the requested quotient."""


class InvalidStructure(AlgebraError):
    """Input failed its validator; the report is attached."""

    def __init__(self, report: ValidationReport):
        super().__init__(report.summary())
        self.report = report


def _sparse(F: Field, v) -> tuple:
    return tuple((k, F.norm(c)) for k, c in enumerate(v) if F.norm(c))


class FinAlgebra:
    """Commutative algebra on basis ``e_0..e_{dim-1}``.

    ``mul[i][j]`` holds the nonzero structure constants of ``e_i e_j`` as
    ``((k, c_ijk), ...)``.
    """

    def __init__(self, field: Field, dim: int, mul, labels: Sequence[str] | None = None, name: str = ""):
        self.field = field
        self.dim = dim
        if len(mul) != dim or any(len(r) != dim for r in mul):
            raise ValueError(f"structure table is not {dim}x{dim}")
        table = []
        for row in mul:
            trow = []
            for entry in row:
                if entry and not isinstance(entry[0], tuple):
                    entry = _sparse(field, entry)  # dense vector given
                else:
                    entry = tuple(sorted((int(k), field.norm(c)) for k, c in entry if field.norm(c)))
                if any(not 0 <= k < dim for k, _ in entry):
                    raise ValueError("structure constant index out of range")
                trow.append(entry)
            table.append(tuple(trow))
        self.mul = tuple(table)
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("wrong number of basis labels")
        self.name = name

    @classmethod
    def from_bilinear(cls, field: Field, dim: int, f: Callable, labels=None, name: str = "") -> "FinAlgebra":
        """Build from a bilinear product ``f(u, v)`` evaluated on basis vectors."""
        units = [unit_vector(field, dim, i) for i in range(dim)]
        mul = [[f(units[i], units[j]) for j in range(dim)] for i in range(dim)]
        mul = [[_sparse(field, v) for v in row] for row in mul]
        return cls(field, dim, mul, labels, name)

    @classmethod
    def from_dense(cls, field: Field, table, labels=None, name: str = "") -> "FinAlgebra":
        dim = len(table)
        return cls(field, dim, [[_sparse(field, [field(c) for c in table[i][j]]) for j in range(dim)] for i in range(dim)],
                   labels, name)

    def structure_constants(self) -> list:
        z = self.field.zero
        out = [[[z] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in self.mul[i][j]:
                    out[i][j][k] = c
        return out

    def basis_product(self, i: int, j: int) -> tuple:
        v = [self.field.zero] * self.dim
        for k, c in self.mul[i][j]:
            v[k] = c
        return tuple(v)

    def mult(self, u, v) -> tuple:
        F = self.field
        acc = {}
        nu = [(i, a) for i, a in enumerate(u) if a]
        nv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nu:
            row = self.mul[i]
            for j, b in nv:
                ab = a * b
                for k, c in row[j]:
                    acc[k] = acc.get(k, 0) + ab * c
        out = [F.zero] * self.dim
        for k, x in acc.items():
            out[k] = F.norm(F.zero + x)
        return tuple(out)

    def _sparse_times_basis(self, terms, l: int, left: bool) -> dict:
        """``(sum c_k e_k) e_l`` (or ``e_l (...)``) as a dict, zeros dropped."""
        F = self.field
        acc = {}
        for k, c in terms:
            for m, d in (self.mul[k][l] if left else self.mul[l][k]):
                acc[m] = acc.get(m, 0) + c * d
        return {m: F.norm(F.zero + x) for m, x in acc.items() if F.norm(F.zero + x)}

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def unit(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def units(self) -> list:
        return [self.unit(i) for i in range(self.dim)]

    def multiplication_map(self, v) -> LinMap:
        """The linear map ``x -> v x``."""
        return LinMap.from_columns(self.field, self.dim, [self.mult(v, e) for e in self.units()], self.dim)

    @property
    def is_zero_multiplication(self) -> bool:
        return all(not e for row in self.mul for e in row)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_subspace(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def __eq__(self, other):
        return (
            isinstance(other, FinAlgebra)
            and other.field == self.field
            and other.dim == self.dim
            and other.mul == self.mul
        )

    def __hash__(self):
        return hash((self.field, self.dim, self.mul))

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FinAlgebra{tag} dim={self.dim} over {self.field!r}>"


def zero_algebra(F: Field, dim: int, labels=None, name: str = "") -> FinAlgebra:
    """An algebra with all products zero (a module, or 'singular algebra')."""
    return FinAlgebra(F, dim, [[() for _ in range(dim)] for _ in range(dim)], labels, name)


def validate_algebra(A: FinAlgebra) -> ValidationReport:
    """Check commutativity and associativity on every basis pair and triple."""
    rep = ValidationReport(f"algebra{' ' + A.name if A.name else ''}")
    rep.ran("commutativity")
    rep.ran("associativity")
    n = A.dim
    for i in range(n):
        for j in range(i + 1, n):
            if A.mul[i][j] != A.mul[j][i]:
                rep.fail("commutativity", (i, j), f"{A.basis_product(i, j)} != {A.basis_product(j, i)}")
    for i in range(n):
        for j in range(n):
            eij = A.mul[i][j]
            for l in range(n):
                lhs = A._sparse_times_basis(eij, l, left=True)
                rhs = A._sparse_times_basis(A.mul[j][l], i, left=False)
                if lhs != rhs:
                    rep.fail("associativity", (i, j, l), f"{lhs} != {rhs}")
    return rep


@dataclass(frozen=True)
class AlgMorphism:
    """An algebra homomorphism; ``map`` is the underlying linear map."""

    source: FinAlgebra
    target: FinAlgebra
    map: LinMap

    def __post_init__(self):
        if self.map.source_dim != self.source.dim or self.map.target_dim != self.target.dim:
            raise ValueError("morphism matrix does not match algebra dimensions")

    def __call__(self, v) -> tuple:
        return self.map(v)

    def __matmul__(self, other: "AlgMorphism") -> "AlgMorphism":
        return AlgMorphism(other.source, self.target, self.map @ other.map)

    def kernel(self) -> Subspace:
        return self.map.kernel()

    def image(self) -> Subspace:
        return self.map.image()


def validate_morphism(f: AlgMorphism, name: str = "morphism") -> ValidationReport:
    rep = ValidationReport(name)
    rep.ran("multiplicative")
    A, B = f.source, f.target
    for i in range(A.dim):
        fi = f.map.column(i)
        for j in range(i, A.dim):
            lhs = f(A.basis_product(i, j))
            rhs = B.mult(fi, f.map.column(j))
            if lhs != rhs:
                rep.fail("multiplicative", (i, j), f"{lhs} != {rhs}")
    return rep


@dataclass(frozen=True, eq=False)
class Ideal(Subspace):
    """A subspace closed under multiplication by its ambient algebra."""

    ambient: FinAlgebra | None = dc_field(default=None, compare=False, repr=False)

    def __eq__(self, other):
        return isinstance(other, Subspace) and Subspace.__eq__(Subspace(self.field, self.ambient_dim, self.basis, ()),
                                                                Subspace(other.field, other.ambient_dim, other.basis, ()))

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    @property
    def space(self) -> Subspace:
        return Subspace(self.field, self.ambient_dim, self.basis, self.pivots)


def _make_ideal(A: FinAlgebra, S: Subspace) -> Ideal:
    return Ideal(S.field, S.ambient_dim, S.basis, S.pivots, A)


def is_ideal(A: FinAlgebra, S: Subspace) -> bool:
    units = A.units()
    return all(S.contains(A.mult(e, b)) for b in S.basis for e in units)


def as_ideal(A: FinAlgebra, S: Subspace) -> Ideal:
    if not is_ideal(A, S):
        raise AlgebraError("subspace is not closed under multiplication by the ambient algebra")
    return _make_ideal(A, S)


def ideal_closure(A: FinAlgebra, gens: Iterable[Sequence]) -> Ideal:
    """Smallest ideal of ``A`` containing ``gens`` (fixed point of span extension)."""
    F = A.field
    S = Subspace.span(F, A.dim, gens)
    queue = list(S.basis)
    units = A.units()
    while queue:
        v = queue.pop()
        fresh = []
        for e in units:
            r = S.reduce(A.mult(e, v))
            if not is_zero(r):
                fresh.append(r)
                S = Subspace.span(F, A.dim, S.basis + (r,))
        queue.extend(fresh)
    return _make_ideal(A, S)


def product_span(U: Subspace, V: Subspace, A: FinAlgebra) -> Subspace:
    """Span of all products ``u v`` of basis vectors of U and V."""
    return Subspace.span(A.field, A.dim, (A.mult(u, v) for u in U.basis for v in V.basis))


class Quotient:
    """``A/I`` with its projection and the canonical section.

    The complement of ``I`` is spanned by the standard basis vectors at the
    non-pivot columns of ``I``'s echelon basis. Unpacks as ``(algebra, projection)``.
    """

    def __init__(self, A: FinAlgebra, I: Subspace, labels=None):
        self.source = A
        self.ideal = I
        F = A.field
        pivots = set(I.pivots)
        self.free = [j for j in range(A.dim) if j not in pivots]
        d = len(self.free)
        self.section = LinMap.from_columns(F, A.dim, [A.unit(j) for j in self.free], d)
        proj_cols = []
        for e in A.units():
            r = I.reduce(e)
            proj_cols.append(tuple(r[j] for j in self.free))
        self.proj_map = LinMap.from_columns(F, d, proj_cols, A.dim)
        if labels is None:
            labels = [f"[{A.labels[j]}]" for j in self.free]
        self.algebra = FinAlgebra.from_bilinear(
            F, d, lambda u, v: self.proj_map(A.mult(self.section(u), self.section(v))), labels
        )
        self.projection = AlgMorphism(A, self.algebra, self.proj_map)

    def __iter__(self):
        yield self.algebra
        yield self.projection

    def project(self, v) -> tuple:
        return self.proj_map(v)

    def lift(self, c) -> tuple:
        return self.section(c)


def quotient_algebra(A: FinAlgebra, I: Subspace, labels=None) -> Quotient:
    """Quotient by an ideal; faults if ``I`` is not closed under multiplication."""
    if I.ambient_dim != A.dim:
        raise ValueError("ideal lives in a different algebra")
    if not is_ideal(A, I):
        raise AlgebraError("quotient by a non-ideal: multiplication would be ill-defined")
    return Quotient(A, I, labels)


def subalgebra(A: FinAlgebra, S: Subspace, labels=None) -> tuple[FinAlgebra, AlgMorphism]:
    """The subalgebra on ``S`` (echelon basis) and its inclusion."""
    for u in S.basis:
        for v in S.basis:
            if not S.contains(A.mult(u, v)):
                raise AlgebraError("subspace is not closed under multiplication")
    inc = S.inclusion()
    B = FinAlgebra.from_bilinear(A.field, S.dim, lambda u, v: S.coords(A.mult(inc(u), inc(v))), labels)
    return B, AlgMorphism(B, A, inc)


class Action:
    """A right action ``c . r`` of the algebra ``actor`` on ``carrier``.

    ``table[i][j]`` is ``e_i . f_j`` as a carrier vector (e in carrier, f in actor).
    """

    def __init__(self, carrier: FinAlgebra, actor: FinAlgebra, table):
        self.carrier, self.actor = carrier, actor
        F = carrier.field
        if len(table) != carrier.dim or any(len(r) != actor.dim for r in table):
            raise ValueError("action table has the wrong shape")
        self.table = tuple(tuple(tuple(F.norm(a) for a in v) for v in row) for row in table)
        if any(len(v) != carrier.dim for row in self.table for v in row):
            raise ValueError("action table entry has the wrong length")

    @classmethod
    def from_function(cls, carrier: FinAlgebra, actor: FinAlgebra, f: Callable) -> "Action":
        return cls(carrier, actor, [[f(c, r) for r in actor.units()] for c in carrier.units()])

    @classmethod
    def zero(cls, carrier: FinAlgebra, actor: FinAlgebra) -> "Action":
        return cls.from_function(carrier, actor, lambda c, r: carrier.zero())

    @classmethod
    def by_multiplication(cls, R: FinAlgebra) -> "Action":
        return cls.from_function(R, R, R.mult)

    def __call__(self, c, r) -> tuple:
        F = self.carrier.field
        acc = [0] * self.carrier.dim
        nr = [(j, b) for j, b in enumerate(r) if b]
        for i, a in enumerate(c):
            if not a:
                continue
            row = self.table[i]
            for j, b in nr:
                ab = a * b
                for k, x in enumerate(row[j]):
                    if x:
                        acc[k] += ab * x
        return tuple(F.norm(F.zero + x) for x in acc)

    def matrix(self, r) -> LinMap:
        """The linear map ``c -> c . r``."""
        C = self.carrier
        return LinMap.from_columns(C.field, C.dim, [self(e, r) for e in C.units()], C.dim)

    def pullback(self, f: AlgMorphism) -> "Action":
        """Action of ``f.source`` on the carrier via ``c . f(r)``."""
        return Action.from_function(self.carrier, f.source, lambda c, r: self(c, f(r)))

    def transport(self, carrier: FinAlgebra, actor: FinAlgebra, to_old: LinMap, to_new: LinMap,
                  actor_to_old: LinMap, stable: Subspace | None = None) -> "Action":
        """Move the action along carrier maps (restriction or quotient).

        ``to_old`` embeds or lifts new carrier coordinates into the old carrier,
        ``to_new`` maps back. If ``stable`` is given, check that it is closed
        under the action, i.e. that the action descends to the quotient.
        """
        if stable is not None:
            for k in stable.basis:
                for r in self.actor.units():
                    if not stable.contains(self(k, r)):
                        raise DescentError("action does not preserve the subspace being factored out")
        return Action.from_function(carrier, actor, lambda c, r: to_new(self(to_old(c), actor_to_old(r))))

    def __eq__(self, other):
        return isinstance(other, Action) and other.table == self.table

    def __hash__(self):
        return hash(self.table)


def validate_action(act: Action, name: str = "action") -> ValidationReport:
    """Module law ``(c.r).r' = c.(rr')`` and ``(cc').r = c(c'.r)`` on basis triples."""
    rep = ValidationReport(name)
    rep.ran("module law")
    rep.ran("multiplicative compatibility")
    C, R = act.carrier, act.actor
    cu, ru = C.units(), R.units()
    for i, c in enumerate(cu):
        for j, r in enumerate(ru):
            cr = act.table[i][j]
            for l, r2 in enumerate(ru):
                lhs = act(cr, r2)
                rhs = act(c, R.basis_product(j, l))
                if lhs != rhs:
                    rep.fail("module law", (i, j, l), f"{lhs} != {rhs}")
    for i, c in enumerate(cu):
        for l, c2 in enumerate(cu):
            cc = C.basis_product(i, l)
            for j in range(R.dim):
                lhs = act(cc, ru[j])
                rhs = C.mult(c, act.table[l][j])
                if lhs != rhs:
                    rep.fail("multiplicative compatibility", (i, l, j), f"{lhs} != {rhs}")
    return rep


@dataclass(frozen=True)
class Semidirect:
    algebra: FinAlgebra
    inj_M: LinMap
    inj_N: LinMap
    proj_M: LinMap
    proj_N: LinMap

    def __iter__(self):
        yield self.algebra
        yield (self.inj_M, self.inj_N)
        yield (self.proj_M, self.proj_N)

    def pair(self, m, n) -> tuple:
        return tuple(m) + tuple(n)

    def split(self, v) -> tuple[tuple, tuple]:
        return self.proj_M(v), self.proj_N(v)


def semidirect(M: FinAlgebra, N: FinAlgebra, act: Action) -> Semidirect:
    """``M x| N`` with ``(m,n)(c,a) = (mc + m.a + c.n, na)``."""
    if act.carrier != M or act.actor != N:
        raise AlgebraError("action does not match the semidirect factors")
    rep = validate_action(act, "semidirect action")
    if not rep.ok:
        raise InvalidStructure(rep)
    F = M.field
    dm, dn = M.dim, N.dim

    def prod(u, v):
        m, n = u[:dm], u[dm:]
        c, a = v[:dm], v[dm:]
        first = M.mult(m, c)
        for w in (act(m, a), act(c, n)):
            first = tuple(F.norm(x + y) for x, y in zip(first, w))
        return first + N.mult(n, a)

    labels = [f"({l},0)" for l in M.labels] + [f"(0,{l})" for l in N.labels]
    A = FinAlgebra.from_bilinear(F, dm + dn, prod, labels)
    d = dm + dn
    inj_M = LinMap.from_columns(F, d, [tuple(e) + (F.zero,) * dn for e in M.units()], dm)
    inj_N = LinMap.from_columns(F, d, [(F.zero,) * dm + tuple(e) for e in N.units()], dn)
    proj_M = LinMap.from_function(F, d, dm, lambda v: tuple(v[:dm]))
    proj_N = LinMap.from_function(F, d, dn, lambda v: tuple(v[dm:]))
    return Semidirect(A, inj_M, inj_N, proj_M, proj_N)


def singularise(A: FinAlgebra, allow_char2: bool = False) -> tuple[FinAlgebra, LinMap]:
    """``A/A^2`` as a module (zero-multiplication algebra) with the projection.

    ``A^2`` is the span of all pairwise products. In characteristic 2 that can
    be strictly larger than the span of squares, so char 2 is refused unless
    ``allow_char2`` is set.
    """
    if A.field.characteristic == 2 and not allow_char2:
        raise AlgebraError("singularisation in characteristic 2 is disabled (pass allow_char2=True)")
    sq = product_span(A.full(), A.full(), A)
    q = Quotient(A, sq)
    return zero_algebra(A.field, q.algebra.dim, q.algebra.labels), q.proj_map

