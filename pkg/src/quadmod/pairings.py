"""Hypercrossed complex pairings C_{alpha,beta} and boundary-image decompositions.

A :class:`SurjIndex` encodes a monotone surjection [n] -> [n-r] by the set
of positions it collapses, stored descending ``(i_r, ..., i_1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache
from itertools import combinations

from .exactalg import AlgebraError, Ideal, LinMap, Subspace, ideal_closure, product_span
from .simplicial import TruncSimplicialAlgebra, degenerate_ideal, kernel_K

MAX_N = 5


@dataclass(frozen=True, order=False)
class SurjIndex:
    n: int
    indices: tuple  # strictly decreasing

    def __post_init__(self):
        idx = self.indices
        if any(a <= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices {idx} are not strictly decreasing")
        if idx and (idx[-1] < 0 or idx[0] > self.n - 1):
            raise ValueError(f"indices {idx} outside [0, {self.n - 1}]")

    @classmethod
    def of(cls, n: int, *indices: int) -> "SurjIndex":
        return cls(n, tuple(sorted(indices, reverse=True)))

    @property
    def r(self) -> int:
        return len(self.indices)

    @property
    def ascending(self) -> tuple:
        return tuple(reversed(self.indices))

    def __lt__(self, other: "SurjIndex") -> bool:
        return lt_S(self, other)

    def __str__(self):
        return "(" + ",".join(map(str, self.indices)) + ")" if self.indices else f"0_{self.n}"


def lt_S(a: SurjIndex, b: SurjIndex) -> bool:
    """Order on S(n): compare from the smallest index up, larger index first
    at the first difference; a proper prefix is smaller."""
    if a.n != b.n:
        raise ValueError("indices from different levels")
    x, y = a.ascending, b.ascending
    for i, j in zip(x, y):
        if i != j:
            return i > j
    return len(x) < len(y)


def gen_S(n: int) -> list[SurjIndex]:
    if not 0 <= n <= MAX_N:
        raise ValueError(f"S(n) supported for 0 <= n <= {MAX_N}")
    elems = [SurjIndex.of(n, *c) for r in range(n + 1) for c in combinations(range(n), r)]

    def cmp(a, b):
        return -1 if lt_S(a, b) else (1 if lt_S(b, a) else 0)

    return sorted(elems, key=cmp_to_key(cmp))


@dataclass(frozen=True)
class PairIndex:
    alpha: SurjIndex
    beta: SurjIndex

    def __post_init__(self):
        if set(self.alpha.indices) & set(self.beta.indices):
            raise ValueError("pair indices must be disjoint")
        if not lt_S(self.beta, self.alpha):
            raise ValueError("pair requires beta < alpha")

    @property
    def n(self) -> int:
        return self.alpha.n

    def __str__(self):
        return f"C_{{{self.alpha},{self.beta}}}"


def gen_P(n: int) -> list[PairIndex]:
    """Disjoint pairs with beta < alpha; pairs involving the empty index are excluded."""
    S = [a for a in gen_S(n) if a.r]
    return [PairIndex(a, b) for a in S for b in S
            if not set(a.indices) & set(b.indices) and lt_S(b, a)]


@lru_cache(maxsize=None)
def _projector(E: TruncSimplicialAlgebra, n: int) -> LinMap:
    """``p = (1 - s_{n-1} d_{n-1}) ... (1 - s_0 d_0)`` on E_n."""
    dim = E.levels[n].dim
    ident = LinMap.identity(E.field, dim)
    p = ident
    for j in range(n):
        p = (ident - E.s(n - 1, j) @ E.d(n, j)) @ p
    return p


def projector(E: TruncSimplicialAlgebra, n: int) -> LinMap:
    E.require(n)
    return _projector(E, n)


def raw_composite(E: TruncSimplicialAlgebra, n: int, first: SurjIndex, second: SurjIndex, x, y) -> tuple:
    """``p(s_first(x) s_second(y))`` for x in E_{n-#first}, y in E_{n-#second}.

    No ordering requirement between the indices; used as the oracle for
    closed-form expressions.
    """
    E.require(n)
    sx = E.apply_degeneracies(n - first.r, first.ascending, x)
    sy = E.apply_degeneracies(n - second.r, second.ascending, y)
    return projector(E, n)(E.levels[n].mult(sx, sy))


def c_pairing(E: TruncSimplicialAlgebra, n: int, pair: PairIndex, x, y) -> tuple:
    """``C_{alpha,beta}(x (x) y)`` for x in NE_{n-#alpha}, y in NE_{n-#beta}."""
    mc = E.moore
    if not mc.spaces[n - pair.alpha.r].contains(x) or not mc.spaces[n - pair.beta.r].contains(y):
        raise ValueError("arguments must lie in the Moore subspaces")
    out = raw_composite(E, n, pair.alpha, pair.beta, x, y)
    if not mc.spaces[n].contains(out):
        raise AlgebraError(f"{pair} left NE_{n}: the simplicial structure is invalid")
    return out


def pairing_values(E: TruncSimplicialAlgebra, n: int, pair: PairIndex) -> list[tuple]:
    mc = E.moore
    X = mc.spaces[n - pair.alpha.r].basis
    Y = mc.spaces[n - pair.beta.r].basis
    return [c_pairing(E, n, pair, x, y) for x in X for y in Y]


def ideal_In(E: TruncSimplicialAlgebra, n: int) -> Ideal:
    """The ideal of E_n generated by all pairing values over P(n)."""
    E.require(n)
    gens = [v for pair in gen_P(n) for v in pairing_values(E, n, pair)]
    return ideal_closure(E.levels[n], gens)


def face_index_pairs(n: int):
    """Pairs (I, J) of nonempty proper subsets of {0..n-1} with I u J = {0..n-1}."""
    full = frozenset(range(n))
    subsets = [frozenset(c) for r in range(1, n) for c in combinations(range(n), r)]
    return [(I, J) for I in subsets for J in subsets if I | J == full and sorted(I) <= sorted(J)]


def sum_KK(E: TruncSimplicialAlgebra, level: int, pairs=None) -> Subspace:
    """``sum K_I K_J`` in E_level over the given (or all covering) index pairs."""
    A = E.levels[level]
    total = Subspace.zero(E.field, A.dim)
    for I, J in pairs if pairs is not None else face_index_pairs(level + 1):
        KI, KJ = kernel_K(E, level, I), kernel_K(E, level, J)
        P = product_span(KI, KJ, A)
        total = total + P
    return total


# Targets of the six level-3 boundary images, as lists of (I, J) at level 2.
N3_TARGETS = {
    ((1, 0), (2,)): [((2,), (0, 1))],
    ((2, 0), (1,)): [((1,), (0, 2))],
    ((2, 1), (0,)): [((0,), (1, 2))],
    ((2,), (1,)): [((0, 1), (0, 2))],
    ((2,), (0,)): [((0, 1), (1, 2)), ((0, 1), (0, 2))],
    ((1,), (0,)): [((0, 2), (1, 2)), ((0, 1), (1, 2)), ((0, 1), (0, 2))],
}


@dataclass
class DecompositionReport:
    n: int
    hypothesis_En_eq_Dn: bool
    image_NE: Subspace
    image_I: Subspace
    sum_KK: Subspace
    verdicts: dict = field(default_factory=dict)
    memberships: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.verdicts.values()) and all(self.memberships.values())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "E_n = D_n": self.hypothesis_En_eq_Dn,
            "dim d(NE_n)": self.image_NE.dim,
            "dim d(I_n)": self.image_I.dim,
            "dim sum K_I K_J": self.sum_KK.dim,
            "verdicts": dict(self.verdicts),
            "memberships": dict(self.memberships),
        }


def pair_of(n: int, first, second) -> PairIndex:
    """The P(n) pair with index sets ``first`` and ``second`` in either order."""
    a, b = SurjIndex.of(n, *first), SurjIndex.of(n, *second)
    return PairIndex(a, b) if lt_S(b, a) else PairIndex(b, a)


def boundary_decomposition_check(E: TruncSimplicialAlgebra, n: int) -> DecompositionReport:
    """Compare d_n(NE_n), d_n(I_n) and sum K_I K_J inside E_{n-1}.

    Equalities are reported under the hypothesis E_n = D_n (``None`` when it
    fails); the inclusion sum K_I K_J <= d_n(NE_n) is checked unconditionally.
    """
    if not 2 <= n <= E.N:
        raise ValueError(f"decomposition check needs 2 <= n <= {E.N}")
    mc = E.moore
    dn = E.d(n, n)
    hyp = degenerate_ideal(E, n).dim == E.levels[n].dim
    img_NE = mc.image(n)
    In = ideal_In(E, n)
    img_I = dn.image_of(In)
    skk = sum_KK(E, n - 1)
    rep = DecompositionReport(n, hyp, img_NE, img_I, skk)
    rep.verdicts["I_n <= NE_n"] = In <= mc.spaces[n]
    rep.verdicts["sum KK <= d(NE)"] = skk <= img_NE
    eq_I = img_NE == img_I
    eq_K = img_NE == skk
    rep.verdicts["d(NE) = d(I)"] = eq_I if hyp else None
    rep.verdicts["d(NE) = sum KK"] = (eq_K if hyp else None) if n in (2, 4) else None
    rep.verdicts["d(NE) = sum KK (observed)"] = eq_K
    if n == 3:
        for (first, second), targets in N3_TARGETS.items():
            pair = pair_of(3, first, second)
            target = sum_KK(E, 2, [(frozenset(I), frozenset(J)) for I, J in targets])
            vals = pairing_values(E, 3, pair)
            rep.memberships[str(pair)] = all(target.contains(dn(v)) for v in vals)
    return rep


def level3_boundary_forms(E: TruncSimplicialAlgebra) -> dict:
    """Closed forms for three level-3 boundary images, next to the raw ``d3 C``.

    Returns ``{label: [(closed, raw), ...]}`` over basis pairs, for
    ``C_{(2,0),(1)}`` and ``C_{(2,1),(0)}`` on NE1 x NE2 and ``C_{(1),(0)}``
    on NE2 x NE2. Both entries of each pair should agree and lie in d3(NE3).
    """
    E.require(3)
    F, mc = E.field, E.moore
    m2 = E.levels[2].mult
    d3 = E.d(3, 3)
    d22 = E.d(2, 2)
    s10, s11 = E.s(1, 0), E.s(1, 1)

    def add(*vs):
        return tuple(F.norm(sum(t)) for t in zip(*vs))

    def neg(v):
        return tuple(F.norm(-a) for a in v)

    def S(*i):
        return SurjIndex.of(3, *i)

    out = {}
    rows_B, rows_C, rows_D = [], [], []
    for x in mc.spaces[1].basis:
        for y in mc.spaces[2].basis:
            dy = d22(y)
            # (s0 x - s1 x)(s1 d2 y - y)
            rows_B.append((m2(add(s10(x), neg(s11(x))), add(s11(dy), neg(y))),
                           d3(raw_composite(E, 3, S(2, 0), S(1), x, y))))
            # s1 x (s0 d2 y - s1 d2 y + y)
            rows_C.append((m2(s11(x), add(s10(dy), neg(s11(dy)), y)),
                           d3(raw_composite(E, 3, S(2, 1), S(0), x, y))))
    for x in mc.spaces[2].basis:
        for y in mc.spaces[2].basis:
            dx, dy = s11(d22(x)), d22(y)
            rows_D.append((add(m2(dx, s10(dy)), neg(m2(dx, s11(dy))), m2(x, y)),
                           d3(raw_composite(E, 3, S(1), S(0), x, y))))
    out["C_{(2,0),(1)}"], out["C_{(2,1),(0)}"], out["C_{(1),(0)}"] = rows_B, rows_C, rows_D
    return out
