"""Deterministic fixture generators.

``CONST``     constant simplicial algebra
``NERVE``     nerve of a crossed module (levels C^n x| R)
``DK``        group algebra of the Dold-Kan simplicial abelian group of a
              chain complex of F_l-vector spaces
``DKLIN``     the Dold-Kan simplicial vector space itself, zero multiplication
``IDEALSQ``   crossed square (I&J, I, J, R) with h(m, n) = mn
``TRUNCPOLY`` crossed and 2-crossed modules built from (x) in k[x]/(x^n)
"""

from __future__ import annotations

from itertools import combinations, product

from .exactalg import (
    QQ,
    Action,
    AlgMorphism,
    Field,
    FinAlgebra,
    LinMap,
    Subspace,
    subalgebra,
    truncated_polynomial,
    zero_algebra,
)
from .exactalg.polynomial import monomial_ideal
from .simplicial import TruncSimplicialAlgebra, constant_simplicial


# -- nerve of a crossed module ------------------------------------------------


def nerve(C: FinAlgebra, R: FinAlgebra, boundary: LinMap, action: Action, N: int = 4,
          name: str = "") -> TruncSimplicialAlgebra:
    """Nerve of the internal category of a crossed module ``boundary: C -> R``.

    An n-simplex is ``(r; c_1, ..., c_n)``: a string of n composable arrows
    starting at object r. Products are taken arrowwise in ``C x| R``.
    """
    F = R.field
    dc, dr = C.dim, R.dim

    def split(v, n):
        return v[:dr], [v[dr + k * dc: dr + (k + 1) * dc] for k in range(n)]

    def join(r, cs):
        out = tuple(r)
        for c in cs:
            out += tuple(c)
        return out

    def vadd(u, v):
        return tuple(F.norm(a + b) for a, b in zip(u, v))

    def make_mult(n):
        def mult(u, v):
            r, cs = split(u, n)
            r2, cs2 = split(v, n)
            x, x2 = r, r2
            out = []
            for c, c2 in zip(cs, cs2):
                term = vadd(C.mult(c, c2), vadd(action(c, x2), action(c2, x)))
                out.append(term)
                x, x2 = vadd(x, boundary(c)), vadd(x2, boundary(c2))
            return join(R.mult(r, r2), out)
        return mult

    levels = []
    for n in range(N + 1):
        labels = [f"r:{l}" for l in R.labels] + [f"c{k + 1}:{l}" for k in range(n) for l in C.labels]
        levels.append(FinAlgebra.from_bilinear(F, dr + n * dc, make_mult(n), labels))

    faces, degens = {}, {}
    zc = (F.zero,) * dc
    for n in range(1, N + 1):
        def face(i, n=n):
            def f(v):
                r, cs = split(v, n)
                if i == 0:
                    return join(vadd(r, boundary(cs[0])), cs[1:])
                if i == n:
                    return join(r, cs[:-1])
                return join(r, cs[:i - 1] + [vadd(cs[i - 1], cs[i])] + cs[i + 1:])
            return f
        for i in range(n + 1):
            faces[(n, i)] = LinMap.from_function(F, levels[n].dim, levels[n - 1].dim, face(i))
    for n in range(N):
        for i in range(n + 1):
            def deg(v, i=i, n=n):
                r, cs = split(v, n)
                return join(r, cs[:i] + [zc] + cs[i:])
            degens[(n, i)] = LinMap.from_function(F, levels[n].dim, levels[n + 1].dim, deg)
    return TruncSimplicialAlgebra(tuple(levels), faces, degens, name or "NERVE")


def ideal_inclusion(R: FinAlgebra, I: Subspace):
    """Crossed module ``I -> R`` (inclusion, multiplication action)."""
    C, inc = subalgebra(R, I, [f"<{i}>" for i in range(I.dim)])
    act = Action.from_function(C, R, lambda c, r: I.coords(R.mult(inc(c), r)))
    return C, inc.map, act


def nerve_of_ideal(R: FinAlgebra, generators, N: int = 4) -> TruncSimplicialAlgebra:
    I = monomial_ideal(R, generators)
    C, inc, act = ideal_inclusion(R, I)
    return nerve(C, R, inc, act, N, f"NERVE(({','.join(generators)}) -> {R.name})")


# -- Dold-Kan -----------------------------------------------------------------


def _surjections(n: int):
    """Monotone surjections [n] -> [k] as value tuples, for every k."""
    out = []
    for k in range(n + 1):
        for cut in combinations(range(n), k):  # positions where sigma steps up
            vals, cur = [0], 0
            for j in range(n):
                if j in cut:
                    cur += 1
                vals.append(cur)
            out.append((tuple(vals), k))
    return out


class _Gamma:
    """Combinatorics of the Dold-Kan functor applied to a bounded chain complex.

    ``ranks[k]`` is the dimension of the chain group in degree k and
    ``diffs[k]`` the matrix (ranks[k-1] x ranks[k]) of d: M_k -> M_{k-1}.
    Arithmetic on coefficients is reduced by ``norm``.
    """

    def __init__(self, ranks, diffs, norm):
        self.ranks = list(ranks)
        self.diffs = diffs
        self.norm = norm

    def summands(self, n):
        out, offset = [], 0
        for sigma, k in _surjections(n):
            r = self.ranks[k] if k < len(self.ranks) else 0
            if r:
                out.append((sigma, k, offset))
                offset += r
        return out, offset

    def dim(self, n):
        return self.summands(n)[1]

    def structure_map(self, theta, m, n):
        """Matrix (dim_m x dim_n) of Gamma(theta) for monotone theta: [m] -> [n]."""
        src, dn = self.summands(n)
        tgt, dm = self.summands(m)
        index = {(s, k): off for s, k, off in tgt}
        mat = [[0] * dn for _ in range(dm)]
        for sigma, k, off in src:
            comp = tuple(sigma[t] for t in theta)
            image = set(comp)
            rk = self.ranks[k]
            if image == set(range(k + 1)):
                toff = index[(comp, k)]
                for a in range(rk):
                    mat[toff + a][off + a] = 1
            elif k >= 1 and image == set(range(k)):
                key = (comp, k - 1)
                if key not in index:
                    continue
                toff = index[key]
                D = self.diffs[k]
                for a in range(self.ranks[k - 1]):
                    for b in range(rk):
                        if D[a][b]:
                            mat[toff + a][off + b] = self.norm(mat[toff + a][off + b] + D[a][b])
        return mat


def _coface(n, i):
    """delta^i: [n-1] -> [n] skipping i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def _codegeneracy(n, i):
    """sigma^i: [n+1] -> [n] hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def dold_kan_linear(F: Field, ranks, diffs, N: int = 4, name: str = "") -> TruncSimplicialAlgebra:
    """The Dold-Kan simplicial vector space of a chain complex, zero multiplication.

    Its homotopy is the homology of the input complex.
    """
    diffs = {k: [[F(a) for a in row] for row in D] for k, D in diffs.items()}
    G = _Gamma(ranks, diffs, F.norm)
    levels = [zero_algebra(F, G.dim(n)) for n in range(N + 1)]
    faces = {(n, i): LinMap.from_rows(F, G.structure_map(_coface(n, i), n - 1, n), G.dim(n))
             for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, i): LinMap.from_rows(F, G.structure_map(_codegeneracy(n, i), n + 1, n), G.dim(n))
              for n in range(N) for i in range(n + 1)}
    return TruncSimplicialAlgebra(tuple(levels), faces, degens, name or f"DKLIN{tuple(ranks)}")


def dold_kan_group_algebra(F: Field, ell: int, ranks, diffs=None, N: int = 4,
                           name: str = "") -> TruncSimplicialAlgebra:
    """Group algebra ``F[Gamma(M)]`` of the Dold-Kan simplicial abelian group.

    ``M`` is a chain complex of F_ell-vector spaces. Level n has dimension
    ``ell ** dim Gamma(M)_n``.
    """
    diffs = diffs or {}
    diffs = {k: [[a % ell for a in row] for row in D] for k, D in diffs.items()}
    for k in range(1, len(ranks)):
        diffs.setdefault(k, [[0] * ranks[k] for _ in range(ranks[k - 1])])
    G = _Gamma(ranks, diffs, lambda a: a % ell)

    def elements(n):
        return list(product(range(ell), repeat=G.dim(n)))

    def index(g):
        i = 0
        for a in g:
            i = i * ell + a
        return i

    levels = []
    for n in range(N + 1):
        elts = elements(n)
        mul = [[((index(tuple((a + b) % ell for a, b in zip(g, h))), 1),) for h in elts] for g in elts]
        labels = ["[" + "".join(map(str, g)) + "]" for g in elts]
        levels.append(FinAlgebra(F, len(elts), mul, labels))

    def induced(mat, m, n):
        src = elements(n)
        cols = []
        dm = ell ** G.dim(m)
        for g in src:
            img = tuple(sum(row[j] * g[j] for j in range(len(g))) % ell for row in mat)
            col = [F.zero] * dm
            col[index(img)] = F.one
            cols.append(col)
        return LinMap.from_columns(F, dm, cols, len(src))

    faces = {(n, i): induced(G.structure_map(_coface(n, i), n - 1, n), n - 1, n)
             for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, i): induced(G.structure_map(_codegeneracy(n, i), n + 1, n), n + 1, n)
              for n in range(N) for i in range(n + 1)}
    return TruncSimplicialAlgebra(tuple(levels), faces, degens,
                                  name or f"DK(F_{ell}; ranks={tuple(ranks)})")


def const(A: FinAlgebra, N: int = 4) -> TruncSimplicialAlgebra:
    return constant_simplicial(A, N)


# -- crossed squares and 2-crossed modules from ideals -------------------------


def ideal_square(R: FinAlgebra, I: Subspace, J: Subspace, name: str = ""):
    """Crossed square ``(I & J, I, J, R)``: inclusions, multiplication actions, h(m, n) = mn."""
    from .exactalg import Bilinear
    from .structures import CrossedSquare

    K = I & J
    L, incL = subalgebra(R, K, [f"l{i}" for i in range(K.dim)])
    M, incM = subalgebra(R, I, [f"m{i}" for i in range(I.dim)])
    N, incN = subalgebra(R, J, [f"n{i}" for i in range(J.dim)])
    F = R.field

    def into(S, f):
        return AlgMorphism(f.source, S[0], LinMap.from_function(F, f.source.dim, S[0].dim,
                                                                 lambda v: S[1].coords(f(v))))

    lam = into((M, I), incL)
    lam_p = into((N, J), incL)

    def mult_action(A, S, inc):
        return Action.from_function(A, R, lambda a, r: S.coords(R.mult(inc(a), r)))

    h = Bilinear.from_function(F, M.dim, N.dim, L.dim, lambda m, n: K.coords(R.mult(incM(m), incN(n))))
    return CrossedSquare(L, M, N, R, lam, lam_p, incM, incN,
                         mult_action(L, K, incL), mult_action(M, I, incM), mult_action(N, J, incN), h,
                         name or f"IDEALSQ({R.name})")


def idealsq(F: Field = QQ, degree: int = 3, left=("x",), right=("x",), nvars: int = 1):
    """IDEALSQ(k[x..]/deg; I, J) with monomial ideals I, J."""
    R = truncated_polynomial(F, nvars, degree)
    I, J = monomial_ideal(R, left), monomial_ideal(R, right)
    return ideal_square(R, I, J, f"IDEALSQ({R.name}; ({','.join(left)}), ({','.join(right)}))")


def truncpoly_precrossed(F: Field = QQ, n: int = 4):
    """``0: (x) -> k[x]/(x^n)`` with the multiplication action (pre-crossed, not crossed)."""
    from .structures import PreCrossedModule

    R = truncated_polynomial(F, 1, n)
    I = monomial_ideal(R, ["x"])
    C, inc = subalgebra(R, I, list(R.labels[1:]))
    act = Action.from_function(C, R, lambda c, r: I.coords(R.mult(inc(c), r)))
    zero = AlgMorphism(C, R, LinMap.zero(F, C.dim, R.dim))
    return PreCrossedModule(C, R, zero, act, f"TRUNCPOLY({n}) pre-crossed")


def truncpoly_crossed(F: Field = QQ, n: int = 4):
    """Inclusion ``(x) -> k[x]/(x^n)`` as a crossed module."""
    from .structures import CrossedModule

    R = truncated_polynomial(F, 1, n)
    I = monomial_ideal(R, ["x"])
    C, inc, act = ideal_inclusion(R, I)
    return CrossedModule(C, R, AlgMorphism(C, R, inc), act, f"TRUNCPOLY({n}) crossed")


def truncpoly_two_crossed(F: Field = QQ, n: int = 4):
    """``(x) -id-> (x) -0-> k[x]/(x^n)`` with lifting ``{y0 (x) y1} = y0 y1``.

    All actions are multiplication in k[x]/(x^n); C1 acts on C2 by
    multiplication too, which makes ``id`` a crossed module.
    """
    from .exactalg import Bilinear
    from .structures import TwoCrossedModule

    pre = truncpoly_precrossed(F, n)
    C, R, act = pre.C, pre.R, pre.action
    ident = AlgMorphism(C, C, LinMap.identity(F, C.dim))
    lifting = Bilinear.from_function(F, C.dim, C.dim, C.dim, C.mult)
    return TwoCrossedModule(C, C, R, ident, pre.boundary, act, act, lifting,
                            Action.by_multiplication(C), f"TRUNCPOLY({n})")


def two_crossed_from_crossed(cm, name: str = ""):
    """``0 -> C -> R`` with zero lifting."""
    from .exactalg import Bilinear
    from .structures import TwoCrossedModule

    F = cm.field
    Z = zero_algebra(F, 0)
    d2 = AlgMorphism(Z, cm.C, LinMap.zero(F, 0, cm.C.dim))
    return TwoCrossedModule(Z, cm.C, cm.R, d2, cm.boundary, cm.action, Action.zero(Z, cm.R),
                            Bilinear.zero(F, cm.C.dim, cm.C.dim, 0), Action.zero(Z, cm.C),
                            name or f"0 -> {cm.name or 'C'}")


# -- catalog -----------------------------------------------------------------

CATALOG = ("CONST", "NERVE", "DK", "IDEALSQ", "TRUNCPOLY")
TRUNCPOLY_VARIANTS = ("two_crossed", "crossed", "precrossed")


def _names(v, default):
    if v is None:
        return tuple(default)
    if isinstance(v, str):
        return tuple(s.strip() for s in v.split(",") if s.strip())
    return tuple(v)


def build(name: str, F: Field = QQ, truncation: int | None = None, **params):
    """Catalog fixture by name. Unknown names and parameters raise ValueError.

    CONST      degree=2, nvars=1: constant on k[x..]/deg
    NERVE      degree=3, nvars=1, generators=("x",)
    DK         ell=2, ranks=(0, 1), diffs={}: group algebra over F
    IDEALSQ    degree=3, nvars=1, left=("x",), right=("x",)
    TRUNCPOLY  degree=4, variant="two_crossed" | "crossed" | "precrossed"
    """
    key = name.upper()
    params = {k: v for k, v in params.items() if v is not None}
    allowed = {
        "CONST": {"degree", "nvars"},
        "NERVE": {"degree", "nvars", "generators"},
        "DK": {"ell", "ranks", "diffs"},
        "IDEALSQ": {"degree", "nvars", "left", "right"},
        "TRUNCPOLY": {"degree", "variant"},
    }
    if key not in allowed:
        raise ValueError(f"unknown fixture {name!r}; the catalog has {', '.join(CATALOG)}")
    extra = set(params) - allowed[key]
    if extra:
        raise ValueError(f"{key} does not take {', '.join(sorted(extra))}")
    N = 4 if truncation is None else truncation
    if key == "CONST":
        A = truncated_polynomial(F, params.get("nvars", 1), params.get("degree", 2))
        return constant_simplicial(A, N)
    if key == "NERVE":
        R = truncated_polynomial(F, params.get("nvars", 1), params.get("degree", 3))
        return nerve_of_ideal(R, list(_names(params.get("generators"), ["x"])), N)
    if key == "DK":
        ranks = tuple(int(r) for r in _names(params.get("ranks"), (0, 1)))
        diffs = {int(k): v for k, v in (params.get("diffs") or {}).items()}
        return dold_kan_group_algebra(F, int(params.get("ell", 2)), ranks, diffs, N)
    if truncation is not None:
        raise ValueError(f"{key} is not simplicial; --truncation does not apply")
    if key == "IDEALSQ":
        return idealsq(F, params.get("degree", 3), _names(params.get("left"), ["x"]),
                       _names(params.get("right"), ["x"]), params.get("nvars", 1))
    n = params.get("degree", 4)
    variant = params.get("variant", "two_crossed")
    if variant == "two_crossed":
        return truncpoly_two_crossed(F, n)
    if variant == "crossed":
        return truncpoly_crossed(F, n)
    if variant == "precrossed":
        return truncpoly_precrossed(F, n)
    raise ValueError(f"TRUNCPOLY variant must be one of {', '.join(TRUNCPOLY_VARIANTS)}")
