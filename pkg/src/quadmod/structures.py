"""Crossed-type structures and their axiom validators.

Pre-crossed and crossed modules, 2-crossed modules, crossed squares and
quadratic modules of commutative algebras. All actions are right actions
``c . r``; bilinear data (Peiffer liftings, h-maps, quadratic maps) are
:class:`~quadmod.exactalg.Bilinear` tables, so every axiom is checked on
basis tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .exactalg import (
    Action,
    AlgebraError,
    AlgMorphism,
    Bilinear,
    DescentError,
    FinAlgebra,
    Ideal,
    LinMap,
    QuotientSpace,
    Subspace,
    ideal_closure,
    quotient_algebra,
    semidirect,
    singularise,
    validate_action,
    validate_algebra,
    validate_morphism,
    vsub,
)
from .report import ValidationReport
from .simplicial import HomotopyEntry, HomotopyTable

# -- pre-crossed and crossed modules -------------------------------------------


@dataclass(frozen=True, eq=False)
class PreCrossedModule:
    """``boundary: C -> R`` with R acting on C and ``d(c.r) = d(c) r``."""

    C: FinAlgebra
    R: FinAlgebra
    boundary: AlgMorphism
    action: Action
    name: str = ""

    def __post_init__(self):
        if self.boundary.source != self.C or self.boundary.target != self.R:
            raise ValueError("boundary does not go from C to R")
        if self.action.carrier != self.C or self.action.actor != self.R:
            raise ValueError("action must be an action of R on C")

    @property
    def field(self):
        return self.C.field

    def peiffer(self, x, y) -> tuple:
        return peiffer(self, x, y)


class CrossedModule(PreCrossedModule):
    """A pre-crossed module satisfying the Peiffer identity ``x . d(y) = xy``."""


def peiffer(pre: PreCrossedModule, x, y) -> tuple:
    """``<x, y> = xy - x . d(y)``."""
    return vsub(pre.field, pre.C.mult(x, y), pre.action(x, pre.boundary(y)))


def validate_precrossed(pre: PreCrossedModule, name: str = "") -> ValidationReport:
    rep = ValidationReport(name or f"pre-crossed module{' ' + pre.name if pre.name else ''}")
    rep.merge(validate_algebra(pre.C), "C ")
    rep.merge(validate_algebra(pre.R), "R ")
    rep.merge(validate_morphism(pre.boundary), "boundary ")
    rep.merge(validate_action(pre.action), "action ")
    rep.ran("equivariance")
    d, act = pre.boundary, pre.action
    for i, c in enumerate(pre.C.units()):
        for j, r in enumerate(pre.R.units()):
            rep.expect("equivariance", (i, j), d(act(c, r)), pre.R.mult(d(c), r))
    return rep


def validate_crossed(cm: PreCrossedModule, name: str = "") -> ValidationReport:
    """Pre-crossed checks plus the Peiffer identity on every basis pair."""
    rep = validate_precrossed(cm, name or f"crossed module{' ' + cm.name if cm.name else ''}")
    rep.ran("Peiffer identity")
    units = cm.C.units()
    for i, x in enumerate(units):
        for j, y in enumerate(units):
            p = peiffer(cm, x, y)
            if any(p):
                rep.fail("Peiffer identity", (i, j), f"<e{i},e{j}> = {p}")
    return rep


def peiffer_elements(pre: PreCrossedModule) -> list:
    units = pre.C.units()
    return [peiffer(pre, x, y) for x in units for y in units]


def p2_ideal(pre: PreCrossedModule) -> Ideal:
    """The Peiffer ideal generated by all ``<e_i, e_j>``."""
    return ideal_closure(pre.C, peiffer_elements(pre))


def triple_peiffer_elements(pre: PreCrossedModule) -> list:
    """``<<e_i,e_j>,e_k>`` and ``<e_i,<e_j,e_k>>`` over all basis triples."""
    units = pre.C.units()
    pairs = {(i, j): peiffer(pre, x, y) for (i, x), (j, y) in product(enumerate(units), repeat=2)}
    out = []
    for (i, j), p in pairs.items():
        for k, z in enumerate(units):
            out.append(peiffer(pre, p, z))
            out.append(peiffer(pre, units[k], pairs[(i, j)]))
    return out


def p3_ideal(pre: PreCrossedModule) -> Ideal:
    """Ideal of length-3 Peiffer elements, both bracketings."""
    return ideal_closure(pre.C, triple_peiffer_elements(pre))


def _stable(act: Action, S: Subspace) -> bool:
    return all(S.contains(act(v, r)) for v in S.basis for r in act.actor.units())


def descend_action(act: Action, q, actor: FinAlgebra | None = None, actor_lift: LinMap | None = None) -> Action:
    """Push an action through a quotient ``q`` of its carrier.

    ``q`` is a :class:`~quadmod.exactalg.Quotient`. The actor may also be
    replaced by a quotient, given its section ``actor_lift``.
    """
    actor = actor or act.actor
    lift = actor_lift or LinMap.identity(act.carrier.field, act.actor.dim)
    if not _stable(act, q.ideal):
        raise DescentError("action does not preserve the subspace being factored out")
    return Action.from_function(q.algebra, actor, lambda c, r: q.project(act(q.lift(c), lift(r))))


def associated_crossed(pre: PreCrossedModule) -> tuple[CrossedModule, AlgMorphism]:
    """``C/P2 -> R`` with the induced boundary and action, and the projection."""
    P2 = p2_ideal(pre)
    q = quotient_algebra(pre.C, P2)
    if not all(not any(pre.boundary(v)) for v in P2.basis):
        raise AlgebraError("boundary does not vanish on the Peiffer ideal: input is not pre-crossed")
    act = descend_action(pre.action, q)
    d = AlgMorphism(q.algebra, pre.R, pre.boundary.map @ q.section)
    cm = CrossedModule(q.algebra, pre.R, d, act, f"{pre.name}^cr" if pre.name else "")
    rep = validate_crossed(cm)
    if not rep.ok:
        raise AlgebraError(f"associated crossed module fails validation:\n{rep.summary()}")
    return cm, q.projection


def quadratic_space(pre: PreCrossedModule) -> tuple[FinAlgebra, LinMap]:
    """``C = M^cr / (M^cr)^2`` and the composite projection ``M -> C``."""
    cm, proj = associated_crossed(pre)
    # (M^cr)^2 is the span of all products, so char 2 is harmless here
    C, proj2 = singularise(cm.C, allow_char2=True)
    ker = (proj2 @ proj.map).kernel()
    if not _stable(pre.action, ker):
        raise DescentError("the R-action does not descend to the singularisation")
    return C, proj2 @ proj.map


# -- 2-crossed modules -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwoCrossedModule:
    """``C2 -> C1 -> C0`` with C0-actions, a Peiffer lifting and a C1-action on C2.

    ``act1`` and ``act2`` are the C0-actions on C1 and C2. ``act12`` is the
    action of C1 on C2 making ``d2`` a crossed module; when omitted it is
    derived as ``x . y := x . d1(y)``.
    """

    C2: FinAlgebra
    C1: FinAlgebra
    C0: FinAlgebra
    d2: AlgMorphism
    d1: AlgMorphism
    act1: Action
    act2: Action
    lifting: Bilinear
    act12: Action | None = None
    name: str = ""

    def __post_init__(self):
        if (self.d2.source, self.d2.target) != (self.C2, self.C1):
            raise ValueError("d2 must map C2 to C1")
        if (self.d1.source, self.d1.target) != (self.C1, self.C0):
            raise ValueError("d1 must map C1 to C0")
        if (self.act1.carrier, self.act1.actor) != (self.C1, self.C0):
            raise ValueError("act1 must be an action of C0 on C1")
        if (self.act2.carrier, self.act2.actor) != (self.C2, self.C0):
            raise ValueError("act2 must be an action of C0 on C2")
        L = self.lifting
        if (L.left_dim, L.right_dim, L.target_dim) != (self.C1.dim, self.C1.dim, self.C2.dim):
            raise ValueError("lifting must be a bilinear map C1 x C1 -> C2")
        if self.act12 is not None and (self.act12.carrier, self.act12.actor) != (self.C2, self.C1):
            raise ValueError("act12 must be an action of C1 on C2")

    @property
    def field(self):
        return self.C0.field

    @cached_property
    def c1_action(self) -> Action:
        return self.act12 if self.act12 is not None else self.act2.pullback(self.d1)

    def lift(self, y0, y1) -> tuple:
        return self.lifting(y0, y1)

    @cached_property
    def bottom(self) -> PreCrossedModule:
        """``d1: C1 -> C0`` as a pre-crossed module."""
        return PreCrossedModule(self.C1, self.C0, self.d1, self.act1, f"{self.name}.d1" if self.name else "")

    @cached_property
    def top(self) -> PreCrossedModule:
        """``d2: C2 -> C1`` with the C1-action."""
        return PreCrossedModule(self.C2, self.C1, self.d2, self.c1_action, f"{self.name}.d2" if self.name else "")

    def with_lifting(self, lifting: Bilinear) -> "TwoCrossedModule":
        return TwoCrossedModule(self.C2, self.C1, self.C0, self.d2, self.d1, self.act1, self.act2,
                                lifting, self.act12, self.name)


def validate_two_crossed(t: TwoCrossedModule) -> ValidationReport:
    rep = ValidationReport(f"2-crossed module{' ' + t.name if t.name else ''}")
    F = t.field
    for nm, A in (("C2", t.C2), ("C1", t.C1), ("C0", t.C0)):
        rep.merge(validate_algebra(A), f"{nm} ")
    rep.merge(validate_morphism(t.d2), "d2 ")
    rep.merge(validate_morphism(t.d1), "d1 ")
    rep.merge(validate_action(t.act1), "C0 on C1 ")
    rep.merge(validate_action(t.act2), "C0 on C2 ")
    rep.merge(validate_action(t.c1_action), "C1 on C2 ")

    u2, u1, u0 = t.C2.units(), t.C1.units(), t.C0.units()
    d1, d2, a1, a2, a12, lf = t.d1, t.d2, t.act1, t.act2, t.c1_action, t.lifting

    rep.ran("complex")
    for i, x in enumerate(u2):
        rep.expect("complex", (i,), d1(d2(x)), t.C0.zero())
    rep.ran("d1 equivariant")
    rep.ran("d2 equivariant")
    for k, z in enumerate(u0):
        for i, y in enumerate(u1):
            rep.expect("d1 equivariant", (i, k), d1(a1(y, z)), t.C0.mult(d1(y), z))
        for i, x in enumerate(u2):
            rep.expect("d2 equivariant", (i, k), d2(a2(x, z)), a1(d2(x), z))
    rep.ran("d2 crossed: equivariant")
    rep.ran("d2 crossed: Peiffer")
    for i, x in enumerate(u2):
        for j, y in enumerate(u1):
            rep.expect("d2 crossed: equivariant", (i, j), d2(a12(x, y)), t.C1.mult(d2(x), y))
        for j, x2 in enumerate(u2):
            rep.expect("d2 crossed: Peiffer", (j, i), a12(x2, d2(x)), t.C2.mult(x2, x))
    rep.ran("mixed law")
    for i, x in enumerate(u2):
        for j, y in enumerate(u1):
            xy = a12(x, y)
            for k, z in enumerate(u0):
                rep.expect("mixed law", (i, j, k), a2(xy, z), a12(x, a1(y, z)))

    for i, y0 in enumerate(u1):
        for j, y1 in enumerate(u1):
            l01 = lf.entry(i, j)
            # 2CM1
            rep.expect("2CM1", (i, j), d2(l01), vsub(F, t.C1.mult(y0, y1), a1(y0, d1(y1))))
            # 2CM3
            for k, y2 in enumerate(u1):
                lhs = lf(y0, t.C1.basis_product(j, k))
                rhs = lf(t.C1.basis_product(i, j), y2)
                rhs = tuple(F.norm(a + b) for a, b in zip(rhs, a2(l01, d1(y2))))
                rep.expect("2CM3", (i, j, k), lhs, rhs)
            # 2CM5
            for k, z in enumerate(u0):
                lhs = a2(l01, z)
                rep.expect("2CM5", (i, j, k, "left"), lhs, lf(a1(y0, z), y1))
                rep.expect("2CM5", (i, j, k, "right"), lhs, lf(y0, a1(y1, z)))
    for i, x1 in enumerate(u2):
        dx1 = d2(x1)
        for j, x2 in enumerate(u2):
            rep.expect("2CM2", (i, j), lf(dx1, d2(x2)), t.C2.mult(x1, x2))
        for j, y in enumerate(u1):
            rep.expect("2CM4a", (i, j), lf(dx1, y), vsub(F, a12(x1, y), a2(x1, d1(y))))
            rep.expect("2CM4b", (i, j), lf(y, dx1), a12(x1, y))
    return rep


# -- crossed squares ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CrossedSquare:
    """``L -lam-> M -mu-> R`` and ``L -lam_p-> N -nu-> R`` with an h-map ``M x N -> L``.

    ``actL``, ``actM``, ``actN`` are the R-actions. M and N act on L (and
    on each other) through ``mu`` and ``nu``.
    """

    L: FinAlgebra
    M: FinAlgebra
    N: FinAlgebra
    R: FinAlgebra
    lam: AlgMorphism
    lam_p: AlgMorphism
    mu: AlgMorphism
    nu: AlgMorphism
    actL: Action
    actM: Action
    actN: Action
    h: Bilinear
    name: str = ""

    def __post_init__(self):
        shapes = [(self.lam, self.L, self.M), (self.lam_p, self.L, self.N),
                  (self.mu, self.M, self.R), (self.nu, self.N, self.R)]
        for f, s, t in shapes:
            if (f.source, f.target) != (s, t):
                raise ValueError("crossed square maps have the wrong source or target")
        for act, carrier in ((self.actL, self.L), (self.actM, self.M), (self.actN, self.N)):
            if (act.carrier, act.actor) != (carrier, self.R):
                raise ValueError("crossed square actions must be R-actions on L, M, N")
        h = self.h
        if (h.left_dim, h.right_dim, h.target_dim) != (self.M.dim, self.N.dim, self.L.dim):
            raise ValueError("h must be a bilinear map M x N -> L")

    @property
    def field(self):
        return self.R.field

    def with_h(self, h: Bilinear) -> "CrossedSquare":
        return CrossedSquare(self.L, self.M, self.N, self.R, self.lam, self.lam_p, self.mu, self.nu,
                             self.actL, self.actM, self.actN, h, self.name)

    def side_modules(self) -> dict:
        """The five crossed modules of axiom 1."""
        return {
            "lambda": CrossedModule(self.L, self.M, self.lam, self.actL.pullback(self.mu)),
            "lambda'": CrossedModule(self.L, self.N, self.lam_p, self.actL.pullback(self.nu)),
            "mu": CrossedModule(self.M, self.R, self.mu, self.actM),
            "nu": CrossedModule(self.N, self.R, self.nu, self.actN),
            "mu.lambda": CrossedModule(self.L, self.R, self.mu @ self.lam, self.actL),
        }

    def semidirect(self):
        """``M x| N`` with N acting on M through ``nu``."""
        return semidirect(self.M, self.N, self.actM.pullback(self.nu))


def validate_crossed_square(s: CrossedSquare) -> ValidationReport:
    rep = ValidationReport(f"crossed square{' ' + s.name if s.name else ''}")
    rep.ran("square commutes")
    for i, l in enumerate(s.L.units()):
        rep.expect("square commutes", (i,), s.mu(s.lam(l)), s.nu(s.lam_p(l)))
    for nm, cm in s.side_modules().items():
        rep.merge(validate_crossed(cm, nm), f"1 ({nm}) ")

    uL, uM, uN, uR = s.L.units(), s.M.units(), s.N.units(), s.R.units()
    rep.ran("2")
    for i, l in enumerate(uL):
        for k, r in enumerate(uR):
            lr = s.actL(l, r)
            rep.expect("2", (i, k, "lambda"), s.lam(lr), s.actM(s.lam(l), r))
            rep.expect("2", (i, k, "lambda'"), s.lam_p(lr), s.actN(s.lam_p(l), r))
    # h is stored as a bilinear table, so 3-5 hold by construction
    for ax in ("3", "4", "5"):
        rep.ran(ax)
    h = s.h
    for i, m in enumerate(uM):
        for j, n in enumerate(uN):
            hmn = h.entry(i, j)
            for k, r in enumerate(uR):
                rep.expect("6", (i, j, k, "left"), s.actL(hmn, r), h(s.actM(m, r), n))
                rep.expect("6", (i, j, k, "right"), s.actL(hmn, r), h(m, s.actN(n, r)))
            rep.expect("7", (i, j), s.lam(hmn), s.actM(m, s.nu(n)))
            rep.expect("8", (i, j), s.lam_p(hmn), s.actN(n, s.mu(m)))
    for k, l in enumerate(uL):
        for i, m in enumerate(uM):
            rep.expect("9", (i, k), h(m, s.lam_p(l)), s.actL(l, s.mu(m)))
        for j, n in enumerate(uN):
            rep.expect("10", (k, j), h(s.lam(l), n), s.actL(l, s.nu(n)))
    return rep


# -- quadratic modules -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuadraticModule:
    """``L -delta-> M -boundary-> N`` with N-actions and ``omega: C x C -> L``.

    ``C`` is derived from the pre-crossed module ``boundary`` (see
    :func:`quadratic_space`); ``omega`` is tabulated on C's basis.
    """

    L: FinAlgebra
    M: FinAlgebra
    N: FinAlgebra
    delta: AlgMorphism
    boundary: AlgMorphism
    actL: Action
    actM: Action
    omega: Bilinear
    name: str = ""

    def __post_init__(self):
        if (self.delta.source, self.delta.target) != (self.L, self.M):
            raise ValueError("delta must map L to M")
        if (self.boundary.source, self.boundary.target) != (self.M, self.N):
            raise ValueError("boundary must map M to N")
        if (self.actL.carrier, self.actL.actor) != (self.L, self.N):
            raise ValueError("actL must be an action of N on L")
        if (self.actM.carrier, self.actM.actor) != (self.M, self.N):
            raise ValueError("actM must be an action of N on M")
        if self.omega.target_dim != self.L.dim:
            raise ValueError("omega must take values in L")

    @property
    def field(self):
        return self.N.field

    @cached_property
    def pre(self) -> PreCrossedModule:
        return PreCrossedModule(self.M, self.N, self.boundary, self.actM)

    @cached_property
    def singular(self) -> tuple[FinAlgebra, LinMap]:
        """``(C, projection M -> C)``."""
        return quadratic_space(self.pre)

    def w(self, x, y) -> tuple:
        """Peiffer multiplication ``xy - x . d(y)`` on representatives."""
        return peiffer(self.pre, x, y)

    def omega_on(self, x, y) -> tuple:
        """``omega([x] (x) [y])`` for x, y in M."""
        proj = self.singular[1]
        return self.omega(proj(x), proj(y))

    def with_omega(self, omega: Bilinear) -> "QuadraticModule":
        return QuadraticModule(self.L, self.M, self.N, self.delta, self.boundary, self.actL, self.actM,
                               omega, self.name)


QM3_FORMS = ("signed", "printed")


def validate_quadratic(q: QuadraticModule, qm3: str = "signed") -> ValidationReport:
    """Check QM1-QM4 on basis tuples.

    ``qm3`` selects the action identity checked in QM3:

    ``"signed"``   ``a . d(x) = omega([x](x)[delta a]) - omega([delta a](x)[x])``
    ``"printed"``  ``a . d(x) = omega([delta a](x)[x] + [x](x)[delta a])``

    Applying delta to the printed form forces ``<delta a, x> = 0``, which
    QM2 contradicts whenever that Peiffer element is nonzero; the signed
    form is the one compatible with QM2. Both are offered so the
    discrepancy can be exhibited.
    """
    if qm3 not in QM3_FORMS:
        raise ValueError(f"qm3 must be one of {QM3_FORMS}")
    rep = ValidationReport(f"quadratic module{' ' + q.name if q.name else ''}")
    F = q.field
    for nm, A in (("L", q.L), ("M", q.M), ("N", q.N)):
        rep.merge(validate_algebra(A), f"{nm} ")
    rep.merge(validate_morphism(q.delta), "delta ")
    rep.merge(validate_morphism(q.boundary), "boundary ")
    rep.merge(validate_action(q.actL), "N on L ")
    rep.merge(validate_action(q.actM), "N on M ")

    uL, uM, uN = q.L.units(), q.M.units(), q.N.units()

    # QM1
    rep.ran("QM1 pre-crossed")
    for i, x in enumerate(uM):
        for k, n in enumerate(uN):
            rep.expect("QM1 pre-crossed", (i, k), q.boundary(q.actM(x, n)), q.N.mult(q.boundary(x), n))
    rep.ran("QM1 nil(2)")
    if rep.failed_checks() & {"QM1 pre-crossed"}:
        rep.fail("QM1 nil(2)", (), "skipped: boundary is not pre-crossed")
    else:
        _check_nil2(q.pre, rep)
    rep.ran("QM1 quotient C")
    try:
        C, proj = q.singular
    except AlgebraError as exc:
        rep.fail("QM1 quotient C", (), str(exc))
        return rep
    if (q.omega.left_dim, q.omega.right_dim) != (C.dim, C.dim):
        rep.fail("QM1 quotient C", (), f"omega is tabulated on dim {q.omega.left_dim}, C has dim {C.dim}")
        return rep

    # QM2
    rep.ran("QM2 d.delta = 0")
    for i, a in enumerate(uL):
        rep.expect("QM2 d.delta = 0", (i,), q.boundary(q.delta(a)), q.N.zero())
    rep.ran("QM2 delta.omega = w")
    for i, x in enumerate(uM):
        for j, y in enumerate(uM):
            rep.expect("QM2 delta.omega = w", (i, j), q.delta(q.omega_on(x, y)), q.w(x, y))

    # QM3: equivariance
    rep.ran("QM3 delta equivariant")
    for i, a in enumerate(uL):
        for k, n in enumerate(uN):
            rep.expect("QM3 delta equivariant", (i, k), q.delta(q.actL(a, n)), q.actM(q.delta(a), n))
    rep.ran("QM3 omega equivariant")
    for i, x in enumerate(uM):
        for j, y in enumerate(uM):
            w = q.omega_on(x, y)
            for k, n in enumerate(uN):
                wn = q.actL(w, n)
                rep.expect("QM3 omega equivariant", (i, j, k, "left"), q.omega_on(q.actM(x, n), y), wn)
                rep.expect("QM3 omega equivariant", (i, j, k, "right"), q.omega_on(x, q.actM(y, n)), wn)
    check = f"QM3 action identity ({qm3})"
    rep.ran(check)
    for i, a in enumerate(uL):
        da = q.delta(a)
        for j, x in enumerate(uM):
            lhs = q.actL(a, q.boundary(x))
            if qm3 == "signed":
                rhs = vsub(F, q.omega_on(x, da), q.omega_on(da, x))
            else:
                rhs = tuple(F.norm(s + t) for s, t in zip(q.omega_on(da, x), q.omega_on(x, da)))
            rep.expect(check, (i, j), lhs, rhs)

    # QM4
    rep.ran("QM4")
    for i, a in enumerate(uL):
        for j, b in enumerate(uL):
            rep.expect("QM4", (i, j), q.omega_on(q.delta(a), q.delta(b)), q.L.mult(a, b))
    return rep


def _check_nil2(pre: PreCrossedModule, rep: ValidationReport) -> None:
    units = pre.C.units()
    for i, x in enumerate(units):
        for j, y in enumerate(units):
            p = peiffer(pre, x, y)
            for k, z in enumerate(units):
                t1 = peiffer(pre, p, z)
                if any(t1):
                    rep.fail("QM1 nil(2)", (i, j, k, "<<x,y>,z>"), f"{t1}")
                t2 = peiffer(pre, z, p)
                if any(t2):
                    rep.fail("QM1 nil(2)", (k, i, j, "<x,<y,z>>"), f"{t2}")


# -- homotopy ----------------------------------------------------------------


def _table(entries) -> HomotopyTable:
    out = [HomotopyEntry(0, 0, None, "zero by definition")]
    for deg, Q, note in entries:
        out.append(HomotopyEntry(deg, Q.dim, Q, note))
    out.append(HomotopyEntry(4, 0, None, "zero above degree 3"))
    return HomotopyTable("structure", tuple(out))


def _three_term(d2: LinMap, d1: LinMap, labels) -> HomotopyTable:
    F = d1.field
    n0 = d1.target_dim
    pi1 = QuotientSpace(Subspace.full(F, n0), d1.image())
    pi2 = QuotientSpace(d1.kernel(), d2.image())
    ker2 = d2.kernel()
    pi3 = QuotientSpace(ker2, Subspace.zero(F, d2.source_dim))
    return _table([(1, pi1, labels[0]), (2, pi2, labels[1]), (3, pi3, labels[2])])


def homotopy_two_crossed(t: TwoCrossedModule) -> HomotopyTable:
    """pi_1 = C0/d1 C1, pi_2 = ker d1 / im d2, pi_3 = ker d2."""
    if not (t.d1.map @ t.d2.map).is_zero():
        raise AlgebraError("d1 d2 != 0: homotopy of a non-complex")
    return _three_term(t.d2.map, t.d1.map, ("C0/d1(C1)", "ker d1/im d2", "ker d2"))


def homotopy_quadratic(q: QuadraticModule) -> HomotopyTable:
    """pi_1 = N/d M, pi_2 = ker d / im delta, pi_3 = ker delta."""
    if not (q.boundary.map @ q.delta.map).is_zero():
        raise AlgebraError("d delta != 0: homotopy of a non-complex")
    return _three_term(q.delta.map, q.boundary.map, ("N/d(M)", "ker d/im delta", "ker delta"))


def cone_maps(s: CrossedSquare) -> tuple[LinMap, LinMap]:
    """``(-lam, lam') : L -> M x| N`` and ``mu + nu : M x| N -> R`` as matrices."""
    F = s.field
    dm, dn = s.M.dim, s.N.dim
    d2 = LinMap.from_function(F, s.L.dim, dm + dn,
                              lambda l: tuple(F.norm(-a) for a in s.lam(l)) + s.lam_p(l))
    d1 = LinMap.from_function(F, dm + dn, s.R.dim,
                              lambda v: tuple(F.norm(a + b) for a, b in zip(s.mu(v[:dm]), s.nu(v[dm:]))))
    return d2, d1


def homotopy_square(s: CrossedSquare) -> HomotopyTable:
    """Homology of ``L -> M x| N -> R``."""
    d2, d1 = cone_maps(s)
    if not (d1 @ d2).is_zero():
        raise AlgebraError("square does not commute: mu lam != nu lam'")
    return _three_term(d2, d1, ("R/(mu M + nu N)", "ker(mu+nu)/im(-lam,lam')", "ker(-lam,lam')"))


__all__ = [
    "PreCrossedModule",
    "CrossedModule",
    "TwoCrossedModule",
    "CrossedSquare",
    "QuadraticModule",
    "QM3_FORMS",
    "peiffer",
    "peiffer_elements",
    "triple_peiffer_elements",
    "p2_ideal",
    "p3_ideal",
    "associated_crossed",
    "quadratic_space",
    "descend_action",
    "validate_precrossed",
    "validate_crossed",
    "validate_two_crossed",
    "validate_crossed_square",
    "validate_quadratic",
    "homotopy_two_crossed",
    "homotopy_quadratic",
    "homotopy_square",
    "cone_maps",
]
