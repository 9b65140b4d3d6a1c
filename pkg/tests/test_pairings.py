from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadmod.exactalg import vadd, vscale
from quadmod.pairings import (
    MAX_N,
    PairIndex,
    SurjIndex,
    boundary_decomposition_check,
    c_pairing,
    gen_P,
    gen_S,
    ideal_In,
    level3_boundary_forms,
    lt_S,
    pair_of,
    projector,
)

import closed_forms
from conftest import dk_small, simplicial_catalog

PRINTED_P3 = [((1, 0), (2,)), ((2, 0), (1,)), ((2, 1), (0,)), ((2,), (0,)), ((2,), (1,)), ((1,), (0,))]


def unordered(pairs):
    return {frozenset((p.alpha.indices, p.beta.indices)) for p in pairs}


# -- index combinatorics -------------------------------------------------


@pytest.mark.parametrize("n", range(MAX_N + 1))
def test_gen_S_size_and_order(n):
    S = gen_S(n)
    assert len(S) == 2 ** n == len(set(S))
    for a in S:
        assert not lt_S(a, a)
    for a, b in permutations(S, 2):
        assert lt_S(a, b) != lt_S(b, a)
    for a, b, c in permutations(S, 3):
        if lt_S(a, b) and lt_S(b, c):
            assert lt_S(a, c)
    assert all(lt_S(a, b) for a, b in zip(S, S[1:]))


def test_gen_S_small_cases():
    assert [s.indices for s in gen_S(0)] == [()]
    assert {s.indices for s in gen_S(2)} == {(), (0,), (1,), (1, 0)}
    assert [s.indices for s in gen_S(3) if s.r == 3] == [(2, 1, 0)]


def test_lt_S_examples():
    one, zero = SurjIndex.of(2, 1), SurjIndex.of(2, 0)
    assert lt_S(one, zero) and not lt_S(zero, one)
    empty = SurjIndex(3, ())
    assert all(lt_S(empty, a) for a in gen_S(3) if a.r)


def test_surj_index_validation():
    with pytest.raises(ValueError):
        SurjIndex(3, (0, 1))
    with pytest.raises(ValueError):
        SurjIndex(2, (2,))
    with pytest.raises(ValueError):
        PairIndex(SurjIndex.of(2, 0), SurjIndex.of(2, 0))


@pytest.mark.parametrize("n", range(MAX_N + 1))
def test_gen_P_matches_brute_force(n):
    brute = set()
    for a in gen_S(n):
        for b in gen_S(n):
            if a.r and b.r and not set(a.indices) & set(b.indices) and lt_S(b, a):
                brute.add((a, b))
    assert {(p.alpha, p.beta) for p in gen_P(n)} == brute


def test_gen_P_small_cases():
    assert gen_P(1) == []
    assert [(p.alpha.indices, p.beta.indices) for p in gen_P(2)] == [((0,), (1,))]
    assert unordered(gen_P(3)) == {frozenset(p) for p in PRINTED_P3}


# -- pairings ------------------------------------------------------------


def test_projector_lands_in_moore():
    E = simplicial_catalog("F7")["DK"]
    for n in (1, 2, 3):
        p = projector(E, n)
        for v in E.levels[n].units():
            assert E.moore.spaces[n].contains(p(v))


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_c_pairing_bilinear(data):
    E = dk_small()
    F = E.field
    n = data.draw(st.sampled_from([2, 3]))
    pair = data.draw(st.sampled_from(gen_P(n)))
    X = E.moore.spaces[n - pair.alpha.r]
    Y = E.moore.spaces[n - pair.beta.r]

    def vec(S):
        coeffs = data.draw(st.lists(st.integers(0, 6), min_size=S.dim, max_size=S.dim))
        return S.from_coords(tuple(F(c) for c in coeffs))

    x, x2, y = vec(X), vec(X), vec(Y)
    c = F(data.draw(st.integers(0, 6)))
    lhs = c_pairing(E, n, pair, vadd(F, x, vscale(F, c, x2)), y)
    rhs = vadd(F, c_pairing(E, n, pair, x, y), vscale(F, c, c_pairing(E, n, pair, x2, y)))
    assert lhs == rhs
    assert not any(c_pairing(E, n, pair, X.from_coords((F.zero,) * X.dim), y))


def test_c_pairing_rejects_non_moore_arguments():
    E = simplicial_catalog("F7")["DK"]
    pair = gen_P(2)[0]
    bad = E.levels[1].unit(0)
    assert not E.moore.spaces[1].contains(bad)
    with pytest.raises(ValueError):
        c_pairing(E, 2, pair, bad, bad)


@pytest.mark.parametrize("fixture", ["DK", "dk011"])
def test_level3_closed_forms(fixture):
    E = dk_small() if fixture == "dk011" else simplicial_catalog("F7")["DK"]
    seen = set()
    for label, raw, closed in closed_forms.level3(E):
        assert raw == closed, label
        seen.add(label)
    assert len(seen) == 6
    for label, raw, closed in closed_forms.level3_boundaries(E):
        assert raw == closed, label
        assert E.moore.image(3).contains(raw)


def test_level2_closed_form_has_opposite_sign():
    # the raw composite is -s1x(s1y - s0y); the expanded form differs by sign
    E = simplicial_catalog("F7")["DK"]
    F = E.field
    rows = list(closed_forms.level2(E))
    assert rows and any(any(raw) for _, raw, _ in rows)
    for _, raw, closed in rows:
        assert raw == vscale(F, -1, closed)


def test_packaged_boundary_forms_agree():
    E = dk_small()
    img = E.moore.image(3)
    for label, rows in level3_boundary_forms(E).items():
        for closed, raw in rows:
            assert closed == raw, label
            assert img.contains(closed)


# -- ideals and decompositions ---------------------------------------------


def test_ideal_In_examples():
    cat = simplicial_catalog("F7")
    assert ideal_In(cat["CONST"], 2).dim == 0
    assert ideal_In(cat["NERVE"], 3).dim == 0  # NE_2 = 0
    assert ideal_In(cat["DK"], 2).dim == 1
    assert ideal_In(dk_small(), 3).dim == 45


@pytest.mark.parametrize("name", ["NERVE", "NERVE(x^2)", "DK"])
def test_decomposition_level2(name):
    E = simplicial_catalog("F7")[name]
    rep = boundary_decomposition_check(E, 2)
    assert rep.hypothesis_En_eq_Dn
    assert rep.verdicts["d(NE) = d(I)"] and rep.verdicts["d(NE) = sum KK"]
    assert rep.image_NE == rep.image_I == rep.sum_KK


def test_decomposition_constant_is_zero():
    E = simplicial_catalog("F7")["CONST"]
    for n in (2, 3, 4):
        rep = boundary_decomposition_check(E, n)
        assert rep.image_NE.dim == rep.image_I.dim == rep.sum_KK.dim == 0
        assert rep.ok


@pytest.mark.parametrize("fixture", ["DK", "dk011"])
def test_level3_memberships(fixture):
    E = dk_small() if fixture == "dk011" else simplicial_catalog("F7")["DK"]
    rep = boundary_decomposition_check(E, 3)
    assert len(rep.memberships) == 6 and all(rep.memberships.values())
    assert rep.ok


def test_inclusion_up_to_level4():
    for name, E in simplicial_catalog("F7").items():
        for n in range(2, E.N + 1):
            assert boundary_decomposition_check(E, n).verdicts["sum KK <= d(NE)"], (name, n)


def test_pair_of_orients_by_order():
    p = pair_of(3, (2, 1), (0,))
    assert lt_S(p.beta, p.alpha)
    assert {p.alpha.indices, p.beta.indices} == {(2, 1), (0,)}


def test_decomposition_rejects_bad_level():
    with pytest.raises(ValueError):
        boundary_decomposition_check(simplicial_catalog("F7")["DK"], 1)
