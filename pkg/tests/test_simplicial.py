import pytest

from quadmod.exactalg import GF, QQ, LinMap, monomial_ideal, truncated_polynomial, zero_algebra
from quadmod.fixtures import build, dold_kan_linear, nerve_of_ideal
from quadmod.simplicial import (
    MAX_TRUNCATION,
    TruncationError,
    TruncSimplicialAlgebra,
    constant_simplicial,
    degenerate_ideal,
    homotopy_simplicial,
    kernel_K,
    validate_simplicial,
)

import oracles
from conftest import simplicial_catalog


@pytest.mark.parametrize("field_name", ["Q", "F7"])
def test_catalog_fixtures_validate(field_name):
    for name, E in simplicial_catalog(field_name).items():
        rep = validate_simplicial(E)
        assert rep.ok, f"{name}: {rep.summary()}"


def _replace_degeneracy(E, key, f):
    degens = dict(E.degens)
    degens[key] = f
    return TruncSimplicialAlgebra(E.levels, E.faces, degens, E.name)


def test_corrupted_degeneracy_names_witness():
    E = build("NERVE", QQ, truncation=3)
    s = E.s(1, 0)
    rows = [list(r) for r in s.rows]
    rows[0][0] += 1
    bad = _replace_degeneracy(E, (1, 0), LinMap.from_rows(QQ, rows, s.source_dim))
    rep = validate_simplicial(bad)
    assert not rep.ok
    checks = rep.failed_checks()
    assert "ds" in checks
    assert any(v.check == "ds" and v.witness[0] == 1 and v.witness[2] == 0 for v in rep.violations)


def test_moore_boundaries_square_to_zero():
    for E in simplicial_catalog("F7").values():
        mc = E.moore
        for n in range(2, E.N + 1):
            assert (mc.boundaries[n - 1] @ mc.boundaries[n]).is_zero()
            # on ambient vectors too
            for v in mc.spaces[n].basis:
                assert not any(E.d(n - 1, n - 1)(E.d(n, n)(v)))


def test_moore_matches_independent_kernel():
    for E in simplicial_catalog("Q").values():
        F = E.field
        for n in range(1, E.N + 1):
            dim = E.levels[n].dim
            stacked = [r for i in range(n) for r in E.d(n, i).rows]
            expected = dim - oracles.rank(F, stacked, dim) if stacked else dim
            assert E.moore.spaces[n].dim == expected


def test_constant_fixture():
    A = truncated_polynomial(QQ, 1, 2)
    E = constant_simplicial(A, 4)
    assert validate_simplicial(E).ok
    assert E.moore.dims() == [2, 0, 0, 0, 0]
    assert degenerate_ideal(E, 1).dim == 2
    assert homotopy_simplicial(E).dims() == {0: 2, 1: 0, 2: 0, 3: 0, 4: None}


def test_nerve_fixture():
    R = truncated_polynomial(QQ, 1, 3)
    E = nerve_of_ideal(R, ["x"])
    assert E.moore.dims()[:3] == [3, 2, 0]
    assert E.moore.length == 1
    assert degenerate_ideal(E, 2).dim == E.levels[2].dim
    pi = homotopy_simplicial(E)
    assert pi[0].dim == 1 and pi[1].dim == 0


def test_degenerate_ideal_is_spanned_not_multiplied():
    # zero multiplication: D_n is still the span of the degenerate elements
    E = constant_simplicial(zero_algebra(QQ, 2), 3)
    for n in (1, 2, 3):
        assert degenerate_ideal(E, n).dim == 2


def test_zero_levels_have_zero_degenerate_ideal():
    Z0 = zero_algebra(QQ, 0)
    E0 = constant_simplicial(Z0, 2)
    assert degenerate_ideal(E0, 2).dim == 0
    assert kernel_K(E0, 2, [0]).dim == 0


def test_kernel_K_full_index_set_is_moore():
    E = build("DK", GF(7), truncation=3)
    for n in (1, 2, 3):
        assert kernel_K(E, n, range(n)) == E.moore.spaces[n]


def test_kernel_K_on_nerve_level_one():
    R = truncated_polynomial(QQ, 1, 3)
    E = nerve_of_ideal(R, ["x"])
    K0 = kernel_K(E, 1, [0])
    assert K0.dim == monomial_ideal(R, ["x"]).dim
    assert K0.intersect(E.s(0, 0).image()).dim == 0


def test_kernel_K_rejects_bad_indices():
    E = build("CONST", QQ)
    with pytest.raises(ValueError):
        kernel_K(E, 2, [])
    with pytest.raises(ValueError):
        kernel_K(E, 2, [3])


@pytest.mark.parametrize("ranks,diffs", [
    ([1, 2, 1], {1: [[1, 0]], 2: [[0], [0]]}),
    ([1, 2, 1], {1: [[1, 0]], 2: [[0], [1]]}),
    ([0, 1, 1], {2: [[0]]}),
    ([2, 1], {1: [[1], [0]]}),
    ([1, 1, 1, 1], {1: [[1]], 2: [[0]], 3: [[1]]}),
])
def test_dold_kan_linear_homotopy_is_source_homology(ranks, diffs):
    F = QQ
    E = dold_kan_linear(F, ranks, diffs, N=4)
    assert validate_simplicial(E).ok
    assert E.moore.dims()[:len(ranks)] == ranks

    def cols(k):
        if k not in diffs or not 0 < k < len(ranks):
            return []
        return [list(c) for c in zip(*diffs[k])]

    pi = homotopy_simplicial(E)
    for n in range(len(ranks)):
        if n >= E.N:
            continue
        out_dim = ranks[n - 1] if n >= 1 else 0
        in_dim = ranks[n + 1] if n + 1 < len(ranks) else 0
        expected = oracles.homology_dims(F, cols(n + 1), cols(n), ranks[n], in_dim, out_dim)
        assert pi[n].dim == expected, (ranks, n)


def test_dk_group_algebra_regression():
    E = build("DK", GF(7))
    assert [A.dim for A in E.levels] == [1, 2, 4, 8, 16]
    assert E.moore.dims() == [1, 1, 1, 1, 1]


def test_truncation_boundaries():
    E = build("NERVE", QQ, truncation=2)
    assert homotopy_simplicial(E)[2].dim is None
    with pytest.raises(TruncationError):
        E.s(2, 0)
    with pytest.raises(TruncationError):
        E.require(3)
    with pytest.raises(ValueError):
        build("CONST", QQ, truncation=MAX_TRUNCATION + 1)
