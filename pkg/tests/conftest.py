import functools
import sys

import pytest

from quadmod.exactalg import GF, QQ, truncated_polynomial
from quadmod.fixtures import (
    build,
    dold_kan_group_algebra,
    idealsq,
    nerve_of_ideal,
    truncpoly_crossed,
    truncpoly_two_crossed,
    two_crossed_from_crossed,
)

FIELDS = {"Q": QQ, "F7": GF(7)}


@functools.lru_cache(maxsize=None)
def simplicial_catalog(field_name: str = "Q") -> dict:
    F = FIELDS[field_name]
    return {
        "CONST": build("CONST", F),
        "NERVE": build("NERVE", F),
        "NERVE(x^2)": nerve_of_ideal(truncated_polynomial(F, 1, 4), ["x^2"]),
        "DK": build("DK", F),
    }


@functools.lru_cache(maxsize=None)
def two_crossed_catalog(field_name: str = "Q") -> dict:
    F = FIELDS[field_name]
    return {
        "TRUNCPOLY(4)": truncpoly_two_crossed(F, 4),
        "TRUNCPOLY(3)": truncpoly_two_crossed(F, 3),
        "0 -> (x) -> k[x]/x^3": two_crossed_from_crossed(truncpoly_crossed(F, 3)),
    }


@functools.lru_cache(maxsize=None)
def square_catalog(field_name: str = "Q") -> dict:
    F = FIELDS[field_name]
    return {
        "IDEALSQ": idealsq(F),
        "IDEALSQ(x; x^2)": idealsq(F, 4, ("x",), ("x^2",)),
        "IDEALSQ(x; y)": idealsq(F, 3, ("x",), ("y",), nvars=2),
    }


@functools.lru_cache(maxsize=None)
def dk_small(field_name: str = "F7"):
    """DK with a nonzero NE2 and NE3 and a length-3 chain complex, truncated at 3."""
    return dold_kan_group_algebra(FIELDS[field_name], 2, [0, 1, 1], N=3)


@pytest.fixture(params=sorted(FIELDS))
def field(request):
    return FIELDS[request.param]


# -- degenerate structures -------------------------------------------------


def zero_square(F, R=None):
    """L = M = N = 0 over R."""
    from quadmod.exactalg import Action, AlgMorphism, Bilinear, LinMap, zero_algebra
    from quadmod.structures import CrossedSquare

    R = R or truncated_polynomial(F, 1, 3)
    Z = zero_algebra(F, 0)
    z = AlgMorphism(Z, Z, LinMap.zero(F, 0, 0))
    zr = AlgMorphism(Z, R, LinMap.zero(F, 0, R.dim))
    act = Action.zero(Z, R)
    return CrossedSquare(Z, Z, Z, R, z, z, zr, zr, act, act, act, Bilinear.zero(F, 0, 0, 0), "zero square")


def zero_two_crossed(F, C0=None):
    from quadmod.exactalg import Action, AlgMorphism, Bilinear, LinMap, zero_algebra
    from quadmod.structures import TwoCrossedModule

    C0 = C0 or zero_algebra(F, 0)
    Z = zero_algebra(F, 0)
    return TwoCrossedModule(Z, Z, C0, AlgMorphism(Z, Z, LinMap.zero(F, 0, 0)),
                            AlgMorphism(Z, C0, LinMap.zero(F, 0, C0.dim)), Action.zero(Z, C0),
                            Action.zero(Z, C0), Bilinear.zero(F, 0, 0, 0), None, "zero")


def zero_quadratic(F, N=None):
    from quadmod.exactalg import Action, AlgMorphism, Bilinear, LinMap, zero_algebra
    from quadmod.structures import QuadraticModule

    N = N or zero_algebra(F, 0)
    Z = zero_algebra(F, 0)
    return QuadraticModule(Z, Z, N, AlgMorphism(Z, Z, LinMap.zero(F, 0, 0)),
                           AlgMorphism(Z, N, LinMap.zero(F, 0, N.dim)), Action.zero(Z, N),
                           Action.zero(Z, N), Bilinear.zero(F, 0, 0, 0), "zero")


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
