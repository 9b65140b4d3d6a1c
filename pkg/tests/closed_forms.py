"""Hand-expanded pairing formulas at levels 2 and 3, used as oracles.

Each generator yields ``(label, raw, closed)`` over Moore basis pairs, where
``raw`` comes from the projector composite in ``quadmod.pairings`` and
``closed`` is the expanded expression written out with faces and
degeneracies only.
"""

from quadmod.exactalg import vcomb, vscale, vsub
from quadmod.pairings import SurjIndex, raw_composite


def _ops(E):
    F = E.field

    def s(n, i, v):
        return E.s(n, i)(v)

    def d(n, i, v):
        return E.d(n, i)(v)

    def add(*vs):
        return vcomb(F, len(vs[0]), [(1, v) for v in vs])

    def sub(u, v):
        return vsub(F, u, v)

    def neg(v):
        return vscale(F, -1, v)

    return s, d, add, sub, neg


def level2(E):
    """The single level-2 pair: ``s1x (s1y - s0y)``."""
    s, _, _, sub, _ = _ops(E)
    m2 = E.levels[2].mult
    NE1 = E.moore.spaces[1].basis
    for x in NE1:
        for y in NE1:
            raw = raw_composite(E, 2, SurjIndex.of(2, 0), SurjIndex.of(2, 1), x, y)
            yield "C_{(0),(1)}", raw, m2(s(1, 1, x), sub(s(1, 1, y), s(1, 0, y)))


def level3(E):
    """All six level-3 pairs, as products in E_3."""
    s, _, add, sub, _ = _ops(E)
    m3 = E.levels[3].mult
    mc = E.moore
    NE1, NE2 = mc.spaces[1].basis, mc.spaces[2].basis

    def S(*i):
        return SurjIndex.of(3, *i)

    for x in NE1:
        sx0, sx1 = s(1, 0, x), s(1, 1, x)
        for y in NE2:
            yield ("C_{(1,0),(2)}", raw_composite(E, 3, S(1, 0), S(2), x, y),
                   m3(sub(s(2, 1, sx0), s(2, 2, sx0)), s(2, 2, y)))
            yield ("C_{(2,0),(1)}", raw_composite(E, 3, S(2, 0), S(1), x, y),
                   m3(sub(s(2, 2, sx0), s(2, 2, sx1)), sub(s(2, 1, y), s(2, 2, y))))
            yield ("C_{(2,1),(0)}", raw_composite(E, 3, S(2, 1), S(0), x, y),
                   m3(s(2, 2, sx1), add(sub(s(2, 0, y), s(2, 1, y)), s(2, 2, y))))
    for x in NE2:
        for y in NE2:
            yield ("C_{(1),(0)}", raw_composite(E, 3, S(1), S(0), x, y),
                   add(m3(s(2, 1, x), sub(s(2, 0, y), s(2, 1, y))), m3(s(2, 2, x), s(2, 2, y))))
            yield ("C_{(2),(0)}", raw_composite(E, 3, S(2), S(0), x, y),
                   m3(s(2, 2, x), s(2, 0, y)))
            yield ("C_{(2),(1)}", raw_composite(E, 3, S(2), S(1), x, y),
                   m3(s(2, 2, x), sub(s(2, 1, y), s(2, 2, y))))


def level3_boundaries(E):
    """``d3`` of each level-3 pair, expanded in E_2."""
    s, d, add, sub, _ = _ops(E)
    m2 = E.levels[2].mult
    d3 = E.d(3, 3)
    mc = E.moore
    NE1, NE2 = mc.spaces[1].basis, mc.spaces[2].basis

    def S(*i):
        return SurjIndex.of(3, *i)

    for x in NE1:
        for y in NE2:
            dy = d(2, 2, y)
            yield ("C_{(1,0),(2)}", d3(raw_composite(E, 3, S(1, 0), S(2), x, y)),
                   m2(sub(s(1, 1, s(0, 0, d(1, 1, x))), s(1, 0, x)), y))
            yield ("C_{(2,0),(1)}", d3(raw_composite(E, 3, S(2, 0), S(1), x, y)),
                   m2(sub(s(1, 0, x), s(1, 1, x)), sub(s(1, 1, dy), y)))
            yield ("C_{(2,1),(0)}", d3(raw_composite(E, 3, S(2, 1), S(0), x, y)),
                   m2(s(1, 1, x), add(sub(s(1, 0, dy), s(1, 1, dy)), y)))
    for x in NE2:
        for y in NE2:
            dx, dy = d(2, 2, x), d(2, 2, y)
            yield ("C_{(1),(0)}", d3(raw_composite(E, 3, S(1), S(0), x, y)),
                   add(sub(m2(s(1, 1, dx), s(1, 0, dy)), m2(s(1, 1, dx), s(1, 1, dy))), m2(x, y)))
            yield ("C_{(2),(0)}", d3(raw_composite(E, 3, S(2), S(0), x, y)),
                   m2(x, s(1, 0, dy)))
            yield ("C_{(2),(1)}", d3(raw_composite(E, 3, S(2), S(1), x, y)),
                   m2(x, sub(s(1, 1, dy), y)))
