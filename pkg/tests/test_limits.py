from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borderhom.abelian import TRIVIAL, FgAbGroup, GroupHom, RationalSpace, Z, Zmod
from borderhom.limits import (
    GroupChain,
    GroupSystem,
    GroupTower,
    Inconclusive,
    direct_limit,
    inverse_limit,
    limit_map,
)


def scalar(k, src=(0,), tgt=(0,)):
    return GroupHom.from_columns(src, tgt, [[k]])


def tower(n, orders, k):
    return GroupTower([orders] * n, [scalar(k, orders, orders)] * (n - 1))


def test_constant_tower_and_chain():
    res = inverse_limit(tower(8, (0,), 1))
    assert res.stabilized and res.group == Z and res.stable_stage == 0
    chain = GroupChain([(0,)] * 5, [scalar(1)] * 4)
    res = direct_limit(chain)
    assert res.stabilized and res.group == Z


def test_multiplication_by_two_never_stabilizes_over_z():
    res = inverse_limit(tower(12, (0,), 2))
    assert not res.stabilized and "no stable image" in res.note
    with pytest.raises(Inconclusive):
        res.require()
    assert not direct_limit(GroupChain([(0,)] * 8, [scalar(2)] * 7)).stabilized


def test_multiplication_by_two_over_q_is_an_isomorphism():
    t = GroupTower([(0,)] * 8, [scalar(2)] * 7, rational=True)
    assert inverse_limit(t).group == RationalSpace(1)
    c = GroupChain([(0,)] * 8, [scalar(2)] * 7, rational=True)
    assert direct_limit(c).group == RationalSpace(1)


def test_torsion_tower_with_doubling_dies():
    res = inverse_limit(tower(8, (4,), 2))
    assert res.stabilized and res.group == TRIVIAL


def test_needs_two_windows_plus_one_stages():
    assert not inverse_limit(tower(6, (0,), 1), window=3).stabilized
    assert inverse_limit(tower(7, (0,), 1), window=3).stabilized
    assert inverse_limit(tower(3, (0,), 1), window=1).stabilized


def test_late_stabilization_records_stage():
    # Z^2 at stage 0, then Z onward; the projection picks the first summand
    stages = [(0, 0)] + [(0,)] * 8
    first = GroupHom.from_columns((0,), (0, 0), [[1, 0]])
    t = GroupTower(stages, [first] + [scalar(1)] * 7)
    res = inverse_limit(t)
    assert res.stabilized and res.group == Z
    chain = GroupChain([(2,), (0,)] + [(0,)] * 6, [GroupHom.zero((2,), (0,))] + [scalar(1)] * 6)
    res = direct_limit(chain)
    assert res.group == Z and res.stable_stage == 1


def test_system_validation():
    with pytest.raises(ValueError):
        GroupSystem("sideways", [(0,)], [])
    with pytest.raises(ValueError):
        GroupTower([(0,), (0,)], [])
    with pytest.raises(ValueError):
        GroupTower([(0,), (2,)], [scalar(1)])
    with pytest.raises(ValueError):
        inverse_limit(tower(5, (0,), 1), window=0)
    with pytest.raises(ValueError):
        direct_limit(tower(5, (0,), 1))


def test_fold_map_on_limits():
    # two ends mapped onto one: stagewise [[1, 1]]
    src = inverse_limit(GroupTower([(0, 0)] * 8, [GroupHom.identity((0, 0))] * 7))
    tgt = inverse_limit(tower(8, (0,), 1))
    fold = GroupHom.from_columns((0, 0), (0,), [[1], [1]])
    h = limit_map(lambda k: fold, lambda k: k, src, tgt)
    assert h == fold


def test_limit_map_detects_non_commuting_stagewise_maps():
    src = inverse_limit(tower(8, (0,), 1))
    tgt = inverse_limit(tower(8, (0,), 1))
    with pytest.raises(ValueError):
        limit_map(lambda k: scalar(k + 1), lambda k: k, src, tgt)


def test_limit_map_on_chains_and_rational_refusal():
    c = direct_limit(GroupChain([(0,)] * 6, [scalar(1)] * 5))
    h = limit_map(lambda k: scalar(3), lambda k: k, c, c)
    assert h == scalar(3)
    q = direct_limit(GroupChain([(0,)] * 6, [scalar(1)] * 5, rational=True))
    with pytest.raises(Inconclusive):
        limit_map(lambda k: scalar(1), lambda k: k, q, q)


def test_element_transport_round_trip():
    res = inverse_limit(GroupTower([(6, 0)] * 9, [GroupHom.identity((6, 0))] * 8))
    assert res.group == FgAbGroup(1, (6,))
    for k in range(res.stable_stage, res.stable_stage + res.window + 1):
        for e in ([1, 0], [0, 1], [5, -2]):
            vec = res.element_at(e, k)
            assert res.coords_of(vec, k) == [e[0] % 6, e[1]]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(2, 12))
def test_cyclic_towers_with_scalar_maps(k, m):
    """Z/m with multiplication by k: the limit is the part where k acts invertibly."""
    res = inverse_limit(tower(14, (m,), k))
    assert res.stabilized
    # oracle: the eventual image k^j Z/m has order m / gcd(m, k^j) for large j
    stable_order = m // gcd(m, k ** 10)
    assert res.group == Zmod(stable_order)
