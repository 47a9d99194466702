import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ambix.catalog import make_group
from ambix.core import ambiguity_index, equipped
from ambix.hurwitz import (
    BudgetExceeded,
    HurwitzTuple,
    braid_orbits,
    enumerate_tuples,
    grow_schedule,
    orbit_report,
    raw_tuple_count,
    stabilization_scan,
)


def _eg(spec, sel):
    return equipped(make_group(spec), sel, spec)


@pytest.fixture(scope="module")
def s3():
    return _eg("sym:3", ["cycles:2"])


@pytest.fixture(scope="module")
def v4():
    return _eg("elem_abelian:2^2", ["all"])


def test_v4_tuple_count(v4):
    rep = orbit_report(v4, (2, 2, 2))
    assert rep.tuples == 90 and rep.orbits == 1


def test_s3_against_brute_force(s3):
    G = s3.group
    T = G.table()
    trans = [T.index[x] for x in s3.classes[0].elements]
    brute = []
    for t in itertools.product(trans, repeat=4):
        ht = HurwitzTuple(t, T)
        if ht.product() == 0 and G.subgroup(ht.elements()).order == 6:
            brute.append(t)
    assert sorted(brute) == enumerate_tuples(s3, (4,))
    assert len(brute) == 24
    assert orbit_report(s3, (4,)).orbits == 1


def test_single_entry_is_empty(s3):
    assert enumerate_tuples(s3, (1,)) == []


def test_raw_count():
    assert raw_tuple_count([3], [4]) == 81
    assert raw_tuple_count([1, 2], [1, 1]) == 4


def test_tau_validation(s3):
    with pytest.raises(ValueError):
        enumerate_tuples(s3, (1, 1))
    with pytest.raises(ValueError):
        enumerate_tuples(s3, (0,))


@pytest.mark.parametrize(
    "spec, tau",
    [("elem_abelian:2^2", (2, 2, 2)), ("elem_abelian:2^2", (4, 2, 0)), ("cyclic:6", 2), ("elem_abelian:3^2", 1),
     ("elem_abelian:2^3", 1)],
)
def test_abelian_single_orbit(spec, tau):
    eg = _eg(spec, ["all"])
    if isinstance(tau, int):
        tau = (tau,) * len(eg.classes)
    rep = orbit_report(eg, tau)
    assert rep.tuples > 0 and rep.orbits == 1


def test_s3_scan_stabilizes_at_one(s3):
    res = stabilization_scan(s3, [(4,), (6,), (8,)], reference=1)
    assert res.stabilized and res.value == 1 and res.verdict == "agrees"


@pytest.mark.parametrize("spec, sel", [("quaternion:8", ["class:2", "class:3"]), ("dihedral:4", ["class:2", "class:3"])])
def test_small_2_groups_match_engine(spec, sel):
    eg = _eg(spec, sel)
    a = ambiguity_index(eg)[0]
    res = stabilization_scan(eg, [(2, 2), (4, 4)], reference=a)
    assert res.verdict in ("agrees", "inconclusive")
    assert res.value == 1 == a


def test_sym4_three_and_four_cycles_two_orbits():
    eg = _eg("sym:4", ["cycles:3", "cycles:4"])
    a = ambiguity_index(eg)[0]
    pos3 = eg.labels.index("cycles:3")
    sched = [(2, 2), tuple(4 if i == pos3 else 2 for i in range(2))]
    res = stabilization_scan(eg, sched, reference=a)
    assert a == 2 and res.value == 2 and not res.contradicts_reference


def test_conjugation_quotient_never_increases(s3):
    plain = orbit_report(s3, (6,))
    quot = orbit_report(s3, (6,), conjugation=True)
    assert quot.orbits <= plain.orbits


def test_budget_gives_partial(s3):
    res = stabilization_scan(s3, [(4,), (6,), (30,)], budget=1000)
    assert res.partial and res.rows[-1].partial
    assert res.rows[-1].note
    with pytest.raises(BudgetExceeded):
        enumerate_tuples(s3, (30,), budget=1000)


def test_grow_schedule():
    assert grow_schedule((2, 0, 3), 2) == [(2, 0, 3), (4, 0, 5), (6, 0, 7)]


def test_scan_skips_empty_rows(s3):
    res = stabilization_scan(s3, [(1,), (4,), (6,)])
    assert res.rows[0].tuples == 0 and res.stabilized


def test_braid_orbits_rejects_unclosed_set(s3):
    tuples = enumerate_tuples(s3, (4,))
    with pytest.raises(ValueError):
        braid_orbits(s3, tuples[:3], (4,))


@pytest.fixture(scope="module")
def s4_pool():
    eg = _eg("sym:4", ["cycles:2", "cycles:3"])
    return eg, enumerate_tuples(eg, (2, 2))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_moves_preserve_invariants(s4_pool, data):
    eg, pool = s4_pool
    T = eg.group.table()
    t = HurwitzTuple(data.draw(st.sampled_from(pool)), T)
    i = data.draw(st.integers(0, len(t.indices) - 2))
    u = t.move(i)
    assert u.product() == t.product() == 0
    assert eg.group.subgroup(u.elements()).order == eg.group.order
    classes = eg.classes
    typ = lambda h: sorted(next(j for j, c in enumerate(classes) if x in c.elements) for x in h.elements())
    assert typ(u) == typ(t)
    assert u.unmove(i) == t
    assert t.unmove(i).move(i) == t


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_orbit_count_independent_of_order(s4_pool, seed):
    eg, pool = s4_pool
    shuffled = list(pool)
    random.Random(seed).shuffle(shuffled)
    a = braid_orbits(eg, pool, (2, 2))
    b = braid_orbits(eg, shuffled, (2, 2))
    assert a.orbits == b.orbits and a.orbit_sizes == b.orbit_sizes
