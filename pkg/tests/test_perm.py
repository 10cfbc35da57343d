import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localaction.perm import (
    DegreeLimitError,
    FinitePermGroup,
    PermError,
    action_flags,
    format_cycles,
    group_order,
    orbits,
    parse_cycles,
    perm_isomorphic,
    point_stabilizer,
    subgroup_classes,
    verify_conjugation,
)

from oracles import closure, conjugacy_classes_of_subgroups


def G(domain, *gens):
    return FinitePermGroup.from_cycles(list(domain), list(gens))


def test_orbits_of_named_groups():
    assert orbits(G(["1", "2", "3", "8", "9"], "(1 2 3)(8 9)")) == [("1", "2", "3"), ("8", "9")]
    assert orbits(G("12")) == [("1",), ("2",)]
    assert orbits(G("3456", "(3 4)", "(5 6)")) == [("3", "4"), ("5", "6")]


def test_orders():
    assert group_order(G(["1", "2", "3", "8", "9"], "(1 2 3)(8 9)")) == 6
    assert group_order(G("3456", "(3 4)", "(5 6)")) == 4
    assert group_order(G("123")) == 1
    assert FinitePermGroup.symmetric([str(i) for i in range(12)]).order() == 479001600


def test_degree_bound():
    with pytest.raises(DegreeLimitError):
        group_order(FinitePermGroup.symmetric([str(i) for i in range(13)]))


def test_bad_generator_rejected():
    with pytest.raises(PermError):
        G("123", "(1 4)")
    with pytest.raises(PermError):
        G("123", "(1 1)")


def test_point_stabilizers():
    s3 = FinitePermGroup.symmetric("123")
    stab = point_stabilizer(s3, "1")
    assert stab.order() == 2 and stab.cycles() == ["(2 3)"]
    assert point_stabilizer(G("12"), "1").is_trivial()
    assert point_stabilizer(G("123", "(1 2 3)"), "1").is_trivial()


@pytest.mark.parametrize(
    "group, expected",
    [
        (FinitePermGroup.symmetric("123"), (True, False, True, True)),
        (G("123", "(1 2 3)"), (True, True, False, True)),
        (G("1"), (True, True, False, False)),
    ],
)
def test_action_flags(group, expected):
    f = action_flags(group)
    assert (f.transitive, f.semiregular, f.generated_by_point_stabilizers, f.nontrivial) == expected


def test_perm_isomorphic_examples():
    g1, g2 = G("123", "(1 2)"), G("abc", "(b c)")
    theta = perm_isomorphic(g1, g2)
    assert theta is not None and verify_conjugation(g1, g2, theta)
    assert theta["3"] == "a"
    s = FinitePermGroup.symmetric("1234")
    assert verify_conjugation(s, s, perm_isomorphic(s, s))
    assert perm_isomorphic(G("1234", "(1 2)"), G("1234", "(1 2)(3 4)")) is None


def test_cycle_text_round_trip():
    g = G("abcde", "(a b c)(d e)")
    p = g.generators[0]
    assert parse_cycles(format_cycles(p, g.domain), g.index) == p
    assert format_cycles(tuple(range(3)), ["x", "y", "z"]) == ""


def small_groups():
    return st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.lists(st.permutations(list(range(n))), max_size=3).map(
            lambda gens: FinitePermGroup(tuple(str(i) for i in range(n)), tuple(tuple(g) for g in gens))
        )
    )


@given(small_groups())
@settings(max_examples=60, deadline=None)
def test_orbit_stabilizer_and_refinement(group):
    order = group.order()
    assert order == len(closure(list(group.generators), group.degree)) if group.generators else order == 1
    for x in group.domain:
        stab = group.point_stabilizer(x)
        assert stab.order() * len(group.orbit_of(x)) == order
        for orb in stab.orbits():
            assert set(orb) <= set(group.orbit_of(orb[0]))


@given(small_groups(), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_isomorphism_symmetric_and_verified(group, rng):
    names = [f"p{i}" for i in range(group.degree)]
    rng.shuffle(names)
    renamed = FinitePermGroup.from_cycles(
        names, [format_cycles(g, names) for g in group.generators]
    )
    theta = perm_isomorphic(group, renamed)
    assert theta is not None and verify_conjugation(group, renamed, theta)
    back = perm_isomorphic(renamed, group)
    assert back is not None and verify_conjugation(renamed, group, back)
    inverse = {v: k for k, v in theta.items()}
    assert verify_conjugation(renamed, group, inverse)


def test_subgroup_class_counts(frozen):
    for d, n in frozen["subgroup_classes"].items():
        assert len(subgroup_classes(int(d))) == n
    assert [len(subgroup_classes(d)) for d in (5, 6)] == [19, 56]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_subgroup_classes_against_brute_force(d, frozen):
    subs, classes = conjugacy_classes_of_subgroups(d)
    reps = subgroup_classes(d)
    sym = list(itertools.permutations(range(d)))
    sizes = []
    for h in reps:
        elems = frozenset(h.elements())
        conjugates = set()
        for g in sym:
            inv = tuple(sorted(range(d), key=lambda i: g[i]))
            conjugates.add(frozenset(tuple(g[x[inv[i]]] for i in range(d)) for x in elems))
        sizes.append(len(conjugates))
    # normalizer indices add up to the number of subgroups
    assert sum(sizes) == len(subs) == frozen["subgroup_totals"][str(d)]
    for a, b in itertools.combinations(reps, 2):
        assert a.order() != b.order() or perm_isomorphic(a, b) is None


def test_subgroup_class_bound():
    with pytest.raises(DegreeLimitError):
        subgroup_classes(7)
