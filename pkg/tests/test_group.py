import random

import pytest

from irrbase.group import (
    GroupKey,
    LimitExceeded,
    alternating_group,
    equals,
    from_generators,
    group_key,
    intersect,
    read_generator_file,
    subgroup_of,
    symmetric_group,
    trivial_group,
)
from irrbase.perm import DegreeMismatchError, Permutation, compose, parse_cycles

from conftest import brute_closure


def s4():
    return from_generators([parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)], 4)


def test_from_generators_s4():
    assert s4().order() == 24


def test_from_generators_empty():
    g = from_generators([], 3)
    assert g.order() == 1
    assert g.elements() == [Permutation.identity(3)]


def test_from_generators_closure_oracle():
    gens = [parse_cycles("(1 2 3)", 5), parse_cycles("(1 2)(4 5)", 5)]
    g = from_generators(gens, 5)
    # independent answer: brute-force closure (the parity of the 3-point part
    # forces the (4 5) part, so this is a diagonal copy of S_3)
    assert g.order() == len(brute_closure(gens, 5)) == 6


def test_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        from_generators([parse_cycles("(1 2)", 3)], 4)


def test_order_cyclic():
    assert from_generators([parse_cycles("(1 2 3 4 5)", 5)], 5).order() == 5


def test_contains():
    c4 = from_generators([parse_cycles("(1 2 3 4)", 4)], 4)
    assert c4.contains(parse_cycles("(1 3)(2 4)", 4))
    c3 = from_generators([parse_cycles("(1 2 3)", 3)], 3)
    assert not c3.contains(parse_cycles("(1 2)", 3))


def test_contains_random_products():
    g = s4()
    rng = random.Random(2)
    word = Permutation.identity(4)
    for _ in range(10):
        word = compose(word, g.generators[rng.randrange(len(g.generators))])
    assert g.contains(word)


def test_elements():
    c3 = from_generators([parse_cycles("(1 2 3)", 3)], 3)
    els = c3.elements()
    assert len(els) == 3
    full = s4().elements()
    assert len(full) == 24 and len(set(full)) == 24


def test_elements_limit():
    with pytest.raises(LimitExceeded, match="group too large"):
        s4().elements(limit=10)


def test_point_stabilizer():
    assert s4().point_stabilizer(4).order() == 6
    c5 = from_generators([parse_cycles("(1 2 3 4 5)", 5)], 5)
    assert c5.point_stabilizer(1).order() == 1
    assert alternating_group(5).point_stabilizer(1).order() == 12


def test_orbit_stabilizer_random():
    rng = random.Random(13)
    els7 = symmetric_group(7).elements()
    for _ in range(10):
        gens = [els7[rng.randrange(5040)] for _ in range(2)]
        g = from_generators(gens, 7)
        pt = rng.randint(1, 7)
        assert g.order() == len(g.orbit(pt)) * g.point_stabilizer(pt).order()


def test_conjugate_group():
    c3 = from_generators([parse_cycles("(1 2 3)", 4)], 4)
    moved = c3.conjugate(parse_cycles("(3 4)", 4))
    assert equals(moved, from_generators([parse_cycles("(1 2 4)", 4)], 4))
    assert equals(c3.conjugate(Permutation.identity(4)), c3)


def test_conjugate_preserves_order_random():
    rng = random.Random(17)
    els = symmetric_group(6).elements()
    for _ in range(10):
        g = from_generators([els[rng.randrange(720)], els[rng.randrange(720)]], 6)
        x = els[rng.randrange(720)]
        assert g.conjugate(x).order() == g.order()


def test_intersect_trivial():
    a = from_generators([parse_cycles("(1 2)", 3)], 3)
    b = from_generators([parse_cycles("(1 3)", 3)], 3)
    assert intersect(a, b).order() == 1


def test_intersect_example():
    c4 = from_generators([parse_cycles("(1 2 3 4)", 4)], 4)
    klein = from_generators(
        [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)], 4
    )
    inter = intersect(c4, klein)
    # oracle: intersect the two element sets directly
    expected = set(c4.elements()) & set(klein.elements())
    assert set(inter.elements()) == expected
    assert inter.order() == 2
    assert parse_cycles("(1 3)(2 4)", 4) in inter


def test_intersect_self():
    g = s4()
    assert equals(intersect(g, g), g)


def test_intersect_limit():
    with pytest.raises(LimitExceeded, match="too large"):
        intersect(symmetric_group(8), symmetric_group(8), limit=100)


def test_intersect_conjugation_compatible():
    rng = random.Random(19)
    els = symmetric_group(6).elements()
    for _ in range(5):
        g1 = from_generators([els[rng.randrange(720)], els[rng.randrange(720)]], 6)
        g2 = from_generators([els[rng.randrange(720)], els[rng.randrange(720)]], 6)
        x = els[rng.randrange(720)]
        lhs = intersect(g1, g2).conjugate(x)
        rhs = intersect(g1.conjugate(x), g2.conjugate(x))
        assert equals(lhs, rhs)


def test_equals_and_subgroup():
    a = from_generators([parse_cycles("(1 2 3)", 4)], 4)
    b = from_generators([parse_cycles("(1 3 2)", 4)], 4)
    assert equals(a, b)
    assert subgroup_of(from_generators([parse_cycles("(1 2)", 4)], 4), s4())
    assert not subgroup_of(s4(), from_generators([parse_cycles("(1 2)", 4)], 4))


def test_group_key_basic():
    a = from_generators([parse_cycles("(1 2 3)", 4)], 4)
    b = from_generators([parse_cycles("(1 3 2)", 4)], 4)
    assert group_key(a) == group_key(b)
    assert group_key(trivial_group(4)) != group_key(
        from_generators([parse_cycles("(1 2)", 4)], 4)
    )


def test_group_key_random_conjugates():
    rng = random.Random(23)
    els6 = symmetric_group(6).elements()
    base = from_generators([parse_cycles("(1 2 3)", 6), parse_cycles("(1 2)", 6)], 6)
    groups = [base.conjugate(els6[rng.randrange(720)]) for _ in range(100)]
    keys = [group_key(g) for g in groups]
    for i in range(0, 100, 7):
        for j in range(0, 100, 11):
            assert (keys[i] == keys[j]) == equals(groups[i], groups[j])


def test_key_is_dataclass():
    k = group_key(trivial_group(2))
    assert isinstance(k, GroupKey) and k.order == 1


def test_symmetric_alternating_orders():
    assert symmetric_group(7).order() == 5040
    assert alternating_group(7).order() == 2520
    assert alternating_group(6).order() == 360


def test_base_points_ascend():
    for g in (s4(), symmetric_group(6), alternating_group(6)):
        b = g.base()
        assert b == sorted(b)


def test_bsgs_vs_closure_random_subgroups():
    rng = random.Random(29)
    els7 = symmetric_group(7).elements()
    for _ in range(10):
        gens = [els7[rng.randrange(5040)] for _ in range(rng.randint(1, 3))]
        g = from_generators(gens, 7)
        assert g.order() == len(brute_closure(gens, 7))


def test_read_generator_file():
    degree, gens = read_generator_file("5\n(1 2 3)\n(4 5)\n")
    assert degree == 5
    assert gens == [parse_cycles("(1 2 3)", 5), parse_cycles("(4 5)", 5)]
    with pytest.raises(ValueError):
        read_generator_file("")
    with pytest.raises(ValueError):
        read_generator_file("abc\n(1 2)")
