import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from saxl.action import (
    ConjugateSpace,
    PointSpace,
    SubsetSpace,
    are_conjugate_in,
    is_primitive,
    normalizer_order,
    orbit,
    stabilizer_of_label,
)
from saxl.group import CapExceeded, SubgroupObject, build_group, membership, subgroup_conjugate
from saxl.perm import Permutation, compose, identity, parse_cycles


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


S5 = build_group([P([[1, 2, 3, 4, 5]], 5), P([[1, 2]], 5)])
A4 = build_group([P([[1, 2, 3]], 4), P([[2, 3, 4]], 4)])


# -- permutations ---------------------------------------------------------


def test_compose_is_left_to_right():
    assert compose(P([[1, 2]], 3), P([[2, 3]], 3)) == P([[1, 3, 2]], 3)


def test_compose_identity_and_inverse():
    g = P([[1, 4], [2, 3, 5]], 5)
    assert compose(g, identity(5)) == g
    assert compose(P([[1, 2, 3]], 3), P([[1, 3, 2]], 3)) == identity(3)
    assert g * ~g == identity(5)


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(identity(3), identity(4))


def test_rejects_non_bijection_naming_point():
    with pytest.raises(ValueError, match="point"):
        Permutation([1, 1, 3])


def test_cycles_round_trip_and_parse():
    g = parse_cycles("(1 3 5)(2 4)", 6)
    assert g.cycles() == [[1, 3, 5], [2, 4]]
    assert Permutation.from_cycles(g.cycles(), 6) == g
    assert g.order() == 6
    assert g.sign() == -1


def test_power_and_conjugate():
    g = P([[1, 2, 3, 4, 5]], 5)
    h = P([[1, 2]], 5)
    assert g**5 == identity(5)
    assert g**-1 == ~g
    assert g.conjugate(h) == ~h * g * h


# -- groups ---------------------------------------------------------------


def test_group_orders():
    assert S5.order == 120
    assert A4.order == 12


def test_order_is_product_of_transversals():
    assert S5.order == math.prod(S5.transversal_sizes)


def test_order_independent_of_generator_order():
    gens = [P([[1, 2, 3, 4, 5, 6]], 6), P([[1, 2]], 6), P([[3, 4, 5]], 6)]
    orders = set()
    rng = random.Random(3)
    for _ in range(5):
        rng.shuffle(gens)
        orders.add(build_group(list(gens)).order)
    assert orders == {720}


def test_membership():
    assert membership(S5, P([[1, 2]], 5))
    assert not membership(A4, P([[1, 2]], 4))
    for g in S5.generators:
        assert S5.contains(g)


def test_subgroup_object_invariants():
    H = SubgroupObject.generated_by(S5, [P([[1, 2, 3]], 5), P([[1, 2]], 5)])
    assert H.order == 6
    assert S5.order % H.order == 0
    elems = set(H.raw_elements)
    for a in H.elements:
        assert (~a)._img in elems
        for b in H.elements:
            assert (a * b)._img in elems
    again = SubgroupObject.generated_by(S5, [P([[1, 3]], 5), P([[2, 3]], 5)])
    assert again == H and hash(again) == hash(H)


def test_subgroup_conjugate():
    A = SubgroupObject.generated_by(S5, [P([[1, 2]], 5)])
    g = P([[2, 3]], 5)
    assert subgroup_conjugate(A, identity(5)) == A
    assert subgroup_conjugate(A, g) == SubgroupObject.generated_by(S5, [P([[1, 3]], 5)])
    h = P([[1, 4, 2], [3, 5]], 5)
    assert subgroup_conjugate(subgroup_conjugate(A, h), ~h) == A


# -- action spaces ----------------------------------------------------------


def test_orbit_on_points():
    G = build_group([P([[1, 2, 3, 4, 5]], 5)])
    space = PointSpace(G)
    assert sorted(orbit(space, list(G.generators), 1)) == [1, 2, 3, 4, 5]


def test_point_stabilizer_order():
    space = PointSpace(S5, 5)
    assert stabilizer_of_label(space, S5).order == 24


def test_orbit_stabilizer_identity_on_conjugate_space():
    seed = SubgroupObject.generated_by(S5, [P([[1, 2, 3, 4, 5]], 5)])
    space = ConjugateSpace(S5, seed)
    assert len(space) * space.stabilizer().order == S5.order
    label = space.labels[3]
    assert len(space) * stabilizer_of_label(space, S5, label).order == S5.order


def test_label_cap_is_an_error():
    seed = SubgroupObject.generated_by(S5, [P([[1, 2]], 5)])
    with pytest.raises(CapExceeded):
        ConjugateSpace(S5, seed, label_cap=5)


def test_normalizer_order_basics():
    A = SubgroupObject.generated_by(S5, [P([[1, 2, 3, 4, 5]], 5)])
    assert normalizer_order(S5, A) == 20
    full = SubgroupObject(S5, [g._img for g in S5.elements()])
    assert normalizer_order(S5, full) == 120


def test_are_conjugate_in_witness():
    A = SubgroupObject.generated_by(S5, [P([[1, 2]], 5)])
    B = SubgroupObject.generated_by(S5, [P([[4, 5]], 5)])
    C = SubgroupObject.generated_by(S5, [P([[1, 2], [3, 4]], 5)])
    assert are_conjugate_in(S5, A, A) is not None
    g = are_conjugate_in(S5, A, B)
    assert subgroup_conjugate(A, g) == B
    assert are_conjugate_in(S5, A, C) is None


def test_is_primitive_small_cases():
    assert is_primitive(PointSpace(S5))
    S4 = build_group([P([[1, 2, 3, 4]], 4), P([[1, 2]], 4)])
    D8 = SubgroupObject.generated_by(S4, [P([[1, 2, 3, 4]], 4), P([[1, 3]], 4)])
    assert is_primitive(ConjugateSpace(S4, D8))
    C4 = build_group([P([[1, 2, 3, 4]], 4)])
    assert not is_primitive(PointSpace(C4))


def test_subset_space_labels():
    space = SubsetSpace(S5, [1, 2])
    assert len(space) == 10
    assert space.kind == "k-subsets"
    assert space.base_label == (1, 2)


# -- right action property --------------------------------------------------

G6 = build_group([P([[1, 2, 3, 4, 5, 6]], 6), P([[1, 2]], 6)])
SPACES = [
    PointSpace(G6),
    SubsetSpace(G6, [1, 2, 4]),
    ConjugateSpace(G6, SubgroupObject.generated_by(G6, [P([[1, 2, 3]], 6), P([[1, 2]], 6)])),
]
_rng = random.Random(11)
_ELEMS = [G6.random_element(_rng) for _ in range(64)]


@settings(max_examples=1000, deadline=None)
@given(
    s=st.integers(0, len(SPACES) - 1),
    i=st.integers(0, 10**6),
    a=st.integers(0, len(_ELEMS) - 1),
    b=st.integers(0, len(_ELEMS) - 1),
)
def test_action_is_a_right_action(s, i, a, b):
    space = SPACES[s]
    label = space.labels[i % len(space)]
    g, h = _ELEMS[a], _ELEMS[b]
    assert space.act(space.act(label, g), h) == space.act(label, compose(g, h))
    assert space.act(label, identity(6)) == label
