import pytest

from saxl.closed_forms import lr_eps_params
from saxl.group import CapExceeded, SubgroupObject, build_group
from saxl.lattice import IncidenceMatrix, all_subgroups, eta, invert_incidence, linear_extension
from saxl.numtheory import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_prime_power,
    mobius,
    multiplicative_order,
    zsigmondy_exception,
    zsigmondy_primitive_prime,
)
from saxl.perm import Permutation


def P(cycles, n):
    return Permutation.from_cycles(cycles, n)


# -- number theory ------------------------------------------------------------


def test_mobius_values():
    assert mobius(1) == 1
    assert mobius(12) == 0
    assert mobius(30) == -1


def test_mobius_and_phi_divisor_sums():
    for n in range(1, 10**4 + 1):
        ds = divisors(n)
        assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)
        assert sum(euler_phi(d) for d in ds) == n


def test_small_values():
    assert euler_phi(12) == 4
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert multiplicative_order(2, 5) == 4
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)
    assert factorize(2**32 + 1) == {641: 1, 6700417: 1}


def test_multiplicative_order_needs_coprime():
    with pytest.raises(ValueError):
        multiplicative_order(6, 9)


def test_is_prime_matches_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert all(is_prime(n) == slow(n) for n in range(5000))


def test_zsigmondy_examples():
    assert zsigmondy_primitive_prime(2, 6, 1) is None
    assert zsigmondy_primitive_prime(2, 3, -1) is None
    assert zsigmondy_primitive_prime(2, 4, 1) == 5


def test_zsigmondy_absent_exactly_at_exceptions():
    for q in range(2, 33):
        if not is_prime_power(q):
            continue
        for n in range(2, 14):
            for eps in (1, -1):
                s = zsigmondy_primitive_prime(q, n, eps)
                assert (s is None) == zsigmondy_exception(q, n, eps), (q, n, eps)
                if s is not None:
                    assert (q**n - eps) % s == 0
                    assert all((q**j - eps) % s for j in range(1, n))


def test_singer_normaliser_order_never_prime_power_outside_exceptions():
    for r in (3, 5, 7, 11, 13):
        for q in range(2, 33):
            if not is_prime_power(q):
                continue
            for eps in (1, -1):
                a = lr_eps_params(r, q, eps).a_reduced
                if is_prime_power(a * r):
                    assert zsigmondy_exception(q, r, eps), (r, q, eps)


# -- subgroup classes ---------------------------------------------------------


def _summary(table):
    return [(c.order, c.size, c.normalizer_order) for c in table]


def test_s3_subgroup_classes():
    S3 = build_group([P([[1, 2, 3]], 3), P([[1, 2]], 3)])
    t = all_subgroups(S3)
    assert _summary(t) == [(1, 1, 6), (2, 3, 2), (3, 1, 6), (6, 1, 6)]
    assert t.total == 6


def test_cyclic_group_lattice_is_divisor_lattice():
    Z6 = build_group([P([[1, 2, 3, 4, 5, 6]], 6)])
    t = all_subgroups(Z6)
    assert [c.order for c in t] == [1, 2, 3, 6]
    assert all(c.size == 1 for c in t)


def test_class_table_invariants_and_cyclic_count():
    # S4 has 30 subgroups in 11 classes
    S4 = build_group([P([[1, 2, 3, 4]], 4), P([[1, 2]], 4)])
    t = all_subgroups(S4)
    assert len(t) == 11 and t.total == 30
    H = t.ambient
    for c in t:
        assert c.size * c.normalizer_order == H.order
    cyclic = {SubgroupObject.generated_by(S4, [g]) for g in S4.elements()}
    n_cyclic = sum(c.size for c in t if any(e.order() == c.order for e in c.representative.elements))
    assert n_cyclic == len(cyclic)


def test_subgroup_cap():
    S5 = build_group([P([[1, 2, 3, 4, 5]], 5), P([[1, 2]], 5)])
    with pytest.raises(CapExceeded):
        all_subgroups(S5, cap=100)


def test_singer_normaliser_lattice(get_action):
    a = get_action("pgl3_7")
    H = a.H
    t = all_subgroups(H)
    x, s = a.elements["x"], a.elements["sigma"]
    names = {
        "1": SubgroupObject.trivial(a.G),
        "<s>": SubgroupObject.generated_by(a.G, [s]),
        "<xs>": SubgroupObject.generated_by(a.G, [x * s]),
        "<x2s>": SubgroupObject.generated_by(a.G, [x * x * s]),
        "<x>": SubgroupObject.generated_by(a.G, [x]),
        "<x,s>": SubgroupObject.generated_by(a.G, [x, s]),
    }
    ids = {k: t.class_index(v) for k, v in names.items()}
    assert len(set(ids.values())) == 6
    order3 = {i for i, c in enumerate(t) if c.order == 3}
    assert order3 == {ids["<s>"], ids["<xs>"], ids["<x2s>"], ids["<x>"]}
    assert eta(names["1"], ids["<s>"], t) == 19
    assert eta(names["<s>"], len(t) - 1, t) == 1


def test_eta_bounds():
    S4 = build_group([P([[1, 2, 3, 4]], 4), P([[1, 2]], 4)])
    t = all_subgroups(S4)
    for i, A in enumerate(t):
        for j, B in enumerate(t):
            e = eta(A.representative, j, t)
            assert e <= B.size
            if B.order % A.order:
                assert e == 0
        assert eta(t[0].representative, i, t) == A.size


# -- incidence inversion ------------------------------------------------------


def test_invert_identity_and_chain():
    I = IncidenceMatrix.from_rows("abc", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert invert_incidence(I).is_identity()
    chain = IncidenceMatrix.from_rows(["1", "Z2", "Z4"], [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert invert_incidence(chain).entries == ((1, -1, 0), (0, 1, -1), (0, 0, 1))


def test_invert_rejects_non_triangular():
    with pytest.raises(ValueError):
        invert_incidence(IncidenceMatrix.from_rows("ab", [[1, 0], [1, 1]]))


def test_singer_example_incidence_inverse(get_report):
    r = get_report("pgl3_7")
    M, Minv = r.details["M"], r.details["Minv"]
    assert M.entries[0] == (1, 19, 38, 19, 1)
    assert Minv.entries[0] == (1, -19, -38, 38, 18)
    assert M.matmul(Minv).is_identity()


def test_linear_extension_respects_order():
    items = [6, 1, 3, 2]
    out = linear_extension(items, lambda a, b: b % a == 0, key=lambda x: -x)
    pos = {x: i for i, x in enumerate(out)}
    for a in items:
        for b in items:
            if a != b and b % a == 0:
                assert pos[a] < pos[b]
