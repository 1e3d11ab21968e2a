import random

import pytest

from saxl.constructions import ProjectiveSpace, field_for
from saxl.fields import build_field, primitive_polynomial, poly_powmod


@pytest.mark.parametrize("p,k", [(7, 1), (3, 2), (2, 5), (2, 2), (2, 3), (5, 2), (2, 4)])
def test_inverse_and_generator(p, k):
    F = build_field(p, k)
    assert F.q == p**k
    assert F.order_of(F.generator) == F.q - 1
    rng = random.Random(p * 100 + k)
    for _ in range(1000):
        a = rng.randrange(1, F.q)
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,k", [(3, 2), (2, 3)])
def test_field_axioms_exhaustive(p, k):
    F = build_field(p, k)
    els = list(range(F.q))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        assert F.frobenius(a) == F.pow(a, p)
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els[:4]:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_deterministic_choice():
    assert build_field(3, 2).modulus == build_field(3, 2).modulus
    assert build_field(7, 1).generator == 3


def test_primitive_polynomial_has_full_order():
    F = build_field(7, 1)
    f = primitive_polynomial(F, 3)
    x = [0, 1, 0]
    assert poly_powmod(F, x, 342, f) == [1, 0, 0]
    assert poly_powmod(F, x, 342 // 3, f) != [1, 0, 0]


def test_projective_space_size():
    P = ProjectiveSpace(field_for(4), 3)
    assert len(P) == 21
    assert P.point((0, 2, 0)) == P.point((0, 1, 0))


def test_rejects_non_prime_power():
    with pytest.raises(ValueError):
        field_for(12)
