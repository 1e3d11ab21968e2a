import warnings

import pytest

from saxl import closed_forms as cf
from saxl.numtheory import divisors, is_prime, is_prime_power


def test_frobenius_sym7():
    inp = cf.FrobeniusInput(7, 6, {2: 48, 3: 36, 6: 12}, 120)
    assert cf.frobenius_valency(inp) == 42
    assert cf.frobenius_multiplicities(inp) == [(7, 1), (14, 2), (21, 2)]
    r = cf.frobenius_report(inp)
    assert r.entries == [(1, 1), (7, 1), (14, 2), (21, 2), (42, 1)]
    assert r.checks["sum_rule"]


def test_frobenius_input_validation():
    with pytest.raises(cf.FormulaError):
        cf.FrobeniusInput(1, 6, {2: 48, 3: 36, 6: 12}, 120)
    with pytest.raises(cf.FormulaError):
        cf.FrobeniusInput(6, 4, {2: 8, 4: 8}, 10)
    with pytest.raises(cf.FormulaError):
        cf.FrobeniusInput(7, 6, {2: 48, 6: 12}, 120)
    with pytest.raises(cf.FormulaError):
        cf.FrobeniusInput(7, 6, {2: 48, 3: 35, 6: 12}, 120)


def test_frobenius_bad_normaliser_data_is_an_error():
    # every normaliser order is a multiple of l, so the valency stays integral;
    # inconsistent data surfaces as a fractional multiplicity instead
    inp = cf.FrobeniusInput(7, 6, {2: 48, 3: 36, 6: 18}, 120)
    with pytest.raises(cf.FormulaError, match="not an integer"):
        cf.frobenius_multiplicities(inp)
    with pytest.raises(cf.FormulaError):
        cf.frobenius_report(inp)


def test_frobenius_prime_complement():
    inp = cf.FrobeniusInput(23, 11, {11: 55}, 40320)
    assert cf.frobenius_multiplicities(inp) == [(23, 4)]
    assert cf.frobenius_valency(inp) == 40227


def test_frobenius_socle_singer():
    inp = cf.FrobeniusInput(19, 3, {3: 72}, 32928)
    assert cf.frobenius_multiplicities(inp) == [(19, 23)]
    assert cf.frobenius_valency(inp) == 32490


def test_sym_alt_values():
    assert cf.val_sym_p(7) == 42
    assert cf.val_sym_p(11) == 358490
    assert cf.val_alt_p(13) == 39862836
    assert cf.val_alt_p(13) == cf.frobenius_valency(cf.alt_frobenius_input(13))
    assert cf.val_sym_p(13) == 39862836


def test_alt_warns_at_non_maximal_primes():
    with pytest.warns(UserWarning):
        assert cf.val_alt_p(7) == 84
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        cf.val_alt_p(13)


def test_sym_alt_reject_bad_p():
    for p in (4, 5, 9):
        with pytest.raises(cf.FormulaError):
            cf.val_sym_p(p)


def test_multiplicity_displays():
    assert cf.mult_sym_p(7, 1) == 1
    assert cf.mult_sym_p(7, 2) == 2
    assert cf.mult_sym_p(7, 3) == 2
    assert cf.mult_alt_p(13, 1) == 11
    with pytest.raises(cf.FormulaError):
        cf.mult_sym_p(7, 6)
    with pytest.raises(cf.FormulaError):
        cf.mult_alt_p(13, 4)


@pytest.mark.parametrize("p", [q for q in range(7, 102) if is_prime(q)])
def test_sym_alt_agree_with_frobenius_formula(p):
    inp = cf.sym_frobenius_input(p)
    assert cf.val_sym_p(p) == cf.frobenius_valency(inp)
    assert cf.frobenius_multiplicities(inp) == [(d * p, cf.mult_sym_p(p, d)) for d in divisors(p - 1) if d < p - 1]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        val_alt = cf.val_alt_p(p)
    inp = cf.alt_frobenius_input(p)
    assert val_alt == cf.frobenius_valency(inp)
    h = (p - 1) // 2
    assert cf.frobenius_multiplicities(inp) == [(d * p, cf.mult_alt_p(p, d)) for d in divisors(h) if d < h]


def test_psl2_values():
    assert cf.val_psl2(13, "split") == 60
    assert cf.val_psl2(17, "split") == 96
    assert cf.val_psl2(11, "nonsplit") == 24
    for q, case in ((11, "split"), (9, "nonsplit"), (16, "split"), (12, "split")):
        with pytest.raises(cf.FormulaError):
            cf.val_psl2(q, case)


def test_pgl2_values():
    assert cf.val_pgl2(9, "split") == 16
    assert cf.val_pgl2(17, "split") == 32
    assert cf.val_pgl2(7, "nonsplit") == 0
    with pytest.raises(cf.FormulaError):
        cf.val_pgl2(5, "split")


def test_classify_examples():
    v = cf.classify_prime_power_stabiliser("PGL2-split", {"p": 17})
    assert v.accepted and v.valency == 32 and v.prime_power
    v = cf.classify_prime_power_stabiliser("PSL2-split", {"p": 17})
    assert v.accepted and v.valency == 96 and v.prime_power is False
    v = cf.classify_prime_power_stabiliser("LrEps", {"r": 3, "q": 7})
    assert not v.accepted
    v = cf.classify_prime_power_stabiliser("PGL2-split", {"p": 13})
    assert not v.accepted


def test_classify_agrees_with_primality():
    fermat = [p for p in range(3, 258) if is_prime(p) and (p - 1) & (p - 2) == 0]
    mersenne = [p for p in range(3, 258) if is_prime(p) and (p + 1) & p == 0]
    assert fermat == [3, 5, 17, 257] and mersenne == [3, 7, 31, 127]
    seen = 0
    for fam, primes in (("PSL2-split", fermat), ("PGL2-split", fermat), ("PSL2-nonsplit", mersenne), ("PGL2-nonsplit", mersenne)):
        for p in primes:
            v = cf.classify_prime_power_stabiliser(fam, {"p": p})
            if v.accepted:
                seen += 1
                assert v.prime_power == (v.valency > 0 and is_prime_power(v.valency))
    assert seen >= 6


def test_lr_eps_params():
    P = cf.lr_eps_params(3, 7, "+")
    assert (P.a_singer, P.a_reduced, P.N, P.order_G) == (57, 19, 216, 5630688)
    assert P.order_H == 171 and P.index == 32928
    assert cf.lr_eps_params(3, 3, 1).N == 18
    P = cf.lr_eps_params(5, 2, 1)
    assert (P.k, P.N) == (4, 60)
    with pytest.raises(cf.FormulaError):
        cf.lr_eps_params(4, 7, 1)


def test_lr_eps_subdegrees():
    r = cf.lr_eps_subdegrees(3, 7, "+")
    assert r.valency == 31122 and r.multiplicity(57) == 31 and r.multiplicity(19) == 2
    r = cf.lr_eps_subdegrees(5, 2, "+")
    assert r.valency == 64170 and r.multiplicity(31) == 11
    assert cf.lr_eps_subdegrees(3, 2, "+").valency == 0
    r = cf.lr_eps_subdegrees(3, 7, "+", "socle")
    assert r.valency == 32490 and r.multiplicity(19) == 23


def test_lr_eps_sum_rule_over_a_range():
    checked = 0
    for r in (3, 5, 7):
        for q in range(2, 33):
            if not is_prime_power(q):
                continue
            for eps in ("+", "-"):
                if (r, q, eps) in ((3, 2, "-"), (5, 2, "-"), (3, 3, "-")):
                    continue
                for variant in ("full", "socle"):
                    rep = cf.lr_eps_subdegrees(r, q, eps, variant)
                    assert rep.checks["sum_rule"] and rep.checks["valency_divisibility"]
                    checked += 1
    assert checked > 100


def test_singer_central_normalizer_order():
    assert cf.singer_central_normalizer_order(3, 7) == 27
    assert cf.singer_central_normalizer_order(3, 4) == 27
    assert cf.singer_central_normalizer_order(5, 11) == 125
    with pytest.raises(cf.FormulaError):
        cf.singer_central_normalizer_order(3, 5)


def test_family_params_validation():
    assert cf.FamilyParams("Sp", p=7)["p"] == 7
    with pytest.raises(cf.FormulaError):
        cf.FamilyParams("Sp", p=8)
    with pytest.raises(cf.FormulaError):
        cf.FamilyParams("Nope")
