# tests/test_descent.py
import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from fourap.descent_helper import (
    DEGENERATE_CANDIDATE,
    DEGENERATE_PAIR,
    AdPair,
    Audit,
    Check,
    DescentWitness,
    FourApCandidate,
    ForwardChain,
    Refutation,
    ad_to_ap,
    clear_denominators,
    descent_chain,
    descent_step,
    forward_to_ad,
    normalize_window,
    quartic_rhs,
    replay,
    split_factorizations,
    sum_identity_check,
    validate_witness,
    window_terms,
)
from fourap.errors import DomainError, PreconditionRefuted


def test_window_terms():
    assert window_terms(FourApCandidate(25, 2)) == (13, 21, 29, 37)
    assert window_terms(DEGENERATE_CANDIDATE) == (1, 1, 1, 1)


def test_degenerate_pipeline():
    scaled = clear_denominators([1, 1, 1, 1])
    assert scaled == (1, 1, 1, 1)
    candidate = normalize_window(scaled)
    assert candidate == FourApCandidate(1, 0)
    chain = forward_to_ad(candidate)
    assert isinstance(chain, ForwardChain)
    assert chain.pair == DEGENERATE_PAIR
    assert chain.witness == DescentWitness(y=1, u=0, v=1, A=0, D=1, odd_leg_sign=-1)
    validate_witness(chain.witness, candidate)


def test_clear_denominators_refutes_non_square():
    refutation = clear_denominators([1, 9, 17, 25])
    assert isinstance(refutation, Refutation)
    assert refutation.check is Check.NUMERATOR_SQUARE
    assert refutation.offending_value == 17
    assert refutation.message == "clear_denominators: 17 is not a square (numerator is a square)"
    assert replay(refutation)


def test_clear_denominators_scales_rationals():
    quarter = Fraction(1, 4)
    assert clear_denominators([quarter] * 4) == (1, 1, 1, 1)
    refutation = clear_denominators([Fraction(1, 4), Fraction(25, 4), Fraction(49, 4), Fraction(73, 4)])
    assert refutation.offending_value == 73
    refutation = clear_denominators([Fraction(1, 2), 1, 1, 1])
    assert refutation.check is Check.DENOMINATOR_SQUARE
    assert clear_denominators([Fraction(4, 9)] * 4) == (4, 4, 4, 4)
    mixed = clear_denominators([Fraction(1, 4), Fraction(1, 9), 1, 4])
    assert mixed.check is Check.TERMS_IN_AP
    assert mixed.operands == (-5, 32)


def test_clear_denominators_checks_progression():
    refutation = clear_denominators([1, 4, 9, 16])
    assert refutation.check is Check.TERMS_IN_AP
    assert refutation.operands == (3, 5)


def test_normalize_window():
    assert normalize_window((4, 4, 4, 4)) == DEGENERATE_CANDIDATE
    assert normalize_window((9, 9, 9, 9)) == DEGENERATE_CANDIDATE
    assert normalize_window((1, 25, 49, 73)).offending_value == 73
    assert normalize_window((0, 0, 0, 0)).check is Check.TERM_POSITIVE
    assert normalize_window((1, 4, 9, 16)).check is Check.TERMS_IN_AP
    with pytest.raises(DomainError):
        normalize_window((1, 1, 1))


def test_normalize_window_accepts_descending_input():
    assert normalize_window((73, 49, 25, 1)).offending_value == 73


def test_forward_to_ad_refutations():
    assert forward_to_ad(FourApCandidate(2, 1)).check is Check.X_ODD
    assert forward_to_ad(FourApCandidate(3, 1)).check is Check.TERM_POSITIVE
    refutation = forward_to_ad(FourApCandidate(7, 1))
    assert refutation.check is Check.TERM_SQUARE
    assert refutation.offending_value == 5
    assert forward_to_ad(FourApCandidate(9, 3)).check is Check.X_N_COPRIME


def test_audit_records_every_check():
    audit = Audit()
    forward_to_ad(DEGENERATE_CANDIDATE, audit)
    assert audit.entries
    assert all(entry.passed for entry in audit.entries)

    audit = Audit()
    refutation = forward_to_ad(FourApCandidate(7, 1), audit)
    assert not audit.entries[-1].passed
    assert audit.entries[-1].check is refutation.check


def test_replay_of_a_passing_check():
    assert not replay(Refutation("manual", Check.TERM_SQUARE, (25,)))
    assert replay(Refutation("manual", Check.TERM_SQUARE, (26,)))


def test_quartic_identity_fuzz():
    rng = random.Random(1)
    for _ in range(10000):
        x, n = rng.randint(1, 10 ** 15), rng.randint(0, 10 ** 15)
        rhs = quartic_rhs(x, n)
        assert rhs.value == (x * x - 20 * n * n) ** 2 - 256 * n ** 4
        assert rhs.value == (x * x - 4 * n * n) * (x * x - 36 * n * n)


def test_sum_identity_check():
    assert sum_identity_check(0, 1, 0, 1)
    with pytest.raises(DomainError):
        sum_identity_check(1, 1, 1, 1)
    with pytest.raises(DomainError):
        sum_identity_check(Fraction(1, 2), 1, 0, 1)


def test_ad_to_ap():
    assert ad_to_ap(DEGENERATE_PAIR) == DEGENERATE_CANDIDATE
    refutation = ad_to_ap(AdPair(1, 1))
    assert refutation.check is Check.FORM_16A2_D2
    assert refutation.offending_value == 17
    assert ad_to_ap(AdPair(6, 1)).offending_value == 577
    with pytest.raises(DomainError):
        ad_to_ap(AdPair(2, 2))
    with pytest.raises(DomainError):
        ad_to_ap(AdPair(3, 9))


def test_ad_grid_equivalence():
    successes = []
    for A in range(0, 201):
        for D in range(1, 400, 2):
            if gcd(A, D) != 1:
                continue
            candidate = ad_to_ap(AdPair(A, D))
            if isinstance(candidate, Refutation):
                continue
            successes.append(AdPair(A, D))
            chain = forward_to_ad(candidate)
            assert isinstance(chain, ForwardChain)
            assert chain.pair == AdPair(A, D)
    assert successes == [DEGENERATE_PAIR]


def test_split_factorizations_examples():
    split = split_factorizations(6, 2, 3, 2, 3)
    assert (split.a, split.b, split.c, split.d) == (1, 1, 1, 3)
    split = split_factorizations(30, 6, 5, 10, 3)
    assert (split.a, split.b, split.c, split.d) == (1, 3, 5, 1)
    assert not split.swapped
    swapped = split_factorizations(30, 5, 6, 10, 3)
    assert swapped.swapped
    assert (swapped.a, swapped.b, swapped.c, swapped.d) == (1, 3, 5, 1)


def test_split_factorizations_rejects():
    with pytest.raises(DomainError):
        split_factorizations(30, 6, 5, 10, 4)
    with pytest.raises(DomainError):
        split_factorizations(12, 6, 2, 4, 3)


def test_split_factorizations_random():
    rng = random.Random(3)
    found = 0
    while found < 10000:
        a = rng.randint(1, 500)
        b, c, d = (rng.randrange(1, 500, 2) for _ in range(3))
        if any(gcd(left, right) != 1 for left, right in combinations((2 * a, b, c, d), 2)):
            continue
        U, V, Up, Vp = 2 * a * b, c * d, 2 * a * c, b * d
        split = split_factorizations(U * V, U, V, Up, Vp)
        assert (split.a, split.b, split.c, split.d) == (a, b, c, d)
        found += 1


def test_descent_step_fixpoint():
    assert descent_step(DEGENERATE_PAIR) == DEGENERATE_PAIR
    assert descent_chain(DEGENERATE_PAIR) == [DEGENERATE_PAIR]


def test_descent_step_refutes_uncertified_pairs():
    with pytest.raises(PreconditionRefuted) as excinfo:
        descent_step(AdPair(2, 1))
    assert excinfo.value.refutation.offending_value == 65
    assert str(excinfo.value) == "descent_step: 65 is not a square (16A^2+D^2 is a square)"
    assert replay(excinfo.value.refutation)

    with pytest.raises(PreconditionRefuted) as excinfo:
        descent_step(AdPair(3, 5))
    assert excinfo.value.refutation.check is Check.FORM_4A2_D2
    assert excinfo.value.refutation.offending_value == 61


@pytest.mark.parametrize(
    "pair, check, operands",
    [
        (AdPair(-1, 1), Check.A_NONNEGATIVE, (-1,)),
        (AdPair(1, 0), Check.D_POSITIVE, (0,)),
        (AdPair(1, 2), Check.D_ODD, (2,)),
        (AdPair(3, 3), Check.A_D_COPRIME, (3, 3)),
        (AdPair(0, 3), Check.A_D_COPRIME, (0, 3)),
    ],
)
def test_descent_step_refutes_pair_preconditions(pair, check, operands):
    with pytest.raises(PreconditionRefuted) as excinfo:
        descent_step(pair)
    refutation = excinfo.value.refutation
    assert refutation.check is check
    assert refutation.operands == operands
    assert replay(refutation)
