# tests/test_pythagoras.py
from math import gcd

import pytest

from fourap.errors import DomainError
from fourap.pythagoras_helper import (
    DEGENERATE_TRIPLE,
    ParamPair,
    PrimitiveTriple,
    area,
    enumerate_primitive_triples,
    euclid_params,
    params_from_triple,
    triple_from_params,
    validate_triple,
)


def test_triple_from_params():
    assert triple_from_params(ParamPair(1, 1)).as_tuple() == (4, 3, 5)
    assert triple_from_params(ParamPair(1, 3)).as_tuple() == (12, 5, 13)
    assert triple_from_params(ParamPair(2, 1)).as_tuple() == (8, 15, 17)
    assert triple_from_params(ParamPair(2, 5)).as_tuple() == (40, 9, 41)


def test_triple_from_params_rejects_bad_parameters():
    with pytest.raises(DomainError):
        triple_from_params(ParamPair(1, 2))
    with pytest.raises(DomainError):
        triple_from_params(ParamPair(3, 3))
    with pytest.raises(DomainError):
        triple_from_params(ParamPair(0, 1))


def test_odd_leg_sign():
    assert ParamPair(2, 1).odd_leg_sign == 1
    assert ParamPair(1, 3).odd_leg_sign == -1


def test_params_from_triple():
    assert params_from_triple(PrimitiveTriple(40, 9, 41)) == ParamPair(2, 5)
    assert params_from_triple(PrimitiveTriple(4, 3, 5)) == ParamPair(1, 1)
    assert params_from_triple(PrimitiveTriple(12, 5, 13)) == ParamPair(1, 3)


def test_degenerate_triple():
    with pytest.raises(DomainError):
        params_from_triple(DEGENERATE_TRIPLE)
    assert params_from_triple(DEGENERATE_TRIPLE, allow_degenerate=True) == ParamPair(0, 1)


def test_validate_triple_rejects():
    for sides in ((3, 4, 5), (6, 8, 10), (4, 3, 6), (0, 5, 5)):
        with pytest.raises(DomainError):
            validate_triple(PrimitiveTriple(*sides))


def test_enumerate_order_and_floor():
    assert [t.as_tuple() for t in enumerate_primitive_triples(30)] == [
        (4, 3, 5),
        (12, 5, 13),
        (8, 15, 17),
        (24, 7, 25),
        (20, 21, 29),
    ]
    assert [t.hyp for t in enumerate_primitive_triples(30, hyp_floor=14)] == [17, 25, 29]


def test_roundtrip_and_euclid_oracle():
    bound = 10 ** 5
    triples = enumerate_primitive_triples(bound)
    for t in triples:
        assert triple_from_params(params_from_triple(t)) == t

    oracle = set()
    m = 2
    while m * m + 1 <= bound:
        for k in range(1 + m % 2, m, 2):
            if m * m + k * k <= bound and gcd(m, k) == 1:
                oracle.add((2 * m * k, m * m - k * k, m * m + k * k))
        m += 1
    assert {t.as_tuple() for t in triples} == oracle
    assert len(triples) == len(oracle)


def test_euclid_params():
    assert euclid_params(4, 3, 5) == (2, 1)
    assert euclid_params(4, -3, 5) == (1, 2)
    with pytest.raises(DomainError):
        euclid_params(4, 3, 6)


def test_area():
    assert area(PrimitiveTriple(40, 9, 41)) == 180
    assert area(PrimitiveTriple(4, 3, 5)) == 6
