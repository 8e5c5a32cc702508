# tests/test_congruent.py
from dataclasses import replace
from fractions import Fraction

import pytest

from fourap.congruent_helper import (
    ThreeSquareAP,
    ap_center,
    ap_from_triangle,
    build_certificate,
    certify_congruent,
    equation_pair_holds,
    triangle_from_ap,
    validate_ap,
    verify_certificate,
)
from fourap.arith_helper import squarefree_part
from fourap.errors import DomainError
from fourap.pythagoras_helper import PrimitiveTriple, area, enumerate_primitive_triples


def test_ap_from_triangle_for_area_class_5():
    ap = ap_from_triangle(PrimitiveTriple(40, 9, 41))
    assert ap == ThreeSquareAP(Fraction(31, 12), Fraction(41, 12), Fraction(49, 12), 5)
    assert ap.squares() == (Fraction(961, 144), Fraction(1681, 144), Fraction(2401, 144))
    assert ap_center(ap) == Fraction(1681, 144)


def test_ap_from_triangle_for_area_6():
    ap = ap_from_triangle(PrimitiveTriple(4, 3, 5))
    assert ap.k == 6
    assert ap.squares() == (Fraction(1, 4), Fraction(25, 4), Fraction(49, 4))


def test_triangle_from_ap():
    triangle = triangle_from_ap(ThreeSquareAP(Fraction(31, 12), Fraction(41, 12), Fraction(49, 12), 5))
    assert (triangle.leg_short, triangle.leg_long, triangle.hyp) == (Fraction(3, 2), Fraction(20, 3), Fraction(41, 6))
    assert triangle.area == 5
    assert triangle.triple == PrimitiveTriple(40, 9, 41)


def test_triangle_roundtrip_to_hyp_10000():
    triples = enumerate_primitive_triples(10 ** 4)
    assert len(triples) > 1500
    for t in triples:
        ap = ap_from_triangle(t)
        a2, b2, c2 = ap.squares()
        assert b2 - a2 == c2 - b2 == ap.k
        assert ap.k == squarefree_part(area(t))
        assert triangle_from_ap(ap).triple == t
        assert triangle_from_ap(ap).area == ap.k


def test_validate_ap_rejects():
    with pytest.raises(DomainError):
        validate_ap(ThreeSquareAP(Fraction(1), Fraction(2), Fraction(3), 3))
    with pytest.raises(DomainError):
        validate_ap(ThreeSquareAP(Fraction(2), Fraction(2), Fraction(2), 0))
    with pytest.raises(DomainError):
        validate_ap(ThreeSquareAP(Fraction(1), Fraction(5), Fraction(7), 24))


def test_certify_5():
    search = certify_congruent(5, 50)
    assert search.found
    cert = search.certificate
    assert cert.triple == PrimitiveTriple(40, 9, 41)
    assert (cert.k, cert.m) == (5, 6)
    assert ap_center(cert.ap) == Fraction(1681, 144)
    verify_certificate(cert)


def test_certify_6_and_7():
    assert certify_congruent(6, 10).certificate.triple == PrimitiveTriple(4, 3, 5)
    seven = certify_congruent(7, 337)
    assert seven.found and seven.certificate.k == 7
    verify_certificate(seven.certificate)


def test_certify_not_found_below_bound():
    search = certify_congruent(5, 40)
    assert not search.found
    assert search.hyp_bound == 40


def test_certify_finds_nothing_for_non_congruent_k():
    for k in (1, 2, 3):
        search = certify_congruent(k, 10 ** 4)
        assert not search.found
        assert search.hyp_bound == 10 ** 4


def test_certify_rejects_non_squarefree():
    with pytest.raises(DomainError):
        certify_congruent(4, 50)
    with pytest.raises(DomainError):
        certify_congruent(0, 50)


def test_verify_certificate_detects_tampering():
    cert = build_certificate(PrimitiveTriple(40, 9, 41))
    verify_certificate(cert)
    with pytest.raises(DomainError):
        verify_certificate(replace(cert, m=5))
    with pytest.raises(DomainError):
        verify_certificate(replace(cert, triple=PrimitiveTriple(40, 9, 43)))
    with pytest.raises(DomainError):
        verify_certificate(replace(cert, ap=replace(cert.ap, a=Fraction(1, 12))))


def test_equation_pair_holds():
    assert equation_pair_holds(1, 1, 1, 1)
    assert not equation_pair_holds(1, 5, 7, 8)
