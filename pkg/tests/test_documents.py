# tests/test_documents.py
import json

import pytest

from fourap.congruent_helper import build_certificate
from fourap.curve_helper import WEIERSTRASS_EQUATION, EPoint, torsion_points
from fourap.descent_helper import DEGENERATE_PAIR, Audit, Check, Refutation, forward_to_ad, ad_to_ap
from fourap.documents import (
    CertificateDocument,
    ad_pair_document,
    certificate_document,
    check_document,
    curve_document,
    parse_document,
    refutation_document,
    witness_document,
)
from fourap.errors import DomainError
from fourap.pythagoras_helper import PrimitiveTriple


def _roundtrip(document: CertificateDocument) -> CertificateDocument:
    return parse_document(document.to_line())


def test_witness_document_roundtrip():
    audit = Audit()
    chain = forward_to_ad(ad_to_ap(DEGENERATE_PAIR), audit)
    document = _roundtrip(witness_document({}, chain.candidate, chain.witness, audit.entries))
    assert document.kind == "four-ap-witness"
    assert document.payload["A"] == "0"
    assert check_document(document) == []


def test_tampered_witness_is_rejected():
    chain = forward_to_ad(ad_to_ap(DEGENERATE_PAIR))
    document = witness_document({}, chain.candidate, chain.witness)
    document.payload["y"] = "3"
    assert check_document(_roundtrip(document)) != []


def test_refutation_that_does_not_replay():
    document = refutation_document({}, Refutation("manual", Check.TERM_SQUARE, (25,)))
    problems = check_document(_roundtrip(document))
    assert problems and "does not replay" in problems[0]


def test_unknown_check_name():
    document = refutation_document({}, Refutation("manual", Check.TERM_SQUARE, (26,)))
    document.payload["check"] = "NOT_A_CHECK"
    assert check_document(document) == ["unknown check 'NOT_A_CHECK'"]


def test_certificate_document_values():
    document = certificate_document({}, build_certificate(PrimitiveTriple(4, 3, 5)))
    assert document.payload["squares"] == ["1/4", "25/4", "49/4"]
    assert check_document(_roundtrip(document)) == []


def test_ad_pair_chain_must_match_descent():
    document = ad_pair_document({}, [DEGENERATE_PAIR])
    assert check_document(document) == []
    document.payload["fixpoint"] = False
    assert check_document(document) != []


def test_curve_documents():
    document = curve_document({}, "torsion", "weierstrass", WEIERSTRASS_EQUATION, torsion_points())
    assert check_document(_roundtrip(document)) == []
    short = curve_document({}, "torsion", "weierstrass", WEIERSTRASS_EQUATION, torsion_points()[:-1])
    assert check_document(short) == ["torsion set is not the Nagell-Lutz set"]
    off = curve_document({}, "search", "weierstrass", WEIERSTRASS_EQUATION, [EPoint.affine(1, 1)], height_bound=10)
    assert check_document(off) == ["(1, 1) is not on E"]


def test_parse_document_rejects_bad_lines():
    with pytest.raises(DomainError):
        parse_document("not json")
    with pytest.raises(DomainError):
        parse_document(json.dumps({"schema_version": "1", "kind": "poem", "payload": {}}))
    with pytest.raises(DomainError):
        parse_document(json.dumps({"schema_version": "2", "kind": "ad-pair", "payload": {}}))


def test_malformed_payload_is_reported():
    document = CertificateDocument(kind="ad-pair", payload={"A": "0"})
    problems = check_document(document)
    assert problems and problems[0].startswith("malformed ad-pair payload")
