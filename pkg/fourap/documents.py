# fourap/documents.py
"""Line-delimited JSON certificate documents.

Every document is a ``CertificateDocument`` envelope whose ``payload`` is
validated by the model for its ``kind``. Integers travel as decimal strings and
rationals as "p/q" strings so no consumer ever truncates them.
"""
import logging
from typing import Any, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError

from .arith_helper import format_rational, parse_integer, parse_rational
from .congruent_helper import (
    CongruentCertificate,
    ThreeSquareAP,
    ap_center,
    certify_congruent,
    verify_certificate,
)
from .curve_helper import (
    INFINITY,
    EPoint,
    QuarticPoint,
    e_to_quartic,
    on_e,
    on_quartic,
    point_key,
    quartic_to_e,
    torsion_points,
)
from .descent_helper import (
    AdPair,
    AuditEntry,
    Check,
    DescentWitness,
    FourApCandidate,
    Refutation,
    descent_chain,
    replay,
    validate_witness,
    window_terms,
)
from .errors import DomainError, FourApError
from .pythagoras_helper import PrimitiveTriple, area
from .search_helper import SearchReport, validate_report

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
CERTIFY_CONGRUENT_SEARCH = "certify-congruent"

DocumentKind = Literal[
    "four-ap-witness",
    "refutation",
    "congruent-certificate",
    "ad-pair",
    "curve-point",
    "search-report",
]


class TraceEntryModel(BaseModel):
    step: str
    check: str
    operands: List[str]
    passed: bool


class FourApWitnessPayload(BaseModel):
    window: List[str]
    x: str
    n: str
    y: str
    u: str
    v: str
    A: str
    D: str
    odd_leg_sign: str
    trace: Optional[List[TraceEntryModel]] = None


class RefutationPayload(BaseModel):
    step: str
    check: str
    condition: str
    offending_value: str
    operands: List[str]
    message: str
    trace: Optional[List[TraceEntryModel]] = None


class CongruentCertificatePayload(BaseModel):
    k: str
    m: str
    triple: List[str]
    area: str
    roots: List[str]
    squares: List[str]
    center: str


class AdPairPayload(BaseModel):
    A: str
    D: str
    chain: List[List[str]]
    fixpoint: bool
    trace: Optional[List[TraceEntryModel]] = None


class PointModel(BaseModel):
    x: Optional[str] = None
    y: Optional[str] = None
    infinity: Optional[bool] = None


class CurvePointPayload(BaseModel):
    operation: Literal["torsion", "map", "search"]
    curve: Literal["weierstrass", "quartic"]
    equation: str
    points: List[PointModel]
    source: Optional[PointModel] = None
    height_bound: Optional[str] = None


class SearchReportPayload(BaseModel):
    search: str
    bounds: Dict[str, str]
    options: Dict[str, Any] = Field(default_factory=dict)
    hits: List[List[str]]
    hit_count: str
    exhaustive: bool
    partitions: str


class CertificateDocument(BaseModel):
    schema_version: str = SCHEMA_VERSION
    kind: DocumentKind
    inputs: Dict[str, Any] = Field(default_factory=dict)
    payload: Dict[str, Any]
    metadata: Optional[Dict[str, str]] = None

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


_PAYLOAD_MODELS = {
    "four-ap-witness": FourApWitnessPayload,
    "refutation": RefutationPayload,
    "congruent-certificate": CongruentCertificatePayload,
    "ad-pair": AdPairPayload,
    "curve-point": CurvePointPayload,
    "search-report": SearchReportPayload,
}


def _ints(values: Sequence[int]) -> List[str]:
    return [str(v) for v in values]


def _document(kind: str, inputs: Dict[str, Any], payload: BaseModel) -> CertificateDocument:
    return CertificateDocument(kind=kind, inputs=inputs, payload=payload.model_dump(exclude_none=True))


def _trace(entries: Optional[Sequence[AuditEntry]]) -> Optional[List[TraceEntryModel]]:
    if entries is None:
        return None
    return [TraceEntryModel(step=e.step, check=e.check.name, operands=_ints(e.operands), passed=e.passed)
            for e in entries]


# ---------------------- Encoders ----------------------

def point_model(p) -> PointModel:
    if isinstance(p, QuarticPoint):
        return PointModel(x=format_rational(p.X), y=format_rational(p.Y))
    if p.is_infinity:
        return PointModel(infinity=True)
    return PointModel(x=format_rational(p.x), y=format_rational(p.y))


def witness_document(inputs: Dict[str, Any], candidate: FourApCandidate, witness: DescentWitness,
                     trace: Optional[Sequence[AuditEntry]] = None) -> CertificateDocument:
    payload = FourApWitnessPayload(
        window=_ints(window_terms(candidate)),
        x=str(candidate.x),
        n=str(candidate.n),
        y=str(witness.y),
        u=str(witness.u),
        v=str(witness.v),
        A=str(witness.A),
        D=str(witness.D),
        odd_leg_sign=str(witness.odd_leg_sign),
        trace=_trace(trace),
    )
    return _document("four-ap-witness", inputs, payload)


def refutation_document(inputs: Dict[str, Any], refutation: Refutation,
                        trace: Optional[Sequence[AuditEntry]] = None) -> CertificateDocument:
    payload = RefutationPayload(
        step=refutation.step,
        check=refutation.check.name,
        condition=refutation.check.label,
        offending_value=str(refutation.offending_value),
        operands=_ints(refutation.operands),
        message=refutation.message,
        trace=_trace(trace),
    )
    return _document("refutation", inputs, payload)


def certificate_document(inputs: Dict[str, Any], cert: CongruentCertificate) -> CertificateDocument:
    payload = CongruentCertificatePayload(
        k=str(cert.k),
        m=str(cert.m),
        triple=_ints(cert.triple.as_tuple()),
        area=str(area(cert.triple)),
        roots=[format_rational(r) for r in (cert.ap.a, cert.ap.b, cert.ap.c)],
        squares=[format_rational(s) for s in cert.ap.squares()],
        center=format_rational(ap_center(cert.ap)),
    )
    return _document("congruent-certificate", inputs, payload)


def ad_pair_document(inputs: Dict[str, Any], chain: Sequence[AdPair],
                     trace: Optional[Sequence[AuditEntry]] = None) -> CertificateDocument:
    final = chain[-1]
    payload = AdPairPayload(
        A=str(final.A),
        D=str(final.D),
        chain=[[str(p.A), str(p.D)] for p in chain],
        fixpoint=len(chain) == 1,
        trace=_trace(trace),
    )
    return _document("ad-pair", inputs, payload)


def curve_document(inputs: Dict[str, Any], operation: str, curve: str, equation: str, points: Sequence,
                   source=None, height_bound: Optional[int] = None) -> CertificateDocument:
    payload = CurvePointPayload(
        operation=operation,
        curve=curve,
        equation=equation,
        points=[point_model(p) for p in points],
        source=point_model(source) if source is not None else None,
        height_bound=str(height_bound) if height_bound is not None else None,
    )
    return _document("curve-point", inputs, payload)


def search_document(inputs: Dict[str, Any], report: SearchReport) -> CertificateDocument:
    payload = SearchReportPayload(
        search=report.kind,
        bounds={name: str(value) for name, value in report.bounds.items()},
        options={name: value if isinstance(value, bool) else str(value) for name, value in report.options.items()},
        hits=[_ints(hit) for hit in report.hits],
        hit_count=str(len(report.hits)),
        exhaustive=report.exhaustive,
        partitions=str(report.partitions),
    )
    return _document("search-report", inputs, payload)


def negative_certify_document(inputs: Dict[str, Any], k: int, hyp_bound: int) -> CertificateDocument:
    payload = SearchReportPayload(
        search=CERTIFY_CONGRUENT_SEARCH,
        bounds={"k": str(k), "hyp_bound": str(hyp_bound)},
        hits=[],
        hit_count="0",
        exhaustive=True,
        partitions="1",
    )
    return _document("search-report", inputs, payload)


# ---------------------- Re-validation ----------------------

def _decode_point(model: PointModel, weierstrass: bool):
    if weierstrass:
        if model.infinity:
            return INFINITY
        return EPoint(parse_rational(model.x), parse_rational(model.y))
    return QuarticPoint(parse_rational(model.x), parse_rational(model.y))


def _check_witness(payload: FourApWitnessPayload) -> List[str]:
    candidate = FourApCandidate(parse_integer(payload.x), parse_integer(payload.n))
    witness = DescentWitness(
        y=parse_integer(payload.y),
        u=parse_integer(payload.u),
        v=parse_integer(payload.v),
        A=parse_integer(payload.A),
        D=parse_integer(payload.D),
        odd_leg_sign=parse_integer(payload.odd_leg_sign),
    )
    problems = []
    if [parse_integer(t) for t in payload.window] != list(window_terms(candidate)):
        problems.append("window does not match (x, n)")
    try:
        validate_witness(witness, candidate)
    except DomainError as exc:
        problems.append(str(exc))
    if witness.A * witness.D != candidate.n:
        problems.append("A*D != n")
    return problems


def _check_refutation(payload: RefutationPayload) -> List[str]:
    try:
        check = Check[payload.check]
    except KeyError:
        return [f"unknown check {payload.check!r}"]
    refutation = Refutation(payload.step, check, tuple(parse_integer(o) for o in payload.operands))
    problems = []
    if not replay(refutation):
        problems.append(f"{check.name} holds for {refutation.operands}; the refutation does not replay")
    if str(refutation.offending_value) != payload.offending_value or refutation.message != payload.message:
        problems.append("offending value or message does not match the operands")
    return problems


def _check_certificate(payload: CongruentCertificatePayload) -> List[str]:
    k = parse_integer(payload.k)
    a, b, c = (parse_rational(r) for r in payload.roots)
    cert = CongruentCertificate(
        k=k,
        triple=PrimitiveTriple(*(parse_integer(s) for s in payload.triple)),
        m=parse_integer(payload.m),
        ap=ThreeSquareAP(a, b, c, k),
    )
    problems = []
    try:
        verify_certificate(cert)
    except DomainError as exc:
        problems.append(str(exc))
        return problems
    if [parse_rational(s) for s in payload.squares] != list(cert.ap.squares()):
        problems.append("squares do not match the roots")
    if parse_rational(payload.center) != ap_center(cert.ap):
        problems.append("center is not the middle square")
    if parse_integer(payload.area) != area(cert.triple):
        problems.append("area does not match the triple")
    return problems


def _check_ad_pair(payload: AdPairPayload) -> List[str]:
    chain = [AdPair(parse_integer(A), parse_integer(D)) for A, D in payload.chain]
    if not chain:
        return ["empty descent chain"]
    if descent_chain(chain[0]) != chain:
        return ["chain does not match the descent from its first pair"]
    if (str(chain[-1].A), str(chain[-1].D)) != (payload.A, payload.D) or payload.fixpoint != (len(chain) == 1):
        return ["final pair or fixpoint flag does not match the chain"]
    return []


def _check_curve(payload: CurvePointPayload) -> List[str]:
    weierstrass = payload.curve == "weierstrass"
    points = [_decode_point(p, weierstrass) for p in payload.points]
    problems = []
    for p in points:
        if weierstrass and not on_e(p):
            problems.append(f"{p} is not on E")
        if not weierstrass and not on_quartic(p.X, p.Y):
            problems.append(f"{p} is not on C")
    if problems:
        return problems
    if payload.operation == "torsion" and points != torsion_points():
        problems.append("torsion set is not the Nagell-Lutz set")
    if payload.operation == "search":
        if points != sorted(set(points), key=point_key):
            problems.append("points are not sorted and unique")
        bound = parse_integer(payload.height_bound or "0")
        for p in points:
            if p.is_infinity or abs(p.x.numerator) > bound or p.x.denominator > bound:
                problems.append(f"{p} exceeds height bound {bound}")
    if payload.operation == "map":
        if payload.source is None or len(points) != 1:
            return ["map document needs one source and one image"]
        source = _decode_point(payload.source, not weierstrass)
        image = quartic_to_e(source) if weierstrass else e_to_quartic(source)
        if image != points[0]:
            problems.append("image does not match the map applied to the source")
    return problems


def _check_search(payload: SearchReportPayload) -> List[str]:
    bounds = {name: parse_integer(value) for name, value in payload.bounds.items()}
    hits = [tuple(parse_integer(v) for v in hit) for hit in payload.hits]
    if parse_integer(payload.hit_count) != len(hits):
        return ["hit count does not match the hit list"]
    if payload.search == CERTIFY_CONGRUENT_SEARCH:
        if hits:
            return ["a negative certify report cannot carry hits"]
        if certify_congruent(bounds["k"], bounds["hyp_bound"]).found:
            return [f"{bounds['k']} has a certificate below hypotenuse {bounds['hyp_bound']}"]
        return []
    options = {name: parse_integer(value) if isinstance(value, str) else value for name, value in payload.options.items()}
    report = SearchReport(payload.search, bounds, options, hits, payload.exhaustive,
                          parse_integer(payload.partitions))
    return validate_report(report)


_CHECKERS = {
    "four-ap-witness": _check_witness,
    "refutation": _check_refutation,
    "congruent-certificate": _check_certificate,
    "ad-pair": _check_ad_pair,
    "curve-point": _check_curve,
    "search-report": _check_search,
}


def parse_document(line: str) -> CertificateDocument:
    """Parse one line; raise DomainError if it is not a schema-1 document."""
    try:
        document = CertificateDocument.model_validate_json(line)
    except ValidationError as exc:
        raise DomainError(f"not a certificate document: {exc.errors()[0]['msg']}") from exc
    if document.schema_version != SCHEMA_VERSION:
        raise DomainError(f"unsupported schema version {document.schema_version!r}")
    return document


def check_document(document: CertificateDocument) -> List[str]:
    """Re-verify a document from its serialized content alone; return the problems found."""
    try:
        payload = _PAYLOAD_MODELS[document.kind].model_validate(document.payload)
        problems = _CHECKERS[document.kind](payload)
        logger.debug("🔍 %s document: %d problem(s)", document.kind, len(problems))
        return problems
    except ValidationError as exc:
        return [f"malformed {document.kind} payload: {exc.errors()[0]['msg']}"]
    except (FourApError, KeyError, TypeError, ValueError) as exc:
        return [f"{document.kind} payload does not re-verify: {exc}"]
