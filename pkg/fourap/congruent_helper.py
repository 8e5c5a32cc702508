# fourap/congruent_helper.py
"""Right triangles <-> three rational squares in arithmetic progression.

A primitive triangle with legs p, q and hypotenuse h, area k*m^2 (k squarefree),
gives the squares ((p-q)/2m)^2, (h/2m)^2, ((p+q)/2m)^2 with common difference k.
Conversely three squares a^2, b^2, c^2 in AP with difference k give the rational
triangle (c-a, c+a, 2b) of area k.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith_helper import gcd, is_squarefree, lcm, squarefree_split
from .errors import DomainError, InternalConsistencyError
from .pythagoras_helper import PrimitiveTriple, area, enumerate_primitive_triples, validate_triple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThreeSquareAP:
    """Square roots a < b < c of three squares in AP with common difference k."""
    a: Fraction
    b: Fraction
    c: Fraction
    k: int

    def squares(self):
        return (self.a * self.a, self.b * self.b, self.c * self.c)


@dataclass(frozen=True)
class RationalTriangle:
    leg_short: Fraction
    leg_long: Fraction
    hyp: Fraction
    triple: PrimitiveTriple

    @property
    def area(self) -> Fraction:
        return self.leg_short * self.leg_long / 2


@dataclass(frozen=True)
class CongruentCertificate:
    k: int
    triple: PrimitiveTriple
    m: int
    ap: ThreeSquareAP


@dataclass(frozen=True)
class CongruenceSearch:
    """Outcome of a bounded search; an empty certificate only means "not below hyp_bound"."""
    k: int
    hyp_bound: int
    certificate: Optional[CongruentCertificate]

    @property
    def found(self) -> bool:
        return self.certificate is not None


def validate_ap(ap: ThreeSquareAP) -> None:
    if not (0 <= ap.a < ap.b < ap.c):
        raise DomainError(f"roots must satisfy 0 <= a < b < c, got {ap.a}, {ap.b}, {ap.c}")
    sq_a, sq_b, sq_c = ap.squares()
    if sq_b - sq_a != ap.k or sq_c - sq_b != ap.k:
        raise DomainError(f"squares {sq_a}, {sq_b}, {sq_c} do not have common difference {ap.k}")
    if ap.k < 1 or not is_squarefree(ap.k):
        raise DomainError(f"common difference {ap.k} is not a positive squarefree integer")


def ap_from_triangle(t: PrimitiveTriple) -> ThreeSquareAP:
    validate_triple(t)
    k, m = squarefree_split(area(t))
    p, q = t.even_leg, t.odd_leg
    ap = ThreeSquareAP(
        a=Fraction(abs(p - q), 2 * m),
        b=Fraction(t.hyp, 2 * m),
        c=Fraction(p + q, 2 * m),
        k=k,
    )
    try:
        validate_ap(ap)
    except DomainError as exc:
        raise InternalConsistencyError(f"triangle {t.as_tuple()} produced a bad progression: {exc}") from exc
    return ap


def triangle_from_ap(ap: ThreeSquareAP) -> RationalTriangle:
    """Rational triangle of area k, plus the primitive triple it scales to."""
    validate_ap(ap)
    leg_short, leg_long, hyp = ap.c - ap.a, ap.c + ap.a, 2 * ap.b
    if leg_short * leg_long / 2 != ap.k:
        raise InternalConsistencyError(f"triangle from {ap} has area {leg_short * leg_long / 2}")

    scale = lcm(leg_short.denominator, leg_long.denominator, hyp.denominator)
    sides = [int(side * scale) for side in (leg_short, leg_long, hyp)]
    common = gcd(gcd(sides[0], sides[1]), sides[2])
    x, y, z = (side // common for side in sides)
    even_leg, odd_leg = (x, y) if x % 2 == 0 else (y, x)
    triple = PrimitiveTriple(even_leg, odd_leg, z)
    validate_triple(triple)
    return RationalTriangle(leg_short, leg_long, hyp, triple)


def build_certificate(t: PrimitiveTriple) -> CongruentCertificate:
    k, m = squarefree_split(area(t))
    return CongruentCertificate(k=k, triple=t, m=m, ap=ap_from_triangle(t))


def certify_congruent(k: int, hyp_bound: int) -> CongruenceSearch:
    """Smallest-hypotenuse triangle whose area has squarefree part ``k``."""
    if k < 1 or not is_squarefree(k):
        raise DomainError(f"{k} is not a positive squarefree integer")
    for t in enumerate_primitive_triples(hyp_bound):
        if squarefree_split(area(t))[0] == k:
            cert = build_certificate(t)
            logger.info("✅ %d is congruent: triangle %s, area %d*%d^2", k, t.as_tuple(), k, cert.m)
            return CongruenceSearch(k, hyp_bound, cert)
    logger.info("⚠️ no triangle with area class %d up to hypotenuse %d", k, hyp_bound)
    return CongruenceSearch(k, hyp_bound, None)


def verify_certificate(cert: CongruentCertificate) -> None:
    """Re-check a certificate from its raw integers; raise DomainError on the first failure."""
    e, o, h = cert.triple.as_tuple()
    if e * e + o * o != h * h:
        raise DomainError(f"{e}^2 + {o}^2 != {h}^2")
    validate_triple(cert.triple)
    if not is_squarefree(cert.k):
        raise DomainError(f"k = {cert.k} is not squarefree")
    if area(cert.triple) != cert.k * cert.m * cert.m:
        raise DomainError(f"area {area(cert.triple)} != {cert.k} * {cert.m}^2")
    if cert.ap.k != cert.k:
        raise DomainError(f"progression difference {cert.ap.k} != k = {cert.k}")
    validate_ap(cert.ap)
    if cert.ap != ap_from_triangle(cert.triple):
        raise DomainError("progression does not match the triangle")


def ap_center(ap: ThreeSquareAP) -> Fraction:
    """Centre x of the progression x - k, x, x + k."""
    return ap.b * ap.b


def equation_pair_holds(a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> bool:
    """Whether a^2 + c^2 = 2b^2 and b^2 + d^2 = 2c^2, i.e. a^2, b^2, c^2, d^2 are in AP."""
    return a * a + c * c == 2 * b * b and b * b + d * d == 2 * c * c
