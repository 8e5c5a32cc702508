# fourap/pythagoras_helper.py
"""Primitive Pythagorean triples in the (u, v) parametrization.

Every primitive triple is (4uv, |4u^2 - v^2|, 4u^2 + v^2) for exactly one pair
u, v >= 1 with 2u and v relatively prime. Triples are stored even leg first; the
sign of the odd leg is recoverable from ``ParamPair.odd_leg_sign``.
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

from .arith_helper import gcd, is_perfect_square
from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParamPair:
    u: int
    v: int

    @property
    def odd_leg_sign(self) -> int:
        """Sign of 4u^2 - v^2, the odd leg before taking its absolute value."""
        return 1 if 4 * self.u * self.u > self.v * self.v else -1


@dataclass(frozen=True)
class PrimitiveTriple:
    even_leg: int
    odd_leg: int
    hyp: int

    @property
    def is_degenerate(self) -> bool:
        return (self.even_leg, self.odd_leg, self.hyp) == (0, 1, 1)

    def sort_key(self) -> Tuple[int, int]:
        return (self.hyp, self.even_leg)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.even_leg, self.odd_leg, self.hyp)


DEGENERATE_TRIPLE = PrimitiveTriple(0, 1, 1)


def validate_triple(t: PrimitiveTriple, allow_degenerate: bool = False) -> None:
    """Raise DomainError unless ``t`` is a primitive triple stored even leg first."""
    if t.is_degenerate:
        if allow_degenerate:
            return
        raise DomainError("degenerate triple (0, 1, 1) is not allowed here")
    e, o, h = t.as_tuple()
    if min(e, o, h) < 1:
        raise DomainError(f"triple {t.as_tuple()} has a nonpositive side")
    if e * e + o * o != h * h:
        raise DomainError(f"{e}^2 + {o}^2 != {h}^2")
    if gcd(e, o) != 1 or gcd(e, h) != 1 or gcd(o, h) != 1:
        raise DomainError(f"triple {t.as_tuple()} is not primitive")
    if e % 4:
        raise DomainError(f"even leg {e} of {t.as_tuple()} is not divisible by 4")


def triple_from_params(p: ParamPair) -> PrimitiveTriple:
    u, v = p.u, p.v
    if u < 1 or v < 1:
        raise DomainError(f"parameters must be positive, got u={u}, v={v}")
    if gcd(2 * u, v) != 1:
        raise DomainError(f"2u={2 * u} and v={v} are not relatively prime")
    return PrimitiveTriple(4 * u * v, abs(4 * u * u - v * v), 4 * u * u + v * v)


def params_from_triple(t: PrimitiveTriple, allow_degenerate: bool = False) -> ParamPair:
    """Recover (u, v) from a primitive triple.

    hyp + even_leg = (2u + v)^2 and hyp - even_leg = (2u - v)^2, so both roots are
    odd and exactly one of their half-sum and half-difference is even: that one is 2u.
    The degenerate (0, 1, 1) maps to (0, 1) when allowed.
    """
    validate_triple(t, allow_degenerate=allow_degenerate)
    plus = is_perfect_square(t.hyp + t.even_leg)
    minus = is_perfect_square(t.hyp - t.even_leg)
    if plus is None or minus is None:
        raise DomainError(f"triple {t.as_tuple()} has no (u, v) parameters")
    half_sum, half_diff = (plus + minus) // 2, (plus - minus) // 2
    if half_sum % 2 == 0:
        two_u, v = half_sum, half_diff
    else:
        two_u, v = half_diff, half_sum
    u = two_u // 2
    if 4 * u * v != t.even_leg or 4 * u * u + v * v != t.hyp or gcd(2 * u, v) != 1:
        raise DomainError(f"triple {t.as_tuple()} has no (u, v) parameters")
    return ParamPair(u, v)


def euclid_params(even_leg: int, odd_leg: int, hyp: int) -> Tuple[int, int]:
    """Classical (m, k) with even_leg = 2mk, odd_leg = m^2 - k^2, hyp = m^2 + k^2.

    ``odd_leg`` may be negative; then m < k.
    """
    if even_leg * even_leg + odd_leg * odd_leg != hyp * hyp or hyp < 1:
        raise DomainError(f"({even_leg}, {odd_leg}, {hyp}) is not a right triangle")
    m = is_perfect_square((hyp + odd_leg) // 2) if (hyp + odd_leg) % 2 == 0 else None
    k = is_perfect_square((hyp - odd_leg) // 2) if (hyp - odd_leg) % 2 == 0 else None
    if m is None or k is None or 2 * m * k != abs(even_leg):
        raise DomainError(f"({even_leg}, {odd_leg}, {hyp}) has no Euclid parameters")
    return m, k


def enumerate_primitive_triples(hyp_bound: int, hyp_floor: int = 1) -> List[PrimitiveTriple]:
    """All primitive triples with ``hyp_floor <= hyp <= hyp_bound``, sorted by (hyp, even_leg)."""
    triples = []
    u = 1
    while 4 * u * u + 1 <= hyp_bound:
        v = 1
        while 4 * u * u + v * v <= hyp_bound:
            if gcd(2 * u, v) == 1 and 4 * u * u + v * v >= hyp_floor:
                triples.append(triple_from_params(ParamPair(u, v)))
            v += 2
        u += 1
    triples.sort(key=PrimitiveTriple.sort_key)
    logger.debug("🔺 %d primitive triples with hypotenuse in [%d, %d]", len(triples), hyp_floor, hyp_bound)
    return triples


def area(t: PrimitiveTriple) -> int:
    return t.even_leg * t.odd_leg // 2
