# fourap/curve_helper.py
"""The quartic C: Y^2 - (X^2 - 5)Y + 4 = 0 and the curve E: y^2 = x(x + 1)(x + 4).

E is stored expanded as y^2 = x^3 + 5x^2 + 4x (Cremona 24A1). The map
(X, Y) -> (Y, XY) takes C to E; its inverse is (x, y) -> (y/x, x) away from x = 0.
All coordinates are exact ``Fraction`` values.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import Symbol
from sympy.ntheory.factor_ import divisors
from sympy.polys.polytools import Poly

from .arith_helper import gcd, is_perfect_square
from .errors import DomainError, InternalConsistencyError, OffCurveError

logger = logging.getLogger(__name__)

# y^2 = x^3 + A2 x^2 + A4 x + A6
A2, A4, A6 = 5, 4, 0
CUBIC_DISCRIMINANT = A2 * A2 * A4 * A4 - 4 * A4 ** 3 - 4 * A2 ** 3 * A6 - 27 * A6 * A6 + 18 * A2 * A4 * A6
CURVE_DISCRIMINANT = 16 * CUBIC_DISCRIMINANT
CREMONA_LABEL = "24A1"
MAX_TORSION_ORDER = 12

WEIERSTRASS_EQUATION = "y^2 = x(x + 1)(x + 4)"
QUARTIC_EQUATION = "Y^2 - (X^2 - 5)Y + 4 = 0"


@dataclass(frozen=True)
class QuarticPoint:
    X: Fraction
    Y: Fraction


@dataclass(frozen=True)
class EPoint:
    """Affine point of E, or the point at infinity when both coordinates are None."""
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @classmethod
    def affine(cls, x, y) -> "EPoint":
        return cls(Fraction(x), Fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = EPoint()


def point_key(p: EPoint) -> Tuple:
    """Deterministic order: infinity first, then by x, then by y."""
    if p.is_infinity:
        return (0,)
    return (1, p.x, p.y)


def _cubic(x: Fraction) -> Fraction:
    return x * x * x + A2 * x * x + A4 * x + A6


# ---------------------- Membership ----------------------

def on_quartic(X, Y) -> bool:
    X, Y = Fraction(X), Fraction(Y)
    return Y * Y - (X * X - 5) * Y + 4 == 0


def on_e(p: EPoint) -> bool:
    if p.is_infinity:
        return True
    return p.y * p.y == _cubic(p.x)


def require_on_e(p: EPoint) -> None:
    if not on_e(p):
        raise OffCurveError(WEIERSTRASS_EQUATION, p)


def require_on_quartic(q: QuarticPoint) -> None:
    if not on_quartic(q.X, q.Y):
        raise OffCurveError(QUARTIC_EQUATION, f"({q.X}, {q.Y})")


# ---------------------- Birational maps ----------------------

def quartic_to_e(q: QuarticPoint) -> EPoint:
    require_on_quartic(q)
    p = EPoint(q.Y, q.X * q.Y)
    if not on_e(p):
        raise InternalConsistencyError(f"{q} maps off E to {p}")
    return p


def e_to_quartic(p: EPoint) -> QuarticPoint:
    require_on_e(p)
    if p.is_infinity or p.x == 0:
        raise DomainError(f"the map to the quartic is undefined at {p}")
    q = QuarticPoint(p.y / p.x, p.x)
    if not on_quartic(q.X, q.Y):
        raise InternalConsistencyError(f"{p} maps off C to {q}")
    return q


def conjugate(q: QuarticPoint) -> QuarticPoint:
    """The other point of C above X; the two Y-values multiply to 4."""
    require_on_quartic(q)
    if q.Y == 0:
        raise InternalConsistencyError(f"{q} lies on C with Y = 0")
    return QuarticPoint(q.X, Fraction(4) / q.Y)


def window_to_quartic(x, n, y) -> QuarticPoint:
    """X = x/(2n), Y = (x^2 - 20n^2 + y)/(8n^2) for a window with y^2 = (x^2-4n^2)(x^2-36n^2)."""
    x, n, y = Fraction(x), Fraction(n), Fraction(y)
    if n == 0:
        raise DomainError("the degenerate window n = 0 has no point on the quartic")
    if y * y != (x * x - 4 * n * n) * (x * x - 36 * n * n):
        raise DomainError(f"y^2 != (x^2 - 4n^2)(x^2 - 36n^2) for x={x}, n={n}, y={y}")
    q = QuarticPoint(x / (2 * n), (x * x - 20 * n * n + y) / (8 * n * n))
    if not on_quartic(q.X, q.Y):
        raise InternalConsistencyError(f"window ({x}, {n}, {y}) maps off C to {q}")
    if x.denominator == 1 and n.denominator == 1:
        # 2n when gcd(x, 2n) = 1
        expected = abs(2 * n.numerator) // gcd(x.numerator, 2 * n.numerator)
        if q.X.denominator != expected:
            raise InternalConsistencyError(f"denominator of X = {q.X} is not {expected}")
    return q


def window_to_e(x, n, y) -> EPoint:
    p = quartic_to_e(window_to_quartic(x, n, y))
    x, n = Fraction(x), Fraction(n)
    if x.denominator == 1 and n.denominator == 1:
        if (8 * n.numerator ** 2) % p.x.denominator:
            raise InternalConsistencyError(f"denominator of {p.x} does not divide 8n^2")
    return p


def quartic_to_window(q: QuarticPoint) -> Tuple[Fraction, Fraction]:
    """The window (x, y) with n scaled to 1 whose quartic point is ``q``."""
    require_on_quartic(q)
    x = 2 * q.X
    y = 8 * q.Y - 4 * q.X * q.X + 20
    if y * y != (x * x - 4) * (x * x - 36):
        raise InternalConsistencyError(f"{q} does not come from a window")
    return x, y


# ---------------------- Group law ----------------------

def e_neg(p: EPoint) -> EPoint:
    require_on_e(p)
    if p.is_infinity:
        return p
    return EPoint(p.x, -p.y)


def e_add(p: EPoint, q: EPoint) -> EPoint:
    """Chord-and-tangent addition with infinity as the identity."""
    require_on_e(p)
    require_on_e(q)
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y + q.y == 0:
            return INFINITY
        slope = (3 * p.x * p.x + 2 * A2 * p.x + A4) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope * slope - A2 - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    result = EPoint(x3, y3)
    if not on_e(result):
        raise InternalConsistencyError(f"{p} + {q} = {result} is off the curve")
    return result


def e_mul(k: int, p: EPoint) -> EPoint:
    require_on_e(p)
    if k < 0:
        return e_mul(-k, e_neg(p))
    result, addend = INFINITY, p
    while k:
        if k & 1:
            result = e_add(result, addend)
        addend = e_add(addend, addend)
        k >>= 1
    return result


def order(p: EPoint, max_order: int = MAX_TORSION_ORDER) -> Optional[int]:
    """Order of ``p`` if it is at most ``max_order``, else None."""
    require_on_e(p)
    multiple = p
    for k in range(1, max_order + 1):
        if multiple.is_infinity:
            return k
        multiple = e_add(multiple, p)
    return None


# ---------------------- Torsion and search ----------------------

_X = Symbol("x")


def _integer_roots(constant: int) -> List[int]:
    """Integer roots of x^3 + A2 x^2 + A4 x + constant."""
    cubic = Poly([1, A2, A4, constant], _X)
    return sorted(int(root) for root in cubic.ground_roots())


def torsion_points() -> List[EPoint]:
    """Rational torsion of E by Nagell-Lutz.

    Torsion points are integral with y = 0 or y^2 dividing the cubic's
    discriminant; each integral candidate is kept iff its order is finite.
    """
    heights = [0] + [y for y in divisors(CUBIC_DISCRIMINANT) if CUBIC_DISCRIMINANT % (y * y) == 0]
    points = {INFINITY}
    for y in heights:
        for x in _integer_roots(A6 - y * y):
            for signed_y in {y, -y}:
                candidate = EPoint.affine(x, signed_y)
                if order(candidate) is not None:
                    points.add(candidate)
    logger.debug("🔁 %d torsion points on %s", len(points), CREMONA_LABEL)
    return sorted(points, key=point_key)


def naive_point_search(height_bound: int, numerators: Optional[Tuple[int, int]] = None) -> List[EPoint]:
    """Affine points with x = p/q in lowest terms, |p| and q at most ``height_bound``.

    y^2 = p(p^2 + 5pq + 4q^2)/q^3 is in lowest terms, so q must be a square w^2
    and the numerator a square; ``numerators`` restricts p to a closed range.
    """
    if height_bound < 1:
        raise DomainError(f"height bound must be positive, got {height_bound}")
    low, high = numerators if numerators is not None else (-height_bound, height_bound)
    low, high = max(low, -height_bound), min(high, height_bound)
    points = set()
    w = 1
    while w * w <= height_bound:
        q = w * w
        for p in range(low, high + 1):
            if gcd(p, q) != 1:
                continue
            root = is_perfect_square(p * (p * p + A2 * p * q + A4 * q * q) + A6 * q ** 3)
            if root is None:
                continue
            x, y = Fraction(p, q), Fraction(root, w ** 3)
            points.add(EPoint(x, y))
            points.add(EPoint(x, -y))
        w += 1
    return sorted(points, key=point_key)
