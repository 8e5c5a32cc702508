# fourap/arith_helper.py
"""Exact integer and rational arithmetic shared by every other helper.

Integers are Python ints and rationals are ``fractions.Fraction`` values, both
immutable, so everything here is a pure function.
"""
import operator
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Tuple

from .errors import DomainError

__all__ = [
    "SQUARES_MOD_64",
    "gcd",
    "lcm",
    "isqrt",
    "is_perfect_square",
    "is_rational_square",
    "squarefree_split",
    "squarefree_part",
    "is_squarefree",
    "rational",
    "parse_rational",
    "parse_integer",
    "format_rational",
]

# Quadratic residues; a square must land on one of these.
SQUARES_MOD_64 = frozenset((i * i) % 64 for i in range(64))
SQUARES_MOD_63 = frozenset((i * i) % 63 for i in range(63))

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_INTEGER_RE = re.compile(r"^\s*[+-]?\d+\s*$")


def isqrt(n: int) -> int:
    """Floor of the square root of ``n`` by integer Newton iteration."""
    n = operator.index(n)
    if n < 0:
        raise DomainError(f"isqrt of negative number {n}")
    if n == 0:
        return 0
    # 2**ceil(bits/2) is never below the root, so the iteration descends monotonically.
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            return x
        x = y


def is_perfect_square(n: int) -> Optional[int]:
    """Return the nonnegative root of ``n`` when it is a perfect square, else None."""
    n = operator.index(n)
    if n < 0:
        return None
    if (n & 63) not in SQUARES_MOD_64 or n % 63 not in SQUARES_MOD_63:
        return None
    root = isqrt(n)
    return root if root * root == n else None


def is_rational_square(r: Fraction) -> Optional[Fraction]:
    """Return the nonnegative rational root of ``r`` when it has one."""
    r = Fraction(r)
    num_root = is_perfect_square(r.numerator)
    if num_root is None:
        return None
    den_root = is_perfect_square(r.denominator)
    if den_root is None:
        return None
    return Fraction(num_root, den_root)


def squarefree_split(n: int) -> Tuple[int, int]:
    """Split ``n >= 1`` as ``k * m**2`` with ``k`` squarefree.

    Trial division runs while ``p**3`` does not exceed the unfactored rest; what
    is left then has at most two prime factors, so it is either a prime square
    or squarefree.
    """
    n = operator.index(n)
    if n <= 0:
        raise DomainError(f"squarefree split needs a positive integer, got {n}")
    k, m = 1, 1
    rest = n
    p = 2
    while p * p * p <= rest:
        if rest % p == 0:
            exponent = 0
            while rest % p == 0:
                rest //= p
                exponent += 1
            m *= p ** (exponent // 2)
            if exponent % 2:
                k *= p
        p += 1 if p == 2 else 2
    root = is_perfect_square(rest)
    if root is not None:
        m *= root
    else:
        k *= rest
    return k, m


def squarefree_part(n: int) -> int:
    return squarefree_split(n)[0]


def is_squarefree(n: int) -> bool:
    return squarefree_split(n)[1] == 1


def rational(num: int, den: int = 1) -> Fraction:
    """Build a reduced rational, rejecting zero and negative denominators."""
    num = operator.index(num)
    den = operator.index(den)
    if den == 0:
        raise DomainError("division by zero")
    if den < 0:
        raise DomainError(f"negative denominator {den}")
    return Fraction(num, den)


def parse_integer(text: str) -> int:
    if not _INTEGER_RE.match(text):
        raise DomainError(f"not an integer: {text!r}")
    return int(text)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` exactly; no floats, no negative denominators."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise DomainError(f"not a rational number: {text!r}")
    num, den = match.groups()
    return rational(int(num), int(den) if den is not None else 1)


def format_rational(r: Fraction) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"
