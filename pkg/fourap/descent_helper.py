# fourap/descent_helper.py
"""Four squares in arithmetic progression and the descent on (A, D).

A window x - 6n, x - 2n, x + 2n, x + 6n of pairwise coprime odd squares gives
the primitive triple (16n^2, y, x^2 - 20n^2), hence u = 4A^2, v = D^2 with
16A^2 + D^2 and 4A^2 + D^2 both squares, and conversely. The descent step turns
such a pair (A, D) into a strictly smaller one (a, d).

Pipeline operations return a witness or a ``Refutation`` naming the first check
that failed; they raise only when their own preconditions are violated.
"""
import logging
import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import List, Optional, Sequence, Tuple, Union

from .arith_helper import gcd, is_perfect_square, is_rational_square, lcm
from .errors import DomainError, InternalConsistencyError, PreconditionRefuted
from .pythagoras_helper import PrimitiveTriple, euclid_params, params_from_triple

logger = logging.getLogger(__name__)


# ---------------------- Checks ----------------------

def _is_square(value: int) -> bool:
    return is_perfect_square(value) is not None


_PREDICATES = {
    "square": (_is_square, "{0} is not a square"),
    "equal": (lambda lhs, rhs: lhs == rhs, "{0} != {1}"),
    "coprime": (lambda a, b: gcd(a, b) == 1, "gcd({0}, {1}) != 1"),
    "odd": (lambda value: value % 2 == 1, "{0} is not odd"),
    "positive": (lambda value: value > 0, "{0} is not positive"),
    "nonnegative": (lambda value: value >= 0, "{0} is negative"),
    "divisible": (lambda value, modulus: value % modulus == 0, "{0} is not divisible by {1}"),
}


class Check(Enum):
    """Every condition the pipeline tests, with the predicate that decides it."""

    X_POSITIVE = ("x is positive", "positive")
    X_ODD = ("x is odd", "odd")
    N_NONNEGATIVE = ("n is nonnegative", "nonnegative")
    X_N_COPRIME = ("gcd(x, n) = 1", "coprime")
    NUMERATOR_SQUARE = ("numerator is a square", "square")
    DENOMINATOR_SQUARE = ("denominator is a square", "square")
    TERM_POSITIVE = ("term is positive", "positive")
    TERM_SQUARE = ("term is a square", "square")
    TERMS_IN_AP = ("consecutive differences agree", "equal")
    TERMS_ODD = ("reduced term is odd", "odd")
    TERMS_COPRIME = ("terms are pairwise coprime", "coprime")
    DIFFERENCE_DIVISIBLE_BY_4 = ("common difference is divisible by 4", "divisible")
    QUARTIC_IDENTITY = ("y^2 = (x^2-4n^2)(x^2-36n^2)", "equal")
    TRIPLE_COPRIME = ("gcd(16n^2, y) = 1", "coprime")
    HYP_PLUS_LEG_SQUARE = ("x^2-20n^2 + 16n^2 is a square", "square")
    HYP_MINUS_LEG_SQUARE = ("x^2-20n^2 - 16n^2 is a square", "square")
    U_EVEN = ("u is even", "divisible")
    U_DIVISIBLE_BY_4 = ("u is divisible by 4", "divisible")
    U_QUARTER_SQUARE = ("u/4 is a square", "square")
    V_SQUARE = ("v is a square", "square")
    SUM_IDENTITY = ("(4u+v)(u+v) = x^2", "equal")
    FORM_16A2_D2 = ("16A^2+D^2 is a square", "square")
    FORM_4A2_D2 = ("4A^2+D^2 is a square", "square")
    AD_EQUALS_N = ("A*D = n", "equal")
    A_NONNEGATIVE = ("A is nonnegative", "nonnegative")
    D_POSITIVE = ("D is positive", "positive")
    D_ODD = ("D is odd", "odd")
    A_D_COPRIME = ("gcd(A, D) = 1", "coprime")

    def __init__(self, label: str, predicate: str):
        self.label = label
        self.predicate = predicate

    def holds(self, operands: Sequence[int]) -> bool:
        test, _ = _PREDICATES[self.predicate]
        return test(*operands)

    def describe_failure(self, operands: Sequence[int]) -> str:
        _, template = _PREDICATES[self.predicate]
        return template.format(*operands)


@dataclass(frozen=True)
class Refutation:
    step: str
    check: Check
    operands: Tuple[int, ...]

    @property
    def offending_value(self) -> int:
        return self.operands[0]

    @property
    def message(self) -> str:
        return f"{self.step}: {self.check.describe_failure(self.operands)} ({self.check.label})"


def replay(refutation: Refutation) -> bool:
    """True iff re-evaluating the recorded check still fails."""
    return not refutation.check.holds(refutation.operands)


@dataclass(frozen=True)
class AuditEntry:
    step: str
    check: Check
    operands: Tuple[int, ...]
    passed: bool


class Audit:
    """Collects every check a pipeline run performs, for ``--trace`` output."""

    def __init__(self):
        self.entries: List[AuditEntry] = []

    def check(self, step: str, check: Check, *operands: int) -> Optional[Refutation]:
        passed = check.holds(operands)
        self.entries.append(AuditEntry(step, check, tuple(operands), passed))
        logger.debug("%s %s: %s %s", "✅" if passed else "❌", step, check.label, operands)
        if passed:
            return None
        return Refutation(step, check, tuple(operands))


# ---------------------- Domain types ----------------------

@dataclass(frozen=True)
class FourApCandidate:
    x: int
    n: int

    @property
    def is_degenerate(self) -> bool:
        return self.n == 0


DEGENERATE_CANDIDATE = FourApCandidate(1, 0)


@dataclass(frozen=True)
class AdPair:
    A: int
    D: int


DEGENERATE_PAIR = AdPair(0, 1)


@dataclass(frozen=True)
class DescentWitness:
    y: int
    u: int
    v: int
    A: int
    D: int
    # sign of 4u^2 - v^2 relative to y
    odd_leg_sign: int = 1


@dataclass(frozen=True)
class ForwardChain:
    candidate: FourApCandidate
    witness: DescentWitness
    pair: AdPair


@dataclass(frozen=True)
class SplitWitness:
    U: int
    V: int
    Up: int
    Vp: int
    a: int
    b: int
    c: int
    d: int
    swapped: bool = False


@dataclass(frozen=True)
class QuarticRhs:
    value: int
    factors: Tuple[int, int]
    completed_square: Tuple[int, int]


def window_terms(c: FourApCandidate) -> Tuple[int, int, int, int]:
    x, n = c.x, c.n
    return (x - 6 * n, x - 2 * n, x + 2 * n, x + 6 * n)


def validate_pair(p: AdPair) -> None:
    if p.A < 0:
        raise DomainError(f"A = {p.A} is negative")
    if p.D < 1 or p.D % 2 == 0:
        raise DomainError(f"D = {p.D} is not a positive odd integer")
    if gcd(p.A, p.D) != 1:
        raise DomainError(f"gcd(A, D) = gcd({p.A}, {p.D}) != 1")


def validate_witness(w: DescentWitness, c: FourApCandidate) -> None:
    """Re-check every equation a witness claims, from its raw integers."""
    x, n = c.x, c.n
    failures = []
    if w.y < 1 or w.y % 2 == 0:
        failures.append(f"y = {w.y} is not a positive odd integer")
    if w.y * w.y != (x * x - 4 * n * n) * (x * x - 36 * n * n):
        failures.append("y^2 != (x^2-4n^2)(x^2-36n^2)")
    if 4 * w.u * w.v != 16 * n * n:
        failures.append("4uv != 16n^2")
    if 4 * w.u * w.u + w.v * w.v != x * x - 20 * n * n:
        failures.append("4u^2+v^2 != x^2-20n^2")
    if w.odd_leg_sign * (4 * w.u * w.u - w.v * w.v) != w.y:
        failures.append("y != +-(4u^2-v^2)")
    if w.u != 4 * w.A * w.A or w.v != w.D * w.D:
        failures.append("u != 4A^2 or v != D^2")
    if gcd(2 * w.u, w.v) != 1:
        failures.append("gcd(2u, v) != 1")
    if w.A < 0 or w.D < 1 or w.D % 2 == 0:
        failures.append("A < 0 or D not a positive odd integer")
    if failures:
        raise DomainError("; ".join(failures))


def validate_split(s: SplitWitness) -> None:
    failures = []
    if s.U * s.V != s.Up * s.Vp:
        failures.append("UV != U'V'")
    if (s.U, s.V, s.Up, s.Vp) != (2 * s.a * s.b, s.c * s.d, 2 * s.a * s.c, s.b * s.d):
        failures.append("U = 2ab, V = cd, U' = 2ac, V' = bd do not all hold")
    for left, right in combinations((2 * s.a, s.b, s.c, s.d), 2):
        if gcd(left, right) != 1:
            failures.append(f"gcd({left}, {right}) != 1")
    if failures:
        raise DomainError("; ".join(failures))


# ---------------------- Pipeline ----------------------

def clear_denominators(squares: Sequence[Fraction], audit: Optional[Audit] = None) -> Union[Tuple[int, ...], Refutation]:
    """Scale four rational squares in AP to integer squares in AP."""
    step = "clear_denominators"
    audit = Audit() if audit is None else audit
    values = [Fraction(s) for s in squares]
    if len(values) != 4:
        raise DomainError(f"expected four rationals, got {len(values)}")

    root_denominators = []
    for value in values:
        refusal = audit.check(step, Check.NUMERATOR_SQUARE, value.numerator)
        if refusal:
            return refusal
        refusal = audit.check(step, Check.DENOMINATOR_SQUARE, value.denominator)
        if refusal:
            return refusal
        root_denominators.append(is_rational_square(value).denominator)

    scale = lcm(*root_denominators)
    scaled = tuple(int(value * scale * scale) for value in values)
    for left, middle, right in zip(scaled, scaled[1:], scaled[2:]):
        refusal = audit.check(step, Check.TERMS_IN_AP, middle - left, right - middle)
        if refusal:
            return refusal
    return scaled


def normalize_window(squares: Sequence[int], audit: Optional[Audit] = None) -> Union[FourApCandidate, Refutation]:
    """Reduce four integer squares in AP to the window (x, n)."""
    step = "normalize_window"
    audit = Audit() if audit is None else audit
    terms = [operator.index(s) for s in squares]
    if len(terms) != 4:
        raise DomainError(f"expected four integers, got {len(terms)}")
    if terms[0] > terms[-1]:
        terms.reverse()

    for term in terms:
        refusal = audit.check(step, Check.TERM_POSITIVE, term) or audit.check(step, Check.TERM_SQUARE, term)
        if refusal:
            return refusal
    for left, middle, right in zip(terms, terms[1:], terms[2:]):
        refusal = audit.check(step, Check.TERMS_IN_AP, middle - left, right - middle)
        if refusal:
            return refusal

    common = gcd(*terms)
    reduced = [term // common for term in terms]
    for term in reduced:
        refusal = audit.check(step, Check.TERM_SQUARE, term) or audit.check(step, Check.TERMS_ODD, term)
        if refusal:
            return refusal
    for left, right in combinations(reduced, 2):
        refusal = audit.check(step, Check.TERMS_COPRIME, left, right)
        if refusal:
            return refusal
    refusal = audit.check(step, Check.DIFFERENCE_DIVISIBLE_BY_4, reduced[1] - reduced[0], 4)
    if refusal:
        return refusal

    candidate = FourApCandidate(x=(reduced[1] + reduced[2]) // 2, n=(reduced[2] - reduced[1]) // 4)
    if window_terms(candidate) != tuple(reduced):
        raise InternalConsistencyError(f"window {candidate} does not reproduce {reduced}")
    return candidate


def quartic_rhs(x: int, n: int) -> QuarticRhs:
    """(x^2 - 4n^2)(x^2 - 36n^2), checked against (x^2 - 20n^2)^2 - 256n^4."""
    x2, n2 = x * x, n * n
    factors = (x2 - 4 * n2, x2 - 36 * n2)
    completed = (x2 - 20 * n2, 256 * n2 * n2)
    value = factors[0] * factors[1]
    if value != completed[0] * completed[0] - completed[1]:
        raise InternalConsistencyError(f"quartic identity fails at x={x}, n={n}")
    return QuarticRhs(value, factors, completed)


def sum_identity_check(u, v, n, x) -> bool:
    """Given 4uv = 16n^2 and 4u^2 + v^2 = x^2 - 20n^2, confirm (4u + v)(u + v) = x^2."""
    values = {}
    for name, value in (("u", u), ("v", v), ("n", n), ("x", x)):
        value = Fraction(value)
        if value.denominator != 1:
            raise DomainError(f"{name} = {value} is not an integer")
        values[name] = value.numerator
    u, v, n, x = values["u"], values["v"], values["n"], values["x"]
    if 4 * u * v != 16 * n * n:
        raise DomainError(f"4uv = {4 * u * v} != 16n^2 = {16 * n * n}")
    if 4 * u * u + v * v != x * x - 20 * n * n:
        raise DomainError(f"4u^2+v^2 = {4 * u * u + v * v} != x^2-20n^2 = {x * x - 20 * n * n}")
    return (4 * u + v) * (u + v) == x * x


def forward_to_ad(c: FourApCandidate, audit: Optional[Audit] = None) -> Union[ForwardChain, Refutation]:
    """Walk from a window to its (A, D) pair, recording every intermediate quantity."""
    step = "forward_to_ad"
    audit = Audit() if audit is None else audit
    x, n = c.x, c.n

    refusal = (audit.check(step, Check.X_POSITIVE, x) or audit.check(step, Check.X_ODD, x)
               or audit.check(step, Check.N_NONNEGATIVE, n))
    if refusal:
        return refusal
    if n > 0:
        refusal = audit.check(step, Check.X_N_COPRIME, x, n)
        if refusal:
            return refusal

    terms = window_terms(c)
    roots = []
    for term in terms:
        refusal = audit.check(step, Check.TERM_POSITIVE, term) or audit.check(step, Check.TERM_SQUARE, term)
        if refusal:
            return refusal
        roots.append(is_perfect_square(term))
    for left, right in combinations(terms, 2):
        refusal = audit.check(step, Check.TERMS_COPRIME, left, right)
        if refusal:
            return refusal

    y = prod(roots)
    rhs = quartic_rhs(x, n)
    refusal = audit.check(step, Check.QUARTIC_IDENTITY, y * y, rhs.value)
    if refusal:
        return refusal

    even_leg, hyp = 16 * n * n, rhs.completed_square[0]
    refusal = (audit.check(step, Check.TRIPLE_COPRIME, even_leg, y)
               or audit.check(step, Check.HYP_PLUS_LEG_SQUARE, hyp + even_leg)
               or audit.check(step, Check.HYP_MINUS_LEG_SQUARE, hyp - even_leg))
    if refusal:
        return refusal
    try:
        params = params_from_triple(PrimitiveTriple(even_leg, y, hyp), allow_degenerate=True)
    except DomainError as exc:
        raise InternalConsistencyError(f"triple ({even_leg}, {y}, {hyp}) passed its checks but has no parameters") from exc
    u, v = params.u, params.v

    refusal = (audit.check(step, Check.U_EVEN, u, 2) or audit.check(step, Check.U_DIVISIBLE_BY_4, u, 4)
               or audit.check(step, Check.U_QUARTER_SQUARE, u // 4) or audit.check(step, Check.V_SQUARE, v))
    if refusal:
        return refusal
    A, D = is_perfect_square(u // 4), is_perfect_square(v)

    sum_identity_check(u, v, n, x)
    refusal = (audit.check(step, Check.SUM_IDENTITY, (4 * u + v) * (u + v), x * x)
               or audit.check(step, Check.FORM_16A2_D2, 16 * A * A + D * D)
               or audit.check(step, Check.FORM_4A2_D2, 4 * A * A + D * D)
               or audit.check(step, Check.AD_EQUALS_N, A * D, n))
    if refusal:
        return refusal

    witness = DescentWitness(y=y, u=u, v=v, A=A, D=D, odd_leg_sign=params.odd_leg_sign)
    try:
        validate_witness(witness, c)
    except DomainError as exc:
        raise InternalConsistencyError(f"witness for {c} fails re-validation: {exc}") from exc
    logger.info("✅ window (x=%d, n=%d) reaches (A, D) = (%d, %d)", x, n, A, D)
    return ForwardChain(candidate=c, witness=witness, pair=AdPair(A, D))


def ad_to_ap(p: AdPair, audit: Optional[Audit] = None) -> Union[FourApCandidate, Refutation]:
    """Rebuild the window with common difference 4AD from a certified (A, D)."""
    step = "ad_to_ap"
    audit = Audit() if audit is None else audit
    validate_pair(p)
    A, D = p.A, p.D
    u, v = 4 * A * A, D * D

    refusal = audit.check(step, Check.FORM_16A2_D2, 4 * u + v) or audit.check(step, Check.FORM_4A2_D2, u + v)
    if refusal:
        return refusal
    x = is_perfect_square(4 * u + v) * is_perfect_square(u + v)
    if x * x != (4 * u + v) * (u + v):
        raise InternalConsistencyError(f"x^2 = {x * x} != (4u+v)(u+v) for {p}")

    candidate = FourApCandidate(x=x, n=A * D)
    for term in window_terms(candidate):
        if audit.check(step, Check.TERM_SQUARE, term):
            raise InternalConsistencyError(f"{p} is certified but window term {term} is not a square")
    return candidate


def split_factorizations(A: int, U: int, V: int, Up: int, Vp: int) -> SplitWitness:
    """Refine the two factorizations A = UV = U'V' into pairwise coprime 2a, b, c, d.

    b = gcd(U, V'), c = gcd(U', V), d = gcd(V, V'), a = U/(2b); the result is
    re-checked rather than trusted. If U is the odd factor the roles of U and V
    are swapped first (which flips the sign of U^2 - V^2).
    """
    if U * V != A or Up * Vp != A:
        raise DomainError(f"UV = {U * V} and U'V' = {Up * Vp} must both equal A = {A}")
    if gcd(U, V) != 1:
        raise DomainError(f"gcd(U, V) = gcd({U}, {V}) != 1")
    if gcd(2 * Up, Vp) != 1:
        raise DomainError(f"gcd(2U', V') = gcd({2 * Up}, {Vp}) != 1")
    swapped = False
    if U % 2:
        U, V, swapped = V, U, True
    if U % 2:
        raise DomainError(f"A = {A} is odd; one of U, V must be even")

    b, c, d = gcd(U, Vp), gcd(Up, V), gcd(V, Vp)
    if U % (2 * b):
        raise DomainError(f"2b = {2 * b} does not divide U = {U}")
    a = U // (2 * b)
    split = SplitWitness(U=U, V=V, Up=Up, Vp=Vp, a=a, b=b, c=c, d=d, swapped=swapped)
    validate_split(split)
    return split


def descent_step(p: AdPair, audit: Optional[Audit] = None) -> AdPair:
    """Map a certified (A, D) to a certified (a, d) with a*d < A*D; (0, 1) is fixed."""
    step = "descent_step"
    audit = Audit() if audit is None else audit
    A, D = p.A, p.D
    preconditions = (
        (Check.A_NONNEGATIVE, A),
        (Check.D_POSITIVE, D),
        (Check.D_ODD, D),
        (Check.A_D_COPRIME, A, D),
        (Check.FORM_16A2_D2, 16 * A * A + D * D),
        (Check.FORM_4A2_D2, 4 * A * A + D * D),
    )
    for check, *operands in preconditions:
        refusal = audit.check(step, check, *operands)
        if refusal:
            raise PreconditionRefuted(refusal)
    if A == 0:
        return p

    s = is_perfect_square(16 * A * A + D * D)
    t = is_perfect_square(4 * A * A + D * D)
    # 2UV = 2A, U^2 - V^2 = D
    U, V = euclid_params(2 * A, D, t)
    # 4U'V' = 4A, 4U'^2 - V'^2 = +-D
    primed = params_from_triple(PrimitiveTriple(4 * A, D, s))
    split = split_factorizations(A, U, V, primed.u, primed.v)
    a, b, c, d = split.a, split.b, split.c, split.d

    sign_first = -1 if split.swapped else 1
    sign_second = primed.odd_leg_sign
    if sign_first == sign_second:
        balanced = b * b * (4 * a * a + d * d) == c * c * (16 * a * a + d * d)
    else:
        balanced = 4 * a * a * (b * b + 4 * c * c) == d * d * (b * b + c * c)
    if not balanced:
        raise InternalConsistencyError(f"split {split} does not balance for {p}")

    refusal = audit.check(step, Check.FORM_16A2_D2, 16 * a * a + d * d) or audit.check(step, Check.FORM_4A2_D2, 4 * a * a + d * d)
    if refusal:
        raise InternalConsistencyError(f"descent from {p} produced (a, d) = ({a}, {d}) but {refusal.message}")
    if a * d >= A * D:
        raise InternalConsistencyError(f"descent from {p} did not decrease: a*d = {a * d}")
    logger.warning("🚨 nontrivial descent step (%d, %d) -> (%d, %d)", A, D, a, d)
    return AdPair(a, d)


def descent_chain(p: AdPair, max_steps: int = 64, audit: Optional[Audit] = None) -> List[AdPair]:
    """Apply ``descent_step`` until the fixpoint; the chain starts with ``p``."""
    chain = [p]
    current = p
    for _ in range(max_steps):
        following = descent_step(current, audit=audit)
        if following == current:
            return chain
        if following.A * following.D >= current.A * current.D:
            raise InternalConsistencyError(f"descent stalled at {current}")
        chain.append(following)
        current = following
    raise InternalConsistencyError(f"descent from {p} exceeded {max_steps} steps")
