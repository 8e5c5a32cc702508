# fourap/search_helper.py
"""Brute-force oracles for the nonexistence claims, scanned over explicit integer ranges.

Each search splits its outer range into contiguous partitions, scans them
independently (in a process pool when there is more than one), then merges and
sorts the hits, so the report does not depend on how the range was split.
Reports always carry their bounds: zero hits is a bounded claim only.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .arith_helper import gcd, is_perfect_square, is_squarefree, squarefree_part
from .errors import DomainError

logger = logging.getLogger(__name__)

FOUR_SQUARE_AP = "four-square-ap"
DOUBLE_SQUARE_PAIRS = "double-square-pairs"
EULER_PAIRS = "euler-pairs"
THREE_SQUARE_AP = "three-square-ap"
SEARCH_KINDS = (FOUR_SQUARE_AP, DOUBLE_SQUARE_PAIRS, EULER_PAIRS, THREE_SQUARE_AP)


@dataclass(frozen=True)
class SearchReport:
    kind: str
    bounds: Dict[str, int]
    options: Dict[str, Any]
    hits: List[Tuple[int, ...]]
    exhaustive: bool = True
    partitions: int = 1

    @property
    def relaxed(self) -> bool:
        """True when the search was loosened to demonstrate that the oracle detects hits."""
        if self.kind == FOUR_SQUARE_AP:
            return self.options.get("terms", 4) != 4
        if self.kind == DOUBLE_SQUARE_PAIRS:
            return not self.options.get("require_both", True)
        if self.kind == EULER_PAIRS:
            return not (self.options.get("strict_parity", True) and self.options.get("require_both", True))
        return False


def partition_range(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    """Split [lo, hi] into at most ``parts`` contiguous, disjoint, ordered pieces."""
    if hi < lo:
        return []
    count = hi - lo + 1
    parts = max(1, min(parts, count))
    size, extra = divmod(count, parts)
    pieces = []
    start = lo
    for index in range(parts):
        end = start + size - 1 + (1 if index < extra else 0)
        pieces.append((start, end))
        start = end + 1
    return pieces


def _run_partitioned(scan: Callable, ranges: Sequence[Tuple[int, int]], args: tuple,
                     workers: Optional[int]) -> List[Tuple[int, ...]]:
    if len(ranges) <= 1:
        results = [scan(lo, hi, *args) for lo, hi in ranges]
    else:
        max_workers = workers or min(len(ranges), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            futures = [pool.submit(scan, lo, hi, *args) for lo, hi in ranges]
            results = [future.result() for future in futures]
    hits = sorted({hit for part in results for hit in part})
    return hits


# ---------------------- Range scans ----------------------

def _scan_four_square(b_lo: int, b_hi: int, terms: int) -> List[Tuple[int, ...]]:
    logger.info("🔎 four-square scan b in [%d, %d]", b_lo, b_hi)
    hits = []
    for b in range(max(b_lo, 2), b_hi + 1):
        b2 = b * b
        for a in range(1, b):
            d = b2 - a * a
            third = b2 + d
            if is_perfect_square(third) is None:
                continue
            if terms == 3:
                hits.append((a * a, b2, third))
                continue
            fourth = third + d
            if is_perfect_square(fourth) is not None:
                hits.append((a * a, b2, third, fourth))
    return hits


def _scan_double_square(a_lo: int, a_hi: int, d_bound: int, require_both: bool) -> List[Tuple[int, ...]]:
    logger.info("🔎 double-square scan A in [%d, %d]", a_lo, a_hi)
    hits = []
    for A in range(max(a_lo, 1), a_hi + 1):
        sixteen, four = 16 * A * A, 4 * A * A
        for D in range(1, d_bound + 1, 2):
            d2 = D * D
            if is_perfect_square(sixteen + d2) is None:
                continue
            if require_both and is_perfect_square(four + d2) is None:
                continue
            if gcd(A, D) == 1:
                hits.append((A, D))
    return hits


def _scan_euler(x_lo: int, x_hi: int, y_bound: int, strict_parity: bool, require_both: bool) -> List[Tuple[int, ...]]:
    logger.info("🔎 Euler-pair scan x in [%d, %d]", x_lo, x_hi)
    hits = []
    y_values = range(2, y_bound + 1, 2) if strict_parity else range(1, y_bound + 1)
    for x in range(max(x_lo, 1), x_hi + 1):
        if strict_parity and x % 2 == 0:
            continue
        x2 = x * x
        for y in y_values:
            y2 = y * y
            if is_perfect_square(x2 + y2) is None:
                continue
            if require_both and is_perfect_square(x2 + 4 * y2) is None:
                continue
            hits.append((x, y))
    return hits


def _scan_three_square(s_lo: int, s_hi: int, root_bound: int, k: int) -> List[Tuple[int, ...]]:
    logger.info("🔎 three-square scan s in [%d, %d] for k=%d", s_lo, s_hi, k)
    hits = []
    limit = root_bound * root_bound
    for s in range(max(s_lo, 2), s_hi + 1):
        s2 = s * s
        for r in range(1, s):
            t2 = 2 * s2 - r * r
            if t2 > limit or is_perfect_square(t2) is None:
                continue
            if squarefree_part(s2 - r * r) == k:
                hits.append((r * r, s2, t2))
    return hits


# ---------------------- Searches ----------------------

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def search_four_square_ap(root_bound: int, terms: int = 4, partitions: int = 1,
                          workers: Optional[int] = None) -> SearchReport:
    """Squares a^2 < b^2 (a, b <= root_bound) extended by d = b^2 - a^2 while they stay squares."""
    _require(root_bound >= 2, f"root bound must be at least 2, got {root_bound}")
    _require(terms in (3, 4), f"terms must be 3 or 4, got {terms}")
    ranges = partition_range(2, root_bound, partitions)
    hits = _run_partitioned(_scan_four_square, ranges, (terms,), workers)
    return SearchReport(FOUR_SQUARE_AP, {"root_bound": root_bound}, {"terms": terms}, hits, True, len(ranges))


def search_double_square_pairs(a_bound: int, d_bound: int, require_both: bool = True, partitions: int = 1,
                               workers: Optional[int] = None) -> SearchReport:
    """Coprime A <= a_bound, odd D <= d_bound with 16A^2 + D^2 (and 4A^2 + D^2) square."""
    _require(a_bound >= 1 and d_bound >= 1, f"bounds must be positive, got {a_bound}, {d_bound}")
    ranges = partition_range(1, a_bound, partitions)
    hits = _run_partitioned(_scan_double_square, ranges, (d_bound, require_both), workers)
    return SearchReport(DOUBLE_SQUARE_PAIRS, {"a_bound": a_bound, "d_bound": d_bound},
                        {"require_both": require_both}, hits, True, len(ranges))


def search_euler_pairs(x_bound: int, y_bound: int, strict_parity: bool = True, require_both: bool = True,
                       partitions: int = 1, workers: Optional[int] = None) -> SearchReport:
    """x <= x_bound, y <= y_bound with x^2 + y^2 (and x^2 + 4y^2) square; strict: x odd, y even."""
    _require(x_bound >= 2 and y_bound >= 2, f"bounds must be at least 2, got {x_bound}, {y_bound}")
    ranges = partition_range(1, x_bound, partitions)
    hits = _run_partitioned(_scan_euler, ranges, (y_bound, strict_parity, require_both), workers)
    return SearchReport(EULER_PAIRS, {"x_bound": x_bound, "y_bound": y_bound},
                        {"strict_parity": strict_parity, "require_both": require_both}, hits, True, len(ranges))


def search_three_square_ap(k: int, root_bound: int, partitions: int = 1,
                           workers: Optional[int] = None) -> SearchReport:
    """Integer squares r^2 < s^2 < t^2 (t <= root_bound) in AP whose difference has squarefree part k."""
    _require(k >= 1 and is_squarefree(k), f"{k} is not a positive squarefree integer")
    _require(root_bound >= 2, f"root bound must be at least 2, got {root_bound}")
    ranges = partition_range(2, root_bound, partitions)
    hits = _run_partitioned(_scan_three_square, ranges, (root_bound, k), workers)
    return SearchReport(THREE_SQUARE_AP, {"k": k, "root_bound": root_bound}, {}, hits, True, len(ranges))


# ---------------------- Re-validation ----------------------

def _in_ap(values: Sequence[int]) -> bool:
    steps = {right - left for left, right in zip(values, values[1:])}
    return len(steps) == 1 and steps.pop() > 0


def validate_hit(report: SearchReport, hit: Sequence[int]) -> bool:
    """Re-check one hit against the condition its search scanned for."""
    hit = tuple(hit)
    bounds, options = report.bounds, report.options
    if report.kind == FOUR_SQUARE_AP:
        roots = [is_perfect_square(value) for value in hit]
        return (len(hit) == options.get("terms", 4) and None not in roots and _in_ap(hit)
                and 1 <= roots[0] < roots[1] <= bounds["root_bound"])
    if report.kind == DOUBLE_SQUARE_PAIRS:
        if len(hit) != 2:
            return False
        A, D = hit
        ok = (1 <= A <= bounds["a_bound"] and 1 <= D <= bounds["d_bound"] and D % 2 == 1
              and gcd(A, D) == 1 and is_perfect_square(16 * A * A + D * D) is not None)
        return ok and (not options.get("require_both", True) or is_perfect_square(4 * A * A + D * D) is not None)
    if report.kind == EULER_PAIRS:
        if len(hit) != 2:
            return False
        x, y = hit
        ok = (1 <= x <= bounds["x_bound"] and 1 <= y <= bounds["y_bound"]
              and is_perfect_square(x * x + y * y) is not None)
        if options.get("strict_parity", True):
            ok = ok and x % 2 == 1 and y % 2 == 0
        return ok and (not options.get("require_both", True) or is_perfect_square(x * x + 4 * y * y) is not None)
    if report.kind == THREE_SQUARE_AP:
        if len(hit) != 3 or not _in_ap(hit):
            return False
        roots = [is_perfect_square(value) for value in hit]
        return (None not in roots and roots[2] <= bounds["root_bound"]
                and squarefree_part(hit[1] - hit[0]) == bounds["k"])
    return False


def validate_report(report: SearchReport) -> List[str]:
    """Problems with a report; an empty list means every hit re-validates and the order is canonical."""
    problems = []
    if report.kind not in SEARCH_KINDS:
        problems.append(f"unknown search kind {report.kind!r}")
        return problems
    for hit in report.hits:
        if not validate_hit(report, hit):
            problems.append(f"hit {hit} does not satisfy the {report.kind} condition")
    if list(report.hits) != sorted(set(map(tuple, report.hits))):
        problems.append("hits are not sorted and unique")
    return problems
