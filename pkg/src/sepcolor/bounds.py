"""Closed-form thresholds for separation choosability of balanced targets.

All comparisons are exact integer or rational arithmetic; floats appear
only in the informational asymptotic reference value.

Upper thresholds come from the first-moment bound (a uniform random class
assignment leaves fewer than one unhappy list in expectation); lower
thresholds from the explicit nearly-disjoint-family conditions
m >= 4*(k/(k-1))^r*(2r^2)^k (graph targets) and m >= 4*k^r*(k*r^2)^k
(hypergraph targets), which certify chi_l > r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

GRAPH = "graph"
HYPERGRAPH = "hypergraph"


def _check_mode(mode: str) -> None:
    if mode not in (GRAPH, HYPERGRAPH):
        raise ValueError(f"mode must be 'graph' or 'hypergraph', got {mode!r}")


def upper_threshold(k: int, m: int, mode: str) -> int:
    """Least list size r that guarantees colorability.

    graph: least r with k*m < (k/(k-1))^r (compared as k*m*(k-1)^r < k^r);
    hypergraph: least r with m < k^(r-1).
    """
    _check_mode(mode)
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    r = 1
    if mode == GRAPH:
        while not k * m * (k - 1) ** r < k**r:
            r += 1
    else:
        while not m < k ** (r - 1):
            r += 1
    return r


def _lower_condition(k: int, r: int, mode: str) -> Fraction:
    if mode == GRAPH:
        return Fraction(4) * Fraction(k, k - 1) ** r * (2 * r * r) ** k
    return Fraction(4 * k**r * (k * r * r) ** k)


def lower_threshold(k: int, m: int, mode: str) -> Optional[int]:
    """Largest r >= 2 whose lower-bound condition m >= ... holds, or None.

    A returned r supports the claim chi_l > r, i.e. chi_l >= r + 1.  r is
    floored at 2 because the family constructions need uniformity >= 2.
    """
    _check_mode(mode)
    if k < 2 or m < 1:
        raise ValueError("need k >= 2 and m >= 1")
    best = None
    r = 2
    while Fraction(m) >= _lower_condition(k, r, mode):
        best = r
        r += 1
    return best


def expected_unhappy(k: int, m: int, r: int, mode: str) -> Fraction:
    """Expected unhappy lists under a uniform random class assignment.

    graph: k*m*((k-1)/k)^r; hypergraph: k*m*k^(-r).  Exact rational.
    """
    _check_mode(mode)
    if k < 1 or m < 1 or r < 1:
        raise ValueError("k, m, r must all be positive")
    if mode == GRAPH:
        return Fraction(k * m * (k - 1) ** r, k**r)
    return Fraction(k * m, k**r)


def asymptotic_value(k: int, m: int, mode: str) -> float:
    """Reference asymptotic log_{k/(k-1)} m (graph) or log_k m (hypergraph).

    Informational only; no bound claim is attached to this number.
    """
    _check_mode(mode)
    if k < 2 or m < 2:
        raise ValueError("need k >= 2 and m >= 2")
    base = k / (k - 1) if mode == GRAPH else k
    return math.log(m) / math.log(base)


@dataclass(frozen=True)
class BoundReport:
    """Upper/lower thresholds for one balanced target, plus the reference
    asymptotic.  ``consistent`` is False only on a defect (lower >= upper)."""

    k: int
    m: int
    mode: str
    upper_r: int
    lower_r: Optional[int]
    asymptotic: float
    notes: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return self.lower_r is None or self.lower_r < self.upper_r

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "mode": self.mode,
            "upper_r": self.upper_r,
            "lower_r": self.lower_r,
            "chi_lower": None if self.lower_r is None else self.lower_r + 1,
            "asymptotic": self.asymptotic,
            "consistent": self.consistent,
            "notes": list(self.notes),
        }


def bound_report(k: int, m: int, mode: str) -> BoundReport:
    upper = upper_threshold(k, m, mode)
    lower = lower_threshold(k, m, mode)
    notes = []
    if lower is not None:
        notes.append(
            f"lists of size <= {lower} admit an uncolorable 1-separated assignment "
            f"for some part size <= m; lists of size {upper} always color"
        )
    else:
        notes.append(f"no r >= 2 satisfies the lower-bound condition at m = {m}")
    asym = asymptotic_value(k, m, mode) if m >= 2 else float("nan")
    report = BoundReport(k, m, mode, upper, lower, asym, tuple(notes))
    if not report.consistent:
        raise RuntimeError(
            f"threshold defect: lower_r {lower} >= upper_r {upper} for "
            f"(k={k}, m={m}, {mode})"
        )
    return report


# --- unbalanced multipartite targets -----------------------------------------


@dataclass(frozen=True)
class IntervalCheck:
    member: int  # 0-based part index (sorted by size)
    m: int
    low: int  # ceil of the rational lower endpoint
    high: int
    empty: bool
    contains: bool


@dataclass(frozen=True)
class UnbalancedReport:
    """Outcome of the unbalanced lower-bound condition.

    ``r`` is the largest candidate with m_1 >= 4*q^k*(k/(k-1))^r where
    q = ceil(k*r^2/(k-1)); the claim chi_l > r is certified only when
    every m_i falls in [that value, C(q,r)*q^((i-1)r+(k-i))].  Empty
    intervals are reported, never repaired.
    """

    k: int
    part_sizes: tuple[int, ...]
    r: Optional[int]
    q: Optional[int]
    intervals: tuple[IntervalCheck, ...]
    certified: bool
    reason: str

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "part_sizes": list(self.part_sizes),
            "r": self.r,
            "q": self.q,
            "certified": self.certified,
            "chi_lower": self.r + 1 if self.certified and self.r is not None else None,
            "reason": self.reason,
            "intervals": [
                {
                    "member": iv.member,
                    "m": iv.m,
                    "low": iv.low,
                    "high": iv.high,
                    "empty": iv.empty,
                    "contains": iv.contains,
                }
                for iv in self.intervals
            ],
        }


def _unbalanced_q(k: int, r: int) -> int:
    return math.ceil(Fraction(k * r * r, k - 1))


def _unbalanced_low(k: int, r: int) -> Fraction:
    q = _unbalanced_q(k, r)
    return Fraction(4 * q**k) * Fraction(k, k - 1) ** r


def unbalanced_lower_threshold(k: int, part_sizes: Sequence[int]) -> UnbalancedReport:
    """Lower-bound check for an unbalanced complete multipartite graph.

    ``part_sizes`` must be sorted ascending (m_1 <= ... <= m_k).  Picks the
    largest candidate r >= 2 allowed by m_1, then checks every part size
    against its interval; per-part status is always reported.
    """
    sizes = tuple(part_sizes)
    if k < 2 or len(sizes) != k:
        raise ValueError(f"need k >= 2 part sizes, got {len(sizes)} for k={k}")
    if any(m < 1 for m in sizes):
        raise ValueError("part sizes must be positive")
    if list(sizes) != sorted(sizes):
        raise ValueError("part sizes must be sorted ascending (m_1 <= ... <= m_k)")
    m1 = sizes[0]
    candidate = None
    r = 2
    while Fraction(m1) >= _unbalanced_low(k, r):
        candidate = r
        r += 1
    if candidate is None:
        return UnbalancedReport(
            k,
            sizes,
            None,
            None,
            (),
            False,
            f"no r >= 2 satisfies m_1 >= 4*q^k*(k/(k-1))^r at m_1 = {m1}",
        )
    r = candidate
    q = _unbalanced_q(k, r)
    low_exact = _unbalanced_low(k, r)
    low = math.ceil(low_exact)
    intervals = []
    ok = True
    for i, m in enumerate(sizes):
        high = math.comb(q, r) * q ** (i * r + (k - 1 - i))
        empty = high < low_exact
        contains = (not empty) and Fraction(m) >= low_exact and m <= high
        intervals.append(IntervalCheck(i, m, low, high, empty, contains))
        ok = ok and contains
    if ok:
        reason = f"all part sizes lie in their intervals at r = {r}"
    else:
        empties = [iv.member for iv in intervals if iv.empty]
        if empties:
            reason = (
                f"interval empty at r = {r} for member(s) {empties}: "
                f"capacity upper end below the lower value {low}"
            )
        else:
            outs = [iv.member for iv in intervals if not iv.contains]
            reason = f"part size(s) {outs} fall outside their intervals at r = {r}"
    return UnbalancedReport(k, sizes, r, q, tuple(intervals), ok, reason)
