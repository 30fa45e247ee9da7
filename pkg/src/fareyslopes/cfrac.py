"""Irrational numbers as partial-quotient streams, and their convergents.

Two kinds of stream:

* ``EventuallyPeriodic`` — a genuine quadratic irrational given by a
  preperiod (starting with a₀ ∈ ℤ) and a nonempty repeating period; both are
  canonicalised at construction (minimal period, then minimal preperiod) so
  that structural equality decides value equality.
* ``FinitePrefix`` — only finitely many quotients are known.  Any question
  whose answer is not forced by the known quotients raises
  ``PrecisionExhausted`` carrying the depth that would have been consumed.

No floating representation enters any predicate here; floats appear only in
the convenience ``approx`` used by rendering and test oracles.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionExhausted
from .exact import ReducedFraction

_CF_RE = re.compile(
    r"^\s*\[\s*(-?\d+)\s*(?:;\s*(.*?))?\s*\]\s*$"
)


def _minimal_period(period):
    """Smallest primitive period whose repetition gives ``period``."""
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[: d] * (n // d):
            return period[:d]
    return period  # unreachable


class IrrationalNumber:
    """Base class; use EventuallyPeriodic or FinitePrefix."""

    def quotient(self, i: int) -> int:
        raise NotImplementedError

    # -- convergent machinery (shared) --------------------------------

    def _ensure(self, i: int) -> None:
        """Extend the (p, q) memo so that convergent i is available."""
        # memo[k] holds (p, q) for convergent index k-1; memo[0] = (1, 0).
        with self._lock:
            while len(self._memo) < i + 2:
                k = len(self._memo) - 1  # convergent index to compute
                a = self.quotient(k)
                if k == 0:
                    p_prev, q_prev = self._memo[0]
                    p, q = a * p_prev + 0, a * q_prev + 1
                else:
                    p_prev, q_prev = self._memo[k]
                    p_prev2, q_prev2 = self._memo[k - 1]
                    p, q = a * p_prev + p_prev2, a * q_prev + q_prev2
                self._memo.append((p, q))

    def convergent(self, i: int) -> ReducedFraction:
        """β_i = p_i/q_i for i ≥ −1 (β₋₁ = 1/0)."""
        if i < -1:
            raise ValueError("convergent index starts at -1")
        self._ensure(i)
        p, q = self._memo[i + 1]
        return ReducedFraction(p, q)

    def convergent_pair(self, i: int) -> tuple:
        """Raw (p_i, q_i) without reduction (always already coprime)."""
        self._ensure(i)
        return self._memo[i + 1]

    def approx(self, depth: int = 30) -> float:
        """Float estimate from the depth-th convergent (oracle/render use only)."""
        try:
            p, q = self.convergent_pair(depth)
        except PrecisionExhausted:
            p, q = self.convergent_pair(self.available_depth())
        return p / q

    def available_depth(self) -> int:
        """Largest index i such that quotient(i) is known without error."""
        raise NotImplementedError

    def translated(self, k: int) -> "IrrationalNumber":
        """The slope theta + k: same quotients except a0 shifted by k."""
        raise NotImplementedError

    # -- textual form --------------------------------------------------

    @staticmethod
    def from_string(text: str):
        """Parse "[a0;a1,a2,...]" with an optional "(p1,p2,...)" period tail."""
        m = _CF_RE.match(text)
        if not m:
            raise ValueError(f"not a continued fraction: {text!r}")
        a0 = int(m.group(1))
        rest = (m.group(2) or "").strip()
        pre = [a0]
        period = None
        if rest:
            pm = re.match(r"^(.*?)\(\s*([^()]*)\s*\)\s*$", rest)
            if pm:
                head, tail = pm.group(1).strip().rstrip(","), pm.group(2)
                if head:
                    pre += [int(t) for t in head.split(",")]
                period = [int(t) for t in tail.split(",")]
            else:
                pre += [int(t) for t in rest.split(",")]
        if period is not None:
            return EventuallyPeriodic(pre, period)
        return FinitePrefix(pre)


class EventuallyPeriodic(IrrationalNumber):
    """Quadratic irrational [a₀; a₁, …, a_k, (b₁, …, b_ℓ)]."""

    def __init__(self, preperiod, period):
        preperiod = [int(a) for a in preperiod]
        period = [int(a) for a in period]
        if not preperiod:
            raise ValueError("a0 must be given explicitly")
        if not period:
            raise ValueError("period must be nonempty (rationals are not irrational)")
        if any(a < 1 for a in preperiod[1:]) or any(a < 1 for a in period):
            raise ValueError("partial quotients a_i must be >= 1 for i >= 1")
        period = _minimal_period(period)
        # Minimal preperiod: absorb trailing repeats into the period phase.
        while len(preperiod) > 1 and preperiod[-1] == period[-1]:
            preperiod = preperiod[:-1]
            period = [period[-1]] + period[:-1]
        self.preperiod = tuple(preperiod)
        self.period = tuple(period)
        self._memo = [(1, 0)]
        self._lock = threading.Lock()

    def quotient(self, i: int) -> int:
        if i < 0:
            raise ValueError("quotient index starts at 0")
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def available_depth(self) -> int:
        return 10 ** 9  # effectively unbounded

    def __eq__(self, other):
        return (
            isinstance(other, EventuallyPeriodic)
            and self.preperiod == other.preperiod
            and self.period == other.period
        )

    def __hash__(self):
        return hash((self.preperiod, self.period))

    def __str__(self):
        a0, rest = self.preperiod[0], self.preperiod[1:]
        inner = ",".join(str(a) for a in rest)
        tail = "(" + ",".join(str(a) for a in self.period) + ")"
        if inner:
            return f"[{a0};{inner},{tail}]"
        return f"[{a0};{tail}]"

    def __repr__(self):
        return f"EventuallyPeriodic({list(self.preperiod)}, {list(self.period)})"

    def translated(self, k: int) -> "EventuallyPeriodic":
        pre = (self.preperiod[0] + k,) + self.preperiod[1:]
        return EventuallyPeriodic(pre, self.period)


class FinitePrefix(IrrationalNumber):
    """An irrational known only through finitely many partial quotients."""

    def __init__(self, quotients, budget=None):
        quotients = [int(a) for a in quotients]
        if not quotients:
            raise ValueError("a0 must be given explicitly")
        if any(a < 1 for a in quotients[1:]):
            raise ValueError("partial quotients a_i must be >= 1 for i >= 1")
        if budget is not None and budget < len(quotients):
            quotients = quotients[:budget]
        self.quotients = tuple(quotients)
        self.budget = len(self.quotients)
        self._memo = [(1, 0)]
        self._lock = threading.Lock()

    def quotient(self, i: int) -> int:
        if i < 0:
            raise ValueError("quotient index starts at 0")
        if i >= len(self.quotients):
            raise PrecisionExhausted(
                f"prefix of {len(self.quotients)} quotients cannot answer depth {i}",
                needed_depth=i + 1,
            )
        return self.quotients[i]

    def available_depth(self) -> int:
        return len(self.quotients) - 1

    def __eq__(self, other):
        return isinstance(other, FinitePrefix) and self.quotients == other.quotients

    def __hash__(self):
        return hash(self.quotients)

    def __str__(self):
        a0, rest = self.quotients[0], self.quotients[1:]
        if rest:
            return f"[{a0};" + ",".join(str(a) for a in rest) + "]"
        return f"[{a0}]"

    def __repr__(self):
        return f"FinitePrefix({list(self.quotients)})"

    def translated(self, k: int) -> "FinitePrefix":
        return FinitePrefix((self.quotients[0] + k,) + self.quotients[1:])


# -- comparison ------------------------------------------------------------

GREATER = 1
LESS = -1


def compare_theta_rational(theta: IrrationalNumber, r: ReducedFraction) -> int:
    """Exact order of θ against r ∈ ℚ∞: +1 when θ > r, −1 when θ < r.

    Uses the convergent sandwich β₀ < β₂ < … < θ < … < β₃ < β₁: as soon as r
    falls outside the open interval (β_{2i}, β_{2i+1}) the answer is forced.
    Equality never occurs (θ is irrational).  For FinitePrefix sources a
    PrecisionExhausted escapes when the known quotients do not decide.
    """
    if r.is_infinite:
        return LESS  # θ < ∞ on the real line
    i = 0
    while True:
        even = theta.convergent(2 * i)
        odd = theta.convergent(2 * i + 1)
        if r <= even:
            return GREATER
        if odd <= r:
            return LESS
        # Once the sandwich denominator exceeds r's, one more step decides.
        if odd.q > r.q and even.q > r.q:
            # r strictly inside (β_{2i}, β_{2i+1}) with larger denominators
            # on both ends: the next convergent splits the gap.
            even2 = theta.convergent(2 * i + 2)
            if r <= even2:
                return GREATER
            return LESS
        i += 1


def theta_lt(theta: IrrationalNumber, r: ReducedFraction) -> bool:
    return compare_theta_rational(theta, r) == LESS


def theta_gt(theta: IrrationalNumber, r: ReducedFraction) -> bool:
    return compare_theta_rational(theta, r) == GREATER


# -- convergent and semiconvergent tables -----------------------------------


@dataclass
class ConvergentTable:
    """Rows (i, β_i, a_i) for i = −1..n; a₋₁ is reported as None."""

    theta: IrrationalNumber
    rows: list = field(default_factory=list)

    def fractions(self):
        return [beta for (_, beta, _) in self.rows]


def convergents(theta: IrrationalNumber, n: int) -> ConvergentTable:
    """The table of convergents β₋₁ = 1/0, β₀, …, β_n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rows = [(-1, ReducedFraction(1, 0), None)]
    for i in range(n + 1):
        rows.append((i, theta.convergent(i), theta.quotient(i)))
    return ConvergentTable(theta, rows)


def semiconvergents(theta: IrrationalNumber, i: int) -> list:
    """β_{i,m} = (p_i + m·p_{i+1})/(q_i + m·q_{i+1}) for m = 0..a_{i+2}.

    The first entry is β_i and the last is β_{i+2}; consecutive entries are
    Farey neighbours.
    """
    if i < -1:
        raise ValueError("semiconvergent row starts at i = -1")
    p_i, q_i = theta.convergent_pair(i)
    p_n, q_n = theta.convergent_pair(i + 1)
    a = theta.quotient(i + 2)
    return [ReducedFraction(p_i + m * p_n, q_i + m * q_n) for m in range(a + 1)]


def semiconvergent(theta: IrrationalNumber, i: int, m: int) -> ReducedFraction:
    """Single β_{i,m} without materialising the whole row."""
    p_i, q_i = theta.convergent_pair(i)
    p_n, q_n = theta.convergent_pair(i + 1)
    if m < 0:
        raise ValueError("m must be >= 0")
    return ReducedFraction(p_i + m * p_n, q_i + m * q_n)
