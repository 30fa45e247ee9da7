"""Divisibility invariants of a quotient stream, and the CRT constructor.

The central object is the chain c_i = gcd(q_{2i}, a_{2i+2}, a_{2i+4}, …) of
gcds of even-index convergent denominators with the even-index quotients past
them; c_i divides c_j for j ≥ i, and the limit (eventual constant) is the
invariant c.  For an eventually periodic stream the tail gcd is the gcd of
one full cycle of even-index period quotients, so every c_i is computed
exactly and stabilisation of the chain is *certified* by cycling a finite
state.  A finite prefix can only ever give lower bounds.

The constructor at the bottom produces quotient prefixes whose chain grows
strictly forever: every prime of q_{2i} divides a_{2i+2} exactly once and a
fresh prime joins at every step — the Chinese-remainder recipe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import factorint, isprime, nextprime

from .cfrac import EventuallyPeriodic, FinitePrefix, IrrationalNumber
from .errors import PrecisionExhausted, PrimePickerExhausted, SeedRejected

# -- report types ------------------------------------------------------------


@dataclass(frozen=True)
class Stabilized:
    c: int


@dataclass(frozen=True)
class LowerBoundOnly:
    last: int


@dataclass(frozen=True)
class Infinite:
    """Declared for completeness; never emitted (certifying c = ∞ from a
    finite prefix is out of scope — a strictly increasing chain is only
    evidence, which LowerBoundOnly already carries)."""

    witness: tuple


@dataclass
class CThetaReport:
    theta: IrrationalNumber
    c_values: list = field(default_factory=list)  # (i, c_i)
    status: object = None

    def chain(self):
        return [c for (_, c) in self.c_values]


# -- the c invariant ---------------------------------------------------------


def _even_orbit_gcd(theta: EventuallyPeriodic, j0: int) -> int:
    """gcd of the quotients a_{j0}, a_{j0+2}, a_{j0+4}, … for j0 past the
    preperiod — one full period of the even-step orbit covers them all."""
    ell = len(theta.period)
    g = 0
    for t in range(ell):
        g = math.gcd(g, theta.quotient(j0 + 2 * t))
    return g


def _tail_gcd(theta: EventuallyPeriodic, start: int) -> int:
    """gcd of a_j over even steps j = start, start+2, … (infinite tail)."""
    n0 = len(theta.preperiod)
    g = 0
    j = start
    while j < n0:
        g = math.gcd(g, theta.quotient(j))
        j += 2
    return math.gcd(g, _even_orbit_gcd(theta, j))


def c_theta(theta: IrrationalNumber, budget: int = 64) -> CThetaReport:
    """The chain c_i = gcd(q_{2i}, a_{2i+2}, a_{2i+4}, …) and its limit.

    EventuallyPeriodic input always stabilises: past the preperiod the tail
    gcd is a fixed A (one full cycle of even-index period quotients), so
    c_i = gcd(q_{2i}, A) and the chain is monotone in divisibility and
    bounded by A; a repeated state (period phase, q_{2i} mod A, q_{2i+1}
    mod A) certifies constancy from the first occurrence on.

    FinitePrefix input folds quotients up to a common cutoff and reports
    LowerBoundOnly: the true c_i divides each reported value (deeper
    quotients can only shrink a gcd), so no limit is claimed — the report is
    divisibility-chain evidence only.
    """
    if budget < 2:
        raise ValueError("budget must be >= 2")
    report = CThetaReport(theta)

    if isinstance(theta, EventuallyPeriodic):
        n0 = len(theta.preperiod)
        ell = len(theta.period)
        seen = {}
        i = 0
        while True:
            _, q2i = theta.convergent_pair(2 * i)
            start = 2 * i + 2
            A = _tail_gcd(theta, start)
            c_i = math.gcd(q2i, A)
            report.c_values.append((i, c_i))
            if 2 * i >= n0:
                # Past the preperiod the whole future is determined by the
                # phase and the q-pair mod A (A constant along the chain).
                _, q2i1 = theta.convergent_pair(2 * i + 1)
                key = ((2 * i - n0) % (2 * ell), q2i % A, q2i1 % A)
                if key in seen:
                    report.status = Stabilized(c_i)
                    return report
                seen[key] = i
            i += 1
            if i > 10000:  # unreachable: state space is at most 2ℓ·A²
                raise AssertionError("c_theta failed to cycle")

    # Finite prefix: fold everything available up to the budget.  Entries
    # that would fold no quotient at all (bare q_{2i}) are not evidence and
    # are omitted.
    cutoff = min(theta.available_depth(), budget)
    top_even = cutoff - (cutoff % 2)
    if top_even < 2:
        raise PrecisionExhausted(
            "need at least the quotient a2 to fold a gcd", needed_depth=3
        )
    last = None
    i = 0
    while 2 * i + 2 <= top_even:
        _, q2i = theta.convergent_pair(2 * i)
        g = q2i
        for j in range(2 * i + 2, top_even + 1, 2):
            g = math.gcd(g, theta.quotient(j))
        report.c_values.append((i, g))
        last = g
        i += 1
    report.status = LowerBoundOnly(last)
    return report


def d_chain(theta: IrrationalNumber, n: int) -> list:
    """d_i = gcd(q_{2i}, a_{2i+2}) for i = 0..n−1.

    The identity gcd(q_{2i}, q_{2i+2}) = gcd(q_{2i}, a_{2i+2}) — immediate
    from q_{2i+2} = a_{2i+2}·q_{2i+1} + q_{2i} and coprimality of
    consecutive denominators — is cross-checked on every entry.
    """
    out = []
    for i in range(n):
        _, q2i = theta.convergent_pair(2 * i)
        a = theta.quotient(2 * i + 2)
        d = math.gcd(q2i, a)
        _, q2i2 = theta.convergent_pair(2 * i + 2)
        assert d == math.gcd(q2i, q2i2)
        out.append(d)
    return out


def bounded_quotients(theta: IrrationalNumber, depth: int = 0):
    """(max of a₁..a_depth, verified depth); for an eventually periodic
    stream the bound is global and exact, signalled by verified depth None."""
    if isinstance(theta, EventuallyPeriodic):
        pool = list(theta.preperiod[1:]) + list(theta.period)
        return (max(pool), None)
    if depth < 1:
        raise ValueError("depth must be >= 1 for a finite prefix")
    if depth > theta.available_depth():
        raise PrecisionExhausted(
            f"prefix has only {theta.available_depth()} quotients past a0",
            needed_depth=depth,
        )
    return (max(theta.quotient(i) for i in range(1, depth + 1)), depth)


# -- the CRT constructor ------------------------------------------------------


def _default_prime_picker(forbidden: int, cap: int = 10**6) -> int:
    """Smallest prime not dividing ``forbidden``."""
    p = 2
    while p <= cap:
        if forbidden % p:
            return p
        p = nextprime(p)
    raise PrimePickerExhausted(f"no fresh prime below {cap}")


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x ≡ r1 (mod m1), x ≡ r2 (mod m2) for coprime m1, m2; smallest x ≥ 1."""
    inv = pow(m1, -1, m2)
    x = (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)
    return x if x else m1 * m2


def construct_special_theta(
    a0: int,
    a1: int,
    a2: int,
    depth: int,
    prime_picker=None,
) -> FinitePrefix:
    """Quotient prefix a₀..a_{2·depth+2} making the d- and c-chains grow.

    Each constructed even quotient is rad(q_{2k})·x where x solves
      x ≡ −q_{2k+1}⁻¹ · (q_{2k}/rad(q_{2k}))  (mod P_fresh)
      x ≡ 1                                    (mod P) for every P | q_{2k}
    with P_fresh the picked prime not dividing q_{2k}·q_{2k+1}.  Then every
    prime of q_{2k} divides a_{2k+2} exactly once and P_fresh | q_{2k+2},
    so gcd(q_{2k+2·j}-chains gain one new prime per step.  Odd quotients are
    1 (any positive value works).

    depth counts constructed steps: depth 0 returns just the seed.
    """
    if a1 < 1 or a2 < 1:
        raise SeedRejected("a1 and a2 must be positive")
    if any(e > 1 for e in factorint(a2).values()):
        raise SeedRejected(f"a2 = {a2} is not squarefree")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if prime_picker is None:
        prime_picker = _default_prime_picker

    quotients = [a0, a1, a2]
    q_prev, q_cur = a1, a2 * a1 + 1  # q_1, q_2
    for _ in range(depth):
        quotients.append(1)  # a_{2k+1}
        q_odd = q_cur + q_prev
        fac = factorint(q_cur)
        rad = math.prod(fac)
        cof = q_cur // rad
        fresh = prime_picker(q_cur * q_odd)
        if not isprime(fresh) or q_cur * q_odd % fresh == 0:
            raise PrimePickerExhausted(f"picker returned unusable value {fresh}")
        target = (-pow(q_odd, -1, fresh) * cof) % fresh
        x = _crt_pair(1, rad, target, fresh) if rad > 1 else (target or fresh)
        a_even = rad * x
        quotients.append(a_even)
        q_prev, q_cur = q_odd, a_even * q_odd + q_cur
    return FinitePrefix(quotients)


def special_conditions_hold(theta: FinitePrefix) -> bool:
    """Verify by factorization, at every constructed even index 2i ≥ 4:
    (1) each prime of q_{2i−2} divides a_{2i} exactly once, and
    (2) q_{2i} has a prime that q_{2i−2} lacks."""
    top = theta.available_depth()
    for idx in range(4, top + 1, 2):
        _, q_prev = theta.convergent_pair(idx - 2)
        _, q_here = theta.convergent_pair(idx)
        a = theta.quotient(idx)
        a_fac = factorint(a)
        for prime in factorint(q_prev):
            if a_fac.get(prime, 0) != 1:
                return False
        if not any(q_prev % prime for prime in factorint(q_here)):
            return False
    return True
