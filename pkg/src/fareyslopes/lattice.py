"""The rank-two lattice L_θ = ℤθ + ℤ and its antisymmetric pairing.

An element is a pair (m, n) standing for the real number mθ + n.  Because θ
is irrational the sign of any nonzero element is decidable from partial
quotients alone: for m ≠ 0 it is sign(m) · sign(θ − (−n/m)).

The pairing is χ((m, n), (m', n')) = m'n − mn'; it is ℤ-bilinear and
antisymmetric, and on the positive lifts of two fractions its absolute value
recovers the fraction determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cfrac import GREATER, IrrationalNumber, compare_theta_rational
from .errors import MismatchedTheta
from .exact import ReducedFraction


@dataclass(frozen=True)
class ThetaLatticeElement:
    """The element m·θ + n of L_θ.  (0, 0) is allowed and has sign 0."""

    m: int
    n: int
    theta: IrrationalNumber

    def _check(self, other: "ThetaLatticeElement") -> None:
        if self.theta != other.theta:
            raise MismatchedTheta("elements live over different θ")

    # -- linear structure ---------------------------------------------

    def __add__(self, other: "ThetaLatticeElement") -> "ThetaLatticeElement":
        self._check(other)
        return ThetaLatticeElement(self.m + other.m, self.n + other.n, self.theta)

    def __sub__(self, other: "ThetaLatticeElement") -> "ThetaLatticeElement":
        self._check(other)
        return ThetaLatticeElement(self.m - other.m, self.n - other.n, self.theta)

    def __neg__(self) -> "ThetaLatticeElement":
        return ThetaLatticeElement(-self.m, -self.n, self.theta)

    def scaled(self, k: int) -> "ThetaLatticeElement":
        return ThetaLatticeElement(k * self.m, k * self.n, self.theta)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ThetaLatticeElement)
            and self.m == other.m
            and self.n == other.n
            and self.theta == other.theta
        )

    def __hash__(self):
        return hash((self.m, self.n))

    # -- exact sign and order ------------------------------------------

    def sign(self) -> int:
        """Sign of the real value mθ + n, computed exactly."""
        if self.m == 0:
            return (self.n > 0) - (self.n < 0)
        # mθ + n > 0  ⇔  θ > −n/m for m > 0, θ < −n/m for m < 0.
        # ReducedFraction(-n, m) normalises a negative m, representing the
        # same rational −n/m either way.
        cmp = compare_theta_rational(self.theta, ReducedFraction(-self.n, self.m))
        s = 1 if cmp == GREATER else -1
        return s if self.m > 0 else -s

    def is_positive(self) -> bool:
        return self.sign() > 0

    def __lt__(self, other: "ThetaLatticeElement") -> bool:
        self._check(other)
        return (self - other).sign() < 0

    def __le__(self, other: "ThetaLatticeElement") -> bool:
        return self == other or self < other

    # -- views ----------------------------------------------------------

    def value(self, depth: int = 30) -> float:
        """Float estimate of mθ + n (render/test oracle use only)."""
        return self.m * self.theta.approx(depth) + self.n

    def is_primitive(self) -> bool:
        return math.gcd(abs(self.m), abs(self.n)) == 1

    def __repr__(self):
        return f"ThetaLatticeElement({self.m}, {self.n})"


def chi(x: ThetaLatticeElement, y: ThetaLatticeElement) -> int:
    """χ((m, n), (m', n')) = m'n − mn'."""
    if x.theta != y.theta:
        raise MismatchedTheta("χ needs both elements over the same θ")
    return y.m * x.n - x.m * y.n


@lru_cache(maxsize=1 << 16)
def theta_norm(r: ReducedFraction, theta: IrrationalNumber) -> ThetaLatticeElement:
    """|p/q|_θ = |qθ − p| as the positive primitive lattice lift.

    Returns (q, −p) when θ > p/q and (−q, p) when θ < p/q; the point ∞ = 1/0
    always lifts to (0, 1) of value 1.  Memoized: division sweeps and bead
    assertions ask for the same norms constantly.
    """
    if r.is_infinite:
        return ThetaLatticeElement(0, 1, theta)
    if compare_theta_rational(theta, r) == GREATER:
        return ThetaLatticeElement(r.q, -r.p, theta)
    return ThetaLatticeElement(-r.q, r.p, theta)


def norm_to_fraction(x: ThetaLatticeElement) -> ReducedFraction:
    """Inverse of theta_norm on positive primitive elements."""
    if not x.is_primitive():
        raise ValueError("lattice element is not primitive")
    if x.sign() <= 0:
        raise ValueError("only positive elements are norms of fractions")
    if x.m == 0:
        return ReducedFraction(1, 0)
    # (q, −p) ↦ p/q and (−q, p) ↦ p/q collapse to ReducedFraction(−n, m),
    # whose constructor normalises the sign of the denominator.
    return ReducedFraction(-x.n, x.m)
