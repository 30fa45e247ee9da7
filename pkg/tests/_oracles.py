"""Brute-force reference implementations the real code is tested against.

Everything here trades speed for obviousness: exhaustive scans, literal
sweeps, and direct lattice counting.  None of it imports the modules under
test beyond the two leaf types (fractions and the exact comparator).
"""

import math
import random

from fareyslopes.cfrac import (
    EventuallyPeriodic,
    GREATER,
    LESS,
    IrrationalNumber,
    compare_theta_rational,
)
from fareyslopes.exact import ReducedFraction


def random_theta(rng: random.Random, lo: int = 0, hi: int = 4) -> EventuallyPeriodic:
    """A random quadratic irrational with small partial quotients."""
    a0 = rng.randint(lo, hi)
    pre = [a0] + [rng.randint(1, 4) for _ in range(rng.randint(0, 2))]
    per = [rng.randint(1, 4) for _ in range(rng.randint(1, 3))]
    return EventuallyPeriodic(tuple(pre), tuple(per))


def simplest_between(
    theta: IrrationalNumber, theta2: IrrationalNumber, qcap: int = 4096
) -> ReducedFraction:
    """Minimal-denominator fraction in the open interval (theta, theta2),
    ties broken toward the smaller fraction: a literal q-sweep."""
    for q in range(1, qcap + 1):
        # smallest p with p/q > theta, then check p/q < theta2
        lo = math.floor(theta.approx(40) * q) - 2
        p = lo
        while compare_theta_rational(theta, ReducedFraction(p, q)) != LESS:
            p += 1
        cand = ReducedFraction(p, q)
        if cand.q == q and compare_theta_rational(theta2, cand) == GREATER:
            return cand
    raise AssertionError(f"no fraction with q <= {qcap} between the slopes")


def interior_lattice_points(v1, v2) -> int:
    """Lattice points strictly inside the triangle (0, v1, v2), counted by
    scanning the bounding box and testing barycentric signs."""
    x1, y1 = v1
    x2, y2 = v2
    det = x1 * y2 - x2 * y1
    if det == 0:
        raise ValueError("degenerate triangle")
    count = 0
    xs = sorted((0, x1, x2))
    ys = sorted((0, y1, y2))
    for x in range(xs[0], xs[-1] + 1):
        for y in range(ys[0], ys[-1] + 1):
            # barycentric coordinates scaled by det
            s = x * y2 - y * x2
            t = y * x1 - x * y1
            if det < 0:
                s, t, d = -s, -t, -det
            else:
                d = det
            if 0 < s and 0 < t and s + t < d:
                count += 1
    return count


def boundary_lattice_points(v1, v2) -> int:
    """Lattice points on the triangle's edges, vertices excluded."""

    def on_segment(a, b):
        return math.gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) - 1

    return on_segment((0, 0), v1) + on_segment(v1, v2) + on_segment(v2, (0, 0))


def farey_neighbor_pairs(qmax: int, pwindow: int):
    """All pairs a < b of fractions with |det| = 1, denominators <= qmax,
    numerators within the window, by exhaustive scan.  Includes 1/0."""
    fracs = [ReducedFraction(1, 0)]
    for q in range(1, qmax + 1):
        for p in range(-pwindow, pwindow + 1):
            if math.gcd(abs(p), q) == 1:
                fracs.append(ReducedFraction(p, q))
    pairs = []
    for i, a in enumerate(fracs):
        for b in fracs[i + 1 :]:
            if abs(a.p * b.q - a.q * b.p) == 1:
                lo, hi = (a, b) if a < b else (b, a)
                pairs.append((lo, hi))
    return pairs


def mediant_generated_triangles(max_rank: int, window: int):
    """The Farey-triangle set with denominator bounds, grown from the
    integer fence by mediant insertion: triples (low, mediant, high) of
    slopes, the tessellation's triangles in the band.

    The top vertex 1/0 appears via the fence triangles (k, 1/0, k+1) --
    recorded as (k/1, (k+1)/1, 1/0) in slope order.
    """
    triangles = set()
    stack = []
    for k in range(-window, window):
        a, b = ReducedFraction(k, 1), ReducedFraction(k + 1, 1)
        triangles.add((a, b, ReducedFraction(1, 0)))
        stack.append((a, b))
    while stack:
        a, b = stack.pop()
        m = a.mediant(b)
        if m.q > max_rank or abs(m.p) > window:
            continue
        triangles.add((a, m, b))
        stack.append((a, m))
        stack.append((m, b))
    return triangles


def game_rest_positions(theta, r, c, d, n):
    """Independent bead construction: drop every level-n piece of the division
    tree into [c, d], then merge sibling pairs bottom-up until nothing moves.
    Level independence (same answer for every large enough n) is what makes
    this a reference for the direct construction.

    Unlike the rest of this module it replays the library's own `divide`,
    so it checks self-consistency of the tree, not the tree itself.
    """
    from fareyslopes.division import DivisionInterval, divide, root_interval
    from fareyslopes.lattice import norm_to_fraction

    level = [root_interval(theta, r)]
    for _ in range(n):
        level = [child for iv in level for child in divide(iv)]
    occupied = [iv for iv in level if c <= iv.a and iv.b <= d]
    assert occupied and occupied[0].a == c and occupied[-1].b == d
    merged = True
    while merged:
        merged = False
        for i in range(len(occupied) - 1):
            lo, hi = occupied[i], occupied[i + 1]
            if lo.b != hi.a:
                continue
            diff = hi.b - lo.a
            if not (diff.is_primitive() and diff.sign() > 0):
                continue
            parent = DivisionInterval(lo.a, hi.b, norm_to_fraction(diff))
            if divide(parent) == (lo, hi):
                occupied[i : i + 2] = [parent]
                merged = True
                break
    return tuple(iv.vertex for iv in occupied)


def cutting_runs_expected(theta: IrrationalNumber, depth: int):
    """Run-length calibration: above 1 the runs are a_0, a_1, ... starting
    with L; inside (0,1) they are a_1, a_2, ... starting with R."""
    if theta.quotient(0) >= 1:
        lengths = [theta.quotient(i) for i in range(depth)]
        first = "L"
    else:
        lengths = [theta.quotient(i + 1) for i in range(depth)]
        first = "R"
    letters = [first if i % 2 == 0 else ("R" if first == "L" else "L") for i in range(depth)]
    return tuple(zip(letters, lengths))
