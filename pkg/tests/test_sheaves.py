import math
import random

import pytest

from fareyslopes.cfrac import EventuallyPeriodic
from fareyslopes.exact import INFINITY, ReducedFraction as F
from fareyslopes.sheaves import (
    FINITE_DIVISION_ALGEBRA_BOUND,
    MINUS,
    PLUS,
    SES_WITH_C_QUOTIENT,
    UNKNOWN,
    ZERO,
    DimPair,
    LimitObjectDescriptor,
    SheafClass,
    StableClass,
    chi_pair,
    endo_dim_bound,
    enumerate_minimal_triangles,
    farey_type_image,
    hom_classify,
    hom_ext_dims,
    is_minimal_triangle,
    kclass_colimit_check,
    quotient_multiplicity,
    witness_image_chain,
)

from _oracles import mediant_generated_triangles, random_theta

golden = EventuallyPeriodic((1,), (1,))
sqrt2 = EventuallyPeriodic((1,), (2,))
sqrt3 = EventuallyPeriodic((1,), (1, 2))

O = StableClass


def test_stable_class_validation():
    assert O(3, 2).slope() == F(3, 2)
    assert O(1, 0).is_torsion and O(1, 0).slope() == INFINITY
    with pytest.raises(ValueError):
        O(2, 4)  # not primitive
    with pytest.raises(ValueError):
        O(0, 0)
    with pytest.raises(ValueError):
        O(-1, 0)
    with pytest.raises(ValueError):
        O(1, -1)


# -- chi and hom/ext ----------------------------------------------------------


def test_chi_pair_values():
    assert chi_pair((0, 1), (3, 1)) == DimPair(3, 1)
    assert all(chi_pair((0, 1), (n, 1)) == DimPair(n, 1) for n in range(-5, 6))
    assert chi_pair((1, 2), (1, 2)) == DimPair(0, 4)
    assert chi_pair((1, 1), (0, 1)) == DimPair(-1, 1)
    assert chi_pair((0, 1), (1, 0)) == DimPair(1, 0)


def _random_stable(rng):
    if rng.random() < 0.1:
        return O(rng.randint(1, 6), 0)
    while True:
        d, r = rng.randint(-12, 12), rng.randint(1, 9)
        if math.gcd(abs(d), r) == 1:
            return O(d, r)


def test_hom_minus_ext_is_chi():
    rng = random.Random(21)
    for _ in range(500):
        a, b = _random_stable(rng), _random_stable(rng)
        if a.is_torsion and b.is_torsion:
            continue
        hom, ext = hom_ext_dims(a, b)
        chi = chi_pair(a.vector(), b.vector())
        assert hom - ext == chi
        assert hom.dim >= 0 and ext.dim >= 0
        # vanishing rules: hom = 0 iff source slope above target
        if a.slope() > b.slope():
            assert hom.is_zero() and ext == -chi
        else:
            assert ext.is_zero() and hom == chi


def test_hom_ext_spot_values():
    h, e = hom_ext_dims(O(0, 1), O(1, 1))
    assert h == DimPair(1, 1) and e == DimPair(0, 0)
    h, e = hom_ext_dims(O(1, 1), O(0, 1))
    assert h == DimPair(0, 0) and e == DimPair(1, -1)
    h, e = hom_ext_dims(O(1, 2), O(1, 2))
    assert h == DimPair(0, 4) and e == DimPair(0, 0)
    # global sections of a torsion sheaf of degree m
    for m in range(1, 5):
        h, e = hom_ext_dims(O(0, 1), O(m, 0))
        assert h == DimPair(m, 0) and e == DimPair(0, 0)
    h, e = hom_ext_dims(O(2, 3), O(1, 0))
    assert h == DimPair(3, 0) and e == DimPair(0, 0)
    h, e = hom_ext_dims(O(1, 0), O(2, 3))
    assert h == DimPair(0, 0) and e == DimPair(3, 0)
    with pytest.raises(ValueError):
        hom_ext_dims(O(1, 0), O(2, 0))


def test_dim_pair_arithmetic():
    assert DimPair(1, 2) + DimPair(3, -1) == DimPair(4, 1)
    assert DimPair(3, 1) - DimPair(1, 1) == DimPair(2, 0)
    assert DimPair(0, 0).is_zero()
    assert not DimPair(0, 1).is_zero()
    assert DimPair(3, 1).to_dict() == {"dim": 3, "ht": 1}


# -- minimal triangles ---------------------------------------------------------


def test_minimal_triangle_goldens():
    assert is_minimal_triangle(O(0, 1), O(1, 2), O(1, 1))
    assert is_minimal_triangle(O(0, 1), O(1, 1), O(1, 0))
    assert not is_minimal_triangle(O(0, 1), O(2, 3), O(1, 1))   # det 2 on a side
    assert not is_minimal_triangle(O(0, 1), O(1, 2), O(1, 3))   # slopes unordered
    assert not is_minimal_triangle(O(1, 2), O(0, 1), O(1, 1))   # middle not the sum


def test_rank_one_enumeration():
    assert enumerate_minimal_triangles(1) == [
        (O(-1, 1), O(0, 1), O(1, 0)),
        (O(0, 1), O(1, 1), O(1, 0)),
    ]


def test_enumeration_matches_mediant_tree():
    for max_rank in (2, 5, 8):
        got = {
            (e.slope(), f.slope(), g.slope())
            for e, f, g in enumerate_minimal_triangles(max_rank)
        }
        want = mediant_generated_triangles(max_rank, max_rank)
        assert got == want


def test_is_minimal_triangle_agrees_with_membership():
    member = sorted(mediant_generated_triangles(6, 6))
    rng = random.Random(22)
    true_seen = false_seen = 0
    for _ in range(800):
        se, sf, sg = rng.choice(member)
        e, f, g = (O.from_fraction(s) for s in (se, sf, sg))
        if rng.random() < 0.5:
            # tamper with one vertex
            which = rng.randrange(3)
            bump = rng.choice([-1, 1])
            t = [e, f, g]
            v = t[which]
            if v.is_torsion:
                continue
            if math.gcd(abs(v.degree + bump), v.rank) != 1:
                continue
            t[which] = O(v.degree + bump, v.rank)
            e, f, g = t
        claim = is_minimal_triangle(e, f, g)
        fact = (e.slope(), f.slope(), g.slope()) in member
        assert claim == fact
        true_seen += fact
        false_seen += not fact
    assert true_seen > 100 and false_seen > 100


# -- K-class telescoping --------------------------------------------------------


def test_kclass_golden_and_sqrt2():
    rep = kclass_colimit_check(golden, 3)
    assert rep.all_ok
    r0 = rep.rows[0]
    assert (r0.coefficient, r0.summand, r0.partial, r0.target) == (1, (2, 1), (3, 2), (3, 2))
    rep = kclass_colimit_check(sqrt2, 4)
    assert rep.all_ok
    assert rep.rows[0].coefficient == 2
    assert rep.rows[0].summand == (3, 2)
    assert rep.rows[0].partial == (7, 5)


def test_kclass_random_sweep():
    rng = random.Random(23)
    for _ in range(25):
        theta = random_theta(rng)
        assert kclass_colimit_check(theta, 10).all_ok


# -- endomorphism bound -----------------------------------------------------------


def test_endo_bound_golden():
    b = endo_dim_bound(LimitObjectDescriptor(golden, MINUS))
    assert b.stabilized and b.c == 1 and b.bound == 1
    assert b.bounded_by_two is True
    assert b.dim_candidates == (1, 2, 4)


def test_endo_bound_special():
    b = endo_dim_bound(LimitObjectDescriptor(EventuallyPeriodic((0, 1, 2), (1, 3)), MINUS))
    assert b.stabilized and b.c == 3 and b.bound == 9
    assert b.bounded_by_two is False and b.dim_candidates is None


def test_endo_bound_is_square_of_c():
    rng = random.Random(24)
    for _ in range(40):
        theta = random_theta(rng)
        b = endo_dim_bound(LimitObjectDescriptor(theta, MINUS))
        assert b.stabilized
        assert b.bound == b.c * b.c


def test_endo_bound_rejects_plus_side():
    with pytest.raises(ValueError):
        endo_dim_bound(LimitObjectDescriptor(golden, PLUS))


# -- the classification table ------------------------------------------------------


def test_hom_classify_stable_pairs():
    r = hom_classify(O(0, 1), O(1, 1))
    assert r.verdict == UNKNOWN and r.hom == DimPair(1, 1) and r.ext1_zero
    r = hom_classify(O(1, 1), O(0, 1))
    assert r.verdict == ZERO and r.ext1 == DimPair(1, -1) and r.ext1_zero is False
    r = hom_classify(O(1, 2), O(1, 2))
    assert r.verdict == FINITE_DIVISION_ALGEBRA_BOUND and r.bound == 4


def test_hom_classify_limit_objects():
    mg, pg = LimitObjectDescriptor(golden, MINUS), LimitObjectDescriptor(golden, PLUS)
    m2, p2 = LimitObjectDescriptor(sqrt2, MINUS), LimitObjectDescriptor(sqrt2, PLUS)

    r = hom_classify(m2, m2)
    assert r.verdict == FINITE_DIVISION_ALGEBRA_BOUND and r.bound == 1
    r = hom_classify(mg, pg, depth=4)
    assert r.verdict == SES_WITH_C_QUOTIENT
    assert r.kernel_factors == ((1, 1), (1, 1), (4, 1), (9, 1))
    assert r.quotient == DimPair(1, 0)
    assert hom_classify(mg, p2).verdict == ZERO
    r = hom_classify(m2, pg)
    assert r.verdict == UNKNOWN and r.ext1_zero
    # stable against the limit slope: the side of theta decides
    assert hom_classify(O(2, 1), m2).verdict == ZERO
    r = hom_classify(O(1, 1), m2)
    assert r.verdict == UNKNOWN and r.ext1_zero
    assert hom_classify(m2, O(1, 1)).verdict == ZERO
    r = hom_classify(m2, O(2, 1))
    assert r.verdict == UNKNOWN and r.ext1_zero
    assert hom_classify(O(1, 0), m2).verdict == ZERO
    assert hom_classify(p2, O(1, 1)).verdict == UNKNOWN
    r = hom_classify(O(1, 0), O(2, 0))
    assert r.verdict == UNKNOWN and r.hom is None


# -- images -------------------------------------------------------------------------


def test_farey_type_image():
    assert farey_type_image(sqrt2, sqrt3) == O(3, 2)
    # refinement invariance: inserting a compatible slope changes nothing
    assert farey_type_image(sqrt2, sqrt3, via=(golden,)) == O(3, 2)
    with pytest.raises(ValueError):
        farey_type_image(sqrt2, sqrt3, via=(EventuallyPeriodic((9,), (1,)),))


def test_farey_type_image_refinement_sweep():
    rng = random.Random(25)
    done = 0
    while done < 20:
        t1, t2 = random_theta(rng), random_theta(rng)
        if t1 == t2:
            continue
        from fareyslopes.farey import slope_lt

        if not slope_lt(t1, t2):
            t1, t2 = t2, t1
        base = farey_type_image(t1, t2)
        # any slope strictly between the ends is a compatible refinement
        mid = random_theta(rng)
        if slope_lt(t1, mid) and slope_lt(mid, t2):
            assert farey_type_image(t1, t2, via=(mid,)) == base
            done += 1


def test_witness_image_chain():
    chain = witness_image_chain(sqrt2, golden, F(3, 2))
    assert chain.level == 1
    assert chain.nodes[1] == O(10, 7)
    assert chain.nodes[2] == O(3, 2)
    assert chain.nodes[3] == O(8, 5)
    assert [a.kind for a in chain.arrows] == [
        "surjection", "surjection", "injection", "injection"]
    assert chain.arrows[1].complement == (O(7, 5), 1)
    assert chain.arrows[1].complement_role == "kernel"
    assert chain.arrows[2].complement == (O(5, 3), 1)
    assert chain.arrows[2].complement_role == "cokernel"

    deep = witness_image_chain(sqrt2, golden, F(10, 7))
    assert deep.nodes[1].slope() < F(10, 7) < deep.nodes[3].slope()
    assert deep.nodes[1].rank > 7 and deep.nodes[3].rank > 7
    with pytest.raises(ValueError):
        witness_image_chain(sqrt2, golden, F(7, 5))  # not between the slopes


# -- multiplicities -------------------------------------------------------------------


def test_quotient_multiplicity_values():
    assert quotient_multiplicity((3, 2), F(1, 1)) == 1
    assert quotient_multiplicity((3, 2), INFINITY) == 2
    assert quotient_multiplicity(O(3, 2), F(1, 1)) == 1


def test_quotient_multiplicity_invariance_and_subadditivity():
    rng = random.Random(26)
    for _ in range(300):
        lam = F(rng.randint(-9, 9), rng.randint(1, 9)) if rng.random() > 0.1 else INFINITY
        v1 = (rng.randint(-20, 20), rng.randint(-20, 20))
        v2 = (rng.randint(-20, 20), rng.randint(-20, 20))
        b1, b2 = quotient_multiplicity(v1, lam), quotient_multiplicity(v2, lam)
        s = (v1[0] + v2[0], v1[1] + v2[1])
        assert quotient_multiplicity(s, lam) <= b1 + b2
        # invariance under adding the lam-class itself
        for k in range(-3, 4):
            shifted = (v1[0] + k * lam.p, v1[1] + k * lam.q)
            assert quotient_multiplicity(shifted, lam) == b1
        # equal lambda-component signs give equality
        c1 = lam.q * v1[0] - lam.p * v1[1]
        c2 = lam.q * v2[0] - lam.p * v2[1]
        if c1 * c2 >= 0:
            assert quotient_multiplicity(s, lam) == b1 + b2


# -- sheaf classes ----------------------------------------------------------------------


def test_sheaf_class():
    sc = SheafClass(((O(5, 3), 0, 1), (O(1, 1), 1, 2)))
    assert sc.kclass() == (5 - 2, 3 - 2) == (3, 1)
    assert sc.in_heart(sqrt2)
    assert not SheafClass(((O(3, 2), 0, 1),)).in_heart(golden)
    assert SheafClass(((O(3, 2), 1, 1),)).in_heart(golden)
    assert SheafClass(((O(1, 0), 0, 3),)).in_heart(sqrt2)
    assert not SheafClass(((O(1, 0), 1, 1),)).in_heart(sqrt2)
    assert str(sc) == "O(5/3) + O(1/1)[1]^2"
    with pytest.raises(ValueError):
        SheafClass(((O(1, 1), 2, 1),))
    with pytest.raises(ValueError):
        SheafClass(((O(1, 1), 0, 0),))
