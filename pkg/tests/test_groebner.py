import random

import pytest
from hypothesis import given, settings, strategies as st

from lctorsion.errors import InputError, ResourceError
from lctorsion.groebner import (
    Caps, Submodule, Vector, groebner, groebner_field, is_groebner, normal_form, strong_groebner_int,
    syzygies,
)
from lctorsion.oracle import MEMBER, NON_MEMBER, truncated_kernel, truncated_membership
from lctorsion.ring import GF, QQ, ZZ, PolyRing
from rand_inputs import lead_coefficient_primes, random_homogeneous_instance, random_poly

R = PolyRing(ZZ, ("x", "y"))
x, y = R.gens()


def lead_divides(gb, v):
    """Strong property: some leading term divides lt(v) including coefficient."""
    nf_lead = gb._engine.lead(dict(v.terms))
    c = v.terms[nf_lead]
    for comp, mon, lc in gb.leading_terms():
        if comp == nf_lead[0] and all(a <= b for a, b in zip(mon, nf_lead[1])) and c % lc == 0:
            return True
    return False


def test_strong_basis_small():
    gb = strong_groebner_int([6 * x, 10 * y])
    polys = sorted(str(v[0]) for v in gb.elements)
    assert polys == sorted(["10*y", "6*x", "2*x*y"])
    assert normal_form(3 * x, gb)[0] == 3 * x
    assert gb.contains(30 * x * y + 6 * x * x)
    assert not gb.contains(3 * x * y)
    assert gb.contains(2 * x * y)


def test_euclidean_coefficients():
    gb = strong_groebner_int([2 * x, 3 * x])
    assert [v[0] for v in gb.elements] == [x]
    assert normal_form(R.parse("3*x"), strong_groebner_int([R(2), x]))[0].is_zero()


def test_field_basis():
    F2 = PolyRing(GF(2), ("x", "y"))
    gb = groebner_field([F2.parse("x + y"), F2.parse("y")])
    assert sorted(str(v[0]) for v in gb.elements) == ["x", "y"]
    with pytest.raises(InputError):
        groebner_field([x])
    with pytest.raises(InputError):
        strong_groebner_int([F2.parse("x")])


def test_syzygies_small():
    assert [s.to_polys() for s in syzygies([x, y])] == [[y, -x]] or \
        [s.to_polys() for s in syzygies([x, y])] == [[-y, x]]
    S = syzygies([R(2), x])
    assert len(S) == 1 and set(map(str, S[0].to_polys())) <= {"x", "-2", "-x", "2"}
    S = syzygies([x, x])
    assert len(S) == 1 and S[0].to_polys()[0] == -S[0].to_polys()[1]


def test_lift():
    M = Submodule([6 * x, 10 * y], R, 1)
    a = M.lift(Vector.from_polys([2 * x * y]))
    assert a[0] * 6 * x + a[1] * 10 * y == 2 * x * y
    assert M.lift(Vector.from_polys([x])) is None


def test_module_basis():
    v1 = Vector.from_polys([x, y])
    v2 = Vector.from_polys([y, R(0)])
    gb = groebner([v1, v2])
    assert gb.contains(Vector.from_polys([x * y + y * y, y * y]))
    assert not gb.contains(Vector.from_polys([R(0), x]))


def test_caps():
    f = [R.parse("x^3 + 2*y^2 + 3"), R.parse("5*x*y^2 + 7*x"), R.parse("11*y^3 + x^2")]
    with pytest.raises(ResourceError):
        groebner(f, caps=Caps(max_basis=2))
    with pytest.raises(ResourceError):
        groebner(f, caps=Caps(max_coef_bits=3))


def test_membership_matches_oracle_100():
    rng = random.Random(2024)
    failures = 0
    for _ in range(100):
        ring, gens, v = random_homogeneous_instance(rng)
        gb = strong_groebner_int(gens)
        mine = gb.normal_form(v).terms == {}
        orc = truncated_membership(v, gens, 3)
        assert orc.status in (MEMBER, NON_MEMBER)
        failures += mine != (orc.status == MEMBER)
    assert failures == 0


def test_reduction_compatibility_50():
    rng = random.Random(77)
    done = 0
    while done < 50:
        ring = PolyRing(ZZ, ("x", "y", "z")[: rng.randint(1, 3)])
        gens = [random_poly(rng, ring) for _ in range(rng.randint(1, 3))]
        gb = strong_groebner_int(gens)
        bad = lead_coefficient_primes(gb)
        p = next(q for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31) if q not in bad)
        Fp = ring.with_coef(GF(p))
        red = [v[0].change_ring(Fp) for v in gb.elements]
        assert is_groebner(red)
        field_gb = groebner_field([g.change_ring(Fp) for g in gens])
        for g in red:
            assert field_gb.contains(g)
        red_gb = groebner_field(red)
        for g in gens:
            assert red_gb.contains(g.change_ring(Fp))
        done += 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_strong_property(seed):
    rng = random.Random(seed)
    ring = PolyRing(ZZ, ("x", "y")[: rng.randint(1, 2)])
    gens = [random_poly(rng, ring) for _ in range(rng.randint(1, 3))]
    gb = strong_groebner_int(gens)
    for g in gens:
        assert gb.contains(g)
    # every ideal element has a leading term divisible by a basis leading term
    for _ in range(3):
        v = ring.zero
        for g in gens:
            v = v + g * random_poly(rng, ring, max_deg=2)
        if v:
            assert lead_divides(gb, Vector.from_polys([v]))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_syzygies_sound_and_complete(seed):
    rng = random.Random(seed)
    ring = PolyRing(ZZ, ("x", "y", "z")[: rng.randint(1, 3)])
    gens = [random_poly(rng, ring, homogeneous_deg=rng.randint(1, 2)) for _ in range(rng.randint(1, 3))]
    S = syzygies(gens)
    for s in S:
        assert sum((a * g for a, g in zip(s.to_polys(), gens)), ring.zero).is_zero()
    span = Submodule(S, ring, len(gens)) if S else None
    for k in truncated_kernel(gens, 3).kernel:
        assert span is not None and span.contains(k)


def test_is_groebner_criterion():
    Q = PolyRing(QQ, ("x", "y"))
    f = [Q.parse("x^2 - y"), Q.parse("x*y - 1")]
    assert not is_groebner(f)
    assert is_groebner([v[0] for v in groebner(f).elements])
    with pytest.raises(InputError):
        is_groebner([x])
