import pytest

from lctorsion.errors import InputError
from lctorsion.fpmod import FPModule
from lctorsion.groebner import Caps
from lctorsion.oracle import MEMBER, NON_MEMBER, truncated_membership
from lctorsion.ring import ZZ, PolyRing
from lctorsion.torsion import TorsionReport, candidate_primes, torsion_primes_koszul, zerodivisor_primes

R = PolyRing(ZZ, ("x", "y"))
x, y = R.gens()
R1 = PolyRing(ZZ, ("x",))


def test_candidates():
    assert candidate_primes(FPModule.cyclic(R1, [R1(2), R1.parse("x")])) == [2]
    assert candidate_primes(FPModule.cyclic(R, [x, y])) == []
    assert candidate_primes(FPModule.cyclic(R, [6 * x, 10 * y])) == [2, 3, 5]


def test_zerodivisors():
    zd = zerodivisor_primes(FPModule.cyclic(R1, [R1(2), R1.parse("x")]))
    assert [p for p, _ in zd] == [2] and zd[0][1][0] == R1.one
    assert zerodivisor_primes(FPModule.cyclic(R1, [R1.parse("x")])) == []
    zd = zerodivisor_primes(FPModule.cyclic(R, [6 * x, 10 * y]), workers=3)
    assert [p for p, _ in zd] == [2, 3, 5]
    for p, w in zd:
        assert truncated_membership(w[0] * p, [6 * x, 10 * y], 3).status == MEMBER
        assert truncated_membership(w[0], [6 * x, 10 * y], 3).status == NON_MEMBER


def test_koszul_reports():
    assert torsion_primes_koszul([R1(2), R1.parse("x")], 2).primes == [2]
    assert torsion_primes_koszul([x, y], 2).primes == []
    rep = torsion_primes_koszul([6 * x, 10 * y], 2)
    assert rep.primes == [2, 3, 5]
    assert set(rep.primes) <= set(rep.candidates)
    assert rep.status == "ok"


def test_unit_scaling_and_order():
    a = torsion_primes_koszul([6 * x, 10 * y], 2).to_json()
    b = torsion_primes_koszul([-6 * x, 10 * y], 2).to_json()
    assert a["zerodivisors"] and [z["p"] for z in a["zerodivisors"]] == [z["p"] for z in b["zerodivisors"]]
    assert a["candidates"] == b["candidates"]


def test_redundant_generator():
    # a depends only on the ideal: torsion of H^2 for (2, x) stays visible
    # in the union of reports after appending 2x
    f = [R1(2), R1.parse("x")]
    g = f + [R1.parse("2*x")]
    union = set()
    for k in range(len(g) + 1):
        union |= set(torsion_primes_koszul(g, k).primes)
    assert {2} <= union


def test_resource_cap_report():
    rep = torsion_primes_koszul([R.parse("x^2 + 3*y"), R.parse("5*x*y + 7"), R.parse("y^3 - 2*x")], 2,
                                caps=Caps(max_basis=2))
    assert rep.status == "resource_cap" and rep.candidates is None


def test_json_round_trip():
    rep = torsion_primes_koszul([6 * x, 10 * y], 2)
    back = TorsionReport.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()


def test_errors():
    with pytest.raises(InputError):
        torsion_primes_koszul([], 0)
    with pytest.raises(InputError):
        torsion_primes_koszul([x], 2)
