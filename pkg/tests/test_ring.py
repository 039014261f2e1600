from fractions import Fraction

import pytest

from lctorsion.errors import InputError
from lctorsion.ring import GF, QQ, ZZ, CoefRing, PolyRing, Polynomial, check_prime, frobenius_endo, reduce_mod_p


@pytest.fixture
def R():
    return PolyRing(ZZ, ("x", "y"))


def test_parse_and_print(R):
    f = R.parse("6*x + 10*y^2 - 3")
    assert f.terms == {(1, 0): 6, (0, 2): 10, (0, 0): -3}
    assert R.parse(str(f)) == f
    assert R.parse("x**2") == R.parse("x^2")


def test_parse_rejects_junk(R):
    for bad in ["x +", "z", "x/2", "x^y", "1.5*x"]:
        with pytest.raises(InputError):
            R.parse(bad)


def test_arithmetic(R):
    x, y = R.gens()
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x).is_zero()
    assert 3 - x == R.parse("3 - x")
    with pytest.raises(InputError):
        x + PolyRing(ZZ, ("x",)).gens()[0]


def test_orders():
    a, b = (2, 0, 0), (0, 1, 1)
    assert PolyRing(ZZ, "xyz", "lex").key(a) > PolyRing(ZZ, "xyz", "lex").key(b)
    # grevlex: x*z < y^2 in three variables
    R = PolyRing(ZZ, "xyz")
    assert R.key((1, 0, 1)) < R.key((0, 2, 0))
    assert PolyRing(ZZ, "xyz", "grlex").key((1, 0, 1)) > PolyRing(ZZ, "xyz", "grlex").key((0, 2, 0))
    with pytest.raises(InputError):
        PolyRing(ZZ, "xy", "weird")


def test_fp_and_reduction(R):
    f = R.parse("7*x^2 + 3*y - 14")
    g = reduce_mod_p(f, 7)
    assert g.ring.coef == GF(7)
    assert g == g.ring.parse("3*y")
    F2 = PolyRing(GF(2), ("x", "y"))
    assert F2.parse("x + y") ** 2 == F2.parse("x^2 + y^2")


def test_frobenius_is_pth_power():
    F3 = PolyRing(GF(3), ("x", "y"))
    f = F3.parse("2*x*y + y^2 + 1")
    assert frobenius_endo(f) == f ** 3
    with pytest.raises(InputError):
        frobenius_endo(PolyRing(ZZ, ("x",)).parse("x"))


def test_qq_coefficients():
    Q = PolyRing(QQ, ("x",))
    f = Q.from_dict({(1,): Fraction(1, 2)})
    assert (f * 2) == Q.parse("x")


def test_check_prime():
    assert check_prime(2) == 2
    for bad in [1, 4, -3, 2 ** 64 + 13, "5", True]:
        with pytest.raises(InputError):
            check_prime(bad)
    with pytest.raises(InputError):
        CoefRing("Fp", 9)


def test_json_round_trip(R):
    f = R.parse("-12345678901234567890*x*y + 5")
    data = f.to_json()
    assert all(isinstance(c, str) for c, _ in data)
    assert Polynomial.from_json(R, data) == f
    assert PolyRing.from_json(R.to_json()) == R
    F5 = PolyRing(GF(5), ("a",))
    assert PolyRing.from_json(F5.to_json()) == F5
    with pytest.raises(InputError):
        Polynomial.from_json(R, [["1", [1]]])
