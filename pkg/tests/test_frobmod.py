import pytest

from lctorsion.errors import InputError
from lctorsion.fpmod import FPModule, FreeComplex, cohomology_at
from lctorsion.frobmod import (
    StabilizationResult, frobenius_complex, frobenius_functor, generating_morphism, stabilize_kernel,
)
from lctorsion.groebner import Submodule
from lctorsion.koszul import koszul_complex
from lctorsion.oracle import NON_MEMBER, truncated_membership
from lctorsion.ring import GF, ZZ, PolyRing

F2 = PolyRing(GF(2), ("x", "y"))
F3 = PolyRing(GF(3), ("x", "y"))
Z = PolyRing(ZZ, ("x", "y"))


def test_functor_examples():
    x, y = F2.gens()
    M = FPModule.cyclic(F2, [x])
    assert frobenius_functor(M).same_relations(FPModule.cyclic(F2, [x ** 2]))
    free = FPModule(F2, 3, [])
    assert frobenius_functor(free).rank == 3 and not frobenius_functor(free).relations
    M = FPModule.cyclic(F2, [x + y])
    assert frobenius_functor(M).same_relations(FPModule.cyclic(F2, [x ** 2 + y ** 2]))
    with pytest.raises(InputError):
        frobenius_functor(FPModule.cyclic(Z, [Z.parse("x")]))


def test_complex_examples():
    x, y = F2.gens()
    FC = frobenius_complex(koszul_complex([x, y]))
    assert FC.differentials == koszul_complex([x ** 2, y ** 2]).differentials
    zero = FreeComplex(F2, {0: 1, 1: 1}, {0: [[F2.zero]]})
    assert frobenius_complex(zero).differentials == {0: [[F2.zero]]}
    X, _ = F3.gens()
    FC = frobenius_complex(koszul_complex([X, X ** 2]))
    assert FC.differentials == koszul_complex([X ** 3, X ** 6]).differentials


def test_generating_morphism_examples():
    x, y = F2.gens()
    F1 = PolyRing(GF(2), ("x",))
    X, = F1.gens()
    beta = generating_morphism([X], 1)
    assert beta.matrix == [[X]]
    assert beta.target.same_relations(FPModule.cyclic(F1, [X ** 2]))
    assert generating_morphism([X, X ** 2], 2).is_zero()
    beta = generating_morphism([x, y], 2)
    assert beta.matrix == [[x * y]]
    # x*y is not in (x^2, y^2): the truncated oracle agrees
    assert truncated_membership(x * y, [x ** 2, y ** 2], 4).status == NON_MEMBER
    assert not beta.is_zero()


def test_generating_morphism_from_integers():
    beta = generating_morphism([Z.parse("x"), Z.parse("y")], 2, 3)
    assert beta.source.ring.coef == GF(3)
    with pytest.raises(InputError):
        generating_morphism([F3.parse("x")], 1, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_stabilize_principal_redundant(p):
    res = stabilize_kernel([Z.parse("x"), Z.parse("x^2")], 2, p)
    assert res.status == "ok" and res.vanishes is True and res.stabilized_at == 1
    assert res.root.is_zero()


def test_stabilize_examples():
    res = stabilize_kernel([Z.parse("x")], 1, 2)
    assert res.vanishes is False
    assert res.root.same_relations(FPModule.cyclic(F2, [F2.parse("x")]))
    assert stabilize_kernel([Z.parse("x"), Z.parse("y")], 2, 3).vanishes is False


def test_composites_injective_for_xy():
    # H^2_(x,y) is nonzero: x^(q-1) y^(q-1) never lands in (x^q, y^q)
    F = PolyRing(GF(3), ("x", "y"))
    for e in (1, 2):
        q = 3 ** e
        v = F.parse("x*y") ** (q - 1)
        assert truncated_membership(v, [F.parse("x") ** q, F.parse("y") ** q], 2 * q).status == NON_MEMBER


def test_unstabilized_status():
    f = [Z.parse("x^2"), Z.parse("x*y")]
    res = stabilize_kernel(f, 2, 2, e_max=1)
    assert res.status == "unstabilized" and res.vanishes is None
    full = stabilize_kernel(f, 2, 2)
    assert full.status == "ok" and full.vanishes is True and full.stabilized_at == 2
    with pytest.raises(InputError):
        stabilize_kernel(f, 2, 2, e_max=0)


def test_kernel_chain_ascends():
    f = [Z.parse("x^2"), Z.parse("x*y")]
    res = stabilize_kernel(f, 2, 2)
    M0 = generating_morphism(f, 2, 2).source
    for a, b in zip(res.kernels, res.kernels[1:]):
        base = FPModule(M0.ring, M0.rank, list(M0.relations) + b)
        assert all(base.contains_relation(v) for v in a)


@pytest.mark.parametrize("gens", [["x", "y"], ["x", "x^2"], ["x*y", "x^2"], ["x", "y", "x*y"]])
def test_functor_commutes_with_cohomology(gens):
    F = PolyRing(GF(2), ("x", "y"))
    f = [F.parse(g) for g in gens]
    C = koszul_complex(f)
    FC = frobenius_complex(C)
    for k in range(len(f) + 1):
        lhs = frobenius_functor(cohomology_at(C, k))
        rhs = cohomology_at(FC, k)
        n = C.rank(k)
        image = [c for c in FC.columns(k - 1) if c] if k > 0 else []
        # same cycles modulo the same boundaries, in the same ambient C^k
        A = Submodule(list(lhs.embedding) + image, F, n) if n else None
        B = Submodule(list(rhs.embedding) + image, F, n) if n else None
        if n:
            assert all(A.contains(v) for v in rhs.embedding)
            assert all(B.contains(v) for v in lhs.embedding)
        assert lhs.is_zero() == rhs.is_zero()


@pytest.mark.parametrize("g", ["x", "x*y", "x^2 + y", "x + 1"])
def test_principal_invariant(g):
    f = [Z.parse(g)]
    for p in (2, 3):
        assert stabilize_kernel(f, 1, p).vanishes is False
        assert stabilize_kernel(f, 0, p).vanishes is True


def test_principal_unit_caveat():
    # a unit generates the unit ideal, so every local cohomology vanishes
    assert stabilize_kernel([Z.parse("1")], 1, 2).vanishes is True


def test_redundant_generator_keeps_vanishing():
    a = stabilize_kernel([Z.parse("x"), Z.parse("x^2")], 2, 2)
    b = stabilize_kernel([Z.parse("x"), Z.parse("x^2"), Z.parse("x")], 3, 2)
    assert a.vanishes and b.vanishes


def test_json_round_trip():
    res = stabilize_kernel([Z.parse("x")], 1, 2)
    back = StabilizationResult.from_json(res.to_json())
    assert back.to_json() == res.to_json()


def test_rp2_top_torsion_shows_in_characteristic_two_only():
    from lctorsion.corpus import CORPUS
    f = next(e for e in CORPUS if e.name == "rp2_6").polynomials()
    assert stabilize_kernel(f, 4, 2).vanishes is False
    assert stabilize_kernel(f, 4, 3).vanishes is True


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_corpus_stabilizes_within_four(p):
    from lctorsion.corpus import CORPUS
    for entry in CORPUS:
        f = entry.polynomials()
        for k in range(len(f) + 1):
            res = stabilize_kernel(f, k, p, e_max=4)
            assert res.status == "ok", (entry.name, k)
