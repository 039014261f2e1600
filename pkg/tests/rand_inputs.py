"""Seeded random inputs shared by the property tests."""

import random

from sympy import factorint

from lctorsion.diffops import DividedPowerOp
from lctorsion.oracle import monomials_of_degree, monomials_up_to
from lctorsion.ring import ZZ, PolyRing
from lctorsion.snf import determinant, matmul, smith_normal_form

VARS = ("x", "y", "z")


def random_poly(rng: random.Random, ring, max_deg=3, terms=3, coef=10, homogeneous_deg=None):
    n = ring.nvars
    if homogeneous_deg is not None:
        pool = monomials_of_degree(n, homogeneous_deg)
    else:
        pool = monomials_up_to(n, max_deg)
    out = {}
    for _ in range(rng.randint(1, terms)):
        c = rng.randint(-coef, coef)
        if c:
            out[rng.choice(pool)] = c
    f = ring.from_dict(out)
    return f if f else ring.monomial(rng.choice(pool), rng.choice([c for c in range(-coef, coef + 1) if c]))


def random_ring(rng: random.Random, coef=ZZ):
    return PolyRing(coef, VARS[: rng.randint(1, 3)])


def random_int_matrix(rng: random.Random, max_dim=5, bound=9):
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    zero_bias = rng.random() < 0.3
    return [[0 if zero_bias and rng.random() < 0.5 else rng.randint(-bound, bound) for _ in range(n)]
            for _ in range(m)]


def random_homogeneous_instance(rng: random.Random):
    """Homogeneous gens of degree <= 2 and a degree 3 target, a member about half the time."""
    ring = PolyRing(ZZ, VARS[: rng.randint(1, 3)])
    gens = [random_poly(rng, ring, homogeneous_deg=rng.randint(1, 2)) for _ in range(rng.randint(1, 3))]
    if rng.random() < 0.5:
        v = ring.zero
        for g in gens:
            dg = g.total_degree
            v = v + g * random_poly(rng, ring, homogeneous_deg=3 - dg)
        if v.is_zero():
            v = gens[0] * ring.monomial([3 - gens[0].total_degree] + [0] * (ring.nvars - 1))
    else:
        v = random_poly(rng, ring, homogeneous_deg=3)
    return ring, gens, v


def lead_coefficient_primes(gb):
    out = set()
    for c in gb.leading_coefficients():
        out.update(factorint(abs(c)))
    return out


def check_snf(A):
    res = smith_normal_form(A)
    m, n = res.shape
    assert matmul(matmul(res.U, A), res.V) == res.D
    assert abs(determinant(res.U)) == 1
    assert abs(determinant(res.V)) == 1
    d = res.invariant_factors
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    for i in range(m):
        for j in range(n):
            assert res.D[i][j] == (d[i] if i == j and i < len(d) else 0)
    return res


def random_op(rng: random.Random, ring, max_order=3):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        t = tuple(rng.randint(0, max_order) for _ in range(ring.nvars))
        if sum(t) > max_order:
            continue
        terms[t] = random_poly(rng, ring, max_deg=2, terms=2, coef=6)
    op = DividedPowerOp(ring, terms)
    if op.terms:
        return op
    return DividedPowerOp.divided_power(ring, (1,) + (0,) * (ring.nvars - 1))
