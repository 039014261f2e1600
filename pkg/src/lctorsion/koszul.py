"""Koszul complexes ``K(f^e; R)`` and the power maps between their cohomology.

Basis vectors of ``K^k`` are the k-subsets ``S`` of ``{0..t-1}`` in
lexicographic order.  The differential is

    d(e_S) = sum_{j not in S} (-1)^{#{i in S : i < j}} f_j^e e_{S+j}

which is the tensor product ``K(f_1) ⊗ ... ⊗ K(f_t)`` in that order.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

from .errors import InputError
from .fpmod import FPModule, FreeComplex, ModuleMap, cohomology_at
from .groebner import DEFAULT_CAPS, Caps, Submodule, Vector
from .ring import Polynomial


def subsets(t: int, k: int) -> List[Tuple[int, ...]]:
    return list(combinations(range(t), k))


def koszul_sign(j: int, S: Sequence[int]) -> int:
    return -1 if sum(1 for i in S if i < j) % 2 else 1


def _check_sequence(f: Sequence[Polynomial]):
    if not f:
        raise InputError("the Koszul complex needs a nonempty sequence")
    ring = f[0].ring
    if any(g.ring != ring for g in f):
        raise InputError("all elements of the sequence must share one ring")
    return ring


def koszul_complex(f: Sequence[Polynomial], e: int = 1) -> FreeComplex:
    """The cochain complex ``K(f_1^e, ..., f_t^e; R)`` in degrees ``0..t``."""
    ring = _check_sequence(f)
    if e < 1:
        raise InputError("the exponent must be positive")
    t = len(f)
    powers = [g ** e for g in f]
    index = {k: {S: i for i, S in enumerate(subsets(t, k))} for k in range(t + 1)}
    diffs: Dict[int, list] = {}
    for k in range(t):
        src, dst = index[k], index[k + 1]
        mat = [[ring.zero] * len(src) for _ in range(len(dst))]
        for S, col in src.items():
            for j in range(t):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                g = powers[j]
                mat[dst[T]][col] = g if koszul_sign(j, S) > 0 else -g
        diffs[k] = mat
    degrees = None
    if all(g.is_homogeneous() for g in f):
        dg = [e * max(g.total_degree, 0) for g in f]
        degrees = {k: [-sum(dg[j] for j in S) for S in index[k]] for k in range(t + 1)}
    ranks = {k: comb(t, k) for k in range(t + 1)}
    return FreeComplex(ring, ranks, diffs, degrees)


def koszul_cohomology(f: Sequence[Polynomial], k: int, e: int = 1,
                      caps: Caps = DEFAULT_CAPS) -> FPModule:
    """``H^k(f^e; R)`` as a finitely presented module."""
    t = len(f)
    if not 0 <= k <= t:
        raise InputError(f"k must lie in [0, {t}]")
    return cohomology_at(koszul_complex(f, e), k, caps)


def power_chain_map(f: Sequence[Polynomial], k: int, p: int) -> List[Polynomial]:
    """Diagonal of the chain map ``K^k(f) -> K^k(f^p)``: ``prod_{j in S} f_j^(p-1)``."""
    ring = _check_sequence(f)
    pw = [g ** (p - 1) for g in f]
    out = []
    for S in subsets(len(f), k):
        d = ring.one
        for j in S:
            d = d * pw[j]
        out.append(d)
    return out


def induced_map(source: FPModule, target: FPModule, diagonal: Sequence[Polynomial],
                target_complex: FreeComplex, k: int, caps: Caps = DEFAULT_CAPS) -> ModuleMap:
    """Map on cohomology induced by a diagonal chain map in degree ``k``.

    Each source generator (a cycle of the source complex) is pushed forward
    and written in terms of the target's generating cycles modulo boundaries.
    """
    ring = source.ring
    n = target_complex.rank(k)
    image = [c for c in target_complex.columns(k - 1) if c] if target_complex.rank(k - 1) else []
    lifter = Submodule(list(target.embedding) + image, ring, n, caps)
    cols = []
    for z in source.embedding:
        parts = z.to_polys()
        w = Vector.from_polys([a * d for a, d in zip(parts, diagonal)], ring)
        coeffs = lifter.lift(w)
        if coeffs is None:
            raise InputError("chain map does not send cycles to cycles")
        cols.append(coeffs[: target.rank])
    matrix = [[cols[j][i] for j in range(source.rank)] for i in range(target.rank)]
    return ModuleMap(source, target, matrix)


def koszul_power_map(f: Sequence[Polynomial], k: int, p: int,
                     caps: Caps = DEFAULT_CAPS) -> ModuleMap:
    """The map ``H^k(f; R) -> H^k(f^p; R)`` induced by the power chain map."""
    if p < 1:
        raise InputError("the power must be positive")
    source = koszul_cohomology(f, k, 1, caps)
    tc = koszul_complex(f, p)
    target = cohomology_at(tc, k, caps)
    return induced_map(source, target, power_chain_map(f, k, p), tc, k, caps)
