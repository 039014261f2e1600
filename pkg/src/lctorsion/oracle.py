"""Degree-truncated linear algebra: an oracle independent of the Gröbner engine.

Every question is restricted to the finitely many monomial multiples of
degree at most ``D`` and answered by exact linear algebra (Smith normal form
over ZZ, Gaussian elimination over a field).  For homogeneous input the
answer on a degree slice is exact; otherwise a negative answer is reported
as ``inconclusive``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError
from .fpmod import FPModule, FreeComplex
from .groebner import Vector, as_vectors
from .ring import Polynomial, PolyRing
from .snf import cokernel_invariants, integer_kernel, integer_solve, smith_normal_form

DEFAULT_BOUND = 4

MEMBER = "member"
NON_MEMBER = "non_member"
INCONCLUSIVE = "inconclusive"


@dataclass
class OracleResult:
    status: str
    bound: int
    certificate: Optional[List[Polynomial]] = None
    pieces: List[Tuple[int, int, List[int]]] = field(default_factory=list)
    kernel: List[Vector] = field(default_factory=list)


def monomials_of_degree(n: int, d: int) -> List[tuple]:
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_up_to(n: int, d: int) -> List[tuple]:
    return [m for k in range(d + 1) for m in monomials_of_degree(n, k)]


# -- field elimination ---------------------------------------------------------

def _field_ops(ring: PolyRing):
    p = ring.coef.modulus
    if p:
        return (lambda a: a % p), (lambda a: pow(a, -1, p))
    return Fraction, (lambda a: 1 / Fraction(a))


def field_rank(rows: List[List], ring: PolyRing) -> int:
    norm, inv = _field_ops(ring)
    M = [[norm(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        iv = inv(M[rank][c])
        M[rank] = [norm(x * iv) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [norm(a - f * b) for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def field_solve(A: List[List], b: List, ring: PolyRing) -> Optional[List]:
    """A solution of A x = b over the coefficient field, or None."""
    norm, inv = _field_ops(ring)
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[norm(x) for x in A[i]] + [norm(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = inv(M[r][c])
        M[r] = [norm(x * iv) for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [norm(a - f * bb) for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][n] for i in range(r, m)):
        return None
    x = [norm(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


# -- helpers -------------------------------------------------------------------

def _column(v: Vector, index: Dict, add: bool = True) -> Dict[int, object]:
    col = {}
    for t, c in v.terms.items():
        if t not in index:
            if not add:
                return None
            index[t] = len(index)
        col[index[t]] = c
    return col


def _dense(cols: List[Dict[int, object]], nrows: int) -> List[List]:
    rows = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    return rows


def _shift(v: Vector, m: tuple) -> Vector:
    return Vector(v.ring, v.rank, {(i, tuple(a + b for a, b in zip(mm, m))): c
                                   for (i, mm), c in v.terms.items()})


# -- queries -------------------------------------------------------------------

def truncated_membership(v, gens, D: int = DEFAULT_BOUND) -> OracleResult:
    """Is ``v`` a combination of ``gens`` with all products of degree <= D?"""
    vecs = as_vectors(gens)
    if isinstance(v, Polynomial):
        v = Vector.from_polys([v])
    ring = v.ring
    if not v.terms:
        return OracleResult(MEMBER, D, certificate=[ring.zero] * len(vecs))
    homogeneous = v.is_homogeneous() and all(g.is_homogeneous() for g in vecs if g)
    dv = v.degree()
    if dv > D:
        return OracleResult(INCONCLUSIVE, D)
    n = ring.nvars
    index: Dict = {}
    cols, labels = [], []
    for gi, g in enumerate(vecs):
        if not g:
            continue
        dg = g.degree()
        mons = monomials_of_degree(n, dv - dg) if homogeneous else monomials_up_to(n, D - dg)
        for m in mons:
            cols.append(_column(_shift(g, m), index))
            labels.append((gi, m))
    b_col = _column(v, index)
    nrows = len(index)
    A = _dense(cols, nrows) if cols else [[] for _ in range(nrows)]
    b = [b_col.get(i, 0) for i in range(nrows)]
    if not cols:
        sol = None
    elif ring.coef.kind == "ZZ":
        sol = integer_solve(A, b, ncols=len(cols))
    else:
        sol = field_solve(A, b, ring)
    if sol is None:
        return OracleResult(NON_MEMBER if homogeneous else INCONCLUSIVE, D)
    cert = [dict() for _ in vecs]
    for (gi, m), c in zip(labels, sol):
        if c:
            cert[gi][m] = cert[gi].get(m, 0) + c
    return OracleResult(MEMBER, D, certificate=[ring.from_dict(d) for d in cert])


def truncated_kernel(gens, D: int = DEFAULT_BOUND) -> OracleResult:
    """A basis of the kernel of ``R^s -> R^m, e_i -> gens[i]`` in degrees <= D.

    Generators must be homogeneous; source basis vector ``e_i`` gets the
    degree of ``gens[i]``.  The kernel is returned slice by slice.
    """
    vecs = as_vectors(gens)
    if not vecs:
        return OracleResult("ok", D)
    ring = vecs[0].ring
    s = len(vecs)
    if not all(g.is_homogeneous() for g in vecs):
        raise InputError("truncated_kernel needs homogeneous generators")
    shifts = [max(g.degree(), 0) for g in vecs]
    n = ring.nvars
    kernel = []
    for delta in range(min(shifts), D + 1):
        index: Dict = {}
        cols, labels = [], []
        for i, g in enumerate(vecs):
            for m in monomials_of_degree(n, delta - shifts[i]):
                cols.append(_column(_shift(g, m), index))
                labels.append((i, m))
        if not cols:
            continue
        A = _dense(cols, len(index))
        if not index:
            basis = [[int(j == c) for j in range(len(cols))] for c in range(len(cols))]
        elif ring.coef.kind == "ZZ":
            basis = integer_kernel(A, ncols=len(cols))
        else:
            basis = _field_kernel(A, ring, len(cols))
        for vec in basis:
            terms = {}
            for (i, m), c in zip(labels, vec):
                if c:
                    terms[(i, m)] = c
            kernel.append(Vector(ring, s, terms))
    return OracleResult("ok", D, kernel=kernel)


def _field_kernel(A, ring, ncols):
    norm, inv = _field_ops(ring)
    M = [[norm(x) for x in row] for row in A]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = inv(M[r][c])
        M[r] = [norm(x * iv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [norm(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [norm(0)] * ncols
        v[fc] = norm(1)
        for i, pc in enumerate(pivots):
            v[pc] = norm(-M[i][fc])
        out.append(v)
    return out


def _slice_basis(shifts: Sequence[int], n: int, delta: int):
    return [(i, m) for i, s in enumerate(shifts) for m in monomials_of_degree(n, delta - s)]


def _slice_matrix(mat, src_basis, dst_index, ring):
    """Dense matrix of a polynomial matrix restricted to one degree slice."""
    rows = [[0] * len(src_basis) for _ in range(len(dst_index))]
    for j, (i, m) in enumerate(src_basis):
        for r, row in enumerate(mat):
            f = row[i]
            for mm, c in f.terms.items():
                t = (r, tuple(a + b for a, b in zip(m, mm)))
                rows[dst_index[t]][j] += c
    return rows


def _piece(ring, n_k, d_in, d_out):
    """(rank, torsion) of ker(d_out)/im(d_in) for dense slice matrices."""
    if ring.coef.kind == "ZZ":
        r_out = smith_normal_form(d_out, transforms=False, ncols=n_k).rank if d_out and n_k else 0
        if d_in and any(any(r) for r in d_in):
            res = smith_normal_form(d_in, transforms=False)
            r_in, tors = res.rank, res.torsion
        else:
            r_in, tors = 0, []
        return n_k - r_out - r_in, tors
    r_out = field_rank(d_out, ring) if d_out and n_k else 0
    r_in = field_rank(d_in, ring) if d_in and d_in[0] else 0
    return n_k - r_out - r_in, []


def truncated_cohomology(C: FreeComplex, k: int, D: int = DEFAULT_BOUND) -> OracleResult:
    """``(degree, rank, torsion)`` of ``H^k(C)`` on every slice of degree <= D."""
    if C.degrees is None:
        raise InputError("truncated_cohomology needs a graded complex")
    ring = C.ring
    n = ring.nvars
    shifts = C.degrees.get(k, [])
    if not shifts:
        return OracleResult("ok", D)
    pieces = []
    for delta in range(min(shifts), D + 1):
        bk = _slice_basis(shifts, n, delta)
        idx_k = {t: i for i, t in enumerate(bk)}
        d_in = []
        if C.rank(k - 1):
            bkm = _slice_basis(C.degrees[k - 1], n, delta)
            d_in = _slice_matrix(C.differential(k - 1), bkm, idx_k, ring) if bkm else []
            if d_in and not d_in[0]:
                d_in = []
        d_out = []
        if C.rank(k + 1):
            bkp = _slice_basis(C.degrees[k + 1], n, delta)
            idx_p = {t: i for i, t in enumerate(bkp)}
            d_out = _slice_matrix(C.differential(k), bk, idx_p, ring) if bkp else []
        rank, tors = _piece(ring, len(bk), d_in, d_out)
        pieces.append((delta, rank, tors))
    return OracleResult("ok", D, pieces=pieces)


def module_graded_pieces(M: FPModule, D: int = DEFAULT_BOUND) -> List[Tuple[int, int, List[int]]]:
    """``(degree, rank, torsion)`` of a graded presentation in degrees <= D."""
    if M.degrees is None:
        raise InputError("module_graded_pieces needs generator degrees")
    if M.rank == 0:
        return []
    ring = M.ring
    n = ring.nvars
    rel_deg = [r.degree(M.degrees) for r in M.relations]
    out = []
    for delta in range(min(M.degrees), D + 1):
        basis = _slice_basis(M.degrees, n, delta)
        index = {t: i for i, t in enumerate(basis)}
        cols = []
        for r, dr in zip(M.relations, rel_deg):
            for m in monomials_of_degree(n, delta - dr):
                cols.append(_column(_shift(r, m), index, add=False))
        A = _dense(cols, len(basis)) if cols else []
        if ring.coef.kind == "ZZ":
            rank, tors = cokernel_invariants(A, len(basis)) if basis else (0, [])
        else:
            rank, tors = len(basis) - (field_rank(A, ring) if A and A[0] else 0), []
        out.append((delta, rank, tors))
    return out


def truncated_oracle(query: tuple, D: int = DEFAULT_BOUND) -> OracleResult:
    """Dispatch ``("membership", v, gens)``, ``("kernel", gens)`` or
    ``("cohomology", complex, k)``."""
    kind, *args = query
    if kind == "membership":
        return truncated_membership(args[0], args[1], D)
    if kind == "kernel":
        return truncated_kernel(args[0], D)
    if kind == "cohomology":
        return truncated_cohomology(args[0], args[1], D)
    raise InputError(f"unknown oracle query {kind!r}")
