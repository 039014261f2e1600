"""Z^d-graded local cohomology of monomial ideals by Čech strands.

For monomial ``f`` the Čech complex is Z^d-graded and each graded piece
is a finite complex of free abelian groups: the summand ``R_{f_S}`` has a
rank-one piece in degree ``u`` exactly when ``u_i >= 0`` for every variable
``i`` that does not divide ``f_S = prod_{j in S} f_j``.  Smith normal form
of the strand then gives ``H^k_a(R)_u`` as an abelian group.

Which summands survive depends only on the set of negative coordinates of
``u``, so scanning ``u`` in ``{0, -1}^d`` already visits every strand that
occurs in any degree.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from sympy import factorint

from .errors import InputError
from .fpmod import FreeComplex
from .koszul import koszul_sign, subsets
from .ring import ZZ, PolyRing, Polynomial
from .snf import smith_normal_form

DEFAULT_BOX = 2

_SCALARS = PolyRing(ZZ, ())


@dataclass
class GradedPieceResult:
    degree: Tuple[int, ...]
    k: int
    rank: int
    torsion: List[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "degree": [str(x) for x in self.degree],
            "k": str(self.k),
            "rank": str(self.rank),
            "torsion": [str(x) for x in self.torsion],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedPieceResult":
        return cls(tuple(int(x) for x in data["degree"]), int(data["k"]), int(data["rank"]),
                   [int(x) for x in data["torsion"]])


def supports(f: Sequence[Polynomial]) -> List[FrozenSet[int]]:
    """Variable supports of monomial generators (coefficient 1 required)."""
    out = []
    for g in f:
        if len(g.terms) != 1:
            raise InputError(f"{g} is not a monomial")
        (m, c), = g.terms.items()
        if c != 1:
            raise InputError(f"{g} must have coefficient 1")
        out.append(frozenset(i for i, e in enumerate(m) if e))
    return out


def _check_degree(f, u) -> Tuple[int, ...]:
    if not f:
        raise InputError("need at least one generator")
    u = tuple(int(x) for x in u)
    if len(u) != f[0].ring.nvars:
        raise InputError("degree vector has the wrong length")
    return u


def _strand(supp: Sequence[FrozenSet[int]], negative: FrozenSet[int]):
    """Admissible subsets per k and integer coboundary matrices."""
    t = len(supp)
    admissible: Dict[int, List[tuple]] = {}
    for k in range(t + 1):
        admissible[k] = [S for S in subsets(t, k)
                         if negative <= frozenset().union(*[supp[j] for j in S])]
    mats: Dict[int, List[List[int]]] = {}
    for k in range(t):
        src, dst = admissible[k], admissible[k + 1]
        index = {S: i for i, S in enumerate(dst)}
        mat = [[0] * len(src) for _ in dst]
        for c, S in enumerate(src):
            for j in range(t):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                r = index.get(T)
                if r is not None:
                    mat[r][c] = koszul_sign(j, S)
        mats[k] = mat
    return admissible, mats


def cech_degree_complex(f: Sequence[Polynomial], u) -> FreeComplex:
    """The degree-``u`` strand of the Čech complex, as a complex over ZZ."""
    u = _check_degree(f, u)
    supp = supports(f)
    admissible, mats = _strand(supp, frozenset(i for i, x in enumerate(u) if x < 0))
    ranks = {k: len(v) for k, v in admissible.items()}
    diffs = {k: [[_SCALARS.constant(x) for x in row] for row in mat] for k, mat in mats.items()}
    return FreeComplex(_SCALARS, ranks, diffs)


def _int_rank(mat) -> int:
    if not mat or not any(any(r) for r in mat):
        return 0
    return smith_normal_form(mat, transforms=False).rank


def _piece(supp, negative, k) -> Tuple[int, List[int]]:
    admissible, mats = _strand(supp, negative)
    n = len(admissible.get(k, []))
    d_out = mats.get(k)
    d_in = mats.get(k - 1)
    r_out = _int_rank(d_out) if d_out else 0
    if d_in and any(any(r) for r in d_in):
        res = smith_normal_form(d_in, transforms=False)
        r_in, tors = res.rank, res.torsion
    else:
        r_in, tors = 0, []
    return n - r_out - r_in, tors


def lc_graded_piece(f: Sequence[Polynomial], k: int, u) -> GradedPieceResult:
    """``H^k_a(R)_u`` as (free rank, invariant factors > 1)."""
    u = _check_degree(f, u)
    supp = supports(f)
    rank, tors = _piece(supp, frozenset(i for i, x in enumerate(u) if x < 0), k)
    return GradedPieceResult(u, k, rank, tors)


@dataclass
class ScanResult:
    k: int
    mode: str
    bound: Optional[int]
    primes: List[int]
    witnesses: Dict[int, Tuple[int, ...]]
    pieces: List[GradedPieceResult] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "k": str(self.k),
            "mode": self.mode,
            "bound": None if self.bound is None else str(self.bound),
            "primes": [str(p) for p in self.primes],
            "witnesses": [{"p": str(p), "u": [str(x) for x in self.witnesses[p]]}
                          for p in self.primes],
            "pieces": [g.to_json() for g in self.pieces],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ScanResult":
        primes = [int(p) for p in data["primes"]]
        wit = {int(w["p"]): tuple(int(x) for x in w["u"]) for w in data["witnesses"]}
        return cls(int(data["k"]), data["mode"],
                   None if data["bound"] is None else int(data["bound"]),
                   primes, wit, [GradedPieceResult.from_json(g) for g in data["pieces"]])


def torsion_scan(f: Sequence[Polynomial], k: int, mode: str = "squarefree",
                 D: int = DEFAULT_BOX, workers: int = 1) -> ScanResult:
    """Torsion primes of ``H^k_a(R)`` over a window of degrees.

    ``mode="squarefree"`` scans ``{0,-1}^d``; ``mode="box"`` scans
    ``[-D, D]^d``.  Pieces with nonzero rank or torsion are reported.
    """
    f = list(f)
    supp = supports(f)
    d = f[0].ring.nvars if f else 0
    if mode == "squarefree":
        if any(e > 1 for g in f for m in g.terms for e in m):
            raise InputError("squarefree mode needs squarefree generators")
        window = list(itertools.product((0, -1), repeat=d))
        bound = None
    elif mode == "box":
        if D < 0:
            raise InputError("box bound must be nonnegative")
        window = list(itertools.product(range(-D, D + 1), repeat=d))
        bound = D
    else:
        raise InputError(f"unknown scan mode {mode!r}")
    cache: Dict[FrozenSet[int], Tuple[int, List[int]]] = {}
    keys = sorted({frozenset(i for i, x in enumerate(u) if x < 0) for u in window}, key=sorted)

    def work(neg):
        return neg, _piece(supp, neg, k)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            cache.update(ex.map(work, keys))
    else:
        cache.update(map(work, keys))
    pieces = []
    witnesses: Dict[int, Tuple[int, ...]] = {}
    for u in window:
        rank, tors = cache[frozenset(i for i, x in enumerate(u) if x < 0)]
        if rank or tors:
            pieces.append(GradedPieceResult(u, k, rank, tors))
        for t in tors:
            for p in factorint(t):
                witnesses.setdefault(p, u)
    return ScanResult(k, mode, bound, sorted(witnesses), witnesses, pieces)


# simplicial complexes, for Stanley-Reisner inputs and as an oracle

def faces_of(facets: Sequence[Sequence[int]]) -> List[tuple]:
    out = set()
    for F in facets:
        F = tuple(sorted(F))
        for r in range(len(F) + 1):
            out.update(itertools.combinations(F, r))
    return sorted(out, key=lambda s: (len(s), s))


def stanley_reisner_ideal(facets: Sequence[Sequence[int]], ring: PolyRing) -> List[Polynomial]:
    """Minimal non-faces of the complex, as squarefree monomials."""
    faces = set(faces_of(facets))
    n = ring.nvars
    out = []
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            if S in faces:
                continue
            if any(T not in faces for T in itertools.combinations(S, r - 1) if T):
                continue
            out.append(ring.monomial([1 if i in S else 0 for i in range(n)]))
    return out


def simplicial_cohomology(facets: Sequence[Sequence[int]]) -> Dict[int, Tuple[int, List[int]]]:
    """Reduced simplicial cohomology over ZZ: ``{i: (rank, torsion)}``.

    Uses the augmented cochain complex with the empty face in degree -1.
    """
    faces = faces_of(facets)
    by_dim: Dict[int, List[tuple]] = {}
    for F in faces:
        by_dim.setdefault(len(F) - 1, []).append(F)
    top = max(by_dim)
    mats = {}
    for i in range(-1, top):
        src, dst = by_dim[i], by_dim.get(i + 1, [])
        index = {F: r for r, F in enumerate(dst)}
        mat = [[0] * len(src) for _ in dst]
        for c, F in enumerate(src):
            for G in dst:
                if set(F) <= set(G):
                    v = (set(G) - set(F)).pop()
                    pos = sorted(G).index(v)
                    mat[index[G]][c] = (-1) ** pos
        mats[i] = mat
    out = {}
    for i in range(-1, top + 1):
        n = len(by_dim[i])
        r_out = _int_rank(mats[i]) if i in mats else 0
        if i - 1 in mats and any(any(r) for r in mats[i - 1]):
            res = smith_normal_form(mats[i - 1], transforms=False)
            r_in, tors = res.rank, res.torsion
        else:
            r_in, tors = 0, []
        out[i] = (n - r_out - r_in, tors)
    return out
