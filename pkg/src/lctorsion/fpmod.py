"""Free complexes, finitely presented modules and their cohomology.

A module ``M = R^rank / N`` is stored by the generators of ``N``
(``relations``).  Modules produced as subquotients (cohomology, colon
modules) also remember ``embedding``: for each generator of ``M``, the
vector of the ambient free module it came from.  Maps between cohomology
modules are built from these embeddings.
"""

from __future__ import annotations

import threading
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError
from .groebner import DEFAULT_CAPS, Caps, Submodule, Vector, as_vectors
from .ring import GF, Polynomial, PolyRing

Matrix = List[List[Polynomial]]


def matrix_columns(ring: PolyRing, mat: Matrix, nrows: int, ncols: int) -> List[Vector]:
    cols = []
    for j in range(ncols):
        cols.append(Vector.from_polys([mat[i][j] for i in range(nrows)], ring))
    return cols


def apply_matrix(ring: PolyRing, mat: Matrix, v: Vector, nrows: int) -> Vector:
    out = [ring.zero] * nrows
    for j, f in enumerate(v.to_polys()):
        if f:
            for i in range(nrows):
                if mat[i][j]:
                    out[i] = out[i] + mat[i][j] * f
    return Vector.from_polys(out, ring)


def matmul(ring: PolyRing, A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return []
    inner = len(B)
    ncols = len(B[0])
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            acc = ring.zero
            for t in range(inner):
                if row[t] and B[t][j]:
                    acc = acc + row[t] * B[t][j]
            new.append(acc)
        out.append(new)
    return out


class FreeComplex:
    """A bounded cochain complex ``C^k`` of finite free modules.

    ``differentials[k]`` is the matrix of ``d^k: C^k -> C^{k+1}`` with
    ``rank(k+1)`` rows and ``rank(k)`` columns.  ``degrees`` optionally
    records the internal degree of each basis vector so that graded slices
    can be taken.
    """

    def __init__(self, ring: PolyRing, ranks: Dict[int, int], differentials: Dict[int, Matrix],
                 degrees: Optional[Dict[int, List[int]]] = None, check: bool = True):
        self.ring = ring
        self.ranks = dict(ranks)
        self.differentials = dict(differentials)
        self.degrees = degrees
        if not self.ranks:
            raise InputError("a complex needs at least one term")
        for k, mat in self.differentials.items():
            r0, r1 = self.rank(k), self.rank(k + 1)
            if len(mat) != r1 or any(len(row) != r0 for row in mat):
                raise InputError(f"d^{k} has the wrong shape")
            for row in mat:
                for f in row:
                    if f.ring != ring:
                        raise InputError("differential entries live in another ring")
        if check and not self.is_complex():
            raise InputError("d∘d != 0")

    @property
    def window(self) -> Tuple[int, int]:
        return min(self.ranks), max(self.ranks)

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def differential(self, k: int) -> Matrix:
        mat = self.differentials.get(k)
        if mat is None:
            return [[self.ring.zero] * self.rank(k) for _ in range(self.rank(k + 1))]
        return mat

    def columns(self, k: int) -> List[Vector]:
        """Images of the basis vectors of C^k in C^{k+1}."""
        return matrix_columns(self.ring, self.differential(k), self.rank(k + 1), self.rank(k))

    def is_complex(self) -> bool:
        """Exact check that every composite ``d^{k+1} d^k`` vanishes."""
        lo, hi = self.window
        mod = self.ring.coef.modulus
        for k in range(lo, hi):
            if self.rank(k) == 0 or self.rank(k + 2) == 0:
                continue
            nxt = [c.to_polys() for c in self.columns(k + 1)]
            for col in self.columns(k):
                acc: dict = {}
                for (i, m), c in col.terms.items():
                    for row, g in enumerate(nxt[i]):
                        for m2, c2 in g.terms.items():
                            t = (row, tuple(a + b for a, b in zip(m, m2)))
                            v = acc.get(t, 0) + c * c2
                            if mod:
                                v %= mod
                            if v:
                                acc[t] = v
                            else:
                                acc.pop(t, None)
                if acc:
                    return False
        return True

    def map_entries(self, fn) -> "FreeComplex":
        diffs = {k: [[fn(f) for f in row] for row in mat] for k, mat in self.differentials.items()}
        ring = None
        for mat in diffs.values():
            for row in mat:
                for f in row:
                    ring = f.ring
                    break
        return FreeComplex(ring or self.ring, self.ranks, diffs, self.degrees, check=True)


class FPModule:
    """``R^rank / <relations>``, optionally with generator embeddings/degrees."""

    def __init__(self, ring: PolyRing, rank: int, relations: Sequence[Vector] = (),
                 embedding: Optional[List[Vector]] = None,
                 degrees: Optional[List[int]] = None, caps: Caps = DEFAULT_CAPS):
        self.ring = ring
        self.rank = rank
        self.relations = [r for r in as_vectors(relations, ring) if r]
        for r in self.relations:
            if r.ring != ring or r.rank != rank:
                raise InputError("relation outside the ambient free module")
        if embedding is not None and len(embedding) != rank:
            raise InputError("one embedding vector per generator is required")
        if degrees is not None and len(degrees) != rank:
            raise InputError("one degree per generator is required")
        self.embedding = embedding
        self.degrees = degrees
        self.caps = caps
        self._lock = threading.Lock()
        self._sub: Optional[Submodule] = None

    @classmethod
    def cyclic(cls, ring: PolyRing, ideal_gens: Sequence[Polynomial], **kw) -> "FPModule":
        """R / (ideal_gens)."""
        return cls(ring, 1, [Vector.from_polys([ring(g)], ring) for g in ideal_gens], **kw)

    @classmethod
    def cokernel(cls, ring: PolyRing, mat: Matrix, **kw) -> "FPModule":
        nrows = len(mat)
        ncols = len(mat[0]) if nrows else 0
        return cls(ring, nrows, matrix_columns(ring, mat, nrows, ncols), **kw)

    @property
    def submodule(self) -> Submodule:
        with self._lock:
            if self._sub is None:
                self._sub = Submodule(self.relations, self.ring, self.rank, self.caps)
            return self._sub

    @property
    def gb(self):
        return self.submodule.gb

    def unit(self, i: int) -> Vector:
        return Vector.unit(self.ring, self.rank, i)

    def contains_relation(self, v: Vector) -> bool:
        """True iff ``v`` maps to zero in the module."""
        return self.submodule.contains(v)

    def is_zero(self) -> bool:
        return is_zero_module(self)

    def same_relations(self, other: "FPModule") -> bool:
        """Equality of relation submodules inside the same free module."""
        if self.rank != other.rank or self.ring != other.ring:
            return False
        return all(other.contains_relation(r) for r in self.relations) and all(
            self.contains_relation(r) for r in other.relations
        )

    def __repr__(self):
        return f"<FPModule {self.ring}^{self.rank} / {len(self.relations)} relations>"

    def to_json(self) -> dict:
        out = {
            "ring": self.ring.to_json(),
            "rank": str(self.rank),
            "relations": [r.to_json() for r in self.relations],
        }
        if self.embedding is not None:
            out["generators"] = [v.to_json() for v in self.embedding]
        if self.degrees is not None:
            out["degrees"] = [str(d) for d in self.degrees]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FPModule":
        try:
            ring = PolyRing.from_json(data["ring"])
            rank = int(data["rank"])
            rels = [Vector.from_json(ring, r) for r in data["relations"]]
            emb = None
            if "generators" in data:
                emb = [Vector.from_json(ring, v) for v in data["generators"]]
            degs = [int(d) for d in data["degrees"]] if "degrees" in data else None
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed module JSON: {exc}") from exc
        return cls(ring, rank, rels, emb, degs)


class ModuleMap:
    """A map ``source -> target`` given on generators by a matrix.

    ``matrix`` has ``target.rank`` rows and ``source.rank`` columns; column
    ``j`` is the image of the ``j``-th generator of the source.
    """

    def __init__(self, source: FPModule, target: FPModule, matrix: Matrix, check: bool = True):
        if source.ring != target.ring:
            raise InputError("source and target live over different rings")
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise InputError("map matrix has the wrong shape")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_well_defined():
            raise InputError("matrix does not send relations to relations")

    def __call__(self, v: Vector) -> Vector:
        return apply_matrix(self.source.ring, self.matrix, v, self.target.rank)

    def is_well_defined(self) -> bool:
        return all(self.target.contains_relation(self(r)) for r in self.source.relations)

    def is_zero(self) -> bool:
        return all(self.target.contains_relation(self(self.source.unit(j)))
                   for j in range(self.source.rank))

    def kernel_generators(self) -> List[Vector]:
        """Vectors of ``R^{source.rank}`` generating the preimage of the relations."""
        return kernel_of_matrix(self.source.ring, self.matrix, self.source.rank,
                                self.target, self.source.caps)

    def kernel(self) -> FPModule:
        return subquotient(self.source, self.kernel_generators())


def kernel_of_matrix(ring, mat: Matrix, ncols: int, target: FPModule,
                     caps: Caps = DEFAULT_CAPS) -> List[Vector]:
    """``{v in R^ncols : mat v in relations(target)}`` as generators."""
    cols = matrix_columns(ring, mat, target.rank, ncols)
    gens = cols + target.relations
    if not any(gens):
        return [Vector.unit(ring, ncols, j) for j in range(ncols)]
    out = []
    for s in Submodule(gens, ring, target.rank, caps).syzygies():
        polys = s.to_polys()[:ncols]
        v = Vector.from_polys(polys, ring)
        if v:
            out.append(v)
    return out


def subquotient(M: FPModule, gens: List[Vector]) -> FPModule:
    """The submodule of ``M`` generated by ``gens`` (vectors of M's ambient)."""
    r = len(gens)
    if r == 0:
        return FPModule(M.ring, 0, [], embedding=[], caps=M.caps)
    rels = []
    for s in Submodule(gens + M.relations, M.ring, M.rank, M.caps).syzygies():
        v = Vector.from_polys(s.to_polys()[:r], M.ring)
        if v:
            rels.append(v)
    return FPModule(M.ring, r, rels, embedding=list(gens), caps=M.caps)


def prune(rels: List[Vector], embedding: Optional[List[Vector]], degrees: Optional[List[int]],
          ring: PolyRing, rank: int):
    """Drop generators that some relation expresses through the others.

    A relation whose ``i``-th entry is a unit constant lets generator ``i`` be
    eliminated; remaining relations are rewritten accordingly.
    """
    rels = [r.to_polys() for r in rels]
    alive = list(range(rank))
    changed = True
    while changed:
        changed = False
        for ri, r in enumerate(rels):
            pos = None
            for i in alive:
                c = r[i].constant_value()
                if c is not None and c != 0 and ring.coef.is_unit(c):
                    pos = i
                    break
            if pos is None:
                continue
            inv = ring.coef.inverse(r[pos].constant_value())
            new = []
            for sj, s in enumerate(rels):
                if sj == ri:
                    continue
                if s[pos]:
                    factor = s[pos].scale(inv)
                    s = [a - factor * b for a, b in zip(s, r)]
                new.append(s)
            rels = new
            alive.remove(pos)
            changed = True
            break
    rels = [[r[i] for i in alive] for r in rels]
    out = [Vector.from_polys(r, ring) for r in rels] if alive else []
    out = [v for v in out if v]
    emb = [embedding[i] for i in alive] if embedding is not None else None
    degs = [degrees[i] for i in alive] if degrees is not None else None
    return out, emb, degs, alive


def cohomology_at(C: FreeComplex, k: int, caps: Caps = DEFAULT_CAPS,
                  prune_result: bool = True) -> FPModule:
    """``ker d^k / im d^{k-1}`` as a finitely presented module.

    Generators are kernel (syzygy) generators, remembered in ``embedding``
    as vectors of ``C^k``; relations express the image of ``d^{k-1}``.
    """
    lo, hi = C.window
    if not lo <= k <= hi:
        raise InputError(f"degree {k} outside the window [{lo}, {hi}]")
    ring = C.ring
    n = C.rank(k)
    if n == 0:
        return FPModule(ring, 0, [], embedding=[], degrees=[] if C.degrees else None, caps=caps)
    cols = [c for c in C.columns(k)] if C.rank(k + 1) else []
    if any(cols):
        # zero columns come back as unit syzygies
        kernel = Submodule(cols, ring, C.rank(k + 1), caps).syzygies()
    else:
        kernel = [Vector.unit(ring, n, j) for j in range(n)]
    r = len(kernel)
    if r == 0:
        return FPModule(ring, 0, [], embedding=[], degrees=[] if C.degrees else None, caps=caps)
    image = [c for c in C.columns(k - 1) if c] if C.rank(k - 1) else []
    rels = []
    if image:
        for s in Submodule(kernel + image, ring, n, caps).syzygies():
            v = Vector.from_polys(s.to_polys()[:r], ring)
            if v:
                rels.append(v)
    degs = None
    if C.degrees:
        shifts = C.degrees[k]
        degs = [v.degree(shifts) for v in kernel]
    emb = kernel
    alive = list(range(r))
    if prune_result:
        rels, emb, degs, alive = prune(rels, kernel, degs, ring, r)
    return FPModule(ring, len(alive), rels, embedding=emb, degrees=degs, caps=caps)


def is_zero_module(M: FPModule) -> bool:
    """Every generator lies in the relation submodule."""
    if M.rank == 0:
        return True
    if not M.relations:
        return False
    return all(M.contains_relation(M.unit(i)) for i in range(M.rank))


def colon_generators(M: FPModule, c: int) -> List[Vector]:
    """Generators of ``(N :_F c)`` in ``F = R^rank`` (``N`` = relations)."""
    ring = M.ring
    c = ring.coef.convert(c)
    if c == 0:
        raise InputError("colon by zero is not defined")
    scaled = [Vector(ring, M.rank, {(i, (0,) * ring.nvars): c}) for i in range(M.rank)]
    if not M.relations:
        return []
    out = []
    for s in Submodule(scaled + M.relations, ring, M.rank, M.caps).syzygies():
        v = Vector.from_polys(s.to_polys()[:M.rank], ring)
        if v:
            out.append(v)
    return out


def colon_by_scalar(M: FPModule, c: int) -> FPModule:
    """The submodule ``(0 :_M c) = (N :_F c) / N`` of ``M``, presented."""
    if M.ring.coef.kind != "ZZ":
        raise InputError("colon_by_scalar works over ZZ")
    gens = colon_generators(M, c)
    gens = [g for g in gens if not M.contains_relation(g)]
    if not gens:
        return FPModule(M.ring, 0, [], embedding=[], caps=M.caps)
    sub = subquotient(M, gens)
    rels, emb, degs, alive = prune(sub.relations, sub.embedding, None, M.ring, sub.rank)
    return FPModule(M.ring, len(alive), rels, embedding=emb, caps=M.caps)


def scalar_is_injective(M: FPModule, p: int) -> Tuple[bool, Optional[Vector]]:
    """Whether multiplication by ``p`` is injective on ``M``; else a witness.

    The witness is a reduced vector ``w`` of M's ambient free module with
    ``p*w`` in the relations but ``w`` not.
    """
    if M.ring.coef.kind != "ZZ":
        raise InputError("scalar_is_injective works over ZZ")
    for g in colon_generators(M, p):
        if not M.contains_relation(g):
            return False, M.submodule.normal_form(g)
    return True, None


def reduce_module_mod_p(M: FPModule, p: int) -> FPModule:
    """``M / pM`` presented over ``F_p[x]``."""
    if M.ring.coef.kind != "ZZ":
        raise InputError("reduce_module_mod_p expects a module over ZZ")
    ring = M.ring.with_coef(GF(p))
    rels = [r.change_ring(ring) for r in M.relations]
    emb = [v.change_ring(ring) for v in M.embedding] if M.embedding is not None else None
    return FPModule(ring, M.rank, rels, embedding=emb, degrees=M.degrees, caps=M.caps)
