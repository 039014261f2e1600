"""Gröbner bases for submodules of free modules over ZZ, QQ and F_p.

Over a field the engine is Buchberger's algorithm and returns the reduced
basis.  Over ZZ it computes a *strong* basis: S-polynomials and
GCD-polynomials are both processed so that the leading term (coefficient
included) of every element of the submodule is divisible by the leading term
of some basis element.  Normal forms are then a membership test.

Module elements are :class:`Vector` objects; internally the engine works on
plain dicts ``{(component, exponents): coefficient}``.  The default module
order is position-over-term with component 0 the largest, so generators
tagged with extra unit components give syzygies and lifts by elimination.
"""

from __future__ import annotations

import heapq
import math
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, ResourceError
from .ring import (
    Monomial,
    Polynomial,
    PolyRing,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
)

Term = Tuple[int, Monomial]


@dataclass(frozen=True)
class Caps:
    """Resource caps for one Gröbner computation."""

    max_basis: int = 20000
    max_coef_bits: int = 4096


DEFAULT_CAPS = Caps()


class Vector:
    """An element of the free module ``R^rank``; treat as immutable."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: PolyRing, rank: int, terms: Dict[Term, object]):
        self.ring = ring
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_polys(cls, polys: Sequence[Polynomial], ring: Optional[PolyRing] = None):
        if ring is None:
            if not polys:
                raise InputError("cannot infer the ring of an empty vector")
            ring = polys[0].ring
        terms = {}
        for i, f in enumerate(polys):
            f = ring(f)
            for m, c in f.terms.items():
                terms[(i, m)] = c
        return cls(ring, len(polys), terms)

    @classmethod
    def unit(cls, ring: PolyRing, rank: int, i: int) -> "Vector":
        return cls(ring, rank, {(i, (0,) * ring.nvars): 1})

    @classmethod
    def zero(cls, ring: PolyRing, rank: int) -> "Vector":
        return cls(ring, rank, {})

    def to_polys(self) -> List[Polynomial]:
        parts: List[dict] = [{} for _ in range(self.rank)]
        for (i, m), c in self.terms.items():
            parts[i][m] = c
        return [Polynomial(self.ring, p) for p in parts]

    def __getitem__(self, i: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for (j, m), c in self.terms.items() if j == i})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "Vector"):
        if not isinstance(other, Vector):
            raise InputError(f"expected a Vector, got {type(other).__name__}")
        if other.ring != self.ring or other.rank != self.rank:
            raise InputError("vectors live in different free modules")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        out = dict(self.terms)
        _axpy(out, other.terms, 1, None, self.ring.coef.modulus)
        return Vector(self.ring, self.rank, out)

    def __neg__(self) -> "Vector":
        mod = self.ring.coef.modulus
        return Vector(self.ring, self.rank, {t: (-c % mod if mod else -c) for t, c in self.terms.items()})

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __mul__(self, f) -> "Vector":
        f = self.ring(f)
        out: Dict[Term, object] = {}
        mod = self.ring.coef.modulus
        for m2, c2 in f.terms.items():
            _axpy(out, self.terms, c2, m2, mod)
        return Vector(self.ring, self.rank, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.rank, frozenset(self.terms.items())))

    def degree(self, shifts: Optional[Sequence[int]] = None) -> int:
        shifts = shifts or [0] * self.rank
        return max((sum(m) + shifts[i] for (i, m) in self.terms), default=-(10**9))

    def is_homogeneous(self, shifts: Optional[Sequence[int]] = None) -> bool:
        shifts = shifts or [0] * self.rank
        return len({sum(m) + shifts[i] for (i, m) in self.terms}) <= 1

    def change_ring(self, ring: PolyRing) -> "Vector":
        return Vector.from_polys([f.change_ring(ring) for f in self.to_polys()], ring)

    def __repr__(self):
        return "Vector(" + ", ".join(str(f) for f in self.to_polys()) + ")"

    def to_json(self) -> list:
        return [f.to_json() for f in self.to_polys()]

    @classmethod
    def from_json(cls, ring: PolyRing, data) -> "Vector":
        if not isinstance(data, list):
            raise InputError(f"a vector must be a JSON list, got {data!r}")
        return cls.from_polys([Polynomial.from_json(ring, f) for f in data], ring)


def as_vectors(gens, ring: Optional[PolyRing] = None) -> List[Vector]:
    """Accept Vectors, Polynomials (rank-1 vectors) or lists of Polynomials."""
    out = []
    for g in gens:
        if isinstance(g, Vector):
            out.append(g)
        elif isinstance(g, Polynomial):
            out.append(Vector.from_polys([g]))
        else:
            out.append(Vector.from_polys(list(g), ring))
    if out:
        r0, k0 = out[0].ring, out[0].rank
        if any(v.ring != r0 or v.rank != k0 for v in out):
            raise InputError("generators live in different free modules")
    return out


# -- low-level kernels -------------------------------------------------------

def _axpy(h: dict, g: dict, c, shift, mod: int) -> None:
    """In place: h += c * x^shift * g."""
    if shift is None or not any(shift):
        for t, a in g.items():
            v = h.get(t, 0) + c * a
            if mod:
                v %= mod
            if v:
                h[t] = v
            else:
                h.pop(t, None)
        return
    for (i, m), a in g.items():
        t = (i, tuple(x + y for x, y in zip(m, shift)))
        v = h.get(t, 0) + c * a
        if mod:
            v %= mod
        if v:
            h[t] = v
        else:
            h.pop(t, None)


def _xgcd(a: int, b: int):
    """Return (g, u, v) with u*a + v*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class _Elem:
    __slots__ = ("vec", "comp", "mon", "lc", "idx")

    def __init__(self, vec, comp, mon, lc, idx=-1):
        self.vec = vec
        self.comp = comp
        self.mon = mon
        self.lc = lc
        self.idx = idx


class _Engine:
    """Buchberger-type completion over one coefficient ring and module order."""

    def __init__(self, ring: PolyRing, module_order: str = "pot", caps: Caps = DEFAULT_CAPS):
        self.ring = ring
        self.coef = ring.coef
        self.mod = ring.coef.modulus
        self.field = ring.coef.is_field
        self.caps = caps
        mk = ring.key
        cache: Dict[Term, tuple] = {}
        if module_order == "pot":
            def tkey(t):
                k = cache.get(t)
                if k is None:
                    k = cache[t] = (-t[0], mk(t[1]))
                return k
        elif module_order == "top":
            def tkey(t):
                k = cache.get(t)
                if k is None:
                    k = cache[t] = (mk(t[1]), -t[0])
                return k
        else:
            raise InputError(f"unknown module order {module_order!r}")
        self.tkey = tkey
        self.module_order = module_order

    # -- helpers -------------------------------------------------------------
    def lead(self, h: dict) -> Term:
        return max(h, key=self.tkey)

    def _normalize(self, h: dict) -> None:
        """Monic over a field, positive leading coefficient over ZZ."""
        t = self.lead(h)
        c = h[t]
        if self.field:
            if c != 1:
                inv = self.coef.inverse(c)
                for k in h:
                    h[k] = h[k] * inv % self.mod if self.mod else h[k] * inv
        elif c < 0:
            for k in h:
                h[k] = -h[k]

    def _find_reducer(self, by_comp, t, c):
        comp, mon = t
        euclid = None
        for e in by_comp.get(comp, ()):
            if monomial_divides(e.mon, mon):
                if self.field or c % e.lc == 0:
                    return e, False
                if euclid is None and not (0 <= c < e.lc):
                    euclid = e
        if euclid is not None:
            return euclid, True
        return None, False

    def _reduce_term(self, h, t, e, euclid):
        c = h[t]
        shift = monomial_quotient(t[1], e.mon)
        if self.field:
            q = c * self.coef.inverse(e.lc)
            if self.mod:
                q %= self.mod
        else:
            q = c // e.lc
        _axpy(h, e.vec, -q, shift, self.mod)

    def top_reduce(self, h: dict, by_comp) -> dict:
        while h:
            t = self.lead(h)
            e, euclid = self._find_reducer(by_comp, t, h[t])
            if e is None:
                return h
            self._reduce_term(h, t, e, euclid)
            if euclid:
                # the leading coefficient shrank; retry exact reducers first
                continue
        return h

    def full_reduce(self, h: dict, by_comp, keep_lead: bool = False) -> dict:
        out = {}
        if keep_lead and h:
            t = self.lead(h)
            out[t] = h.pop(t)
        while h:
            t = self.lead(h)
            e, euclid = self._find_reducer(by_comp, t, h[t])
            if e is None:
                out[t] = h.pop(t)
            else:
                self._reduce_term(h, t, e, euclid)
        return out

    def _check_caps(self, basis, h):
        if len(basis) > self.caps.max_basis:
            raise ResourceError(f"Gröbner basis exceeded {self.caps.max_basis} elements")
        if self.mod:
            return
        lim = self.caps.max_coef_bits
        for c in h.values():
            if isinstance(c, int):
                if c.bit_length() > lim:
                    raise ResourceError(f"coefficient exceeded {lim} bits")
            elif max(c.numerator.bit_length(), c.denominator.bit_length()) > lim:
                raise ResourceError(f"coefficient exceeded {lim} bits")

    # -- completion ----------------------------------------------------------
    def groebner(self, gens: List[dict]) -> List[dict]:
        basis: List[_Elem] = []
        by_comp: Dict[int, List[_Elem]] = {}
        pairs: list = []
        done = set()
        rank1 = len({c for g in gens for (c, _) in g}) <= 1

        def insert(h):
            h = self.full_reduce(h, by_comp, keep_lead=True)
            self._normalize(h)
            t = self.lead(h)
            idx = len(basis)
            e = _Elem(h, t[0], t[1], h[t], idx)
            basis.append(e)
            self._check_caps(basis, h)
            live = by_comp.get(e.comp, [])
            for j in live:
                jdx = j.idx
                lcm = monomial_lcm(j.mon, e.mon)
                heapq.heappush(pairs, (self.tkey((e.comp, lcm)), jdx, idx))
            # elements whose leading term e divides are retired: their pair
            # with e is queued, so nothing is lost
            live[:] = [o for o in live if not (monomial_divides(e.mon, o.mon)
                                               and (self.field or o.lc % e.lc == 0))]
            live.append(e)
            by_comp[e.comp] = live

        for g in gens:
            h = self.top_reduce(dict(g), by_comp)
            if h:
                insert(h)

        while pairs:
            _, i, j = heapq.heappop(pairs)
            done.add((i, j))
            a, b = basis[i], basis[j]
            lcm = monomial_lcm(a.mon, b.mon)
            for h in self._pair_polys(a, b, lcm, by_comp, done, rank1, i, j):
                h = self.top_reduce(h, by_comp)
                if h:
                    insert(h)

        return self._interreduce(basis)

    def _pair_polys(self, a, b, lcm, by_comp, done, rank1, i, j):
        out = []
        ca, cb = a.lc, b.lc
        sa = monomial_quotient(lcm, a.mon)
        sb = monomial_quotient(lcm, b.mon)
        # over ZZ the product criterion also needs coprime leading coefficients
        coprime = (rank1 and all(x == 0 or y == 0 for x, y in zip(a.mon, b.mon))
                   and (self.field or math.gcd(ca, cb) == 1))
        if not coprime and not self._chain(a, b, lcm, by_comp, done, i, j):
            h: dict = {}
            if self.field:
                _axpy(h, a.vec, 1, sa, self.mod)
                _axpy(h, b.vec, -1, sb, self.mod)
            else:
                l = ca * cb // math.gcd(ca, cb)
                _axpy(h, a.vec, l // ca, sa, 0)
                _axpy(h, b.vec, -(l // cb), sb, 0)
            if h:
                out.append(h)
        if not self.field and ca % cb and cb % ca:
            g, u, v = _xgcd(ca, cb)
            covered = any(
                monomial_divides(e.mon, lcm) and g % e.lc == 0 for e in by_comp.get(a.comp, ())
            )
            if not covered:
                h = {}
                _axpy(h, a.vec, u, sa, 0)
                _axpy(h, b.vec, v, sb, 0)
                if h:
                    out.append(h)
        return out

    def _chain(self, a, b, lcm, by_comp, done, i, j) -> bool:
        """Buchberger's chain criterion for the S-polynomial of (i, j)."""
        lab = None if self.field else a.lc * b.lc // math.gcd(a.lc, b.lc)
        for e in by_comp.get(a.comp, ()):
            k = e.idx
            if k == i or k == j or not monomial_divides(e.mon, lcm):
                continue
            if lab is not None and lab % e.lc:
                continue
            if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                return True
        return False

    def _interreduce(self, basis: List[_Elem]) -> List[dict]:
        keep: List[_Elem] = []
        for idx, e in enumerate(basis):
            redundant = False
            for jdx, o in enumerate(basis):
                if jdx == idx or o.comp != e.comp:
                    continue
                if monomial_divides(o.mon, e.mon) and (self.field or e.lc % o.lc == 0):
                    if o.mon == e.mon and (self.field or o.lc == e.lc) and jdx > idx:
                        continue
                    redundant = True
                    break
            if not redundant:
                keep.append(e)
        out = []
        for e in keep:
            others: Dict[int, List[_Elem]] = {}
            for o in keep:
                if o is not e:
                    others.setdefault(o.comp, []).append(o)
            h = self.full_reduce(dict(e.vec), others, keep_lead=True)
            out.append(h)
        out.sort(key=lambda h: self.tkey(self.lead(h)))
        return out

    def index(self, elems: List[dict]):
        by_comp: Dict[int, List[_Elem]] = {}
        for h in elems:
            t = self.lead(h)
            by_comp.setdefault(t[0], []).append(_Elem(h, t[0], t[1], h[t]))
        return by_comp


class GroebnerBasis:
    """A (strong or reduced) Gröbner basis of a submodule of ``R^rank``."""

    def __init__(self, ring: PolyRing, rank: int, elements: List[dict],
                 module_order: str = "pot", caps: Caps = DEFAULT_CAPS):
        self.ring = ring
        self.rank = rank
        self.module_order = module_order
        self.caps = caps
        self._engine = _Engine(ring, module_order, caps)
        self._elements = elements
        self._index = self._engine.index(elements)

    @property
    def strong(self) -> bool:
        return not self.ring.coef.is_field

    @property
    def elements(self) -> List[Vector]:
        return [Vector(self.ring, self.rank, dict(h)) for h in self._elements]

    def __len__(self):
        return len(self._elements)

    def leading_terms(self) -> List[Tuple[int, Monomial, object]]:
        out = []
        for h in self._elements:
            t = self._engine.lead(h)
            out.append((t[0], t[1], h[t]))
        return out

    def leading_coefficients(self) -> List[object]:
        return [c for _, _, c in self.leading_terms()]

    def normal_form(self, v) -> Vector:
        v = _coerce_vector(v, self.ring, self.rank)
        h = self._engine.full_reduce(dict(v.terms), self._index)
        return Vector(self.ring, self.rank, h)

    def contains(self, v) -> bool:
        v = _coerce_vector(v, self.ring, self.rank)
        return not self._engine.top_reduce(dict(v.terms), self._index)

    def __repr__(self):
        kind = "strong" if self.strong else "reduced"
        return f"<{kind} GroebnerBasis of {len(self)} elements in {self.ring}^{self.rank}>"


def _coerce_vector(v, ring, rank) -> Vector:
    if isinstance(v, Polynomial):
        v = Vector.from_polys([v])
    elif not isinstance(v, Vector):
        v = Vector.from_polys(list(v), ring)
    if v.ring != ring or v.rank != rank:
        raise InputError("vector is not in the ambient module of this basis")
    return v


def _gb(vectors: List[Vector], ring, rank, module_order, caps) -> GroebnerBasis:
    eng = _Engine(ring, module_order, caps)
    elems = eng.groebner([dict(v.terms) for v in vectors if v.terms])
    return GroebnerBasis(ring, rank, elems, module_order, caps)


def groebner(gens, ring: Optional[PolyRing] = None, rank: Optional[int] = None,
             module_order: str = "pot", caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Reduced basis over a field, strong basis over ZZ."""
    vecs = as_vectors(gens, ring)
    if vecs:
        ring, rank = vecs[0].ring, vecs[0].rank
    elif ring is None:
        raise InputError("need a ring for an empty generator list")
    return _gb(vecs, ring, rank if rank is not None else 1, module_order, caps)


def groebner_field(gens, ring: Optional[PolyRing] = None, **kw) -> GroebnerBasis:
    vecs = as_vectors(gens, ring)
    r = vecs[0].ring if vecs else ring
    if r is None or not r.coef.is_field:
        raise InputError("groebner_field needs coefficients in QQ or F_p")
    return groebner(vecs, r, **kw)


def strong_groebner_int(gens, ring: Optional[PolyRing] = None, **kw) -> GroebnerBasis:
    vecs = as_vectors(gens, ring)
    r = vecs[0].ring if vecs else ring
    if r is None or r.coef.kind != "ZZ":
        raise InputError("strong_groebner_int needs integer coefficients")
    return groebner(vecs, r, **kw)


def normal_form(v, gb: GroebnerBasis) -> Vector:
    return gb.normal_form(v)


def is_groebner(gens, ring: Optional[PolyRing] = None, module_order: str = "pot") -> bool:
    """Buchberger's criterion over a field: every S-pair reduces to zero."""
    vecs = [v for v in as_vectors(gens, ring) if v.terms]
    if not vecs:
        return True
    r = vecs[0].ring
    if not r.coef.is_field:
        raise InputError("is_groebner checks bases over a field")
    eng = _Engine(r, module_order)
    elems = []
    for v in vecs:
        h = dict(v.terms)
        eng._normalize(h)
        elems.append(h)
    idx = eng.index(elems)
    flat = [e for lst in idx.values() for e in lst]
    for x in range(len(flat)):
        for y in range(x + 1, len(flat)):
            a, b = flat[x], flat[y]
            if a.comp != b.comp:
                continue
            lcm = monomial_lcm(a.mon, b.mon)
            h: dict = {}
            _axpy(h, a.vec, 1, monomial_quotient(lcm, a.mon), eng.mod)
            _axpy(h, b.vec, -1, monomial_quotient(lcm, b.mon), eng.mod)
            if eng.top_reduce(h, idx):
                return False
    return True


class Submodule:
    """A submodule of ``R^rank`` given by generators, with lazy Gröbner data.

    ``gb`` is the plain basis; ``syzygies`` and ``lift`` share one basis of
    the generators tagged with unit vectors (elimination by position).
    Cached values are computed once even under concurrent access.
    """

    def __init__(self, gens, ring: PolyRing, rank: int, caps: Caps = DEFAULT_CAPS):
        self.gens: List[Vector] = [g for g in as_vectors(gens, ring)]
        for g in self.gens:
            if g.ring != ring or g.rank != rank:
                raise InputError("generator outside the ambient module")
        self.ring = ring
        self.rank = rank
        self.caps = caps
        self._lock = threading.RLock()
        self._gb: Optional[GroebnerBasis] = None
        self._tagged: Optional[GroebnerBasis] = None

    @property
    def gb(self) -> GroebnerBasis:
        with self._lock:
            if self._gb is None:
                self._gb = _gb(self.gens, self.ring, self.rank, "pot", self.caps)
            return self._gb

    def _tagged_gb(self) -> GroebnerBasis:
        with self._lock:
            if self._tagged is None:
                m, s = self.rank, len(self.gens)
                one = (0,) * self.ring.nvars
                tagged = []
                for i, g in enumerate(self.gens):
                    t = dict(g.terms)
                    t[(m + i, one)] = 1
                    tagged.append(Vector(self.ring, m + s, t))
                self._tagged = _gb(tagged, self.ring, m + s, "pot", self.caps)
            return self._tagged

    def contains(self, v) -> bool:
        return self.gb.contains(v)

    def normal_form(self, v) -> Vector:
        return self.gb.normal_form(v)

    def syzygies(self) -> List[Vector]:
        """Generators of the kernel of ``R^s -> R^rank, e_i -> gens[i]``."""
        s = len(self.gens)
        if s == 0:
            return []
        m = self.rank
        out = []
        for h in self._tagged_gb()._elements:
            if all(c >= m for (c, _) in h):
                out.append(Vector(self.ring, s, {(c - m, mon): a for (c, mon), a in h.items()}))
        return out

    def lift(self, v) -> Optional[List[Polynomial]]:
        """Coefficients ``a`` with ``v == sum(a[i] * gens[i])``, or None."""
        v = _coerce_vector(v, self.ring, self.rank)
        s = len(self.gens)
        if s == 0:
            return None if v.terms else []
        tg = self._tagged_gb()
        h = tg._engine.full_reduce(dict(v.terms), tg._index)
        if any(c < self.rank for (c, _) in h):
            return None
        mod = self.ring.coef.modulus
        coeffs: List[dict] = [{} for _ in range(s)]
        for (c, mon), a in h.items():
            coeffs[c - self.rank][mon] = (-a) % mod if mod else -a
        return [Polynomial(self.ring, d) for d in coeffs]


def syzygies(gens, ring: Optional[PolyRing] = None, caps: Caps = DEFAULT_CAPS) -> List[Vector]:
    vecs = as_vectors(gens, ring)
    if not vecs:
        return []
    return Submodule(vecs, vecs[0].ring, vecs[0].rank, caps).syzygies()
