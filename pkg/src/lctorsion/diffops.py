"""Divided-power differential operators on polynomial rings.

An operator is a finite sum ``sum_t g_t * D^(t)`` with coefficient
polynomials on the left, where ``D^(t) = prod_i (1/t_i!) d^{t_i}/dx_i^{t_i}``
acts on monomials by ``x^n -> prod_i C(n_i, t_i) x^(n - t)``.  The action
only uses binomial coefficients, so it makes sense over ZZ and F_p alike.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Callable, Dict, Iterable, Optional, Tuple

from .errors import InputError
from .ring import GF, PolyRing, Polynomial

MultiIndex = Tuple[int, ...]


def _binom(n: MultiIndex, t: MultiIndex) -> int:
    out = 1
    for a, b in zip(n, t):
        if b > a:
            return 0
        out *= comb(a, b)
    return out


def divided_derivative(f: Polynomial, t: MultiIndex) -> Polynomial:
    """``D^(t) f``, exact in every characteristic."""
    ring = f.ring
    mod = ring.coef.modulus
    out: Dict[tuple, object] = {}
    for m, c in f.terms.items():
        b = _binom(m, t)
        if not b:
            continue
        v = c * b
        if mod:
            v %= mod
        if v:
            key = tuple(a - s for a, s in zip(m, t))
            out[key] = out.get(key, 0) + v
    if mod:
        out = {m: c % mod for m, c in out.items()}
    return Polynomial(ring, {m: c for m, c in out.items() if c})


class DividedPowerOp:
    """``sum_t terms[t] * D^(t)`` in normal form (no zero coefficients)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Optional[Dict[MultiIndex, Polynomial]] = None):
        self.ring = ring
        clean = {}
        for t, g in (terms or {}).items():
            t = tuple(int(x) for x in t)
            if len(t) != ring.nvars or any(x < 0 for x in t):
                raise InputError(f"bad multi-index {t}")
            g = ring(g)
            if g:
                clean[t] = g
        self.terms = clean

    @classmethod
    def divided_power(cls, ring: PolyRing, t: MultiIndex, coef=1) -> "DividedPowerOp":
        return cls(ring, {tuple(t): ring(coef)})

    @classmethod
    def partial(cls, ring: PolyRing, i: int) -> "DividedPowerOp":
        t = [0] * ring.nvars
        t[i] = 1
        return cls.divided_power(ring, t)

    @classmethod
    def multiplication(cls, g: Polynomial) -> "DividedPowerOp":
        """The order-zero operator ``h -> g h``."""
        return cls(g.ring, {(0,) * g.ring.nvars: g})

    @property
    def order(self) -> int:
        """Largest ``|t|`` in the normal form; -1 for the zero operator."""
        return max((sum(t) for t in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_op(self, f)

    def __add__(self, other: "DividedPowerOp") -> "DividedPowerOp":
        _same_ring(self, other)
        out = dict(self.terms)
        for t, g in other.terms.items():
            out[t] = out[t] + g if t in out else g
        return DividedPowerOp(self.ring, out)

    def __neg__(self) -> "DividedPowerOp":
        return DividedPowerOp(self.ring, {t: -g for t, g in self.terms.items()})

    def __sub__(self, other: "DividedPowerOp") -> "DividedPowerOp":
        return self + (-other)

    def __mul__(self, other: "DividedPowerOp") -> "DividedPowerOp":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, DividedPowerOp):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __repr__(self):
        parts = [f"({g})*D{t}" for t, g in sorted(self.terms.items())]
        return "DividedPowerOp(" + (" + ".join(parts) or "0") + ")"

    def change_ring(self, ring: PolyRing) -> "DividedPowerOp":
        return DividedPowerOp(ring, {t: g.change_ring(ring) for t, g in self.terms.items()})


def _same_ring(a: DividedPowerOp, b) -> None:
    if a.ring != b.ring:
        raise InputError(f"ring mismatch: {a.ring} vs {b.ring}")


def apply_op(op: DividedPowerOp, f: Polynomial) -> Polynomial:
    _same_ring(op, f)
    out = op.ring.zero
    for t, g in op.terms.items():
        out = out + g * divided_derivative(f, t)
    return out


def _leq(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _below(a: MultiIndex) -> Iterable[MultiIndex]:
    return itertools.product(*[range(x + 1) for x in a])


def compose(a: DividedPowerOp, b: DividedPowerOp) -> DividedPowerOp:
    """``a ∘ b`` renormalized with coefficients on the left.

    Uses ``D^(s)(h φ) = sum_{c <= s} D^(s-c)(h) D^(c)(φ)`` and
    ``D^(c) D^(t) = C(c+t, c) D^(c+t)``.
    """
    _same_ring(a, b)
    ring = a.ring
    out: Dict[MultiIndex, Polynomial] = {}
    for s, g in a.terms.items():
        for t, h in b.terms.items():
            for c in _below(s):
                dh = divided_derivative(h, tuple(x - y for x, y in zip(s, c)))
                if not dh:
                    continue
                ct = tuple(x + y for x, y in zip(c, t))
                coef = (g * dh).scale(_binom(ct, c))
                if coef:
                    out[ct] = out[ct] + coef if ct in out else coef
    return DividedPowerOp(ring, out)


def commutator(a: DividedPowerOp, b: DividedPowerOp) -> DividedPowerOp:
    return compose(a, b) - compose(b, a)


def multiplication_op(g: Polynomial) -> DividedPowerOp:
    return DividedPowerOp.multiplication(g)


def order(op: DividedPowerOp) -> int:
    return op.order


def reduce_op_mod_p(op: DividedPowerOp, p: int) -> DividedPowerOp:
    if op.ring.coef.kind != "ZZ":
        raise InputError("reduction mod p needs an operator over ZZ")
    return op.change_ring(op.ring.with_coef(GF(p)))


def reduction_compat(op: DividedPowerOp, f: Polynomial, p: int) -> bool:
    """Reducing after applying agrees with applying the reduced operator."""
    target = op.ring.with_coef(GF(p))
    lhs = apply_op(op, f).change_ring(target)
    rhs = apply_op(reduce_op_mod_p(op, p), f.change_ring(target))
    return lhs == rhs


def expansion_from_action(action: Callable[[Polynomial], Polynomial], ring: PolyRing,
                          bound: int) -> DividedPowerOp:
    """Recover ``sum_t g_t D^(t)`` (``|t| <= bound``) from an action alone.

    Since ``φ(x^s) = sum_{t <= s} C(s, t) g_t x^(s-t)``, binomial inversion
    gives ``g_t = sum_{s <= t} (-1)^{|t-s|} C(t, s) x^(t-s) φ(x^s)``.  The
    result reproduces ``φ`` exactly whenever ``φ`` has order ``<= bound``.
    """
    n = ring.nvars
    out: Dict[MultiIndex, Polynomial] = {}
    images: Dict[MultiIndex, Polynomial] = {}
    for deg in range(bound + 1):
        for t in _compositions(deg, n):
            g = ring.zero
            for s in _below(t):
                if s not in images:
                    images[s] = action(ring.monomial(s))
                diff = tuple(x - y for x, y in zip(t, s))
                sign = -1 if sum(diff) % 2 else 1
                g = g + images[s].mul_term(sign * _binom(t, s), diff)
            if g:
                out[t] = g
    return DividedPowerOp(ring, out)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
