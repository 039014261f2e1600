"""Coefficient rings, monomial orders and sparse multivariate polynomials.

Polynomials are immutable maps ``exponent tuple -> nonzero coefficient``.
Coefficients are Python ``int`` over ZZ and Fp (reduced to ``0..p-1``) and
``fractions.Fraction`` over QQ, so all arithmetic is exact.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Tuple

from sympy import isprime

from .errors import InputError

Monomial = Tuple[int, ...]

_PRIME_LIMIT = 1 << 64


def check_prime(p) -> int:
    """Return ``p`` as an int if it is a prime below 2**64, else raise."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise InputError(f"expected an integer prime, got {p!r}")
    if p >= _PRIME_LIMIT:
        raise InputError(f"primes >= 2**64 are not supported: {p}")
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    return p


@dataclass(frozen=True)
class CoefRing:
    """One of ZZ, QQ or the prime field F_p."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "Fp"):
            raise InputError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "Fp":
            check_prime(self.p)
        elif self.p:
            raise InputError("only Fp carries a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    @property
    def modulus(self) -> int:
        """The characteristic for Fp, 0 otherwise."""
        return self.p if self.kind == "Fp" else 0

    def convert(self, c):
        if self.kind == "ZZ":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise InputError(f"non-integral coefficient {c} over ZZ")
                return c.numerator
            if isinstance(c, str):
                return int(c)
            if isinstance(c, bool) or not isinstance(c, int):
                raise InputError(f"bad integer coefficient {c!r}")
            return c
        if self.kind == "QQ":
            return Fraction(c)
        c = Fraction(c)
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def inverse(self, c):
        if self.kind == "QQ":
            return 1 / c
        if self.kind == "Fp":
            return pow(c, -1, self.p)
        if c in (1, -1):
            return c
        raise InputError(f"{c} is not a unit in ZZ")

    def is_unit(self, c) -> bool:
        return c != 0 if self.is_field else c in (1, -1)

    def __str__(self):
        return f"GF({self.p})" if self.kind == "Fp" else self.kind


ZZ = CoefRing("ZZ")
QQ = CoefRing("QQ")


def GF(p: int) -> CoefRing:
    return CoefRing("Fp", p)


# -- monomial orders -------------------------------------------------------
# A key function maps an exponent tuple to something comparable; a larger
# key means a larger monomial.

def _grevlex(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def _grlex(m):
    return (sum(m), m)


def _lex(m):
    return m


ORDERS: Dict[str, Callable[[Monomial], tuple]] = {
    "grevlex": _grevlex,
    "grlex": _grlex,
    "lex": _lex,
}


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """``coef[vars]`` with a fixed monomial order."""

    coef: CoefRing
    vars: Tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if self.order not in ORDERS:
            raise InputError(f"unknown monomial order {self.order!r}")
        if len(set(self.vars)) != len(self.vars):
            raise InputError("variable names must be distinct")

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        return ORDERS[self.order]

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return self.from_dict({(0,) * self.nvars: c})

    def monomial(self, exps, c=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise InputError(f"bad exponent vector {exps} for {self.nvars} variables")
        return self.from_dict({exps: c})

    def gens(self):
        d = self.nvars
        return [self.monomial(tuple(int(i == j) for j in range(d))) for i in range(d)]

    def from_dict(self, terms) -> "Polynomial":
        out = {}
        mod = self.coef.modulus
        for m, c in terms.items():
            c = self.coef.convert(c)
            if mod:
                c %= mod
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def with_coef(self, coef: CoefRing) -> "PolyRing":
        return PolyRing(coef, self.vars, self.order)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise InputError("polynomial belongs to a different ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def parse(self, text: str) -> "Polynomial":
        """Parse an expression such as ``"6*x + 10*y^2 - 3"``."""
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise InputError(f"cannot parse polynomial {text!r}") from exc
        names = dict(zip(self.vars, self.gens()))

        def ev(node):
            if isinstance(node, ast.Expression):
                return ev(node.body)
            if isinstance(node, ast.Constant) and isinstance(node.value, int):
                return self.constant(node.value)
            if isinstance(node, ast.Name) and node.id in names:
                return names[node.id]
            if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
                v = ev(node.operand)
                return -v if isinstance(node.op, ast.USub) else v
            if isinstance(node, ast.BinOp):
                if isinstance(node.op, ast.Pow):
                    e = node.right
                    if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                        raise InputError("exponents must be integer literals")
                    return ev(node.left) ** e.value
                a, b = ev(node.left), ev(node.right)
                if isinstance(node.op, ast.Add):
                    return a + b
                if isinstance(node.op, ast.Sub):
                    return a - b
                if isinstance(node.op, ast.Mult):
                    return a * b
            raise InputError(f"unsupported syntax in polynomial {text!r}")

        return ev(tree)

    def to_json(self) -> dict:
        coef = {"Fp": self.coef.p} if self.coef.kind == "Fp" else self.coef.kind
        return {"coef": coef, "vars": list(self.vars)}

    @classmethod
    def from_json(cls, data: dict, order: str = "grevlex") -> "PolyRing":
        try:
            coef = data["coef"]
            names = data["vars"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad ring descriptor {data!r}") from exc
        if isinstance(coef, dict):
            cr = GF(int(coef["Fp"]))
        else:
            cr = CoefRing(coef)
        return cls(cr, tuple(names), order)

    def __str__(self):
        return f"{self.coef}[{','.join(self.vars)}]"


class Polynomial:
    """An element of a :class:`PolyRing`; treat as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        key = self.ring.key
        return max(self.terms.items(), key=lambda t: key(t[0]))

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            m, c = next(iter(self.terms.items()))
            if not any(m):
                return c
        return None

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        mod = self.ring.coef.modulus
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if mod:
                v %= mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.coef.modulus
        if mod:
            return Polynomial(self.ring, {m: (-c) % mod for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, object] = {}
        mod = self.ring.coef.modulus
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if mod:
            out = {m: c % mod for m, c in out.items()}
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        return self * self.ring.constant(c)

    def mul_term(self, c, mono: Monomial) -> "Polynomial":
        mod = self.ring.coef.modulus
        out = {}
        for m, a in self.terms.items():
            v = a * c
            if mod:
                v %= mod
            if v:
                out[tuple(x + y for x, y in zip(m, mono))] = v
        return Polynomial(self.ring, out)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial powers must be nonnegative integers")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.ring.vars, m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- ring maps -----------------------------------------------------------
    def reduce_mod_p(self, p: int) -> "Polynomial":
        return reduce_mod_p(self, p)

    def frobenius(self) -> "Polynomial":
        return frobenius_endo(self)

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        if ring.nvars != self.ring.nvars:
            raise InputError("variable count mismatch")
        return ring.from_dict(self.terms)

    # -- serialization -------------------------------------------------------
    def to_json(self) -> list:
        return [[str(c), list(m)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: PolyRing, data) -> "Polynomial":
        if isinstance(data, str):
            return ring.parse(data)
        terms: Dict[Monomial, object] = {}
        try:
            for coef, exps in data:
                m = tuple(int(e) for e in exps)
                if len(m) != ring.nvars or min(m, default=0) < 0:
                    raise InputError(f"bad exponent vector {exps}")
                c = Fraction(coef) if ring.coef.kind != "ZZ" else int(coef)
                terms[m] = terms.get(m, 0) + c
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial {data!r}") from exc
        return ring.from_dict(terms)


def reduce_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Coefficientwise image of an integer polynomial in F_p[x]."""
    if f.ring.coef.kind != "ZZ":
        raise InputError("reduce_mod_p expects integer coefficients")
    return f.change_ring(f.ring.with_coef(GF(p)))


def frobenius_endo(f: Polynomial) -> Polynomial:
    """The p-th power map on F_p[x]: exponents scale by p, coefficients fixed."""
    if f.ring.coef.kind != "Fp":
        raise InputError("the Frobenius endomorphism needs an F_p coefficient ring")
    p = f.ring.coef.p
    return Polynomial(f.ring, {tuple(p * e for e in m): c for m, c in f.terms.items()})


def polys(ring: PolyRing, items: Iterable) -> list:
    return [ring(v) for v in items]
