"""Integer primes that can be torsion in local cohomology.

If a prime ``p`` is a nonzerodivisor on the Koszul cohomology ``H^k(f; R)``
then it is a nonzerodivisor on ``H^k_a(R)``, where ``a = (f)``.  The primes
that are zerodivisors on ``H^k(f; R)`` are found in two steps:

1. candidates: primes dividing a leading coefficient of a strong Gröbner
   basis of the relations (any other prime is a nonzerodivisor);
2. confirmation: a colon computation ``(0 :_M p)`` for each candidate.

The resulting set contains every prime that is torsion on ``H^k_a(R)``; it
may be strictly larger.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy import factorint

from .errors import InputError, ResourceError
from .fpmod import FPModule, scalar_is_injective
from .groebner import DEFAULT_CAPS, Caps, Vector
from .koszul import koszul_cohomology
from .ring import Polynomial

log = logging.getLogger(__name__)

CONTAINMENT_NOTE = (
    "every prime integer that is a zerodivisor on H^k_a(R) appears in zerodivisor_primes"
)


def _require_zz(M: FPModule):
    if M.ring.coef.kind != "ZZ":
        raise InputError("torsion primes are defined for modules over ZZ")


def candidate_primes(M: FPModule) -> List[int]:
    """Primes dividing some leading coefficient of the strong basis of M's relations."""
    _require_zz(M)
    if M.rank == 0:
        return []
    primes = set()
    for c in M.gb.leading_coefficients():
        c = abs(int(c))
        if c > 1:
            primes.update(factorint(c))
    return sorted(primes)


def zerodivisor_primes(M: FPModule, candidates: Optional[Sequence[int]] = None,
                       workers: int = 1) -> List[Tuple[int, Vector]]:
    """``(p, witness)`` for each candidate prime ``p`` with ``(0 :_M p) != 0``."""
    _require_zz(M)
    if candidates is None:
        candidates = candidate_primes(M)
    candidates = sorted(candidates)
    if workers > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda p: scalar_is_injective(M, p), candidates))
    else:
        results = [scalar_is_injective(M, p) for p in candidates]
    return [(p, w) for p, (inj, w) in zip(candidates, results) if not inj]


@dataclass
class TorsionReport:
    """Outcome of the torsion-prime detector for one ``(f, k)``."""

    gens: List[Polynomial]
    k: int
    candidates: Optional[List[int]] = None
    zerodivisors: List[Tuple[int, Vector]] = field(default_factory=list)
    status: str = "ok"
    notes: List[str] = field(default_factory=list)
    module: Optional[FPModule] = None

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.zerodivisors]

    def to_json(self) -> dict:
        ring = self.gens[0].ring
        return {
            "ring": ring.to_json(),
            "gens": [g.to_json() for g in self.gens],
            "k": str(self.k),
            "candidates": None if self.candidates is None else [str(p) for p in self.candidates],
            "zerodivisors": [{"p": str(p), "witness": w.to_json()} for p, w in self.zerodivisors],
            "status": self.status,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TorsionReport":
        from .ring import PolyRing

        ring = PolyRing.from_json(data["ring"])
        gens = [Polynomial.from_json(ring, g) for g in data["gens"]]
        cands = data["candidates"]
        return cls(
            gens=gens,
            k=int(data["k"]),
            candidates=None if cands is None else [int(p) for p in cands],
            zerodivisors=[(int(z["p"]), Vector.from_json(ring, z["witness"]))
                          for z in data["zerodivisors"]],
            status=data["status"],
            notes=list(data.get("notes", [])),
        )


def torsion_primes_koszul(f: Sequence[Polynomial], k: int, caps: Caps = DEFAULT_CAPS,
                          workers: int = 1) -> TorsionReport:
    """Primes that are zerodivisors on ``H^k(f; R)`` for ``f`` over ZZ."""
    f = list(f)
    if not f:
        raise InputError("need at least one generator")
    if f[0].ring.coef.kind != "ZZ":
        raise InputError("torsion_primes_koszul expects integer polynomials")
    if not 0 <= k <= len(f):
        raise InputError(f"k must lie in [0, {len(f)}]")
    report = TorsionReport(gens=f, k=k)
    try:
        M = koszul_cohomology(f, k, caps=caps)
        report.module = M
        report.candidates = candidate_primes(M)
        report.zerodivisors = zerodivisor_primes(M, report.candidates, workers)
    except ResourceError as exc:
        log.warning("resource cap hit for k=%d: %s", k, exc)
        report.candidates = None
        report.zerodivisors = []
        report.status = "resource_cap"
        report.notes.append(str(exc))
        return report
    report.notes.append(CONTAINMENT_NOTE)
    return report
