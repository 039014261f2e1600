"""Bundled squarefree monomial ideals and the containment check over them.

For each entry and each ``k`` the primes found by the Čech scan must lie
inside the zerodivisor primes of the Koszul cohomology ``H^k(f; R)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .groebner import DEFAULT_CAPS, Caps
from .monomial import stanley_reisner_ideal, torsion_scan
from .ring import ZZ, PolyRing, Polynomial
from .torsion import torsion_primes_koszul

RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5)]


@dataclass
class CorpusEntry:
    name: str
    vars: Sequence[str]
    gens: Sequence[str] = ()
    facets: Optional[Sequence[Sequence[int]]] = None
    skip: Optional[str] = None

    def ring(self) -> PolyRing:
        return PolyRing(ZZ, tuple(self.vars))

    def polynomials(self) -> List[Polynomial]:
        R = self.ring()
        if self.facets is not None:
            return stanley_reisner_ideal(self.facets, R)
        return [R.parse(g) for g in self.gens]


CORPUS = [
    CorpusEntry("point", "xy", ["x", "y"]),
    CorpusEntry("two_lines", "xyzw", ["x*z", "x*w", "y*z", "y*w"]),
    CorpusEntry("rp2_6", "abcdef", facets=RP2_FACETS),
    CorpusEntry("maximal_3", "xyz", ["x", "y", "z"]),
    CorpusEntry("three_points", "xyz", ["x*y", "y*z", "x*z"]),
    CorpusEntry("disjoint_edges_2", "xyzw", ["x*y", "z*w"]),
    CorpusEntry("path_4", "xyzw", ["x*y", "y*z", "z*w"]),
    CorpusEntry("principal_xyz", "xyz", ["x*y*z"]),
    CorpusEntry("cycle_4", "xyzw", ["x*y", "y*z", "z*w", "w*x"]),
    CorpusEntry("cycle_5", "abcde", ["a*b", "b*c", "c*d", "d*e", "e*a"]),
    CorpusEntry("disjoint_edges_3", "abcdef", ["a*b", "c*d", "e*f"]),
    CorpusEntry("mixed_degrees", "xyzw", ["x", "y*z", "z*w"]),
]

SKIPPED = [
    CorpusEntry(
        "elliptic_segre", "",
        skip="Segre embedding of E x P^1 in P^5: deciding H^4_a(R/pR) needs Frobenius "
             "stabilization of a non-monomial ideal at many primes (ordinary vs "
             "supersingular reduction), beyond desk scale",
    ),
]


@dataclass
class KRow:
    k: int
    scan: List[int]
    koszul: Optional[List[int]]
    status: str

    def to_json(self) -> dict:
        return {
            "k": str(self.k),
            "scan_primes": [str(p) for p in self.scan],
            "koszul_primes": None if self.koszul is None else [str(p) for p in self.koszul],
            "status": self.status,
        }

    @classmethod
    def from_json(cls, data: dict) -> "KRow":
        kz = data["koszul_primes"]
        return cls(int(data["k"]), [int(p) for p in data["scan_primes"]],
                   None if kz is None else [int(p) for p in kz], data["status"])


@dataclass
class EntryResult:
    name: str
    status: str
    rows: List[KRow] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "note": self.note,
                "rows": [r.to_json() for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "EntryResult":
        return cls(data["name"], data["status"], [KRow.from_json(r) for r in data["rows"]],
                   data.get("note", ""))


def check_entry(entry: CorpusEntry, caps: Caps = DEFAULT_CAPS, workers: int = 1) -> EntryResult:
    if entry.skip:
        return EntryResult(entry.name, "skipped", note=entry.skip)
    f = entry.polynomials()
    rows = []
    for k in range(len(f) + 1):
        scan = torsion_scan(f, k, "squarefree").primes
        rep = torsion_primes_koszul(f, k, caps, workers)
        if rep.status != "ok":
            rows.append(KRow(k, scan, None, "resource_cap"))
            continue
        ok = set(scan) <= set(rep.primes)
        rows.append(KRow(k, scan, rep.primes, "pass" if ok else "fail"))
    statuses = {r.status for r in rows}
    if "fail" in statuses:
        status = "fail"
    elif "resource_cap" in statuses:
        status = "resource_cap"
    else:
        status = "pass"
    return EntryResult(entry.name, status, rows)


def run_corpus(entries: Optional[Sequence[CorpusEntry]] = None, caps: Caps = DEFAULT_CAPS,
               workers: int = 1) -> List[EntryResult]:
    entries = list(CORPUS + SKIPPED if entries is None else entries)
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            results = list(ex.map(lambda e: check_entry(e, caps), entries))
    else:
        results = [check_entry(e, caps) for e in entries]
    return results


def format_table(results: Sequence[EntryResult]) -> str:
    lines = [f"{'entry':<18} {'status':<13} torsion (scan / koszul)"]
    for r in results:
        if r.status == "skipped":
            detail = r.note
        else:
            detail = "; ".join(
                f"k={row.k}: {row.scan}/{row.koszul if row.koszul is not None else 'cap'}"
                for row in r.rows if row.scan or row.koszul
            ) or "no torsion"
        lines.append(f"{r.name:<18} {r.status:<13} {detail}")
    return "\n".join(lines)
