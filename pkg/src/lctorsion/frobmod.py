"""Frobenius functor on F_p[x]-modules and vanishing of ``H^k_a(R/pR)``.

On a presentation ``coker(A)`` the Frobenius functor raises every entry of
``A`` to the p-th power.  ``H^k_a`` is the direct limit of

    M --β--> F(M) --F(β)--> F^2(M) --> ...

with ``M = H^k(f)`` and ``β`` induced by the power chain map.  The kernels
``K_e`` of ``M -> F^e(M)`` form an ascending chain; once two consecutive
kernels agree the chain is constant, and the limit is zero exactly when the
stable kernel is all of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import InputError
from .fpmod import FPModule, FreeComplex, ModuleMap, cohomology_at, kernel_of_matrix, matmul
from .groebner import DEFAULT_CAPS, Caps, Vector
from .koszul import induced_map, koszul_complex, power_chain_map
from .ring import GF, Polynomial, frobenius_endo

DEFAULT_E_MAX = 8


def _char(ring) -> int:
    if ring.coef.kind != "Fp":
        raise InputError("the Frobenius functor needs an F_p coefficient ring")
    return ring.coef.p


def _frob_vector(v: Vector, e: int = 1) -> Vector:
    q = v.ring.coef.p ** e
    return Vector(v.ring, v.rank, {(i, tuple(q * x for x in m)): c for (i, m), c in v.terms.items()})


def frobenius_functor(M: FPModule) -> FPModule:
    """``F(M)``: same generators, relation entries raised to the p-th power."""
    p = _char(M.ring)
    emb = [_frob_vector(v) for v in M.embedding] if M.embedding is not None else None
    degs = [p * d for d in M.degrees] if M.degrees is not None else None
    return FPModule(M.ring, M.rank, [_frob_vector(r) for r in M.relations],
                    embedding=emb, degrees=degs, caps=M.caps)


def frobenius_complex(C: FreeComplex) -> FreeComplex:
    """Apply the p-th power map to every differential entry."""
    p = _char(C.ring)
    out = C.map_entries(frobenius_endo)
    if C.degrees is not None:
        out.degrees = {k: [p * d for d in v] for k, v in C.degrees.items()}
    return out


def _as_char_p(f: Sequence[Polynomial], p: int) -> List[Polynomial]:
    f = list(f)
    if not f:
        raise InputError("need at least one generator")
    ring = f[0].ring
    if ring.coef.kind == "ZZ":
        target = ring.with_coef(GF(p))
        return [g.change_ring(target) for g in f]
    if ring.coef.kind != "Fp" or ring.coef.p != p:
        raise InputError(f"generators must be over ZZ or F_{p}")
    return f


def generating_morphism(f: Sequence[Polynomial], k: int, p: Optional[int] = None,
                        caps: Caps = DEFAULT_CAPS) -> ModuleMap:
    """``β: H^k(f) -> F(H^k(f))`` over ``F_p[x]``.

    The target is ``frobenius_functor`` of the source, whose generating
    cycles are the Frobenius images of the source cycles inside the complex
    ``frobenius_complex(K(f))``, i.e. ``K(f^p)``.
    """
    if p is None:
        p = _char(f[0].ring)
    f = _as_char_p(f, p)
    C = koszul_complex(f)
    M0 = cohomology_at(C, k, caps)
    FM = frobenius_functor(M0)
    FC = frobenius_complex(C)
    return induced_map(M0, FM, power_chain_map(f, k, p), FC, k, caps)


@dataclass
class StabilizationResult:
    vanishes: Optional[bool]
    stabilized_at: Optional[int]
    root: Optional[FPModule]
    status: str = "ok"
    p: int = 0
    k: int = 0
    kernels: List[List[Vector]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "k": str(self.k),
            "vanishes": self.vanishes,
            "stabilized_at": None if self.stabilized_at is None else str(self.stabilized_at),
            "status": self.status,
            "root": None if self.root is None else self.root.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StabilizationResult":
        at = data["stabilized_at"]
        root = None if data["root"] is None else FPModule.from_json(data["root"])
        return cls(data["vanishes"], None if at is None else int(at), root,
                   data["status"], int(data["p"]), int(data["k"]))


def _frob_matrix(mat, times: int):
    out = mat
    for _ in range(times):
        out = [[frobenius_endo(g) for g in row] for row in out]
    return out


def _contained(gens: List[Vector], base: FPModule) -> bool:
    return all(base.contains_relation(v) for v in gens)


def stabilize_kernel(f: Sequence[Polynomial], k: int, p: int, e_max: int = DEFAULT_E_MAX,
                     caps: Caps = DEFAULT_CAPS) -> StabilizationResult:
    """Decide whether ``H^k_{(f)}(F_p[x])`` vanishes by kernel stabilization.

    ``stabilized_at`` is the first ``e >= 1`` with ``K_e = K_{e+1}``; if no
    such ``e <= e_max`` exists the status is ``"unstabilized"`` and nothing
    is claimed about vanishing.
    """
    if e_max < 1:
        raise InputError("e_max must be at least 1")
    beta = generating_morphism(f, k, p, caps)
    M0 = beta.source
    ring = M0.ring
    r = M0.rank
    if r == 0:
        return StabilizationResult(True, 1, M0, p=p, k=k)
    B = beta.matrix
    composite = B
    rels = M0.relations
    kernels: List[List[Vector]] = []
    for e in range(1, e_max + 2):
        target_rels = [_frob_vector(v, e) for v in rels]
        target = FPModule(ring, r, target_rels, caps=caps)
        K = kernel_of_matrix(ring, composite, r, target, caps)
        kernels.append(K)
        if e >= 2:
            prev = FPModule(ring, r, list(rels) + kernels[-2], caps=caps)
            if _contained(K, prev):
                root = prev
                return StabilizationResult(root.is_zero(), e - 1, root, p=p, k=k, kernels=kernels)
        composite = matmul(ring, _frob_matrix(B, e), composite)
    return StabilizationResult(None, None, None, status="unstabilized", p=p, k=k, kernels=kernels)
