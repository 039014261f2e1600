"""Smith normal form of integer matrices, with unimodular transforms.

The elimination works on sparse rows and always pivots on an entry of
smallest absolute value, so the common case of ±1 entries (simplicial and
Čech coboundaries) never grows coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence


@dataclass
class SNFResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``invariant_factors`` lists the nonzero diagonal entries; each divides
    the next.  ``U`` and ``V`` are None when transforms were not requested.
    """

    shape: tuple
    invariant_factors: List[int]
    U: Optional[List[List[int]]] = None
    V: Optional[List[List[int]]] = None
    D: List[List[int]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> List[int]:
        """Invariant factors > 1: the torsion of the cokernel."""
        return [d for d in self.invariant_factors if d > 1]

    def to_json(self) -> dict:
        out = {
            "shape": [str(x) for x in self.shape],
            "invariant_factors": [str(d) for d in self.invariant_factors],
        }
        for name in ("U", "V"):
            mat = getattr(self, name)
            if mat is not None:
                out[name] = [[str(x) for x in row] for row in mat]
        out["D"] = [[str(x) for x in row] for row in self.D]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SNFResult":
        def mat(rows):
            return None if rows is None else [[int(x) for x in row] for row in rows]

        return cls(tuple(int(x) for x in data["shape"]), [int(d) for d in data["invariant_factors"]],
                   mat(data.get("U")), mat(data.get("V")), mat(data["D"]))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class _Sparse:
    """Row-sparse integer matrix with a column -> rows index."""

    def __init__(self, rows: List[Dict[int, int]]):
        self.rows = rows
        self.cols: Dict[int, set] = {}
        for i, r in enumerate(rows):
            for j in r:
                self.cols.setdefault(j, set()).add(i)

    def add_row(self, dst: int, src: int, q: int) -> None:
        """row[dst] += q * row[src]"""
        rd = self.rows[dst]
        for j, v in self.rows[src].items():
            w = rd.get(j, 0) + q * v
            if w:
                if j not in rd:
                    self.cols.setdefault(j, set()).add(dst)
                rd[j] = w
            elif j in rd:
                del rd[j]
                self.cols[j].discard(dst)

    def add_col(self, dst: int, src: int, q: int) -> None:
        """col[dst] += q * col[src]"""
        for i in list(self.cols.get(src, ())):
            r = self.rows[i]
            w = r.get(dst, 0) + q * r[src]
            if w:
                if dst not in r:
                    self.cols.setdefault(dst, set()).add(i)
                r[dst] = w
            elif dst in r:
                del r[dst]
                self.cols[dst].discard(i)


def smith_normal_form(A: Sequence[Sequence[int]], transforms: bool = True,
                      ncols: Optional[int] = None) -> SNFResult:
    """Smith normal form of an integer matrix given as a list of rows."""
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    mat = _Sparse([{j: int(v) for j, v in enumerate(row) if v} for row in A])
    # U as sparse rows (row ops), V as sparse columns (column ops)
    U = _Sparse([{i: 1} for i in range(m)]) if transforms else None
    Vt = _Sparse([{j: 1} for j in range(n)]) if transforms else None

    active_rows = set(i for i in range(m) if mat.rows[i])
    active_cols = set(mat.cols) & set(range(n))
    pivots = []
    while active_rows:
        best = None
        for i in active_rows:
            for j, v in mat.rows[i].items():
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, r, c = best
        a = mat.rows[r][c]
        clean = True
        for i in list(mat.cols[c]):
            if i == r:
                continue
            q = mat.rows[i][c] // a
            if q:
                mat.add_row(i, r, -q)
                if U is not None:
                    U.add_row(i, r, -q)
            if c in mat.rows[i]:
                clean = False
        if not clean:
            continue
        for j in list(mat.rows[r]):
            if j == c:
                continue
            q = mat.rows[r][j] // a
            if q:
                mat.add_col(j, c, -q)
                if Vt is not None:
                    Vt.add_row(j, c, -q)
            if j in mat.rows[r]:
                clean = False
        if not clean:
            continue
        pivots.append((r, c, a))
        active_rows.discard(r)
        active_cols.discard(c)
        for i in [i for i in active_rows if not mat.rows[i]]:
            active_rows.discard(i)

    # move pivots onto the diagonal
    prow = [r for r, _, _ in pivots]
    pcol = [c for _, c, _ in pivots]
    rest_r = [i for i in range(m) if i not in set(prow)]
    rest_c = [j for j in range(n) if j not in set(pcol)]
    row_perm = prow + rest_r
    col_perm = pcol + rest_c
    diag = [a for _, _, a in pivots]

    Ud = Vcols = None
    if transforms:
        Ud = [[U.rows[i].get(j, 0) for j in range(m)] for i in row_perm]
        Vcols = [[Vt.rows[j].get(i, 0) for i in range(n)] for j in col_perm]
    k = len(diag)
    # enforce the divisibility chain with 2x2 gcd/lcm moves
    for i in range(k):
        for j in range(i + 1, k):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, t = _xgcd(a, b)
            if transforms:
                ri, rj = Ud[i], Ud[j]
                Ud[i] = [s * x + t * y for x, y in zip(ri, rj)]
                Ud[j] = [(-b // g) * x + (a // g) * y for x, y in zip(ri, rj)]
                ci, cj = Vcols[i], Vcols[j]
                Vcols[i] = [x + y for x, y in zip(ci, cj)]
                Vcols[j] = [(-t * b // g) * x + (s * a // g) * y for x, y in zip(ci, cj)]
            diag[i], diag[j] = g, a * b // g
    for i in range(k):
        if diag[i] < 0:
            diag[i] = -diag[i]
            if transforms:
                Ud[i] = [-x for x in Ud[i]]
    D = [[0] * n for _ in range(m)]
    for i, d in enumerate(diag):
        D[i][i] = d
    V = [[Vcols[j][i] for j in range(n)] for i in range(n)] if transforms else None
    return SNFResult((m, n), diag, Ud, V, D)


def matmul(A, B):
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def determinant(A) -> int:
    """Exact integer determinant (fraction-free Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def integer_solve(A, b, ncols: Optional[int] = None):
    """An integer vector x with A x = b, or None if none exists."""
    res = smith_normal_form(A, transforms=True, ncols=ncols)
    m, n = res.shape
    Ub = [sum(u * y for u, y in zip(row, b)) for row in res.U]
    y = [0] * n
    for i in range(m):
        d = res.invariant_factors[i] if i < res.rank else 0
        if d == 0:
            if Ub[i]:
                return None
        else:
            if Ub[i] % d:
                return None
            y[i] = Ub[i] // d
    return [sum(v * w for v, w in zip(row, y)) for row in res.V]


def integer_kernel(A, ncols: Optional[int] = None) -> List[List[int]]:
    """A ZZ-basis of the kernel of A (as column vectors)."""
    res = smith_normal_form(A, transforms=True, ncols=ncols)
    n = res.shape[1]
    return [[res.V[i][j] for i in range(n)] for j in range(res.rank, n)]


def cokernel_invariants(A, nrows: int) -> tuple:
    """(free rank, torsion factors) of ZZ^nrows / column span of A."""
    if not A or not any(any(r) for r in A):
        return nrows, []
    res = smith_normal_form(A, transforms=False)
    return nrows - res.rank, res.torsion


def gcd_of_minors(A, size: int) -> int:
    """gcd of all size x size minors; brute force, for tests on small inputs."""
    from itertools import combinations

    m, n = len(A), len(A[0]) if A else 0
    g = 0
    for rows in combinations(range(m), size):
        for cols in combinations(range(n), size):
            g = math.gcd(g, determinant([[A[i][j] for j in cols] for i in rows]))
    return g
