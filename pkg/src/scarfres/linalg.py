"""Exact integer and rational linear algebra on small dense / sparse matrices.

Everything is plain Python ints and ``Fraction``; nothing here rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

DEFAULT_PRIME = 2_147_483_629  # largest prime below 2**31


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Row-style HNF of the integer row lattice.

    Returns ``(H, pivots)``: ``H`` has one row per rank, rows are in echelon
    form with positive pivot ``H[i][pivots[i]]`` and entries above each pivot
    reduced into ``[0, pivot)``.  The HNF is unique for a given row lattice.
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    if not A:
        return [], []
    ncols = len(A[0])
    H: list[list[int]] = []
    pivots: list[int] = []
    r = 0
    m = len(A)
    for c in range(ncols):
        # gather rows r.. with nonzero entry in column c and gcd them down
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < m and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            pivots.append(c)
            r += 1
            if r == m:
                break
    H = A[:r]
    for i, c in enumerate(pivots):
        p = H[i][c]
        for k in range(i):
            q = H[k][c] // p
            if q:
                H[k] = [x - q * y for x, y in zip(H[k], H[i])]
    return H, pivots


def hnf_reduce(v: Sequence[int], H: Sequence[Sequence[int]], pivots: Sequence[int]) -> tuple[int, ...]:
    """Canonical remainder of ``v`` modulo the row lattice of ``H``.

    Two vectors are congruent iff their remainders agree; the remainder lies in
    the half-open box ``0 <= r[pivot_i] < H[i][pivot_i]`` on pivot columns.
    """
    x = list(v)
    for row, c in zip(H, pivots):
        q = x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return tuple(x)


def rref(rows: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    return len(rref(rows)[1])


def primitive(v: Iterable[Fraction | int]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Integer (primitive) basis of the rational right nullspace."""
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        out.append(primitive(v))
    return out


def solve_rational(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """One solution ``x`` of ``x . rows = rhs`` (x combines rows), or None."""
    k = len(rows)
    if k == 0:
        return [] if not any(rhs) else None
    n = len(rhs)
    # columns of the augmented system: unknown j multiplies rows[j]
    system = [[rows[j][i] for j in range(k)] + [rhs[i]] for i in range(n)]
    R, pivots = rref(system)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(R, pivots):
        x[c] = row[k]
    return x


# --- sparse rank ---------------------------------------------------------

SparseRow = dict  # column -> value


def sparse_rank(rows: Iterable[SparseRow], prime: int | None = None) -> int:
    """Rank of a sparse matrix over Q (``prime=None``) or GF(prime).

    Incremental elimination against pivot rows keyed by their leading column.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        if prime is None:
            r = {c: Fraction(v) for c, v in row.items() if v}
        else:
            r = {c: v % prime for c, v in row.items() if v % prime}
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                if prime is None:
                    inv = 1 / r[lead]
                    pivots[lead] = {c: v * inv for c, v in r.items()}
                else:
                    inv = pow(r[lead], -1, prime)
                    pivots[lead] = {c: v * inv % prime for c, v in r.items()}
                break
            f = r[lead]
            for c, v in p.items():
                nv = r.get(c, 0) - f * v
                if prime is not None:
                    nv %= prime
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return len(pivots)


def sparse_kernel(columns: Sequence[SparseRow], nrows: int) -> list[list[Fraction]]:
    """Rational kernel basis of the matrix whose columns are given sparsely."""
    dense = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            dense[i][j] = Fraction(v)
    if nrows == 0:
        return [[Fraction(int(i == j)) for i in range(len(columns))] for j in range(len(columns))]
    R, pivots = rref(dense)
    free = [c for c in range(len(columns)) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * len(columns)
        v[f] = Fraction(1)
        for row, c in zip(R, pivots):
            v[c] = -row[f]
        out.append(v)
    return out


def dense_rank_mod_p(rows: Sequence[Sequence[int]], prime: int = DEFAULT_PRIME) -> int:
    """Rank over GF(prime) with vectorized row reduction (prime < 2**31)."""
    import numpy as np

    if prime >= 2**31:
        raise ValueError("prime must fit in 31 bits for int64 elimination")
    if not rows or not len(rows[0]):
        return 0
    M = np.array([[x % prime for x in r] for r in rows], dtype=np.int64)
    m, ncols = M.shape
    rank = 0
    for c in range(ncols):
        if rank == m:
            break
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), -1, prime)
        M[rank] = (M[rank] * inv) % prime
        below = M[rank + 1:, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + rank + 1
            M[idx] = (M[idx] - (below[mask][:, None] * M[rank][None, :]) % prime) % prime
        rank += 1
    return rank
