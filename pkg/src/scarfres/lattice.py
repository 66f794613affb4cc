"""Antichain lattices in Z^n: membership, fibers, neighbors of the origin,
Markov bases and genericity.

Every antichain lattice admits a strictly positive integer vector ``u`` with
``u . lam = 0`` for all ``lam`` in the lattice.  All fibers then live in the
finite simplices ``{v >= 0 : u.v = const}``, which makes fiber enumeration
exact.  For codimension-1 lattices ``u`` is the primitive normal; otherwise
it is found by a small LP and then re-verified exactly.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import zn
from .errors import NotAntichainError, PreconditionError, VerificationError
from .linalg import hermite_normal_form, hnf_reduce, nullspace, primitive, rational_rank
from .zn import Point


def _det(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    k = len(m)
    det = Fraction(1)
    for c in range(k):
        piv = next((i for i in range(c, k) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, k):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return int(det)


def _positive_orthogonal(null_rows: list[tuple[int, ...]], n: int) -> tuple[int, ...] | None:
    """Strictly positive integer vector in the row span of ``null_rows``."""
    if not null_rows:
        return None
    if len(null_rows) == 1:
        v = null_rows[0]
        if all(x > 0 for x in v):
            return v
        if all(x < 0 for x in v):
            return zn.neg(v)
        return None
    from scipy.optimize import linprog

    k = len(null_rows)
    # find y with sum_j y_j null_rows[j][i] >= 1 for all i
    A_ub = [[-null_rows[j][i] for j in range(k)] for i in range(n)]
    res = linprog(c=[0] * k, A_ub=A_ub, b_ub=[-1] * n, bounds=[(None, None)] * k, method="highs")
    if res.status != 0:
        return None
    for den in (1, 2, 4, 8, 16, 64, 256, 1024):
        y = [Fraction(x).limit_denominator(den * 1000) for x in res.x]
        u = [sum(y[j] * null_rows[j][i] for j in range(k)) for i in range(n)]
        if all(x > 0 for x in u):
            return primitive(u)
    return None


class AntichainLattice:
    """A lattice ``Lambda`` in Z^n meeting the nonnegative orthant only in 0."""

    def __init__(self, basis: Iterable[Sequence[int]], n: int | None = None):
        basis = [zn.point(b) for b in basis]
        if n is None:
            if not basis:
                raise PreconditionError("dimension required for a rank-0 lattice")
            n = len(basis[0])
        self.n = n
        self.basis = [zn.point(b, n) for b in basis]
        if rational_rank(self.basis) != len(self.basis):
            raise PreconditionError(f"basis vectors are linearly dependent: {self.basis}")
        self.rank = len(self.basis)
        self._hnf, self._pivots = hermite_normal_form(self.basis)
        null = nullspace(self.basis, n) if self.basis else [
            tuple(int(i == j) for i in range(n)) for j in range(n)
        ]
        self._null = null
        u = (1,) * n if self.rank == 0 else _positive_orthogonal(null, n)
        if u is None:
            raise NotAntichainError(
                f"lattice spanned by {self.basis} contains a nonzero comparable element "
                "(no strictly positive grading vector exists)"
            )
        if any(zn.dot(u, b) for b in self.basis):
            raise VerificationError("grading vector is not orthogonal to the lattice")
        self.grading = u
        self._buckets: dict[int, dict[tuple, list[Point]]] = {}
        self._markov: MarkovBasis | None = None

    def __repr__(self) -> str:
        return f"AntichainLattice({self.basis!r})"

    @property
    def codim(self) -> int:
        return self.n - self.rank

    @property
    def normal(self) -> tuple[int, ...] | None:
        """Primitive positive normal for codimension-1 lattices."""
        return self.grading if self.codim == 1 else None

    @cached_property
    def torsion_order(self) -> int:
        """Index of the lattice in its saturation ``span(L) & Z^n``."""
        if self.rank == 0:
            return 1
        g = 0
        for cols in itertools.combinations(range(self.n), self.rank):
            g = gcd(g, _det([[b[c] for c in cols] for b in self.basis]))
        return abs(g)

    # --- membership and classes ----------------------------------------
    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def reduce(self, v: Sequence[int]) -> Point:
        """Canonical representative of ``v + Lambda`` (HNF remainder)."""
        if len(v) != self.n:
            raise zn.DimensionError(f"expected {self.n} coordinates, got {tuple(v)}")
        return hnf_reduce(v, self._hnf, self._pivots)

    def congruent(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return self.contains(zn.sub(tuple(a), tuple(b)))

    def value(self, v: Sequence[int]) -> int:
        return zn.dot(self.grading, v)

    # --- fibers ----------------------------------------------------------
    def _bucket(self, value: int) -> dict[tuple, list[Point]]:
        b = self._buckets.get(value)
        if b is None:
            b = {}
            for y in zn.compositions(self.grading, value):
                b.setdefault(self.reduce(y), []).append(y)
            self._buckets[value] = b
        return b

    def fiber_points(self, w: Sequence[int]) -> list[Point]:
        """All ``v >= 0`` with ``v - w`` in the lattice, sorted."""
        val = self.value(w)
        if val < 0:
            return []
        return sorted(self._bucket(val).get(self.reduce(w), []))

    def fiber_empty(self, w: Sequence[int]) -> bool:
        val = self.value(w)
        return val < 0 or self.reduce(w) not in self._bucket(val)

    def class_representatives(self, value: int) -> list[Point]:
        """One nonnegative point (lex smallest) per class at this grading value."""
        if value < 0:
            return []
        return sorted(min(pts) for pts in self._bucket(value).values())

    def classes_at_value(self, value: int) -> int:
        """Number of classes mod Lambda with a given grading value that meet N^n."""
        return len(self._bucket(value)) if value >= 0 else 0

    @cached_property
    def largest_gap_value(self) -> int:
        """Largest grading value of a class whose fiber is empty (codim 1 only).

        If every class at values ``w .. w + u_i - 1`` meets N^n, adding ``e_i``
        propagates that to all larger values, so the scan terminates.
        """
        if self.codim != 1:
            raise PreconditionError("gap bound is only finite for codimension-1 lattices")
        m = self.torsion_order
        step = min(self.grading)
        last_gap = -1
        run = 0
        w = 0
        while run < step:
            if self.classes_at_value(w) == m:
                run += 1
            else:
                last_gap = w
                run = 0
            w += 1
        return last_gap

    def neighbor_value_bound(self) -> int:
        """Any ``p`` with ``p - 1`` a gap class satisfies ``u.p <= bound``."""
        return self.largest_gap_value + sum(self.grading)

    def enumerate_fiber(self, root: Point, moves: Sequence[Point] | None = None) -> "FiberGraph":
        root = zn.point(root, self.n)
        verts = self.fiber_points(root)
        if moves is None:
            moves = markov_basis(self).elements
        move_set = set(moves) | {zn.neg(m) for m in moves}
        edges = [
            (v, w) for v, w in itertools.combinations(verts, 2) if zn.sub(v, w) in move_set
        ]
        return FiberGraph(root=root, vertices=verts, edges=edges)


@dataclass
class FiberGraph:
    root: Point
    vertices: list[Point]
    edges: list[tuple[Point, Point]]

    def is_connected(self) -> bool:
        if len(self.vertices) <= 1:
            return True
        adj: dict[Point, list[Point]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)


def fiber_connected(lat: AntichainLattice, root: Point, moves: Sequence[Point]) -> bool:
    return lat.enumerate_fiber(root, moves).is_connected()


def membership(lat: AntichainLattice, v: Sequence[int]) -> bool:
    return lat.contains(v)


def enumerate_fiber(lat: AntichainLattice, u: Point) -> FiberGraph:
    if not zn.is_nonnegative(u):
        raise PreconditionError(f"fiber root must be nonnegative: {u}")
    return lat.enumerate_fiber(u)


def is_neighbor_of_origin(lat: AntichainLattice, lam: Point) -> bool:
    """No lattice point lies strictly below ``0 v lam``."""
    return lat.fiber_empty(zn.sub(zn.pos_part(lam), zn.ones(lat.n)))


def neighbors_of_origin(lat: AntichainLattice, radius: int | None = None) -> list[Point]:
    """All neighbors of 0 in the lattice, sorted.

    For codimension 1 the search is exact: a neighbor ``lam`` needs
    ``lam+ - 1`` in an empty fiber, which bounds ``u . lam+``.  Otherwise
    ``radius`` bounds ``u . lam+`` and the result is complete only up to it.
    """
    if lat.rank == 0:
        return []
    if lat.codim == 1:
        bound = lat.neighbor_value_bound()
    elif radius is None:
        raise PreconditionError(
            "neighbor search for codimension > 1 needs an explicit radius"
        )
    else:
        bound = radius
    found: set[Point] = set()
    one = zn.ones(lat.n)
    for p in zn.bounded_points(lat.grading, bound):
        if not any(p) or not lat.fiber_empty(zn.sub(p, one)):
            continue
        sp = zn.support(p)
        for q in lat.fiber_points(p):
            if q != p and not (sp & zn.support(q)):
                found.add(zn.sub(p, q))
    return sorted(found)


@dataclass
class MarkovBasis:
    elements: list[Point]
    lattice: AntichainLattice
    # fibers with grading value <= verified_up_to were checked connected
    verified_up_to: int = -1
    fibers_checked: int = 0
    notes: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def signed(self) -> set[Point]:
        return set(self.elements) | {zn.neg(e) for e in self.elements}


def degree(lat: AntichainLattice, lam: Point) -> int:
    return lat.value(zn.pos_part(lam))


def verify_markov(lat: AntichainLattice, moves: Sequence[Point], max_value: int) -> int:
    """Check every fiber with grading value <= max_value is connected; return count."""
    count = 0
    for w in range(max_value + 1):
        for pts in lat._bucket(w).values():
            g = lat.enumerate_fiber(pts[0], moves)
            count += 1
            if not g.is_connected():
                raise VerificationError(
                    f"fiber over {pts[0]} is disconnected under moves {list(moves)}"
                )
    return count


def markov_basis(lat: AntichainLattice, radius: int | None = None, verify: bool = True) -> MarkovBasis:
    """One representative per +-pair of neighbors of the origin.

    The neighbors always form a Markov basis.  It is the unique minimal one
    when the lattice is generic; otherwise it can contain redundant moves
    such as ``2 (1,-1,0)`` for ``<(1,-1,0)>``.  Representatives have positive first nonzero coordinate and are ordered by
    degree ``u . lam+`` then lexicographically.  For codimension > 1 with no
    radius the search is bounded by ``default_radius`` and says so in ``notes``.
    """
    cached = lat._markov
    if cached is not None and radius is None:
        if not verify or cached.verified_up_to >= 0 or not cached.elements:
            return cached
    search = radius
    if search is None and lat.rank and lat.codim > 1:
        search = default_radius(lat)
    neigh = neighbors_of_origin(lat, search)
    reps = sorted({zn.first_nonzero_positive(v) for v in neigh}, key=lambda v: (degree(lat, v), v))
    mb = MarkovBasis(elements=reps, lattice=lat)
    if search is not None:
        mb.notes.append(f"neighbor search bounded by u.p <= {search}")
    if verify and reps:
        bound = 3 * max(degree(lat, v) for v in reps)
        mb.fibers_checked = verify_markov(lat, reps, bound)
        mb.verified_up_to = bound
        mb.notes.append(f"fiber connectivity checked for grading value <= {bound}")
    if radius is None:
        lat._markov = mb
    return mb


def default_radius(lat: AntichainLattice) -> int:
    """Heuristic search radius for codimension > 1: twice the largest basis degree."""
    return 2 * max((degree(lat, b) for b in lat.basis), default=0) + sum(lat.grading)


def is_generic(lat: AntichainLattice, radius: int | None = None) -> bool:
    """Every Markov-basis element is fully supported.

    For codimension > 1 without a radius, ``default_radius`` is used; a
    non-fully-supported element found inside it is conclusive, a pass is not.
    """
    if lat.rank == 0:
        return True
    if lat.codim > 1 and radius is None:
        radius = default_radius(lat)
    return all(len(zn.support(v)) == lat.n for v in markov_basis(lat, radius, verify=False))


def kernel_lattice(weights: Sequence[int]) -> AntichainLattice:
    """Saturated lattice ``{x : weights . x = 0}`` for positive weights."""
    weights = zn.point(weights)
    n = len(weights)
    basis = _integer_kernel(weights)
    lat = AntichainLattice(basis, n)
    if lat.torsion_order != 1:
        raise VerificationError("kernel basis is not saturated")
    return lat


def _integer_kernel(w: Sequence[int]) -> list[Point]:
    """Z-basis of ``{x in Z^n : w.x = 0}`` by column operations on ``w``."""
    n = len(w)
    row = list(w)
    U = [[int(i == j) for j in range(n)] for i in range(n)]  # columns track ops
    # reduce row to (g, 0, ..., 0) with unimodular column operations
    while sum(1 for x in row if x) > 1:
        nz = [i for i in range(n) if row[i]]
        i0 = min(nz, key=lambda i: abs(row[i]))
        for i in nz:
            if i != i0:
                q = row[i] // row[i0]
                row[i] -= q * row[i0]
                for r in range(n):
                    U[r][i] -= q * U[r][i0]
    piv = next(i for i in range(n) if row[i])
    return [tuple(U[r][c] for r in range(n)) for c in range(n) if c != piv]
