"""Neighborly sets and the Scarf complex of a generic Lambda-finite set.

A finite ``B`` inside ``A`` is neighborly when no point of ``A`` lies strictly
below ``vB`` in every coordinate.  Writing ``a = r + lam`` for a representative
``r``, that happens iff the fiber of ``vB - 1 - r`` is nonempty, so the test
reduces to finitely many exact fiber lookups.

Faces are stored as one representative per Lambda-orbit.  The representative
of an orbit is the translate whose distinguished vertex (largest last
coordinate, then lexicographically largest) is a stored representative of
``A``.  Vertices are sorted lexicographically and facet ``j`` (drop vertex
``j``) carries sign ``(-1)^j``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import zn
from .errors import NotGenericError, PreconditionError, VerificationError
from .lambda_set import LambdaSet
from .lattice import is_generic
from .zn import Point


@dataclass(frozen=True)
class ScarfFace:
    vertices: tuple[Point, ...]
    label: Point

    @classmethod
    def of(cls, vertices: Iterable[Point]) -> "ScarfFace":
        vs = tuple(sorted(set(vertices)))
        return cls(vs, zn.join_all(vs))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def translate(self, h: Point) -> "ScarfFace":
        return ScarfFace(tuple(zn.add(v, h) for v in self.vertices), zn.add(self.label, h))

    def facet(self, j: int) -> "ScarfFace":
        return ScarfFace.of(self.vertices[:j] + self.vertices[j + 1:])


@dataclass(frozen=True)
class Incidence:
    """Facet ``j`` of a face equals ``faces[dim-1][target] + shift``."""

    j: int
    sign: int
    target: int
    shift: Point


@dataclass
class ScarfComplex:
    A: LambdaSet
    dims: list[list[ScarfFace]]
    incidence: dict[tuple[int, int], list[Incidence]]
    neighbors: dict[Point, list[Point]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def orbit_counts(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.dims)

    def index(self, face: ScarfFace) -> tuple[int, int, Point]:
        """``(dim, idx, h)`` with ``face = dims[dim][idx] + h``."""
        rep, h = orbit_representative(self.A, face)
        d = face.dim
        try:
            return d, self.dims[d].index(rep), h
        except (ValueError, IndexError):
            raise VerificationError(f"face {face.vertices} has no representative in the complex")

    def faces_in_box(self, lo: Point, hi: Point) -> set[frozenset]:
        """All faces (as vertex sets) whose vertices lie in the closed box."""
        pts = self.A.materialize(lo, hi)
        out: set[frozenset] = set()
        for d, faces in enumerate(self.dims):
            for f in faces:
                base = f.vertices[0]
                for p in pts:
                    h = zn.sub(p, base)
                    if not self.A.lattice.contains(h):
                        continue
                    g = f.translate(h)
                    if all(zn.leq(lo, v) and zn.leq(v, hi) for v in g.vertices):
                        out.add(frozenset(g.vertices))
        return out


def distinguished_vertex(vertices: Sequence[Point]) -> Point:
    return max(vertices, key=lambda v: (v[-1], v))


def orbit_representative(A: LambdaSet, face: ScarfFace) -> tuple[ScarfFace, Point]:
    """``(rep, h)`` with ``face = rep + h``."""
    _, h = A.canonical_rep(distinguished_vertex(face.vertices))
    return face.translate(zn.neg(h)), h


def _check_subset(A: LambdaSet, B: Sequence[Point]) -> None:
    for b in B:
        if b not in A:
            raise PreconditionError(f"{b} is not in the Lambda-set")


def is_neighborly(A: LambdaSet, B: Sequence[Sequence[int]]) -> bool:
    """No point of ``A`` is strictly below ``vB`` (exact for every antichain lattice)."""
    B = [zn.point(b, A.n) for b in B]
    if not B:
        return True
    _check_subset(A, B)
    top = zn.sub(zn.join_all(B), zn.ones(A.n))
    return all(A.lattice.fiber_empty(zn.sub(top, r)) for r in A.reps)


def points_below(A: LambdaSet, eta: Point) -> list[Point]:
    """All ``a`` in ``A`` with ``a <= eta``."""
    out = []
    for r in A.reps:
        for y in A.lattice.fiber_points(zn.sub(eta, r)):
            out.append(zn.sub(eta, y))
    return sorted(out)


def is_strongly_neighborly(A: LambdaSet, B: Sequence[Sequence[int]]) -> bool:
    """``B`` is the only subset of ``A`` with join ``vB``.

    Any extra ``a <= vB`` could be added without changing the join, so the
    candidates are exactly ``{a in A : a <= vB}``; it must equal ``B`` and
    no proper subset of ``B`` may reach the same join.
    """
    B = sorted({zn.point(b, A.n) for b in B})
    if not B:
        return True
    _check_subset(A, B)
    top = zn.join_all(B)
    if points_below(A, top) != B:
        return False
    for subset in itertools.chain.from_iterable(
        itertools.combinations(B, k) for k in range(1, len(B))
    ):
        if zn.join_all(subset) == top:
            return False
    return True


def neighbors_in(A: LambdaSet, a0: Point, radius: int | None = None) -> list[Point]:
    """All ``b != a0`` in ``A`` with ``{a0, b}`` neighborly.

    ``b = a0 + p - q`` with ``p = (b - a0)+``.  Neighborliness forces the fiber
    of ``p - 1`` to be empty, which bounds ``u . p`` (exactly for codimension 1).
    """
    lat = A.lattice
    if lat.rank == 0:
        return sorted(b for b in A.reps if b != a0 and is_neighborly(A, [a0, b]))
    if lat.codim == 1:
        bound = lat.neighbor_value_bound()
    elif radius is None:
        raise PreconditionError("neighbor search for codimension > 1 needs an explicit radius")
    else:
        bound = radius
    one = zn.ones(A.n)
    out: set[Point] = set()
    for p in zn.bounded_points(lat.grading, bound):
        top = zn.sub(zn.add(a0, p), one)
        if not all(lat.fiber_empty(zn.sub(top, r)) for r in A.reps):
            continue
        sp = zn.support(p)
        base = zn.add(a0, p)
        for r in A.reps:
            for q in lat.fiber_points(zn.sub(base, r)):
                if sp & zn.support(q):
                    continue
                b = zn.sub(base, q)
                if b != a0:
                    out.add(b)
    return sorted(out)


def genericity_violation(A: LambdaSet, neighbors: dict[Point, list[Point]]) -> tuple[Point, Point] | None:
    """A neighborly pair sharing a coordinate, if any."""
    for a0, nbrs in neighbors.items():
        for b in nbrs:
            if len(zn.support(zn.sub(b, a0))) < A.n:
                return a0, b
    return None


def build_scarf(A: LambdaSet, max_dim: int | None = None, radius: int | None = None) -> ScarfComplex:
    """Orbit representatives and oriented incidences of the Scarf complex of ``A``."""
    n = A.n
    lat = A.lattice
    if max_dim is None:
        max_dim = n - 1
    if max_dim > n - 1:
        raise PreconditionError(f"max_dim {max_dim} exceeds n - 1 = {n - 1}")
    if lat.rank and not is_generic(lat, radius):
        raise NotGenericError(f"lattice {lat.basis} has a Markov element that is not fully supported")
    neighbors = {a0: neighbors_in(A, a0, radius) for a0 in A.reps}
    bad = genericity_violation(A, neighbors)
    if bad is not None:
        raise NotGenericError(f"neighborly pair {bad[0]}, {bad[1]} shares a coordinate")

    def nbrs_of(p: Point) -> set[Point]:
        rep, h = A.canonical_rep(p)
        return {zn.add(b, h) for b in neighbors[rep]}

    # a rep with a point of A strictly below it is no vertex; its neighbor list is empty
    dims: list[list[ScarfFace]] = [[ScarfFace.of([a]) for a in sorted(A.reps) if is_neighborly(A, [a])]]
    for k in range(1, max_dim + 1):
        found: set[ScarfFace] = set()
        for a0 in A.reps:
            for S in itertools.combinations(neighbors[a0], k):
                if any(c not in nbrs_of(b) for b, c in itertools.combinations(S, 2)):
                    continue
                verts = (a0,) + S
                if not is_neighborly(A, verts):
                    continue
                rep, _ = orbit_representative(A, ScarfFace.of(verts))
                found.add(rep)
        if not found:
            break
        dims.append(sorted(found, key=lambda f: f.vertices))

    cx = ScarfComplex(A=A, dims=dims, incidence={}, neighbors=neighbors)
    for d in range(1, len(dims)):
        for i, f in enumerate(dims[d]):
            rows = []
            for j in range(len(f.vertices)):
                dd, idx, h = cx.index(f.facet(j))
                rows.append(Incidence(j=j, sign=(-1) ** j, target=idx, shift=h))
            cx.incidence[(d, i)] = rows
    if lat.rank == 0:
        cx.notes.append("trivial lattice: neighbors taken among the representatives")
    else:
        bound = lat.neighbor_value_bound() if lat.codim == 1 else radius
        cx.notes.append(f"neighbor window: u.p <= {bound}")
    return cx
