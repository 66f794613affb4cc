"""Exact hull-complex oracle in dimension 3.

``P = conv(E_t(A)) + R^3_{>=0}`` is computed for a finite truncation of ``A``.
Every facet of ``P`` has a normal ``w >= 0`` and is spanned by points of
``E_t(A)`` and coordinate directions, so candidate facets come from three
points, two points plus an axis, or one point plus two axes.  Faces are the
intersections of facets.  A face is bounded exactly when its normal cone meets
the open positive orthant, i.e. when the sum of the normals of the facets
through it is strictly positive.

A coordinatewise positive rescaling maps ``P`` to a polyhedron of the same
kind with the same face lattice, so each coordinate is scaled to clear
denominators and all arithmetic is on Python integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import zn
from .errors import NotGenericError, PreconditionError
from .lambda_set import LambdaSet
from .scarf import build_scarf
from .zn import Point

DEFAULT_T = 25


def embed(points: Sequence[Sequence[int]], t: Fraction | int) -> list[tuple[Fraction, ...]]:
    """``E_t(a) = (t^a_1, ..., t^a_n)`` with exact rational powers."""
    t = Fraction(t)
    if t <= 1:
        raise PreconditionError(f"embedding parameter must exceed 1, got {t}")
    return [tuple(t ** k for k in p) for p in points]


def integer_embedding(points: Sequence[Point], t: Fraction | int) -> list[tuple[int, ...]]:
    """``E_t`` followed by a positive per-coordinate scaling that clears denominators."""
    emb = embed(points, t)
    if not emb:
        return []
    n = len(emb[0])
    scale = [lcm(*(p[i].denominator for p in emb)) for i in range(n)]
    return [tuple(int(p[i] * scale[i]) for i in range(n)) for p in emb]


def _cross(a: Sequence[int], b: Sequence[int]) -> tuple[int, int, int]:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _primitive(w: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in w:
        g = gcd(g, x)
    return tuple(x // g for x in w)


AXES = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass
class HullFaceSet:
    t: Fraction
    points: list[Point]
    faces: set[frozenset]  # bounded faces as sets of lattice points
    facets: list[tuple[tuple[int, ...], frozenset]]
    non_vertices: list[Point] = field(default_factory=list)

    def in_box(self, lo: Point, hi: Point) -> set[frozenset]:
        return {
            f for f in self.faces if all(zn.leq(lo, v) and zn.leq(v, hi) for v in f)
        }


def _facets(P: list[tuple[int, ...]]) -> dict[tuple[int, ...], frozenset]:
    """Facets of ``conv(P) + R^3_{>=0}`` keyed by primitive normal."""
    N = len(P)
    found: dict[tuple[int, ...], frozenset] = {}
    killer = [0]

    def consider(w: tuple[int, int, int], base: tuple[int, ...]) -> None:
        if not any(w):
            return
        if all(x <= 0 for x in w):
            w = (-w[0], -w[1], -w[2])
        elif any(x < 0 for x in w):
            return
        w = _primitive(w)
        if w in found:
            return
        c = w[0] * base[0] + w[1] * base[1] + w[2] * base[2]
        k = killer[0]
        q = P[k]
        if w[0] * q[0] + w[1] * q[1] + w[2] * q[2] < c:
            return
        on = []
        for m, q in enumerate(P):
            v = w[0] * q[0] + w[1] * q[1] + w[2] * q[2]
            if v < c:
                killer[0] = m
                return
            if v == c:
                on.append(m)
        found[w] = frozenset(on)

    for a in AXES:
        consider(a, min(P, key=lambda q: (q[a.index(1)],)))
    for i, j in itertools.combinations(range(N), 2):
        d = tuple(P[j][k] - P[i][k] for k in range(3))
        for a in AXES:
            consider(_cross(d, a), P[i])
    for i, j, k in itertools.combinations(range(N), 3):
        d1 = tuple(P[j][m] - P[i][m] for m in range(3))
        d2 = tuple(P[k][m] - P[i][m] for m in range(3))
        consider(_cross(d1, d2), P[i])
    return found


def hull_faces_of_points(points: Sequence[Point], t: Fraction | int = DEFAULT_T) -> HullFaceSet:
    """Bounded faces of ``conv(E_t(points)) + R^3_{>=0}``."""
    pts = sorted(set(zn.point(p, 3) for p in points))
    if not pts:
        return HullFaceSet(Fraction(t), [], set(), [])
    P = integer_embedding(pts, t)
    facets = _facets(P)
    faces: set[frozenset] = set(s for s in facets.values() if s)
    frontier = list(faces)
    facet_sets = list(facets.values())
    while frontier:
        nxt = []
        for f in frontier:
            for s in facet_sets:
                g = f & s
                if g and g not in faces:
                    faces.add(g)
                    nxt.append(g)
        frontier = nxt
    bounded: set[frozenset] = set()
    for f in faces:
        total = [0, 0, 0]
        for w, s in facets.items():
            if f <= s:
                total = [a + b for a, b in zip(total, w)]
        if all(x > 0 for x in total):
            bounded.add(frozenset(pts[m] for m in f))
    verts = {next(iter(f)) for f in bounded if len(f) == 1}
    non_vertices = [p for p in pts if p not in verts]
    return HullFaceSet(
        t=Fraction(t),
        points=pts,
        faces=bounded,
        facets=[(w, frozenset(pts[m] for m in s)) for w, s in sorted(facets.items())],
        non_vertices=non_vertices,
    )


def default_window(A: LambdaSet, radius: int | None = None) -> tuple[Point, Point]:
    """A box around the representatives, ``radius`` defaulting to the largest Markov coordinate."""
    if radius is None:
        from .lattice import default_radius, markov_basis

        lat = A.lattice
        search = default_radius(lat) if lat.rank and lat.codim > 1 else None
        radius = max((abs(x) for v in markov_basis(lat, search, verify=False) for x in v), default=1)
    lo = tuple(min(r[i] for r in A.reps) - radius for i in range(A.n))
    hi = tuple(max(r[i] for r in A.reps) + radius for i in range(A.n))
    return lo, hi


def hull_faces(
    A: LambdaSet,
    window: tuple[Point, Point] | None = None,
    t: Fraction | int = DEFAULT_T,
    margin: int | None = None,
) -> tuple[HullFaceSet, set[frozenset]]:
    """Hull of ``A`` materialized over ``window`` grown by ``margin``.

    Returns the full face set and the bounded faces lying inside ``window``;
    only the latter are trustworthy, since truncation distorts faces near the
    materialized boundary.
    """
    if A.n != 3:
        raise PreconditionError("hull oracle is implemented for n = 3")
    if Fraction(t) <= 1:
        raise PreconditionError(f"embedding parameter must exceed 1, got {t}")
    lo, hi = window if window is not None else default_window(A)
    if margin is None:
        margin = max(hi[i] - lo[i] for i in range(3)) // 2 + 1
    big_lo = tuple(x - margin for x in lo)
    big_hi = tuple(x + margin for x in hi)
    hf = hull_faces_of_points(A.materialize(big_lo, big_hi), t)
    return hf, hf.in_box(lo, hi)


@dataclass
class HullComparison:
    match: bool
    refused: str | None
    t_values: list[Fraction]
    window: tuple[Point, Point]
    scarf_faces: int
    hull_faces: int
    counts_by_dim: dict[int, int]
    missing_in_hull: list[frozenset]
    extra_in_hull: list[frozenset]
    stable: bool
    non_vertices: list[Point]

    def __str__(self) -> str:
        if self.refused:
            return f"hull-check: REFUSED ({self.refused})"
        verdict = "MATCH" if self.match else "MISMATCH"
        dims = ", ".join(f"dim {d}: {k}" for d, k in sorted(self.counts_by_dim.items()))
        s = (
            f"hull-check: {verdict} window={self.window} t={','.join(map(str, self.t_values))} "
            f"scarf={self.scarf_faces} hull={self.hull_faces} ({dims}) stable={self.stable}"
        )
        for f in self.missing_in_hull[:5]:
            s += f"\n  missing in hull: {sorted(f)}"
        for f in self.extra_in_hull[:5]:
            s += f"\n  extra in hull: {sorted(f)}"
        return s


def compare_scarf_hull(
    A: LambdaSet,
    window: tuple[Point, Point] | None = None,
    t: Fraction | int | Sequence[Fraction | int] = (25, 26),
    margin: int | None = None,
) -> HullComparison:
    """Compare Scarf faces and bounded hull faces inside ``window`` for each ``t``."""
    ts = [Fraction(x) for x in (t if isinstance(t, (list, tuple)) else [t])]
    lo, hi = window if window is not None else default_window(A)
    try:
        cx = build_scarf(A)
    except NotGenericError as exc:
        return HullComparison(False, str(exc), ts, (lo, hi), 0, 0, {}, [], [], False, [])
    scarf = cx.faces_in_box(lo, hi)
    hull_sets = []
    non_vertices: list[Point] = []
    for tv in ts:
        hf, inner = hull_faces(A, (lo, hi), tv, margin)
        hull_sets.append(inner)
        non_vertices.extend(hf.non_vertices)
    inner = hull_sets[0]
    stable = all(h == inner for h in hull_sets)
    missing = sorted(scarf - inner, key=sorted)
    extra = sorted(inner - scarf, key=sorted)
    counts: dict[int, int] = {}
    for f in scarf:
        counts[len(f) - 1] = counts.get(len(f) - 1, 0) + 1
    return HullComparison(
        match=not missing and not extra and stable and not non_vertices,
        refused=None,
        t_values=ts,
        window=(lo, hi),
        scarf_faces=len(scarf),
        hull_faces=len(inner),
        counts_by_dim=counts,
        missing_in_hull=missing,
        extra_in_hull=extra,
        stable=stable,
        non_vertices=sorted(set(non_vertices)),
    )
