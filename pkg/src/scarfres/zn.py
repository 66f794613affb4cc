"""Integer points of Z^n under the componentwise order.

Points are plain tuples of Python ints, so arithmetic is arbitrary precision
and values are hashable.  The helpers here validate dimensions and raise
``DimensionError`` on mismatch.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Point = tuple  # tuple[int, ...]


class DimensionError(ValueError):
    pass


def point(coords: Iterable[int], n: int | None = None) -> Point:
    p = tuple(int(c) for c in coords)
    if n is not None and len(p) != n:
        raise DimensionError(f"expected {n} coordinates, got {len(p)}: {p}")
    return p


def zero(n: int) -> Point:
    return (0,) * n


def ones(n: int) -> Point:
    return (1,) * n


def _check(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {tuple(a)} vs {tuple(b)}")


def add(a: Point, b: Point) -> Point:
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Point, b: Point) -> Point:
    _check(a, b)
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Point) -> Point:
    return tuple(-x for x in a)


def scale(k: int, a: Point) -> Point:
    return tuple(k * x for x in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    _check(a, b)
    return sum(x * y for x, y in zip(a, b))


def join(a: Point, b: Point) -> Point:
    """Componentwise maximum."""
    _check(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def meet(a: Point, b: Point) -> Point:
    """Componentwise minimum, ``-(-a v -b)``."""
    _check(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def join_all(points: Iterable[Point]) -> Point:
    pts = list(points)
    if not pts:
        raise ValueError("join of an empty family is undefined")
    out = pts[0]
    for p in pts[1:]:
        out = join(out, p)
    return out


def pos_part(v: Point) -> Point:
    return tuple(max(x, 0) for x in v)


def neg_part(v: Point) -> Point:
    return tuple(max(-x, 0) for x in v)


def pos_neg_parts(v: Point) -> tuple[Point, Point]:
    """Return ``(v+, v-)`` with ``v = v+ - v-`` and disjoint supports."""
    return pos_part(v), neg_part(v)


def support(v: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x != 0)


def leq(a: Point, b: Point) -> bool:
    _check(a, b)
    return all(x <= y for x, y in zip(a, b))


def strictly_below(a: Point, b: Point) -> bool:
    """``a << b``: strictly smaller in every coordinate."""
    _check(a, b)
    return all(x < y for x, y in zip(a, b))


def comparable(a: Point, b: Point) -> bool:
    return leq(a, b) or leq(b, a)


def is_nonnegative(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v)


def first_nonzero_positive(v: Point) -> Point:
    """Sign-normalize so the first nonzero coordinate is positive."""
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return neg(v)
    return v


@dataclass(frozen=True)
class Box:
    """``T_apex = apex - N^n`` (closed) or ``apex - N^n_{>0}`` (open)."""

    apex: Point
    open: bool = False

    def __contains__(self, p: Point) -> bool:
        return box_contains(self, p)


def box_contains(box: Box, p: Point) -> bool:
    if box.open:
        return strictly_below(p, box.apex)
    return leq(p, box.apex)


def compositions(weights: Sequence[int], total: int) -> list[Point]:
    """All ``v >= 0`` with ``weights . v == total``; weights must be positive."""
    if any(w <= 0 for w in weights):
        raise ValueError(f"weights must be positive: {tuple(weights)}")
    n = len(weights)
    if total < 0:
        return []
    out: list[Point] = []
    buf = [0] * n

    def rec(i: int, rest: int) -> None:
        w = weights[i]
        if i == n - 1:
            if rest % w == 0:
                buf[i] = rest // w
                out.append(tuple(buf))
            return
        for k in range(rest // w + 1):
            buf[i] = k
            rec(i + 1, rest - k * w)

    if n == 0:
        return [()] if total == 0 else []
    rec(0, total)
    return out


def bounded_points(weights: Sequence[int], max_total: int) -> list[Point]:
    """All ``v >= 0`` with ``weights . v <= max_total``."""
    out: list[Point] = []
    for s in range(max_total + 1):
        out.extend(compositions(weights, s))
    return out
