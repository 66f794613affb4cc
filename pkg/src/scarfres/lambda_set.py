"""Lambda-finite sets ``A = A0 + Lambda`` given by orbit representatives."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import zn
from .errors import PreconditionError
from .lattice import AntichainLattice
from .zn import Point


@dataclass(frozen=True)
class LambdaSet:
    lattice: AntichainLattice
    reps: tuple[Point, ...]

    def __init__(self, lattice: AntichainLattice, reps: Iterable[Sequence[int]]):
        pts = tuple(zn.point(r, lattice.n) for r in reps)
        if not pts:
            raise PreconditionError("a Lambda-set needs at least one representative")
        keys: dict[Point, Point] = {}
        for p in pts:
            k = lattice.reduce(p)
            if k in keys:
                raise PreconditionError(
                    f"representatives {keys[k]} and {p} differ by a lattice vector"
                )
            keys[k] = p
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "reps", pts)
        object.__setattr__(self, "_by_key", {k: i for i, k in enumerate(lattice.reduce(p) for p in pts)})

    @property
    def n(self) -> int:
        return self.lattice.n

    def __len__(self) -> int:
        return len(self.reps)

    def orbit_index(self, p: Sequence[int]) -> int | None:
        return self._by_key.get(self.lattice.reduce(p))

    def __contains__(self, p: Sequence[int]) -> bool:
        return self.orbit_index(p) is not None

    def canonical_rep(self, p: Sequence[int]) -> tuple[Point, Point]:
        """``(rep, h)`` with ``p = rep + h`` and ``h`` in the lattice."""
        p = zn.point(p, self.n)
        i = self.orbit_index(p)
        if i is None:
            raise PreconditionError(f"{p} is not congruent to any representative")
        rep = self.reps[i]
        return rep, zn.sub(p, rep)

    def materialize(self, lo: Sequence[int], hi: Sequence[int]) -> list[Point]:
        """All points of ``A`` in the closed box ``lo <= p <= hi``, sorted.

        ``p - lo`` runs over the (finite) fiber of ``rep - lo``, so this is exact.
        """
        lo = zn.point(lo, self.n)
        hi = zn.point(hi, self.n)
        if not zn.leq(lo, hi):
            return []
        out = []
        for r in self.reps:
            for y in self.lattice.fiber_points(zn.sub(r, lo)):
                p = zn.add(y, lo)
                if zn.leq(p, hi):
                    out.append(p)
        return sorted(out)

    def normalized(self) -> "LambdaSet":
        """Same set with each representative replaced by its HNF remainder."""
        return LambdaSet(self.lattice, [self.lattice.reduce(r) for r in self.reps])

    def translate_to_orthant(self) -> "LambdaSet":
        """Representatives moved into N^n when the orbit meets it (smallest grading value, then lex)."""
        out = []
        for r in self.reps:
            val = self.lattice.value(r)
            pts = self.lattice.fiber_points(r) if val >= 0 else []
            if not pts:
                raise PreconditionError(f"orbit of {r} does not meet the nonnegative orthant")
            out.append(pts[0])
        return LambdaSet(self.lattice, out)


def canonical_rep(ls: LambdaSet, p: Sequence[int]) -> tuple[Point, Point]:
    return ls.canonical_rep(p)


def materialize(ls: LambdaSet, lo: Sequence[int], hi: Sequence[int]) -> list[Point]:
    return ls.materialize(lo, hi)
