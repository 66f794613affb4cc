"""Random generic instances in Z^3 for property suites and experiments."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from . import zn
from .errors import PreconditionError
from .lambda_set import LambdaSet
from .lattice import AntichainLattice, is_generic, kernel_lattice
from .lift3 import check_markov_containment, lattice_resolution_z3
from .scarf import build_scarf


@dataclass
class SamplerConfig:
    seed: int = 0
    max_normal: int = 12
    max_reps: int = 2
    max_coord: int = 4
    attempts: int = 200


def random_generic_lattice(rng: random.Random, max_normal: int = 12, attempts: int = 200) -> AntichainLattice:
    """``ker(u)`` for a random primitive ``u`` in ``[1, max_normal]^3`` whose Markov basis is fully supported."""
    for _ in range(attempts):
        u = tuple(rng.randint(1, max_normal) for _ in range(3))
        if gcd(*u) != 1:
            continue
        lat = kernel_lattice(u)
        if is_generic(lat):
            return lat
    raise RuntimeError(f"no generic lattice found in {attempts} attempts")


def random_reps(
    rng: random.Random, lat: AntichainLattice, k: int = 1, max_coord: int = 4, attempts: int = 200
) -> LambdaSet | None:
    """A generic ``A0 + Lambda`` with ``|A0| = k``, ``A0`` in N^3, every rep a minimal
    generator, and no rep dividing a Markov monomial."""
    res = lattice_resolution_z3(lat)
    for _ in range(attempts):
        reps: list[tuple[int, ...]] = []
        for _ in range(4 * k):
            p = tuple(rng.randint(0, max_coord) for _ in range(3))
            if any(p) and all(not lat.congruent(p, q) for q in reps):
                reps.append(p)
            if len(reps) == k:
                break
        if len(reps) < k:
            continue
        A = LambdaSet(lat, reps)
        try:
            check_markov_containment(A, res)
            cx = build_scarf(A)
        except PreconditionError:
            continue
        if len(cx.dims[0]) == k:
            return A
    return None


def generic_instances(count: int, config: SamplerConfig | None = None):
    """Yield ``count`` generic instances ``(lattice, LambdaSet)`` with ``|A0|`` drawn from ``1..max_reps``."""
    cfg = config or SamplerConfig()
    rng = random.Random(cfg.seed)
    for _ in range(count):
        k = rng.randint(1, cfg.max_reps)
        A = None
        while A is None:
            lat = random_generic_lattice(rng, cfg.max_normal, cfg.attempts)
            A = random_reps(rng, lat, k, cfg.max_coord, cfg.attempts)
        yield lat, A


def random_lattice_element(rng: random.Random, lat: AntichainLattice, bound: int = 4) -> zn.Point:
    """A random integer combination of the stored basis with coefficients in ``[-bound, bound]``."""
    g = zn.zero(lat.n)
    for b in lat.basis:
        g = zn.add(g, zn.scale(rng.randint(-bound, bound), b))
    return g


__all__ = [
    "SamplerConfig",
    "generic_instances",
    "random_generic_lattice",
    "random_lattice_element",
    "random_reps",
]
