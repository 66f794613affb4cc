"""The reference instance: ``Lambda = <(-1,2,-1), (3,-1,-1)>`` and ``A0 = {(1,2,0)}``.

The reference complexes below are written by hand in the conventional
presentation (generator names r, s, t for edges and u, v for triangles,
``e_l3 -> x^2 y - z^2``).  They are compared with computed output only up to
per-generator sign and permutation.
"""
from __future__ import annotations

from .chain import CLASS, FreeChainComplex, Generator
from .lambda_set import LambdaSet
from .lattice import AntichainLattice
from .laurent import LaurentPolynomial, parse_polynomial

BASIS = [(-1, 2, -1), (3, -1, -1)]
A0 = [(1, 2, 0)]
MARKOV = [(-1, 2, -1), (3, -1, -1), (-2, -1, 2)]
NORMAL = (3, 4, 5)

# edge and triangle representatives with their labels
EDGES = {
    "r": ([(1, 2, 0), (4, 1, -1)], (4, 2, 0)),
    "s": ([(1, 2, 0), (3, 3, -2)], (3, 3, 0)),
    "t": ([(1, 2, 0), (0, 4, -1)], (1, 4, 0)),
}
TRIANGLES = {
    "u": ([(1, 2, 0), (0, 4, -1), (3, 3, -2)], (3, 4, 0)),
    "v": ([(1, 2, 0), (3, 3, -2), (4, 1, -1)], (4, 3, 0)),
}
# listed endpoint of r that is not congruent to (1,2,0); (4,1,-1) is used instead
TYPO_ENDPOINT = (4, 3, -1)

# lifting data for the triangle u: its facet r + l1
U_LIFTING_TERM = ["x^3*y^2*z^-1", "x*y^2", "x*y^3*z^-1"]
U_B = ["x*y^2*z^-1", "0"]


def lattice() -> AntichainLattice:
    return AntichainLattice(BASIS)


def lambda_set() -> LambdaSet:
    return LambdaSet(lattice(), A0)


def _P(s: str) -> LaurentPolynomial:
    return parse_polynomial(s, 3)


def _build(lat, modules, entries, aug, modulus) -> FreeChainComplex:
    mods = [[Generator(name, deg) for name, deg in m] for m in modules]
    c = FreeChainComplex(n=3, mode=CLASS, modules=mods, lattice=lat)
    for i, col, row, poly in entries:
        c.add_entry(i, c.index_of(i - 1, row), c.index_of(i, col), _P(poly))
    c.augmentation = [_P(p) for p in aug]
    c.aug_modulus = modulus
    return c.check_homogeneous()


def reference_lattice_resolution(lat: AntichainLattice | None = None) -> FreeChainComplex:
    lat = lat or lattice()
    modules = [
        [("e0", (0, 0, 0))],
        [("l1", (0, 2, 0)), ("l2", (3, 0, 0)), ("l3", (2, 1, 0))],
        [("p1", (2, 2, 0)), ("p2", (0, 2, 1))],
    ]
    entries = [
        (1, "l1", "e0", "y^2 - x*z"),
        (1, "l2", "e0", "x^3 - y*z"),
        (1, "l3", "e0", "x^2*y - z^2"),
        (2, "p1", "l1", "x^2"), (2, "p1", "l2", "z"), (2, "p1", "l3", "-y"),
        (2, "p2", "l1", "z"), (2, "p2", "l2", "y"), (2, "p2", "l3", "-x"),
    ]
    return _build(lat, modules, entries, ["1"], "lattice")


def reference_quotient_resolution(lat: AntichainLattice | None = None) -> FreeChainComplex:
    """Resolution of ``(I_Lambda + I_A0) / I_Lambda``.  The r-bar entry is
    ``yz - x^3``, the form forced by homogeneity in the class of (4,2,0)."""
    lat = lat or lattice()
    modules = [
        [("a", (1, 2, 0))],
        [("r", (4, 2, 0)), ("s", (3, 3, 0)), ("t", (1, 4, 0))],
        [("u", (3, 4, 0)), ("v", (4, 3, 0))],
    ]
    entries = [
        (1, "t", "a", "x*z - y^2"),
        (1, "r", "a", "y*z - x^3"),
        (1, "s", "a", "z^2 - x^2*y"),
        (2, "u", "t", "x^2"), (2, "u", "r", "z"), (2, "u", "s", "-y"),
        (2, "v", "t", "z"), (2, "v", "r", "y"), (2, "v", "s", "-x"),
    ]
    return _build(lat, modules, entries, ["x*y^2"], "lattice")


def reference_sum_resolution(lat: AntichainLattice | None = None) -> FreeChainComplex:
    """Resolution of ``I_Lambda + I_A0``."""
    lat = lat or lattice()
    modules = [
        [("l1", (0, 2, 0)), ("l2", (3, 0, 0)), ("l3", (2, 1, 0)), ("a", (1, 2, 0))],
        [("p1", (2, 2, 0)), ("p2", (0, 2, 1)), ("r", (4, 2, 0)), ("s", (3, 3, 0)), ("t", (1, 4, 0))],
        [("u", (3, 4, 0)), ("v", (4, 3, 0))],
    ]
    entries = [
        (2, "u", "t", "x^2"), (2, "u", "r", "z"), (2, "u", "s", "-y"), (2, "u", "p1", "-x*y^2"),
        (2, "v", "t", "z"), (2, "v", "r", "y"), (2, "v", "s", "-x"), (2, "v", "p2", "-x*y^2"),
        (1, "p1", "l1", "x^2"), (1, "p1", "l2", "z"), (1, "p1", "l3", "-y"),
        (1, "p2", "l1", "z"), (1, "p2", "l2", "y"), (1, "p2", "l3", "-x"),
        (1, "r", "l2", "x*y^2"), (1, "r", "a", "-(x^3 - y*z)"),
        (1, "s", "l3", "x*y^2"), (1, "s", "a", "-(x^2*y - z^2)"),
        (1, "t", "l1", "x*y^2"), (1, "t", "a", "-(y^2 - x*z)"),
    ]
    entries = [(i, c, r, _negate_paren(p)) for i, c, r, p in entries]
    return _build(lat, modules, entries, ["y^2 - x*z", "x^3 - y*z", "x^2*y - z^2", "x*y^2"], None)


def _negate_paren(p: str) -> str:
    if p.startswith("-(") and p.endswith(")"):
        return (-_P(p[2:-1])).render()
    return p
