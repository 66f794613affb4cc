"""Resolutions of ``I_Lambda + I_{A0}`` in three variables by horseshoe lifting.

Pieces, bottom up:

* ``lattice_resolution_z3``: the length-two resolution of ``S/I_Lambda`` for a
  generic codimension-1 lattice, with the three Markov elements normalized so
  that each has exactly one positive coordinate, at distinct positions, and
  they sum to zero.
* ``markov_path_decompose``: for ``g`` in Lambda, polynomials ``c_i`` with
  ``sum c_i (X^{l_i+} - X^{l_i-}) = X^{g+} - X^{g-}``, read off a shortest
  fiber path from ``g+`` to ``g-``.
* ``lift_edge_d0``: the lifted image of an edge generator.
* ``face_lifting_term`` / ``solve_b``: the correction needed when a face's
  facet is a translate of its representative edge.
* ``assemble_horseshoe``: everything glued into one class-mode complex.
"""
from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from . import zn
from .chain import CLASS, FreeChainComplex, Generator, check_minimality, verify_dd_zero
from .errors import PreconditionError, VerificationError
from .lambda_set import LambdaSet
from .lattice import AntichainLattice, is_generic, markov_basis
from .laurent import LaurentPolynomial, binomial_of, monomial
from .scarf import ScarfComplex, ScarfFace, build_scarf
from .zn import Point

Column = list  # list[LaurentPolynomial], one entry per e_{lambda_i}

_RESOLUTIONS: "weakref.WeakKeyDictionary[AntichainLattice, LatticeResolutionZ3]" = weakref.WeakKeyDictionary()


def _zero() -> LaurentPolynomial:
    return LaurentPolynomial.zero(3)


def _x(i: int, k: int) -> LaurentPolynomial:
    e = [0, 0, 0]
    e[i] = k
    return monomial(e)


def normalize_z3(elements: Sequence[Point]) -> list[Point]:
    """Sign choices making each element have one positive coordinate, at
    distinct positions, with zero sum.  Order is preserved."""
    if len(elements) != 3:
        raise PreconditionError(f"expected 3 Markov elements in Z^3, got {len(elements)}")
    for signs in product((1, -1), repeat=3):
        cand = [zn.scale(s, v) for s, v in zip(signs, elements)]
        pos = [[i for i in range(3) if v[i] > 0] for v in cand]
        if any(len(p) != 1 for p in pos):
            continue
        if len({p[0] for p in pos}) != 3:
            continue
        if any(sum(v[i] for v in cand) for i in range(3)):
            continue
        return cand
    raise VerificationError(f"Markov elements {list(elements)} admit no zero-sum sign normalization")


@dataclass
class LatticeResolutionZ3:
    lattice: AntichainLattice
    markov: list[Point]
    binomials: list[LaurentPolynomial]
    syzygies: list[Column]
    positive_index: list[int]  # positive_index[i] = position of the positive coordinate of lambda_i
    paths: dict = field(default_factory=dict, repr=False)

    def d1_column(self, j: int) -> Column:
        return self.syzygies[j]

    def degree(self, j: int) -> Point:
        """A representative degree of the syzygy ``p_j``."""
        for i, p in enumerate(self.syzygies[j]):
            if not p.is_zero():
                e, _ = p.leading()
                return zn.add(e, zn.pos_part(self.markov[i]))
        raise VerificationError("zero syzygy column")

    def augment(self, col: Column) -> LaurentPolynomial:
        total = _zero()
        for c, f in zip(col, self.binomials):
            total = total + c * f
        return total

    def complex(self) -> FreeChainComplex:
        """Class-mode resolution ``S^2 -> S^3 -> S -> S/I_Lambda``."""
        lat = self.lattice
        mods = [
            [Generator("e0", zn.zero(3), "ring")],
            [Generator(f"l{i + 1}", zn.pos_part(m), "lattice") for i, m in enumerate(self.markov)],
            [Generator(f"p{j + 1}", self.degree(j), "lattice") for j in range(2)],
        ]
        c = FreeChainComplex(n=3, mode=CLASS, modules=mods, lattice=lat)
        for i, f in enumerate(self.binomials):
            c.add_entry(1, 0, i, f)
        for j, col in enumerate(self.syzygies):
            for i, p in enumerate(col):
                if not p.is_zero():
                    c.add_entry(2, i, j, p)
        c.augmentation = [LaurentPolynomial.constant(3, 1)]
        c.aug_modulus = "lattice"
        return c.check_homogeneous()


def lattice_resolution_z3(lat: AntichainLattice) -> LatticeResolutionZ3:
    """Explicit minimal resolution of ``S/I_Lambda`` for generic codim-1 Lambda in Z^3."""
    if lat.n != 3 or lat.codim != 1:
        raise PreconditionError("lattice resolution needs a codimension-1 lattice in Z^3")
    if not is_generic(lat):
        raise PreconditionError(f"lattice {lat.basis} is not generic")
    cached = _RESOLUTIONS.get(lat)
    if cached is not None:
        return cached
    mb = markov_basis(lat)
    lam = normalize_z3(mb.elements)
    pos = [next(i for i in range(3) if v[i] > 0) for v in lam]
    # name the elements by the coordinate that is positive: a (x), b (y), c (z)
    by_pos = {p: k for k, p in enumerate(pos)}
    ia, ib, ic = by_pos[0], by_pos[1], by_pos[2]
    a, b, c = lam[ia], lam[ib], lam[ic]
    a2, a3 = -a[1], -a[2]
    b1, b3 = -b[0], -b[2]
    c1, c2 = -c[0], -c[1]
    p1 = [_zero(), _zero(), _zero()]
    p2 = [_zero(), _zero(), _zero()]
    p1[ib], p1[ia], p1[ic] = _x(0, c1), _x(2, b3), _x(1, a2)
    p2[ib], p2[ia], p2[ic] = _x(2, a3), _x(1, c2), _x(0, b1)
    res = LatticeResolutionZ3(
        lattice=lat,
        markov=lam,
        binomials=[binomial_of(v) for v in lam],
        syzygies=[p1, p2],
        positive_index=pos,
    )
    for j in range(2):
        if not res.augment(res.syzygies[j]).is_zero():
            raise VerificationError(f"syzygy p{j + 1} does not compose to zero")
    _verify_syzygy_strands(res)
    _RESOLUTIONS[lat] = res
    return res


def _verify_syzygy_strands(res: LatticeResolutionZ3) -> None:
    """In each syzygy's own strand, the kernel of ``d_1`` is spanned by the two syzygies."""
    from .chain import strand_homology

    cx = res.complex()
    for j in range(2):
        h = strand_homology(cx, res.degree(j))
        if any(h):
            raise VerificationError(f"syzygy strand of p{j + 1} is not exact: {h}")


# --- Markov path decompositions ------------------------------------------


@dataclass
class PathDecomposition:
    target: Point
    coeffs: list[LaurentPolynomial]
    path: list[Point] = field(default_factory=list)

    def verify(self, res: LatticeResolutionZ3) -> bool:
        return res.augment(self.coeffs) == binomial_of(self.target)


def markov_path_decompose(res: LatticeResolutionZ3, g: Sequence[int]) -> PathDecomposition:
    """Shortest fiber path ``g+ -> g-``; moves tried in order ``-l1, -l2, -l3, +l1, +l2, +l3``."""
    g = zn.point(g, 3)
    lat = res.lattice
    if not lat.contains(g):
        raise PreconditionError(f"{g} is not in the lattice")
    cache = res.paths
    if g in cache:
        return cache[g]
    start, goal = zn.pos_neg_parts(g)
    moves = [(i, -1) for i in range(3)] + [(i, 1) for i in range(3)]
    prev: dict[Point, tuple[Point, int, int] | None] = {start: None}
    todo = deque([start])
    while todo and goal not in prev:
        v = todo.popleft()
        for i, s in moves:
            w = zn.add(v, zn.scale(s, res.markov[i]))
            if w not in prev and zn.is_nonnegative(w):
                prev[w] = (v, i, s)
                todo.append(w)
    if goal not in prev:
        raise VerificationError(f"no Markov path from {start} to {goal}")
    coeffs = [_zero(), _zero(), _zero()]
    path = [goal]
    w = goal
    while prev[w] is not None:
        v, i, s = prev[w]
        lam = res.markov[i]
        if s < 0:  # v -> v - lam
            coeffs[i] = coeffs[i] + monomial(zn.sub(v, zn.pos_part(lam)))
        else:  # v -> v + lam
            coeffs[i] = coeffs[i] - monomial(zn.sub(v, zn.neg_part(lam)))
        w = v
        path.append(w)
    dec = PathDecomposition(target=g, coeffs=coeffs, path=path[::-1])
    if not dec.verify(res):
        raise VerificationError(f"path decomposition of {g} fails its identity")
    cache[g] = dec
    return dec


# --- edges ----------------------------------------------------------------


@dataclass
class EdgeLift:
    """``d(e_edge) = mono_C e_C - mono_B e_B + sum lattice[i] e_{lambda_i}``."""

    B: int
    C: int
    mono_B: LaurentPolynomial
    mono_C: LaurentPolynomial
    lattice: Column


def lift_edge_d0(A: LambdaSet, res: LatticeResolutionZ3, edge: ScarfFace) -> EdgeLift:
    """Lifted image of an edge ``{B + f, C + g}`` (vertices in sorted order)."""
    v0, v1 = edge.vertices
    B, f = A.canonical_rep(v0)
    C, g = A.canonical_rep(v1)
    S = zn.join(v0, v1)
    ef = markov_path_decompose(res, f).coeffs
    eg = markov_path_decompose(res, g).coeffs
    mg = monomial(zn.sub(S, zn.pos_part(g)))
    mf = monomial(zn.sub(S, zn.pos_part(f)))
    lat_col = [mg * eg[i] - mf * ef[i] for i in range(3)]
    lift = EdgeLift(
        B=A.reps.index(B),
        C=A.reps.index(C),
        mono_B=monomial(zn.sub(S, v0)),
        mono_C=monomial(zn.sub(S, v1)),
        lattice=lat_col,
    )
    image = lift.mono_C * monomial(C) - lift.mono_B * monomial(B) + res.augment(lat_col)
    if not image.is_zero():
        raise VerificationError(f"lifted edge {edge.vertices} does not map to zero: {image.render()}")
    return lift


# --- faces ----------------------------------------------------------------


def face_lifting_term(
    A: LambdaSet, res: LatticeResolutionZ3, rep_edge: ScarfFace, h: Point
) -> Column:
    """``d(e_{t^r}) - d(e_t)`` for the translate ``t = t^r + h`` (lattice part only).

    With ``t = {B + f, C + g}`` and ``S = vt``:
    ``sum_i (c_i X^{vt^r - (g-h)+} - c'_i X^{vt - g+} - d_i X^{vt^r - (f-h)+} + d'_i X^{vt - f+}) e_i``
    where ``c, c', d, d'`` decompose ``g - h, g, f - h, f``.
    """
    if not any(h):
        return [_zero(), _zero(), _zero()]
    t = rep_edge.translate(h)
    v0, v1 = t.vertices
    _, f = A.canonical_rep(v0)
    _, g = A.canonical_rep(v1)
    St, Sr = t.label, rep_edge.label
    c = markov_path_decompose(res, zn.sub(g, h)).coeffs
    cp = markov_path_decompose(res, g).coeffs
    d = markov_path_decompose(res, zn.sub(f, h)).coeffs
    dp = markov_path_decompose(res, f).coeffs
    m_c = monomial(zn.sub(Sr, zn.pos_part(zn.sub(g, h))))
    m_cp = monomial(zn.sub(St, zn.pos_part(g)))
    m_d = monomial(zn.sub(Sr, zn.pos_part(zn.sub(f, h))))
    m_dp = monomial(zn.sub(St, zn.pos_part(f)))
    col = [c[i] * m_c - cp[i] * m_cp - d[i] * m_d + dp[i] * m_dp for i in range(3)]
    # cross-check against the direct difference of the two lifted columns
    direct_r = lift_edge_d0(A, res, rep_edge).lattice
    direct_t = lift_edge_d0(A, res, t).lattice
    if any(col[i] != direct_r[i] - direct_t[i] for i in range(3)):
        raise VerificationError(f"lifting term of {t.vertices} disagrees with the lifted edges")
    return col


def solve_b(res: LatticeResolutionZ3, L: Column) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """``(b1, b2)`` with ``L = b1 d(p1) + b2 d(p2)``.

    The syzygy columns are independent over the fraction field, so the
    solution is unique; Cramer's rule on a nonzero 2x2 minor gives it as an
    exact quotient by a binomial (or monomial) minor.
    """
    P1, P2 = res.syzygies
    if all(x.is_zero() for x in L):
        return _zero(), _zero()
    for i, j in combinations(range(3), 2):
        minor = P1[i] * P2[j] - P1[j] * P2[i]
        if minor.is_zero():
            continue
        try:
            b1 = (L[i] * P2[j] - L[j] * P2[i]).exact_quotient(minor)
            b2 = (P1[i] * L[j] - P1[j] * L[i]).exact_quotient(minor)
        except ArithmeticError as exc:
            raise VerificationError(f"lifting term is not in the syzygy span: {exc}")
        if all(b1 * P1[k] + b2 * P2[k] == L[k] for k in range(3)):
            return b1, b2
        raise VerificationError("lifting term is not in the syzygy span")
    raise VerificationError("syzygy columns are dependent")


@dataclass
class FaceLift:
    face: int
    facet: int
    shift: Point
    term: Column
    b: tuple[LaurentPolynomial, LaurentPolynomial]


@dataclass
class LiftedComplex:
    complex: FreeChainComplex
    scarf: ScarfComplex
    resolution: LatticeResolutionZ3
    face_lifts: list[FaceLift]
    notes: list[str] = field(default_factory=list)

    @property
    def ranks(self) -> tuple[int, ...]:
        return self.complex.ranks()

    def is_minimal(self) -> bool:
        return check_minimality(self.complex)


def check_markov_containment(A: LambdaSet, res: LatticeResolutionZ3) -> None:
    """Every ``alpha`` in ``A0`` lies below neither ``l+`` nor ``l-`` of any Markov element."""
    for a in A.reps:
        for lam in res.markov:
            for part in zn.pos_neg_parts(lam):
                if zn.leq(a, part):
                    raise PreconditionError(
                        f"representative {a} divides X^{part} of Markov element {lam}"
                    )


def assemble_horseshoe(A: LambdaSet) -> LiftedComplex:
    """Class-mode resolution of ``I_Lambda + I_{A0}`` (not S modulo it)."""
    lat = A.lattice
    if lat.n != 3:
        raise PreconditionError("lifting is implemented for Z^3 only")
    if any(not zn.is_nonnegative(a) for a in A.reps):
        raise PreconditionError(f"representatives must be nonnegative: {A.reps}")
    if A.reps == ((0, 0, 0),):
        raise PreconditionError("A0 = {0} gives the unit ideal")
    res = lattice_resolution_z3(lat)
    check_markov_containment(A, res)
    cx = build_scarf(A)
    if len(cx.dims[0]) != len(A.reps):
        covered = sorted(set(A.reps) - {v.vertices[0] for v in cx.dims[0]})
        raise PreconditionError(f"representatives {covered} are not minimal generators of I_A")
    edges = cx.dims[1] if len(cx.dims) > 1 else []
    faces = cx.dims[2] if len(cx.dims) > 2 else []
    mods = [
        [Generator(f"l{i + 1}", zn.pos_part(m), "lattice") for i, m in enumerate(res.markov)]
        + [Generator(f"a{k + 1}", a, "monomial") for k, a in enumerate(A.reps)],
        [Generator(f"p{j + 1}", res.degree(j), "lattice") for j in range(2)]
        + [Generator(f"e{k + 1}", e.label, "edge") for k, e in enumerate(edges)],
        [Generator(f"f{k + 1}", f.label, "face") for k, f in enumerate(faces)],
    ]
    while mods and not mods[-1]:
        mods.pop()
    c = FreeChainComplex(n=3, mode=CLASS, modules=mods, lattice=lat)
    c.augmentation = list(res.binomials) + [monomial(a) for a in A.reps]
    na = 3
    for j, col in enumerate(res.syzygies):
        for i, p in enumerate(col):
            c.add_entry(1, i, j, p)
    for k, e in enumerate(edges):
        lift = lift_edge_d0(A, res, e)
        col = 2 + k
        c.add_entry(1, na + lift.C, col, lift.mono_C)
        c.add_entry(1, na + lift.B, col, -lift.mono_B)
        for i, p in enumerate(lift.lattice):
            c.add_entry(1, i, col, p)
    face_lifts: list[FaceLift] = []
    for k, f in enumerate(faces):
        for inc in cx.incidence[(2, k)]:
            tau = edges[inc.target]
            coeff = monomial(zn.sub(zn.sub(f.label, tau.label), inc.shift), inc.sign)
            c.add_entry(2, 2 + inc.target, k, coeff)
            if any(inc.shift):
                L = face_lifting_term(A, res, tau, inc.shift)
                b = solve_b(res, L)
                face_lifts.append(FaceLift(face=k, facet=inc.j, shift=inc.shift, term=L, b=b))
                for j in range(2):
                    if not b[j].is_zero():
                        c.add_entry(2, j, k, -(coeff * b[j]))
    for i, key, p in c.entries():
        if not p.is_polynomial():
            raise VerificationError(f"entry d{i}{key[:2]} = {p.render()} is not a polynomial")
    c.check_homogeneous()
    rep = verify_dd_zero(c)
    if not rep.ok:
        raise VerificationError(str(rep))
    return LiftedComplex(complex=c, scarf=cx, resolution=res, face_lifts=face_lifts)
