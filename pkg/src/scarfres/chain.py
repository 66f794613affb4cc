"""Free chain complexes over ``S = k[x_1..x_n]`` with labeled generators.

Two grading modes are supported.

* ``absolute``: generators carry Z^n degrees and stand for a whole
  Lambda-orbit of basis elements.  An entry ``(row, col, shift) -> p`` means
  ``d(e_col)`` contains ``p * e_{row + shift}``, where ``e_{row + shift}`` is
  the translate of ``e_row`` by the lattice vector ``shift``.  Homogeneity says
  every exponent of ``p`` equals ``deg col - deg row - shift``.
* ``class``: degrees are only meaningful modulo Lambda and all shifts are 0.

The quotient map ``quotient_pi`` forgets shifts, turning the first kind into
the second.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import zn
from .errors import PreconditionError, VerificationError
from .laurent import LaurentPolynomial, class_sums, in_lattice_ideal, monomial, strand_basis
from .linalg import DEFAULT_PRIME, dense_rank_mod_p, sparse_rank
from .zn import Point

ABSOLUTE = "absolute"
CLASS = "class"

EntryKey = tuple  # (row, col, shift)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: Point
    tag: str = ""


@dataclass
class FreeChainComplex:
    """``modules[i]`` lists the generators of ``F_i``; ``diffs[i]`` maps ``F_i -> F_{i-1}``."""

    n: int
    mode: str
    modules: list[list[Generator]]
    diffs: dict[int, dict[EntryKey, LaurentPolynomial]] = field(default_factory=dict)
    augmentation: list[LaurentPolynomial] | None = None
    aug_modulus: str | None = None  # None, or "lattice" for targets inside S/I_Lambda
    lattice: object | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.mode not in (ABSOLUTE, CLASS):
            raise ValueError(f"unknown mode {self.mode!r}")
        for mod in self.modules:
            names = [g.name for g in mod]
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate generator names in {names}")
        for i in range(1, len(self.modules)):
            self.diffs.setdefault(i, {})

    # --- shape -----------------------------------------------------------
    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def ranks(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.modules)

    def index_of(self, i: int, name: str) -> int:
        for k, g in enumerate(self.modules[i]):
            if g.name == name:
                return k
        raise KeyError(f"no generator {name!r} in module {i}")

    def add_entry(self, i: int, row: int, col: int, poly: LaurentPolynomial, shift: Point | None = None) -> None:
        shift = zn.zero(self.n) if shift is None else tuple(shift)
        if self.mode == CLASS and any(shift):
            raise ValueError("class-mode entries carry no lattice shift")
        key = (row, col, shift)
        d = self.diffs.setdefault(i, {})
        total = d.get(key, LaurentPolynomial.zero(self.n)) + poly
        if total.is_zero():
            d.pop(key, None)
        else:
            d[key] = total

    def column(self, i: int, col: int) -> list[tuple[int, Point, LaurentPolynomial]]:
        return sorted(
            ((r, h, p) for (r, c, h), p in self.diffs.get(i, {}).items() if c == col),
            key=lambda t: (t[0], t[1]),
        )

    def entry(self, i: int, row: int, col: int) -> LaurentPolynomial:
        """Entry with shifts summed out."""
        total = LaurentPolynomial.zero(self.n)
        for (r, c, _), p in self.diffs.get(i, {}).items():
            if r == row and c == col:
                total = total + p
        return total

    def entries(self):
        for i in sorted(self.diffs):
            for key in sorted(self.diffs[i]):
                yield i, key, self.diffs[i][key]

    def copy(self) -> "FreeChainComplex":
        return FreeChainComplex(
            n=self.n,
            mode=self.mode,
            modules=[list(m) for m in self.modules],
            diffs={i: dict(d) for i, d in self.diffs.items()},
            augmentation=None if self.augmentation is None else list(self.augmentation),
            aug_modulus=self.aug_modulus,
            lattice=self.lattice,
            notes=list(self.notes),
        )

    # --- checks ----------------------------------------------------------
    def homogeneity_errors(self) -> list[str]:
        errs = []
        lat = self.lattice
        if self.mode == CLASS and lat is None:
            return ["class-mode complex without a lattice"]

        def same(e: Point, target: Point) -> bool:
            if self.mode == ABSOLUTE:
                return e == target
            return lat.congruent(e, target)

        for i, (r, c, h), p in self.entries():
            target = zn.sub(zn.sub(self.modules[i][c].degree, self.modules[i - 1][r].degree), h)
            for e, _ in p.items():
                if not same(e, target):
                    errs.append(f"d{i}[{r},{c}] term exponent {e} does not match degree {target}")
        if self.augmentation is not None:
            for r, p in enumerate(self.augmentation):
                for e, _ in p.items():
                    if not same(e, self.modules[0][r].degree):
                        errs.append(f"augmentation[{r}] term exponent {e} is not of degree {self.modules[0][r].degree}")
        return errs

    def check_homogeneous(self) -> "FreeChainComplex":
        errs = self.homogeneity_errors()
        if errs:
            raise VerificationError("inhomogeneous complex: " + "; ".join(errs[:5]))
        return self


# --- dd = 0 ----------------------------------------------------------------


@dataclass
class DDReport:
    ok: bool
    failures: list[tuple[int, int, int, Point, LaurentPolynomial]]
    checked: int

    def __str__(self) -> str:
        if self.ok:
            return f"dd-zero: ok ({self.checked} composites)"
        lines = [f"dd-zero: FAIL ({len(self.failures)} nonzero composites)"]
        for i, r, c, h, p in self.failures[:10]:
            lines.append(f"  d{i}*d{i + 1} [{r},{c}] shift {h}: {p.render()}")
        return "\n".join(lines)


def compose(c: FreeChainComplex, i: int) -> dict[EntryKey, LaurentPolynomial]:
    """Entries of ``d_i o d_{i+1}`` (shifts add under composition)."""
    out: dict[EntryKey, LaurentPolynomial] = {}
    lower = c.diffs.get(i, {})
    by_col: dict[int, list] = {}
    for (r, m, h1), p in lower.items():
        by_col.setdefault(m, []).append((r, h1, p))
    for (m, col, h2), q in c.diffs.get(i + 1, {}).items():
        for r, h1, p in by_col.get(m, []):
            key = (r, col, zn.add(h1, h2))
            out[key] = out.get(key, LaurentPolynomial.zero(c.n)) + p * q
    return {k: v for k, v in out.items() if not v.is_zero()}


def augmented_column(c: FreeChainComplex, col: int) -> LaurentPolynomial:
    """Image of ``d_1(e_col)`` under the augmentation."""
    total = LaurentPolynomial.zero(c.n)
    for r, h, p in c.column(1, col):
        img = c.augmentation[r]
        if c.mode == ABSOLUTE:
            img = img.shift(h)
        total = total + img * p
    return total


def verify_dd_zero(c: FreeChainComplex) -> DDReport:
    failures = []
    checked = 0
    if c.augmentation is not None and c.length >= 1:
        for col in range(len(c.modules[1])):
            checked += 1
            v = augmented_column(c, col)
            bad = (not in_lattice_ideal(v, c.lattice)) if c.aug_modulus == "lattice" else not v.is_zero()
            if bad:
                failures.append((0, 0, col, zn.zero(c.n), v))
    for i in range(1, c.length):
        comp = compose(c, i)
        checked += len(c.modules[i + 1])
        for (r, col, h), p in sorted(comp.items(), key=lambda t: t[0]):
            failures.append((i, r, col, h, p))
    return DDReport(ok=not failures, failures=failures, checked=checked)


# --- constructions ---------------------------------------------------------


def _gen_name(d: int, i: int) -> str:
    return {0: "v", 1: "e", 2: "f"}.get(d, f"c{d}_") + str(i)


def cellular_differential(cx) -> FreeChainComplex:
    """Absolute-mode cellular complex of a Scarf complex (one generator per face orbit)."""
    lat = cx.A.lattice
    n = cx.A.n
    modules = [
        [Generator(_gen_name(d, i), f.label, "face") for i, f in enumerate(faces)]
        for d, faces in enumerate(cx.dims)
    ]
    c = FreeChainComplex(n=n, mode=ABSOLUTE, modules=modules, lattice=lat)
    for (d, i), incs in sorted(cx.incidence.items()):
        sigma = cx.dims[d][i]
        for inc in incs:
            tau = cx.dims[d - 1][inc.target]
            e = zn.sub(zn.sub(sigma.label, tau.label), inc.shift)
            if not zn.is_nonnegative(e):
                raise VerificationError(
                    f"negative exponent {e} between face {sigma.vertices} and facet {inc.j}"
                )
            c.add_entry(d, inc.target, i, monomial(e, inc.sign), inc.shift)
    c.augmentation = [monomial(f.label) for f in cx.dims[0]]
    return c.check_homogeneous()


def taylor_complex(points: Sequence[Sequence[int]]) -> FreeChainComplex:
    """Taylor complex on a finite list of exponent vectors (all nonempty subsets)."""
    pts = [zn.point(p) for p in points]
    if not pts:
        raise PreconditionError("Taylor complex needs at least one monomial")
    n = len(pts[0])
    subsets: list[list[tuple[int, ...]]] = [
        list(itertools.combinations(range(len(pts)), k + 1)) for k in range(len(pts))
    ]
    label = {s: zn.join_all([pts[i] for i in s]) for level in subsets for s in level}
    modules = [
        [Generator("t" + "_".join(map(str, s)), label[s], "subset") for s in level] for level in subsets
    ]
    c = FreeChainComplex(n=n, mode=ABSOLUTE, modules=modules)
    for d in range(1, len(subsets)):
        pos = {s: k for k, s in enumerate(subsets[d - 1])}
        for col, s in enumerate(subsets[d]):
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                e = zn.sub(label[s], label[face])
                c.add_entry(d, pos[face], col, monomial(e, (-1) ** j))
    c.augmentation = [monomial(label[s]) for s in subsets[0]]
    return c.check_homogeneous()


def quotient_pi(c: FreeChainComplex, lat=None) -> FreeChainComplex:
    """Forget lattice shifts and regrade to classes modulo Lambda."""
    lat = lat if lat is not None else c.lattice
    if lat is None:
        raise PreconditionError("quotient needs a lattice")
    if c.mode == CLASS:
        out = c.copy()
        out.lattice = lat
        return out.check_homogeneous()
    if c.homogeneity_errors():
        raise PreconditionError("quotient_pi needs a homogeneous absolute-mode complex")
    out = FreeChainComplex(
        n=c.n,
        mode=CLASS,
        modules=[list(m) for m in c.modules],
        augmentation=None if c.augmentation is None else list(c.augmentation),
        aug_modulus="lattice" if c.augmentation is not None else None,
        lattice=lat,
        notes=list(c.notes),
    )
    for i, (r, col, _), p in c.entries():
        out.add_entry(i, r, col, p)
    return out.check_homogeneous()


# --- minimality ------------------------------------------------------------


def minimality_violations(c: FreeChainComplex) -> list[tuple[int, int, int, Fraction]]:
    return [
        (i, r, col, p.constant_term())
        for i, (r, col, _), p in c.entries()
        if p.constant_term() != 0
    ]


def check_minimality(c: FreeChainComplex) -> bool:
    """No differential entry has a nonzero constant term."""
    return not minimality_violations(c)


# --- strands ---------------------------------------------------------------


def _columns_by(c: FreeChainComplex, i: int) -> dict[int, list[tuple[int, LaurentPolynomial]]]:
    out: dict[int, list] = {}
    for (r, col, _), p in c.diffs.get(i, {}).items():
        out.setdefault(col, []).append((r, p))
    return out


def strand_dimension(c: FreeChainComplex, i: int, cls: Point) -> int:
    return sum(len(strand_basis(g.degree, cls, c.lattice)) for g in c.modules[i])


def strand_matrix(c: FreeChainComplex, i: int, cls: Point) -> tuple[list[dict], int]:
    """Columns (sparse dicts) of ``d_i`` restricted to the strand of ``cls``."""
    lat = c.lattice
    cols = _columns_by(c, i)
    row_index: dict[tuple[int, Point], int] = {}
    for r, g in enumerate(c.modules[i - 1]):
        for m in strand_basis(g.degree, cls, lat):
            row_index[(r, m)] = len(row_index)
    out = []
    for k, g in enumerate(c.modules[i]):
        for m in strand_basis(g.degree, cls, lat):
            col: dict[int, Fraction] = {}
            for r, p in cols.get(k, []):
                for e, v in p.items():
                    key = (r, zn.add(e, m))
                    if key not in row_index:
                        raise VerificationError(
                            f"d{i} entry {p.render()} leaves the strand (exponent {key[1]})"
                        )
                    idx = row_index[key]
                    col[idx] = col.get(idx, 0) + v
            out.append({a: b for a, b in col.items() if b})
    return out, len(row_index)


def _rank(columns: list[dict], nrows: int, prime: int | None) -> int:
    if not columns or nrows == 0:
        return 0
    if prime is None:
        return sparse_rank(columns)
    dense = []
    for col in columns:
        den = lcm(*(Fraction(v).denominator for v in col.values())) if col else 1
        row = [0] * nrows
        for a, v in col.items():
            w = Fraction(v) * den
            row[a] = w.numerator
        dense.append(row)
    return dense_rank_mod_p(dense, prime)


def strand_homology(
    c: FreeChainComplex, target_class: Sequence[int], lat=None, prime: int | None = DEFAULT_PRIME
) -> list[int]:
    """``dim ker d_i - rank d_{i+1}`` on the strand of ``target_class`` for ``i = 1..length``.

    A modular pass runs first; modular rank never exceeds rational rank, so a
    zero there certifies zero over Q.  Nonzero results are recomputed over Q.
    """
    if lat is not None and c.lattice is None:
        c.lattice = lat
    if c.mode != CLASS:
        raise PreconditionError("strand homology needs a class-mode complex (apply quotient_pi)")
    cls = zn.point(target_class, c.n)
    cache: dict[tuple[int, bool], int] = {}

    def rank(i: int, exact: bool) -> int:
        if i < 1 or i > c.length:
            return 0
        key = (i, exact)
        if key not in cache:
            cols, nrows = strand_matrix(c, i, cls)
            cache[key] = _rank(cols, nrows, None if exact else prime)
        return cache[key]

    out = []
    for i in range(1, c.length + 1):
        dim = strand_dimension(c, i, cls)
        if prime is not None:
            h = dim - rank(i, False) - rank(i + 1, False)
            if h == 0:
                out.append(0)
                continue
        out.append(dim - rank(i, True) - rank(i + 1, True))
    return out


def ideal_strand_dimension(c: FreeChainComplex, cls: Point) -> int:
    """Dimension of the augmentation image in the strand, from a spanning set."""
    lat = c.lattice
    gens = c.augmentation or []
    if c.aug_modulus == "lattice":
        # S/I_Lambda has at most one dimension per class
        for g, p in zip(c.modules[0], gens):
            for m in strand_basis(g.degree, cls, lat):
                if class_sums(p.shift(m), lat):
                    return 1
        return 0
    basis = {e: k for k, e in enumerate(lat.fiber_points(cls))}
    cols = []
    for g, p in zip(c.modules[0], gens):
        for m in strand_basis(g.degree, cls, lat):
            col = {}
            for e, v in p.shift(m).items():
                if e not in basis:
                    raise VerificationError(f"augmentation term {e} outside the strand of {cls}")
                col[basis[e]] = v
            cols.append(col)
    return sparse_rank(cols)


def euler_defect(c: FreeChainComplex, cls: Point) -> int:
    """``sum (-1)^i dim F_i - dim I`` on one strand (zero for a resolution)."""
    alt = sum((-1) ** i * strand_dimension(c, i, cls) for i in range(c.length + 1))
    return alt - ideal_strand_dimension(c, cls)


def default_classes(c: FreeChainComplex, factor: int = 3) -> list[Point]:
    """Classes of grading value up to ``factor`` times the largest generator value."""
    lat = c.lattice
    top = max((lat.value(g.degree) for m in c.modules for g in m), default=0)
    out = []
    for w in range(factor * max(top, 0) + 1):
        out.extend(lat.class_representatives(w))
    return out


@dataclass
class StrandReport:
    ok: bool
    classes: int
    homology_failures: list[tuple[Point, list[int]]]
    euler_failures: list[tuple[Point, int]]
    max_value: int

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAIL"
        s = (
            f"strand homology: {status} ({self.classes} classes, grading value <= {self.max_value}, "
            f"{len(self.homology_failures)} homology failures, {len(self.euler_failures)} euler failures)"
        )
        for cls, h in self.homology_failures[:5]:
            s += f"\n  class {cls}: homology {h}"
        for cls, d in self.euler_failures[:5]:
            s += f"\n  class {cls}: euler defect {d}"
        return s


def verify_strands(
    c: FreeChainComplex,
    classes: Iterable[Point] | None = None,
    factor: int = 3,
    prime: int | None = DEFAULT_PRIME,
) -> StrandReport:
    if c.mode != CLASS:
        raise PreconditionError("strand verification needs a class-mode complex")
    cls_list = list(classes) if classes is not None else default_classes(c, factor)
    hom_fail, eul_fail = [], []
    for cls in cls_list:
        h = strand_homology(c, cls, prime=prime)
        if any(h):
            hom_fail.append((cls, h))
        if c.augmentation is not None:
            d = euler_defect(c, cls)
            if d:
                eul_fail.append((cls, d))
    max_value = max((c.lattice.value(x) for x in cls_list), default=-1)
    return StrandReport(
        ok=not hom_fail and not eul_fail,
        classes=len(cls_list),
        homology_failures=hom_fail,
        euler_failures=eul_fail,
        max_value=max_value,
    )
