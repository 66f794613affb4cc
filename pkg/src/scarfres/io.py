"""Text formats: problem files and chain-complex serialization.

Problem files are ``key = value`` lines; ``#`` starts a comment::

    n = 3
    basis = -1 2 -1; 3 -1 -1
    reps = 1 2 0
    t = 25

Complexes are line oriented and canonical, so serialize(parse(s)) == s for
any s produced by ``serialize_complex``::

    complex 1
    n 3
    mode class
    lattice -1,2,-1; 3,-1,-1
    augmod lattice
    module 0 e0 0,0,0 ring
    aug e0 1
    diff 1 e0 l1 -x*z + y^2
    diff 2 e3 f2 -z @ -1,2,-1
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import FreeChainComplex, Generator
from .errors import ScarfresError
from .lambda_set import LambdaSet
from .lattice import AntichainLattice
from .laurent import PolynomialSyntaxError, parse_polynomial

FORMAT_VERSION = 1


class ParseError(ScarfresError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ProblemSpec:
    n: int
    basis: list[tuple[int, ...]]
    reps: list[tuple[int, ...]]
    window: int | None = None
    classes: int | None = None
    t: Fraction = Fraction(25)
    prime: int | None = None

    def lattice(self) -> AntichainLattice:
        return AntichainLattice(self.basis, self.n)

    def lambda_set(self) -> LambdaSet:
        return LambdaSet(self.lattice(), self.reps)


_KEYS = {"n", "basis", "reps", "window", "classes", "t", "prime"}


def _int_rows(value: str, lineno: int, col0: int, source: str) -> list[tuple[int, ...]]:
    rows = []
    offset = col0
    for chunk in value.split(";"):
        toks = chunk.replace(",", " ").split()
        if toks:
            try:
                rows.append(tuple(int(x) for x in toks))
            except ValueError:
                bad = next(x for x in toks if not _is_int(x))
                raise ParseError(f"expected an integer, got {bad!r}", lineno, offset + chunk.find(bad) + 1, source)
        offset += len(chunk) + 1
    return rows


def _is_int(s: str) -> bool:
    try:
        int(s)
        return True
    except ValueError:
        return False


def parse_problem(text: str, source: str = "<input>") -> ProblemSpec:
    vals: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'key = value'", lineno, col, source)
        key, value = line.split("=", 1)
        k = key.strip()
        if k not in _KEYS:
            raise ParseError(f"unknown key {k!r}", lineno, line.find(k) + 1, source)
        if k in vals:
            raise ParseError(f"duplicate key {k!r}", lineno, line.find(k) + 1, source)
        vals[k] = (value, lineno, len(key) + 1)  # 0-based offset of the value
    for req in ("basis", "reps"):
        if req not in vals:
            raise ParseError(f"missing required key {req!r}", len(text.splitlines()) + 1, 1, source)

    def scalar(k: str, conv):
        if k not in vals:
            return None
        v, ln, col = vals[k]
        try:
            return conv(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value for {k}: {v.strip()!r}", ln, col + len(v) - len(v.lstrip()) + 1, source)

    basis = _int_rows(*vals["basis"], source)
    reps = _int_rows(*vals["reps"], source)
    n = scalar("n", int)
    dims = {len(r) for r in basis + reps}
    if n is None:
        if len(dims) != 1:
            raise ParseError("cannot infer n from rows of different lengths", vals["reps"][1], 1, source)
        n = dims.pop()
    for k in ("basis", "reps"):
        v, ln, col = vals[k]
        for r in _int_rows(v, ln, col, source):
            if len(r) != n:
                raise ParseError(
                    f"{k} row {r} has {len(r)} entries, expected {n}", ln, col + len(v) - len(v.lstrip()) + 1, source
                )
    t = scalar("t", Fraction)
    return ProblemSpec(
        n=n,
        basis=basis,
        reps=reps,
        window=scalar("window", int),
        classes=scalar("classes", int),
        t=t if t is not None else Fraction(25),
        prime=scalar("prime", int),
    )


def format_problem(spec: ProblemSpec) -> str:
    rows = lambda rs: "; ".join(" ".join(map(str, r)) for r in rs)
    lines = [f"n = {spec.n}", f"basis = {rows(spec.basis)}", f"reps = {rows(spec.reps)}"]
    if spec.window is not None:
        lines.append(f"window = {spec.window}")
    if spec.classes is not None:
        lines.append(f"classes = {spec.classes}")
    lines.append(f"t = {spec.t}")
    if spec.prime is not None:
        lines.append(f"prime = {spec.prime}")
    return "\n".join(lines) + "\n"


# --- complexes -------------------------------------------------------------


def _vec(v) -> str:
    return ",".join(map(str, v))


def serialize_complex(c: FreeChainComplex) -> str:
    lines = [f"complex {FORMAT_VERSION}", f"n {c.n}", f"mode {c.mode}"]
    if c.lattice is not None:
        lines.append("lattice " + "; ".join(_vec(b) for b in c.lattice.basis))
    lines.append(f"augmod {c.aug_modulus or 'none'}")
    for i, mod in enumerate(c.modules):
        for g in mod:
            lines.append(f"module {i} {g.name} {_vec(g.degree)} {g.tag or '-'}")
    if c.augmentation is not None:
        for g, p in zip(c.modules[0], c.augmentation):
            lines.append(f"aug {g.name} {p.render()}")
    for i, (r, col, h), p in c.entries():
        line = f"diff {i} {c.modules[i - 1][r].name} {c.modules[i][col].name} {p.render()}"
        if any(h):
            line += f" @ {_vec(h)}"
        lines.append(line)
    lines.append("end")
    return "\n".join(lines) + "\n"


def _parse_vec(s: str, ln: int, col: int, source: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise ParseError(f"bad integer vector {s!r}", ln, col, source)


def parse_complex(text: str, source: str = "<complex>") -> FreeChainComplex:
    n = None
    mode = None
    lattice = None
    augmod = None
    modules: list[list[Generator]] = []
    aug: dict[str, tuple[str, int]] = {}
    diffs: list[tuple[int, str, str, str, str | None, int]] = []
    seen_header = False
    ended = False
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ended:
            raise ParseError("content after 'end'", ln, 1, source)
        word, _, rest = line.partition(" ")
        if not seen_header:
            if word != "complex":
                raise ParseError("expected 'complex <version>' header", ln, 1, source)
            if rest.strip() != str(FORMAT_VERSION):
                raise ParseError(f"unsupported format version {rest.strip()!r}", ln, 9, source)
            seen_header = True
            continue
        if word == "n":
            n = int(rest)
        elif word == "mode":
            mode = rest.strip()
        elif word == "lattice":
            rows = [r.strip() for r in rest.split(";") if r.strip()]
            basis = [_parse_vec(r, ln, 9, source) for r in rows]
            lattice = AntichainLattice(basis, n)
        elif word == "augmod":
            augmod = None if rest.strip() == "none" else rest.strip()
        elif word == "module":
            parts = rest.split()
            if len(parts) != 4:
                raise ParseError("expected 'module <i> <name> <degree> <tag>'", ln, 1, source)
            i = int(parts[0])
            while len(modules) <= i:
                modules.append([])
            tag = "" if parts[3] == "-" else parts[3]
            modules[i].append(Generator(parts[1], _parse_vec(parts[2], ln, 1, source), tag))
        elif word == "aug":
            name, _, poly = rest.partition(" ")
            aug[name] = (poly, ln)
        elif word == "diff":
            parts = rest.split(" ", 3)
            if len(parts) != 4:
                raise ParseError("expected 'diff <i> <row> <col> <poly> [@ shift]'", ln, 1, source)
            i, row, col, poly = parts
            shift = None
            if " @ " in poly:
                poly, shift = poly.rsplit(" @ ", 1)
            diffs.append((int(i), row, col, poly, shift, ln))
        elif word == "end":
            ended = True
        else:
            raise ParseError(f"unknown record {word!r}", ln, 1, source)
    if not seen_header:
        raise ParseError("empty complex file", 1, 1, source)
    if n is None or mode is None:
        raise ParseError("missing 'n' or 'mode' record", 1, 1, source)
    c = FreeChainComplex(n=n, mode=mode, modules=modules, lattice=lattice, aug_modulus=augmod)
    names = [{g.name: k for k, g in enumerate(m)} for m in modules]

    def poly_of(s: str, ln: int):
        try:
            return parse_polynomial(s, n)
        except PolynomialSyntaxError as exc:
            raise ParseError(str(exc), ln, exc.column + 1, source)

    if aug:
        if not modules:
            raise ParseError("augmentation without modules", 1, 1, source)
        c.augmentation = []
        for g in modules[0]:
            if g.name not in aug:
                raise ParseError(f"no augmentation for {g.name}", 1, 1, source)
            c.augmentation.append(poly_of(*aug[g.name]))
    for i, row, col, poly, shift, ln in diffs:
        try:
            r, k = names[i - 1][row], names[i][col]
        except (KeyError, IndexError):
            raise ParseError(f"unknown generator in diff {i} {row} {col}", ln, 1, source)
        h = _parse_vec(shift, ln, 1, source) if shift else None
        c.add_entry(i, r, k, poly_of(poly, ln), h)
    return c
