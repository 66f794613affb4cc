"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 precondition failure,
3 verification failure.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import example
from .chain import (
    FreeChainComplex,
    cellular_differential,
    minimality_violations,
    quotient_pi,
    verify_dd_zero,
    verify_strands,
)
from .errors import PreconditionError, ScarfresError, VerificationError
from .hull import compare_scarf_hull, default_window
from .io import ParseError, ProblemSpec, parse_complex, parse_problem, serialize_complex
from .lambda_set import LambdaSet
from .lattice import AntichainLattice, is_generic, markov_basis
from .lift3 import assemble_horseshoe, lattice_resolution_z3
from .linalg import DEFAULT_PRIME
from .matcher import match_complexes
from .scarf import build_scarf

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_problem(path: str, args) -> ProblemSpec:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    spec = parse_problem(text, source=path)
    if args.window is not None:
        spec.window = args.window
    if args.classes is not None:
        spec.classes = args.classes
    if args.t is not None:
        spec.t = args.t
    if args.prime is not None:
        spec.prime = args.prime
    return spec


def _prime(spec_prime: int | None) -> int | None:
    if spec_prime is None:
        return DEFAULT_PRIME
    return spec_prime or None  # 0 forces exact rational rank


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _is_example(spec: ProblemSpec) -> bool:
    if spec.n != 3:
        return False
    lat = spec.lattice()
    ref = example.lattice()
    same_lattice = all(ref.contains(b) for b in lat.basis) and all(lat.contains(b) for b in ref.basis)
    if not same_lattice:
        return False
    return sorted(lat.reduce(r) for r in spec.reps) == sorted(ref.reduce(r) for r in example.A0)


def verification_report(c: FreeChainComplex, classes: int | None, prime: int | None) -> tuple[list[str], bool]:
    """Report lines and overall verdict for dd-zero, homogeneity, minimality and strands."""
    lines = [f"ranks: {tuple(c.ranks())}"]
    ok = True
    dd = verify_dd_zero(c)
    lines.extend(str(dd).splitlines())
    ok &= dd.ok
    herr = c.homogeneity_errors()
    lines.append("homogeneity: ok" if not herr else f"homogeneity: FAIL ({len(herr)} entries)")
    lines.extend("  " + e for e in herr[:10])
    ok &= not herr
    if c.mode == "class":
        viol = minimality_violations(c)
        lines.append("minimality: ok" if not viol else f"minimality: not minimal ({len(viol)} unit entries)")
        if c.lattice is not None and c.modules and dd.ok and not herr:
            cls = None
            if classes is not None:
                cls = [r for w in range(classes + 1) for r in c.lattice.class_representatives(w)]
            rep = verify_strands(c, cls, prime=prime)
            lines.extend(str(rep).splitlines())
            ok &= rep.ok
    return lines, ok


def _comment(lines: list[str]) -> str:
    return "".join(f"# {ln}\n" for ln in lines)


# --- subcommands -------------------------------------------------------------


def cmd_markov(args) -> int:
    spec = _read_problem(args.problem, args)
    lat = spec.lattice()
    mb = markov_basis(lat, radius=spec.window)
    gen = is_generic(lat, radius=spec.window)
    out = [f"lattice rank {lat.rank} in Z^{lat.n}, grading {_vec(lat.grading)}"]
    out.append(f"markov basis ({len(mb)} element{'s' if len(mb) != 1 else ''}):")
    out.extend("  " + _vec(v) for v in mb)
    out.append(f"generic={'true' if gen else 'false'}")
    if mb.verified_up_to >= 0:
        out.append(f"fibers verified connected: {mb.fibers_checked} (grading value <= {mb.verified_up_to})")
    out.extend(n for n in mb.notes if n.startswith("neighbor search"))
    _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


def build_resolution(spec: ProblemSpec, mode: str) -> tuple[FreeChainComplex, list[str], FreeChainComplex | None]:
    """The requested complex, extra report lines, and a reference complex when one is known."""
    notes: list[str] = []
    ref = None
    lat = spec.lattice()
    if mode == "lattice":
        if lat.n == 3 and lat.rank == 2:
            c = lattice_resolution_z3(lat).complex()
        else:
            zero = LambdaSet(lat, [tuple([0] * lat.n)])
            c = quotient_pi(cellular_differential(build_scarf(zero, radius=spec.window)), lat)
            notes.append("resolution of S/I_Lambda from the Scarf complex of Lambda")
        if lat.n == 3 and lat.rank == 2 and _same_lattice(lat, example.lattice()):
            ref = example.reference_lattice_resolution(lat)
    elif mode == "sum":
        lifted = assemble_horseshoe(spec.lambda_set())
        c = lifted.complex
        for fl in lifted.face_lifts:
            notes.append(
                f"face f{fl.face + 1} facet {fl.facet} shifted by {_vec(fl.shift)}: "
                f"b = ({', '.join(p.render() for p in fl.b)})"
            )
        if _is_example(spec):
            ref = example.reference_sum_resolution(lat)
    elif mode == "scarf-only":
        cx = build_scarf(spec.lambda_set(), radius=spec.window)
        notes.append(f"scarf orbit counts: {cx.orbit_counts()}")
        c = quotient_pi(cellular_differential(cx), lat)
        if _is_example(spec):
            ref = example.reference_quotient_resolution(lat)
    else:  # argparse restricts choices
        raise PreconditionError(f"unknown mode {mode}")
    return c, notes, ref


def _same_lattice(a: AntichainLattice, b: AntichainLattice) -> bool:
    return a.n == b.n and all(b.contains(v) for v in a.basis) and all(a.contains(v) for v in b.basis)


def cmd_resolve(args) -> int:
    spec = _read_problem(args.problem, args)
    c, notes, ref = build_resolution(spec, args.mode)
    lines, ok = verification_report(c, spec.classes, _prime(spec.prime))
    lines = [f"mode: {args.mode}"] + notes + lines
    if ref is not None:
        m = match_complexes(c, ref)
        lines.append(f"reference comparison: {m}")
        ok &= m.ok
    _emit(serialize_complex(c) + _comment(lines), args.out)
    if args.out:
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.complex == "-" else Path(args.complex).read_text()
    c = parse_complex(text, source=args.complex)
    classes = args.classes
    prime = _prime(args.prime)
    if args.problem:
        spec = _read_problem(args.problem, args)
        classes = spec.classes if classes is None else classes
        if c.lattice is None:
            c.lattice = spec.lattice()
    if c.length < 0:
        _emit("empty complex: nothing to check\nverdict: ok\n", args.out)
        return EXIT_OK
    lines, ok = verification_report(c, classes, prime)
    lines.append(f"verdict: {'ok' if ok else 'FAIL'}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_hull_check(args) -> int:
    spec = _read_problem(args.problem, args)
    A = spec.lambda_set()
    t0 = Fraction(spec.t)
    if not is_generic(A.lattice):
        rep = f"hull-check: REFUSED (lattice is not generic: markov basis {list(markov_basis(A.lattice))})"
        _emit(rep + "\n", args.out)
        return EXIT_PRECONDITION
    res = compare_scarf_hull(A, default_window(A, spec.window), (t0, t0 + 1))
    _emit(str(res) + "\n", args.out)
    if res.refused:
        return EXIT_PRECONDITION
    return EXIT_OK if res.match else EXIT_VERIFY


def cmd_demo(args) -> int:
    spec = ProblemSpec(n=3, basis=list(example.BASIS), reps=list(example.A0))
    prime = _prime(args.prime)
    out = [
        "lattice basis: " + ", ".join(map(_vec, example.BASIS)) + f"; A0 = {{{_vec(example.A0[0])}}}",
        "markov basis: " + ", ".join(map(_vec, markov_basis(spec.lattice()))),
        (
            f"note: the endpoint {_vec(example.TYPO_ENDPOINT)} listed for edge r is not congruent "
            f"to {_vec(example.A0[0])} modulo Lambda; the congruent vertex "
            f"{_vec(example.EDGES['r'][0][1])} is used instead"
        ),
    ]
    ok = True
    for mode in ("lattice", "scarf-only", "sum"):
        c, notes, ref = build_resolution(spec, mode)
        lines, good = verification_report(c, args.classes, prime)
        m = match_complexes(c, ref)
        out.append(f"[{mode}]")
        out.extend("  " + ln for ln in notes + lines)
        out.append(f"  reference comparison: {m}")
        ok &= good and m.ok
    hull = compare_scarf_hull(spec.lambda_set())
    out.append(str(hull))
    ok &= hull.match
    out.append(f"demo: {'ALL MATCH' if ok else 'FAILURES'}")
    _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


# --- entry point -------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=int, default=None, metavar="R", help="search / window radius")
    p.add_argument("--classes", type=int, default=None, metavar="B", help="verify strands of grading value <= B")
    p.add_argument("--t", type=Fraction, default=None, metavar="T", help="embedding parameter (hull-check)")
    p.add_argument("--prime", type=int, default=None, metavar="P", help="prime for fast rank; 0 = exact only")
    p.add_argument("--out", default=None, metavar="FILE", help="write output here instead of stdout")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scarfres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("markov", help="Markov basis and genericity of a lattice")
    p.add_argument("problem")
    _common(p)
    p.set_defaults(func=cmd_markov)
    p = sub.add_parser("resolve", help="build and verify a resolution")
    p.add_argument("problem")
    p.add_argument("--mode", choices=("lattice", "sum", "scarf-only"), default="sum")
    _common(p)
    p.set_defaults(func=cmd_resolve)
    p = sub.add_parser("verify", help="re-check a serialized complex")
    p.add_argument("complex")
    p.add_argument("--problem", default=None)
    _common(p)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("hull-check", help="compare the Scarf complex with the hull complex")
    p.add_argument("problem")
    _common(p)
    p.set_defaults(func=cmd_hull_check)
    p = sub.add_parser("demo", help="run the reference instance end to end")
    _common(p)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ScarfresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
