"""Sparse Laurent polynomials with ``Fraction`` coefficients and Z^n exponents."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import zn
from .zn import Point

Coeff = Fraction


def variable_names(n: int) -> list[str]:
    return ["x", "y", "z"] if n == 3 else [f"x{i + 1}" for i in range(n)]


class LaurentPolynomial:
    """Immutable finitely supported map ``exponent -> nonzero coefficient``."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Point, Fraction | int] | Iterable[tuple[Point, Fraction | int]] = ()):
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Point, Fraction] = {}
        for e, c in items:
            e = zn.point(e, n)
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # --- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "LaurentPolynomial":
        return cls(n)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: Fraction | int = 1) -> "LaurentPolynomial":
        return cls(len(exp), {tuple(exp): coeff})

    @classmethod
    def constant(cls, n: int, c: Fraction | int) -> "LaurentPolynomial":
        return cls(n, {zn.zero(n): c})

    # --- inspection ------------------------------------------------------
    @property
    def terms(self) -> dict[Point, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_polynomial(self) -> bool:
        return all(zn.is_nonnegative(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def exponents(self) -> list[Point]:
        return sorted(self._terms)

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff(zn.zero(self.n))

    def leading(self) -> tuple[Point, Fraction]:
        e = max(self._terms)
        return e, self._terms[e]

    def min_exponent(self) -> Point:
        return tuple(min(e[i] for e in self._terms) for i in range(self.n))

    # --- arithmetic ------------------------------------------------------
    def _check(self, other: "LaurentPolynomial") -> None:
        if other.n != self.n:
            raise zn.DimensionError(f"polynomials in {self.n} and {other.n} variables")

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Point, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.n, acc)

    __rmul__ = __mul__

    def scale(self, c: Fraction | int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.n, {e: c * v for e, v in self._terms.items()})

    def shift(self, exp: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the Laurent monomial ``X^exp``."""
        return LaurentPolynomial(self.n, {zn.add(e, tuple(exp)): c for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial.constant(self.n, other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def exact_quotient(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """``self / divisor`` for a monomial or binomial divisor; error if inexact.

        A binomial ``c1 X^a + c2 X^b`` is ``X^b (c1 X^d + c2)`` with
        ``d = a - b``, so the division splits along the lines ``e + Z d`` into
        univariate divisions by ``c1 t + c2``.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_monomial():
            (e, c), = divisor.items()
            return self.shift(zn.neg(e)).scale(1 / c)
        if len(divisor) != 2:
            raise ValueError("exact_quotient supports monomial and binomial divisors only")
        (a, c1), (b, c2) = sorted(divisor.items())
        d = zn.sub(a, b)
        i0 = next(i for i, x in enumerate(d) if x)
        num = self.shift(zn.neg(b))
        lines: dict[Point, dict[int, Fraction]] = {}
        for e, c in num.items():
            k = e[i0] // d[i0]
            base = zn.sub(e, zn.scale(k, d))
            lines.setdefault(base, {})[k] = c
        out: dict[Point, Fraction] = {}
        for base, coeffs in lines.items():
            lo, hi = min(coeffs), max(coeffs)
            prev = Fraction(0)
            for k in range(lo, hi):
                q = (coeffs.get(k, Fraction(0)) - c1 * prev) / c2
                if q:
                    out[zn.add(base, zn.scale(k, d))] = q
                prev = q
            if coeffs.get(hi, Fraction(0)) != c1 * prev:
                raise ArithmeticError(f"{self.render()} is not divisible by {divisor.render()}")
        quot = LaurentPolynomial(self.n, out)
        if quot * divisor != self:
            raise ArithmeticError(f"{self.render()} is not divisible by {divisor.render()}")
        return quot

    # --- rendering -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Point, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = list(names) if names else variable_names(self.n)
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            mag = abs(c)
            mag_s = str(mag)
            if mono:
                body = mono if mag == 1 else f"{mag_s}*{mono}"
            else:
                body = mag_s
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


def _split_terms(s: str) -> list[tuple[int, str, int]]:
    """Split at top-level +/- signs that are not exponent signs."""
    out = []
    i = 0
    sign = 1
    buf_start = None
    dangling = None  # position of a sign still waiting for its term
    s_len = len(s)
    while i < s_len:
        ch = s[i]
        if ch in "+-" and not (i > 0 and s[i - 1] == "^"):
            if buf_start is not None:
                out.append((sign, s[buf_start:i], buf_start))
                buf_start = None
            elif dangling is not None:
                raise PolynomialSyntaxError("two signs in a row", i)
            sign = -1 if ch == "-" else 1
            dangling = i
        elif not ch.isspace() and buf_start is None:
            buf_start = i
            dangling = None
        i += 1
    if buf_start is not None:
        out.append((sign, s[buf_start:], buf_start))
    elif dangling is not None:
        raise PolynomialSyntaxError("sign without a term", dangling)
    return out


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column + 1}: {message}")
        self.column = column


def parse_polynomial(text: str, n: int, names: Sequence[str] | None = None) -> LaurentPolynomial:
    """Inverse of ``render``: terms like ``-3/2*x^2*z^-1``."""
    names = list(names) if names else variable_names(n)
    index = {v: i for i, v in enumerate(names)}
    s = text.strip()
    if s == "0":
        return LaurentPolynomial.zero(n)
    if not s:
        raise PolynomialSyntaxError("empty polynomial", 0)
    terms: dict[Point, Fraction] = {}
    offset = len(text) - len(text.lstrip())
    for sign, body, col in _split_terms(s):
        body = body.strip()
        coeff = Fraction(sign)
        exp = [0] * n
        for factor in body.split("*"):
            f = factor.strip()
            if not f:
                raise PolynomialSyntaxError(f"empty factor in {body!r}", offset + col)
            if f[0].isdigit():
                try:
                    coeff *= Fraction(f)
                except ValueError:
                    raise PolynomialSyntaxError(f"bad coefficient {f!r}", offset + col)
                continue
            var, _, power = f.partition("^")
            if var not in index:
                raise PolynomialSyntaxError(f"unknown variable {var!r}", offset + col)
            try:
                k = int(power) if power else 1
            except ValueError:
                raise PolynomialSyntaxError(f"bad exponent {power!r}", offset + col)
            exp[index[var]] += k
        e = tuple(exp)
        terms[e] = terms.get(e, Fraction(0)) + coeff
    return LaurentPolynomial(n, terms)


def binomial_of(v: Sequence[int]) -> LaurentPolynomial:
    """``X^{v+} - X^{v-}`` (zero for ``v = 0``)."""
    v = tuple(v)
    p, m = zn.pos_neg_parts(v)
    return LaurentPolynomial(len(v), {p: 1}) - LaurentPolynomial(len(v), {m: 1})


def monomial(exp: Sequence[int], coeff: Fraction | int = 1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(exp, coeff)


def strand_basis(gen_degree: Sequence[int], target_class: Sequence[int], lat) -> list[Point]:
    """Exponents ``m >= 0`` with ``m + gen_degree`` congruent to ``target_class``."""
    return lat.fiber_points(zn.sub(tuple(target_class), tuple(gen_degree)))


def class_sums(p: LaurentPolynomial, lat) -> dict[Point, Fraction]:
    """Coefficient sum over each class of exponents modulo the lattice."""
    out: dict[Point, Fraction] = {}
    for e, c in p.items():
        k = lat.reduce(e)
        out[k] = out.get(k, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def in_lattice_ideal(p: LaurentPolynomial, lat) -> bool:
    """Membership in the lattice ideal: every class coefficient sum vanishes.

    Monomials in one class are all congruent modulo ``I_Lambda`` (their
    difference is a multiple of a lattice binomial), so ``p`` lies in the ideal
    iff each class contributes a zero total.  Valid for polynomials; for
    Laurent polynomials it is the same statement in the Laurent ring.
    """
    return not class_sums(p, lat)
