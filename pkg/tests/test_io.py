from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scarfres import example
from scarfres.chain import cellular_differential, quotient_pi, verify_dd_zero
from scarfres.io import ParseError, ProblemSpec, format_problem, parse_complex, parse_problem, serialize_complex
from scarfres.lift3 import assemble_horseshoe, lattice_resolution_z3
from scarfres.scarf import build_scarf

EXAMPLE = """# reference instance
n = 3
basis = -1 2 -1; 3 -1 -1
reps = 1 2 0   # one orbit
t = 51/2
"""


def test_parse_problem():
    spec = parse_problem(EXAMPLE)
    assert spec.basis == [(-1, 2, -1), (3, -1, -1)]
    assert spec.reps == [(1, 2, 0)]
    assert spec.t == Fraction(51, 2)
    assert spec.lambda_set().reps == ((1, 2, 0),)


def test_infers_dimension():
    assert parse_problem("basis = 1 -1\nreps = 0 0\n").n == 2


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("n = 3\nbasis = -1 2 x; 3 -1 -1\nreps = 1 2 0\n", 2, 14),
        ("n = 3\nbasis = -1 2 -1\nfoo = 1\n", 3, 1),
        ("n = 3\nreps = 1 2 0\n", 3, 1),
        ("n = 3\nbasis 1 2\n", 2, 1),
        ("n = 2\nbasis = -1 2 -1\nreps = 0 0\n", 2, 9),
        ("n = x\nbasis = 1 -1\nreps = 0 0\n", 1, 5),
    ],
)
def test_problem_errors(text, line, col):
    with pytest.raises(ParseError) as exc:
        parse_problem(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_format_problem_round_trip():
    spec = parse_problem(EXAMPLE)
    assert parse_problem(format_problem(spec)) == spec


@pytest.fixture(scope="module")
def complexes(A, lat):
    return [
        assemble_horseshoe(A).complex,
        lattice_resolution_z3(lat).complex(),
        cellular_differential(build_scarf(A)),
        quotient_pi(cellular_differential(build_scarf(A)), lat),
        example.reference_sum_resolution(),
    ]


def test_round_trip_byte_identical(complexes):
    for c in complexes:
        s = serialize_complex(c)
        back = parse_complex(s)
        assert serialize_complex(back) == s
        assert back.ranks() == c.ranks()
        assert verify_dd_zero(back).ok


def test_complex_errors():
    with pytest.raises(ParseError):
        parse_complex("")
    with pytest.raises(ParseError):
        parse_complex("complex 2\nn 3\nmode class\nend\n")
    with pytest.raises(ParseError) as exc:
        parse_complex("complex 1\nn 3\nmode class\nmodule 0 a 0,0,0 -\nmodule 1 b 1,0,0 -\ndiff 1 a b x +\nend\n")
    assert exc.value.line == 6
    with pytest.raises(ParseError):
        parse_complex("complex 1\nn 3\nmode class\nmodule 0 a 0,0,0 -\ndiff 1 a zz x\nend\n")


@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=3))
def test_problem_rows_round_trip(rows):
    spec = ProblemSpec(n=2, basis=[(1, -1)], reps=rows)
    assert parse_problem(format_problem(spec)).reps == rows
