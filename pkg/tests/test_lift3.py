from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from scarfres import example, zn
from scarfres.chain import check_minimality, verify_dd_zero, verify_strands
from scarfres.errors import PreconditionError
from scarfres.lambda_set import LambdaSet
from scarfres.laurent import binomial_of, monomial, parse_polynomial
from scarfres.lift3 import (
    assemble_horseshoe,
    face_lifting_term,
    lattice_resolution_z3,
    lift_edge_d0,
    markov_path_decompose,
    normalize_z3,
    solve_b,
)
from scarfres.sampling import SamplerConfig, generic_instances
from scarfres.scarf import ScarfFace, build_scarf

P = lambda s: parse_polynomial(s, 3)


@pytest.fixture(scope="module")
def res(lat):
    return lattice_resolution_z3(lat)


def test_normalization(res):
    assert res.markov == [(-1, 2, -1), (3, -1, -1), (-2, -1, 2)]
    assert zn.add(zn.add(*res.markov[:2]), res.markov[2]) == (0, 0, 0)
    assert normalize_z3([(1, -2, 1), (3, -1, -1), (2, 1, -2)]) == res.markov


def test_syzygies(res):
    assert [p.render() for p in res.syzygies[0]] == ["x^2", "z", "y"]
    assert [p.render() for p in res.syzygies[1]] == ["z", "y", "x"]
    for col in res.syzygies:
        assert res.augment(col).is_zero()
    assert [b.render() for b in res.binomials] == ["-x*z + y^2", "x^3 - y*z", "-x^2*y + z^2"]


def test_path_decompositions(res):
    d = markov_path_decompose(res, (2, 1, -2))  # the negative of lambda_3
    assert [c.render() for c in d.coeffs] == ["0", "0", "-1"]
    d = markov_path_decompose(res, (3, -1, -1))
    assert [c.render() for c in d.coeffs] == ["0", "1", "0"]
    d = markov_path_decompose(res, (0, 0, 0))
    assert all(c.is_zero() for c in d.coeffs)
    with pytest.raises(PreconditionError):
        markov_path_decompose(res, (1, 0, 0))


@given(st.integers(-4, 4), st.integers(-4, 4))
@settings(max_examples=40)
def test_path_identity(res, i, j):
    g = zn.add(zn.scale(i, res.markov[0]), zn.scale(j, res.markov[1]))
    d = markov_path_decompose(res, g)
    total = P("0")
    for c, lam in zip(d.coeffs, res.markov):
        total = total + c * binomial_of(lam)
    assert total == binomial_of(g)


def test_edge_lifts(A, res):
    t = ScarfFace.of([(1, 2, 0), (0, 4, -1)])
    lift = lift_edge_d0(A, res, t)
    assert (lift.mono_C - lift.mono_B).render() in ("x*z - y^2", "-x*z + y^2")
    nonzero = [(i, p.render()) for i, p in enumerate(lift.lattice) if not p.is_zero()]
    assert nonzero in ([(0, "x*y^2")], [(0, "-x*y^2")])
    r = ScarfFace.of([(1, 2, 0), (4, 1, -1)])
    lift = lift_edge_d0(A, res, r)
    nonzero = [(i, p.render()) for i, p in enumerate(lift.lattice) if not p.is_zero()]
    assert nonzero in ([(1, "x*y^2")], [(1, "-x*y^2")])


def test_degenerate_edge_has_no_lattice_part(res, lat):
    B = LambdaSet(lat, [(1, 2, 0), (2, 0, 0)])
    edge = ScarfFace.of([(1, 2, 0), (2, 0, 0)])
    lift = lift_edge_d0(B, res, edge)
    assert all(p.is_zero() for p in lift.lattice)


def test_face_lifting_term(A, res):
    r = ScarfFace.of([(1, 2, 0), (4, 1, -1)])
    L = face_lifting_term(A, res, r, (-1, 2, -1))
    assert [p.render() for p in L] == example.U_LIFTING_TERM
    assert [p.render() for p in solve_b(res, L)] == example.U_B
    zero = face_lifting_term(A, res, r, (0, 0, 0))
    assert all(p.is_zero() for p in zero)
    assert all(p.is_zero() for p in solve_b(res, zero))


def test_horseshoe(A):
    lifted = assemble_horseshoe(A)
    c = lifted.complex
    assert lifted.ranks == (4, 5, 2)
    assert verify_dd_zero(c).ok
    assert check_minimality(c)
    names = {g.degree: g.name for g in c.modules[1]}
    for face_label, expect in (((3, 4, 0), "p1"), ((4, 3, 0), "p2")):
        k = [g.degree for g in c.modules[2]].index(face_label)
        col = {c.modules[1][r].name: p.render() for r, _, p in c.column(2, k)}
        assert col[expect] in ("x*y^2", "-x*y^2")
        assert len(col) == 4
    assert set(names.values()) == {"p1", "p2", "e1", "e2", "e3"}


def test_augmentation_contains_generators(A):
    c = assemble_horseshoe(A).complex
    aug = {p.render() for p in c.augmentation}
    assert {"-x*z + y^2", "x^3 - y*z", "-x^2*y + z^2", "x*y^2"} == aug


def test_preconditions(lat):
    with pytest.raises(PreconditionError):
        assemble_horseshoe(LambdaSet(lat, [(0, 0, 0)]))
    with pytest.raises(PreconditionError):
        assemble_horseshoe(LambdaSet(lat, [(1, -1, 0)]))
    with pytest.raises(PreconditionError):  # (0,2,0) divides y^2
        assemble_horseshoe(LambdaSet(lat, [(0, 1, 0)]))


def test_random_instances_small():
    for _, A in generic_instances(3, SamplerConfig(seed=5)):
        c = assemble_horseshoe(A).complex
        assert verify_dd_zero(c).ok
        assert verify_strands(c, factor=2).ok
