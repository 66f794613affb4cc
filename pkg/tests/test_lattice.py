from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from scarfres import zn
from scarfres.errors import NotAntichainError
from scarfres.lattice import (
    AntichainLattice,
    enumerate_fiber,
    fiber_connected,
    is_generic,
    kernel_lattice,
    markov_basis,
    membership,
    neighbors_of_origin,
)

from conftest import brute_fiber

MARKOV3 = {(-1, 2, -1), (3, -1, -1), (-2, -1, 2)}


def signed(vs):
    return set(vs) | {zn.neg(v) for v in vs}


def test_grading_and_torsion(lat):
    assert lat.grading == (3, 4, 5)
    assert lat.torsion_order == 1
    assert lat.largest_gap_value == 2


def test_membership(lat):
    assert membership(lat, (2, 1, -2))
    assert not membership(lat, (3, 1, -1))
    assert membership(lat, (0, 0, 0))


def test_fibers(lat):
    assert enumerate_fiber(lat, (1, 0, 1)).vertices == [(0, 2, 0), (1, 0, 1)]
    assert enumerate_fiber(lat, (0, 0, 0)).vertices == [(0, 0, 0)]
    assert (0, 0, 2) in enumerate_fiber(lat, (2, 1, 0)).vertices


def test_fibers_against_box_scan(lat):
    for u in [(2, 1, 0), (3, 3, 0), (1, 4, 1), (4, 2, 2)]:
        assert lat.fiber_points(u) == brute_fiber(lat.grading, lat, u)


def test_neighbors_of_origin(lat):
    assert set(neighbors_of_origin(lat)) == signed(MARKOV3)
    assert neighbors_of_origin(AntichainLattice([], 3)) == []
    assert neighbors_of_origin(AntichainLattice([(1, -1)])) == [(-1, 1), (1, -1)]


def test_markov_basis(lat):
    mb = markov_basis(lat)
    assert len(mb) == 3
    assert signed(mb) == signed(MARKOV3)
    assert mb.verified_up_to >= 3 * max(lat.value(zn.pos_part(v)) for v in mb)
    assert list(markov_basis(AntichainLattice([(1, -1)]))) == [(1, -1)]
    assert signed(markov_basis(kernel_lattice((3, 4, 5)))) == signed(MARKOV3)


def test_genericity(lat):
    assert is_generic(lat)
    assert not is_generic(AntichainLattice([(1, -1, 0)]))
    assert is_generic(AntichainLattice([(1, -1)]))


def test_not_antichain():
    with pytest.raises(NotAntichainError):
        AntichainLattice([(1, 1, -1), (0, 1, -1)])
    with pytest.raises(NotAntichainError):
        AntichainLattice([(1, 2)])


def test_torsion_sublattice():
    lat = AntichainLattice([(2, -2)])
    assert lat.torsion_order == 2
    assert not lat.contains((1, -1))
    assert list(markov_basis(lat)) == [(2, -2)]


def test_markov_normalizes_to_zero_sum(lat):
    from scarfres.lift3 import normalize_z3

    m = normalize_z3(list(markov_basis(lat)))
    assert zn.add(zn.add(m[0], m[1]), m[2]) == (0, 0, 0)


def _weights():
    return st.tuples(st.integers(1, 7), st.integers(1, 7), st.integers(1, 7))


@given(_weights())
def test_neighbors_closed_under_negation(w):
    lat = kernel_lattice(w)
    nb = neighbors_of_origin(lat)
    assert set(nb) == {zn.neg(v) for v in nb}
    for v in nb:
        assert not zn.comparable(v, zn.zero(3))


@given(_weights(), st.integers(0, 10_000))
def test_fibers_connected_on_samples(w, seed):
    lat = kernel_lattice(w)
    mb = list(markov_basis(lat, verify=False))
    rng = random.Random(seed)
    for _ in range(3):
        u = tuple(rng.randint(0, 4) for _ in range(3))
        assert fiber_connected(lat, u, mb)


@given(_weights())
def test_genericity_matches_brute_force(w):
    """No two neighborly lattice points share a coordinate iff the Markov basis is fully supported."""
    lat = kernel_lattice(w)
    radius = max(abs(x) for v in markov_basis(lat, verify=False) for x in v)
    shift = (radius, radius, radius)
    pts = {zn.sub(v, shift) for v in zn.bounded_points((1, 1, 1), 3 * radius)}
    pts = [p for p in pts if lat.contains(p) and any(p)]
    neighborly = [p for p in pts if lat.fiber_empty(zn.sub(zn.pos_part(p), (1, 1, 1)))]
    brute = all(len(zn.support(p)) == 3 for p in neighborly)
    assert brute == is_generic(lat)


def test_non_generic_neighbors_exceed_minimal_basis():
    lat = kernel_lattice((1, 1, 1))
    nb = set(neighbors_of_origin(lat))
    assert {(1, -1, 0), (2, -2, 0), (2, -1, -1)} <= nb
    mb = markov_basis(lat)
    assert mb.verified_up_to > 0  # still connects every checked fiber
    assert not is_generic(lat)
