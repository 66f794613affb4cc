"""Acceptance criteria 1-9, each timed and reported as one PASS/FAIL line.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import time
from contextlib import contextmanager

from scarfres import example, zn
from scarfres.chain import cellular_differential, check_minimality, quotient_pi, verify_dd_zero, verify_strands
from scarfres.hull import compare_scarf_hull
from scarfres.lambda_set import LambdaSet
from scarfres.lattice import AntichainLattice, is_generic, kernel_lattice, markov_basis, neighbors_of_origin
from scarfres.laurent import LaurentPolynomial, binomial_of, parse_polynomial
from scarfres.lift3 import assemble_horseshoe, lattice_resolution_z3, markov_path_decompose
from scarfres.matcher import match_complexes
from scarfres.sampling import SamplerConfig, generic_instances, random_generic_lattice, random_lattice_element
from scarfres.scarf import build_scarf

RESULTS: dict[int, str] = {}
P = lambda s: parse_polynomial(s, 3)


@contextmanager
def criterion(k: int, title: str, limit: float | None):
    t0 = time.perf_counter()
    detail = {"text": ""}
    try:
        yield detail
    except BaseException as exc:
        dt = time.perf_counter() - t0
        RESULTS[k] = f"[{k}] FAIL {title} ({dt:.2f}s): {exc}"
        raise
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        RESULTS[k] = f"[{k}] FAIL {title} ({dt:.2f}s >= {limit}s) {detail['text']}"
        raise AssertionError(RESULTS[k])
    RESULTS[k] = f"[{k}] PASS {title} ({dt:.2f}s) {detail['text']}".rstrip()


def _fresh_lattice() -> AntichainLattice:
    return AntichainLattice(example.BASIS)  # no caches shared with other tests


def _signed(vs) -> set:
    return set(vs) | {zn.neg(v) for v in vs}


# --- 1 ---------------------------------------------------------------------


def test_criterion_1_markov_basis():
    with criterion(1, "Markov basis of the reference lattice", 1.0) as d:
        mb = markov_basis(_fresh_lattice())
        assert len(mb) == 3
        assert _signed(mb) == _signed(example.MARKOV)
        d["text"] = f"elements={list(mb)}"


# --- 2 ---------------------------------------------------------------------


def test_criterion_2_lattice_resolution():
    with criterion(2, "lattice resolution (1,3,2) matches", 1.0) as d:
        lat = _fresh_lattice()
        c = lattice_resolution_z3(lat).complex()
        assert c.ranks() == (1, 3, 2)
        aug = {p for col in range(3) for _, _, p in c.column(1, col)}
        up_to_sign = lambda ps: {frozenset({p, -p}) for p in ps}
        assert up_to_sign(aug) == up_to_sign([P("y^2 - x*z"), P("x^3 - y*z"), P("x^2*y - z^2")])
        m = match_complexes(c, example.reference_lattice_resolution(lat))
        assert m.ok, m.reason
        d["text"] = f"matcher={m.verdict}"


# --- 3 ---------------------------------------------------------------------


def test_criterion_3_full_example():
    with criterion(3, "sum resolution (4,5,2) matches the final array", 5.0) as d:
        lat = _fresh_lattice()
        A = LambdaSet(lat, example.A0)
        c = assemble_horseshoe(A).complex
        assert c.ranks() == (4, 5, 2)
        ref = example.reference_sum_resolution(lat)
        m = match_complexes(c, ref)
        assert m.ok, m.reason
        # d2(e_u) = x^2 e_t + z e_r - y e_s - xy^2 e_p1, through the matched basis change
        u = ref.index_of(2, "u")
        mine_u = m.perm[2][u]
        got = {}
        for r, _, p in c.column(2, mine_u):
            k = m.perm[1].index(r)
            got[ref.modules[1][k].name] = p * (m.signs[1][k] * m.signs[2][u])
        want = {"t": P("x^2"), "r": P("z"), "s": P("-y"), "p1": P("-x*y^2")}
        assert got == want, got
        d["text"] = f"matcher={m.verdict} columns={sum(c.ranks()[1:])}"


# --- 4 ---------------------------------------------------------------------


def test_criterion_4_quotient_resolution():
    with criterion(4, "quotient resolution matches", 1.0) as d:
        lat = _fresh_lattice()
        A = LambdaSet(lat, example.A0)
        q = quotient_pi(cellular_differential(build_scarf(A)), lat)
        ref = example.reference_quotient_resolution(lat)
        m = match_complexes(q, ref)
        assert m.ok, m.reason
        t = ref.index_of(1, "t")
        (row, _, p), = q.column(1, m.perm[1][t])
        assert p * (m.signs[0][0] * m.signs[1][t]) == P("x*z - y^2")
        d["text"] = f"matcher={m.verdict}"


# --- 5 ---------------------------------------------------------------------


def test_criterion_5_random_exactness():
    with criterion(5, "exactness on 20 random generic instances", 300.0) as d:
        failures = []
        shapes = []
        for k, (lat, A) in enumerate(generic_instances(20, SamplerConfig(seed=2024, max_normal=12, max_reps=2))):
            assert max(lat.grading) <= 12 and len(A.reps) <= 2
            c = assemble_horseshoe(A).complex
            dd = verify_dd_zero(c)
            st = verify_strands(c, factor=3)
            shapes.append(c.ranks())
            if not (dd.ok and st.ok):
                failures.append((lat.grading, A.reps, str(dd), str(st)))
        assert not failures, failures
        two = sum(1 for s in shapes if s[0] == 5)
        d["text"] = f"instances=20 (|A0|=2: {two}) failures=0"


# --- 6 ---------------------------------------------------------------------


def test_criterion_6_scarf_equals_hull():
    with criterion(6, "Scarf = hull for the example and 5 random instances", 120.0) as d:
        cases = [example.lambda_set()] + [A for _, A in generic_instances(5, SamplerConfig(seed=99))]
        bad = []
        for A in cases:
            rep = compare_scarf_hull(A, t=(25, 26))
            if not (rep.match and rep.stable):
                bad.append(str(rep))
        assert not bad, bad
        d["text"] = f"instances={len(cases)} mismatches=0"


# --- 7 ---------------------------------------------------------------------


def _brute_fibers(lat: AntichainLattice, value: int):
    """All nonnegative points of grading value ``value``, grouped by lattice class (box scan)."""
    u = lat.grading
    pts = [
        v for v in itertools.product(*[range(value // w + 1) for w in u])
        if sum(a * b for a, b in zip(u, v)) == value
    ]
    groups: list[list[tuple]] = []
    for v in pts:
        for g in groups:
            if lat.contains(tuple(a - b for a, b in zip(v, g[0]))):
                g.append(v)
                break
        else:
            groups.append([v])
    return groups


def _components(points, moves):
    moves = _signed(moves)
    seen: set = set()
    comps = []
    for p in points:
        if p in seen:
            continue
        comp = [p]
        seen.add(p)
        todo = [p]
        while todo:
            v = todo.pop()
            for w in points:
                if w not in seen and tuple(a - b for a, b in zip(v, w)) in moves:
                    seen.add(w)
                    comp.append(w)
                    todo.append(w)
        comps.append(comp)
    return comps


def minimal_markov_oracle(lat: AntichainLattice, max_value: int) -> list[tuple]:
    """Degree-by-degree minimal Markov basis: join the components of each fiber with moves."""
    moves: list[tuple] = []
    for value in range(max_value + 1):
        for fiber in _brute_fibers(lat, value):
            comps = _components(fiber, moves)
            for comp in comps[1:]:
                moves.append(tuple(a - b for a, b in zip(comps[0][0], comp[0])))
    return moves


SMALL_LATTICES = [
    AntichainLattice([(1, -1)]),
    AntichainLattice([(2, -3)]),
    AntichainLattice([(1, -4)]),
    AntichainLattice([(3, -5)]),
    AntichainLattice([(2, -2)]),
    kernel_lattice((3, 4, 5)),
    kernel_lattice((2, 3, 5)),
    kernel_lattice((3, 5, 7)),
    kernel_lattice((4, 5, 6)),
    kernel_lattice((5, 6, 7)),
    AntichainLattice([(-2, 4, -2), (3, -1, -1)]),
    kernel_lattice((1, 2, 3)),
]


def test_criterion_7_markov_neighbors():
    with criterion(7, "neighbors of 0 = B u -B on 12 lattices", None) as d:
        rng = random.Random(7)
        minimal_checked = 0
        for lat in SMALL_LATTICES:
            mb = markov_basis(lat)
            assert set(neighbors_of_origin(lat)) == _signed(mb), lat
            top = 3 * max(lat.value(zn.pos_part(v)) for v in mb)
            for _ in range(10):
                w = rng.randint(0, top)
                for fiber in _brute_fibers(lat, w):
                    assert len(_components(fiber, list(mb))) == 1, (lat, fiber)
            if is_generic(lat):
                oracle = minimal_markov_oracle(lat, top)
                assert _signed(oracle) == _signed(mb), (lat, oracle, list(mb))
                minimal_checked += 1
        d["text"] = f"lattices={len(SMALL_LATTICES)} (generic, compared with a minimal basis: {minimal_checked})"


# --- 8 ---------------------------------------------------------------------


def test_criterion_8_path_decompositions():
    with criterion(8, "path decomposition identity for 100 random g", None) as d:
        rng = random.Random(8)
        lats = [_fresh_lattice()] + [random_generic_lattice(rng) for _ in range(4)]
        checked = 0
        bound = 80
        while checked < 100:
            lat = lats[checked % len(lats)]
            res = lattice_resolution_z3(lat)
            g = random_lattice_element(rng, lat, 3)
            if lat.value(zn.pos_part(g)) > bound:
                continue
            dec = markov_path_decompose(res, g)
            total = LaurentPolynomial.zero(3)
            for c, lam in zip(dec.coeffs, res.markov):
                total = total + c * binomial_of(lam)
            assert total == binomial_of(g), g
            assert all(c.is_polynomial() for c in dec.coeffs)
            checked += 1
        d["text"] = f"samples={checked} failures=0"


# --- 9 ---------------------------------------------------------------------


def test_criterion_9_minimality():
    with criterion(9, "outputs of criteria 2-4 are minimal", None):
        lat = _fresh_lattice()
        A = LambdaSet(lat, example.A0)
        assert check_minimality(lattice_resolution_z3(lat).complex())
        assert check_minimality(assemble_horseshoe(A).complex)
        assert check_minimality(quotient_pi(cellular_differential(build_scarf(A)), lat))


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    for k in sorted(RESULTS):
        print(RESULTS[k])
    sys.exit(1 if failed else 0)
