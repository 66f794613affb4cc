"""Match two class-mode complexes up to generator permutation and per-generator sign.

Generators of equal homological degree are paired only when their degrees
agree modulo the lattice; within each class every bijection is tried.  For a
fixed pairing the signs ``s(g)`` must satisfy
``ref[r, c] = s(r) s(c) mine[r', c']`` for every entry and
``ref_aug[r] = s(r) mine_aug[r']`` for the augmentation, which is a parity
system solved by propagation along nonzero entries.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .chain import CLASS, FreeChainComplex
from .laurent import LaurentPolynomial


@dataclass
class MatchResult:
    verdict: str
    perm: list[list[int]] = field(default_factory=list)  # perm[i][k] = index in mine of ref generator k
    signs: list[list[int]] = field(default_factory=list)
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "MATCH"

    def __str__(self) -> str:
        return self.verdict + (f" ({self.reason})" if self.reason else "")


def _entries(c: FreeChainComplex, i: int) -> dict[tuple[int, int], LaurentPolynomial]:
    out: dict[tuple[int, int], LaurentPolynomial] = {}
    for (r, col, _), p in c.diffs.get(i, {}).items():
        out[(r, col)] = out.get((r, col), LaurentPolynomial.zero(c.n)) + p
    return {k: v for k, v in out.items() if not v.is_zero()}


def _ratio(a: LaurentPolynomial, b: LaurentPolynomial) -> int | None:
    if a == b:
        return 1
    if a == -b:
        return -1
    return None


def _solve_signs(mine, ref, perm, use_aug: bool) -> list[list[int]] | str:
    # nodes (i, k) for reference generators; edges carry parities
    adj: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
    fixed: dict[tuple[int, int], int] = {}
    for i in range(1, ref.length + 1):
        re, me = _entries(ref, i), _entries(mine, i)
        inv_r = {v: k for k, v in enumerate(perm[i - 1])}
        inv_c = {v: k for k, v in enumerate(perm[i])}
        mapped = {(inv_r[r], inv_c[c]): p for (r, c), p in me.items()}
        if set(mapped) != set(re):
            return f"support of d{i} differs"
        for key, p in re.items():
            eps = _ratio(p, mapped[key])
            if eps is None:
                return f"d{i} entry {key} differs: {p.render()} vs {mapped[key].render()}"
            a, b = (i - 1, key[0]), (i, key[1])
            adj.setdefault(a, []).append((b, eps))
            adj.setdefault(b, []).append((a, eps))
    if use_aug:
        for k, p in enumerate(ref.augmentation):
            q = mine.augmentation[perm[0][k]]
            eps = _ratio(p, q)
            if eps is None:
                return f"augmentation of generator {k} differs"
            fixed[(0, k)] = eps
    sign: dict[tuple[int, int], int] = {}
    nodes = [(i, k) for i in range(len(ref.modules)) for k in range(len(ref.modules[i]))]
    order = sorted(nodes, key=lambda v: (v not in fixed, v))
    for start in order:
        if start in sign:
            continue
        sign[start] = fixed.get(start, 1)
        todo = [start]
        while todo:
            v = todo.pop()
            for w, eps in adj.get(v, []):
                want = sign[v] * eps
                if w in sign:
                    if sign[w] != want:
                        return f"inconsistent signs at {w}"
                else:
                    if w in fixed and fixed[w] != want:
                        return f"inconsistent signs at {w}"
                    sign[w] = want
                    todo.append(w)
    return [[sign[(i, k)] for k in range(len(ref.modules[i]))] for i in range(len(ref.modules))]


def match_complexes(mine: FreeChainComplex, ref: FreeChainComplex, lat=None, max_tries: int = 100000) -> MatchResult:
    lat = lat if lat is not None else (ref.lattice or mine.lattice)
    if mine.mode != CLASS or ref.mode != CLASS:
        return MatchResult("MISMATCH", reason="both complexes must be in class mode")
    if mine.ranks() != ref.ranks():
        return MatchResult("MISMATCH", reason=f"ranks {mine.ranks()} vs {ref.ranks()}")
    use_aug = ref.augmentation is not None and mine.augmentation is not None
    choices = []
    for i in range(len(ref.modules)):
        groups: dict[tuple, tuple[list[int], list[int]]] = {}
        for k, g in enumerate(ref.modules[i]):
            groups.setdefault(lat.reduce(g.degree), ([], []))[0].append(k)
        for k, g in enumerate(mine.modules[i]):
            key = lat.reduce(g.degree)
            if key not in groups:
                return MatchResult("MISMATCH", reason=f"module {i}: degree class {g.degree} absent from reference")
            groups[key][1].append(k)
        for key, (rk, mk) in groups.items():
            if len(rk) != len(mk):
                return MatchResult("MISMATCH", reason=f"module {i}: class multiplicities differ")
        choices.append(list(groups.values()))
    per_module = []
    for groups in choices:
        opts = [
            [list(zip(rk, p)) for p in itertools.permutations(mk)] for rk, mk in groups
        ]
        per_module.append([sum(combo, []) for combo in itertools.product(*opts)])
    last = "no pairing tried"
    for tries, combo in enumerate(itertools.product(*per_module)):
        if tries >= max_tries:
            return MatchResult("MISMATCH", reason="search budget exhausted")
        perm = []
        for i, pairs in enumerate(combo):
            row = [0] * len(ref.modules[i])
            for k, m in pairs:
                row[k] = m
            perm.append(row)
        signs = _solve_signs(mine, ref, perm, use_aug)
        if isinstance(signs, str):
            last = signs
            continue
        return MatchResult("MATCH", perm=perm, signs=signs)
    return MatchResult("MISMATCH", reason=last)
