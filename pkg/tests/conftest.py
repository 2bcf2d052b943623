"""Shared helpers: poset catalogs, random generators, small oracles."""

from __future__ import annotations

import itertools
import random

import pytest

import posetrep as pr
from posetrep.poset import Poset, canonical_key


def all_posets_upto(n: int) -> list[Poset]:
    """One representative per isomorphism class of posets on <= n elements."""
    out = []
    seen = set()
    for size in range(1, n + 1):
        labels = [f"e{i}" for i in range(size)]
        pairs = list(itertools.combinations(range(size), 2))
        for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
            lt = [[False] * size for _ in range(size)]
            for (i, j), c in zip(pairs, choice):
                if c == 1:
                    lt[i][j] = True
                elif c == 2:
                    lt[j][i] = True
            if not _transitive(lt, size):
                continue
            p = Poset(labels, [(labels[i], labels[j])
                               for i in range(size) for j in range(size) if lt[i][j]])
            key = canonical_key(p)
            if key not in seen:
                seen.add(key)
                out.append(p)
    return out


def _transitive(lt, size) -> bool:
    for i in range(size):
        for j in range(size):
            if lt[i][j]:
                for k in range(size):
                    if lt[j][k] and not lt[i][k]:
                        return False
    return True


def all_dimensions(p: Poset, max_total: int):
    slots = len(p.elements) + 1

    def rec(i, rem, acc):
        if i == slots:
            yield pr.DimensionVector(acc[0], dict(zip(p.elements, acc[1:])))
            return
        for v in range(rem + 1):
            yield from rec(i + 1, rem - v, acc + [v])

    yield from rec(0, max_total, [])


def random_element(poset: Poset, rng: random.Random, field=None,
                   d0max: int = 3, colmax: int = 2) -> pr.MatrixRep:
    field = field or pr.GF(2)
    d0 = rng.randint(0, d0max)
    blocks = {}
    for x in poset.elements:
        c = rng.randint(0, colmax)
        if c:
            blocks[x] = pr.ExactMatrix.from_rows(
                field, [[rng.randrange(field.p) for _ in range(c)] for _ in range(d0)])
    return pr.MatrixRep(poset, field, d0, blocks)


def burnside_line_tuple_orbits(p: int, n_lines_tuple: int) -> int:
    """Orbit count of GL2(F_p) on tuples of lines in F_p^2, by Burnside's lemma."""
    vectors = [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]
    lines = set()
    for v in vectors:
        scalings = frozenset(tuple(c * x % p for x in v) for c in range(1, p))
        lines.add(scalings)
    lines = list(lines)
    group = []
    for entries in itertools.product(range(p), repeat=4):
        a, b, c, d = entries
        if (a * d - b * c) % p:
            group.append(((a, b), (c, d)))
    total = 0
    for g in group:
        fixed = 0
        for line in lines:
            v = next(iter(line))
            gv = tuple(sum(g[i][j] * v[j] for j in range(2)) % p for i in range(2))
            if gv in line:
                fixed += 1
        total += fixed ** n_lines_tuple
    assert total % len(group) == 0
    return total // len(group)


@pytest.fixture(scope="session")
def poset_catalog():
    return all_posets_upto(5)


@pytest.fixture(scope="session")
def a3():
    return pr.build_poset(["x", "y", "z"], [])


@pytest.fixture(scope="session")
def a4():
    return pr.build_poset(["w", "x", "y", "z"], [])


@pytest.fixture(scope="session")
def chain4():
    return pr.build_poset(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])


@pytest.fixture(scope="session")
def kposet():
    return pr.poset_K()
