"""The Tits quadratic form of a poset, critical dimensions, finite-type tests.

The form of a poset S on variables indexed by Ŝ = S ∪ {0} is

    Q(x) = Σ_{a∈Ŝ} x_a² + Σ_{a≺b} x_a x_b − Σ_{a∈S} x_0 x_a,

evaluated exactly over the integers (negative entries allowed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .errors import BudgetExceeded, UnknownElement
from .linalg import env_budget
from .poset import CriticalEmbedding, Poset, critical_subposet_embeddings

DEFAULT_SCAN_BUDGET = 10_000_000

try:  # exact int64 fast path for the exhaustive scan
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None


class DimensionVector:
    """Map Ŝ → ℤ with the added index 0 stored separately.

    Zero entries are dropped on construction, so equality and hashing ignore
    explicit zeros ("missing keys mean 0").
    """

    __slots__ = ("d0", "values")

    def __init__(self, d0: int, values: Mapping[str, int] | None = None):
        object.__setattr__(self, "d0", int(d0))
        vals = {str(k): int(v) for k, v in (values or {}).items() if int(v) != 0}
        object.__setattr__(self, "values", vals)

    def __setattr__(self, *args):
        raise AttributeError("DimensionVector is immutable")

    def get(self, a: str) -> int:
        return self.values.get(a, 0)

    def support(self) -> set[str]:
        return set(self.values)

    def total(self) -> int:
        return self.d0 + sum(self.values.values())

    def is_zero(self) -> bool:
        return self.d0 == 0 and not self.values

    def restrict(self, subset) -> "DimensionVector":
        subset = set(subset)
        return DimensionVector(self.d0, {a: v for a, v in self.values.items() if a in subset})

    def le(self, other: "DimensionVector") -> bool:
        if self.d0 > other.d0:
            return False
        return all(v <= other.get(a) for a, v in self.values.items())

    def key(self):
        return (self.d0, tuple(sorted(self.values.items())))

    def __eq__(self, other):
        return isinstance(other, DimensionVector) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        inner = ", ".join(f"{a}:{v}" for a, v in sorted(self.values.items()))
        return f"({self.d0}; {inner})"


def _check_dimension(p: Poset, d: DimensionVector):
    for a in d.values:
        if a not in p:
            raise UnknownElement(f"dimension vector mentions unknown element {a!r}")


def tits_value(p: Poset, d: DimensionVector) -> int:
    _check_dimension(p, d)
    return group_dimension(p, d) - space_dimension(p, d)


def group_dimension(p: Poset, d: DimensionVector) -> int:
    """d0² + Σ_a d(a)² + Σ_{a≺b} d(a)d(b): the base-change group dimension."""
    _check_dimension(p, d)
    total = d.d0 * d.d0
    for a in p.elements:
        total += d.get(a) ** 2
    for a, b in p.relation_pairs():
        total += d.get(a) * d.get(b)
    return total


def space_dimension(p: Poset, d: DimensionVector) -> int:
    """Σ_a d0·d(a): the dimension of the space of elements of dimension d."""
    _check_dimension(p, d)
    return d.d0 * sum(d.get(a) for a in p.elements)


@dataclass(frozen=True)
class CriticalDimension:
    """One of the five zero vectors of the form on a critical poset."""

    kind: str
    c0: int
    assignment: Mapping[str, int]

    def dimension(self) -> DimensionVector:
        return DimensionVector(self.c0, dict(self.assignment))


_TABLE: tuple[CriticalDimension, ...] | None = None


def critical_dimension_table() -> tuple[CriticalDimension, ...]:
    """The five critical dimensions C1..C5, keyed by abstract poset labels."""
    global _TABLE
    if _TABLE is None:
        ones = lambda labels: {x: 1 for x in labels}
        _TABLE = (
            CriticalDimension("A4", 2, ones(["a1", "b1", "c1", "d1"])),
            CriticalDimension("T222", 3, ones(["a1", "a2", "b1", "b2", "c1", "c2"])),
            CriticalDimension(
                "T133", 4, {"a1": 2, **ones(["b1", "b2", "b3", "c1", "c2", "c3"])}
            ),
            CriticalDimension(
                "T125", 6,
                {"a1": 3, "b1": 2, "b2": 2, **ones(["c1", "c2", "c3", "c4", "c5"])},
            ),
            CriticalDimension(
                "K", 5,
                {"a1": 1, "a2": 2, "b1": 2, "b2": 1, **ones(["c1", "c2", "c3", "c4"])},
            ),
        )
    return _TABLE


def dominated_critical(
    p: Poset, d: DimensionVector
) -> tuple[CriticalDimension, CriticalEmbedding] | None:
    """A critical dimension C with C ≤ d through some embedding, or None.

    Every embedding of each critical poset is tried, which covers all value
    placements consistent with the critical poset's automorphisms.
    """
    _check_dimension(p, d)
    table = {c.kind: c for c in critical_dimension_table()}
    for emb in critical_subposet_embeddings(p):
        crit = table[emb.kind]
        if crit.c0 > d.d0:
            continue
        if all(v <= d.get(emb.image_map[x]) for x, v in crit.assignment.items()):
            return crit, emb
    return None


def is_finite_type(p: Poset, d: DimensionVector) -> bool:
    """Criterion: no critical dimension is dominated by d."""
    return dominated_critical(p, d) is None


def is_root(p: Poset, d: DimensionVector) -> bool:
    return tits_value(p, d) == 1


def finite_type_scan(p: Poset, d: DimensionVector, budget: int | None = None) -> bool:
    """Exhaustive check that Q > 0 on every nonzero d' ≤ d.

    Exponential in the entries; serves as the cross-check oracle for
    is_finite_type.  Raises BudgetExceeded when the grid is too large.
    """
    _check_dimension(p, d)
    if budget is None:
        budget = env_budget(DEFAULT_SCAN_BUDGET)
    elems = p.elements
    bounds = [d.d0] + [d.get(a) for a in elems]
    count = 1
    for b in bounds:
        count *= b + 1
        if count > budget:
            raise BudgetExceeded(
                f"finite_type_scan grid of {count}+ subvectors exceeds budget {budget}"
            )
    if _np is not None and max(bounds) < 1000 and count <= budget:
        return _scan_numpy(p, bounds)
    return _scan_python(p, bounds)


def _scan_python(p: Poset, bounds: list[int]) -> bool:
    elems = p.elements
    idx = {a: i + 1 for i, a in enumerate(elems)}
    pairs = [(idx[a], idx[b]) for a, b in p.relation_pairs()]
    n = len(elems)
    for vec in itertools.product(*(range(b + 1) for b in bounds)):
        if not any(vec):
            continue
        q = sum(x * x for x in vec)
        for i, j in pairs:
            q += vec[i] * vec[j]
        q -= vec[0] * sum(vec[1:])
        if q <= 0:
            return False
    return True


def _scan_numpy(p: Poset, bounds: list[int]) -> bool:
    elems = p.elements
    idx = {a: i + 1 for i, a in enumerate(elems)}
    grids = _np.meshgrid(*(
        _np.arange(b + 1, dtype=_np.int64) for b in bounds
    ), indexing="ij")
    cols = [g.reshape(-1) for g in grids]
    q = sum(c * c for c in cols)
    for a, b in p.relation_pairs():
        q = q + cols[idx[a]] * cols[idx[b]]
    s = sum(cols[1:]) if len(cols) > 1 else 0
    q = q - cols[0] * s
    nonzero = sum(c != 0 for c in cols) > 0
    return bool(_np.all(q[nonzero] > 0))
