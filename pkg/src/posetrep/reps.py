"""Block-matrix elements, subspace representations, and the functor between them.

An element over a poset S is one block M(a) per element, all sharing a row
count d0.  The associated representation assigns to a the column span of the
blocks at or below a.  Morphisms of elements are triangular families
Φ(0), Φ(a), Φ(ba) subject to  Φ(0)M(a) = M'(a)Φ(a) + Σ_{b≺a} M'(b)Φ(ba).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    FieldMismatch,
    UndecidableAtBudget,
    UnknownElement,
    ValidationError,
)
from .linalg import (
    DEFAULT_SEARCH_BUDGET,
    ExactMatrix,
    FieldSpec,
    block_diag,
    column_space_basis,
    env_budget,
    hstack,
    solve_columns,
    span_contains,
)
from .poset import Poset, strict_lower_cone
from .tits import DimensionVector


class SpanTracker:
    """Incremental row-echelon span for greedy independence tests."""

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.dim = dim
        self.rows: list[tuple[int, list]] = []  # (pivot index, normalized row)

    def _reduce(self, vec: list) -> list:
        f = self.field
        for pivot, row in self.rows:
            c = vec[pivot]
            if c:
                vec = [f.sub(x, f.mul(c, y)) for x, y in zip(vec, row)]
        return vec

    def contains(self, vec: Sequence) -> bool:
        vec = self._reduce(list(vec))
        return not any(vec)

    def add(self, vec: Sequence) -> bool:
        """Insert vec; True when it enlarged the span."""
        f = self.field
        vec = self._reduce(list(vec))
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            return False
        inv = f.inv(vec[pivot])
        if inv != f.one():
            vec = [f.mul(inv, x) for x in vec]
        self.rows.append((pivot, vec))
        self.rows.sort(key=lambda pr: pr[0])
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


# -- core containers ---------------------------------------------------------------


class MatrixRep:
    """Element of the block-matrix category: one d0 x d(a) block per element."""

    __slots__ = ("poset", "field", "d0", "blocks")

    def __init__(self, poset: Poset, field: FieldSpec, d0: int,
                 blocks: Mapping[str, ExactMatrix] | None = None):
        if d0 < 0:
            raise ValidationError("row count must be non-negative")
        blocks = dict(blocks or {})
        full = {}
        for a in poset.elements:
            m = blocks.pop(a, None)
            if m is None:
                m = ExactMatrix.zeros(field, d0, 0)
            if m.field != field:
                raise FieldMismatch(f"block {a!r} is over {m.field.label()}")
            if m.rows != d0:
                raise ValidationError(f"block {a!r} has {m.rows} rows, expected {d0}")
            full[a] = m
        if blocks:
            raise UnknownElement(f"blocks given for unknown elements {sorted(blocks)}")
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "d0", d0)
        object.__setattr__(self, "blocks", full)

    def __setattr__(self, *args):
        raise AttributeError("MatrixRep is immutable")

    def block(self, a: str) -> ExactMatrix:
        self.poset.check_element(a)
        return self.blocks[a]

    def cols(self, a: str) -> int:
        return self.block(a).cols

    def key(self):
        return (self.d0, tuple((a, self.blocks[a].data, self.blocks[a].cols)
                               for a in self.poset.elements))

    def __eq__(self, other):
        return (
            isinstance(other, MatrixRep)
            and self.poset == other.poset
            and self.field == other.field
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.poset, self.field, self.key()))

    def __repr__(self):
        bits = ", ".join(f"{a}:{m.rows}x{m.cols}" for a, m in self.blocks.items())
        return f"MatrixRep(d0={self.d0}, {bits})"


def dimension_of(u: MatrixRep) -> DimensionVector:
    return DimensionVector(u.d0, {a: u.cols(a) for a in u.poset.elements})


def stacked_lower_blocks(u: MatrixRep, a: str, strict: bool = False) -> ExactMatrix:
    """The blocks M(b) for b ⪯ a (or b ≺ a) side by side, in element order."""
    cone = strict_lower_cone(u.poset, a) if strict else strict_lower_cone(u.poset, a) | {a}
    mats = [ExactMatrix.zeros(u.field, u.d0, 0)]
    mats += [u.blocks[b] for b in u.poset.elements if b in cone]
    return hstack(mats)


class SubspaceRep:
    """Order-preserving assignment of subspaces of an ambient space.

    Basis matrices are canonicalized on construction, so two equal
    representations compare equal entrywise.
    """

    __slots__ = ("poset", "field", "ambient_dim", "subspaces")

    def __init__(self, poset: Poset, field: FieldSpec, ambient_dim: int,
                 subspaces: Mapping[str, ExactMatrix]):
        canon = {}
        for a in poset.elements:
            m = subspaces.get(a)
            if m is None:
                m = ExactMatrix.zeros(field, ambient_dim, 0)
            if m.rows != ambient_dim or m.field != field:
                raise ValidationError(f"subspace basis at {a!r} has the wrong shape/field")
            canon[a] = column_space_basis(m)
        for a, b in poset.relation_pairs():
            if not span_contains(canon[b], canon[a]):
                raise ValidationError(
                    f"not order preserving: V({a}) is not contained in V({b})"
                )
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "subspaces", canon)

    def __setattr__(self, *args):
        raise AttributeError("SubspaceRep is immutable")

    def subspace(self, a: str) -> ExactMatrix:
        self.poset.check_element(a)
        return self.subspaces[a]

    def dim(self, a: str) -> int:
        return self.subspace(a).cols

    def below_sum(self, a: str) -> ExactMatrix:
        mats = [ExactMatrix.zeros(self.field, self.ambient_dim, 0)]
        mats += [self.subspaces[b] for b in self.poset.elements
                 if b in strict_lower_cone(self.poset, a)]
        return column_space_basis(hstack(mats))

    def dimension_vector(self) -> DimensionVector:
        vals = {}
        for a in self.poset.elements:
            vals[a] = self.dim(a) - self.below_sum(a).cols
        return DimensionVector(self.ambient_dim, vals)

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceRep)
            and self.poset == other.poset
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and all(self.subspaces[a] == other.subspaces[a] for a in self.poset.elements)
        )

    def __hash__(self):
        return hash((self.poset, self.field, self.ambient_dim,
                     tuple(self.subspaces[a] for a in self.poset.elements)))

    def __repr__(self):
        bits = ", ".join(f"{a}:{m.cols}" for a, m in self.subspaces.items())
        return f"SubspaceRep(dim {self.ambient_dim}; {bits})"


# -- the functor both ways -----------------------------------------------------------


def rho(u: MatrixRep) -> SubspaceRep:
    """V(a) = column span of the blocks at or below a."""
    subs = {a: column_space_basis(stacked_lower_blocks(u, a)) for a in u.poset.elements}
    return SubspaceRep(u.poset, u.field, u.d0, subs)


def lift(v: SubspaceRep) -> MatrixRep:
    """Canonical element with rho(lift(v)) = v.

    Block a holds a greedy completion of Σ_{b≺a} V(b) to V(a), chosen from
    the canonical basis columns of V(a) in index order.
    """
    blocks = {}
    for a in v.poset.elements:
        tracker = SpanTracker(v.field, v.ambient_dim)
        for col in v.below_sum(a).columns():
            tracker.add(col)
        picked = [col for col in v.subspace(a).columns() if tracker.add(col)]
        if picked:
            blocks[a] = ExactMatrix(v.field, v.ambient_dim, len(picked),
                                    [tuple(c[i] for c in picked)
                                     for i in range(v.ambient_dim)])
    return MatrixRep(v.poset, v.field, v.ambient_dim, blocks)


# -- distinguished elements -----------------------------------------------------------


def special_T(p: Poset, field: FieldSpec, a: str) -> MatrixRep:
    """Trivial element at a: zero rows, one column in block a."""
    p.check_element(a)
    return MatrixRep(p, field, 0, {a: ExactMatrix.zeros(field, 0, 1)})


def special_T0(p: Poset, field: FieldSpec) -> MatrixRep:
    """One ambient dimension, no columns anywhere."""
    return MatrixRep(p, field, 1, {})


def antichain_unit_element(p: Poset, field: FieldSpec, members: Sequence[str]) -> MatrixRep:
    """d0 = 1 element with a single 1 x 1 unit block at each listed element.

    The members must be pairwise incomparable; this covers T0 (no members),
    E_a (one member) and E_p (an incomparable pair).
    """
    members = list(members)
    for m in members:
        p.check_element(m)
    for x, y in itertools.combinations(members, 2):
        if p.comparable(x, y):
            raise ValidationError(f"{x!r} and {y!r} are comparable")
    one = ExactMatrix.from_rows(field, [[1]])
    return MatrixRep(p, field, 1, {m: one for m in members})


def special_E(p: Poset, field: FieldSpec, a: str) -> MatrixRep:
    return antichain_unit_element(p, field, [a])


def special_E_pair(p: Poset, field: FieldSpec, pair: Sequence[str]) -> MatrixRep:
    x, y = pair
    if p.comparable(x, y):
        raise ValidationError(f"{x!r}, {y!r} do not form an incomparable pair")
    return antichain_unit_element(p, field, [x, y])


def direct_sum(u: MatrixRep, v: MatrixRep) -> MatrixRep:
    if u.poset != v.poset:
        raise ValidationError("direct sum over different posets")
    if u.field != v.field:
        raise FieldMismatch("direct sum over different fields")
    blocks = {a: block_diag(u.blocks[a], v.blocks[a]) for a in u.poset.elements}
    return MatrixRep(u.poset, u.field, u.d0 + v.d0, blocks)


# -- morphisms ------------------------------------------------------------------------


@dataclass(frozen=True)
class ElMorphism:
    """Triangular morphism family between two elements over the same poset."""

    phi0: ExactMatrix
    phi_diag: Mapping[str, ExactMatrix]
    phi_tri: Mapping[tuple[str, str], ExactMatrix]  # key (b, a) with b ≺ a

    def is_invertible(self) -> bool:
        if not self.phi0.is_invertible():
            return False
        return all(m.is_invertible() for m in self.phi_diag.values())

    def scale(self, c) -> "ElMorphism":
        return ElMorphism(
            self.phi0.scale(c),
            {a: m.scale(c) for a, m in self.phi_diag.items()},
            {k: m.scale(c) for k, m in self.phi_tri.items()},
        )

    def __add__(self, other: "ElMorphism") -> "ElMorphism":
        return ElMorphism(
            self.phi0 + other.phi0,
            {a: m + other.phi_diag[a] for a, m in self.phi_diag.items()},
            {k: m + other.phi_tri[k] for k, m in self.phi_tri.items()},
        )


def el_morphism_satisfies(phi: ElMorphism, u: MatrixRep, v: MatrixRep) -> bool:
    """Check the defining block equations of a morphism u -> v."""
    p = u.poset
    for a in p.elements:
        lhs = phi.phi0 @ u.blocks[a]
        rhs = v.blocks[a] @ phi.phi_diag[a]
        for b in strict_lower_cone(p, a):
            rhs = rhs + v.blocks[b] @ phi.phi_tri[(b, a)]
        if lhs != rhs:
            return False
    return True


def compose(psi: ElMorphism, phi: ElMorphism, poset: Poset) -> ElMorphism:
    """psi after phi, with the triangular convolution on the lower parts."""
    phi0 = psi.phi0 @ phi.phi0
    diag = {a: psi.phi_diag[a] @ phi.phi_diag[a] for a in poset.elements}
    tri = {}
    for (b, a), m in phi.phi_tri.items():
        tri[(b, a)] = psi.phi_tri[(b, a)] @ phi.phi_diag[a] + psi.phi_diag[b] @ m
    for a in poset.elements:
        for b in strict_lower_cone(poset, a):
            acc = tri[(b, a)]
            for c in strict_lower_cone(poset, a):
                if poset.lt(b, c):
                    acc = acc + psi.phi_tri[(b, c)] @ phi.phi_tri[(c, a)]
            tri[(b, a)] = acc
    return ElMorphism(phi0, diag, tri)


def _hom_slots(u: MatrixRep, v: MatrixRep):
    """Unknown layout for the morphism system u -> v."""
    p = u.poset
    slots = [("0", None, v.d0, u.d0)]
    for a in p.elements:
        slots.append(("diag", a, v.cols(a), u.cols(a)))
    for a in p.elements:
        for b in p.elements:
            if p.lt(b, a):
                slots.append(("tri", (b, a), v.cols(b), u.cols(a)))
    offsets = {}
    total = 0
    for kind, key, r, c in slots:
        offsets[(kind, key)] = total
        total += r * c
    return slots, offsets, total


def _vector_to_morphism(vec, u: MatrixRep, v: MatrixRep, slots, offsets) -> ElMorphism:
    field = u.field

    def grab(kind, key, r, c):
        off = offsets[(kind, key)]
        return ExactMatrix(field, r, c,
                           [vec[off + i * c: off + (i + 1) * c] for i in range(r)])

    phi0 = grab("0", None, v.d0, u.d0)
    diag = {}
    tri = {}
    for kind, key, r, c in slots:
        if kind == "diag":
            diag[key] = grab(kind, key, r, c)
        elif kind == "tri":
            tri[key] = grab(kind, key, r, c)
    return ElMorphism(phi0, diag, tri)


def el_hom_basis(u: MatrixRep, v: MatrixRep) -> list[ElMorphism]:
    """Basis of the solution space of the morphism equations u -> v."""
    if u.poset != v.poset:
        raise ValidationError("hom between elements over different posets")
    if u.field != v.field:
        raise FieldMismatch("hom between elements over different fields")
    p, field = u.poset, u.field
    slots, offsets, total = _hom_slots(u, v)
    zero = field.zero()
    rows = []
    for a in p.elements:
        Ma = u.blocks[a]
        Va = v.blocks[a]
        lowers = [b for b in p.elements if p.lt(b, a)]
        for i in range(v.d0):
            for j in range(Ma.cols):
                row = [zero] * total
                off0 = offsets[("0", None)]
                for k in range(u.d0):
                    row[off0 + i * u.d0 + k] = field.add(row[off0 + i * u.d0 + k],
                                                         Ma.data[k][j])
                offd = offsets[("diag", a)]
                for k in range(Va.cols):
                    row[offd + k * Ma.cols + j] = field.sub(
                        row[offd + k * Ma.cols + j], Va.data[i][k])
                for b in lowers:
                    Vb = v.blocks[b]
                    offt = offsets[("tri", (b, a))]
                    for k in range(Vb.cols):
                        row[offt + k * Ma.cols + j] = field.sub(
                            row[offt + k * Ma.cols + j], Vb.data[i][k])
                rows.append(row)
    if not rows:
        system = ExactMatrix.zeros(field, 0, total)
    else:
        system = ExactMatrix(field, len(rows), total, rows)
    return [
        _vector_to_morphism(list(vec), u, v, slots, offsets)
        for vec in system.nullspace_basis()
    ]


def end_dimension(u: MatrixRep) -> int:
    """Dimension of the element-level endomorphism space."""
    return len(el_hom_basis(u, u))


def end_algebra(u: MatrixRep):
    """Basis of End(u) and structure constants of its multiplication.

    Returns (basis, table) with table[i][j] the coordinates of basis[i]∘basis[j].
    """
    basis = el_hom_basis(u, u)
    slots, offsets, total = _hom_slots(u, u)

    def flatten(m: ElMorphism):
        vec = [u.field.zero()] * total
        def put(mat, off):
            for i in range(mat.rows):
                for j in range(mat.cols):
                    vec[off + i * mat.cols + j] = mat.data[i][j]
        put(m.phi0, offsets[("0", None)])
        for a, mat in m.phi_diag.items():
            put(mat, offsets[("diag", a)])
        for k, mat in m.phi_tri.items():
            put(mat, offsets[("tri", k)])
        return vec

    if not basis:
        return [], []
    cols = [flatten(m) for m in basis]
    bmat = ExactMatrix(u.field, total, len(cols),
                       [tuple(c[i] for c in cols) for i in range(total)])
    table = []
    for mi in basis:
        row = []
        for mj in basis:
            prod = compose(mi, mj, u.poset)
            coords = solve_columns(bmat, ExactMatrix.column(u.field, flatten(prod)))
            row.append(tuple(coords.data[k][0] for k in range(len(basis))))
        table.append(row)
    return basis, table


@dataclass(frozen=True)
class RepMorphism:
    """Ambient linear map carrying each subspace into its counterpart."""

    f: ExactMatrix


def rep_hom_basis(v: SubspaceRep, w: SubspaceRep) -> list[RepMorphism]:
    """Basis of {f : f·V(a) ⊆ W(a) for all a}."""
    if v.poset != w.poset:
        raise ValidationError("hom between representations over different posets")
    if v.field != w.field:
        raise FieldMismatch("hom between representations over different fields")
    field = v.field
    n_unknowns = w.ambient_dim * v.ambient_dim
    zero = field.zero()
    rows = []
    for a in v.poset.elements:
        B = v.subspaces[a]
        annihilator = w.subspaces[a].transpose().nullspace_basis()
        for y in annihilator:
            for c in range(B.cols):
                row = [zero] * n_unknowns
                for i in range(w.ambient_dim):
                    if not y[i]:
                        continue
                    for j in range(v.ambient_dim):
                        row[i * v.ambient_dim + j] = field.add(
                            row[i * v.ambient_dim + j],
                            field.mul(y[i], B.data[j][c]))
                rows.append(row)
    system = (ExactMatrix(field, len(rows), n_unknowns, rows)
              if rows else ExactMatrix.zeros(field, 0, n_unknowns))
    out = []
    for vec in system.nullspace_basis():
        out.append(RepMorphism(ExactMatrix(
            field, w.ambient_dim, v.ambient_dim,
            [vec[i * v.ambient_dim:(i + 1) * v.ambient_dim]
             for i in range(w.ambient_dim)])))
    return out


def rep_end_dimension(v: SubspaceRep) -> int:
    return len(rep_hom_basis(v, v))


# -- decomposition ---------------------------------------------------------------------


def split_trivial_columns(u: MatrixRep) -> tuple[MatrixRep, dict[str, int]]:
    """Split off trivial summands: block columns dependent on the part below.

    Returns the column-independent core and the multiset of split columns.
    """
    blocks = {}
    trivials: dict[str, int] = {}
    for a in u.poset.elements:
        tracker = SpanTracker(u.field, u.d0)
        for col in stacked_lower_blocks(u, a, strict=True).columns():
            tracker.add(col)
        kept = [col for col in u.blocks[a].columns() if tracker.add(col)]
        dropped = u.cols(a) - len(kept)
        if dropped:
            trivials[a] = dropped
        if kept:
            blocks[a] = ExactMatrix(u.field, u.d0, len(kept),
                                    [tuple(c[i] for c in kept) for i in range(u.d0)])
    return MatrixRep(u.poset, u.field, u.d0, blocks), trivials


def _matrix_power_at_least(m: ExactMatrix, n: int) -> ExactMatrix:
    out = m
    e = 1
    while e < n:
        out = out @ out
        e *= 2
    return out


def _find_splitting_idempotent(basis: list[ExactMatrix], n: int, field: FieldSpec,
                               budget: int | None = None) -> ExactMatrix | None:
    """Nontrivial idempotent in the span of basis (an algebra), or None if local.

    Strategy: scan basis elements, pairwise sums and products, then seeded
    random combinations, using Fitting decompositions; finish with exhaustive
    enumeration when the algebra is small enough, otherwise give up loudly.
    """
    if budget is None:
        budget = env_budget(DEFAULT_SEARCH_BUDGET)
    if n == 0 or len(basis) <= 1:
        return None
    ident = ExactMatrix.identity(field, n)

    def inspect(f: ExactMatrix) -> ExactMatrix | None:
        if f.is_zero() or f == ident:
            return None
        if f @ f == f:
            return f
        g = _matrix_power_at_least(f, n)
        r = g.rank()
        if r == 0 or r == n:
            return None
        img = column_space_basis(g)
        ker_vecs = g.nullspace_basis()
        ker = ExactMatrix(field, n, len(ker_vecs),
                          [tuple(v[i] for v in ker_vecs) for i in range(n)])
        A = hstack([img, ker])
        diag = ExactMatrix(field, n, n, [
            [field.one() if (i == j and i < r) else field.zero() for j in range(n)]
            for i in range(n)
        ])
        e = A @ diag @ A.inverse()
        assert e @ e == e
        return e

    for f in basis:
        e = inspect(f)
        if e is not None:
            return e
    for f, g in itertools.combinations(basis, 2):
        e = inspect(f + g)
        if e is not None:
            return e
    for f, g in itertools.permutations(basis, 2):
        e = inspect(f @ g)
        if e is not None:
            return e
    rng = random.Random(0xC0FFEE)
    if field.is_prime_field:
        for _ in range(64):
            coeffs = [rng.randrange(field.p) for _ in basis]
            cand = None
            for c, b in zip(coeffs, basis):
                if c:
                    term = b.scale(c)
                    cand = term if cand is None else cand + term
            if cand is not None:
                e = inspect(cand)
                if e is not None:
                    return e
        if field.p ** len(basis) <= budget:
            for coeffs in itertools.product(range(field.p), repeat=len(basis)):
                cand = None
                for c, b in zip(coeffs, basis):
                    if c:
                        term = b.scale(c)
                        cand = term if cand is None else cand + term
                if cand is None or cand == ident:
                    continue
                if cand @ cand == cand:
                    return cand
            return None
        raise UndecidableAtBudget(
            f"endomorphism algebra of dimension {len(basis)} over {field.label()} "
            f"exceeds the idempotent search budget {budget}"
        )
    # rationals: the heuristics above are all we attempt
    for _ in range(64):
        coeffs = [rng.randrange(-3, 4) for _ in basis]
        cand = None
        for c, b in zip(coeffs, basis):
            if c:
                term = b.scale(c)
                cand = term if cand is None else cand + term
        if cand is not None:
            e = inspect(cand)
            if e is not None:
                return e
    raise UndecidableAtBudget(
        "cannot certify indecomposability over the rationals at this size"
    )


def _restrict_rep(v: SubspaceRep, e: ExactMatrix) -> SubspaceRep:
    """Restriction of v to the image of the idempotent e, recoordinatized."""
    C = column_space_basis(e)
    subs = {}
    for a in v.poset.elements:
        image = e @ v.subspaces[a]
        coords = solve_columns(C, image)
        subs[a] = coords if coords is not None else ExactMatrix.zeros(v.field, C.cols, 0)
    return SubspaceRep(v.poset, v.field, C.cols, subs)


def rep_decompose(v: SubspaceRep, budget: int | None = None) -> list[SubspaceRep]:
    """Indecomposable summands of a subspace representation."""
    if v.ambient_dim == 0:
        return []
    basis = [m.f for m in rep_hom_basis(v, v)]
    e = _find_splitting_idempotent(basis, v.ambient_dim, v.field, budget)
    if e is None:
        return [v]
    comp = ExactMatrix.identity(v.field, v.ambient_dim) - e
    return rep_decompose(_restrict_rep(v, e), budget) + rep_decompose(
        _restrict_rep(v, comp), budget)


@dataclass(frozen=True)
class Decomposition:
    pieces: tuple[MatrixRep, ...]
    trivials: Mapping[str, int]

    def piece_dimensions(self) -> list[DimensionVector]:
        return [dimension_of(p) for p in self.pieces]


def decompose(u: MatrixRep, budget: int | None = None) -> Decomposition:
    """Krull-Schmidt decomposition; trivial summands are reported separately."""
    reduced, trivials = split_trivial_columns(u)
    pieces: list[MatrixRep] = []
    if reduced.d0 > 0:
        pieces = [lift(w) for w in rep_decompose(rho(reduced), budget)]
    pieces.sort(key=lambda m: (dimension_of(m).key(), m.key()))
    return Decomposition(tuple(pieces), dict(trivials))


def is_indecomposable(u: MatrixRep, budget: int | None = None) -> bool:
    """Indecomposability in the element category.

    Trivial summands are split off by column reduction first; the remaining
    core is tested through its representation's endomorphism algebra.
    """
    reduced, trivials = split_trivial_columns(u)
    tcount = sum(trivials.values())
    if u.d0 == 0:
        return tcount == 1
    if tcount > 0:
        return False
    v = rho(reduced)
    basis = [m.f for m in rep_hom_basis(v, v)]
    return _find_splitting_idempotent(basis, v.ambient_dim, v.field, budget) is None


# -- isomorphism ------------------------------------------------------------------------


def _identity_morphism(u: MatrixRep) -> ElMorphism:
    p, field = u.poset, u.field
    return ElMorphism(
        ExactMatrix.identity(field, u.d0),
        {a: ExactMatrix.identity(field, u.cols(a)) for a in p.elements},
        {(b, a): ExactMatrix.zeros(field, u.cols(b), u.cols(a))
         for a in p.elements for b in p.elements if p.lt(b, a)},
    )


def _combination(hom: list[ElMorphism], coeffs) -> ElMorphism | None:
    cand = None
    for c, h in zip(coeffs, hom):
        if c:
            term = h.scale(c)
            cand = term if cand is None else cand + term
    return cand


def are_isomorphic(u: MatrixRep, v: MatrixRep,
                   budget: int | None = None) -> ElMorphism | None:
    """An invertible morphism u -> v, or None.

    Invertibility of a morphism means all diagonal components (including the
    ambient one) are invertible; the triangular parts never obstruct.
    """
    if budget is None:
        budget = env_budget(DEFAULT_SEARCH_BUDGET)
    if u.poset != v.poset or u.field != v.field:
        return None
    if dimension_of(u) != dimension_of(v):
        return None
    if u == v:
        return _identity_morphism(u)
    hom = el_hom_basis(u, v)
    for h in hom:
        if h.is_invertible():
            return h
    # basis scan suffices for indecomposables; otherwise match summands
    du = decompose(u, budget)
    dv = decompose(v, budget)
    if dict(du.trivials) != dict(dv.trivials):
        return None
    if len(du.pieces) != len(dv.pieces):
        return None
    if len(du.pieces) <= 1 and not du.trivials:
        return None  # both indecomposable; the basis scan was conclusive
    remaining = list(dv.pieces)
    for piece in du.pieces:
        match = next(
            (i for i, q in enumerate(remaining)
             if are_isomorphic(piece, q, budget) is not None),
            None,
        )
        if match is None:
            return None
        remaining.pop(match)
    # summands match, so an isomorphism exists; hunt for a certificate
    rng = random.Random(0xBEEF)
    if u.field.is_prime_field:
        for _ in range(4096):
            cand = _combination(hom, [rng.randrange(u.field.p) for _ in hom])
            if cand is not None and cand.is_invertible():
                return cand
        if u.field.p ** len(hom) <= 1 << 14:
            for coeffs in itertools.product(range(u.field.p), repeat=len(hom)):
                cand = _combination(hom, coeffs)
                if cand is not None and cand.is_invertible():
                    return cand
            return None  # exhaustive: genuinely no invertible morphism
        raise UndecidableAtBudget("summands match but no certificate was found")
    for _ in range(4096):
        cand = _combination(hom, [rng.randrange(-3, 4) for _ in hom])
        if cand is not None and cand.is_invertible():
            return cand
    raise UndecidableAtBudget("summands match but no certificate was found")


def is_quite_sincere(v: SubspaceRep, budget: int | None = None) -> bool:
    """Indecomposable, with V(a) proper and strictly above its lower sum, all a."""
    if v.ambient_dim == 0:
        return False
    for a in v.poset.elements:
        if v.dim(a) == v.ambient_dim:
            return False
        if v.dim(a) == v.below_sum(a).cols:
            return False
    basis = [m.f for m in rep_hom_basis(v, v)]
    return _find_splitting_idempotent(basis, v.ambient_dim, v.field, budget) is None
