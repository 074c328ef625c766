"""Based algebras given by structure constants, identity checks and series.

Indices are 0-based throughout the Python API; the JSON layer shifts them to
the 1-based convention used in printed tables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    DimensionMismatch,
    HypothesisViolated,
    JacobiFailure,
    NotTwoStepNilpotent,
    PreconditionFailed,
)
from .linalg import LinearOperator, Vector, to_fraction, vec_add, vec_scale, vec_sub

HALF = Fraction(1, 2)


class StructureTable:
    """Sparse rank-3 tensor: ``x_i * x_j = sum_k entries[i, j, k] x_k``."""

    def __init__(self, dim: int, entries: Mapping | None = None):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        clean = {}
        for key, c in (entries or {}).items():
            i, j, k = key
            if not all(0 <= t < dim for t in (i, j, k)):
                raise IndexError(f"index triple {key} outside dimension {dim}")
            c = to_fraction(c)
            if c:
                clean[(i, j, k)] = c
        self.dim = dim
        self.entries = dict(sorted(clean.items()))

    @classmethod
    def from_products(cls, dim: int, products: Mapping) -> "StructureTable":
        """Build from ``{(i, j): {k: c}}`` or ``{(i, j): vector}``."""
        entries = {}
        for (i, j), val in products.items():
            items = val.items() if isinstance(val, Mapping) else enumerate(val)
            for k, c in items:
                entries[(i, j, k)] = entries.get((i, j, k), 0) + to_fraction(c)
        return cls(dim, entries)

    @classmethod
    def from_vectors(cls, dim: int, mul) -> "StructureTable":
        """Build from a callable ``mul(i, j) -> vector``."""
        entries = {}
        for i in range(dim):
            for j in range(dim):
                for k, c in enumerate(mul(i, j)):
                    if c:
                        entries[(i, j, k)] = c
        return cls(dim, entries)

    def __eq__(self, other):
        return isinstance(other, StructureTable) and self.dim == other.dim and self.entries == other.entries

    def __hash__(self):
        return hash((self.dim, tuple(self.entries.items())))

    def __repr__(self):
        return f"StructureTable(dim={self.dim}, nnz={len(self.entries)})"

    @cached_property
    def _dense(self):
        n = self.dim
        t = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), c in self.entries.items():
            t[i][j][k] = c
        return tuple(tuple(tuple(v) for v in row) for row in t)

    def mul(self, i: int, j: int) -> Vector:
        return self._dense[i][j]

    def product(self, u: Sequence, v: Sequence) -> Vector:
        n = self.dim
        out = [Fraction(0)] * n
        for i, a in enumerate(u):
            if not a:
                continue
            row = self._dense[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def left(self, u: Sequence) -> LinearOperator:
        """Matrix of v -> u * v."""
        n = self.dim
        return LinearOperator.from_columns([self.product(u, linalg.unit_vector(n, j)) for j in range(n)], n)

    def right(self, u: Sequence) -> LinearOperator:
        """Matrix of v -> v * u."""
        n = self.dim
        return LinearOperator.from_columns([self.product(linalg.unit_vector(n, j), u) for j in range(n)], n)

    def scaled(self, c) -> "StructureTable":
        c = to_fraction(c)
        return StructureTable(self.dim, {k: c * v for k, v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple
    residual: tuple

    def __post_init__(self):
        if not any(self.residual):
            raise ValueError("a violation must carry a nonzero residual")


@dataclass
class CheckReport:
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def add(self, identity: str, indices, residual) -> None:
        if any(residual):
            self.violations.append(Violation(identity, tuple(indices), tuple(residual)))

    def failed_identities(self) -> set:
        return {v.identity for v in self.violations}

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self


def _basis(n):
    return [linalg.unit_vector(n, i) for i in range(n)]


class _Based:
    table: StructureTable
    labels: tuple | None

    @property
    def dim(self) -> int:
        return self.table.dim

    def mul(self, i, j):
        return self.table.mul(i, j)

    def product(self, u, v):
        return self.table.product(u, v)

    def _check_labels(self):
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.table.dim:
                raise DimensionMismatch("labels must name every basis vector")

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"x{i + 1}"


@dataclass(frozen=True, eq=True)
class LieAlgebra(_Based):
    table: StructureTable
    labels: tuple | None = None

    def __post_init__(self):
        self._check_labels()

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping, labels=None) -> "LieAlgebra":
        """``brackets`` maps ``(i, j)`` to the value of ``[x_i, x_j]``; the
        antisymmetric counterpart is filled in."""
        products = {}
        for (i, j), val in brackets.items():
            items = dict(val.items() if isinstance(val, Mapping) else enumerate(val))
            for k, c in items.items():
                c = to_fraction(c)
                products.setdefault((i, j), {})
                products.setdefault((j, i), {})
                products[(i, j)][k] = products[(i, j)].get(k, 0) + c
                products[(j, i)][k] = products[(j, i)].get(k, 0) - c
        return cls(StructureTable.from_products(dim, products), labels)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(StructureTable(dim))

    def bracket(self, u, v) -> Vector:
        return self.table.product(u, v)

    def ad(self, u) -> LinearOperator:
        return self.table.left(u)

    def ad_basis(self, i: int) -> LinearOperator:
        return self.table.left(linalg.unit_vector(self.dim, i))


@dataclass(frozen=True, eq=True)
class AlgebraProduct(_Based):
    table: StructureTable
    labels: tuple | None = None

    def __post_init__(self):
        self._check_labels()

    @classmethod
    def zero(cls, dim: int) -> "AlgebraProduct":
        return cls(StructureTable(dim))

    @classmethod
    def from_products(cls, dim: int, products: Mapping, labels=None) -> "AlgebraProduct":
        return cls(StructureTable.from_products(dim, products), labels)

    def L(self, i: int) -> LinearOperator:
        return self.table.left(linalg.unit_vector(self.dim, i))

    def R(self, i: int) -> LinearOperator:
        return self.table.right(linalg.unit_vector(self.dim, i))


# --------------------------------------------------------------------------
# identity checks


def check_jacobi(L: LieAlgebra) -> CheckReport:
    rep = CheckReport()
    n = L.dim
    for i in range(n):
        for j in range(i, n):
            rep.add("antisymmetry", (i, j), vec_add(L.mul(i, j), L.mul(j, i)))
    e = _basis(n)
    triples = combinations(range(n), 3) if rep.passed else (
        (i, j, k) for i in range(n) for j in range(n) for k in range(n))
    for i, j, k in triples:
        b = L.bracket
        r = vec_add(vec_add(b(L.mul(i, j), e[k]), b(L.mul(j, k), e[i])), b(L.mul(k, i), e[j]))
        rep.add("jacobi", (i, j, k), r)
    return rep


def _associator(P, x, y, z):
    return vec_sub(P.product(P.product(x, y), z), P.product(x, P.product(y, z)))


def check_left_symmetric(A: AlgebraProduct) -> CheckReport:
    """x(yz) - (xy)z = y(xz) - (yx)z on every basis triple (x, y unordered)."""
    rep = CheckReport()
    n = A.dim
    e = _basis(n)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                r = vec_sub(_associator(A, e[i], e[j], e[k]), _associator(A, e[j], e[i], e[k]))
                rep.add("left_symmetry", (i, j, k), r)
    return rep


def check_right_commutative(A: AlgebraProduct) -> CheckReport:
    rep = CheckReport()
    n = A.dim
    for i in range(n):
        for j in range(n):
            xy = A.mul(i, j)
            for k in range(j + 1, n):
                xz = A.mul(i, k)
                r = vec_sub(A.product(xy, linalg.unit_vector(n, k)), A.product(xz, linalg.unit_vector(n, j)))
                rep.add("right_commutativity", (i, j, k), r)
    return rep


def check_novikov(A: AlgebraProduct) -> CheckReport:
    """Left-symmetry plus commuting right multiplications; violations are
    tagged ``left_symmetry`` or ``right_commutativity``."""
    return check_left_symmetric(A).extend(check_right_commutative(A))


def _commutator_vec(A, x, y):
    return vec_sub(A.product(x, y), A.product(y, x))


def check_jacobi_like(A: AlgebraProduct) -> CheckReport:
    rep = CheckReport()
    n = A.dim
    e = _basis(n)
    p = A.product
    for i, j, k in combinations(range(n), 3):
        x, y, z = e[i], e[j], e[k]
        first = vec_add(vec_add(p(_commutator_vec(A, x, y), z), p(_commutator_vec(A, y, z), x)),
                        p(_commutator_vec(A, z, x), y))
        second = vec_add(vec_add(p(x, _commutator_vec(A, y, z)), p(y, _commutator_vec(A, z, x))),
                         p(z, _commutator_vec(A, x, y)))
        rep.add("jacobi_like_right", (i, j, k), first)
        rep.add("jacobi_like_left", (i, j, k), second)
    return rep


def check_commutative_associative(A: AlgebraProduct) -> CheckReport:
    rep = CheckReport()
    n = A.dim
    e = _basis(n)
    for i in range(n):
        for j in range(i + 1, n):
            rep.add("commutativity", (i, j), vec_sub(A.mul(i, j), A.mul(j, i)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rep.add("associativity", (i, j, k), _associator(A, e[i], e[j], e[k]))
    return rep


def check_derivation(A: AlgebraProduct, D: LinearOperator) -> CheckReport:
    n = A.dim
    if (D.rows, D.cols) != (n, n):
        raise DimensionMismatch(f"derivation must be {n}x{n}")
    rep = CheckReport()
    for i in range(n):
        for j in range(n):
            lhs = D.apply(A.mul(i, j))
            rhs = vec_add(A.product(D.column(i), linalg.unit_vector(n, j)),
                          A.product(linalg.unit_vector(n, i), D.column(j)))
            rep.add("leibniz", (i, j), vec_sub(lhs, rhs))
    return rep


# --------------------------------------------------------------------------
# derived objects


def commutator(A: AlgebraProduct, *, strict: bool = True) -> LieAlgebra:
    """Lie algebra of ``[x, y] = x y - y x``.

    Raises JacobiFailure when the result is not a Lie algebra, unless
    ``strict`` is False.
    """
    n = A.dim
    table = StructureTable.from_vectors(n, lambda i, j: vec_sub(A.mul(i, j), A.mul(j, i)))
    L = LieAlgebra(table, A.labels)
    if strict:
        rep = check_jacobi(L)
        if not rep.passed:
            raise JacobiFailure(L, rep)
    return L


def is_compatible(A: AlgebraProduct, L: LieAlgebra) -> bool:
    if A.dim != L.dim:
        raise DimensionMismatch(f"product has dim {A.dim}, Lie algebra has dim {L.dim}")
    return commutator(A, strict=False).table == L.table


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    dims: tuple
    basis_witnesses: tuple

    @property
    def terminal_dim(self) -> int:
        return self.dims[-1]


def series(L: LieAlgebra, kind: str = "derived") -> SeriesReport:
    """Derived (``[g^(i), g^(i)]``) or lower central (``[g, g^i]``) series.

    Stops when a term is zero or equals its predecessor.
    """
    if kind not in ("derived", "lower_central"):
        raise ValueError(f"unknown series kind {kind!r}")
    n = L.dim
    current = linalg.echelon_basis(_basis(n), n)
    dims = [len(current)]
    witnesses = [tuple(current)]
    full = _basis(n)
    while dims[-1]:
        left = current if kind == "derived" else full
        images = [L.bracket(u, v) for u in left for v in current]
        nxt = linalg.echelon_basis(images, n)
        if len(nxt) == dims[-1]:
            dims.append(len(nxt))
            witnesses.append(tuple(nxt))
            break
        current = nxt
        dims.append(len(current))
        witnesses.append(tuple(current))
    return SeriesReport(kind, tuple(dims), tuple(witnesses))


def is_solvable(L: LieAlgebra) -> bool:
    return series(L, "derived").terminal_dim == 0


def is_nilpotent(L: LieAlgebra) -> bool:
    return series(L, "lower_central").terminal_dim == 0


def nilpotency_class(L: LieAlgebra) -> int | None:
    """Smallest p with g^{p+1} = 0, or None if not nilpotent."""
    s = series(L, "lower_central")
    if s.terminal_dim:
        return None
    return len(s.dims) - 1


def is_filiform(L: LieAlgebra) -> bool:
    return L.dim >= 1 and nilpotency_class(L) == L.dim - 1


# --------------------------------------------------------------------------
# constructions


def half_bracket(L: LieAlgebra) -> AlgebraProduct:
    """``x . y = [x, y] / 2`` on a two-step nilpotent Lie algebra."""
    cls = nilpotency_class(L)
    if cls is None or cls > 2:
        raise NotTwoStepNilpotent(f"nilpotency class is {cls}, need at most 2")
    return AlgebraProduct(L.table.scaled(HALF), L.labels)


def _span_of_brackets(L, left, right):
    n = L.dim
    return linalg.echelon_basis([L.bracket(u, v) for u in left for v in right], n)


def block_product(L: LieAlgebra, e_part: Sequence[int], f_part: Sequence[int]) -> AlgebraProduct:
    """Novikov product for a splitting g = a + b with [a,a] in a, [g,b] in b,
    [g,[a,a]] = 0 and [g,[b,b]] = 0.

    ``e_part`` and ``f_part`` partition the basis indices; the product is
    half the bracket inside each part, ``e.f = [e,f]`` and ``f.e = 0``.
    """
    n = L.dim
    e_part, f_part = list(e_part), list(f_part)
    if sorted(e_part + f_part) != list(range(n)):
        raise ValueError("e_part and f_part must partition the basis indices")
    e = _basis(n)
    a_basis = [e[i] for i in e_part]
    b_basis = [e[i] for i in f_part]
    a_span = linalg.echelon_basis(a_basis, n)
    b_span = linalg.echelon_basis(b_basis, n)

    for i in e_part:
        for j in e_part:
            if not linalg.in_span(a_span, L.mul(i, j)):
                raise HypothesisViolated("[a,a] in a", (i, j))
    for i in range(n):
        for j in f_part:
            if not linalg.in_span(b_span, L.mul(i, j)):
                raise HypothesisViolated("[g,b] in b", (i, j))
    for name, part in (("[g,[a,a]] = 0", e_part), ("[g,[b,b]] = 0", f_part)):
        for i in part:
            for j in part:
                inner = L.mul(i, j)
                for k in range(n):
                    if any(L.bracket(e[k], inner)):
                        raise HypothesisViolated(name, (k, i, j))

    in_a = set(e_part)
    products = {}
    for i in range(n):
        for j in range(n):
            if i in in_a and j in in_a:
                products[(i, j)] = vec_scale(HALF, L.mul(i, j))
            elif i in in_a:
                products[(i, j)] = L.mul(i, j)
            elif j in in_a:
                continue
            else:
                products[(i, j)] = vec_scale(HALF, L.mul(i, j))
    return AlgebraProduct(StructureTable.from_products(n, products), L.labels)


def novikov_from_derivation(A: AlgebraProduct, D: LinearOperator) -> AlgebraProduct:
    """``x o y = x . D(y)`` for a commutative associative algebra and a derivation D."""
    rep = check_commutative_associative(A)
    if not rep.passed:
        raise PreconditionFailed("commutative_associative", rep)
    rep = check_derivation(A, D)
    if not rep.passed:
        raise PreconditionFailed("derivation", rep)
    n = A.dim
    return AlgebraProduct(
        StructureTable.from_vectors(n, lambda i, j: A.product(linalg.unit_vector(n, i), D.column(j))),
        A.labels,
    )


def right_nilpotency(A: AlgebraProduct) -> tuple[bool, int | None]:
    """Whether all length-p products of right multiplications vanish, with minimal p.

    Works on the spans W_p of length-p products in End(A); a repeated span
    means the envelope never reaches zero.  Product length is capped at n^2 + 1.
    """
    n = A.dim
    gens = [A.R(i) for i in range(n)]
    width = n * n
    span = linalg.echelon_basis([g.flat() for g in gens], width)
    p = 1
    while span:
        if p > width:
            return False, None
        mats = [LinearOperator.from_rows([row[r * n:(r + 1) * n] for r in range(n)], n) for row in span]
        nxt = linalg.echelon_basis([(m @ g).flat() for m in mats for g in gens], width)
        if len(nxt) == len(span) and all(linalg.in_span(span, v) for v in nxt):
            return False, None
        span = nxt
        p += 1
    return True, p


def lower_central_support(L: LieAlgebra) -> list[int]:
    """Basis indices occurring in some bracket value."""
    out = set()
    for (_, _, k) in L.table.entries:
        out.add(k)
    return sorted(out)
