"""Lie algebra representations, classical r-matrices and induced products.

A representation of a Lie algebra of dimension n on a module of dimension m
stores one m x m matrix per basis vector.  An r-matrix is a linear map T from
the module to the algebra (an n x m matrix) satisfying

    T(T(u).v - T(v).u) = [T(u), T(v)],

in which case ``u o v = T(u).v`` is a left-symmetric product on the module.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .algebra import (
    AlgebraProduct,
    CheckReport,
    LieAlgebra,
    StructureTable,
    commutator,
)
from .errors import CybeFailed, DimensionMismatch, HypothesisViolated, NotModuleHomomorphism
from .linalg import LinearOperator, Vector, unit_vector, vec_sub


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    module_dim: int
    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        object.__setattr__(self, "maps", maps)
        if self.module_dim < 1:
            raise DimensionMismatch("module dimension must be positive")
        if len(maps) != self.algebra.dim:
            raise DimensionMismatch(f"{len(maps)} action matrices for an algebra of dimension {self.algebra.dim}")
        for M in maps:
            if (M.rows, M.cols) != (self.module_dim, self.module_dim):
                raise DimensionMismatch("action matrices must be module_dim x module_dim")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def action(self, x) -> LinearOperator:
        """Matrix of the action of the algebra vector ``x``."""
        if len(x) != self.dim:
            raise DimensionMismatch("algebra vector has the wrong length")
        out = LinearOperator.zeros(self.module_dim)
        for c, M in zip(x, self.maps):
            if c:
                out = out + M.scaled(c)
        return out

    def act(self, x, u) -> Vector:
        if len(u) != self.module_dim:
            raise DimensionMismatch("module vector has the wrong length")
        return self.action(x).apply(u)


@dataclass(frozen=True)
class RMatrix:
    rep: Representation
    matrix: LinearOperator

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.rep.dim, self.rep.module_dim):
            raise DimensionMismatch(
                f"T must be {self.rep.dim}x{self.rep.module_dim}, got {self.matrix.rows}x{self.matrix.cols}")

    def __call__(self, u) -> Vector:
        return self.matrix.apply(u)


def adjoint_representation(L: LieAlgebra) -> Representation:
    return Representation(L, L.dim, tuple(L.ad_basis(i) for i in range(L.dim)))


def left_multiplication_representation(P: AlgebraProduct) -> Representation:
    """The module g_L: the commutator algebra of P acting by left multiplication."""
    return Representation(commutator(P), P.dim, tuple(P.L(i) for i in range(P.dim)))


def yang_baxter_triple(P: AlgebraProduct) -> RMatrix:
    """(commutator(P), left-multiplication module, identity)."""
    return RMatrix(left_multiplication_representation(P), LinearOperator.identity(P.dim))


def check_representation(rep: Representation) -> CheckReport:
    report = CheckReport()
    L = rep.algebra
    for i, j in combinations(range(L.dim), 2):
        lhs = rep.action(L.mul(i, j))
        rhs = linalg.commutator(rep.maps[i], rep.maps[j])
        report.add("homomorphism", (i, j), (lhs - rhs).flat())
    return report


def bracket_T(T: RMatrix, u, v) -> Vector:
    m = T.rep.module_dim
    if len(u) != m or len(v) != m:
        raise DimensionMismatch("module vectors have the wrong length")
    return vec_sub(T.rep.act(T(u), v), T.rep.act(T(v), u))


def bracket_table(T: RMatrix) -> LieAlgebra:
    """The Lie algebra u_T given by [u, v]_T on the module basis."""
    m = T.rep.module_dim
    e = [unit_vector(m, i) for i in range(m)]
    return LieAlgebra(StructureTable.from_vectors(m, lambda i, j: bracket_T(T, e[i], e[j])))


def check_cybe(T: RMatrix) -> CheckReport:
    report = CheckReport()
    m = T.rep.module_dim
    e = [unit_vector(m, i) for i in range(m)]
    L = T.rep.algebra
    for i, j in combinations(range(m), 2):
        lhs = T(bracket_T(T, e[i], e[j]))
        rhs = L.bracket(T(e[i]), T(e[j]))
        report.add("cybe", (i, j), vec_sub(lhs, rhs))
    return report


def check_novikov_condition(T: RMatrix) -> CheckReport:
    """T(T(u).v).w = T(T(u).w).v on module basis triples."""
    report = CheckReport()
    m = T.rep.module_dim
    e = [unit_vector(m, i) for i in range(m)]
    rep = T.rep
    acted = [[rep.act(T(e[i]), e[j]) for j in range(m)] for i in range(m)]
    for i in range(m):
        for j, k in combinations(range(m), 2):
            lhs = rep.act(T(acted[i][j]), e[k])
            rhs = rep.act(T(acted[i][k]), e[j])
            report.add("novikov_condition", (i, j, k), vec_sub(lhs, rhs))
    return report


def check_lie_homomorphism(T: RMatrix, source: LieAlgebra) -> CheckReport:
    """T([u, v]) = [T(u), T(v)] with the bracket of ``source`` on the module."""
    m = T.rep.module_dim
    if source.dim != m:
        raise DimensionMismatch("source algebra must live on the module")
    report = CheckReport()
    e = [unit_vector(m, i) for i in range(m)]
    L = T.rep.algebra
    for i, j in combinations(range(m), 2):
        report.add("lie_homomorphism", (i, j), vec_sub(T(source.mul(i, j)), L.bracket(T(e[i]), T(e[j]))))
    return report


def _product_table(T: RMatrix) -> AlgebraProduct:
    m = T.rep.module_dim
    e = [unit_vector(m, i) for i in range(m)]
    return AlgebraProduct(StructureTable.from_vectors(m, lambda i, j: T.rep.act(T(e[i]), e[j])))


def induced_product(T: RMatrix) -> AlgebraProduct:
    """u o v = T(u).v, a left-symmetric product when T solves the CYBE."""
    report = check_cybe(T)
    if not report.passed:
        raise CybeFailed(report)
    return _product_table(T)


def projection_rmatrix(rep: Representation, ell: int, k: int) -> RMatrix:
    """T(u_ell) = x_k and T(u_i) = 0 otherwise.

    Valid when coordinate ``ell`` of x_k.u_j vanishes for every j, which is
    exactly T(x_k.u_j) = 0.
    """
    m, n = rep.module_dim, rep.dim
    if not (0 <= ell < m and 0 <= k < n):
        raise DimensionMismatch("projection indices out of range")
    row = rep.maps[k].entries[ell]
    for j, c in enumerate(row):
        if c:
            raise HypothesisViolated("T(x_k.u_j) = 0", {"j": j, "coordinate": ell, "value": c},
                                     f"coordinate {ell} of x_{k}.u_{j} is {c}, not 0")
    cols = [unit_vector(n, k) if i == ell else linalg.zero_vector(n) for i in range(m)]
    return RMatrix(rep, LinearOperator.from_columns(cols, n))


def scan_projection_rmatrices(rep: Representation) -> list:
    """All (ell, k) for which :func:`projection_rmatrix` applies."""
    out = []
    for k in range(rep.dim):
        for ell in range(rep.module_dim):
            if not any(rep.maps[k].entries[ell]):
                out.append((ell, k))
    return out


def check_module_homomorphism(phi: LinearOperator, source: Representation, target: Representation) -> CheckReport:
    """phi(x.u) = x.phi(u) for every basis x and module basis u."""
    if source.algebra != target.algebra:
        raise DimensionMismatch("modules over different algebras")
    if (phi.rows, phi.cols) != (target.module_dim, source.module_dim):
        raise DimensionMismatch("phi must map the source module to the target module")
    report = CheckReport()
    for i in range(source.dim):
        diff = phi @ source.maps[i] - target.maps[i] @ phi
        for j in range(source.module_dim):
            report.add("module_homomorphism", (i, j), diff.column(j))
    return report


def transport_rmatrix(T: RMatrix, phi: LinearOperator, source: Representation | None = None) -> RMatrix:
    """T' = T o phi for a module homomorphism phi: source -> T.rep.

    ``source`` defaults to T's own module (phi an endomorphism).
    """
    source = T.rep if source is None else source
    report = check_module_homomorphism(phi, source, T.rep)
    if not report.passed:
        v = report.violations[0]
        raise NotModuleHomomorphism({"x": v.indices[0], "u": v.indices[1], "residual": v.residual})
    return RMatrix(source, T.matrix @ phi)


__all__ = [
    "Representation",
    "RMatrix",
    "adjoint_representation",
    "left_multiplication_representation",
    "yang_baxter_triple",
    "check_representation",
    "bracket_T",
    "bracket_table",
    "check_cybe",
    "check_novikov_condition",
    "check_lie_homomorphism",
    "induced_product",
    "projection_rmatrix",
    "scan_projection_rmatrices",
    "check_module_homomorphism",
    "transport_rmatrix",
]
