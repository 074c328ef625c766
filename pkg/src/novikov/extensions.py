"""Abelian extensions g = a + b and lifts of products from a and b to g.

Basis convention for g: the basis of a first, then the basis of b.  The
bracket is

    [(a, x), (b, y)] = (phi(x)b - phi(y)a + Omega(x, y), [x, y])

and a lift is the product

    (a, x) o (b, y) = (a.b + phi1(y)a + phi2(x)b + omega(x, y), x.y).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .algebra import (
    AlgebraProduct,
    CheckReport,
    LieAlgebra,
    StructureTable,
    check_commutative_associative,
    check_jacobi,
    check_left_symmetric,
    check_novikov,
    is_compatible,
)
from .errors import (
    BNotAbelian,
    DimensionMismatch,
    NotInvertible,
    NovikovObstruction,
    PreconditionFailed,
    ProductsNotTrivial,
)
from .linalg import LinearOperator, Vector, to_fraction, unit_vector, vec_add, vec_scale, vec_sub, zero_vector
from .rmatrix import Representation, check_representation

# Names of the per-condition checks, with the identity each one evaluates.
LSA_CONDITIONS = {
    "omega_skew_part": "omega(x,y) - omega(y,x) = Omega(x,y)",
    "phi_difference": "phi2(x) - phi1(x) = phi(x)",
    "omega_mixed": "phi2(x)omega(y,z) - phi2(y)omega(x,z) - phi1(z)Omega(x,y)"
                   " = omega(y,x.z) - omega(x,y.z) + omega([x,y],z)",
    "a_times_omega": "a.omega(y,z) + phi1(y.z)a = phi2(y)phi1(z)a - phi1(z)phi(y)a",
    "phi1_symmetric": "a.(phi1(z)b) = b.(phi1(z)a)",
    "phi2_on_products": "phi2(y)(a.c) - a.(phi2(y)c) = (phi(y)a).c",
    "cocycle_annihilates": "Omega(x,y).c = 0",
}
NOVIKOV_CONDITIONS = {
    "phi1_omega": "phi1(z)omega(x,y) - phi1(y)omega(x,z) = omega(x.z,y) - omega(x.y,z)",
    "omega_phi2": "omega(x,y).c + phi2(x.y)c = phi1(y)phi2(x)c",
    "phi1_commute": "[phi1(x), phi1(y)] = 0",
    "phi2_symmetric": "(phi2(x)b).c = (phi2(x)c).b",
    "phi1_on_products": "phi1(z)(a.b) = (phi1(z)a).b",
    "b_right_commutative": "(x.y).z = (x.z).y",
}
TRIVIAL_LSA_CONDITIONS = {
    "omega_skew_part": LSA_CONDITIONS["omega_skew_part"],
    "phi_difference": LSA_CONDITIONS["phi_difference"],
    "phi2_omega": "phi2(x)omega(y,z) - phi2(y)omega(x,z) = phi1(z)Omega(x,y)",
    "phi1_phi2": "[phi1(x), phi2(y)] = phi1(x)phi1(y)",
}
TRIVIAL_NOVIKOV_CONDITIONS = {
    "phi1_omega": "phi1(z)omega(x,y) = phi1(y)omega(x,z)",
    "phi1_phi2_zero": "phi1(x)phi2(y) = 0",
    "phi1_commute": "[phi1(x), phi1(y)] = 0",
}


def _vec(v, n: int) -> Vector:
    v = tuple(to_fraction(c) for c in v)
    if len(v) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(v)}")
    return v


@dataclass(frozen=True)
class Cocycle:
    """Skew-symmetric bilinear map b x b -> a, stored on pairs i < j."""

    b_dim: int
    a_dim: int
    values: Mapping

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.values).items():
            if not (0 <= i < self.b_dim and 0 <= j < self.b_dim):
                raise DimensionMismatch(f"cocycle index {(i, j)} outside dimension {self.b_dim}")
            v = _vec(v, self.a_dim)
            if i == j:
                if any(v):
                    raise ValueError("a skew-symmetric map vanishes on the diagonal")
                continue
            if i > j:
                i, j, v = j, i, vec_scale(-1, v)
            s = vec_add(clean.get((i, j), zero_vector(self.a_dim)), v)
            clean[(i, j)] = s
        object.__setattr__(self, "values", {k: v for k, v in sorted(clean.items()) if any(v)})

    @classmethod
    def zero(cls, b_dim: int, a_dim: int) -> "Cocycle":
        return cls(b_dim, a_dim, {})

    def value(self, i: int, j: int) -> Vector:
        if i < j:
            return self.values.get((i, j), zero_vector(self.a_dim))
        if i > j:
            return vec_scale(-1, self.values.get((j, i), zero_vector(self.a_dim)))
        return zero_vector(self.a_dim)

    def __call__(self, x, y) -> Vector:
        out = zero_vector(self.a_dim)
        for (i, j), v in self.values.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                out = vec_add(out, vec_scale(c, v))
        return out


def _bilinear_table(values: Mapping, b_dim: int, a_dim: int) -> dict:
    clean = {}
    for (i, j), v in dict(values).items():
        if not (0 <= i < b_dim and 0 <= j < b_dim):
            raise DimensionMismatch(f"omega index {(i, j)} outside dimension {b_dim}")
        v = _vec(v, a_dim)
        if any(v):
            clean[(i, j)] = v
    return dict(sorted(clean.items()))


@dataclass(frozen=True)
class LiftData:
    """Everything needed to lift products on a and b to the extension g.

    Construction validates what makes the per-condition checks exact:
    phi, phi1 and phi2 are representations of b, the product on a is
    commutative and associative, and the product on b is left-symmetric and
    compatible with the bracket of b.
    """

    a_product: AlgebraProduct
    b_product: AlgebraProduct
    phi: Representation
    Omega: Cocycle
    omega: Mapping
    phi1: tuple
    phi2: tuple

    def __post_init__(self):
        a, b = self.a_product.dim, self.b_product.dim
        object.__setattr__(self, "phi1", tuple(self.phi1))
        object.__setattr__(self, "phi2", tuple(self.phi2))
        if (self.phi.dim, self.phi.module_dim) != (b, a):
            raise DimensionMismatch("phi must be a representation of b on a")
        if (self.Omega.b_dim, self.Omega.a_dim) != (b, a):
            raise DimensionMismatch("Omega must map b x b to a")
        for name in ("phi1", "phi2"):
            ops = getattr(self, name)
            if len(ops) != b or any((M.rows, M.cols) != (a, a) for M in ops):
                raise DimensionMismatch(f"{name} needs one {a}x{a} matrix per basis vector of b")
        object.__setattr__(self, "omega", _bilinear_table(self.omega, b, a))
        self._validate()

    def _validate(self):
        for name, rep in (("phi", self.phi), ("phi1", self.rep1), ("phi2", self.rep2)):
            r = check_representation(rep)
            if not r.passed:
                raise PreconditionFailed(f"{name} is a representation of b", r)
        r = check_commutative_associative(self.a_product)
        if not r.passed:
            raise PreconditionFailed("the product on a is commutative and associative", r)
        r = check_left_symmetric(self.b_product)
        if not r.passed:
            raise PreconditionFailed("the product on b is left-symmetric", r)
        if not is_compatible(self.b_product, self.b):
            raise PreconditionFailed("the product on b is compatible with the bracket of b")

    @property
    def a_dim(self) -> int:
        return self.a_product.dim

    @property
    def b_dim(self) -> int:
        return self.b_product.dim

    @property
    def b(self) -> LieAlgebra:
        return self.phi.algebra

    @property
    def rep1(self) -> Representation:
        return Representation(self.b, self.a_dim, self.phi1)

    @property
    def rep2(self) -> Representation:
        return Representation(self.b, self.a_dim, self.phi2)

    def omega_value(self, i: int, j: int) -> Vector:
        return self.omega.get((i, j), zero_vector(self.a_dim))

    def omega_at(self, x, y) -> Vector:
        out = zero_vector(self.a_dim)
        for (i, j), v in self.omega.items():
            c = x[i] * y[j]
            if c:
                out = vec_add(out, vec_scale(c, v))
        return out


# --------------------------------------------------------------------------
# cocycle and extension bracket


def check_cocycle(phi: Representation, Omega: Cocycle) -> CheckReport:
    """phi(x)W(y,z) - phi(y)W(x,z) + phi(z)W(x,y) = W([x,y],z) - W([x,z],y) + W([y,z],x).

    Both sides are alternating, so only triples of distinct basis vectors
    are evaluated; with fewer than three the identity holds vacuously.
    """
    if (phi.dim, phi.module_dim) != (Omega.b_dim, Omega.a_dim):
        raise DimensionMismatch("cocycle and representation dimensions differ")
    report = CheckReport()
    n = phi.dim
    if n < 3:
        report.notes.append(f"vacuous: the cocycle identity needs three arguments and dim b = {n}")
        return report
    L = phi.algebra
    e = [unit_vector(n, i) for i in range(n)]
    for x, y, z in combinations(range(n), 3):
        lhs = vec_add(vec_sub(phi.maps[x].apply(Omega.value(y, z)), phi.maps[y].apply(Omega.value(x, z))),
                      phi.maps[z].apply(Omega.value(x, y)))
        rhs = vec_add(vec_sub(Omega(L.mul(x, y), e[z]), Omega(L.mul(x, z), e[y])), Omega(L.mul(y, z), e[x]))
        report.add("cocycle", (x, y, z), vec_sub(lhs, rhs))
    return report


def _extension_labels(a_labels, b_labels):
    if a_labels and b_labels:
        return tuple(a_labels) + tuple(b_labels)
    return None


def extension_lie(phi: Representation, Omega: Cocycle, labels=None) -> LieAlgebra:
    """The Lie algebra (a, b, phi, Omega) on the basis (a-part, b-part)."""
    for name, r in (("b satisfies the Jacobi identity", check_jacobi(phi.algebra)),
                    ("phi is a representation", check_representation(phi)),
                    ("Omega is a 2-cocycle", check_cocycle(phi, Omega))):
        if not r.passed:
            raise PreconditionFailed(name, r)
    m, n = phi.module_dim, phi.dim
    products = {}
    for p in range(n):
        for j in range(m):
            col = phi.maps[p].column(j)
            products[(m + p, j)] = col + zero_vector(n)
            products[(j, m + p)] = vec_scale(-1, col) + zero_vector(n)
        for q in range(n):
            if p != q:
                products[(m + p, m + q)] = Omega.value(p, q) + phi.algebra.mul(p, q)
    if labels is None:
        labels = _extension_labels(None, phi.algebra.labels)
    return LieAlgebra(StructureTable.from_products(m + n, products), labels)


# --------------------------------------------------------------------------
# lifted product


def lifted_product(data: LiftData) -> AlgebraProduct:
    m, n = data.a_dim, data.b_dim
    zb = zero_vector(n)
    products = {}
    for i in range(m):
        for j in range(m):
            products[(i, j)] = data.a_product.mul(i, j) + zb
        for q in range(n):
            products[(i, m + q)] = data.phi1[q].column(i) + zb
            products[(m + q, i)] = data.phi2[q].column(i) + zb
    for p in range(n):
        for q in range(n):
            products[(m + p, m + q)] = data.omega_value(p, q) + data.b_product.mul(p, q)
    labels = _extension_labels(data.a_product.labels, data.b_product.labels or data.b.labels)
    return AlgebraProduct(StructureTable.from_products(m + n, products), labels)


def lifted_lie(data: LiftData) -> LieAlgebra:
    return extension_lie(data.phi, data.Omega, _extension_labels(data.a_product.labels,
                                                                 data.b_product.labels or data.b.labels))


# --------------------------------------------------------------------------
# per-condition checks


class _Ctx:
    """Cached pieces of LiftData used by the condition checks."""

    def __init__(self, d: LiftData):
        self.d = d
        self.m, self.n = d.a_dim, d.b_dim
        self.ea = [unit_vector(self.m, i) for i in range(self.m)]
        self.eb = [unit_vector(self.n, i) for i in range(self.n)]
        self.rep1, self.rep2 = d.rep1, d.rep2

    def amul(self, a, b):
        return self.d.a_product.product(a, b)

    def bmul(self, x, y):
        return self.d.b_product.mul(x, y)

    def phi1(self, x):
        return self.rep1.action(x)

    def phi2(self, x):
        return self.rep2.action(x)

    def om(self, x, y):
        return self.d.omega_at(x, y)

    def Om(self, i, j):
        return self.d.Omega.value(i, j)


def _mat_residual(M: LinearOperator) -> tuple:
    return M.flat()


def check_lsa_conditions(data: LiftData) -> CheckReport:
    """Evaluate each of the seven left-symmetry conditions on basis tuples.

    Every identity in :data:`LSA_CONDITIONS` is reported under its own name.
    """
    c = _Ctx(data)
    d, m, n, ea, eb = data, c.m, c.n, c.ea, c.eb
    phi = d.phi
    L = d.b
    report = CheckReport()
    for x, y in combinations(range(n), 2):
        report.add("omega_skew_part", (x, y),
                   vec_sub(vec_sub(d.omega_value(x, y), d.omega_value(y, x)), c.Om(x, y)))
    for x in range(n):
        report.add("phi_difference", (x,), _mat_residual(d.phi2[x] - d.phi1[x] - phi.maps[x]))
    for x, y in combinations(range(n), 2):
        for z in range(n):
            lhs = vec_sub(vec_sub(d.phi2[x].apply(d.omega_value(y, z)), d.phi2[y].apply(d.omega_value(x, z))),
                          d.phi1[z].apply(c.Om(x, y)))
            rhs = vec_add(vec_sub(c.om(eb[y], c.bmul(x, z)), c.om(eb[x], c.bmul(y, z))), c.om(L.mul(x, y), eb[z]))
            report.add("omega_mixed", (x, y, z), vec_sub(lhs, rhs))
    for y in range(n):
        for z in range(n):
            yz = c.bmul(y, z)
            w = d.omega_value(y, z)
            p1yz = c.phi1(yz)
            rhs_op = d.phi2[y] @ d.phi1[z] - d.phi1[z] @ phi.maps[y]
            for a in range(m):
                lhs = vec_add(c.amul(ea[a], w), p1yz.column(a))
                report.add("a_times_omega", (a, y, z), vec_sub(lhs, rhs_op.column(a)))
    for z in range(n):
        for a, b in combinations(range(m), 2):
            lhs = c.amul(ea[a], d.phi1[z].column(b))
            rhs = c.amul(ea[b], d.phi1[z].column(a))
            report.add("phi1_symmetric", (a, b, z), vec_sub(lhs, rhs))
    for y in range(n):
        for a in range(m):
            for cc in range(m):
                lhs = vec_sub(d.phi2[y].apply(c.amul(ea[a], ea[cc])), c.amul(ea[a], d.phi2[y].column(cc)))
                rhs = c.amul(phi.maps[y].column(a), ea[cc])
                report.add("phi2_on_products", (y, a, cc), vec_sub(lhs, rhs))
    for x, y in combinations(range(n), 2):
        w = c.Om(x, y)
        for cc in range(m):
            report.add("cocycle_annihilates", (x, y, cc), c.amul(w, ea[cc]))
    return report


def check_novikov_conditions(data: LiftData) -> CheckReport:
    """Evaluate the six extra conditions for the lift to be Novikov."""
    c = _Ctx(data)
    d, m, n, ea, eb = data, c.m, c.n, c.ea, c.eb
    report = CheckReport()
    for x in range(n):
        for y, z in combinations(range(n), 2):
            lhs = vec_sub(d.phi1[z].apply(d.omega_value(x, y)), d.phi1[y].apply(d.omega_value(x, z)))
            rhs = vec_sub(c.om(c.bmul(x, z), eb[y]), c.om(c.bmul(x, y), eb[z]))
            report.add("phi1_omega", (x, y, z), vec_sub(lhs, rhs))
    for x in range(n):
        for y in range(n):
            w = d.omega_value(x, y)
            op = c.phi2(c.bmul(x, y))
            rhs_op = d.phi1[y] @ d.phi2[x]
            for cc in range(m):
                lhs = vec_add(c.amul(w, ea[cc]), op.column(cc))
                report.add("omega_phi2", (x, y, cc), vec_sub(lhs, rhs_op.column(cc)))
    for x, y in combinations(range(n), 2):
        report.add("phi1_commute", (x, y), _mat_residual(linalg.commutator(d.phi1[x], d.phi1[y])))
    for x in range(n):
        for b, cc in combinations(range(m), 2):
            lhs = c.amul(d.phi2[x].column(b), ea[cc])
            rhs = c.amul(d.phi2[x].column(cc), ea[b])
            report.add("phi2_symmetric", (x, b, cc), vec_sub(lhs, rhs))
    for z in range(n):
        for a in range(m):
            for b in range(m):
                lhs = d.phi1[z].apply(c.amul(ea[a], ea[b]))
                rhs = c.amul(d.phi1[z].column(a), ea[b])
                report.add("phi1_on_products", (z, a, b), vec_sub(lhs, rhs))
    P = d.b_product
    for x in range(n):
        for y, z in combinations(range(n), 2):
            lhs = P.product(P.mul(x, y), eb[z])
            rhs = P.product(P.mul(x, z), eb[y])
            report.add("b_right_commutative", (x, y, z), vec_sub(lhs, rhs))
    return report


def check_trivial_corollary(data: LiftData, which: str = "both") -> CheckReport:
    """Reduced conditions when the products on a and b are both zero.

    ``which`` selects the left-symmetric set ("lsa"), the extra Novikov set
    ("novikov") or both.  Violations are named after
    :data:`TRIVIAL_LSA_CONDITIONS` and :data:`TRIVIAL_NOVIKOV_CONDITIONS`;
    the two sets share no names.
    """
    if which not in ("both", "lsa", "novikov"):
        raise ValueError(f"unknown condition set {which!r}")
    if not (data.a_product.table.is_zero() and data.b_product.table.is_zero()):
        raise ProductsNotTrivial("the products on a and b must both be zero")
    d, n = data, data.b_dim
    report = CheckReport()
    if which in ("both", "lsa"):
        for x, y in combinations(range(n), 2):
            report.add("omega_skew_part", (x, y),
                       vec_sub(vec_sub(d.omega_value(x, y), d.omega_value(y, x)), d.Omega.value(x, y)))
        for x in range(n):
            report.add("phi_difference", (x,), _mat_residual(d.phi2[x] - d.phi1[x] - d.phi.maps[x]))
        for x, y in combinations(range(n), 2):
            for z in range(n):
                lhs = vec_sub(d.phi2[x].apply(d.omega_value(y, z)), d.phi2[y].apply(d.omega_value(x, z)))
                report.add("phi2_omega", (x, y, z), vec_sub(lhs, d.phi1[z].apply(d.Omega.value(x, y))))
        for x in range(n):
            for y in range(n):
                r = linalg.commutator(d.phi1[x], d.phi2[y]) - d.phi1[x] @ d.phi1[y]
                report.add("phi1_phi2", (x, y), _mat_residual(r))
    if which in ("both", "novikov"):
        for x in range(n):
            for y, z in combinations(range(n), 2):
                r = vec_sub(d.phi1[z].apply(d.omega_value(x, y)), d.phi1[y].apply(d.omega_value(x, z)))
                report.add("phi1_omega", (x, y, z), r)
        for x in range(n):
            for y in range(n):
                report.add("phi1_phi2_zero", (x, y), _mat_residual(d.phi1[x] @ d.phi2[y]))
        for x, y in combinations(range(n), 2):
            report.add("phi1_commute", (x, y), _mat_residual(linalg.commutator(d.phi1[x], d.phi1[y])))
    return report


# --------------------------------------------------------------------------
# constructions


def _zero_ops(n: int, m: int) -> tuple:
    return tuple(LinearOperator.zeros(m) for _ in range(n))


def semidirect_lift(phi: Representation, b_product: AlgebraProduct, *, novikov: bool = False) -> LiftData:
    """Lift with Omega = 0, zero product on a, phi1 = 0, omega = 0, phi2 = phi.

    The result always gives a left-symmetric product (a, x) o (b, y) =
    (phi(x)b, x.y).  With ``novikov=True`` the product on b must be Novikov
    and phi(x.y) must vanish; a nonzero phi(x.y) raises
    :class:`NovikovObstruction`, whose ``lift`` attribute still carries the
    left-symmetric lift.
    """
    b, m, n = phi.algebra, phi.module_dim, phi.dim
    if b_product.dim != n:
        raise DimensionMismatch("product on b has the wrong dimension")
    r = check_left_symmetric(b_product)
    if not r.passed:
        raise PreconditionFailed("the product on b is left-symmetric", r)
    if not is_compatible(b_product, b):
        raise PreconditionFailed("the product on b is compatible with the bracket of b")
    data = LiftData(AlgebraProduct.zero(m), b_product, phi, Cocycle.zero(n, m), {}, _zero_ops(n, m), phi.maps)
    if novikov:
        r = check_novikov(b_product)
        if not r.passed:
            raise PreconditionFailed("the product on b is Novikov", r)
        for x in range(n):
            for y in range(n):
                op = phi.action(b_product.mul(x, y))
                if not op.is_zero():
                    err = NovikovObstruction({"x": x, "y": y, "phi(x.y)": op.flat()})
                    err.lift = data
                    raise err
    return data


def iso_lift(phi: Representation, Omega: Cocycle, e) -> LiftData:
    """Novikov lift of a two-step solvable (a, b, phi, Omega) with phi(e) invertible.

    ``e`` is a basis index of b or a vector of b.  The lift has phi1 = 0,
    phi2 = phi, zero products and omega(x, y) = phi(e)^-1 phi(x) Omega(e, y).
    """
    b, m, n = phi.algebra, phi.module_dim, phi.dim
    if not b.table.is_zero():
        raise BNotAbelian("b must be abelian")
    ev = unit_vector(n, e) if isinstance(e, int) else _vec(e, n)
    pe = phi.action(ev)
    det = pe.determinant()
    if not det:
        raise NotInvertible(det)
    r = check_cocycle(phi, Omega)
    if not r.passed:
        raise PreconditionFailed("Omega is a 2-cocycle", r)
    inv = pe.inverse()
    omega = {}
    for x in range(n):
        for y in range(n):
            omega[(x, y)] = (inv @ phi.maps[x]).apply(Omega(ev, unit_vector(n, y)))
    return LiftData(AlgebraProduct.zero(m), AlgebraProduct.zero(n), phi, Omega, omega, _zero_ops(n, m), phi.maps)


__all__ = [
    "Cocycle",
    "LiftData",
    "LSA_CONDITIONS",
    "NOVIKOV_CONDITIONS",
    "TRIVIAL_LSA_CONDITIONS",
    "TRIVIAL_NOVIKOV_CONDITIONS",
    "check_cocycle",
    "extension_lie",
    "lifted_product",
    "lifted_lie",
    "check_lsa_conditions",
    "check_novikov_conditions",
    "check_trivial_corollary",
    "semidirect_lift",
    "iso_lift",
]
