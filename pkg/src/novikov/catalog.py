"""Named fixtures: the algebras, modules, products and operators of the
worked examples, parameterized the way they are usually written down."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import algebra
from .algebra import AlgebraProduct, LieAlgebra, StructureTable
from .errors import MissingParam, UnknownId
from .linalg import LinearOperator, to_fraction

F = Fraction


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    params: dict
    payload: Any
    anchor: str

    @property
    def kind(self) -> str:
        from .existence import ParametricLieAlgebra
        from .extensions import LiftData
        from .rmatrix import Representation, RMatrix

        for cls, name in ((LieAlgebra, "lie"), (AlgebraProduct, "product"), (Representation, "representation"),
                          (RMatrix, "rmatrix"), (LiftData, "liftdata"), (LinearOperator, "operator"),
                          (ParametricLieAlgebra, "parametric_lie")):
            if isinstance(self.payload, cls):
                return name
        return "unknown"


# --------------------------------------------------------------------------
# Lie algebras


def sl2() -> LieAlgebra:
    # basis (x, y, h)
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (0, 2): {0: -2}, (1, 2): {1: 2}}, ("x", "y", "h"))


def r3_minus1() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 2): {0: -2}, (1, 2): {1: 2}}, ("x", "y", "h"))


def r2() -> LieAlgebra:
    return LieAlgebra.from_brackets(2, {(0, 1): {1: 1}})


def heisenberg(n: int = 1) -> LieAlgebra:
    n = int(n)
    if n < 1:
        raise ValueError("heisenberg(n) needs n >= 1")
    dim = 2 * n + 1
    labels = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n)) + ("z",)
    return LieAlgebra.from_brackets(dim, {(i, n + i): {dim - 1: 1} for i in range(n)}, labels)


def free_nilpotent_2gen_class3() -> LieAlgebra:
    return LieAlgebra.from_brackets(5, {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}})


def free_nilpotent_2gen_class4() -> LieAlgebra:
    return LieAlgebra.from_brackets(8, {
        (0, 1): {2: 1},
        (0, 2): {3: 1},
        (1, 2): {4: 1},
        (0, 3): {5: 1},
        (1, 3): {6: 1},
        (0, 4): {6: 1},
        (1, 4): {7: 1},
    })


def filiform6(a1=1, a2=0, a3=0) -> LieAlgebra:
    a1, a2, a3 = map(to_fraction, (a1, a2, a3))
    br = {(0, i): {i + 1: 1} for i in range(1, 5)}
    br[(1, 2)] = {4: a1, 5: a2}
    br[(1, 3)] = {5: a1}
    br[(1, 4)] = {5: -a3}
    br[(2, 3)] = {5: a3}
    return LieAlgebra.from_brackets(6, br)


def filiform6_product(a1=1, a2=0, a3=0) -> AlgebraProduct:
    a1, a2, a3 = map(to_fraction, (a1, a2, a3))
    p = {(0, i): {i + 1: 1} for i in range(1, 5)}
    p[(1, 1)] = {3: -a1 / 3}
    p[(1, 2)] = {4: a1 / 3, 5: a2 / 2}
    p[(1, 3)] = {5: 2 * a1 / 3}
    p[(1, 4)] = {5: -a3 / 2}
    p[(2, 1)] = {4: -2 * a1 / 3, 5: -a2 / 2}
    p[(2, 2)] = {5: -a1 / 3}
    p[(2, 3)] = {5: a3 / 2}
    p[(3, 1)] = {5: -a1 / 3}
    p[(3, 2)] = {5: -a3 / 2}
    p[(4, 1)] = {5: a3 / 2}
    return AlgebraProduct.from_products(6, p)


def filiform7(a1=1, a2=0, a3=0, a4=0) -> LieAlgebra:
    a1, a2, a3, a4 = map(to_fraction, (a1, a2, a3, a4))
    br = {(0, i): {i + 1: 1} for i in range(1, 6)}
    br[(1, 2)] = {4: a1, 5: a2, 6: a3}
    br[(1, 3)] = {5: a1, 6: a2}
    br[(1, 4)] = {6: a1 - a4}
    br[(2, 3)] = {6: a4}
    return LieAlgebra.from_brackets(7, br)


def g_I(alpha) -> LieAlgebra:
    return filiform7(1, 0, 0, alpha)


def filiform7_symbolic():
    """filiform7 with a1..a4 kept as polynomial unknowns."""
    from .existence import ParametricLieAlgebra
    from .polynomial import MultiPoly

    params = ("a1", "a2", "a3", "a4")
    a1, a2, a3, a4 = (MultiPoly.var(params, i) for i in range(4))
    one = MultiPoly.constant(params, 1)
    br = {(0, i): {i + 1: one} for i in range(1, 6)}
    br[(1, 2)] = {4: a1, 5: a2, 6: a3}
    br[(1, 3)] = {5: a1, 6: a2}
    br[(1, 4)] = {6: a1 - a4}
    br[(2, 3)] = {6: a4}
    return ParametricLieAlgebra(7, params, br)


def g_I_symbolic():
    """g_I with alpha kept as a polynomial unknown."""
    from .existence import ParametricLieAlgebra
    from .polynomial import MultiPoly

    params = ("alpha",)
    alpha = MultiPoly.var(params, 0)
    one = MultiPoly.constant(params, 1)
    br = {(0, i): {i + 1: one} for i in range(1, 6)}
    br[(1, 2)] = {4: one}
    br[(1, 3)] = {5: one}
    br[(1, 4)] = {6: one - alpha}
    br[(2, 3)] = {6: alpha}
    return ParametricLieAlgebra(7, params, br)


def ex35_lie() -> LieAlgebra:
    # basis (A, B, C, X, Y)
    return LieAlgebra.from_brackets(5, {(3, 4): {0: 1}, (3, 0): {1: 1}, (4, 0): {2: 1}}, ("A", "B", "C", "X", "Y"))


# --------------------------------------------------------------------------
# commutative associative algebra and derivation of the free 3-step example


def ex311_comm_assoc() -> AlgebraProduct:
    h = F(1, 2)
    p = {
        (0, 0): {0: 1, 1: 1}, (1, 0): {1: 1}, (2, 0): {2: 1}, (3, 0): {3: 1, 4: h}, (4, 0): {4: 1},
        (0, 1): {1: 1}, (3, 1): {4: h},
        (0, 2): {2: 1}, (2, 2): {4: -h},
        (0, 3): {3: 1, 4: h}, (1, 3): {4: h},
        (0, 4): {4: 1},
    }
    return AlgebraProduct.from_products(5, p)


def ex311_derivation() -> LinearOperator:
    return LinearOperator.from_rows([
        [0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0],
        [1, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, -1, 0, 0],
    ])


def ex311_novikov_product() -> AlgebraProduct:
    h = F(1, 2)
    return AlgebraProduct.from_products(5, {
        (0, 0): {2: 1}, (0, 1): {2: 1}, (0, 2): {3: 1, 4: -h}, (1, 2): {4: h}, (2, 0): {4: -h}, (2, 1): {4: -h},
    })


# --------------------------------------------------------------------------
# modules and r-matrices


def sl2_adjoint():
    from .rmatrix import adjoint_representation

    return adjoint_representation(sl2())


def sl2_natural():
    from .rmatrix import Representation

    # basis (v0, v1); column j is the image of v_j
    x = LinearOperator.from_rows([[0, 1], [0, 0]])
    y = LinearOperator.from_rows([[0, 0], [1, 0]])
    h = LinearOperator.from_rows([[1, 0], [0, -1]])
    return Representation(sl2(), 2, (x, y, h))


def rmatrix_sl2_diag001():
    from .rmatrix import RMatrix

    return RMatrix(sl2_adjoint(), LinearOperator.from_rows([[0, 0, 0], [0, 0, 0], [0, 0, 1]]))


def rmatrix_ex36(c1=1, c2=0):
    from .rmatrix import RMatrix

    c1, c2 = to_fraction(c1), to_fraction(c2)
    return RMatrix(sl2_natural(), LinearOperator.from_rows([[0, 0], [c2, c1], [c1, 0]]))


def rmatrix_projection_example():
    from .rmatrix import projection_rmatrix

    return projection_rmatrix(sl2_natural(), 1, 0)


# --------------------------------------------------------------------------
# extension data


def ex35_liftdata():
    from .extensions import Cocycle, LiftData
    from .rmatrix import Representation

    b = LieAlgebra.abelian(2)
    b = LieAlgebra(b.table, ("X", "Y"))
    z3 = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    m = lambda rows: LinearOperator.from_rows(rows)  # noqa: E731
    phi = Representation(b, 3, (m([[0, 0, 0], [1, 0, 0], [0, 0, 0]]), m([[0, 0, 0], [0, 0, 0], [1, 0, 0]])))
    h = F(1, 2)
    phi1 = (m([[0, 0, 0], [-h, 0, 0], [0, 0, 0]]), m(z3))
    phi2 = (m([[0, 0, 0], [h, 0, 0], [0, 0, 0]]), m([[0, 0, 0], [0, 0, 0], [1, 0, 0]]))
    omega = {(1, 0): (-1, 0, 0)}
    a_prod = AlgebraProduct(StructureTable(3), ("A", "B", "C"))
    b_prod = AlgebraProduct(StructureTable(2), ("X", "Y"))
    return LiftData(a_prod, b_prod, phi, Cocycle(2, 3, {(0, 1): (1, 0, 0)}), omega, phi1, phi2)


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class _Spec:
    build: Callable
    params: tuple = ()
    defaults: dict = field(default_factory=dict)
    anchor: str = ""


REGISTRY: dict[str, _Spec] = {
    "sl2": _Spec(sl2, anchor="sl2 with [x,y]=h, [x,h]=-2x, [y,h]=2y"),
    "sl2_adjoint": _Spec(sl2_adjoint, anchor="adjoint module of sl2"),
    "sl2_natural": _Spec(sl2_natural, anchor="natural 2-dimensional sl2-module V(2)"),
    "r3_minus1": _Spec(r3_minus1, anchor="r_{3,-1}: [x,h]=-2x, [y,h]=2y"),
    "r2": _Spec(r2, anchor="2-dim non-abelian: [x1,x2]=x2"),
    "heisenberg": _Spec(heisenberg, ("n",), {"n": 1}, "Heisenberg algebra of dimension 2n+1"),
    "free_nilpotent_2gen_class3": _Spec(free_nilpotent_2gen_class3, anchor="free 3-step nilpotent, 2 generators"),
    "free_nilpotent_2gen_class4": _Spec(free_nilpotent_2gen_class4, anchor="free 4-step nilpotent, 2 generators"),
    "filiform6": _Spec(filiform6, ("a1", "a2", "a3"), anchor="6-dim filiform family"),
    "filiform6_product": _Spec(filiform6_product, ("a1", "a2", "a3"), anchor="explicit Novikov product on filiform6"),
    "filiform7": _Spec(filiform7, ("a1", "a2", "a3", "a4"), anchor="7-dim filiform family"),
    "g_I": _Spec(g_I, ("alpha",), anchor="g_I(alpha) = filiform7(1, 0, 0, alpha); the family has alpha != 0"),
    "g_I_symbolic": _Spec(g_I_symbolic, anchor="g_I with alpha as a polynomial unknown"),
    "filiform7_symbolic": _Spec(filiform7_symbolic, anchor="filiform7 with a1..a4 as polynomial unknowns"),
    "ex35_lie": _Spec(ex35_lie, anchor="[X,Y]=A, [X,A]=B, [Y,A]=C"),
    "ex35_liftdata": _Spec(ex35_liftdata, anchor="lift data phi1, phi2, omega on (A,B,C | X,Y)"),
    "ex311_comm_assoc": _Spec(ex311_comm_assoc, anchor="commutative associative algebra on x1..x5"),
    "ex311_derivation": _Spec(ex311_derivation, anchor="derivation D of ex311_comm_assoc"),
    "ex311_novikov_product": _Spec(ex311_novikov_product, anchor="x o y = x . D(y)"),
    "rmatrix_sl2_diag001": _Spec(rmatrix_sl2_diag001, anchor="T = diag(0,0,1) on the adjoint module"),
    "rmatrix_ex36": _Spec(rmatrix_ex36, ("c1", "c2"), anchor="T(v0)=c2 y + c1 h, T(v1)=c1 y"),
    "rmatrix_projection_example": _Spec(rmatrix_projection_example, anchor="T(u1)=0, T(u2)=x on V(2)"),
}

INT_PARAMS = {"n"}


def ids() -> list[str]:
    return sorted(REGISTRY)


def get(id: str, params: dict | None = None, **kwargs) -> CatalogEntry:
    if id not in REGISTRY:
        raise UnknownId(f"unknown catalog id {id!r}")
    spec = REGISTRY[id]
    given = dict(params or {}, **kwargs)
    unknown = set(given) - set(spec.params)
    if unknown:
        raise MissingParam(f"{id} does not take parameters {sorted(unknown)}")
    values = {}
    for name in spec.params:
        if name in given:
            v = given[name]
        elif name in spec.defaults:
            v = spec.defaults[name]
        else:
            raise MissingParam(f"{id} requires parameter {name!r}")
        values[name] = int(v) if name in INT_PARAMS else to_fraction(v)
    entry = CatalogEntry(id, values, spec.build(**values), spec.anchor)
    _self_check(entry)
    return entry


def _self_check(entry: CatalogEntry) -> None:
    """Structural checks every payload must pass at construction."""
    from .errors import PreconditionFailed
    from .rmatrix import check_representation

    kind = entry.kind
    if kind == "lie":
        r = algebra.check_jacobi(entry.payload)
    elif kind in ("representation", "rmatrix"):
        rep = entry.payload if kind == "representation" else entry.payload.rep
        r = algebra.check_jacobi(rep.algebra).extend(check_representation(rep))
    elif kind == "parametric_lie":
        r = algebra.CheckReport()
        for idx, poly in entry.payload.jacobi_residuals():
            r.notes.append(f"jacobi residual at {idx}: {poly.format()}")
        if r.notes:
            raise PreconditionFailed(f"{entry.id} satisfies the Jacobi identity", r)
        return
    elif kind == "product":
        r = algebra.check_left_symmetric(entry.payload)
    else:
        # operators and lift data validate in their constructors
        return
    if not r.passed:
        raise PreconditionFailed(f"{entry.id} passes its structural checks", r)
