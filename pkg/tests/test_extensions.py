from fractions import Fraction as F

import pytest

from novikov import algebra, catalog, extensions
from novikov.algebra import AlgebraProduct, LieAlgebra
from novikov.errors import BNotAbelian, NotInvertible, NovikovObstruction, PreconditionFailed, ProductsNotTrivial
from novikov.extensions import Cocycle, LiftData
from novikov.linalg import LinearOperator
from novikov.rmatrix import Representation

M = LinearOperator.from_rows
EX35 = catalog.ex35_liftdata


def zeros(n, m):
    return tuple(LinearOperator.zeros(m) for _ in range(n))


def zero_data(n, m, b=None, bp=None):
    b = b or LieAlgebra.abelian(n)
    bp = bp or AlgebraProduct.zero(n)
    phi = Representation(b, m, zeros(n, m))
    return LiftData(AlgebraProduct.zero(m), bp, phi, Cocycle.zero(n, m), {}, zeros(n, m), zeros(n, m))


def r2_rep():
    # [x1, x2] = x2 acting by H = diag(1, 0), N = E12: [H, N] = N
    b = catalog.r2()
    return b, Representation(b, 2, (M([[1, 0], [0, 0]]), M([[0, 1], [0, 0]])))


R2_PRODUCT = AlgebraProduct.from_products(2, {(0, 1): {1: 1}})


def with_omega(d, omega):
    return LiftData(d.a_product, d.b_product, d.phi, d.Omega, omega, d.phi1, d.phi2)


# cocycles -----------------------------------------------------------------

def test_ex35_cocycle():
    d = EX35()
    r = extensions.check_cocycle(d.phi, d.Omega)
    assert r.passed
    assert r.notes and r.notes[0].startswith("vacuous")


def test_zero_cocycle():
    d = EX35()
    assert extensions.check_cocycle(d.phi, Cocycle.zero(2, 3)).passed


def test_cocycle_counterexample_dim3():
    # b abelian on X, Y, Z; phi(X)A = B; Omega(Y, Z) = A: phi(X)Omega(Y,Z) = B is the only term
    b = LieAlgebra.abelian(3)
    phi = Representation(b, 2, (M([[0, 0], [1, 0]]), LinearOperator.zeros(2), LinearOperator.zeros(2)))
    Om = Cocycle(3, 2, {(1, 2): (1, 0)})
    r = extensions.check_cocycle(phi, Om)
    assert [(v.indices, v.residual) for v in r.violations] == [((0, 1, 2), (0, 1))]


def test_cocycle_normalizes_order():
    Om = Cocycle(2, 1, {(1, 0): (3,)})
    assert Om.value(0, 1) == (-3,)
    assert Om((1, 0), (0, 1)) == (-3,)


# extension bracket --------------------------------------------------------

def test_ex35_extension_bracket():
    d = EX35()
    assert extensions.lifted_lie(d).table == catalog.ex35_lie().table


def test_trivial_extension_abelian():
    d = zero_data(2, 2)
    assert extensions.lifted_lie(d).table.is_zero()


def test_central_extension_heisenberg():
    b = LieAlgebra.abelian(2)
    phi = Representation(b, 1, zeros(2, 1))
    L = extensions.extension_lie(phi, Cocycle(2, 1, {(0, 1): (1,)}))
    # basis (A, X, Y): [X, Y] = A
    assert L.mul(1, 2) == (1, 0, 0)
    assert algebra.nilpotency_class(L) == 2 and L.dim == 3


def test_extension_rejects_non_cocycle():
    b = LieAlgebra.abelian(3)
    phi = Representation(b, 2, (M([[0, 0], [1, 0]]), LinearOperator.zeros(2), LinearOperator.zeros(2)))
    with pytest.raises(PreconditionFailed):
        extensions.extension_lie(phi, Cocycle(3, 2, {(1, 2): (1, 0)}))


# lifted product -----------------------------------------------------------

def test_ex35_lifted_product():
    P = extensions.lifted_product(EX35())
    # basis A, B, C, X, Y
    got = {(i, j): P.mul(i, j) for i in range(5) for j in range(5) if any(P.mul(i, j))}
    assert got == {
        (0, 3): (0, F(-1, 2), 0, 0, 0),  # A o X = -B/2
        (3, 0): (0, F(1, 2), 0, 0, 0),   # X o A = B/2
        (4, 0): (0, 0, 1, 0, 0),         # Y o A = C
        (4, 3): (-1, 0, 0, 0, 0),        # Y o X = -A
    }
    assert algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, catalog.ex35_lie())


def test_ex35_against_free_three_step():
    # ex35_lie is the free 3-step nilpotent algebra written on (A, B, C, X, Y)
    L = catalog.ex35_lie()
    assert algebra.nilpotency_class(L) == 3 and L.dim == 5


def test_zero_lift_zero_product():
    assert extensions.lifted_product(zero_data(2, 3)).table.is_zero()


def test_semidirect_trivial_action():
    H = catalog.heisenberg(1)
    bp = algebra.half_bracket(H)
    phi = Representation(H, 2, zeros(3, 2))
    d = extensions.semidirect_lift(phi, bp, novikov=True)
    P = extensions.lifted_product(d)
    for p in range(3):
        for q in range(3):
            assert P.mul(2 + p, 2 + q) == (0, 0) + bp.mul(p, q)
    assert algebra.check_novikov(P).passed


# per-condition checks -----------------------------------------------------

def test_ex35_all_conditions():
    d = EX35()
    assert extensions.check_lsa_conditions(d).passed
    assert extensions.check_novikov_conditions(d).passed
    assert extensions.check_trivial_corollary(d).passed


def test_zero_data_conditions():
    d = zero_data(2, 2)
    assert extensions.check_lsa_conditions(d).passed
    assert extensions.check_novikov_conditions(d).passed
    assert extensions.check_trivial_corollary(d).passed


def test_ex35_flipped_omega_breaks_skew_part():
    d = with_omega(EX35(), {(1, 0): (1, 0, 0)})
    r = extensions.check_lsa_conditions(d)
    assert "omega_skew_part" in r.failed_identities()
    assert ((0, 1)) in {v.indices for v in r.violations if v.identity == "omega_skew_part"}
    assert "omega_skew_part" in extensions.check_trivial_corollary(d, "lsa").failed_identities()


def test_non_commuting_phi1():
    b, rep = r2_rep()
    phi = Representation(b, 2, zeros(2, 2))
    d = LiftData(AlgebraProduct.zero(2), R2_PRODUCT, phi, Cocycle.zero(2, 2), {}, rep.maps, rep.maps)
    r = extensions.check_novikov_conditions(d)
    assert ((0, 1)) in {v.indices for v in r.violations if v.identity == "phi1_commute"}


def test_trivial_corollary_phi1_phi2():
    # [P, Q] = E11 - E22 while P P = 0
    b = LieAlgebra.abelian(1)
    P, Q = M([[0, 1], [0, 0]]), M([[0, 0], [1, 0]])
    phi = Representation(b, 2, (Q - P,))
    d = LiftData(AlgebraProduct.zero(2), AlgebraProduct.zero(1), phi, Cocycle.zero(1, 2), {}, (P,), (Q,))
    r = extensions.check_trivial_corollary(d, "lsa")
    v = [v for v in r.violations if v.identity == "phi1_phi2"]
    assert v and v[0].indices == (0, 0) and v[0].residual == (1, 0, 0, -1)
    assert not extensions.check_lsa_conditions(d).passed


def test_trivial_corollary_needs_zero_products():
    with pytest.raises(ProductsNotTrivial):
        extensions.check_trivial_corollary(zero_data(2, 2, catalog.r2(), R2_PRODUCT))


def test_condition_names_disjoint():
    assert not set(extensions.TRIVIAL_LSA_CONDITIONS) & set(extensions.TRIVIAL_NOVIKOV_CONDITIONS)
    assert not set(extensions.LSA_CONDITIONS) & set(extensions.NOVIKOV_CONDITIONS)


def test_liftdata_validates_representations():
    b, rep = r2_rep()
    bad = (rep.maps[1], rep.maps[0])
    with pytest.raises(PreconditionFailed):
        LiftData(AlgebraProduct.zero(2), R2_PRODUCT, rep, Cocycle.zero(2, 2), {}, bad, bad)


# constructions ------------------------------------------------------------

def test_semidirect_dim_one():
    b = LieAlgebra.abelian(1)
    phi = Representation(b, 2, (M([[1, 2], [3, 4]]),))
    d = extensions.semidirect_lift(phi, AlgebraProduct.zero(1), novikov=True)
    assert algebra.check_novikov(extensions.lifted_product(d)).passed


def test_semidirect_abelian_any_phi():
    b = LieAlgebra.abelian(2)
    phi = Representation(b, 2, (M([[1, 0], [0, 2]]), M([[0, 0], [0, 5]])))
    d = extensions.semidirect_lift(phi, AlgebraProduct.zero(2), novikov=True)
    assert extensions.check_novikov_conditions(d).passed


def test_semidirect_obstruction_carries_lsa_lift():
    b, phi = r2_rep()
    with pytest.raises(NovikovObstruction) as err:
        extensions.semidirect_lift(phi, R2_PRODUCT, novikov=True)
    lift = err.value.lift
    P = extensions.lifted_product(lift)
    assert algebra.check_left_symmetric(P).passed
    assert not algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, extensions.lifted_lie(lift))


def test_iso_lift_scalar():
    b = LieAlgebra.abelian(1)
    phi = Representation(b, 1, (M([[1]]),))
    d = extensions.iso_lift(phi, Cocycle.zero(1, 1), 0)
    assert not d.omega
    P = extensions.lifted_product(d)
    assert algebra.check_novikov(P).passed and algebra.is_compatible(P, extensions.lifted_lie(d))


def test_iso_lift_diag12():
    b = LieAlgebra.abelian(1)
    phi = Representation(b, 2, (M([[1, 0], [0, 2]]),))
    d = extensions.iso_lift(phi, Cocycle.zero(1, 2), 0)
    assert extensions.check_novikov_conditions(d).passed and extensions.check_lsa_conditions(d).passed
    L = extensions.lifted_lie(d)
    assert algebra.is_solvable(L) and not algebra.is_nilpotent(L)


def test_iso_lift_with_cocycle():
    b = LieAlgebra.abelian(2)
    phi = Representation(b, 2, (LinearOperator.identity(2), M([[0, 1], [0, 0]])))
    Om = Cocycle(2, 2, {(0, 1): (1, 1)})
    d = extensions.iso_lift(phi, Om, 0)
    P = extensions.lifted_product(d)
    assert algebra.check_novikov(P).passed and algebra.is_compatible(P, extensions.lifted_lie(d))


def test_iso_lift_singular():
    d = EX35()
    with pytest.raises(NotInvertible):
        extensions.iso_lift(d.phi, d.Omega, 0)


def test_iso_lift_needs_abelian_b():
    from novikov.rmatrix import adjoint_representation

    with pytest.raises(BNotAbelian):
        extensions.iso_lift(adjoint_representation(catalog.sl2()), Cocycle.zero(3, 3), 0)
