from fractions import Fraction as F

import pytest

from novikov import algebra, catalog
from novikov.algebra import AlgebraProduct, LieAlgebra, StructureTable
from novikov.errors import JacobiFailure, NotTwoStepNilpotent, PreconditionFailed
from novikov.linalg import LinearOperator, unit_vector

FREE3 = catalog.free_nilpotent_2gen_class3


# jacobi -------------------------------------------------------------------

def test_jacobi_free_three_step():
    assert algebra.check_jacobi(FREE3()).passed


@pytest.mark.parametrize("n", [1, 2, 4])
def test_jacobi_abelian(n):
    assert algebra.check_jacobi(LieAlgebra.abelian(n)).passed


def test_jacobi_violation_localized():
    # [x1,x2]=x3, [x1,x3]=x1: by hand, [[x1,x2],x3] + [[x2,x3],x1] + [[x3,x1],x2] = 0 + 0 + [-x1,x2] = -x3
    L = LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    rep = algebra.check_jacobi(L)
    assert [(v.identity, v.indices, v.residual) for v in rep.violations] == [("jacobi", (0, 1, 2), (0, 0, -1))]


def test_non_antisymmetric_table_reported():
    L = LieAlgebra(StructureTable(2, {(0, 1, 0): F(1)}))
    assert "antisymmetry" in algebra.check_jacobi(L).failed_identities()


# left-symmetric / Novikov -------------------------------------------------

@pytest.mark.parametrize("params", [(1, 1, 1), (1, 0, 0), (F(-2, 3), 5, F(1, 4))])
def test_filiform6_product_is_novikov_and_compatible(params):
    P = catalog.filiform6_product(*params)
    assert algebra.check_left_symmetric(P).passed
    assert algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, catalog.filiform6(*params))


def test_half_bracket_heisenberg():
    H = catalog.heisenberg(1)
    P = algebra.half_bracket(H)
    assert P.mul(0, 1) == (0, 0, F(1, 2))
    assert P.mul(1, 0) == (0, 0, F(-1, 2))
    assert algebra.check_left_symmetric(P).passed
    assert algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, H)


def test_half_bracket_abelian_is_zero():
    assert algebra.half_bracket(LieAlgebra.abelian(3)).table.is_zero()


def test_half_bracket_three_step_rejected():
    with pytest.raises(NotTwoStepNilpotent):
        algebra.half_bracket(FREE3())


def test_half_bracket_of_three_step_fails_novikov():
    # x1.x1 = 0 while (x1.x2).x1 = 1/2 x3 . x1 = 1/4 [x3,x1] = -1/4 x4
    P = AlgebraProduct(FREE3().table.scaled(F(1, 2)))
    rep = algebra.check_right_commutative(P)
    first = rep.violations[0]
    assert (first.indices, first.residual) == ((0, 0, 1), (0, 0, 0, F(1, 4), 0))
    assert not algebra.check_novikov(P).passed


def test_zero_product_everything_passes():
    Z = AlgebraProduct.zero(3)
    assert algebra.check_novikov(Z).passed
    assert algebra.check_jacobi_like(Z).passed
    assert algebra.check_commutative_associative(Z).passed
    assert not algebra.is_compatible(Z, catalog.heisenberg(1))


def test_commutative_associative_product_is_lsa():
    P = catalog.ex311_comm_assoc()
    assert algebra.check_commutative_associative(P).passed
    assert algebra.check_left_symmetric(P).passed


def test_jacobi_like_counterexample_fixture():
    # a fixed non-Novikov product on which the Jacobi-like sums do not vanish
    P = AlgebraProduct.from_products(3, {(0, 1): {0: 1}, (1, 2): {1: 1}, (2, 0): {2: 1}})
    assert not algebra.check_novikov(P).passed
    assert not algebra.check_jacobi_like(P).passed


# commutator ---------------------------------------------------------------

def test_commutator_of_filiform6_product():
    assert algebra.commutator(catalog.filiform6_product(1, 1, 1)).table == catalog.filiform6(1, 1, 1).table


def test_commutator_of_commutative_product_is_abelian():
    assert algebra.commutator(catalog.ex311_comm_assoc()).table.is_zero()


def test_commutator_of_derivation_product():
    assert algebra.commutator(catalog.ex311_novikov_product()).table == FREE3().table


def test_commutator_strict_raises_on_non_lie():
    # the commutator of a non-LSA product can fail Jacobi
    P = AlgebraProduct.from_products(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    with pytest.raises(JacobiFailure):
        algebra.commutator(P)
    assert algebra.commutator(P, strict=False).dim == 3


# series -------------------------------------------------------------------

def test_lower_central_series_g_I():
    s = algebra.series(catalog.g_I(F(1, 10)), "lower_central")
    assert s.dims == (7, 5, 4, 3, 2, 1, 0)
    assert algebra.is_filiform(catalog.g_I(F(1, 10)))


def test_derived_series_abelian():
    assert algebra.series(LieAlgebra.abelian(4)).dims == (4, 0)


def test_sl2_not_solvable():
    s = algebra.series(catalog.sl2())
    assert s.dims == (3, 3)
    assert not algebra.is_solvable(catalog.sl2())
    assert algebra.nilpotency_class(catalog.sl2()) is None


def test_nilpotency_classes():
    assert algebra.nilpotency_class(catalog.heisenberg(2)) == 2
    assert algebra.nilpotency_class(FREE3()) == 3
    assert algebra.nilpotency_class(catalog.free_nilpotent_2gen_class4()) == 4


def test_series_witnesses_span_terms():
    s = algebra.series(FREE3(), "lower_central")
    assert [len(w) for w in s.basis_witnesses] == list(s.dims)


# block product ------------------------------------------------------------

def test_block_product_filiform4():
    L = LieAlgebra.from_brackets(4, {(0, 1): {2: 1}, (0, 2): {3: 1}})
    P = algebra.block_product(L, [0], [1, 2, 3])
    assert algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, L)


def test_block_product_abelian():
    P = algebra.block_product(LieAlgebra.abelian(3), [0, 1], [2])
    assert P.table.is_zero()


def test_block_product_codim_one_ideal_with_central_derived():
    # e-part <e1>, f-part an ideal whose derived algebra is central (Heisenberg x R extended)
    L = LieAlgebra.from_brackets(4, {(1, 2): {3: 1}, (0, 1): {1: 1}, (0, 2): {2: -1}})
    P = algebra.block_product(L, [0], [1, 2, 3])
    assert algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, L)


def test_block_product_hypothesis_violation():
    from novikov.errors import HypothesisViolated

    with pytest.raises(HypothesisViolated) as err:
        algebra.block_product(catalog.sl2(), [0], [1, 2])
    assert err.value.condition


# derivations --------------------------------------------------------------

def test_ex311_derivation():
    A, D = catalog.ex311_comm_assoc(), catalog.ex311_derivation()
    assert algebra.check_derivation(A, D).passed
    assert D.apply(unit_vector(5, 0)) == (0, 0, 1, 0, 0)
    assert D.apply(unit_vector(5, 2)) == (0, 0, 0, 1, -1)


def test_zero_operator_is_derivation():
    assert algebra.check_derivation(catalog.ex311_comm_assoc(), LinearOperator.zeros(5)).passed


def test_identity_is_not_derivation():
    rep = algebra.check_derivation(catalog.ex311_comm_assoc(), LinearOperator.identity(5))
    assert not rep.passed
    assert rep.violations[0].indices == (0, 0)


def test_novikov_from_derivation_table():
    P = algebra.novikov_from_derivation(catalog.ex311_comm_assoc(), catalog.ex311_derivation())
    h = F(1, 2)
    expected = {(0, 0): (0, 0, 1, 0, 0), (0, 1): (0, 0, 1, 0, 0), (0, 2): (0, 0, 0, 1, -h),
                (1, 2): (0, 0, 0, 0, h), (2, 0): (0, 0, 0, 0, -h), (2, 1): (0, 0, 0, 0, -h)}
    got = {(i, j): P.mul(i, j) for i in range(5) for j in range(5) if any(P.mul(i, j))}
    assert got == expected
    assert algebra.check_novikov(P).passed


def test_novikov_from_zero_derivation():
    P = algebra.novikov_from_derivation(catalog.ex311_comm_assoc(), LinearOperator.zeros(5))
    assert P.table.is_zero()


def test_idempotent_line_only_zero_derivation():
    A = AlgebraProduct.from_products(1, {(0, 0): {0: 1}})
    # D(x) = d x with D(x.x) = 2 x.D(x) forces d = 0
    assert not algebra.check_derivation(A, LinearOperator.from_rows([[1]])).passed
    assert algebra.novikov_from_derivation(A, LinearOperator.zeros(1)).table.is_zero()


def test_novikov_from_derivation_rejects_non_derivation():
    with pytest.raises(PreconditionFailed):
        algebra.novikov_from_derivation(catalog.ex311_comm_assoc(), LinearOperator.identity(5))


# right nilpotency ---------------------------------------------------------

def test_right_nilpotency():
    assert algebra.right_nilpotency(algebra.half_bracket(catalog.heisenberg(1))) == (True, 2)
    assert algebra.right_nilpotency(AlgebraProduct.zero(3)) == (True, 1)
    assert algebra.right_nilpotency(AlgebraProduct.from_products(1, {(0, 0): {0: 1}})) == (False, None)
