from fractions import Fraction as F

import pytest

from novikov import algebra, catalog, extensions, rmatrix
from novikov.errors import MissingParam, UnknownId

PARAMS = {
    "filiform6": {"a1": 1, "a2": 1, "a3": 1},
    "filiform6_product": {"a1": 1, "a2": 1, "a3": 1},
    "filiform7": {"a1": 1, "a2": 0, "a3": 0, "a4": F(1, 10)},
    "g_I": {"alpha": F(1, 10)},
    "rmatrix_ex36": {"c1": 1, "c2": 1},
}


@pytest.mark.parametrize("cid", catalog.ids())
def test_every_entry_builds_and_checks(cid):
    e = catalog.get(cid, PARAMS.get(cid))
    kind = e.kind
    assert kind != "unknown"
    if kind == "lie":
        assert algebra.check_jacobi(e.payload).passed
    elif kind == "representation":
        assert rmatrix.check_representation(e.payload).passed
    elif kind == "rmatrix":
        assert rmatrix.check_cybe(e.payload).passed
        assert rmatrix.check_novikov_condition(e.payload).passed
    elif kind == "product":
        assert algebra.check_left_symmetric(e.payload).passed
    elif kind == "liftdata":
        assert extensions.check_novikov_conditions(e.payload).passed
    elif kind == "parametric_lie":
        assert not e.payload.jacobi_residuals()


def test_g_I():
    e = catalog.get("g_I", alpha="1/10")
    assert e.payload.dim == 7
    assert e.params == {"alpha": F(1, 10)}


def test_g_I_is_filiform7_specialization():
    assert catalog.g_I(F(1, 3)).table == catalog.filiform7(1, 0, 0, F(1, 3)).table


def test_heisenberg():
    H = catalog.get("heisenberg", {"n": 1}).payload
    assert H.dim == 3 and algebra.nilpotency_class(H) == 2
    assert catalog.get("heisenberg").payload.dim == 3
    assert catalog.get("heisenberg", n=2).payload.dim == 5


def test_filiform6_product_example():
    P = catalog.get("filiform6_product", {"a1": 1, "a2": 1, "a3": 1}).payload
    assert algebra.check_novikov(P).passed
    assert algebra.is_compatible(P, catalog.filiform6(1, 1, 1))


def test_free_nilpotent_dims():
    assert catalog.free_nilpotent_2gen_class3().dim == 5
    L = catalog.free_nilpotent_2gen_class4()
    assert L.dim == 8 and algebra.series(L, "lower_central").dims == (8, 6, 5, 3, 0)


def test_errors():
    with pytest.raises(UnknownId):
        catalog.get("nope")
    with pytest.raises(MissingParam):
        catalog.get("g_I")
    with pytest.raises(MissingParam):
        catalog.get("sl2", {"alpha": 1})


def test_ex311_matrix_convention_pinned():
    # reading D row-wise instead breaks the derivation property
    A, D = catalog.ex311_comm_assoc(), catalog.ex311_derivation()
    assert algebra.check_derivation(A, D).passed
    assert not algebra.check_derivation(A, D.transpose()).passed
    assert algebra.novikov_from_derivation(A, D).table == catalog.ex311_novikov_product().table
