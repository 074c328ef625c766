"""Seeded random generators shared by the property tests."""
from __future__ import annotations

import random
from fractions import Fraction

from novikov import algebra, catalog
from novikov.algebra import AlgebraProduct, LieAlgebra, StructureTable
from novikov.extensions import Cocycle, LiftData, check_cocycle, iso_lift, semidirect_lift
from novikov.linalg import LinearOperator, nullspace, unit_vector
from novikov.errors import NotInvertible, NovikovObstruction, PreconditionFailed
from novikov.rmatrix import Representation, adjoint_representation, left_multiplication_representation

SMALL = [Fraction(p, q) for p in range(-3, 4) for q in (1, 2, 3)]


def rat(rng: random.Random, zero_weight: float = 0.0) -> Fraction:
    if zero_weight and rng.random() < zero_weight:
        return Fraction(0)
    return rng.choice(SMALL)


def rat_range(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    """Numerator and denominator drawn from [lo, hi], denominator nonzero."""
    return Fraction(rng.randint(lo, hi), rng.choice([d for d in range(lo, hi + 1) if d]))


def truncated_polynomial(dim: int, scale=1) -> AlgebraProduct:
    """t k[t] / t^(dim+1) on the basis t, t^2, ...: commutative and associative."""
    products = {}
    for i in range(dim):
        for j in range(dim):
            if i + j + 1 < dim:
                products[(i, j)] = {i + j + 1: scale}
    return AlgebraProduct.from_products(dim, products)


def random_comm_assoc(rng: random.Random, dim: int) -> AlgebraProduct:
    if dim == 0 or rng.random() < 0.5:
        return AlgebraProduct.zero(dim)
    return truncated_polynomial(dim, rat(rng) or 1)


def _weight_derivation(dim: int, rng: random.Random) -> LinearOperator:
    # t^k -> k c t^k is a derivation of the truncated polynomial algebra
    c = rat(rng) or 1
    return LinearOperator.from_rows([[c * (i + 1) if i == j else 0 for j in range(dim)] for i in range(dim)])


def random_lsa(rng: random.Random, dim: int) -> AlgebraProduct:
    """A left-symmetric product of dimension ``dim`` (often Novikov)."""
    choice = rng.randrange(5)
    if dim == 0:
        return AlgebraProduct.zero(0)
    if choice == 0:
        return AlgebraProduct.zero(dim)
    if choice == 1:
        return truncated_polynomial(dim, rat(rng) or 1)
    if choice == 2:
        A = truncated_polynomial(dim, rat(rng) or 1)
        return algebra.novikov_from_derivation(A, _weight_derivation(dim, rng))
    if choice == 3 and dim == 3:
        return _scaled(algebra.half_bracket(catalog.heisenberg(1)), rat(rng) or 1)
    if choice == 3 and dim == 2:
        # x1.x2 = x2 on r2 analogue, plus a commuting term on x1
        return AlgebraProduct.from_products(2, {(0, 1): {1: 1}, (0, 0): {0: rat(rng)}})
    return _random_lsa_by_transport(rng, dim)


def _scaled(P: AlgebraProduct, c) -> AlgebraProduct:
    return AlgebraProduct(P.table.scaled(c))


def _random_lsa_by_transport(rng: random.Random, dim: int) -> AlgebraProduct:
    """Transport of a known product by a random invertible change of basis."""
    base = truncated_polynomial(dim, 1) if rng.random() < 0.5 else algebra.novikov_from_derivation(
        truncated_polynomial(dim, 1), _weight_derivation(dim, rng))
    while True:
        g = LinearOperator.from_rows([[rat(rng, 0.4) for _ in range(dim)] for _ in range(dim)])
        if g.determinant():
            break
    ginv = g.inverse()
    e = [unit_vector(dim, i) for i in range(dim)]
    # x o y = g^-1 ( g x . g y )
    return AlgebraProduct(StructureTable.from_vectors(
        dim, lambda i, j: ginv.apply(base.product(g.apply(e[i]), g.apply(e[j])))))


def random_novikov(rng: random.Random, dim: int) -> AlgebraProduct:
    while True:
        P = random_lsa(rng, dim)
        if algebra.check_novikov(P).passed:
            return P


def _abelianization_functionals(b: LieAlgebra) -> list:
    """Linear functionals on b vanishing on [b, b]."""
    n = b.dim
    derived = [b.mul(i, j) for i in range(n) for j in range(n)]
    derived = [v for v in derived if any(v)]
    if not derived:
        return [unit_vector(n, i) for i in range(n)]
    return nullspace(derived, n)


def _poly_family(rng: random.Random, m: int) -> list:
    """A few commuting m x m matrices: powers of one random matrix."""
    kind = rng.randrange(3)
    if kind == 0:
        N = LinearOperator.from_rows([[rat(rng, 0.5) if i > j else 0 for j in range(m)] for i in range(m)])
    elif kind == 1:
        N = LinearOperator.from_rows([[rat(rng) if i == j else 0 for j in range(m)] for i in range(m)])
    else:
        N = LinearOperator.from_rows([[rat(rng, 0.5) if i >= j else 0 for j in range(m)] for i in range(m)])
    powers = [LinearOperator.identity(m), N]
    powers.append(N @ N)
    return powers


def random_rep(rng: random.Random, b: LieAlgebra, m: int, family=None, zero_weight=0.3) -> Representation:
    """Representation factoring through the abelianization, valued in a
    commuting family of matrices."""
    family = family or _poly_family(rng, m)
    funcs = _abelianization_functionals(b)
    maps = []
    coeff = [[rat(rng, zero_weight) for _ in family] for _ in funcs]
    for x in range(b.dim):
        M = LinearOperator.zeros(m)
        for f, cs in zip(funcs, coeff):
            if f[x]:
                for P, c in zip(family, cs):
                    if c:
                        M = M + P.scaled(f[x] * c)
        maps.append(M)
    return Representation(b, m, tuple(maps))


def random_rep_of(rng: random.Random, bp: AlgebraProduct, m: int, family) -> Representation:
    """Like :func:`random_rep`, but when m = dim b sometimes a representation
    that does not factor through the abelianization."""
    b = algebra.commutator(bp)
    if m == b.dim and not b.table.is_zero() and rng.random() < 0.4:
        if rng.random() < 0.5:
            return adjoint_representation(b)
        return left_multiplication_representation(bp)
    return random_rep(rng, b, m, family)


def random_cocycle(rng: random.Random, phi: Representation) -> Cocycle:
    n, m = phi.dim, phi.module_dim
    for _ in range(20):
        values = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    values[(i, j)] = tuple(rat(rng, 0.5) for _ in range(m))
        Om = Cocycle(n, m, values)
        if check_cocycle(phi, Om).passed:
            return Om
    return Cocycle.zero(n, m)


def _perturb(rng: random.Random, d: LiftData, family) -> LiftData:
    n, m = d.b_dim, d.a_dim
    what = rng.randrange(4)
    omega, Om, phi1, phi2 = dict(d.omega), d.Omega, list(d.phi1), list(d.phi2)
    if what == 0 and n:
        key = (rng.randrange(n), rng.randrange(n))
        omega[key] = tuple(rat(rng, 0.5) for _ in range(m))
    elif what == 1:
        Om = random_cocycle(rng, d.phi)
    elif what == 2:
        # shift phi1 and phi2 together, keeping phi2 - phi1 fixed
        extra = random_rep(rng, d.b, m, family)
        phi1 = [a + b for a, b in zip(phi1, extra.maps)]
        phi2 = [a + b for a, b in zip(phi2, extra.maps)]
    else:
        extra = random_rep(rng, d.b, m, family)
        phi1 = list(extra.maps)
    return LiftData(d.a_product, d.b_product, d.phi, Om, omega, phi1, phi2)


def random_liftdata(rng: random.Random, max_a: int = 3, max_b: int = 3) -> LiftData:
    """Valid LiftData with dims at most max_a + max_b.

    About half the instances start from a construction known to satisfy all
    conditions (semidirect or iso lift) and are then possibly perturbed, the
    rest are unstructured; this keeps both verdicts well represented.
    """
    while True:
        m = rng.randint(1, max_a)
        n = rng.randint(1, max_b)
        bp = random_lsa(rng, n)
        b = algebra.commutator(bp)
        family = _poly_family(rng, m)
        phi = random_rep_of(rng, bp, m, family)
        if rng.random() < 0.15:
            phi = Representation(b, m, tuple(LinearOperator.zeros(m) for _ in range(n)))
        start = rng.randrange(4)
        try:
            if start == 0:
                d = semidirect_lift(phi, bp)
            elif start == 1 and b.table.is_zero():
                d = iso_lift(phi, random_cocycle(rng, phi), rng.randrange(n))
            else:
                phi1 = random_rep_of(rng, bp, m, family)
                phi2 = [a + c for a, c in zip(phi1.maps, phi.maps)] if rng.random() < 0.7 else \
                    random_rep_of(rng, bp, m, family).maps
                omega = {(i, j): tuple(rat(rng, 0.6) for _ in range(m))
                         for i in range(n) for j in range(n) if rng.random() < 0.4}
                ap = random_comm_assoc(rng, m) if rng.random() < 0.5 else AlgebraProduct.zero(m)
                d = LiftData(ap, bp, phi, random_cocycle(rng, phi), omega, phi1.maps, phi2)
        except (NotInvertible, PreconditionFailed, NovikovObstruction):
            continue
        if rng.random() < 0.4:
            try:
                d = _perturb(rng, d, family)
            except PreconditionFailed:
                continue
        return d
