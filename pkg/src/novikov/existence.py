"""Deciding whether a Lie algebra admits a Novikov (or left-symmetric) product.

The unknowns are the entries of the left multiplications: ``L(x_k)[i, j]``
is the coefficient of ``x_i`` in ``x_k . x_j``.  The defining equations are

* compatibility ``x_a.x_b - x_b.x_a = [x_a, x_b]`` (linear),
* left-symmetry ``[L(x_a), L(x_b)] = L([x_a, x_b])`` (quadratic),
* for Novikov products, commuting right multiplications.  Using
  ``R(x) = L(x) - ad(x)`` and left-symmetry this becomes the linear family
  ``L([x,y]) + ad([x,y]) - [ad x, L(y)] - [L(x), ad y] = 0``.

Linear equations are eliminated first (iteratively, substituting into the
quadratic ones); whatever remains goes to a capped Buchberger run, and a
rational witness is searched for by fixing variables to small integers.
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from . import algebra
from .algebra import AlgebraProduct, LieAlgebra, StructureTable
from .groebner import DEFAULT_DEGREE_CAP, DEFAULT_PAIR_CAP, GroebnerResult, elimination_ideal, groebner, normal_form
from .linalg import to_fraction
from .polynomial import ONE_MONO, MultiPoly, PolySystem

log = logging.getLogger(__name__)

MODES = ("lsa", "novikov")
STRATEGIES = ("ansatz_first", "full")
DEFAULT_NODE_BUDGET = 400
LADDER = (0, 1, -1, 2, -2, 3, -3)


# --------------------------------------------------------------------------
# systems


@dataclass
class StructureSystem(PolySystem):
    """A polynomial system whose solutions parametrize products on a Lie algebra.

    ``template`` maps ``(i, j, k)`` to the (affine) polynomial giving the
    coefficient of ``x_k`` in ``x_i . x_j``.
    """

    lie: LieAlgebra | None = None
    mode: str = "novikov"
    kind: str = "full"
    template: dict = field(default_factory=dict)

    def product_at(self, point: Mapping[int, Fraction]) -> AlgebraProduct:
        entries = {key: p.evaluate(point) for key, p in self.template.items()}
        return AlgebraProduct(StructureTable(self.lie.dim, entries), self.lie.labels)


def full_variable_names(n: int) -> tuple:
    # ordered by (k, i, j): entry (i, j) of L(x_k)
    return tuple(f"L{k + 1}[{i + 1},{j + 1}]" for k in range(n) for i in range(n) for j in range(n))


def _var(n, k, i, j):
    return k * n * n + i * n + j


def build_full_system(L: LieAlgebra, mode: str = "novikov") -> StructureSystem:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n = L.dim
    names = full_variable_names(n)
    sys = StructureSystem(names, lie=L, mode=mode, kind="full")
    V = lambda k, i, j: MultiPoly.var(names, _var(n, k, i, j))  # noqa: E731
    for a in range(n):
        for b in range(n):
            for i in range(n):
                sys.template[(a, b, i)] = V(a, i, b)

    c = [[L.mul(a, b) for b in range(n)] for a in range(n)]
    ad = [[[c[a][j][i] for j in range(n)] for i in range(n)] for a in range(n)]  # ad[a][i][j]

    for a in range(n):
        for b in range(a + 1, n):
            for i in range(n):
                p = MultiPoly.linear(names, {_var(n, a, i, b): 1, _var(n, b, i, a): -1}, -c[a][b][i])
                sys.add(p, ("compat", a, b, i))

    for a in range(n):
        for b in range(a + 1, n):
            cab = c[a][b]
            for i in range(n):
                for j in range(n):
                    terms: dict = {}
                    for m in range(n):
                        _acc(terms, _quad(n, a, i, m, b, m, j), 1)
                        _acc(terms, _quad(n, b, i, m, a, m, j), -1)
                    for k in range(n):
                        if cab[k]:
                            _acc(terms, ((_var(n, k, i, j), 1),), -cab[k])
                    sys.add(MultiPoly(names, terms), ("lsa", a, b, i, j))

    if mode == "novikov":
        for a in range(n):
            for b in range(a + 1, n):
                cab = c[a][b]
                for i in range(n):
                    for j in range(n):
                        coeffs: dict = {}
                        const = Fraction(0)
                        # L([x_a, x_b]) + ad([x_a, x_b])
                        for k in range(n):
                            if cab[k]:
                                coeffs[_var(n, k, i, j)] = coeffs.get(_var(n, k, i, j), 0) + cab[k]
                                const += cab[k] * ad[k][i][j]
                        # - [ad x_a, L(x_b)] - [L(x_a), ad x_b]
                        for m in range(n):
                            if ad[a][i][m]:
                                v = _var(n, b, m, j)
                                coeffs[v] = coeffs.get(v, 0) - ad[a][i][m]
                            if ad[a][m][j]:
                                v = _var(n, b, i, m)
                                coeffs[v] = coeffs.get(v, 0) + ad[a][m][j]
                            if ad[b][m][j]:
                                v = _var(n, a, i, m)
                                coeffs[v] = coeffs.get(v, 0) - ad[b][m][j]
                            if ad[b][i][m]:
                                v = _var(n, a, m, j)
                                coeffs[v] = coeffs.get(v, 0) + ad[b][i][m]
                        sys.add(MultiPoly.linear(names, coeffs, const), ("novikov", a, b, i, j))
    return sys


def _quad(n, k1, i1, j1, k2, i2, j2):
    u, v = _var(n, k1, i1, j1), _var(n, k2, i2, j2)
    if u == v:
        return ((u, 2),)
    return ((min(u, v), 1), (max(u, v), 1))


def _acc(terms, mono, c):
    s = terms.get(mono, 0) + c
    if s:
        terms[mono] = s
    else:
        terms.pop(mono, None)


def build_ansatz_system(L: LieAlgebra, mode: str = "novikov") -> StructureSystem:
    """Restricted unknowns: ``x_i . x_j`` lies in the support of ``[x_i, x_j]``
    for ``i != j`` (one unknown per component, compatibility pre-substituted),
    and ``x_i . x_i`` lies in the coordinate span of the derived algebra."""
    n = L.dim
    names: list = []
    tmpl_terms: dict = {}
    derived_support = sorted({k for (_, _, k) in L.table.entries})

    def new_var(name):
        names.append(name)
        return len(names) - 1

    for i in range(n):
        for j in range(i + 1, n):
            for k, cijk in enumerate(L.mul(i, j)):
                if cijk:
                    v = new_var(f"l{i + 1},{j + 1};{k + 1}")
                    tmpl_terms[(i, j, k)] = ({v: 1}, 0)
                    tmpl_terms[(j, i, k)] = ({v: 1}, -cijk)
    for i in range(n):
        for k in derived_support:
            v = new_var(f"d{i + 1};{k + 1}")
            tmpl_terms[(i, i, k)] = ({v: 1}, 0)

    names = tuple(names)
    sys = StructureSystem(names, lie=L, mode=mode, kind="ansatz")
    for key, (coeffs, const) in tmpl_terms.items():
        sys.template[key] = MultiPoly.linear(names, coeffs, const)
    _add_identities_from_template(sys, mode)
    return sys


def _add_identities_from_template(sys: StructureSystem, mode: str, dim: int | None = None) -> None:
    n = sys.lie.dim if dim is None else dim
    names = sys.variables
    zero = MultiPoly(names)
    prod = [[[sys.template.get((i, j, k), zero) for k in range(n)] for j in range(n)] for i in range(n)]

    def times(u, v):
        # u, v: lists of polynomials (coordinates); returns coordinates of u . v
        out = [zero] * n
        for i in range(n):
            if not u[i]:
                continue
            for j in range(n):
                if not v[j]:
                    continue
                uv = u[i] * v[j]
                for k in range(n):
                    if prod[i][j][k]:
                        out[k] = out[k] + uv * prod[i][j][k]
        return out

    one = MultiPoly.constant(names, 1)
    e = [[one if t == i else zero for t in range(n)] for i in range(n)]
    xy = [[prod[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                lhs = [a - b for a, b in zip(times(e[i], xy[j][k]), times(xy[i][j], e[k]))]
                rhs = [a - b for a, b in zip(times(e[j], xy[i][k]), times(xy[j][i], e[k]))]
                for t in range(n):
                    sys.add(lhs[t] - rhs[t], ("lsa", i, j, k, t))
    if mode == "novikov":
        for i in range(n):
            for j in range(n):
                for k in range(j + 1, n):
                    d = [a - b for a, b in zip(times(xy[i][j], e[k]), times(xy[i][k], e[j]))]
                    for t in range(n):
                        sys.add(d[t], ("right_comm", i, j, k, t))


# --------------------------------------------------------------------------
# parametric families


@dataclass(frozen=True)
class ParametricLieAlgebra:
    """Structure constants that are polynomials in named parameters.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to ``{k: MultiPoly}``, the
    polynomials sharing the variable tuple ``params``.
    """

    dim: int
    params: tuple
    brackets: Mapping

    def coefficient(self, i: int, j: int, k: int) -> MultiPoly:
        zero = MultiPoly(self.params)
        if i < j:
            return self.brackets.get((i, j), {}).get(k, zero)
        if i > j:
            return -self.brackets.get((j, i), {}).get(k, zero)
        return zero

    def specialize(self, values: Mapping) -> LieAlgebra:
        point = {self.params.index(name): to_fraction(v) for name, v in values.items()}
        if len(point) != len(self.params):
            raise ValueError(f"values needed for every parameter {self.params}")
        br = {(i, j): {k: p.evaluate(point) for k, p in row.items()} for (i, j), row in self.brackets.items()}
        return LieAlgebra.from_brackets(self.dim, br)

    def jacobi_residuals(self) -> list:
        """Nonzero polynomial Jacobi residuals; empty iff Jacobi holds identically."""
        n, out = self.dim, []
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for t in range(n):
                        r = MultiPoly(self.params)
                        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                            for m in range(n):
                                cab = self.coefficient(a, b, m)
                                if cab:
                                    r = r + cab * self.coefficient(m, c, t)
                        if r:
                            out.append(((i, j, k, t), r))
        return out


def build_parametric_ansatz_system(PL: ParametricLieAlgebra, mode: str = "novikov") -> StructureSystem:
    """The extended ansatz with the parameters adjoined as the last variables.

    Supports are taken generically (a component is present when its
    polynomial is nonzero), so the system describes the ansatz family at
    generic parameter values.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n = PL.dim
    names: list = []
    lam: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if PL.coefficient(i, j, k):
                    lam[(i, j, k)] = len(names)
                    names.append(f"l{i + 1},{j + 1};{k + 1}")
    support = sorted({k for (i, j, k) in lam})
    diag: dict = {}
    for i in range(n):
        for k in support:
            diag[(i, k)] = len(names)
            names.append(f"d{i + 1};{k + 1}")
    offset = len(names)
    names = tuple(names) + tuple(PL.params)
    shift = lambda p: MultiPoly(names, {tuple((v + offset, e) for v, e in m): c for m, c in p.terms.items()})  # noqa: E731
    sys = StructureSystem(names, lie=None, mode=mode, kind="parametric_ansatz")
    for (i, j, k), v in lam.items():
        x = MultiPoly.var(names, v)
        sys.template[(i, j, k)] = x
        sys.template[(j, i, k)] = x - shift(PL.coefficient(i, j, k))
    for (i, k), v in diag.items():
        sys.template[(i, i, k)] = MultiPoly.var(names, v)
    _add_identities_from_template(sys, mode, dim=n)
    return sys


def parameter_conditions(PL: ParametricLieAlgebra, mode: str = "novikov", *,
                         degree_cap: int = DEFAULT_DEGREE_CAP, pair_cap: int = DEFAULT_PAIR_CAP) -> GroebnerResult:
    """Eliminate the ansatz unknowns: polynomials in the parameters that
    vanish wherever the generic ansatz family has a solution over C.

    Best effort: if the run is incomplete the returned polynomials are still
    valid necessary conditions but may not generate the whole elimination
    ideal.
    """
    sys = build_parametric_ansatz_system(PL, mode)
    offset = len(sys.variables) - len(PL.params)
    red = linear_reduce(sys, track=False)
    if red.infeasible:
        one = MultiPoly.constant(sys.variables, 1)
        return GroebnerResult([one], True, reason="linear equations are contradictory")
    eliminate = set(range(offset))
    res = elimination_ideal(red.residual.polys, eliminate, degree_cap, pair_cap)
    # linear substitutions that only involve parameters also belong to the ideal
    extra = [p for p in red.substitution_polys() if not (p.support() & eliminate)]
    res.basis = extra + [p for p in res.basis if p not in extra]
    res.stats.update({"ansatz_unknowns": offset, "eliminated_linear": len(red.eliminated)})
    return res


# --------------------------------------------------------------------------
# linear reduction


def _int_row(p: MultiPoly):
    """Linear polynomial -> (primitive integer row {var or -1: int}, scale) with row = scale * p."""
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    row = {}
    for m, c in p.terms.items():
        key = m[0][0] if m else -1
        row[key] = int(c * den)
    g = 0
    for a in row.values():
        g = gcd(g, a)
    row = {k: a // g for k, a in row.items()}
    return row, Fraction(den, g)


def _primitive(row: dict, combo: dict | None):
    g = 0
    for a in row.values():
        g = gcd(g, a)
        if g == 1:
            break
    if g > 1:
        row = {k: a // g for k, a in row.items()}
        if combo is not None:
            combo = {k: c / g for k, c in combo.items()}
    return row, combo


def _combine(a: int, row: dict, b: int, prow: dict) -> dict:
    """a * row - b * prow, zero entries dropped."""
    out = {k: a * v for k, v in row.items()} if a != 1 else dict(row)
    for k, v in prow.items():
        s = out.get(k, 0) - b * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _combine_combo(a: int, combo: dict, b: int, pcombo: dict) -> dict:
    out = {k: a * v for k, v in combo.items()} if a != 1 else dict(combo)
    for k, v in pcombo.items():
        s = out.get(k, 0) - b * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass
class LinearReduction:
    """Result of iterated linear elimination.

    ``rounds`` is the substitution record: a list of rounds, each a list of
    ``(variable, expression)`` pairs where the expression only involves
    variables not solved in that round.  Back-substitution walks the rounds
    in reverse.
    """

    source: PolySystem
    residual: PolySystem
    rounds: list
    infeasible: bool = False
    contradiction: Fraction | None = None
    _trace: dict | None = field(default=None, repr=False)

    @property
    def eliminated(self) -> set:
        return {v for rnd in self.rounds for v, _ in rnd}

    def free_variables(self) -> set:
        used = {v for p in self.source.polys for v in p.support()}
        return used - self.eliminated

    def back_substitute(self, point: Mapping[int, Fraction]) -> dict:
        point = dict(point)
        for rnd in reversed(self.rounds):
            for v, expr in rnd:
                point[v] = expr.evaluate(point)
        return point

    def substitution_polys(self) -> list:
        """The substitutions as polynomials ``v - expression``."""
        names = self.source.variables
        return [MultiPoly.var(names, v) - expr for rnd in self.rounds for v, expr in rnd]

    def certificate(self) -> dict:
        """Cofactors ``{input index: polynomial}`` with ``sum q_i f_i`` a nonzero constant."""
        if not self.infeasible:
            raise ValueError("system was not found infeasible")
        if self._trace is None:
            raise ValueError("reduction ran without tracking")
        return _expand_certificate(self._trace)


def verify_linear_certificate(system: PolySystem, cofactors: Mapping[int, MultiPoly]) -> Fraction | None:
    """Evaluate ``sum q_i f_i``; returns the constant if it is a nonzero constant, else None."""
    total = MultiPoly(system.variables)
    for idx, q in cofactors.items():
        total = total + q * system.polys[idx]
    if total and total.is_constant():
        return total.constant_term()
    return None


def linear_reduce(system: PolySystem, track: bool = True) -> LinearReduction:
    """Eliminate linear equations and substitute, until no linear ones remain."""
    variables = system.variables
    polys: dict = {}
    origin: dict = {}
    live: list = []
    for idx, p in enumerate(system.polys):
        polys[idx] = p
        origin[idx] = ("input", idx)
        live.append(idx)
    next_id = len(system.polys)
    rounds: list = []
    round_combos: list = []
    trace = {"polys": polys, "origin": origin, "rounds": rounds, "combos": round_combos, "variables": variables}

    while True:
        lin = [i for i in live if polys[i].degree() <= 1]
        if not lin:
            break
        nonlin = [i for i in live if polys[i].degree() > 1]
        pivots: dict = {}
        for i in lin:
            row, scale = _int_row(polys[i])
            combo = {i: scale} if track else None
            for v in [k for k in row if k in pivots]:
                if v not in row:
                    continue
                prow, pcombo = pivots[v]
                a, b = prow[v], row[v]
                g = gcd(a, b)
                a, b = a // g, b // g
                row = _combine(a, row, b, prow)
                if track:
                    combo = _combine_combo(a, combo, b, pcombo)
                row, combo = _primitive(row, combo)
            if not row:
                continue
            if set(row) == {-1}:
                const = Fraction(row[-1])
                trace["contradiction"] = (len(rounds), combo, const)
                residual = PolySystem(variables)
                return LinearReduction(system, residual, rounds, True, const, trace if track else None)
            v = min(k for k in row if k >= 0)
            if row[v] < 0:
                row = {k: -a for k, a in row.items()}
                if track:
                    combo = {k: -c for k, c in combo.items()}
            for u, (prow, pcombo) in list(pivots.items()):
                if v in prow:
                    a, b = row[v], prow[v]
                    g = gcd(a, b)
                    a, b = a // g, b // g
                    nrow = _combine(a, prow, b, row)
                    ncombo = _combine_combo(a, pcombo, b, combo) if track else None
                    pivots[u] = _primitive(nrow, ncombo)
            pivots[v] = (row, combo)

        subs = {}
        rnd = []
        combos = {}
        for v in sorted(pivots):
            row, combo = pivots[v]
            a = row[v]
            coeffs = {k: Fraction(-c, a) for k, c in row.items() if k not in (v, -1)}
            const = Fraction(-row.get(-1, 0), a)
            expr = MultiPoly.linear(variables, coeffs, const)
            subs[v] = expr
            rnd.append((v, expr))
            if track:
                combos[v] = {k: c / a for k, c in combo.items()}
        rounds.append(rnd)
        round_combos.append(combos)
        rno = len(rounds) - 1

        new_live = []
        for i in nonlin:
            p = polys[i]
            hit = {v: subs[v] for v in p.support() if v in subs}
            if not hit:
                new_live.append(i)
                continue
            q = p.substitute(hit)
            if not q:
                continue
            polys[next_id] = q
            origin[next_id] = ("subst", i, rno)
            new_live.append(next_id)
            next_id += 1
        live = new_live

    residual = PolySystem(variables)
    for i in live:
        root = i
        while origin[root][0] == "subst":
            root = origin[root][1]
        residual.add(polys[i], system.provenance[origin[root][1]] if system.provenance else None)
    return LinearReduction(system, residual, rounds, False, None, trace if track else None)


def _substitution_quotient(g: MultiPoly, v: int, expr: MultiPoly) -> MultiPoly:
    """q with ``g - g|_{v=expr} = q * (v - expr)``."""
    names = g.variables
    by_power: dict = {}
    for m, c in g.terms.items():
        e = dict(m).get(v, 0)
        if e:
            rest = tuple((u, k) for u, k in m if u != v)
            by_power.setdefault(e, {})[rest] = c
    q = MultiPoly(names)
    xv = MultiPoly.var(names, v)
    for k, terms in by_power.items():
        a_k = MultiPoly(names, terms)
        s = MultiPoly(names)
        for i in range(k):
            s = s + _pow(xv, i) * _pow(expr, k - 1 - i)
        q = q + a_k * s
    return q


def _pow(p: MultiPoly, k: int) -> MultiPoly:
    out = MultiPoly.constant(p.variables, 1)
    for _ in range(k):
        out = out * p
    return out


def _expand_certificate(trace: dict) -> dict:
    polys, origin, rounds, combos = trace["polys"], trace["origin"], trace["rounds"], trace["combos"]
    memo: dict = {}
    pivot_memo: dict = {}

    def add_into(acc: dict, part: dict, factor) -> None:
        for idx, q in part.items():
            r = acc.get(idx)
            term = q * factor
            r = term if r is None else r + term
            if r:
                acc[idx] = r
            else:
                acc.pop(idx, None)

    def expand(pid: int) -> dict:
        if pid in memo:
            return memo[pid]
        kind = origin[pid]
        names = trace["variables"]
        if kind[0] == "input":
            res = {kind[1]: MultiPoly.constant(names, 1)}
        else:
            _, parent, rno = kind
            res = dict(expand(parent))
            g = polys[parent]
            subs = dict(rounds[rno])
            for v in sorted(g.support()):
                if v not in subs or v not in g.support():
                    continue
                q = _substitution_quotient(g, v, subs[v])
                add_into(res, expand_pivot(rno, v), -q if q else q)
                g = g.substitute({v: subs[v]})
        memo[pid] = res
        return res

    def expand_pivot(rno: int, v: int) -> dict:
        key = (rno, v)
        if key not in pivot_memo:
            acc: dict = {}
            for rid, lam in combos[rno][v].items():
                add_into(acc, expand(rid), lam)
            pivot_memo[key] = acc
        return pivot_memo[key]

    _, combo, _ = trace["contradiction"]
    acc: dict = {}
    for rid, lam in combo.items():
        add_into(acc, expand(rid), lam)
    return acc


# --------------------------------------------------------------------------
# decision


@dataclass
class SolveOutcome:
    verdict: str  # "exists" | "not_exists" | "unknown"
    mode: str
    witness: AlgebraProduct | None = None
    certificate: dict | None = None
    residual: PolySystem | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def exists(self) -> bool:
        return self.verdict == "exists"


class _BudgetExhausted(Exception):
    pass


def _verify_witness(L: LieAlgebra, product: AlgebraProduct, mode: str) -> bool:
    rep = algebra.check_novikov(product) if mode == "novikov" else algebra.check_left_symmetric(product)
    return rep.passed and algebra.is_compatible(product, L)


class _Solver:
    def __init__(self, degree_cap, pair_cap, node_budget, rng=None):
        self.degree_cap = degree_cap
        self.pair_cap = pair_cap
        self.node_budget = node_budget
        self.nodes = 0
        self.rng = rng
        self.groebner_runs = 0
        self.incomplete = 0

    def gb(self, polys) -> GroebnerResult:
        self.groebner_runs += 1
        res = groebner(polys, self.degree_cap, self.pair_cap)
        if not res.complete and not res.is_unit:
            self.incomplete += 1
        return res

    def tighten(self, residual: PolySystem, chain: list):
        """Alternate Groebner runs and linear elimination until no new linear
        polynomials appear.  Returns (polys, chain, groebner result) or None if
        the ideal is the unit ideal."""
        polys = residual
        last = None
        while polys.polys:
            res = self.gb(polys)
            last = res
            if res.is_unit:
                return None
            if not res.complete:
                return polys, chain, res
            basis = PolySystem(polys.variables)
            for p in res.basis:
                basis.add(p, "groebner")
            if not any(p.degree() <= 1 for p in basis.polys):
                return basis, chain, res
            red = linear_reduce(basis, track=False)
            if red.infeasible:
                return None
            chain = chain + [red]
            polys = red.residual
        return polys, chain, last

    def choose_variable(self, polys: PolySystem) -> int:
        counts: dict = {}
        for p in polys.polys:
            for v in p.support():
                counts[v] = counts.get(v, 0) + 1
        if self.rng is not None:
            vs = sorted(counts)
            self.rng.shuffle(vs)
            return max(vs, key=lambda v: counts[v])
        return min(counts, key=lambda v: (-counts[v], v))

    def search(self, polys: PolySystem, chain: list):
        if not polys.polys:
            return chain
        v = self.choose_variable(polys)
        for val in LADDER:
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise _BudgetExhausted
            trial = PolySystem(polys.variables, list(polys.polys), list(polys.provenance))
            trial.add(MultiPoly.linear(polys.variables, {v: 1}, -val), ("fix", v, val))
            red = linear_reduce(trial, track=False)
            if red.infeasible:
                continue
            t = self.tighten(red.residual, chain + [red])
            if t is None:
                continue
            rest, sub_chain, _ = t
            found = self.search(rest, sub_chain)
            if found is not None:
                return found
        return None


def _point_from_chain(chain: list) -> dict:
    point: dict = {}
    for red in reversed(chain):
        point = red.back_substitute(point)
    return point


def solve_system(system: StructureSystem, *, certify: bool = True, degree_cap: int = DEFAULT_DEGREE_CAP,
                 pair_cap: int = DEFAULT_PAIR_CAP, node_budget: int = DEFAULT_NODE_BUDGET,
                 seed: int = 0) -> SolveOutcome:
    """Run linear reduction, Groebner basis and witness search on one system.

    A ``not_exists`` verdict is only returned for full systems; on an ansatz
    system infeasibility just means the ansatz family is empty.
    """
    t0 = time.perf_counter()
    L, mode = system.lie, system.mode
    stats = {"system": system.kind, "unknowns": len(system.variables), "polynomials": len(system.polys)}
    red = linear_reduce(system, track=certify)
    used = {v for p in system.polys for v in p.support()}
    stats["eliminated_linear"] = len(red.eliminated)
    stats["linear_rounds"] = len(red.rounds)
    stats["residual_polynomials"] = len(red.residual)
    stats["residual_variables"] = len({v for p in red.residual.polys for v in p.support()})

    def done(outcome):
        stats["seconds"] = round(time.perf_counter() - t0, 3)
        outcome.stats = stats
        return outcome

    if red.infeasible:
        cert = {"kind": "linear_infeasible", "constant": red.contradiction, "round": len(red.rounds)}
        if certify:
            cert["cofactors"] = red.certificate()
            cert["tags"] = {i: system.provenance[i] for i in cert["cofactors"]}
        return done(SolveOutcome("not_exists", mode, certificate=cert,
                                 reason="linear equations are contradictory"))

    solver = _Solver(degree_cap, pair_cap, node_budget)
    t = solver.tighten(red.residual, [red])
    stats["groebner_runs"] = solver.groebner_runs
    if t is None:
        return done(SolveOutcome("not_exists", mode, certificate={"kind": "groebner_unit", "residual": red.residual},
                                 reason="1 lies in the ideal of the reduced system"))
    polys, chain, gbres = t
    stats["groebner_complete"] = gbres.complete if gbres is not None else True

    found = None
    reason = ""
    try:
        found = solver.search(polys, chain)
        if found is None:
            reason = "no rational witness with small integer free values"
    except _BudgetExhausted:
        reason = "witness search budget exhausted"
        if seed:
            solver = _Solver(degree_cap, pair_cap, node_budget, random.Random(seed))
            try:
                found = solver.search(polys, chain)
            except _BudgetExhausted:
                pass
    stats["search_nodes"] = solver.nodes
    stats["groebner_runs"] = stats.get("groebner_runs", 0) + solver.groebner_runs
    if found is not None:
        point = _point_from_chain(found)
        point = {v: point.get(v, Fraction(0)) for v in used | set(point)}
        witness = system.product_at(point)
        if not system.is_satisfied_by(point):
            raise AssertionError("back-substituted point does not satisfy the system")
        if not _verify_witness(L, witness, mode):
            raise AssertionError("witness failed independent verification")
        return done(SolveOutcome("exists", mode, witness=witness, reason="verified witness"))
    if gbres is not None and not gbres.complete:
        reason = f"{reason}; Groebner run incomplete ({gbres.reason})"
    return done(SolveOutcome("unknown", mode, residual=polys, reason=reason))


def replay_certificate(L: LieAlgebra, mode: str, certificate: Mapping) -> bool:
    """Independently re-check a non-existence certificate for ``L``.

    ``linear_infeasible``: the cofactors combine the polynomials of the
    freshly built full system into the stated nonzero constant.
    ``groebner_unit``: linear reduction of the fresh system reproduces the
    stored residual, and 1 reduces to 0 modulo a new Groebner basis of it.
    """
    system = build_full_system(L, mode)
    if certificate["kind"] == "linear_infeasible":
        cofactors = certificate.get("cofactors")
        if not cofactors:
            return False
        value = verify_linear_certificate(system, cofactors)
        return value is not None and value == certificate["constant"]
    if certificate["kind"] == "groebner_unit":
        red = linear_reduce(system, track=False)
        stored = certificate["residual"]
        if [p.terms for p in red.residual.polys] != [p.terms for p in stored.polys]:
            return False
        res = groebner(stored.polys, degree_cap=10 ** 6)
        one = MultiPoly.constant(stored.variables, 1)
        return res.is_unit and not normal_form(one, res.basis)
    raise ValueError(f"unknown certificate kind {certificate['kind']!r}")


def decide(L: LieAlgebra, mode: str = "novikov", strategy: str = "ansatz_first", *,
           degree_cap: int = DEFAULT_DEGREE_CAP, pair_cap: int = DEFAULT_PAIR_CAP,
           node_budget: int = DEFAULT_NODE_BUDGET, seed: int = 0, certify: bool = True) -> SolveOutcome:
    """Decide whether ``L`` admits a product of the given mode.

    Every ``exists`` witness is re-verified; ``not_exists`` always carries a
    certificate (contradictory linear combination or unit ideal), valid over
    every field extension of Q.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    rep = algebra.check_jacobi(L)
    if not rep.passed:
        raise ValueError("input is not a Lie algebra")
    kw = dict(degree_cap=degree_cap, pair_cap=pair_cap, node_budget=node_budget, seed=seed)
    ansatz_stats = None
    if strategy == "ansatz_first":
        out = solve_system(build_ansatz_system(L, mode), certify=False, **kw)
        if out.exists:
            out.stats["strategy"] = "ansatz"
            return out
        ansatz_stats = out.stats
    out = solve_system(build_full_system(L, mode), certify=certify, **kw)
    out.stats["strategy"] = "full"
    if ansatz_stats is not None:
        out.stats["ansatz"] = ansatz_stats
    return out
