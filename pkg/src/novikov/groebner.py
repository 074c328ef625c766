"""Buchberger's algorithm over Q in graded reverse lexicographic order.

Internally a monomial in ``m`` variables is the tuple
``(degree, -e[m-1], ..., -e[0])``; plain tuple comparison on that encoding is
exactly grevlex with ``x0 > x1 > ...``, products are componentwise sums and
divisibility is a componentwise comparison.

For elimination the variables are split into blocks and the encoding is the
concatenation of one such tuple per block, which is the block order with
grevlex inside each block.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polynomial import MultiPoly, PolySystem

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 6
DEFAULT_PAIR_CAP = 50_000


@dataclass
class GroebnerResult:
    """Outcome of a (possibly capped) Buchberger run.

    ``complete`` is False when deferred or unprocessed pairs remain; the
    basis is then only a partial basis.  A basis equal to ``[1]`` certifies
    the unit ideal whether or not the run completed.
    """

    basis: list
    complete: bool
    pairs_processed: int = 0
    deferred: int = 0
    reason: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def is_unit(self) -> bool:
        return any(p.is_constant() and p for p in self.basis)

    @property
    def status(self) -> str:
        if self.is_unit or self.complete:
            return "basis"
        return "cap_exceeded"


class _Ring:
    def __init__(self, nvars: int, blocks: Sequence[int] | None = None):
        # blocks: sizes of consecutive variable blocks, most significant first
        self.n = nvars
        self.blocks = tuple(blocks) if blocks else (nvars,)
        if sum(self.blocks) != nvars:
            raise ValueError("block sizes must add up to the number of variables")
        self.dpos = []
        pos = 0
        for size in self.blocks:
            self.dpos.append(pos)
            pos += size + 1

    def encode(self, poly: MultiPoly, varmap: dict) -> dict:
        n = self.n
        out = {}
        for m, c in poly.terms.items():
            e = [0] * n
            for v, k in m:
                e[varmap[v]] = k
            key = ()
            start = 0
            for size in self.blocks:
                part = e[start:start + size]
                key += (sum(part),) + tuple(-x for x in reversed(part))
                start += size
            out[key] = c
        return out

    def decode(self, p: dict, variables: tuple, inverse: list) -> MultiPoly:
        terms = {}
        for m, c in p.items():
            exps = []
            for pos, size in zip(self.dpos, self.blocks):
                exps.extend(-x for x in reversed(m[pos + 1:pos + 1 + size]))
            terms[tuple((inverse[i], exps[i]) for i in range(self.n) if exps[i])] = c
        return MultiPoly(variables, terms)

    def ops(self):
        """(divides, lcm, coprime, degree) for this encoding."""
        if len(self.blocks) == 1:
            return _divides, _lcm, _coprime, _degree
        dpos = frozenset(self.dpos)
        spans = [(pos, pos + 1 + size) for pos, size in zip(self.dpos, self.blocks)]

        def divides(a, b):
            for idx, (x, y) in enumerate(zip(a, b)):
                if idx not in dpos and x < y:
                    return False
            return True

        def lcm(a, b):
            out = ()
            for lo, hi in spans:
                body = tuple(min(x, y) for x, y in zip(a[lo + 1:hi], b[lo + 1:hi]))
                out += (-sum(body),) + body
            return out

        def coprime(a, b):
            for idx, (x, y) in enumerate(zip(a, b)):
                if idx not in dpos and x and y:
                    return False
            return True

        def degree(a):
            return sum(a[p] for p in dpos)

        return divides, lcm, coprime, degree


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: tuple, b: tuple) -> bool:
    # encoded exponents are negated
    if a[0] > b[0]:
        return False
    for x, y in zip(a[1:], b[1:]):
        if x < y:
            return False
    return True


def _quotient(b: tuple, a: tuple) -> tuple:
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    body = tuple(min(x, y) for x, y in zip(a[1:], b[1:]))
    return (-sum(body),) + body


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a[1:], b[1:]):
        if x and y:
            return False
    return True


def _degree(a: tuple) -> int:
    return a[0]


def _lm(p: dict) -> tuple:
    return max(p)


def _monic(p: dict) -> dict:
    if not p:
        return p
    c = p[max(p)]
    if c == 1:
        return p
    inv = 1 / c
    return {m: a * inv for m, a in p.items()}


def _sub_scaled(f: dict, c: Fraction, shift: tuple, g: dict) -> None:
    """f -= c * x^shift * g, in place."""
    for m, a in g.items():
        mm = _mul(m, shift)
        v = f.get(mm, 0) - c * a
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def _normal_form(f: dict, reducers: Sequence[tuple], divides=_divides) -> dict:
    """Full reduction of f by ``reducers`` (list of (lm, monic poly))."""
    f = dict(f)
    rem = {}
    while f:
        lm = max(f)
        c = f[lm]
        for glm, g in reducers:
            if divides(glm, lm):
                _sub_scaled(f, c, _quotient(lm, glm), g)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f: dict, flm: tuple, g: dict, glm: tuple, lcm=_lcm) -> dict:
    l = lcm(flm, glm)
    out = {}
    for m, a in f.items():
        out[_mul(m, _quotient(l, flm))] = a
    _sub_scaled(out, Fraction(1), _quotient(l, glm), g)
    return out


def _compact(polys: Sequence[MultiPoly], first: Iterable[int] = ()):
    """Used variables, with those in ``first`` moved to the front."""
    used = {v for p in polys for v in p.support()}
    first = set(first)
    order = sorted(used & first) + sorted(used - first)
    return order, {v: i for i, v in enumerate(order)}, len(used & first)


def groebner(polys, degree_cap: int = DEFAULT_DEGREE_CAP, pair_cap: int = DEFAULT_PAIR_CAP,
             eliminate: Iterable[int] = ()) -> GroebnerResult:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    S-pairs whose lcm has degree above ``degree_cap`` are deferred; if any
    remain deferred at the fixpoint, or more than ``pair_cap`` pairs would be
    processed, the result is marked incomplete.  Finding a nonzero constant
    stops the run immediately with basis ``[1]``.

    With ``eliminate`` (variable indices) the order is the block order that
    ranks those variables above all others, so the basis elements free of
    them generate the elimination ideal.
    """
    if isinstance(polys, PolySystem):
        polys = polys.polys
    polys = [p for p in polys if p]
    variables = polys[0].variables if polys else ()
    if not polys:
        return GroebnerResult([], True)
    one = MultiPoly.constant(variables, 1)
    if any(p.is_constant() for p in polys):
        return GroebnerResult([one], True, reason="constant input")

    used, varmap, nfirst = _compact(polys, eliminate)
    blocks = [b for b in (nfirst, len(used) - nfirst) if b]
    ring = _Ring(len(used), blocks)
    divides, lcm_, coprime, degree = ring.ops()
    gens = [_monic(ring.encode(p, varmap)) for p in polys]
    gens.sort(key=lambda p: (_lm(p), len(p)))

    basis: list[dict] = []
    lms: list[tuple] = []
    active: list[int] = []
    pairs: list = []  # heap of (lcm, i, j)
    deferred: list = []
    processed = 0

    def reducers():
        return [(lms[i], basis[i]) for i in active]

    def update(h: int) -> None:
        nonlocal pairs, active
        hl = lms[h]
        cands = [(g, lcm_(hl, lms[g])) for g in active]
        keep = []
        for idx, (g, l) in enumerate(cands):
            if coprime(hl, lms[g]):
                keep.append((g, l))
                continue
            redundant = False
            for g2, l2 in cands[idx + 1:]:
                if divides(l2, l):
                    redundant = True
                    break
            if not redundant:
                for g2, l2 in keep:
                    if divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                keep.append((g, l))
        new_pairs = [(l, g, h) for g, l in keep if not coprime(hl, lms[g])]
        survivors = []
        for l, i, j in pairs:
            if divides(hl, l) and lcm_(lms[i], hl) != l and lcm_(lms[j], hl) != l:
                continue
            survivors.append((l, i, j))
        def_surv = []
        for l, i, j in deferred:
            if divides(hl, l) and lcm_(lms[i], hl) != l and lcm_(lms[j], hl) != l:
                continue
            def_surv.append((l, i, j))
        deferred[:] = def_surv
        for item in new_pairs:
            if degree(item[0]) > degree_cap:
                deferred.append(item)
            else:
                survivors.append(item)
        heapq.heapify(survivors)
        pairs = survivors
        active = [g for g in active if not divides(hl, lms[g])] + [h]

    def add(p: dict) -> bool:
        p = _monic(p)
        basis.append(p)
        lms.append(_lm(p))
        update(len(basis) - 1)
        return degree(lms[-1]) == 0

    for g in gens:
        r = _normal_form(g, reducers(), divides)
        if r:
            if add(r):
                return GroebnerResult([one], True, processed, reason="unit ideal")

    while pairs:
        if processed >= pair_cap:
            return _finish(ring, basis, active, variables, used, False, processed, len(deferred) + len(pairs),
                           "pair cap reached")
        l, i, j = heapq.heappop(pairs)
        processed += 1
        s = _spoly(basis[i], lms[i], basis[j], lms[j], lcm_)
        r = _normal_form(s, reducers(), divides)
        if r:
            if add(r):
                return GroebnerResult([one], True, processed, reason="unit ideal")
    complete = not deferred
    return _finish(ring, basis, active, variables, used, complete, processed, len(deferred),
                   "" if complete else "degree cap reached")


def _finish(ring, basis, active, variables, used, complete, processed, deferred, reason) -> GroebnerResult:
    divides = ring.ops()[0]
    G = sorted(((basis[i], max(basis[i])) for i in active), key=lambda t: t[1])
    # interreduce into the reduced basis
    reduced = []
    for idx, (g, glm) in enumerate(G):
        others = [(h_lm, h) for k, (h, h_lm) in enumerate(G) if k != idx]
        tail = {m: c for m, c in g.items() if m != glm}
        r = _normal_form(tail, others, divides)
        r[glm] = Fraction(1)
        reduced.append((glm, r))
    # largest leading monomial first, in the order used for the run
    reduced.sort(key=lambda t: t[0], reverse=True)
    out = [ring.decode(p, variables, used) for _, p in reduced]
    return GroebnerResult(out, complete, processed, deferred, reason)


def elimination_ideal(polys, eliminate: Iterable[int], degree_cap: int = DEFAULT_DEGREE_CAP,
                      pair_cap: int = DEFAULT_PAIR_CAP) -> GroebnerResult:
    """Groebner basis of the ideal intersected with the ring of the variables
    not in ``eliminate``.

    Only meaningful when the underlying run completed (or hit the unit
    ideal); an incomplete run returns the elements found so far, which lie
    in the elimination ideal but need not generate it.
    """
    eliminate = set(eliminate)
    res = groebner(polys, degree_cap, pair_cap, eliminate=eliminate)
    kept = [p for p in res.basis if not (p.support() & eliminate)]
    return GroebnerResult(kept, res.complete, res.pairs_processed, res.deferred, res.reason,
                          {"full_basis_size": len(res.basis)})


def normal_form(poly: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Remainder of ``poly`` on division by ``basis`` (grevlex)."""
    if not basis:
        return poly
    allp = [p for p in list(basis) + [poly] if p]
    if not allp:
        return poly
    used, varmap, _ = _compact(allp)
    ring = _Ring(len(used))
    red = []
    for b in basis:
        if b:
            e = _monic(ring.encode(b, varmap))
            red.append((_lm(e), e))
    r = _normal_form(ring.encode(poly, varmap), red)
    return ring.decode(r, poly.variables, used)


def is_groebner_basis(basis: Sequence[MultiPoly]) -> bool:
    """Every S-polynomial of ``basis`` reduces to zero."""
    basis = [b for b in basis if b]
    if not basis:
        return True
    used, varmap, _ = _compact(basis)
    ring = _Ring(len(used))
    enc = [_monic(ring.encode(b, varmap)) for b in basis]
    red = [(_lm(e), e) for e in enc]
    for a in range(len(enc)):
        for b in range(a + 1, len(enc)):
            s = _spoly(enc[a], red[a][0], enc[b], red[b][0])
            if _normal_form(s, red):
                return False
    return True
