"""Sparse multivariate polynomials over Q.

A monomial is a tuple of ``(variable_index, exponent)`` pairs sorted by
variable index, with positive exponents; ``()`` is the constant monomial.
Polynomials sharing a system share one ``variables`` tuple.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import to_fraction

ONE_MONO = ()


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: tuple) -> int:
    return sum(e for _, e in m)


def grevlex_key(m: tuple):
    """Sort key realizing graded reverse lexicographic order (x0 > x1 > ...)."""
    # Among equal degrees the larger monomial has the smaller exponent in the
    # highest-index variable where they differ.
    return (mono_degree(m), tuple((-v, -e) for v, e in reversed(m)))


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: tuple, terms: Mapping | None = None):
        self.variables = tuple(variables)
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        return cls(variables, {ONE_MONO: to_fraction(c)})

    @classmethod
    def var(cls, variables, index: int) -> "MultiPoly":
        return cls(variables, {((index, 1),): Fraction(1)})

    @classmethod
    def linear(cls, variables, coeffs: Mapping, const=0) -> "MultiPoly":
        terms = {((v, 1),): to_fraction(c) for v, c in coeffs.items()}
        if const:
            terms[ONE_MONO] = to_fraction(const)
        return cls(variables, terms)

    # inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({ONE_MONO: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE_MONO, Fraction(0))

    def support(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def exponent_vector(self, m: tuple) -> tuple:
        vec = [0] * len(self.variables)
        for v, e in m:
            vec[v] = e
        return tuple(vec)

    def leading_monomial(self):
        return max(self.terms, key=grevlex_key) if self.terms else None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return MultiPoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = to_fraction(other)
            return MultiPoly(self.variables, {m: c * a for m, a in self.terms.items()} if c else {})
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return MultiPoly(self.variables, t)

    __rmul__ = __mul__

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        """Value at ``point`` (variable index -> rational); missing variables are 0."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                x = point.get(v, 0)
                if not x:
                    val = 0
                    break
                val *= x ** e
            total += val
        return total

    def substitute(self, subs: Mapping[int, "MultiPoly"]) -> "MultiPoly":
        """Replace variables by polynomials (simultaneously)."""
        out: dict = {}
        for m, c in self.terms.items():
            piece = {ONE_MONO: c}
            for v, e in m:
                if v in subs:
                    for _ in range(e):
                        piece = _dict_mul(piece, subs[v].terms)
                else:
                    piece = {mono_mul(pm, ((v, e),)): pc for pm, pc in piece.items()}
            for pm, pc in piece.items():
                s = out.get(pm, 0) + pc
                if s:
                    out[pm] = s
                else:
                    out.pop(pm, None)
        return MultiPoly(self.variables, out)

    def monic(self) -> "MultiPoly":
        lm = self.leading_monomial()
        if lm is None:
            return self
        return self * (1 / self.terms[lm])

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            name = "*".join(self.variables[v] + (f"^{e}" if e > 1 else "") for v, e in m)
            if not name:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def _dict_mul(a: Mapping, b: Mapping) -> dict:
    t: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            t[m] = t.get(m, 0) + c1 * c2
    return {m: c for m, c in t.items() if c}


@dataclass
class PolySystem:
    """Polynomials over a shared variable list, each tagged with its origin."""

    variables: tuple
    polys: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def add(self, poly: MultiPoly, tag) -> None:
        if poly.variables != self.variables:
            poly = MultiPoly(self.variables, poly.terms)
        if poly:
            self.polys.append(poly)
            self.provenance.append(tag)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def residuals(self, point: Mapping[int, Fraction]) -> list:
        return [p.evaluate(point) for p in self.polys]

    def is_satisfied_by(self, point: Mapping[int, Fraction]) -> bool:
        return not any(self.residuals(point))

    def linear_part(self) -> list:
        return [p for p in self.polys if p.degree() <= 1]

    def to_json(self) -> dict:
        """Polynomials as lists of {exponents, coefficient} terms (dense exponent vectors)."""
        from .linalg import format_rational

        return {
            "variables": list(self.variables),
            "polys": [
                {
                    "tag": _tag_json(tag),
                    "terms": [
                        {"exponents": list(p.exponent_vector(m)), "coefficient": format_rational(c)}
                        for m, c in p.sorted_terms()
                    ],
                }
                for p, tag in zip(self.polys, self.provenance)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PolySystem":
        variables = tuple(data["variables"])
        sys = cls(variables)
        for entry in data["polys"]:
            terms = {}
            for t in entry["terms"]:
                m = tuple((v, e) for v, e in enumerate(t["exponents"]) if e)
                terms[m] = to_fraction(t["coefficient"])
            sys.add(MultiPoly(variables, terms), _tag_from_json(entry.get("tag")))
        return sys


def _tag_json(tag):
    if isinstance(tag, tuple):
        return [_tag_json(t) for t in tag]
    return tag


def _tag_from_json(tag):
    if isinstance(tag, list):
        return tuple(_tag_from_json(t) for t in tag)
    return tag
