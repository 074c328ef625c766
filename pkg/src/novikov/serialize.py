"""JSON forms of every value the tool reads or writes.

Rationals are always strings ``"p/q"`` (``"3/1"`` for integers) so that
round trips are exact; on input plain integers are accepted as well.  Basis
indices are 1-based in JSON and 0-based in Python.  Every ``*_to_json``
output re-parses with the matching ``*_from_json`` to an equal value.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Mapping

import jsonschema

from .algebra import AlgebraProduct, CheckReport, LieAlgebra, StructureTable, Violation
from .errors import NovikovError, SchemaError
from .extensions import Cocycle, LiftData
from .linalg import LinearOperator, format_rational, to_fraction
from .polynomial import MultiPoly, PolySystem
from .rmatrix import Representation, RMatrix

RATIONAL = {"anyOf": [{"type": "string", "pattern": r"^\s*[-+]?\d+(/\d+)?\s*$"}, {"type": "integer"}]}
INDEX = {"type": "integer", "minimum": 1}
MATRIX = {"type": "array", "items": {"type": "array", "items": RATIONAL}}
VECTOR = {"type": "array", "items": RATIONAL}

ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["dim", "entries"],
    "properties": {
        "kind": {"enum": ["lie", "product"]},
        "dim": {"type": "integer", "minimum": 0},
        "labels": {"anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "string"}}]},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "k", "c"],
                "properties": {"i": INDEX, "j": INDEX, "k": INDEX, "c": RATIONAL},
            },
        },
    },
}
OPERATOR_SCHEMA = {
    "type": "object",
    "required": ["matrix"],
    "properties": {"kind": {"const": "operator"}, "rows": {"type": "integer"}, "cols": {"type": "integer"},
                   "matrix": MATRIX},
}
REPRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["algebra", "module_dim", "maps"],
    "properties": {
        "kind": {"enum": ["representation", "rmatrix"]},
        "algebra": ALGEBRA_SCHEMA,
        "module_dim": {"type": "integer", "minimum": 1},
        "maps": {"type": "array", "items": MATRIX},
    },
}
RMATRIX_SCHEMA = {
    "allOf": [REPRESENTATION_SCHEMA, {"type": "object", "required": ["T"], "properties": {"T": MATRIX}}],
}
PAIR_VALUES = {
    "type": "array",
    "items": {"type": "object", "required": ["i", "j", "v"], "properties": {"i": INDEX, "j": INDEX, "v": VECTOR}},
}
COCYCLE_SCHEMA = {
    "type": "object",
    "required": ["b_dim", "a_dim", "values"],
    "properties": {"b_dim": {"type": "integer", "minimum": 0}, "a_dim": {"type": "integer", "minimum": 0},
                   "values": PAIR_VALUES},
}
LIFTDATA_SCHEMA = {
    "type": "object",
    "required": ["a_product", "b_product", "phi", "Omega", "omega", "phi1", "phi2"],
    "properties": {
        "kind": {"const": "liftdata"},
        "a_product": ALGEBRA_SCHEMA,
        "b_product": ALGEBRA_SCHEMA,
        "phi": REPRESENTATION_SCHEMA,
        "Omega": COCYCLE_SCHEMA,
        "omega": PAIR_VALUES,
        "phi1": {"type": "array", "items": MATRIX},
        "phi2": {"type": "array", "items": MATRIX},
    },
}

SCHEMAS = {
    "lie": ALGEBRA_SCHEMA,
    "product": ALGEBRA_SCHEMA,
    "operator": OPERATOR_SCHEMA,
    "representation": REPRESENTATION_SCHEMA,
    "rmatrix": RMATRIX_SCHEMA,
    "cocycle": COCYCLE_SCHEMA,
    "liftdata": LIFTDATA_SCHEMA,
}


def _validate(data, schema, where: str = "") -> None:
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as err:
        parts = [where.strip("/")] + [str(p) for p in err.absolute_path]
        raise SchemaError(err.message, "/" + "/".join(s for s in parts if s)) from None


def _rat(x, where: str):
    try:
        return to_fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as err:
        raise SchemaError(f"not a rational: {x!r} ({err})", where) from None


def _index(i: int, dim: int, where: str) -> int:
    if not 1 <= i <= dim:
        raise SchemaError(f"index {i} outside 1..{dim}", where)
    return i - 1


# --------------------------------------------------------------------------
# algebras and matrices


def algebra_to_json(A) -> dict:
    kind = "lie" if isinstance(A, LieAlgebra) else "product"
    return {
        "kind": kind,
        "dim": A.dim,
        "labels": list(A.labels) if A.labels else None,
        "entries": [{"i": i + 1, "j": j + 1, "k": k + 1, "c": format_rational(c)}
                    for (i, j, k), c in A.table.entries.items()],
    }


def algebra_from_json(data: Mapping, kind: str | None = None, where: str = ""):
    _validate(data, ALGEBRA_SCHEMA, where)
    kind = kind or data.get("kind") or "product"
    n = data["dim"]
    entries = {}
    for t, e in enumerate(data["entries"]):
        loc = f"{where}/entries/{t}"
        key = (_index(e["i"], n, loc + "/i"), _index(e["j"], n, loc + "/j"), _index(e["k"], n, loc + "/k"))
        entries[key] = entries.get(key, 0) + _rat(e["c"], loc + "/c")
    labels = data.get("labels")
    if labels is not None and len(labels) != n:
        raise SchemaError(f"{len(labels)} labels for dimension {n}", f"{where}/labels")
    table = StructureTable(n, entries)
    return LieAlgebra(table, labels) if kind == "lie" else AlgebraProduct(table, labels)


def matrix_to_json(M: LinearOperator) -> list:
    return [[format_rational(a) for a in row] for row in M.entries]


def matrix_from_json(rows, shape: tuple | None = None, where: str = "") -> LinearOperator:
    _validate(rows, MATRIX, where)
    lengths = {len(r) for r in rows}
    if len(lengths) > 1:
        raise SchemaError("rows of different lengths", where)
    cols = lengths.pop() if lengths else (shape[1] if shape else 0)
    M = LinearOperator(len(rows), cols, tuple(tuple(_rat(a, f"{where}/{i}/{j}") for j, a in enumerate(r))
                                              for i, r in enumerate(rows)))
    if shape is not None and (M.rows, M.cols) != tuple(shape):
        raise SchemaError(f"expected a {shape[0]}x{shape[1]} matrix, got {M.rows}x{M.cols}", where)
    return M


def operator_to_json(M: LinearOperator) -> dict:
    return {"kind": "operator", "rows": M.rows, "cols": M.cols, "matrix": matrix_to_json(M)}


def operator_from_json(data: Mapping, where: str = "") -> LinearOperator:
    _validate(data, OPERATOR_SCHEMA, where)
    shape = (data["rows"], data["cols"]) if "rows" in data and "cols" in data else None
    return matrix_from_json(data["matrix"], shape, f"{where}/matrix")


# --------------------------------------------------------------------------
# modules and r-matrices


def representation_to_json(rep: Representation) -> dict:
    return {
        "kind": "representation",
        "algebra": algebra_to_json(rep.algebra),
        "module_dim": rep.module_dim,
        "maps": [matrix_to_json(M) for M in rep.maps],
    }


def representation_from_json(data: Mapping, where: str = "") -> Representation:
    _validate(data, REPRESENTATION_SCHEMA, where)
    L = algebra_from_json(data["algebra"], "lie", f"{where}/algebra")
    m = data["module_dim"]
    if len(data["maps"]) != L.dim:
        raise SchemaError(f"{len(data['maps'])} action matrices for an algebra of dimension {L.dim}", f"{where}/maps")
    maps = tuple(matrix_from_json(M, (m, m), f"{where}/maps/{i}") for i, M in enumerate(data["maps"]))
    return Representation(L, m, maps)


def rmatrix_to_json(T: RMatrix) -> dict:
    out = representation_to_json(T.rep)
    out["kind"] = "rmatrix"
    out["T"] = matrix_to_json(T.matrix)
    return out


def rmatrix_from_json(data: Mapping, where: str = "") -> RMatrix:
    _validate(data, RMATRIX_SCHEMA, where)
    rep = representation_from_json({k: v for k, v in data.items() if k != "T"}, where)
    return RMatrix(rep, matrix_from_json(data["T"], (rep.dim, rep.module_dim), f"{where}/T"))


# --------------------------------------------------------------------------
# extension data


def _pairs_to_json(values: Mapping) -> list:
    return [{"i": i + 1, "j": j + 1, "v": [format_rational(a) for a in v]} for (i, j), v in sorted(values.items())]


def _pairs_from_json(items, b_dim: int, a_dim: int, where: str) -> dict:
    out = {}
    for t, e in enumerate(items):
        loc = f"{where}/{t}"
        key = (_index(e["i"], b_dim, loc + "/i"), _index(e["j"], b_dim, loc + "/j"))
        if len(e["v"]) != a_dim:
            raise SchemaError(f"vector of length {len(e['v'])}, expected {a_dim}", loc + "/v")
        if key in out:
            raise SchemaError(f"duplicate pair {key[0] + 1},{key[1] + 1}", loc)
        out[key] = tuple(_rat(a, f"{loc}/v/{s}") for s, a in enumerate(e["v"]))
    return out


def cocycle_to_json(Om: Cocycle) -> dict:
    return {"b_dim": Om.b_dim, "a_dim": Om.a_dim, "values": _pairs_to_json(Om.values)}


def cocycle_from_json(data: Mapping, where: str = "") -> Cocycle:
    _validate(data, COCYCLE_SCHEMA, where)
    values = _pairs_from_json(data["values"], data["b_dim"], data["a_dim"], f"{where}/values")
    try:
        return Cocycle(data["b_dim"], data["a_dim"], values)
    except ValueError as err:
        raise SchemaError(str(err), f"{where}/values") from None


def liftdata_to_json(d: LiftData) -> dict:
    return {
        "kind": "liftdata",
        "a_product": algebra_to_json(d.a_product),
        "b_product": algebra_to_json(d.b_product),
        "phi": representation_to_json(d.phi),
        "Omega": cocycle_to_json(d.Omega),
        "omega": _pairs_to_json(d.omega),
        "phi1": [matrix_to_json(M) for M in d.phi1],
        "phi2": [matrix_to_json(M) for M in d.phi2],
    }


def liftdata_from_json(data: Mapping, where: str = "") -> LiftData:
    _validate(data, LIFTDATA_SCHEMA, where)
    ap = algebra_from_json(data["a_product"], "product", f"{where}/a_product")
    bp = algebra_from_json(data["b_product"], "product", f"{where}/b_product")
    phi = representation_from_json(data["phi"], f"{where}/phi")
    Om = cocycle_from_json(data["Omega"], f"{where}/Omega")
    m, n = ap.dim, bp.dim
    omega = _pairs_from_json(data["omega"], n, m, f"{where}/omega")
    ops = {}
    for name in ("phi1", "phi2"):
        if len(data[name]) != n:
            raise SchemaError(f"{name} needs {n} matrices", f"{where}/{name}")
        ops[name] = tuple(matrix_from_json(M, (m, m), f"{where}/{name}/{i}") for i, M in enumerate(data[name]))
    return LiftData(ap, bp, phi, Om, omega, ops["phi1"], ops["phi2"])


# --------------------------------------------------------------------------
# polynomials, reports, outcomes


def poly_to_json(p: MultiPoly) -> list:
    """Sparse terms with named variables: ``[{"monomial": {name: exp}, "c": "p/q"}]``."""
    return [{"monomial": {p.variables[v]: e for v, e in m}, "c": format_rational(c)} for m, c in p.sorted_terms()]


def poly_from_json(terms, variables: tuple, where: str = "") -> MultiPoly:
    index = {name: i for i, name in enumerate(variables)}
    out = {}
    for t, term in enumerate(terms):
        try:
            m = tuple(sorted((index[name], int(e)) for name, e in term["monomial"].items() if int(e)))
        except KeyError as err:
            raise SchemaError(f"unknown variable {err}", f"{where}/{t}/monomial") from None
        out[m] = out.get(m, 0) + _rat(term["c"], f"{where}/{t}/c")
    return MultiPoly(variables, out)


def polysystem_to_json(sys: PolySystem, sparse: bool = False) -> dict:
    if not sparse:
        return sys.to_json()
    return {"variables": list(sys.variables),
            "polys": [{"tag": _tag(tag), "terms": poly_to_json(p)} for p, tag in zip(sys.polys, sys.provenance)]}


def polysystem_from_json(data: Mapping, where: str = "") -> PolySystem:
    variables = tuple(data["variables"])
    polys = data["polys"]
    if polys and polys[0]["terms"] and "monomial" in polys[0]["terms"][0]:
        sys = PolySystem(variables)
        for t, entry in enumerate(polys):
            sys.add(poly_from_json(entry["terms"], variables, f"{where}/polys/{t}/terms"),
                    _untag(entry.get("tag")))
        return sys
    return PolySystem.from_json(data)


def _tag(tag):
    if isinstance(tag, tuple):
        return [_tag(t) for t in tag]
    return tag


def _untag(tag):
    if isinstance(tag, list):
        return tuple(_untag(t) for t in tag)
    return tag


def report_to_json(report: CheckReport) -> dict:
    return {
        "passed": report.passed,
        "violations": [{"identity": v.identity, "indices": [i + 1 for i in v.indices],
                        "residual": [format_rational(a) for a in v.residual]} for v in report.violations],
        "notes": list(report.notes),
    }


def report_from_json(data: Mapping) -> CheckReport:
    rep = CheckReport(notes=list(data.get("notes", [])))
    for v in data.get("violations", []):
        rep.violations.append(Violation(v["identity"], tuple(i - 1 for i in v["indices"]),
                                        tuple(to_fraction(a) for a in v["residual"])))
    return rep


def certificate_to_json(cert: Mapping | None, variables: tuple | None = None) -> dict | None:
    if cert is None:
        return None
    if cert["kind"] == "linear_infeasible":
        out = {"kind": "linear_infeasible", "constant": format_rational(cert["constant"]), "round": cert["round"]}
        if "cofactors" in cert:
            out["cofactors"] = [{"index": i + 1, "tag": _tag(cert.get("tags", {}).get(i)), "q": poly_to_json(q)}
                                for i, q in sorted(cert["cofactors"].items())]
        return out
    if cert["kind"] == "groebner_unit":
        return {"kind": "groebner_unit", "residual": polysystem_to_json(cert["residual"], sparse=True)}
    raise ValueError(f"unknown certificate kind {cert['kind']!r}")


def certificate_from_json(data: Mapping | None, variables: tuple) -> dict | None:
    if data is None:
        return None
    if data["kind"] == "linear_infeasible":
        out = {"kind": "linear_infeasible", "constant": to_fraction(data["constant"]), "round": data["round"]}
        if "cofactors" in data:
            out["cofactors"] = {c["index"] - 1: poly_from_json(c["q"], variables, "cofactors")
                                for c in data["cofactors"]}
        return out
    if data["kind"] == "groebner_unit":
        return {"kind": "groebner_unit", "residual": polysystem_from_json(data["residual"])}
    raise SchemaError(f"unknown certificate kind {data['kind']!r}", "/certificate/kind")


def outcome_to_json(out) -> dict:
    """A SolveOutcome; ``stats`` holds timings and is the only unstable part."""
    return {
        "verdict": out.verdict,
        "mode": out.mode,
        "witness": algebra_to_json(out.witness) if out.witness is not None else None,
        "certificate": certificate_to_json(out.certificate),
        "residual": polysystem_to_json(out.residual, sparse=True) if out.residual is not None else None,
        "reason": out.reason,
        "stats": _jsonable(out.stats),
    }


def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    try:
        return format_rational(to_fraction(x))
    except (TypeError, ValueError):
        return str(x)


# --------------------------------------------------------------------------
# generic dispatch


def to_json(obj) -> dict:
    from .existence import ParametricLieAlgebra

    if isinstance(obj, (LieAlgebra, AlgebraProduct)):
        return algebra_to_json(obj)
    if isinstance(obj, RMatrix):
        return rmatrix_to_json(obj)
    if isinstance(obj, Representation):
        return representation_to_json(obj)
    if isinstance(obj, LiftData):
        return liftdata_to_json(obj)
    if isinstance(obj, Cocycle):
        out = cocycle_to_json(obj)
        out["kind"] = "cocycle"
        return out
    if isinstance(obj, LinearOperator):
        return operator_to_json(obj)
    if isinstance(obj, ParametricLieAlgebra):
        return {"kind": "parametric_lie", "dim": obj.dim, "params": list(obj.params),
                "entries": [{"i": i + 1, "j": j + 1, "k": k + 1, "poly": poly_to_json(p)}
                            for (i, j), row in sorted(obj.brackets.items()) for k, p in sorted(row.items()) if p]}
    if isinstance(obj, CheckReport):
        return report_to_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def detect_kind(data: Mapping) -> str:
    if not isinstance(data, Mapping):
        raise SchemaError("expected a JSON object", "/")
    if "kind" in data:
        return data["kind"]
    if "a_product" in data:
        return "liftdata"
    if "T" in data:
        return "rmatrix"
    if "module_dim" in data:
        return "representation"
    if "b_dim" in data:
        return "cocycle"
    if "matrix" in data:
        return "operator"
    if "entries" in data:
        return "product"
    raise SchemaError("cannot tell what kind of object this is", "/")


def from_json(data: Mapping, kind: str | None = None):
    from .existence import ParametricLieAlgebra

    kind = kind or detect_kind(data)
    try:
        if kind in ("lie", "product"):
            return algebra_from_json(data, kind)
        if kind == "operator":
            return operator_from_json(data)
        if kind == "representation":
            return representation_from_json(data)
        if kind == "rmatrix":
            return rmatrix_from_json(data)
        if kind == "cocycle":
            return cocycle_from_json(data)
        if kind == "liftdata":
            return liftdata_from_json(data)
        if kind == "parametric_lie":
            params = tuple(data["params"])
            br: dict = {}
            for t, e in enumerate(data["entries"]):
                i, j, k = e["i"] - 1, e["j"] - 1, e["k"] - 1
                if i >= j:
                    raise SchemaError("parametric brackets are stored with i < j", f"/entries/{t}")
                br.setdefault((i, j), {})[k] = poly_from_json(e["poly"], params, f"entries/{t}/poly")
            return ParametricLieAlgebra(data["dim"], params, br)
    except NovikovError as err:
        if isinstance(err, SchemaError):
            raise
        raise SchemaError(f"{type(err).__name__}: {err}", "/") from None
    raise SchemaError(f"unknown kind {kind!r}", "/kind")


def dumps(data: Any) -> str:
    """Canonical text: fixed key order as built, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def digest(data: Any) -> str:
    """sha256 of the canonical compact form with sorted keys."""
    text = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
