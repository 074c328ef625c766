"""Command-line front end: verify, construct, solve and catalog.

Inputs are JSON files or catalog references ``id`` / ``id:k=v,k=v``.  Every
run produces a RunReport (tool, version, command, input digests, results,
exit code, timing); ``--json`` prints it, ``--report PATH`` saves it and
``--out PATH`` saves the artifact of the command.

Exit codes: 0 ok / exists, 1 check failed / hypothesis violated /
not_exists, 2 unknown, 3 input or schema error.  With several inputs the
largest code wins.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from . import __version__, algebra, catalog, existence, extensions, rmatrix, serialize
from .algebra import AlgebraProduct, LieAlgebra
from .errors import (
    BNotAbelian,
    DimensionMismatch,
    HypothesisViolated,
    JacobiFailure,
    MissingParam,
    NotInvertible,
    NotModuleHomomorphism,
    NotTwoStepNilpotent,
    NovikovError,
    NovikovObstruction,
    PreconditionFailed,
    SchemaError,
    UnknownId,
)
from .existence import ParametricLieAlgebra
from .extensions import Cocycle, LiftData
from .linalg import LinearOperator, to_fraction
from .rmatrix import Representation, RMatrix

log = logging.getLogger("novikov")

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

VERIFY_CHECKS = ("jacobi", "lsa", "novikov", "cybe", "cocycle", "lift-lsa", "lift-novikov", "derivation")
CONSTRUCTIONS = ("half-bracket", "block", "derivation", "rmatrix", "semidirect", "iso-lift", "lift")

# construction hypotheses that fail on valid input: exit 1
HYPOTHESIS_ERRORS = (HypothesisViolated, PreconditionFailed, NotTwoStepNilpotent, NovikovObstruction,
                     NotInvertible, BNotAbelian, NotModuleHomomorphism, JacobiFailure)
# malformed or unusable input: exit 3
INPUT_ERRORS = (SchemaError, UnknownId, MissingParam, DimensionMismatch, OSError, ValueError, KeyError)


class CheckFailed(NovikovError):
    """Re-verification of a constructed object failed."""

    def __init__(self, check, report):
        self.check = check
        self.report = report
        super().__init__(f"constructed object fails {check}")


# --------------------------------------------------------------------------
# inputs


@dataclass
class Loaded:
    ref: str
    source: str  # "file" | "catalog" | "inline"
    payload: Any
    data: dict
    id: str | None = None
    params: dict | None = None

    @property
    def kind(self) -> str:
        return serialize.detect_kind(self.data)

    def describe(self) -> dict:
        out = {"ref": self.ref, "source": self.source}
        if self.id is not None:
            out["id"] = self.id
            out["params"] = {k: _param_text(v) for k, v in (self.params or {}).items()}
        out["kind"] = self.kind
        out["digest"] = serialize.digest(self.data)
        return out


def _param_text(v) -> str | int:
    return v if isinstance(v, int) else serialize.format_rational(to_fraction(v))


def parse_params(items) -> dict:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            if "=" not in part:
                raise SchemaError(f"parameter {part!r} is not of the form name=value", "params")
            k, v = part.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def _read_json(path: str) -> Any:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"invalid JSON: {err.msg}", f"{path}:{err.lineno}:{err.colno}") from None


def load(ref: str, params: dict | None = None) -> Loaded:
    """A JSON file (or ``-`` for stdin) if it exists, otherwise a catalog reference."""
    if ref == "-" or Path(ref).is_file():
        data = _read_json(ref)
        return Loaded(ref, "file", serialize.from_json(data), data)
    cid, _, inline = ref.partition(":")
    merged = dict(params or {})
    merged.update(parse_params([inline]))
    entry = catalog.get(cid, merged)
    return Loaded(ref, "catalog", entry.payload, serialize.to_json(entry.payload), cid, entry.params)


def load_json_arg(text: str) -> Any:
    """Option values that are either a file path or inline JSON."""
    if Path(text).is_file():
        return _read_json(text)
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise SchemaError(f"{text!r} is neither a file nor inline JSON", "option") from None


def load_matrix(text: str) -> LinearOperator:
    data = load_json_arg(text)
    if isinstance(data, dict):
        return serialize.operator_from_json(data)
    return serialize.matrix_from_json(data)


def _expect(obj: Loaded, *types, what: str):
    if not isinstance(obj.payload, types):
        raise SchemaError(f"{obj.ref} is a {obj.kind}, expected {what}", "kind")
    return obj.payload


def _as_lie(obj: Loaded) -> LieAlgebra:
    if isinstance(obj.payload, AlgebraProduct) and obj.source == "file" and "kind" not in obj.data:
        # an untagged table: read it as a bracket
        return LieAlgebra(obj.payload.table, obj.payload.labels)
    return _expect(obj, LieAlgebra, what="a Lie algebra")


def _as_rep(obj: Loaded) -> Representation:
    if isinstance(obj.payload, LieAlgebra):
        return rmatrix.adjoint_representation(obj.payload)
    if isinstance(obj.payload, RMatrix):
        return obj.payload.rep
    return _expect(obj, Representation, what="a representation")


def _option_ref(args, name: str, **kw) -> Loaded:
    value = getattr(args, name)
    if value is None:
        raise SchemaError(f"--{name.replace('_', '-')} is required here", name)
    return load(value, **kw)


def _indices(text: str, n: int) -> list:
    out = []
    for part in text.split(","):
        i = int(part)
        if not 1 <= i <= n:
            raise SchemaError(f"index {i} outside 1..{n}", "indices")
        out.append(i - 1)
    return out


# --------------------------------------------------------------------------
# results


def _error(err: Exception) -> dict:
    out = {"type": type(err).__name__, "message": str(err)}
    if isinstance(err, HypothesisViolated):
        out["hypothesis"] = err.condition
        out["witness"] = serialize._jsonable(err.witness)
    elif isinstance(err, (PreconditionFailed, CheckFailed)):
        out["hypothesis"] = err.check
        if err.report is not None:
            out["report"] = serialize.report_to_json(err.report)
    elif isinstance(err, (NovikovObstruction, NotModuleHomomorphism)):
        out["witness"] = serialize._jsonable(err.witness)
    elif isinstance(err, NotInvertible):
        out["det"] = serialize.format_rational(err.det)
    elif isinstance(err, SchemaError):
        out["location"] = err.location
    return out


def _pop_seconds(obj) -> float:
    """Remove every ``seconds`` entry from nested stats, returning the top one."""
    top = 0.0
    if isinstance(obj, dict):
        if "seconds" in obj:
            top = obj.pop("seconds")
        for v in obj.values():
            _pop_seconds(v)
    return top


def _run(items: list, fn: Callable, workers: int) -> list:
    """Apply ``fn`` to every item; results keep input order for any worker count."""
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _guard(fn: Callable) -> Callable:
    """Turn exceptions into (exit code, result, artifact, seconds) tuples."""

    def wrapped(ref):
        t0 = time.perf_counter()
        try:
            code, result, artifact, inputs = fn(ref)
        except HYPOTHESIS_ERRORS + (CheckFailed,) as err:
            code, result, artifact, inputs = EXIT_FAIL, {"input": ref, "error": _error(err)}, None, []
        except INPUT_ERRORS as err:
            code, result, artifact, inputs = EXIT_INPUT, {"input": ref, "error": _error(err)}, None, []
        seconds = round(time.perf_counter() - t0, 3)
        log.info("%s: exit %d in %.3f s", ref, code, seconds)
        return code, result, artifact, inputs, seconds

    return wrapped


def _options(args) -> dict:
    keys = ("what", "construction", "mode", "strategy", "degree_cap", "pair_cap", "seed", "workers", "params")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _finish(args, subcommand: str, outcomes: list, t0: float, human: Callable) -> int:
    code = max((o[0] for o in outcomes), default=EXIT_OK)
    inputs = []
    for o in outcomes:
        for d in o[3]:
            if d not in inputs:
                inputs.append(d)
    report = {
        "tool": "novikov",
        "version": __version__,
        "command": {"argv": list(args.argv), "subcommand": subcommand, "options": _options(args)},
        "inputs": inputs,
        "results": [o[1] for o in outcomes],
        "exit_code": code,
        "timing": {"total_seconds": round(time.perf_counter() - t0, 3),
                   "per_input_seconds": [o[4] for o in outcomes]},
    }
    artifacts = [o[2] for o in outcomes]
    if args.out and any(a is not None for a in artifacts):
        payload = artifacts[0] if len(artifacts) == 1 else artifacts
        Path(args.out).write_text(serialize.dumps(payload))
    if args.report:
        Path(args.report).write_text(serialize.dumps(report))
    if args.json:
        sys.stdout.write(serialize.dumps(report))
    else:
        for o in outcomes:
            print(human(o[1]))
    return code


def _human_default(result: dict) -> str:
    if "error" in result:
        e = result["error"]
        return f"ERROR {result['input']}: {e['type']}: {e['message']}"
    return f"{'PASS' if result.get('passed') else 'FAIL'} {result['input']}"


# --------------------------------------------------------------------------
# verify


def _verify_one(args, ref: str):
    params = parse_params(args.params)
    obj = load(ref, params)
    inputs = [obj.describe()]
    what = args.what
    extra: dict = {}
    if what == "jacobi":
        report = algebra.check_jacobi(_as_lie(obj))
    elif what in ("lsa", "novikov"):
        P = _expect(obj, AlgebraProduct, what="a product")
        report = algebra.check_novikov(P) if what == "novikov" else algebra.check_left_symmetric(P)
        if args.lie:
            lie = load(args.lie, params)
            inputs.append(lie.describe())
            ok = algebra.is_compatible(P, _as_lie(lie))
            extra["compatible"] = ok
            if not ok:
                report.notes.append("commutator differs from the given bracket")
    elif what == "cybe":
        report = rmatrix.check_cybe(_expect(obj, RMatrix, what="an r-matrix"))
    elif what == "cocycle":
        if isinstance(obj.payload, LiftData):
            phi, Om = obj.payload.phi, obj.payload.Omega
        else:
            Om = _expect(obj, Cocycle, what="a cocycle or lift data")
            rep = _option_ref(args, "rep", params=params)
            inputs.append(rep.describe())
            phi = _as_rep(rep)
        report = extensions.check_cocycle(phi, Om)
    elif what in ("lift-lsa", "lift-novikov"):
        data = _expect(obj, LiftData, what="lift data")
        novikov = what == "lift-novikov"
        report = extensions.check_novikov_conditions(data) if novikov else extensions.check_lsa_conditions(data)
        P = extensions.lifted_product(data)
        direct = algebra.check_novikov(P) if novikov else algebra.check_left_symmetric(P)
        extra["direct_product_check"] = direct.passed
        extra["compatible"] = algebra.is_compatible(P, extensions.lifted_lie(data))
    elif what == "derivation":
        D = _expect(obj, LinearOperator, what="an operator")
        A = _option_ref(args, "algebra", params=params)
        inputs.append(A.describe())
        report = algebra.check_derivation(_expect(A, AlgebraProduct, what="a product"), D)
    else:  # pragma: no cover - argparse restricts choices
        raise SchemaError(f"unknown check {what!r}", "what")
    result = {"input": ref, "check": what, "passed": report.passed}
    result.update(extra)
    result["report"] = serialize.report_to_json(report)
    return (EXIT_OK if report.passed else EXIT_FAIL), result, result, inputs


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    outcomes = _run(args.inputs, _guard(lambda ref: _verify_one(args, ref)), args.workers)
    return _finish(args, "verify", outcomes, t0, _human_verify)


def _human_verify(result: dict) -> str:
    line = _human_default(result)
    if "error" not in result:
        line += f" {result['check']}"
        v = result["report"]["violations"]
        if v:
            line += f": {v[0]['identity']} at {tuple(v[0]['indices'])}, {len(v)} violation(s)"
    return line


# --------------------------------------------------------------------------
# construct


def _require(check: str, report) -> None:
    if not report.passed:
        raise CheckFailed(check, report)


def _require_compatible(P: AlgebraProduct, L: LieAlgebra) -> None:
    if not algebra.is_compatible(P, L):
        rep = algebra.CheckReport(notes=["commutator of the product differs from the bracket"])
        raise CheckFailed("compatible", rep)


def _construct_one(args, ref: str):
    params = parse_params(args.params)
    obj = load(ref, params)
    inputs = [obj.describe()]
    kind = args.construction
    novikov = args.mode == "novikov"
    info: dict = {}

    def more(name):
        o = _option_ref(args, name, params=params)
        inputs.append(o.describe())
        return o

    if kind == "half-bracket":
        L = _as_lie(obj)
        P = algebra.half_bracket(L)
        _require("novikov", algebra.check_novikov(P))
        _require_compatible(P, L)
    elif kind == "block":
        L = _as_lie(obj)
        if args.e_part is None or args.f_part is None:
            raise SchemaError("block needs --e-part and --f-part", "options")
        P = algebra.block_product(L, _indices(args.e_part, L.dim), _indices(args.f_part, L.dim))
        _require("novikov", algebra.check_novikov(P))
        _require_compatible(P, L)
    elif kind == "derivation":
        A = _expect(obj, AlgebraProduct, what="a commutative associative product")
        D = _expect(more("derivation"), LinearOperator, what="an operator")
        P = algebra.novikov_from_derivation(A, D)
        _require("novikov", algebra.check_novikov(P))
    elif kind == "rmatrix":
        if isinstance(obj.payload, RMatrix) and args.matrix is None:
            T = obj.payload
        else:
            if args.matrix is None:
                raise SchemaError("rmatrix needs --matrix unless the input is an r-matrix", "options")
            T = RMatrix(_as_rep(obj), load_matrix(args.matrix))
        P = rmatrix.induced_product(T)
        _require("lsa", algebra.check_left_symmetric(P))
        bracket = rmatrix.bracket_table(T)
        _require_compatible(P, bracket)
        info["novikov_condition"] = rmatrix.check_novikov_condition(T).passed
        info["bracket"] = serialize.algebra_to_json(bracket)
    elif kind in ("semidirect", "iso-lift", "lift"):
        if kind == "semidirect":
            phi = _as_rep(obj)
            bp = _expect(more("b_product"), AlgebraProduct, what="a product on b")
            data = extensions.semidirect_lift(phi, bp, novikov=novikov)
        elif kind == "iso-lift":
            phi = _as_rep(obj)
            Om = _expect(more("cocycle"), Cocycle, what="a cocycle")
            if args.e is None:
                raise SchemaError("iso-lift needs --e (1-based index or JSON vector)", "options")
            e = load_json_arg(args.e)
            if isinstance(e, int):
                if not 1 <= e <= phi.dim:
                    raise SchemaError(f"index {e} outside 1..{phi.dim}", "e")
                e = e - 1
            else:
                e = [serialize._rat(x, "e") for x in e]
            data = extensions.iso_lift(phi, Om, e)
            novikov = True
        else:
            data = _expect(obj, LiftData, what="lift data")
            conds = extensions.check_novikov_conditions(data) if novikov else extensions.check_lsa_conditions(data)
            _require("lift-novikov" if novikov else "lift-lsa", conds)
        P = extensions.lifted_product(data)
        _require("novikov" if novikov else "lsa",
                 algebra.check_novikov(P) if novikov else algebra.check_left_symmetric(P))
        _require_compatible(P, extensions.lifted_lie(data))
        info["liftdata"] = serialize.liftdata_to_json(data)
    else:  # pragma: no cover
        raise SchemaError(f"unknown construction {kind!r}", "construction")
    product = serialize.algebra_to_json(P)
    result = {"input": ref, "construction": kind, "verified": True, "product": product}
    result.update(info)
    return EXIT_OK, result, product, inputs


def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    outcomes = _run(args.inputs, _guard(lambda ref: _construct_one(args, ref)), args.workers)
    return _finish(args, "construct", outcomes, t0, _human_construct)


def _human_construct(result: dict) -> str:
    if "error" in result:
        e = result["error"]
        hyp = f" [{e['hypothesis']}]" if "hypothesis" in e else ""
        return f"ERROR {result['input']}: {e['type']}{hyp}: {e['message']}"
    n = sum(1 for _ in result["product"]["entries"])
    return f"OK {result['input']} {result['construction']}: verified product, {n} nonzero entries"


# --------------------------------------------------------------------------
# solve

SCOPE = {
    "exists": "verified rational witness",
    "not_exists": "no solution over any field extension of Q",
    "unknown": "undecided within the given caps",
}
VERDICT_EXIT = {"exists": EXIT_OK, "not_exists": EXIT_FAIL, "unknown": EXIT_UNKNOWN}


def _solve_one(args, ref: str):
    obj = load(ref, _solve_params(args))
    inputs = [obj.describe()]
    if isinstance(obj.payload, ParametricLieAlgebra):
        return _eliminate_one(args, ref, obj, inputs)
    L = _as_lie(obj)
    if args.export_system:
        path = Path(args.export_system)
        if len(args.inputs) > 1:
            path = path.with_name(f"{path.stem}.{args.inputs.index(ref)}{path.suffix}")
        path.write_text(serialize.dumps(existence.build_full_system(L, args.mode).to_json()))
    out = existence.decide(L, args.mode, args.strategy, degree_cap=args.degree_cap, pair_cap=args.pair_cap,
                           seed=args.seed)
    payload = serialize.outcome_to_json(out)
    _pop_seconds(payload["stats"])
    payload["scope"] = SCOPE[out.verdict]
    result = {"input": ref}
    result.update(payload)
    return VERDICT_EXIT[out.verdict], result, payload, inputs


def _eliminate_one(args, ref, obj, inputs):
    res = existence.parameter_conditions(obj.payload, args.mode, degree_cap=args.degree_cap,
                                         pair_cap=args.pair_cap)
    params = obj.payload.params
    offset = len(res.basis[0].variables) - len(params) if res.basis else 0
    conds = []
    for p in res.basis:
        names = p.variables[offset:] if offset else p.variables
        conds.append(serialize.poly_to_json(_restrict(p, offset, names)))
    payload = {"verdict": "conditions", "mode": args.mode, "params": list(params), "complete": res.complete,
               "conditions": conds, "text": [_restrict(p, offset, params).format() for p in res.basis],
               "scope": "necessary conditions on the parameters for the generic ansatz family"}
    result = {"input": ref}
    result.update(payload)
    return (EXIT_OK if res.complete else EXIT_UNKNOWN), result, payload, inputs


def _restrict(p, offset: int, names):
    """Re-express a polynomial in the trailing ``names`` variables only."""
    from .polynomial import MultiPoly

    if not offset:
        return p
    terms = {}
    for mono, c in p.terms.items():
        vec = p.exponent_vector(mono)
        if any(vec[:offset]):
            raise ValueError("condition still involves eliminated unknowns")
        terms[tuple((i, e) for i, e in enumerate(vec[offset:]) if e)] = c
    return MultiPoly(tuple(names), terms)


def _solve_params(args) -> dict:
    params = parse_params(args.params)
    if args.alpha is not None:
        params["alpha"] = args.alpha
    return params


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    outcomes = _run(args.inputs, _guard(lambda ref: _solve_one(args, ref)), args.workers)
    return _finish(args, "solve", outcomes, t0, _human_solve)


def _human_solve(result: dict) -> str:
    if "error" in result:
        e = result["error"]
        return f"ERROR {result['input']}: {e['type']}: {e['message']}"
    if result["verdict"] == "conditions":
        return f"CONDITIONS {result['input']}: " + "; ".join(f"{t} = 0" for t in result["text"])
    line = f"{result['verdict'].upper()} {result['input']} ({result['mode']}): {result['reason']}"
    if result["certificate"]:
        line += f" [{result['certificate']['kind']}]"
    return line


# --------------------------------------------------------------------------
# catalog


def cmd_catalog_list(args) -> int:
    rows = []
    for cid in catalog.ids():
        spec = catalog.REGISTRY[cid]
        rows.append({"id": cid, "params": list(spec.params), "anchor": spec.anchor})
    if args.json:
        sys.stdout.write(serialize.dumps(rows))
    else:
        for r in rows:
            ps = f"({', '.join(r['params'])})" if r["params"] else ""
            print(f"{r['id']}{ps}  {r['anchor']}")
    return EXIT_OK


def cmd_catalog_dump(args) -> int:
    try:
        entry = catalog.get(args.id, parse_params(args.params))
    except INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    text = serialize.dumps(serialize.to_json(entry.payload))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --------------------------------------------------------------------------
# entry point


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--param", dest="params", action="append", metavar="K=V",
                   help="catalog parameter(s), applied to every catalog reference")
    p.add_argument("--mode", choices=existence.MODES, default="novikov")
    p.add_argument("--workers", type=int, default=1, help="threads for independent inputs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the artifact (report, product or solve payload)")
    p.add_argument("--report", help="write the RunReport")
    p.add_argument("--json", action="store_true", help="print the RunReport as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="novikov", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check identities on JSON inputs or catalog entries")
    p.add_argument("what", choices=VERIFY_CHECKS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--lie", help="also check compatibility with this Lie algebra (lsa, novikov)")
    p.add_argument("--rep", help="representation for a bare cocycle (cocycle)")
    p.add_argument("--algebra", help="product the operator acts on (derivation)")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build and re-verify a product")
    p.add_argument("construction", choices=CONSTRUCTIONS)
    p.add_argument("inputs", nargs="+")
    p.add_argument("--e-part", help="block: 1-based indices of the first part, comma separated")
    p.add_argument("--f-part", help="block: 1-based indices of the second part")
    p.add_argument("--derivation", help="derivation: operator file or catalog reference")
    p.add_argument("--matrix", help="rmatrix: T as a file or inline JSON rows (n x m)")
    p.add_argument("--b-product", dest="b_product", help="semidirect: product on b")
    p.add_argument("--cocycle", help="iso-lift: the 2-cocycle Omega")
    p.add_argument("--e", help="iso-lift: 1-based index or JSON vector e with phi(e) invertible")
    _common(p)
    p.set_defaults(func=cmd_construct, mode="lsa")

    p = sub.add_parser("solve", help="decide existence of an LSA or Novikov structure")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--alpha", help="shorthand for --param alpha=VALUE")
    p.add_argument("--strategy", choices=existence.STRATEGIES, default="ansatz_first")
    p.add_argument("--degree-cap", type=int, default=existence.DEFAULT_DEGREE_CAP)
    p.add_argument("--pair-cap", type=int, default=existence.DEFAULT_PAIR_CAP)
    p.add_argument("--export-system", help="write the full polynomial system as JSON")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("catalog", help="list or dump catalog fixtures")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    q = csub.add_parser("list")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_catalog_list)
    q = csub.add_parser("dump")
    q.add_argument("--id", required=True)
    q.add_argument("--params", action="append", metavar="K=V")
    q.add_argument("--out")
    q.set_defaults(func=cmd_catalog_dump)
    return parser


def _setup_logging() -> None:
    level = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    name = os.environ.get("NOVIKOV_LOG", "quiet").lower()
    logging.basicConfig(level=level.get(name, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 2 on usage errors; usage errors are input errors here
        return EXIT_INPUT if err.code else EXIT_OK
    args.argv = argv
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
