"""Command-line interface: ``pickforge {eval,verify,moments,classify,invert}``.

Every option can also be set through an environment variable with the
``PICKFORGE_`` prefix (``PICKFORGE_FORMAT``, ``PICKFORGE_TOL``,
``PICKFORGE_SEED``, ``PICKFORGE_WORKERS``); command-line flags win.

Exit codes: 0 success / all rows pass, 1 identity failure or failing verdict,
2 configuration error, 3 precondition failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from . import hyperbolic, levy, specfun, subordinator, verify
from .errors import (DivergentMoment, DivergentTransform, DomainError, PickforgeError,
                     RegimePreconditionFailed, UnknownFunction)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_PRECONDITION = 0, 1, 2, 3
COMMANDS = ("eval", "verify", "moments", "classify", "invert")
ENV_PREFIX = "PICKFORGE_"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_spec: dict = field(default_factory=dict)
    output_format: str = "json"
    tol: Optional[float] = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.output_format!r}")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tol}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")


# ---------------------------------------------------------------------------
# serialization

def _jsonable(v: Any) -> Any:
    if isinstance(v, complex):
        return {"re": _jsonable(v.real), "im": _jsonable(v.imag)}
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, complex):
        return json.dumps({"re": float(format(v.real, ".17g")),
                           "im": float(format(v.imag, ".17g"))})
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(_jsonable(v), sort_keys=True)
    return str(v)


def render(table: list, columns: list, fmt: str, meta: Optional[dict] = None) -> str:
    """Render rows (dicts) as JSON or CSV with a fixed column order."""
    if fmt == "json":
        doc = dict(meta or {})
        doc["rows"] = [{c: _jsonable(r.get(c)) for c in columns} for r in table]
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in table:
        w.writerow([_csv_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _parse_number(text):
    if isinstance(text, (int, float)):
        return float(text)
    if isinstance(text, dict):
        if set(text) != {"re", "im"}:
            raise ConfigError(f"complex values need exactly 're' and 'im', got {sorted(text)}")
        return complex(float(text["re"]), float(text["im"]))
    s = str(text).strip().replace("i", "j")
    try:
        return float(s)
    except ValueError:
        try:
            return complex(s)
        except ValueError:
            raise ConfigError(f"not a number: {text!r}") from None


def _parse_params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        if "=" not in item:
            raise ConfigError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = float(v)
        except ValueError:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# function table for `eval`

def _need(params, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise ConfigError(f"missing parameter(s) {missing}")


def _reject_extra(params, allowed):
    extra = set(params) - set(allowed)
    if extra:
        raise ConfigError(f"unknown parameter(s) {sorted(extra)}")


def _evaluator(name: str, params: dict):
    """Return ``x -> value`` for a cataloged function."""
    if name in specfun.registered():
        if name in ("hurwitz_zeta", "polylog"):
            _reject_extra(params, ("s",))
            _need(params, "s")
            return lambda x: specfun.special_value(name, params["s"], x).value
        _reject_extra(params, ())
        if name == "catalan":
            return lambda x: specfun.special_value(name).value
        return lambda x: specfun.special_value(name, x).value
    if name in ("voiculescu", "fourier_rho", "fourier_rho_integral", "rho_density", "charfn",
                "pick"):
        _reject_extra(params, ("model",))
        _need(params, "model")
        m = hyperbolic.model(str(params["model"]))
        fn = {"voiculescu": m.voiculescu, "fourier_rho": m.fourier_closed,
              "fourier_rho_integral": m.fourier_integral, "rho_density": m.rho_density,
              "charfn": m.charfn}.get(name)
        return fn if fn is not None else m.pick()
    if name == "F_theta":
        _reject_extra(params, ("theta",))
        _need(params, "theta")
        return levy.stable_pick(params["theta"])
    if name == "theta_transform":
        _reject_extra(params, ("theta", "b"))
        _need(params, "theta")
        F, _ = levy.theta_transform(params.get("b", 0.0), levy.catalog("stable", theta=params["theta"]))
        return F
    if name == "levy_exponent":
        _reject_extra(params, ("theta", "gamma"))
        if "theta" in params:
            E = levy.stable_exponent(params["theta"])
        else:
            _need(params, "gamma")
            E = levy.gaussian_exponent(params["gamma"])
        return lambda lam: levy.eval_levy_exponent(E, lam)
    if name == "bernstein_stable":
        _reject_extra(params, ("alpha",))
        _need(params, "alpha")
        T = levy.stable_bernstein(params["alpha"])
        return lambda lam: levy.eval_bernstein(T, lam)
    if name in levy.CATALOG_NAMES:
        return levy.catalog(name, **params)
    if name in ("negative_moment", "inverse_exponent"):
        spec = _spec_from_params(params, extra=("p",) if name == "negative_moment" else ())
        if name == "inverse_exponent":
            return spec.psi
        _need(params, "p")
        p = float(params["p"])
        return lambda t: subordinator.negative_moment(spec, subordinator.MomentQuery(p, t))
    raise UnknownFunction(f"unknown function {name!r}")


EVAL_NAMES = tuple(specfun.registered()) + (
    "voiculescu", "fourier_rho", "fourier_rho_integral", "rho_density", "charfn", "pick",
    "F_theta", "theta_transform", "levy_exponent", "bernstein_stable") + levy.CATALOG_NAMES + (
    "negative_moment", "inverse_exponent")


def _spec_from_params(params: dict, extra=()) -> subordinator.SubordinatorSpec:
    """``phi`` is either a full ``{"name", "params"}`` mapping or a catalog
    name with its parameters given alongside (``alpha`` for ``stable``)."""
    phi = params.get("phi")
    if phi is None:
        raise ConfigError("missing 'phi' (subordinator spec)")
    if isinstance(phi, dict):
        _reject_extra(params, ("phi",) + tuple(extra))
        doc = {"phi": phi}
    else:
        inner = {k: v for k, v in params.items() if k not in ("phi",) + tuple(extra)}
        doc = {"phi": {"name": str(phi), "params": inner}}
    try:
        return subordinator.spec_from_dict(doc)
    except KeyError as exc:
        if isinstance(exc, UnknownFunction):
            raise
        raise ConfigError(f"missing subordinator parameter {exc}") from None
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands

def _input_doc(args) -> dict:
    if args.input is None:
        return {}
    try:
        with open(args.input) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read --input: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("--input must hold a JSON object")
    return doc


def _merge(doc: dict, allowed: tuple, **cli) -> dict:
    extra = set(doc) - set(allowed)
    if extra:
        raise ConfigError(f"unknown input key(s) {sorted(extra)}")
    out = dict(doc)
    for k, v in cli.items():
        if v not in (None, [], {}):
            out[k] = v
    return out


def cmd_eval(cfg: RunConfig, out) -> int:
    doc = cfg.input_spec
    name = doc.get("function")
    if not name:
        raise ConfigError("eval needs a function name")
    params = dict(doc.get("params", {}))
    points = [_parse_number(x) for x in doc.get("points", [])]
    fn = _evaluator(name, params)
    if not points:
        if name != "catalan":
            raise ConfigError("eval needs at least one point (--at)")
        points = [math.nan]
    rows = []
    for x in points:
        try:
            val = fn(x)
        except (DomainError, DivergentMoment, DivergentTransform) as exc:
            out.write(render([{"function": name, "point": x, "error": type(exc).__name__,
                               "message": str(exc)}],
                             ["function", "point", "error", "message"], cfg.output_format))
            return EXIT_PRECONDITION
        val = complex(val) if isinstance(val, complex) else float(val)
        rows.append({"function": name, "point": x, "value": val})
    out.write(render(rows, ["function", "point", "value"], cfg.output_format,
                     {"function": name, "params": params}))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    suite = cfg.input_spec.get("suite", "all")
    if suite not in verify.SUITES + ("all",):
        raise ConfigError(f"unknown suite {suite!r}")
    rows = verify.run_suite(suite, tol=cfg.tol, seed=cfg.seed, workers=cfg.workers)
    table = [{"identity_tag": r.identity_tag, "s_or_w_or_t": r.s_or_w_or_t, "lhs": r.lhs,
              "rhs": r.rhs, "abs_err": r.abs_err, "pass": r.passed, "tolerance": r.tolerance}
             for r in rows]
    ok = all(r.passed for r in rows)
    meta = {"suite": suite, "seed": cfg.seed, "passed": ok,
            "failures": sum(not r.passed for r in rows), "rows_total": len(rows)}
    out.write(render(table, list(verify.ReportRow.FIELDS), cfg.output_format, meta))
    return EXIT_OK if ok else EXIT_FAIL


def _spec_of(doc) -> subordinator.SubordinatorSpec:
    if "phi" not in doc:
        raise ConfigError("missing 'phi' (subordinator spec)")
    return _spec_from_params({"phi": doc["phi"], **doc.get("params", {})})


def cmd_moments(cfg: RunConfig, out) -> int:
    doc = cfg.input_spec
    spec = _spec_of(doc)
    ps = [float(p) for p in doc.get("p", [1.0])]
    ts = [float(t) for t in doc.get("t", [0.5, 1.0, 2.0])]
    method = doc.get("method", "quadrature")
    if method not in ("quadrature", "closed"):
        raise ConfigError(f"unknown method {method!r}")
    rows, status = [], EXIT_OK
    for p in ps:
        for t in ts:
            row = {"p": p, "t": t, "value": None, "closed": None, "note": ""}
            try:
                row["value"] = subordinator.negative_moment(spec, subordinator.MomentQuery(p, t),
                                                            method)
                if subordinator.has_closed_moment(spec):
                    row["closed"] = subordinator.closed_moment(spec, p, t)
            except (DivergentMoment, DomainError) as exc:
                row["note"] = f"{type(exc).__name__}: {exc}"
                status = EXIT_PRECONDITION
            rows.append(row)
    out.write(render(rows, ["p", "t", "value", "closed", "note"], cfg.output_format,
                     {"phi": spec.to_dict()["phi"], "method": method}))
    return status


def cmd_classify(cfg: RunConfig, out) -> int:
    doc = cfg.input_spec
    spec = _spec_of(doc)
    if "p" not in doc:
        raise ConfigError("classify needs p")
    p = float(doc["p"])
    try:
        rep = subordinator.classify_inverse_time(spec, p)
    except RegimePreconditionFailed as exc:
        out.write(render([], ["t", "tE_direct", "tE_representation", "rel_err"],
                         cfg.output_format,
                         {"verdict": "precondition_failed", "condition": exc.condition,
                          "message": str(exc)}))
        return EXIT_PRECONDITION
    residuals = []
    if rep.verdict != "fail" or not rep.note:
        for t in subordinator.DEFAULT_TIMES:
            direct = t * subordinator.negative_moment(spec, subordinator.MomentQuery(p, t))
            rep_val = subordinator.representation_value(spec, p, t, "laplace_te")
            residuals.append({"t": t, "tE_direct": direct, "tE_representation": rep_val,
                              "rel_err": abs(direct - rep_val) / abs(direct)})

    def tag(x):
        return None if x is None else {"class": x.klass, "certificate": x.certificate,
                                       "verdict": x.verdict}

    meta = {"phi": spec.to_dict()["phi"], "p": p, "verdict": rep.verdict,
            "certificate": rep.certificate, "st_tE": tag(rep.st), "cbf_t2E": tag(rep.cbf),
            "screen_st_tE": tag(rep.numeric_st), "screen_cbf_t2E": tag(rep.numeric_cbf),
            "note": rep.note}
    out.write(render(residuals, ["t", "tE_direct", "tE_representation", "rel_err"],
                     cfg.output_format, meta))
    return EXIT_OK if rep.verdict == "pass" else EXIT_FAIL


def cmd_invert(cfg: RunConfig, out) -> int:
    doc = cfg.input_spec
    spec = _spec_of(doc)
    xs = [float(x) for x in doc.get("points", [])]
    if not xs:
        raise ConfigError("invert needs at least one point (--at)")
    rows = []
    for x in xs:
        try:
            lam = spec.psi(x)
        except DomainError as exc:
            out.write(render([{"x": x, "error": type(exc).__name__, "message": str(exc)}],
                             ["x", "error", "message"], cfg.output_format))
            return EXIT_PRECONDITION
        rows.append({"x": x, "psi": lam, "residual": spec.phi(lam) - x})
    out.write(render(rows, ["x", "psi", "residual"], cfg.output_format,
                     {"phi": spec.to_dict()["phi"]}))
    return EXIT_OK


_COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "moments": cmd_moments,
             "classify": cmd_classify, "invert": cmd_invert}

_ALLOWED = {
    "eval": ("function", "params", "points"),
    "verify": ("suite",),
    "moments": ("phi", "params", "p", "t", "method"),
    "classify": ("phi", "params", "p"),
    "invert": ("phi", "params", "points"),
}


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file with the command's input document")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--tol", type=float, default=None, help="override tolerances")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=None)

    parser = argparse.ArgumentParser(prog="pickforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a cataloged function")
    p.add_argument("function", nargs="?")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--at", action="append", default=[], metavar="X",
                   help="evaluation point (complex as 1+2j)")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", nargs="?", choices=verify.SUITES + ("all",))

    for name, hlp in (("moments", "table of E[xi_t^-p]"),
                      ("classify", "inverse-time classification for p >= 1"),
                      ("invert", "inverse Laplace exponent Psi")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--phi", help="subordinator: stable, lambert, trivial, ratio_log")
        p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
        if name == "moments":
            p.add_argument("--p", type=float, action="append", default=[])
            p.add_argument("--t", type=float, action="append", default=[])
            p.add_argument("--method", choices=("quadrature", "closed"))
        elif name == "classify":
            p.add_argument("--p", type=float)
        else:
            p.add_argument("--at", type=float, action="append", default=[])
    return parser


def _env(name, cast):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return None
    try:
        return cast(raw)
    except ValueError:
        raise ConfigError(f"bad {ENV_PREFIX}{name}={raw!r}") from None


def config_from_args(args) -> RunConfig:
    doc = _input_doc(args)
    cmd = args.command
    if cmd == "eval":
        doc = _merge(doc, _ALLOWED[cmd], function=args.function)
        params = dict(doc.get("params", {}))
        params.update(_parse_params(args.param))
        doc["params"] = params
        if args.at:
            doc["points"] = args.at
    elif cmd == "verify":
        doc = _merge(doc, _ALLOWED[cmd], suite=args.suite)
    else:
        doc = _merge(doc, _ALLOWED[cmd], phi=args.phi)
        params = dict(doc.get("params", {}))
        params.update(_parse_params(args.param))
        doc["params"] = params
        if cmd == "moments":
            doc = _merge(doc, _ALLOWED[cmd], p=args.p, t=args.t, method=args.method)
        elif cmd == "classify":
            doc = _merge(doc, _ALLOWED[cmd], p=args.p)
        else:
            doc = _merge(doc, _ALLOWED[cmd], points=args.at)
    fmt = args.format or _env("FORMAT", str) or "json"
    tol = args.tol if args.tol is not None else _env("TOL", float)
    seed = args.seed if args.seed is not None else (_env("SEED", int) or 0)
    workers = args.workers if args.workers is not None else (_env("WORKERS", int) or 1)
    return RunConfig(cmd, doc, fmt, tol, seed, workers)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return _COMMANDS[cfg.command](cfg, out)
    except (ConfigError, UnknownFunction) as exc:
        print(f"pickforge: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RegimePreconditionFailed as exc:
        print(f"pickforge: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (DomainError, DivergentMoment) as exc:
        print(f"pickforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PickforgeError as exc:
        print(f"pickforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"pickforge: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
