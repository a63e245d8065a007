"""
Command-line front end.

    epcx verify|synthesize|check-associated|solve|cauchy-demo --config FILE
         [--out DIR] [--seed N] [--params ALPHA,BETA]

Configs are JSON, validated against a per-mode schema that rejects unknown
keys. Outputs are JSON (sorted keys) plus CSV for IVP time series, written to
``--out`` (default: the config's ``out`` entry, else the working directory).

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid config or violated
precondition, 3 file I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional

import jsonschema

from .algebra import AlgebraParams
from .calculus import Contour, OperatorCoeffs, cauchy_eval, derivative_via_contour, sontutschke_verdict
from .convergence import decreasing_to_floor
from .errors import CheckFailed, ConfigInvalid, EpcxError, NonFiniteState
from .grid import GridSpec
from .holo import HoloPoly, derive
from .ivp import IvpConfig, conical_diagnostic, manifest, solve, write_csv
from .rewrite import FREE, RealCoeffs, real_to_complex, scalar_from_json, synthesize
from .suites import FAIL, PRNG, SUITES, run_suites

MODES = ("verify", "synthesize", "check-associated", "solve", "cauchy-demo")

EXIT_OK, EXIT_CHECK, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

#: Floor below which successive Cauchy errors count as converged.
ROUNDOFF_FLOOR = 1e-13

# schemas

_NUM = {"type": "number"}
_PAIR = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_HOLO = {
    "oneOf": [
        _PAIR,
        {
            "type": "object",
            "properties": {"coeffs": {"type": "array", "items": _PAIR}},
            "required": ["coeffs"],
            "additionalProperties": False,
        },
    ]
}
_SCALAR = {
    "oneOf": [
        _NUM,
        {
            "type": "object",
            "properties": {"poly": {"type": "array", "items": {"type": "array", "items": _NUM}}},
            "required": ["poly"],
            "additionalProperties": False,
        },
    ]
}
_GRID = {
    "type": "object",
    "properties": {"x0": _NUM, "y0": _NUM, "nx": {"type": "integer"}, "ny": {"type": "integer"}, "h": _NUM},
    "required": ["x0", "y0", "nx", "ny", "h"],
    "additionalProperties": False,
}
_REAL = {
    "type": "object",
    "properties": {n: _SCALAR for n in RealCoeffs.names()},
    "additionalProperties": False,
}
_SYNTH = {
    "free": {"type": "object", "properties": {n: _SCALAR for n in FREE}, "additionalProperties": False},
    "A": _HOLO,
    "E": _HOLO,
    "G": _HOLO,
}
_DOMAIN = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "disk": {
                    "type": "object",
                    "properties": {"center": _PAIR, "radius": {"type": "number", "exclusiveMinimum": 0}},
                    "required": ["center", "radius"],
                    "additionalProperties": False,
                }
            },
            "required": ["disk"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "rect": {
                    "type": "object",
                    "properties": {"x0": _NUM, "y0": _NUM, "x1": _NUM, "y1": _NUM},
                    "required": ["x0", "y0", "x1", "y1"],
                    "additionalProperties": False,
                }
            },
            "required": ["rect"],
            "additionalProperties": False,
        },
    ]
}
_IVP = {
    "type": "object",
    "properties": {
        "domain": _DOMAIN,
        "h": {"type": "number", "exclusiveMinimum": 0},
        "grid": _GRID,
        "dt": {"type": "number", "exclusiveMinimum": 0},
        "t_end": {"type": "number", "exclusiveMinimum": 0},
        "exhaustion_levels": {"type": "integer", "minimum": 2},
        "method": {"enum": ["rk4", "series"]},
        "series_order": {"type": "integer", "minimum": 1},
        "cfl": {"type": "number", "exclusiveMinimum": 0},
        "collar": {"type": "integer", "minimum": 0},
    },
    "required": ["domain", "dt", "t_end"],
    "oneOf": [{"required": ["h"]}, {"required": ["grid"]}],
    "additionalProperties": False,
}
_COMMON = {
    "mode": {"enum": list(MODES)},
    "params": {
        "type": "object",
        "properties": {"alpha": _NUM, "beta": _NUM},
        "required": ["alpha", "beta"],
        "additionalProperties": False,
    },
    "seed": {"type": "integer", "minimum": 0},
    "out": {"type": "string"},
}
_MODE_PROPS = {
    "verify": {"suites": {"type": "array", "items": {"enum": [s[0] for s in SUITES]}}},
    "synthesize": {**_SYNTH, "grid": _GRID},
    "check-associated": {
        "coefficients": _REAL,
        "operator": {"type": "object", "properties": {n: _HOLO for n in "ABCDEFG"}, "additionalProperties": False},
        "grid": _GRID,
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "holo_tol": {"type": "number", "exclusiveMinimum": 0},
    },
    "solve": {
        "ivp": _IVP,
        "coefficients": _REAL,
        "synthesize": {"type": "object", "properties": _SYNTH, "additionalProperties": False},
        "w0": _HOLO,
    },
    "cauchy-demo": {
        "f": _HOLO,
        "contour": {
            "type": "object",
            "properties": {"center": _PAIR, "radius": {"type": "number", "exclusiveMinimum": 0}},
            "required": ["center", "radius"],
            "additionalProperties": False,
        },
        "zetas": {"type": "array", "items": _PAIR, "minItems": 1},
        "nodes": {"type": "array", "items": {"type": "integer", "minimum": 16}, "minItems": 1},
    },
}
_REQUIRED = {
    "verify": [],
    "synthesize": ["A"],
    "check-associated": [],
    "solve": ["ivp", "w0"],
    "cauchy-demo": ["f", "contour", "zetas"],
}


def schema(mode: str) -> dict:
    s = {
        "type": "object",
        "properties": {**_COMMON, **_MODE_PROPS[mode]},
        "required": _REQUIRED[mode],
        "additionalProperties": False,
    }
    if mode == "check-associated":
        s["oneOf"] = [{"required": ["coefficients"]}, {"required": ["operator"]}]
    if mode == "solve":
        s["oneOf"] = [{"required": ["coefficients"]}, {"required": ["synthesize"]}]
    return s


# helpers

def _holo(obj, p: AlgebraParams) -> HoloPoly:
    if isinstance(obj, list):
        return HoloPoly.constant(tuple(obj), p)
    return HoloPoly.from_json(obj, p)


def _params(cfg: dict, override: Optional[str]) -> AlgebraParams:
    if override is not None:
        try:
            a, b = (float(v) for v in override.split(","))
        except ValueError as exc:
            raise ConfigInvalid(f"--params expects ALPHA,BETA, got {override!r}") from exc
        return AlgebraParams(a, b)
    if "params" not in cfg:
        raise ConfigInvalid("params missing (give them in the config or with --params)")
    return AlgebraParams(float(cfg["params"]["alpha"]), float(cfg["params"]["beta"]))


def _clean(obj):
    """Replace non-finite floats by None so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _write(out: Path, name: str, obj) -> Path:
    path = out / name
    path.write_text(dumps(obj))
    return path


def _synth_from(cfg: dict, p: AlgebraParams, grid: Optional[GridSpec]) -> RealCoeffs:
    free = {n: scalar_from_json(v) for n, v in cfg.get("free", {}).items()}
    zero = HoloPoly.zero(p)
    A, E, G = (_holo(cfg[k], p) if k in cfg else zero for k in ("A", "E", "G"))
    return synthesize(free, A, E, G, p, grid)


# modes

def run_verify(cfg: dict, p: AlgebraParams, seed: int, out: Path) -> int:
    results = run_suites(p, seed, cfg.get("suites"))
    ok = all(r.status != FAIL for r in results)
    width = max(len(r.name) for r in results)
    for r in results:
        metric = "-" if math.isnan(r.metric) else f"{r.metric:.3e}"
        print(f"{r.name:<{width}}  {r.status:<7}  {metric:>10}  {r.detail}")
    _write(out, "verify.json", {
        "params": p.to_json(),
        "seed": seed,
        "prng": PRNG,
        "suites": [r.to_json() for r in results],
        "passed": ok,
    })
    return EXIT_OK if ok else EXIT_CHECK


def run_synthesize(cfg: dict, p: AlgebraParams, seed: int, out: Path) -> int:
    grid = GridSpec(**cfg["grid"]) if "grid" in cfg else None
    rc = _synth_from(cfg, p, grid)
    doc = {"params": p.to_json(), "coefficients": rc.to_json()}
    if grid is not None:
        doc["grid"] = grid.to_json()
    _write(out, "coefficients.json", doc)
    print(dumps(doc) if grid is None else f"wrote sampled coefficients on a {grid.nx}x{grid.ny} grid")
    return EXIT_OK


def run_check_associated(cfg: dict, p: AlgebraParams, seed: int, out: Path) -> int:
    grid = GridSpec(**cfg["grid"]) if "grid" in cfg else None
    if "coefficients" in cfg:
        rc = RealCoeffs.from_json(cfg["coefficients"])
        if not rc.is_constant() and grid is None:
            grid = GridSpec.covering(-1.0, -1.0, 1.0, 1.0, 1.0 / 32)
        L = real_to_complex(rc, p, None if rc.is_constant() else grid)
    else:
        L = OperatorCoeffs(p, **{k: _holo(v, p) for k, v in cfg["operator"].items()})
    v = sontutschke_verdict(L, tol=cfg.get("tol", 1e-9), holo_tol=cfg.get("holo_tol"), grid=grid)
    doc = {"params": p.to_json(), "verdict": v.to_json()}
    _write(out, "verdict.json", doc)
    print("associated" if v.associated else "not associated")
    for x in v.violations:
        print(f"  {x.condition}: {x.magnitude:.3e}")
    return EXIT_OK if v.associated else EXIT_CHECK


def run_solve(cfg: dict, p: AlgebraParams, seed: int, out: Path) -> int:
    icfg = IvpConfig.from_json(cfg["ivp"], p)
    if "coefficients" in cfg:
        rc = RealCoeffs.from_json(cfg["coefficients"])
    else:
        rc = _synth_from(cfg["synthesize"], p, None)
    w0 = _holo(cfg["w0"], p)
    run = solve(icfg, rc, w0, keep_fields=False)
    write_csv(run, out / "run.csv")
    man = manifest(run, rc, w0)
    man["seed"] = seed
    _write(out, "manifest.json", man)
    cone = conical_diagnostic(run)
    print(f"steps {run.n_steps}, dt {run.dt_used!r}, final residual per level {run.cr_residual[-1].tolist()}")
    print(f"threshold crossings {cone.crossing_times} (monotone: {cone.monotone})")
    return EXIT_OK if cone.monotone else EXIT_CHECK


def run_cauchy_demo(cfg: dict, p: AlgebraParams, seed: int, out: Path) -> int:
    p.require_elliptic()
    f = _holo(cfg["f"], p)
    df = derive(f)
    base = Contour(tuple(cfg["contour"]["center"]), cfg["contour"]["radius"])
    zetas = [tuple(z) for z in cfg["zetas"]]
    rows = []
    for n in cfg.get("nodes", [16, 32, 64, 128, 256, 512]):
        c = base.with_nodes(n)
        ev = max(float(abs(cauchy_eval(f, c, z) - f.eval(z))) for z in zetas)
        ed = max(float(abs(derivative_via_contour(f, c, z) - df.eval(z))) for z in zetas)
        rows.append({"nodes": n, "value_error": ev, "derivative_error": ed})
        print(f"{n:>6}  {ev:.3e}  {ed:.3e}")
    errs = [r["value_error"] for r in rows]
    monotone = decreasing_to_floor(errs, ROUNDOFF_FLOOR)
    ok = monotone and errs[-1] <= 1e-6
    _write(out, "cauchy.json", {
        "params": p.to_json(),
        "f": f.to_json(),
        "rows": rows,
        "monotone": monotone,
        "roundoff_floor": ROUNDOFF_FLOOR,
        "passed": ok,
    })
    return EXIT_OK if ok else EXIT_CHECK


RUNNERS = {
    "verify": run_verify,
    "synthesize": run_synthesize,
    "check-associated": run_check_associated,
    "solve": run_solve,
    "cauchy-demo": run_cauchy_demo,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="epcx", description="Generalized complex analysis toolkit")
    ap.add_argument("mode", choices=MODES)
    ap.add_argument("--config", required=True, help="JSON config file")
    ap.add_argument("--out", default=None, help="output directory")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized suites")
    ap.add_argument("--params", default=None, help="ALPHA,BETA (overrides the config)")
    return ap


def load_config(path: str, mode: str) -> dict:
    text = Path(path).read_text()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path}: not valid JSON ({exc})") from exc
    try:
        jsonschema.validate(cfg, schema(mode))
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise ConfigInvalid(f"{path}: {loc}: {exc.message}") from exc
    if cfg.get("mode", mode) != mode:
        raise ConfigInvalid(f"config is for mode {cfg['mode']!r}, not {mode!r}")
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.mode)
        p = _params(cfg, args.params)
        seed = args.seed if args.seed is not None else cfg.get("seed", 0)
        out = Path(args.out or cfg.get("out", "."))
        out.mkdir(parents=True, exist_ok=True)
        return RUNNERS[args.mode](cfg, p, seed, out)
    except OSError as exc:
        print(f"epcx: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CheckFailed as exc:
        print(f"epcx: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except NonFiniteState as exc:
        print(f"epcx: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (EpcxError, ValueError, TypeError, KeyError) as exc:
        print(f"epcx: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
