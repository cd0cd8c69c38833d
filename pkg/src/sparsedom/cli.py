"""Configuration-driven experiment runner.

Subcommands:

* ``run <config.json>``: validate the configuration, run the listed
  experiment suites, and write one JSON and one CSV report per suite.
* ``certify <family.txt> --eta <v>``: re-certify a serialized cube family at
  the requested density.
* ``list-suites``: enumerate the available experiments.

Exit codes: 0 on success, 1 on configuration or runtime errors, 2 when a
suite or certificate check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema

from .sparse import certify_sparsity, parse_family
from .verify import SUITES, resolve_config, run_suite

OUTPUT_DIR_ENV = "SPARSEDOM_OUTPUT_DIR"

_KERNEL_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["auto", "hilbert", "riesz", "random"]},
        "axis": {"type": "integer", "enum": [0, 1]},
        "seed": {"type": ["integer", "null"]},
    },
}

_WEIGHT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "type": {"enum": ["constant", "power"]},
        "exponent": {"type": "number"},
        "center": {
            "type": ["array", "null"],
            "items": {"type": "number"},
            "maxItems": 2,
        },
    },
}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "dimension": {"type": "integer", "enum": [1, 2]},
        "resolution": {"type": "integer", "minimum": 4},
        "side": {"type": "number", "exclusiveMinimum": 0},
        "kernel1": _KERNEL_SCHEMA,
        "kernel2": _KERNEL_SCHEMA,
        "weight": _WEIGHT_SCHEMA,
        "p": {"type": "number", "exclusiveMinimum": 1},
        "r": {"type": "number"},
        "beta": {"type": "number", "minimum": 0},
        "lambda_grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "lo": {"type": "number", "exclusiveMinimum": 0},
                "hi": {"type": "number", "exclusiveMinimum": 0},
                "points": {"type": "integer", "minimum": 2},
            },
        },
        "seeds": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "experiments": {
            "type": "array",
            "items": {"type": "string", "enum": sorted(SUITES)},
        },
        "output_dir": {"type": "string"},
        "threads": {"type": ["integer", "null"], "minimum": 1},
    },
}


class ConfigError(Exception):
    """Configuration problem with a human-readable location."""


def load_config(path: str) -> Dict[str, Any]:
    """Read, schema-validate, and default-fill a run configuration."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        field = "$" + "".join(f".{p}" if isinstance(p, str) else f"[{p}]"
                              for p in exc.absolute_path)
        raise ConfigError(f"config field {field}: {exc.message}") from exc
    if raw.get("weight", {}).get("type") == "power" and "exponent" not in raw["weight"]:
        raise ConfigError("config field $.weight: power weights need an exponent")
    try:
        return resolve_config(raw)
    except ValueError as exc:
        raise ConfigError(f"config error: {exc}") from exc


def _set_threads(threads: Optional[int]) -> None:
    if threads is None:
        return
    import numba

    numba.set_num_threads(threads)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out_dir = os.environ.get(OUTPUT_DIR_ENV, cfg["output_dir"])
    cfg["output_dir"] = out_dir
    _set_threads(cfg.get("threads"))
    out_path = Path(out_dir)
    try:
        out_path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return 1

    summary: List[Dict[str, Any]] = []
    any_failed = False
    try:
        for name in cfg["experiments"]:
            report = run_suite(name, cfg)
            (out_path / f"{name}.json").write_text(report.to_json())
            (out_path / f"{name}.csv").write_text(report.to_csv())
            status = "PASS" if report.passed else "FAIL"
            print(f"{name}: {status} ({report.wall_time:.2f} s, {len(report.cases)} cases)")
            summary.append(
                {
                    "experiment": name,
                    "passed": report.passed,
                    "cases": len(report.cases),
                    "wall_time_s": report.wall_time,
                }
            )
            any_failed = any_failed or not report.passed
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    run_report = {"config": cfg, "experiments": summary}
    (out_path / "run.json").write_text(
        json.dumps(run_report, sort_keys=True, indent=2) + "\n"
    )
    if any_failed:
        print("run: FAIL", file=sys.stderr)
        return 2
    print(f"run: OK ({len(summary)} experiments)")
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    try:
        text = Path(args.family).read_text()
    except OSError as exc:
        print(f"error: cannot read family file: {exc}", file=sys.stderr)
        return 1
    try:
        family = parse_family(text)
    except ValueError as exc:
        print(f"error: family parse error: {exc}", file=sys.stderr)
        return 1
    result = certify_sparsity(family.cubes, args.eta, family.domain)
    if result.ok:
        print(
            f"certified: {len(family.cubes)} cubes at eta={args.eta!r}"
            f" (min fraction {result.min_fraction!r})"
        )
        return 0
    cube = result.violating_cube
    print(
        f"violation: cube grid={cube.grid_index} corner={cube.corner}"
        f" side={cube.side_cells} keeps fraction {result.min_fraction!r}"
        f" < eta={args.eta!r}",
        file=sys.stderr,
    )
    return 2


def cmd_list_suites(args: argparse.Namespace) -> int:
    width = max(len(name) for name in SUITES)
    for name, spec in SUITES.items():
        print(f"{name:<{width}}  {spec.description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsedom",
        description="sparse domination experiment runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the experiments listed in a JSON config")
    p_run.add_argument("config", help="path to the run configuration (JSON)")
    p_run.set_defaults(func=cmd_run)

    p_cert = sub.add_parser("certify", help="re-certify a serialized cube family")
    p_cert.add_argument("family", help="path to a family file (text format)")
    p_cert.add_argument("--eta", type=float, required=True, help="target density")
    p_cert.set_defaults(func=cmd_certify)

    p_list = sub.add_parser("list-suites", help="list available experiments")
    p_list.set_defaults(func=cmd_list_suites)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
