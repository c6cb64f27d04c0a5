"""``phasespace`` command-line entry point.

Parameter precedence: values in ``--config`` (a JSON object with optional
``command``, ``parameters``, ``output`` and ``seed`` keys) override flags,
and flags override the defaults. Exit codes: 0 success, 1 failed
verification, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import traceback
import typing
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from pydantic import ValidationError

from configs.logger import app_logger
from src.apps.cli.commands import run_command
from src.apps.cli.schemas import PARAMS, RunConfig, validate_parameters
from src.apps.cli.verify import Suite, format_report, run_suite
from src.apps.cli.writers import Table, default_output, open_output, render_csv, render_json
from src.core.errors import ConfigError, PhaseSpaceError

log = app_logger.get_logger(__name__, extra_prefix="cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_EPILOG = "Precedence: --config JSON > command-line flags > defaults (environment settings)."


def _flag_spec(annotation: Any) -> Dict[str, Any]:
    """argparse keywords for a parameter annotation (Optional, Literal, Enum, bool, int, float, str)."""
    args = [a for a in typing.get_args(annotation) if a is not type(None)]
    if typing.get_origin(annotation) is typing.Union and len(args) == 1:
        annotation = args[0]
    if typing.get_origin(annotation) is typing.Literal:
        return {"choices": list(typing.get_args(annotation))}
    if isinstance(annotation, type) and issubclass(annotation, Enum):
        return {"choices": [m.value for m in annotation]}
    if annotation is bool:
        return {"action": argparse.BooleanOptionalAction}
    if annotation in (int, float, str):
        return {"type": annotation}
    return {"type": str}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasespace",
        description="Phase-space toolkit for continuous-variable quantum states.",
        epilog=_EPILOG,
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    for command, model in PARAMS.items():
        cmd = sub.add_parser(command.value, help=(model.__doc__ or "").strip() or None, epilog=_EPILOG)
        for name, info in model.model_fields.items():
            default = info.get_default(call_default_factory=True)
            shown = default.value if isinstance(default, Enum) else default
            cmd.add_argument(
                f"--{name.replace('_', '-')}",
                dest=name,
                default=argparse.SUPPRESS,
                help=f"{info.description or name} (default: {shown})",
                **_flag_spec(info.annotation),
            )
        cmd.add_argument("--config", default=None, help="JSON file whose values override the flags")
        cmd.add_argument("--output", default=None, help="output path, '-' for stdout")
        cmd.add_argument("--seed", type=int, default=None, help="seed for sampling commands")

    check = sub.add_parser("verify", help="run the acceptance criteria")
    check.add_argument("--suite", choices=[s.value for s in Suite], default=Suite.fast.value)
    check.add_argument("--output", default=None, help="also write the report to this path")
    return parser


def _read_config(path: str) -> Dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file {path} not found", key="config") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}", key="config") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", key="config")
    for key in data:
        if key not in RunConfig.model_fields:
            raise ConfigError(f"unknown config key {key!r}", key=key)
    if not isinstance(data.get("parameters", {}), dict):
        raise ConfigError("parameters must be a JSON object", key="parameters")
    return data


_RUN_FLAGS = {"command", "config", "output", "seed", "log_level"}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, flags and the JSON file into one :class:`RunConfig`."""
    flags = {k: v for k, v in vars(args).items() if k not in _RUN_FLAGS}
    merged: Dict[str, Any] = {"command": args.command, "parameters": flags}
    if args.output is not None:
        merged["output"] = args.output
    if args.seed is not None:
        merged["seed"] = args.seed
    if args.config:
        data = _read_config(args.config)
        if data.get("command", args.command) != args.command:
            raise ConfigError(f"config is for {data['command']!r}, not {args.command!r}", key="command")
        merged["parameters"] = {**flags, **data.get("parameters", {})}
        for key in ("output", "seed"):
            if key in data:
                merged[key] = data[key]
    try:
        return RunConfig(**merged)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise ConfigError(first["msg"], key=".".join(str(p) for p in first["loc"])) from exc


def _failing_module(exc: BaseException) -> str:
    """Innermost project module on the traceback of ``exc``."""
    module = "unknown"
    for frame in traceback.extract_tb(exc.__traceback__):
        path = Path(frame.filename)
        if "src" in path.parts:
            parts = path.with_suffix("").parts
            module = ".".join(parts[parts.index("src") :])
    return module


def execute(config: RunConfig) -> str:
    """Run one command and write its output; returns the path written."""
    params = validate_parameters(config.command, config.parameters)
    with app_logger.timed(log, "command", command=config.command.value, seed=config.seed) as kv:
        result = run_command(config.command, params, config.seed)
        echo = params.model_dump()
        if isinstance(result, Table):
            text = render_csv(result, command=config.command.value, parameters=echo, seed=config.seed)
            suffix = "csv"
        else:
            text = render_json(result, command=config.command.value, parameters=echo, seed=config.seed)
            suffix = "json"
        target = config.output or default_output(config.command.value, suffix)
        with open_output(target) as stream:
            stream.write(text)
        kv.update(output=target)
    return target


def _verify(suite: str, output: Optional[str]) -> int:
    results = run_suite(suite)
    report = format_report(results)
    sys.stdout.write(report)
    if output:
        with open_output(output) as stream:
            stream.write(report)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    if args.log_level:
        app_logger.set_level(args.log_level)
    try:
        if args.command == "verify":
            return _verify(args.suite, args.output)
        execute(resolve_config(args))
    except (ConfigError, ValidationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhaseSpaceError as exc:
        module = _failing_module(exc)
        app_logger.log_kv(log, logging.ERROR, "numerical failure", module=module, error=type(exc).__name__)
        print(f"numerical failure in {module}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


__all__ = [
    "EXIT_OK",
    "EXIT_VERIFY_FAILED",
    "EXIT_CONFIG",
    "EXIT_NUMERICAL",
    "build_parser",
    "resolve_config",
    "execute",
    "main",
]
