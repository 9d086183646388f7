"""Config-driven experiment runner.

One JSON config file describes a run; flags only select the config, override
the seed, or redirect output.  Every artifact embeds the effective config
hash, seed, mode, and tool version (never a timestamp), so identical configs
produce byte-identical files.

Exit codes: 0 success, 1 check failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .chebseries import ChebSeries, chebyshev_t, chebyshev_u, legendre_orthonormal, monomial
from .domains import measure_from_json, set_from_json
from .errors import ConfigError, MarkovLabError
from .exponents import (
    DEFAULT_SEED,
    factor_table,
    operator_from_json,
    read_table_csv,
)
from .fitting import fit_power_law
from .norms import QmsSpec, evaluate_norm, qms_norm_exact, spec_from_json
from .orthopoly import jacobi_system, stieltjes_orthonormalize
from .polynomials import UniPoly
from .verify import run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config", "top level must be a JSON object")
    return cfg


def _require(cfg: dict, name: str):
    if name not in cfg:
        raise ConfigError(name)
    return cfg[name]


def _config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


def _meta(cfg: dict, seed: int, mode: str) -> dict:
    return {
        "config_hash": _config_hash(cfg),
        "seed": seed,
        "mode": mode,
        "version": __version__,
    }


_FAMILIES = {
    "chebyshev": chebyshev_t,
    "chebyshev2": chebyshev_u,
    "legendre": legendre_orthonormal,
    "monomial": monomial,
}


def _parse_poly(desc, mode: str):
    """Polynomial descriptor: 'family:n', a coefficient list, or {'coeffs': [...]}."""
    if isinstance(desc, str):
        name, _, arg = desc.partition(":")
        if name in _FAMILIES:
            try:
                n = int(arg)
            except ValueError:
                raise ConfigError("poly", f"bad degree in {desc!r}")
            if mode == "exact":
                if name != "monomial":
                    raise ConfigError(
                        "poly", "exact mode supports 'monomial:n' or rational coefficients"
                    )
                return UniPoly.monomial(n, 1)
            return _FAMILIES[name](n)
        try:
            return UniPoly((Fraction(desc),)) if mode == "exact" else UniPoly((float(desc),))
        except ValueError:
            raise ConfigError("poly", f"unknown family {name!r}")
    if isinstance(desc, dict):
        desc = desc.get("coeffs")
    if isinstance(desc, (list, tuple)):
        if mode == "exact":
            return UniPoly(tuple(Fraction(str(c)) for c in desc))
        return UniPoly(tuple(float(c) for c in desc))
    raise ConfigError("poly", "expected 'family:n', a list, or {'coeffs': [...]}")


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_norm(args) -> int:
    cfg = _load_config(args.config)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))
    mode = cfg.get("mode", "float")
    spec_json = _require(cfg, "normspec")
    try:
        spec = spec_from_json(spec_json)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError("normspec", str(exc))
    poly = _parse_poly(_require(cfg, "poly"), mode)
    if mode == "exact":
        if not isinstance(spec, QmsSpec):
            raise ConfigError("mode", "exact mode is defined for qms norms")
        if not float(spec.m).is_integer():
            raise ConfigError("normspec", "exact qms values need an integer m")
        value = qms_norm_exact(poly, int(spec.m), spec.s)
        printed = f"{value.numerator}/{value.denominator}"
        payload_value: object = printed
    else:
        if isinstance(poly, ChebSeries) and isinstance(spec, QmsSpec):
            poly = poly.to_unipoly()
        value = evaluate_norm(spec, poly)
        printed = repr(float(value))
        payload_value = float(value)
    print(printed)
    if args.out:
        _write_json(
            args.out,
            {"value": payload_value, "normspec": spec_json, **_meta(cfg, seed, mode)},
        )
    return EXIT_OK


def cmd_factor_table(args) -> int:
    cfg = _load_config(args.config)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))
    mode = cfg.get("mode", "float")
    try:
        spec = spec_from_json(_require(cfg, "normspec"))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError("normspec", str(exc))
    try:
        op = operator_from_json(_require(cfg, "operator"))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError("operator", str(exc))
    degrees = _require(cfg, "degrees")
    if not isinstance(degrees, list) or not degrees:
        raise ConfigError("degrees", "must be a nonempty list")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ConfigError("degrees", "must be strictly increasing")
    out_path = args.out or cfg.get("output")
    if not out_path:
        raise ConfigError("output", "give an output path (config 'output' or --out)")
    table = factor_table(spec, op, [int(n) for n in degrees], seed=seed,
                         budget=int(cfg.get("budget", 1)))
    table.write_csv(out_path, meta=_meta(cfg, seed, mode))
    print(out_path)
    return EXIT_OK


def cmd_fit(args) -> int:
    cfg = _load_config(args.config)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))
    mode = cfg.get("mode", "float")
    table_path = args.table or cfg.get("table")
    if not table_path:
        raise ConfigError("table", "give a table CSV (config 'table' or --table)")
    window = cfg.get("window")
    if args.window:
        window = args.window
    meta, rows = read_table_csv(table_path)
    if len(rows) < 4:
        raise ConfigError("table", f"need at least 4 rows, found {len(rows)}")
    ns = [n for n, _ in rows]
    vals = [v for _, v in rows]
    try:
        fit = fit_power_law(ns, vals, window=tuple(window) if window else None)
    except ValueError as exc:
        raise ConfigError("window", str(exc))
    payload = fit.to_json()
    payload["source"] = meta.get("config_hash", "")
    payload.update(_meta(cfg, seed, mode))
    print(repr(fit.slope_ls))
    print(repr(fit.slope_envelope))
    if args.out:
        _write_json(args.out, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))
    mode = cfg.get("mode", "float")
    suite = args.suite or cfg.get("suite", "all")
    try:
        report = run_suite(suite, seed=seed, mode=mode)
    except ValueError as exc:
        raise ConfigError("suite", str(exc))
    payload = report.to_json()
    payload.update(_meta(cfg, seed, mode))
    _write_json(args.out, payload)
    if args.out:
        for check in report.checks:
            print(f"{check.status.upper():4s} {report.suite}/{check.name}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_ortho_export(args) -> int:
    cfg = _load_config(args.config)
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))
    mode = cfg.get("mode", "float")
    family = _require(cfg, "family")
    nmax = int(cfg.get("nmax", 64))
    kind = family.get("kind")
    if kind == "jacobi":
        sys_ = jacobi_system(float(family["alpha"]), float(family["beta"]), nmax)
    elif kind == "stieltjes":
        sys_ = stieltjes_orthonormalize(measure_from_json(family["measure"]), nmax)
    else:
        raise ConfigError("family", f"unknown family kind {kind!r}")
    E = set_from_json(cfg["set"]) if "set" in cfg else None
    out_path = args.out or cfg.get("output")
    if not out_path:
        raise ConfigError("output", "give an output path (config 'output' or --out)")
    sys_.export_csv(out_path, E=E, meta=_meta(cfg, seed, mode))
    print(out_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="markovlab",
        description="Markov-factor and norm-equivalence experiments on polynomials",
    )
    parser.add_argument("--version", action="version", version=f"markovlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="output path")

    p_norm = sub.add_parser("norm", help="evaluate one norm of one polynomial")
    common(p_norm)
    p_norm.set_defaults(func=cmd_norm)

    p_table = sub.add_parser("factor-table", help="sweep Markov factors over degrees")
    common(p_table)
    p_table.set_defaults(func=cmd_factor_table)

    p_fit = sub.add_parser("fit", help="fit a power-law exponent to a table CSV")
    common(p_fit)
    p_fit.add_argument("--table", help="table CSV path (overrides config)")
    p_fit.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    p_fit.set_defaults(func=cmd_fit)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    common(p_verify)
    p_verify.add_argument(
        "--suite",
        choices=["di", "qms", "nikolskii", "bernstein-schur", "laplacian", "floor", "all"],
        help="suite name (overrides config)",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_ortho = sub.add_parser("ortho-export", help="export recurrence/sup-norm tables")
    common(p_ortho)
    p_ortho.set_defaults(func=cmd_ortho_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MarkovLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
