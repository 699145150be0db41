"""Command-line interface.

    hooleyff run CONFIG [CONFIG ...] [--out DIR] [--seed S] [--jobs N] [--gnuplot]
    hooleyff list-catalog

Configurations are TOML or JSON files describing a field, a modulus, a trace
function family, and an experiment; reports are written as CSV + JSON
summary.  Exit status: 0 when every asserted check passed, 2 when an
experiment ran but an asserted bound or identity failed, 1 for configuration
or validation errors (the message names the failing clause).

The output directory is resolved in order: --out, the config's [output] dir,
the HOOLEYFF_OUT environment variable, then ``./reports``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import tomli

from . import experiments
from .base_field import Field
from .catalog import catalog_text, get_triple
from .characters import MultChar
from .errors import ConfigParse, HooleyFFError, Validation
from .polyring import Poly, ResidueField, ResidueRing
from .tracefn import (
    KloostermanSpec,
    MixedCharSpec,
    TraceFunction,
    from_kloosterman,
    from_mixed_char,
    tpoly_degree,
    tpoly_from_json,
    value_set,
)


def load_config(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigParse(f"cannot read config {path}: {exc}") from exc
    try:
        if path.suffix.lower() == ".json":
            return json.loads(text)
        return tomli.loads(text)
    except (json.JSONDecodeError, tomli.TOMLDecodeError) as exc:
        raise ConfigParse(f"cannot parse config {path}: {exc}") from exc


def _need(cfg: dict, section: str, key: str | None = None):
    if section not in cfg:
        raise Validation(f"{section}: section missing")
    if key is None:
        return cfg[section]
    if key not in cfg[section]:
        raise Validation(f"{section}.{key}: missing")
    return cfg[section][key]


def build_field(cfg: dict) -> Field:
    sec = _need(cfg, "field")
    p = sec.get("p")
    if not isinstance(p, int):
        raise Validation("field.p: must be an integer prime")
    e = sec.get("e", 1)
    modulus = sec.get("modulus")
    return Field(p, e, modulus)


def parse_poly(field: Field, obj, clause: str) -> Poly:
    try:
        return Poly.from_json(field, obj)
    except (TypeError, ValueError, HooleyFFError) as exc:
        raise Validation(f"{clause}: not a polynomial in coefficient-list form "
                         f"({exc})") from exc


def build_ring(cfg: dict, field: Field, warnings: list[str]) -> ResidueRing:
    g = parse_poly(field, _need(cfg, "ring", "modulus"), "ring.modulus")
    if g.is_zero() or g.degree < 1:
        raise Validation("ring.modulus: must be nonconstant")
    if not g.is_monic():
        g = g.monic()
        warnings.append(f"ring.modulus: normalized to monic {g}")
    seed = cfg.get("ring", {}).get("seed", 0)
    return ResidueRing(g, seed)


def build_family(sec: dict, ring: ResidueRing, clause: str) -> TraceFunction:
    kind = sec.get("kind")
    rank = sec.get("rank")
    conductor = sec.get("conductor")
    field = ring.field
    if kind == "mixed-char":
        exps = sec.get("exponents")
        if not isinstance(exps, list) or len(exps) != len(ring.factors):
            raise Validation(f"{clause}.exponents: need one exponent per factor "
                             f"({len(ring.factors)} factors)")
        chi = MultChar(ring, exps)
        if "preset" in sec:
            F, a, b = get_triple(sec["preset"]).build(field)
        else:
            for key in ("F", "a", "b"):
                if key not in sec:
                    raise Validation(f"{clause}.{key}: missing (or use a preset)")
            F = tpoly_from_json(field, sec["F"])
            a = tpoly_from_json(field, sec["a"])
            b = tpoly_from_json(field, sec["b"])
        return from_mixed_char(MixedCharSpec(chi, F, a, b), rank, conductor)
    if kind == "kloosterman":
        k = sec.get("k")
        if not isinstance(k, int):
            raise Validation(f"{clause}.k: must be an integer >= 2")
        b = parse_poly(field, sec.get("b_poly", [[1]]), f"{clause}.b_poly")
        return from_kloosterman(KloostermanSpec(k, b), ring, conductor)
    if kind == "value-set":
        if len(ring.factors) != 1 or ring.factors[0] != ring.modulus:
            raise Validation(f"{clause}: value-set needs an irreducible modulus")
        P = [parse_poly(field, c, f"{clause}.P") for c in sec.get("P", [])]
        if not P:
            raise Validation(f"{clause}.P: missing")
        rf = ResidueField(ring.modulus)
        _, t = value_set(tuple(P), rf)
        if rank is not None or conductor is not None:
            t = t.with_metadata(rank, conductor)
        return t
    if kind == "custom":
        path = sec.get("path")
        if not path:
            raise Validation(f"{clause}.path: missing for custom family")
        t = TraceFunction.import_csv(path, ring)
        if rank is not None or conductor is not None:
            t = t.with_metadata(rank, conductor)
        return t
    raise Validation(f"{clause}.kind: unknown family kind {kind!r}")


def run_config(path, out_override: str | None, seed_override: int | None,
               gnuplot: bool) -> tuple[str, bool, dict]:
    """Run one config; returns (report name, all checks passed, file map)."""
    cfg = load_config(path)
    warnings: list[str] = []
    exp = _need(cfg, "experiment")
    kind = exp.get("kind")
    seed = seed_override if seed_override is not None else exp.get("seed", 0)
    field = build_field(cfg)

    if kind == "sweep":
        ring = build_ring(cfg, field, warnings)
        t = build_family(_need(cfg, "family"), ring, "family")
        n_values = exp.get("n_values", list(range(ring.m + 1)))
        cor = None
        fam = cfg.get("family", {})
        if fam.get("kind") == "mixed-char" and exp.get("bound", "mixed-char") == "mixed-char":
            if "preset" in fam:
                F, a, b = get_triple(fam["preset"]).build(field)
            else:
                F = tpoly_from_json(field, fam["F"])
                b = tpoly_from_json(field, fam["b"])
            dF, db = tpoly_degree(F), tpoly_degree(b)
            cor = (max(0, 0 if dF == float("-inf") else int(dF)),
                   max(0, 0 if db == float("-inf") else int(db)))
        rows, summary = experiments.sweep_short_sums(
            t, n_values, seed=seed, centers=exp.get("centers"), cor_degrees=cor)
        ok = summary["violations"] == 0
    elif kind == "variance":
        ring = build_ring(cfg, field, warnings)
        t = build_family(_need(cfg, "family"), ring, "family")
        rows, summary = experiments.run_variance(
            t, exp.get("k_values", [1]),
            budget_constant=exp.get("budget_constant", 10.0))
        ok = summary["all_expansions_agree"] and summary["all_within_budget"]
    elif kind == "covariance":
        ring = build_ring(cfg, field, warnings)
        t1 = build_family(_need(cfg, "family"), ring, "family")
        t2 = build_family(_need(cfg, "family2"), ring, "family2")
        if "main_indicator" not in exp:
            raise Validation("experiment.main_indicator: required for covariance "
                             "(whether the two families are expected to correlate)")
        rows, summary = experiments.run_covariance(
            t1, t2, exp.get("k_values", [1]),
            main_indicator=bool(exp["main_indicator"]),
            budget_constant=exp.get("budget_constant", 10.0))
        ok = summary["all_expansions_agree"] and summary["all_within_budget"]
    elif kind == "mordell":
        g = parse_poly(field, _need(cfg, "ring", "modulus"), "ring.modulus")
        fam = _need(cfg, "family")
        if fam.get("kind") != "value-set":
            raise Validation("family.kind: mordell experiment needs a value-set family")
        rf = ResidueField(g)
        P = tuple(parse_poly(field, c, "family.P") for c in fam.get("P", []))
        if not P:
            raise Validation("family.P: missing")
        X_values = exp.get("X_values")
        if not X_values:
            raise Validation("experiment.X_values: missing")
        rows, summary = experiments.run_mordell(
            P, rf, X_values, budget_constant=exp.get("budget_constant", 10.0))
        ok = summary["all_within_budget"]
    elif kind == "control":
        g = parse_poly(field, _need(cfg, "ring", "modulus"), "ring.modulus")
        if not g.is_monic():
            g = g.monic()
            warnings.append(f"ring.modulus: normalized to monic {g}")
        rows, summary = experiments.run_control(field, [g])
        ok = summary["all_exact"]
    elif kind == "identity-suite":
        ring = build_ring(cfg, field, warnings)
        rows, summary = experiments.run_identity_suite(
            ring, tables=exp.get("tables", 10), seed=seed)
        ok = summary["all_pass"]
    else:
        raise Validation(f"experiment.kind: unknown experiment kind {kind!r}")

    outdir = (out_override or cfg.get("output", {}).get("dir")
              or os.environ.get("HOOLEYFF_OUT") or "reports")
    name = cfg.get("output", {}).get("name", kind)
    echo = dict(cfg)
    if warnings:
        echo = dict(echo, warnings=warnings)
    script = experiments.gnuplot_script(name, rows) if gnuplot else None
    files = experiments.write_report(outdir, name, rows, summary,
                                     config_echo=echo, gnuplot=script)
    return name, ok, files


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hooleyff",
        description="short-interval cancellation experiments for trace "
                    "functions over F_q[u]")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run experiment configs")
    p_run.add_argument("configs", nargs="+", help="TOML or JSON config files")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.add_argument("--seed", type=int, default=None, help="seed override")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="run configs in a thread pool of this size")
    p_run.add_argument("--gnuplot", action="store_true",
                       help="emit a gnuplot script beside each CSV report")

    sub.add_parser("list-catalog", help="list built-in families")

    args = parser.parse_args(argv)

    if args.command == "list-catalog":
        sys.stdout.write(catalog_text())
        return 0

    results = []
    try:
        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                futures = [pool.submit(run_config, c, args.out, args.seed,
                                       args.gnuplot) for c in args.configs]
                results = [f.result() for f in futures]
        else:
            results = [run_config(c, args.out, args.seed, args.gnuplot)
                       for c in args.configs]
    except HooleyFFError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    all_ok = True
    for name, ok, files in results:
        status = "pass" if ok else "FAIL"
        print(f"[{status}] {name}: {files['csv']}")
        all_ok &= ok
    return 0 if all_ok else 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
