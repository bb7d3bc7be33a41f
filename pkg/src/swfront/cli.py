"""Command line entry point.

    swfront run <config> [--out DIR]
    swfront sweep <config> --param initial.gamma0 --grid -0.9:-0.1:9 [--workers 4]
    swfront validate [--only 1,4,10]
    swfront export-figures <config> [--out DIR]

Exit codes: 0 success, 1 invalid config or failed validation, 2 numerical
failure (unexpected blow-up, solver failure, out-of-domain state).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import datetime as _dt
import glob
import json
import math
import os
import platform
import sys
import time

import numpy as np

from . import __version__, acceptance, plotting
from .config import ConfigError, load_config, with_param
from .errors import BlowUpError, DomainError, GradientCatastrophe, SolverFailure
from .scenarios import run_scenario
from .tables import Table, read_table, write_table

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2
NUMERICAL_ERRORS = (BlowUpError, SolverFailure, GradientCatastrophe, DomainError, FloatingPointError)


def _versions():
    import matplotlib
    import scipy
    import yaml
    return {"swfront": __version__, "python": platform.python_version(), "numpy": np.__version__,
            "scipy": scipy.__version__, "matplotlib": matplotlib.__version__, "pyyaml": yaml.__version__}


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def write_outputs(cfg, result, outdir, seconds):
    """Data files, figures and manifest for one scenario run; returns the manifest."""
    os.makedirs(outdir, exist_ok=True)
    prefix = cfg.output["prefix"]
    files = {}
    for name, table in result.tables.items():
        path = os.path.join(outdir, f"{prefix}_{name}.csv")
        files[os.path.basename(path)] = write_table(path, table)
    path = os.path.join(outdir, f"{prefix}_summary.csv")
    files[os.path.basename(path)] = write_table(path, result.summary_table())
    figures = []
    if cfg.output["figures"]:
        summary = dict(zip(result.summary_table()["quantity"], result.summary_table()["value"]))
        figures = plotting.render(cfg.kind, result.tables, summary, outdir, prefix)
    manifest = {
        "scenario": cfg.kind,
        "config": _jsonable(cfg.to_dict()),
        "derived": _jsonable(result.derived),
        "versions": _versions(),
        "timing_seconds": round(seconds, 6),
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "data_files": files,
        "figures": sorted(os.path.basename(p) for p in figures),
    }
    with open(os.path.join(outdir, f"{prefix}_manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def _report_config_error(exc, where):
    print(f"error: invalid config {where}", file=sys.stderr)
    for line in exc.errors:
        print(f"  {line}", file=sys.stderr)


def _validate(numbers=None):
    results = acceptance.run_all(sys.stdout, numbers)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_INVALID


def cmd_run(args):
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        _report_config_error(exc, args.config)
        return EXIT_INVALID
    if cfg.kind == "validate":
        return _validate()
    outdir = args.out or cfg.output["dir"]
    t0 = time.perf_counter()
    try:
        result = run_scenario(cfg)
    except NUMERICAL_ERRORS as exc:
        print(f"error: {cfg.kind} scenario failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    write_outputs(cfg, result, outdir, time.perf_counter() - t0)
    print(f"{cfg.kind}: wrote {outdir}")
    for k, v in result.derived.items():
        print(f"  {k} = {v}")
    return EXIT_OK


def parse_grid(spec):
    """``start:stop:num`` (linear), ``log:start:stop:num`` (geometric) or ``a,b,c``."""
    parts = spec.split(":")
    try:
        if parts[0] == "log" and len(parts) == 4:
            return list(np.geomspace(float(parts[1]), float(parts[2]), int(parts[3])))
        if len(parts) == 3:
            return list(np.linspace(float(parts[0]), float(parts[1]), int(parts[2])))
        if len(parts) == 1:
            return [float(v) for v in spec.split(",") if v.strip()]
    except ValueError:
        pass
    raise ValueError(f"cannot parse grid {spec!r}")


def cmd_sweep(args):
    try:
        base = load_config(args.config)
        grid = parse_grid(args.grid)
        cfgs = [with_param(base, args.param, float(v)) for v in grid]
    except ConfigError as exc:
        _report_config_error(exc, args.config)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    outdir = args.out or base.output["dir"]
    key = args.param.replace(".", "_")

    def one(i):
        cfg = cfgs[i]
        t0 = time.perf_counter()
        try:
            res = run_scenario(cfg)
        except NUMERICAL_ERRORS as exc:
            return i, None, f"{type(exc).__name__}: {exc}"
        write_outputs(cfg, res, os.path.join(outdir, f"{key}_{i:03d}"), time.perf_counter() - t0)
        return i, res, None

    results = [None] * len(cfgs)
    with concurrent.futures.ThreadPoolExecutor(max_workers=args.workers) as pool:
        for i, res, err in pool.map(one, range(len(cfgs))):
            results[i] = (res, err)
    # merge in grid order so the summary does not depend on thread scheduling
    names = []
    for res, _ in results:
        if res is not None:
            for q in res.summary_table()["quantity"]:
                if q not in names:
                    names.append(q)
    cols = {args.param: np.array(grid, dtype=float)}
    for q in names:
        col = []
        for res, _ in results:
            d = {} if res is None else dict(zip(res.summary_table()["quantity"], res.summary_table()["value"]))
            col.append(d.get(q, math.nan))
        cols[q] = np.array(col)
    cols["status"] = ["ok" if err is None else "failed" for _, err in results]
    os.makedirs(outdir, exist_ok=True)
    write_table(os.path.join(outdir, "sweep_summary.csv"), Table(cols))
    failures = [(grid[i], err) for i, (_, err) in enumerate(results) if err is not None]
    for v, err in failures:
        print(f"  {args.param}={v}: {err}", file=sys.stderr)
    print(f"sweep over {args.param}: {len(grid) - len(failures)}/{len(grid)} points ok, wrote {outdir}")
    return EXIT_NUMERICAL if failures else EXIT_OK


def cmd_validate(args):
    numbers = None
    if args.only:
        numbers = {int(v) for v in args.only.split(",")}
    return _validate(numbers)


def cmd_export(args):
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        _report_config_error(exc, args.config)
        return EXIT_INVALID
    outdir = args.out or cfg.output["dir"]
    prefix = cfg.output["prefix"]
    tables = {}
    for path in sorted(glob.glob(os.path.join(outdir, f"{prefix}_*.csv"))):
        name = os.path.basename(path)[len(prefix) + 1:-4]
        tables[name] = read_table(path)
    if "summary" not in tables:
        print(f"error: no data files for prefix {prefix!r} in {outdir}; run the scenario first",
              file=sys.stderr)
        return EXIT_INVALID
    summ = tables.pop("summary")
    summary = dict(zip(summ["quantity"], summ["value"]))
    paths = plotting.render(cfg.kind, tables, summary, outdir, prefix)
    print(f"wrote {len(paths)} figure(s) to {outdir}")
    return EXIT_OK


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors exit with EXIT_INVALID; argparse's own code 2 means numerical failure here
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser():
    p = _Parser(prog="swfront", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = p.add_subparsers(dest="verb", required=True)
    r = sub.add_parser("run", help="run one scenario config")
    r.add_argument("config")
    r.add_argument("--out", help="output directory (overrides output.dir)")
    r.set_defaults(func=cmd_run)
    s = sub.add_parser("sweep", help="run a config over a parameter grid")
    s.add_argument("config")
    s.add_argument("--param", required=True, help="dotted key, e.g. initial.gamma0")
    s.add_argument("--grid", required=True, help="start:stop:num, log:start:stop:num or a,b,c")
    s.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    v = sub.add_parser("validate", help="run the acceptance suite")
    v.add_argument("--only", help="comma-separated criterion numbers")
    v.set_defaults(func=cmd_validate)
    e = sub.add_parser("export-figures", help="redraw figures from existing data files")
    e.add_argument("config")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def _join_grid(argv):
    # "--grid -0.9:-0.1:9" would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--grid":
            tok = "--grid=" + next(it, "")
        out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_grid(argv))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
