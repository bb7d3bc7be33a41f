"""SVG figures drawn from data tables only.

Uses the object-oriented matplotlib API (no pyplot state), so figures can
be produced from worker threads.  A fixed hash salt and an empty date keep
the SVG bytes identical between runs.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
from matplotlib.backends.backend_svg import FigureCanvasSVG  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402
import numpy as np  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "swfront"
matplotlib.rcParams["svg.fonttype"] = "path"

SVG_METADATA = {"Date": None, "Creator": None}


def _save(fig, path):
    FigureCanvasSVG(fig)
    fig.savefig(path, format="svg", metadata=SVG_METADATA)
    return path


def _times(table):
    return sorted(set(np.asarray(table["t"]).tolist()))


def _snapshots(tables, outdir, prefix, overlay="refsolver"):
    prof = tables.get("profiles")
    ref = tables.get(overlay)
    source = prof if prof is not None and len(prof) else ref
    if source is None:
        return []
    paths = []
    for k, t in enumerate(_times(source)):
        fig = Figure(figsize=(6.0, 4.5))
        ax_s, ax_u = fig.subplots(2, 1, sharex=True)
        rows = source.where("t", t)
        ax_s.plot(rows["x"], rows["b"], color="saddlebrown", lw=1.2, label="bottom")
        label = "exact" if source is prof else "reference"
        ax_s.plot(rows["x"], rows["zeta"], color="tab:blue", lw=1.4, label=label)
        ax_u.plot(rows["x"], rows["u"], color="tab:blue", lw=1.2)
        if ref is not None and source is prof:
            near = [tr for tr in _times(ref) if abs(tr - t) < 1e-12]
            if near:
                rr = ref.where("t", near[0])
                wet = rr["eta"] > 0
                ax_s.plot(rr["x"][wet], rr["zeta"][wet], "--", color="tab:orange", lw=1.0,
                          label="finite volume")
                ax_u.plot(rr["x"][wet], rr["u"][wet], "--", color="tab:orange", lw=1.0)
        ax_s.set_ylabel("surface, bottom")
        ax_u.set_ylabel("u")
        ax_u.set_xlabel("x")
        ax_s.set_title(f"t = {t:.4g}")
        ax_s.legend(loc="best", fontsize=8)
        fig.tight_layout()
        paths.append(_save(fig, os.path.join(outdir, f"{prefix}_snapshot_{k:02d}.svg")))
    return paths


def _parameters(tables, outdir, prefix):
    p = tables.get("parameters")
    if p is None:
        return []
    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.subplots()
    for name in ("alpha", "gamma", "mu"):
        ax.plot(p["t"], p[name], label=name)
    ax.set_xlabel("t")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_parameters.svg"))]


def _fronts(tables, summary, outdir, prefix):
    fr = tables.get("fronts")
    if fr is None:
        return []
    fig = Figure(figsize=(5.0, 4.0))
    ax = fig.subplots()
    ax.plot(fr["X_left"], fr["t"], label="left boundary")
    ax.plot(fr["X_right"], fr["t"], label="right boundary")
    for key, style in (("shock_time", ":"), ("coalescence_time", "-.")):
        if key in summary:
            ax.axhline(summary[key], ls=style, color="gray", lw=0.8, label=key.replace("_", " "))
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_fronts.svg"))]


def _slopes(tables, summary, outdir, prefix):
    sh = tables.get("slope_history")
    if sh is None:
        return []
    fig = Figure(figsize=(5.0, 3.5))
    ax = fig.subplots()
    ax.semilogy(sh["t"], sh["max_slope"])
    if "shock_time" in summary:
        ax.axvline(summary["shock_time"], ls=":", color="gray", lw=0.8)
    if "refsolver_blowup" in summary:
        ax.axvline(summary["refsolver_blowup"], ls="--", color="tab:red", lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("max |d eta / dx|")
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_slope.svg"))]


def _front_path(tables, outdir, prefix):
    fr = tables.get("front")
    if fr is None:
        return []
    fig = Figure(figsize=(5.0, 3.5))
    ax = fig.subplots()
    ax.plot(fr["t"], fr["X_right"])
    ax.set_xlabel("t")
    ax.set_ylabel("front position")
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_front.svg"))]


def _coefficients(tables, outdir, prefix):
    c = tables.get("coefficients")
    if c is None:
        return []
    fig = Figure(figsize=(6.0, 6.0))
    ax_x, ax_c, ax_j = fig.subplots(3, 1, sharex=True)
    ax_x.plot(c["t"], c["X"])
    ax_x.set_ylabel("X")
    for name in c.header:
        if name[:1] == "u" or name.startswith("eta"):
            ax_c.plot(c["t"], c[name], label=name, lw=1.0)
    ax_c.legend(fontsize=7, ncol=4)
    ax_j.plot(c["t"], c["jump"])
    ax_j.set_ylabel("velocity jump")
    ax_j.set_xlabel("t")
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_coefficients.svg"))]


def _period_curve(tables, summary, outdir, prefix):
    c = tables["curve"]
    fig = Figure(figsize=(5.0, 3.5))
    ax = fig.subplots()
    ax.plot(c["gamma0"], c["period"])
    for key in ("limit_deep", "limit_shallow"):
        if key in summary:
            ax.axhline(summary[key], ls=":", color="gray", lw=0.8)
    ax.set_xlabel("gamma0")
    ax.set_ylabel("period")
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_curve.svg"))]


def _blowup_curve(tables, outdir, prefix):
    c = tables["curve"]
    fig = Figure(figsize=(5.0, 3.5))
    ax = fig.subplots()
    ax.loglog(c["gamma0"], c["blowup_time"], label="blow-up time")
    ax.loglog(c["gamma0"], c["small_gamma_limit"], ":", color="gray", lw=0.8)
    ax.loglog(c["gamma0"], c["large_gamma_asymptote"], "--", color="gray", lw=0.8)
    ax.set_xlabel("gamma0")
    ax.set_ylabel("blow-up time")
    fig.tight_layout()
    return [_save(fig, os.path.join(outdir, f"{prefix}_curve.svg"))]


def render(kind, tables, summary, outdir, prefix):
    """Write all SVG figures for a scenario; returns their paths."""
    paths = []
    if kind in ("slosh", "blowup"):
        paths += _snapshots(tables, outdir, prefix)
        paths += _parameters(tables, outdir, prefix)
    elif kind == "pw-parabola-flat":
        paths += _snapshots(tables, outdir, prefix)
        paths += _fronts(tables, summary, outdir, prefix)
        paths += _slopes(tables, summary, outdir, prefix)
    elif kind == "pw-parabola-parabolic":
        paths += _snapshots(tables, outdir, prefix)
        paths += _front_path(tables, outdir, prefix)
        paths += _slopes(tables, summary, outdir, prefix)
    elif kind == "vacuum-hierarchy":
        paths += _coefficients(tables, outdir, prefix)
    elif kind == "period-curve":
        paths += _period_curve(tables, summary, outdir, prefix)
    elif kind == "blowup-curve":
        paths += _blowup_curve(tables, outdir, prefix)
    return paths
