"""Figure rendering for the report path.

Builds matplotlib figures directly (no pyplot, no global backend state) so
the library stays headless-safe, and writes PNGs next to the CSV/JSON
artifacts.  Software metadata is stripped so reruns produce stable files.
"""

from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

_PNG_META = {"Software": None}


def _save(fig: Figure, path: Path) -> Path:
    fig.savefig(path, dpi=130, metadata=_PNG_META)
    return path


def render_bounds_figure(report, path: Path) -> Path:
    """Per-level targets, certified floors, and solver errors, log scale."""
    levels = [row.n for row in report.rows]
    eps = [row.eps for row in report.rows]
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot(111)
    ax.semilogy(levels, eps, "o-", label=r"target $\varepsilon_n$", color="#444444")
    floors = [(row.n, row.floor) for row in report.rows if row.floor is not None]
    if floors:
        ax.semilogy(*zip(*floors), "s-", label="certificate floor", color="#1f77b4")
    solver = [(row.n, row.minimax_error) for row in report.rows if row.minimax_error is not None]
    if solver:
        ax.semilogy(*zip(*solver), "^--", label="discrete minimax error", color="#d62728")
    ax.set_xlabel("level $n$")
    ax.set_ylabel("uniform error")
    ax.set_title("Certified lower bounds vs targets")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def render_function_figure(report, path: Path, points: int = 4001) -> Path:
    """The assembled function with certificate points marked."""
    f = report.function
    a, b = f.interval
    t = np.linspace(a, b, points)
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot(111)
    ax.plot(t, f.values(t), lw=0.6, color="#1f77b4", label="f")
    cert_t, cert_v = [], []
    for row in report.rows:
        if row.certificate:
            for p in row.certificate.points:
                cert_t.append(p)
                cert_v.append(f.eval(p))
    if cert_t:
        ax.plot(cert_t, cert_v, ".", ms=4, color="#d62728", label="certificate points")
    ax.set_xlabel("t")
    ax.set_ylabel("f(t)")
    ax.set_title("Constructed function and alternation points")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper left")
    fig.tight_layout()
    return _save(fig, path)


def render_envelope_figure(report, path: Path, points: int = 4001) -> Path:
    """Polygonal envelope and its smooth surrogate over the knot range."""
    env = report.function.envelope
    u = np.linspace(0.0, float(max(env.last_knot, 1)), points)
    fig = Figure(figsize=(7.0, 4.5))
    ax = fig.add_subplot(111)
    ax.plot(u, env.base.values(u), lw=1.0, color="#444444", label="polygonal p")
    if env.mode != "identity":
        ax.plot(u, env.values(u), lw=1.0, color="#2ca02c", label="smooth e")
    ax.set_xlabel("u")
    ax.set_ylabel("height")
    ax.set_title("Height envelope")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return _save(fig, path)


def render_figures(report, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        render_bounds_figure(report, out_dir / "bounds.png"),
        render_function_figure(report, out_dir / "function.png"),
        render_envelope_figure(report, out_dir / "envelope.png"),
    ]
