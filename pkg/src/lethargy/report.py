"""Experiment harness: certify a level range, cross-check, emit artifacts.

One run builds the function for a chosen (sequence, scheme) pair, searches a
certificate per level, and, for polynomial schemes, cross-checks each level's
floor against an independent discrete minimax solve on a dense grid that
always contains every certificate point.  Everything emitted (report, sample
and envelope dumps, certificates) is deterministic byte-for-byte for a given
configuration.
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import serialize
from .certify import AlternationCertificate, search
from .envelope import SmoothEnvelope, build_envelope, dump_polygonal, dump_smooth, mollify
from .errors import ConfigError, SearchFailure
from .function import LethargyFunction, build_function
from .minimax import MAX_DEGREE, remez
from .schemes import SchemeProfile
from .sequences import ErrorSequence

REPORT_CSV = "report.csv"
REPORT_JSON = "report.json"
SAMPLES_CSV = "samples.csv"
ENVELOPE_POLYGONAL_CSV = "envelope_polygonal.csv"
ENVELOPE_SMOOTH_CSV = "envelope_smooth.csv"
CERTIFICATES_JSON = "certificates.json"


@dataclass
class ExperimentConfig:
    eps: str = "power:0.5"
    scheme: str = "poly"
    n_lo: int = 0
    n_hi: int = 15
    interval: tuple[float, float] = (0.0, 1.0)
    envelope: str = "identity"  # "identity" or "mollified[:delta]"
    grid: int = 50_001
    tol: float = 1e-9
    out: str | None = None
    emit_samples: int = 0
    emit_certs: bool = False
    emit_envelope: int = 0
    plots: bool = False
    format: str = "csv"

    def validate(self) -> None:
        a, b = self.interval
        if not ((a, b) == (0.0, 1.0) or 0.0 < a < b):
            raise ConfigError("interval must be (0, 1) or satisfy 0 < a < b")
        if self.n_lo < 0 or self.n_lo > self.n_hi:
            raise ConfigError("level range must be non-empty with n_lo >= 0")
        if self.grid < 1_001:
            raise ConfigError("grid size must be >= 1001")
        if not self.tol >= 0.0:
            raise ConfigError("tol must be >= 0")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.emit_samples and self.emit_samples < 2:
            raise ConfigError("emit_samples needs at least 2 points")
        _parse_envelope_spec(self.envelope)


def _parse_envelope_spec(spec: str) -> tuple[str, float]:
    if spec == "identity":
        return "identity", 0.0
    if spec == "mollified":
        return "mollified", 0.25
    if spec.startswith("mollified:"):
        try:
            delta = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"bad envelope spec {spec!r}") from exc
        if not 0.0 < delta < 0.5:
            raise ConfigError("mollifier delta must lie in (0, 1/2)")
        return "mollified", delta
    raise ConfigError(f"unknown envelope mode {spec!r}")


def parse_eps_spec(spec: str) -> ErrorSequence:
    try:
        if spec.startswith("power:"):
            return ErrorSequence.power(float(spec.split(":", 1)[1]))
        if spec.startswith("geometric:"):
            return ErrorSequence.geometric(float(spec.split(":", 1)[1]))
        if spec == "log":
            return ErrorSequence.logarithmic()
        if spec.startswith("file:"):
            return ErrorSequence.from_csv(spec.split(":", 1)[1])
    except ConfigError:
        raise
    except (ValueError, OSError) as exc:
        raise ConfigError(f"bad eps spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown eps spec {spec!r}")


def parse_scheme_spec(spec: str) -> SchemeProfile:
    try:
        if spec == "poly":
            return SchemeProfile.polynomial()
        if spec == "spline":
            return SchemeProfile.free_knot_spline(SchemeProfile.polynomial())
        if spec.startswith("rational:"):
            return SchemeProfile.rational_from_csv(spec.split(":", 1)[1])
    except (ValueError, OSError) as exc:
        raise ConfigError(f"bad scheme spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown scheme spec {spec!r}")


@dataclass
class LevelRow:
    n: int
    m: int
    eps: float
    floor: float | None = None
    search_error: str | None = None
    minimax_error: float | None = None
    lower_bracket: float | None = None
    converged: bool | None = None
    verdict_floor: bool = False
    verdict_grid: bool | None = None
    rate: float | None = None
    certificate: AlternationCertificate | None = None


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[LevelRow]
    function: LethargyFunction
    geometric_rho: float | None = None
    min_rate: float | None = None
    written: list[Path] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        for row in self.rows:
            if not row.verdict_floor:
                return False
            if row.verdict_grid is False:
                return False
        return True

    def failing_levels(self) -> list[int]:
        return [
            row.n
            for row in self.rows
            if not row.verdict_floor or row.verdict_grid is False
        ]


def _assemble(config: ExperimentConfig) -> tuple[LethargyFunction, ErrorSequence]:
    seq = parse_eps_spec(config.eps)
    profile = parse_scheme_spec(config.scheme)
    try:
        eps = seq.materialize(config.n_hi)
        base = build_envelope(eps, profile, config.n_hi)
    except (ValueError, IndexError) as exc:
        raise ConfigError(str(exc)) from exc
    mode, delta = _parse_envelope_spec(config.envelope)
    if mode == "identity":
        env = SmoothEnvelope.identity(base)
    else:
        env = mollify(base, delta)
    return build_function(env, eps, profile, config.interval), seq


def build_experiment_function(config: ExperimentConfig) -> LethargyFunction:
    """Materialize sequence and envelope per the config and assemble f."""
    return _assemble(config)[0]


def run(config: ExperimentConfig) -> ExperimentReport:
    """Certify every level in range, cross-check, and write artifacts."""
    config.validate()
    f, seq = _assemble(config)
    rho = seq.rho if seq.kind == "geometric" else None

    rows = []
    for n in range(config.n_lo, config.n_hi + 1):
        row = LevelRow(n=n, m=f.profile.phi(n), eps=f.eps[n])
        try:
            cert = search(f, n)
            row.certificate = cert
            row.floor = cert.floor
            row.verdict_floor = cert.floor > row.eps
        except SearchFailure as exc:
            row.search_error = str(exc)
        if rho is not None and row.floor is not None and n >= 1:
            row.rate = row.floor ** (1.0 / n)
        rows.append(row)

    if f.profile.kind == "polynomial":
        _cross_check(config, f, rows)

    report = ExperimentReport(config=config, rows=rows, function=f, geometric_rho=rho)
    if rho is not None:
        rates = [row.rate for row in rows if row.rate is not None and row.n >= 5]
        report.min_rate = min(rates) if rates else None
    if config.out is not None:
        write_artifacts(report)
    return report


def _cross_check(config: ExperimentConfig, f: LethargyFunction, rows) -> None:
    """Independent discrete minimax solve per level on a shared grid that
    contains every certificate point."""
    a, b = f.interval
    base = np.linspace(a, b, config.grid)
    cert_points = [t for row in rows if row.certificate for t in row.certificate.points]
    grid = np.union1d(base, np.asarray(cert_points)) if cert_points else base
    fvals = f.values(grid)
    for row in rows:
        if row.n > MAX_DEGREE:
            continue
        result = remez(fvals, row.n, (a, b), grid, config.tol)
        row.minimax_error = result.error
        row.lower_bracket = result.lower_bracket
        row.converged = result.converged
        row.verdict_grid = result.lower_bracket >= row.eps


def report_header(report: ExperimentReport) -> list[str]:
    header = [
        "n",
        "m_n",
        "eps_n",
        "floor",
        "minimax_error",
        "lower_bracket",
        "converged",
        "floor_gt_eps",
        "grid_ge_eps",
    ]
    if report.geometric_rho is not None:
        header.append("floor_root")
    return header


def report_rows(report: ExperimentReport) -> list[list]:
    out = []
    for row in report.rows:
        cells = [
            row.n,
            row.m,
            row.eps,
            row.floor,
            row.minimax_error,
            row.lower_bracket,
            row.converged,
            row.verdict_floor,
            row.verdict_grid,
        ]
        if report.geometric_rho is not None:
            cells.append(row.rate)
        out.append(cells)
    return out


def report_csv_text(report: ExperimentReport) -> str:
    return serialize.csv_text(report_header(report), report_rows(report))


def report_json_obj(report: ExperimentReport) -> dict:
    config = report.config
    rows = []
    for row in report.rows:
        entry = {
            "n": row.n,
            "m_n": row.m,
            "eps_n": row.eps,
            "floor": row.floor,
            "minimax_error": row.minimax_error,
            "lower_bracket": row.lower_bracket,
            "converged": row.converged,
            "floor_gt_eps": row.verdict_floor,
            "grid_ge_eps": row.verdict_grid,
        }
        if report.geometric_rho is not None:
            entry["floor_root"] = row.rate
        if row.search_error is not None:
            entry["search_error"] = row.search_error
        rows.append(entry)
    obj = {
        "config": {
            "eps": config.eps,
            "scheme": config.scheme,
            "n_lo": config.n_lo,
            "n_hi": config.n_hi,
            "interval": [config.interval[0], config.interval[1]],
            "envelope": config.envelope,
            "envelope_delta": report.function.envelope.delta,
            "envelope_max_rel_deviation": report.function.envelope.max_rel_deviation,
            "grid": config.grid,
            "tol": config.tol,
        },
        "rows": rows,
        "summary": {
            "all_passed": report.all_passed,
            "levels": len(report.rows),
            "failing_levels": report.failing_levels(),
        },
    }
    if report.geometric_rho is not None:
        obj["summary"]["min_floor_root_n_ge_5"] = report.min_rate
        obj["summary"]["rho_reciprocal"] = 1.0 / report.geometric_rho
    return obj


def report_json_text(report: ExperimentReport) -> str:
    return serialize.json_text(report_json_obj(report))


def sample_table(f: LethargyFunction, certificates, count: int):
    """(t, f(t), marker) rows: uniform points on [a, b] plus every
    certificate point, deduplicated, strictly increasing in t."""
    a, b = f.interval
    base = np.linspace(a, b, count)
    cert_points = np.asarray(
        sorted({t for cert in certificates for t in cert.points}), dtype=float
    )
    grid = np.union1d(base, cert_points) if cert_points.size else base
    marked = np.isin(grid, cert_points)
    vals = f.values(grid)
    return [
        [float(t), float(v), int(mk)] for t, v, mk in zip(grid, vals, marked)
    ]


def write_artifacts(report: ExperimentReport) -> None:
    """Write report.csv/report.json and any requested dumps under out/."""
    config = report.config
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    targets = {
        out / REPORT_CSV: report_csv_text(report),
        out / REPORT_JSON: report_json_text(report),
    }
    certs = [row.certificate for row in report.rows if row.certificate]
    if config.emit_samples:
        rows = sample_table(report.function, certs, config.emit_samples)
        targets[out / SAMPLES_CSV] = serialize.csv_text(["t", "f", "certificate_point"], rows)
    if config.emit_certs:
        payload = [cert.to_json_dict() for cert in certs]
        targets[out / CERTIFICATES_JSON] = serialize.json_text(payload)
    if config.emit_envelope:
        env = report.function.envelope
        u, p = dump_polygonal(env.base, config.emit_envelope)
        targets[out / ENVELOPE_POLYGONAL_CSV] = serialize.csv_text(
            ["u", "p"], [[float(a_), float(b_)] for a_, b_ in zip(u, p)]
        )
        u, e = dump_smooth(env, config.emit_envelope)
        targets[out / ENVELOPE_SMOOTH_CSV] = serialize.csv_text(
            ["u", "e"], [[float(a_), float(b_)] for a_, b_ in zip(u, e)]
        )
    for path, text in targets.items():
        serialize.write_text(path, text)
        report.written.append(path)
    if config.plots:
        from .plots import render_figures

        report.written.extend(render_figures(report, out / "figures"))


def min_rate_floor(report: ExperimentReport) -> float | None:
    """min over levels n >= 5 of floor**(1/n); the geometric-rate check."""
    return report.min_rate


def rate_bound_ok(report: ExperimentReport, slack: float = 1e-2) -> bool:
    """True when the certified floors force the geometric decay rate:
    min floor**(1/n) over n >= 5 stays above (1/rho) * (1 - slack)."""
    if report.geometric_rho is None or report.min_rate is None:
        return False
    return report.min_rate >= (1.0 / report.geometric_rho) * (1.0 - slack)
