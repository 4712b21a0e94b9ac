"""Alternation certificates: machine-checkable lower bounds on E(f, A_n).

A certificate at level n is m_n + 1 strictly increasing points on which f
alternates in sign with all magnitudes strictly above the target eps_n; by
the de la Vallee-Poussin premise that forces E(f, A_n) >= eps_n, and the
certified bound reported is the floor min |f| (the supremum of admissible
targets).

``check`` re-evaluates f at every point and is independent of how a
certificate was found; ``search`` exploits the candidate structure of the
constructed function: consecutive candidates t = 2/k alternate automatically
by parity, so it only needs a window of m_n + 1 consecutive k whose envelope
magnitudes clear the target.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import DomainError, SearchFailure
from .function import LethargyFunction


@dataclass(frozen=True)
class AlternationCertificate:
    level: int
    m: int
    points: tuple[float, ...]
    signs: tuple[int, ...]
    magnitudes: tuple[float, ...]
    floor: float
    target: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.level,
            "m_n": self.m,
            "target": self.target,
            "points": list(self.points),
            "signs": list(self.signs),
            "magnitudes": list(self.magnitudes),
            "floor": self.floor,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "AlternationCertificate":
        return cls(
            level=int(data["n"]),
            m=int(data["m_n"]),
            points=tuple(float(v) for v in data["points"]),
            signs=tuple(int(v) for v in data["signs"]),
            magnitudes=tuple(float(v) for v in data["magnitudes"]),
            floor=float(data["floor"]),
            target=float(data["target"]),
        )


@dataclass(frozen=True)
class CheckVerdict:
    valid: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def check(f: Callable[[float], float], cert: AlternationCertificate) -> CheckVerdict:
    """Re-evaluate f at every certificate point and test the premise.

    Valid iff the points are strictly increasing, consecutive values have
    opposite (nonzero) signs, and min |f| > target, all under re-evaluation.
    """
    pts = cert.points
    if len(pts) != cert.m + 1:
        return CheckVerdict(False, f"expected {cert.m + 1} points, got {len(pts)}")
    if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
        return CheckVerdict(False, "points not strictly increasing")
    try:
        values = [float(f(t)) for t in pts]
    except DomainError as exc:
        return CheckVerdict(False, f"point outside domain: {exc}")
    for i in range(len(values) - 1):
        if not values[i] * values[i + 1] < 0.0:
            return CheckVerdict(
                False, f"no sign change between points {i} and {i + 1}"
            )
    floor = min(abs(v) for v in values)
    if not floor > cert.target:
        return CheckVerdict(
            False, f"floor not > target ({floor:.17g} vs {cert.target:.17g})"
        )
    return CheckVerdict(True)


def search(f: LethargyFunction, n: int) -> AlternationCertificate:
    """Find, then check, a level-n certificate on the candidate lattice.

    Scans candidates k = 2, 3, ... (t = 2/k decreasing, global on the chart,
    up to u = k/2 at the last materialized knot) for the first window of
    m_n + 1 consecutive k whose parity-exact magnitudes strictly exceed
    eps_n; ties at the target are rejected.  Raises SearchFailure when no
    window exists, which signals too-shallow materialization.
    """
    if n < 0:
        raise ValueError("level must be >= 0")
    if n >= len(f.eps):
        raise ValueError(
            f"insufficient materialization: level {n} needs eps up to index {n}, "
            f"have {len(f.eps)} terms"
        )
    m = f.profile.phi(n)
    target = f.eps[n]
    needed = m + 1
    k_limit = 2 * f.envelope.last_knot
    run: list[tuple[int, float]] = []
    best = 0
    for k in range(2, k_limit + 1):
        magnitude = f.candidate_magnitude(k)
        if magnitude > target:
            run.append((k, magnitude))
            if len(run) == needed:
                return _certificate_from_run(f, n, m, target, run)
            best = max(best, len(run))
        else:
            run.clear()
    raise SearchFailure(
        level=n,
        needed=needed,
        found=best,
        message=(
            f"level {n}: only {best} consecutive candidates with |f| > "
            f"{target:.17g} up to u = {f.envelope.last_knot}; "
            f"materialize the sequence deeper"
        ),
    )


def _certificate_from_run(f, n, m, target, run) -> AlternationCertificate:
    a, b = f.interval
    points, signs, magnitudes = [], [], []
    for k, magnitude in reversed(run):  # descending k = increasing t
        s = 2.0 / k
        points.append(s if f.unit_chart else a + (b - a) * s)
        signs.append(-1 if k % 2 else 1)
        magnitudes.append(magnitude)
    cert = AlternationCertificate(
        level=n,
        m=m,
        points=tuple(points),
        signs=tuple(signs),
        magnitudes=tuple(magnitudes),
        floor=min(magnitudes),
        target=target,
    )
    verdict = check(f.eval, cert)
    if not verdict.valid:
        raise RuntimeError(
            f"search produced a certificate that fails its own check: {verdict.reason}"
        )
    return cert


class LevelCertification(NamedTuple):
    level: int
    bound: float
    certificate: AlternationCertificate


def certify_range(f: LethargyFunction, n_lo: int, n_hi: int) -> list[LevelCertification]:
    """One checked certificate per level in [n_lo, n_hi] (empty if reversed).

    The reported bound is the certificate floor; bounds need not be monotone
    across levels.  The first SearchFailure propagates with its level.
    """
    if n_lo < 0:
        raise ValueError("n_lo must be >= 0")
    if n_lo > n_hi:
        return []
    if n_hi >= len(f.eps):
        raise ValueError(
            f"insufficient materialization: range ends at {n_hi} but only "
            f"{len(f.eps)} sequence terms are materialized"
        )
    results = []
    for n in range(n_lo, n_hi + 1):
        cert = search(f, n)
        results.append(LevelCertification(level=n, bound=cert.floor, certificate=cert))
    return results
