"""Polygonal height envelope and its certified smooth surrogate.

The polygonal envelope p is the even, piecewise-linear function with integer
knots whose heights encode the target sequence in blocks: the first m_0
integer points carry 3*eps_0, the next m_1 carry 3*eps_1, and so on.  Between
consecutive integers p is the chord; beyond the last materialized knot it
extends constantly at the last height, which keeps evaluation total (certified
claims never query that region).

The smooth surrogate e replaces each corner by the quadratic Bezier blend of
the two adjacent chords within distance delta of the knot.  Everything
downstream consumes only the containment band |e - p| <= p/3, which is
verified both analytically (the blend's worst deviation from the corner is
exactly delta*|slope jump|/4, attained at the knot) and on a dense grid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContainmentError

MOLLIFY_RETRIES = 20


@dataclass(frozen=True)
class PolygonalEnvelope:
    """Even piecewise-linear envelope with integer knots.

    block_ends[n] = m_0 + ... + m_n (prefix sums of the alternation counts),
    heights[n] = 3*eps_n is the value on block n's integer range
    [block_ends[n-1], block_ends[n] - 1].  The last knot is
    block_ends[-1] - 1.
    """

    block_ends: tuple[int, ...]
    heights: tuple[float, ...]
    n_max: int

    def __post_init__(self):
        lattice = np.repeat(self.heights, np.diff(np.concatenate(([0], self.block_ends))))
        object.__setattr__(self, "_lattice", lattice)
        object.__setattr__(self, "_knots", np.arange(lattice.size, dtype=float))

    @property
    def last_knot(self) -> int:
        return self.block_ends[-1] - 1

    def lattice_heights(self) -> np.ndarray:
        """Heights at the integer lattice 0..last_knot (copy)."""
        return self._lattice.copy()

    def values(self, u) -> np.ndarray:
        """p(u) for scalar or array u: even, chords between integer knots,
        constant beyond the last knot."""
        v = np.abs(np.asarray(u, dtype=float))
        return np.interp(v, self._knots, self._lattice)

    def __call__(self, u: float) -> float:
        return float(self.values(u))


def build_envelope(eps, profile, n_max: int) -> PolygonalEnvelope:
    """Assemble the polygonal envelope from a materialized sequence and a
    scheme profile.

    eps must hold at least n_max+1 positive non-increasing terms; block n gets
    profile.phi(n) integer points at height 3*eps_n.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    eps = list(eps)
    if not eps:
        raise ValueError("empty target sequence")
    if len(eps) < n_max + 1:
        raise ValueError(f"need {n_max + 1} sequence terms, got {len(eps)}")
    ends, total = [], 0
    for n in range(n_max + 1):
        m = profile.phi(n)
        if m < 1:
            raise ValueError(f"degenerate block: phi({n}) = {m}")
        total += m
        ends.append(total)
    heights = tuple(3.0 * e for e in eps[: n_max + 1])
    return PolygonalEnvelope(block_ends=tuple(ends), heights=heights, n_max=n_max)


@dataclass(frozen=True)
class SmoothEnvelope:
    """Envelope evaluator with certified containment |e - p| <= p/3.

    mode "identity" evaluates p itself (containment trivially holds, recorded
    deviation 0).  mode "mollified" rounds each corner with the quadratic
    blend of the two chords on [knot - delta, knot + delta]; the result is
    continuously differentiable and max_grid |e - p| / p is stored in
    max_rel_deviation.
    """

    base: PolygonalEnvelope
    mode: str = "identity"
    delta: float | None = None
    max_rel_deviation: float = 0.0
    verification_points: int = 0

    def __post_init__(self):
        lattice = self.base._lattice
        slope_right = np.append(np.diff(lattice), 0.0)
        slope_left = np.concatenate(([-slope_right[0]], np.diff(lattice)))
        object.__setattr__(self, "_slope_right", slope_right)
        object.__setattr__(self, "_slope_left", slope_left)

    @classmethod
    def identity(cls, base: PolygonalEnvelope) -> "SmoothEnvelope":
        return cls(base=base, mode="identity")

    @property
    def last_knot(self) -> int:
        return self.base.last_knot

    def values(self, u) -> np.ndarray:
        arr = np.asarray(u, dtype=float)
        v = np.abs(np.atleast_1d(arr))
        p = np.asarray(self.base.values(v))
        if self.mode == "identity":
            return p.reshape(arr.shape)
        j = np.rint(v)
        d = v - j
        blend = (np.abs(d) < self.delta) & (j <= self.base.last_knot)
        if not np.any(blend):
            return p.reshape(arr.shape)
        idx = j[blend].astype(int)
        s_l = self._slope_left[idx]
        s_r = self._slope_right[idx]
        tau = d[blend] / self.delta
        corner = self.base._lattice[idx]
        out = np.array(p, copy=True)
        out[blend] = corner + 0.25 * self.delta * (
            (s_r - s_l) * (1.0 + tau * tau) + 2.0 * tau * (s_r + s_l)
        )
        return out.reshape(arr.shape)

    def __call__(self, u: float) -> float:
        return float(self.values(u))


def _containment_deviation(base: PolygonalEnvelope, smooth: SmoothEnvelope, grid_points: int):
    """Max of |e - p| / p over a uniform grid on [-N, N], N = last knot."""
    n = max(base.last_knot, 1)
    grid = np.linspace(-n, n, grid_points)
    p = base.values(grid)
    e = smooth.values(grid)
    rel = np.abs(e - p) / p
    worst = int(np.argmax(rel))
    return float(rel[worst]), float(grid[worst])


def _analytic_containment_ok(base: PolygonalEnvelope, delta: float) -> bool:
    """Sufficient per-knot bound: the blend's peak deviation delta*|ds|/4
    stays under a third of the minimum of p over the blend interval."""
    lattice = base._lattice
    slope_right = np.append(np.diff(lattice), 0.0)
    slope_left = np.concatenate(([-slope_right[0]], np.diff(lattice)))
    deviation = 0.25 * delta * np.abs(slope_right - slope_left)
    knots = np.arange(lattice.size, dtype=float)
    p_min = np.minimum(
        lattice, np.minimum(base.values(knots - delta), base.values(knots + delta))
    )
    return bool(np.all(deviation <= p_min / 3.0))


def mollify(env: PolygonalEnvelope, delta: float, grid_points: int = 100_000) -> SmoothEnvelope:
    """Corner-rounded surrogate with verified containment |e - p| <= p/3.

    Starting from the requested delta in (0, 1/2), halves delta and retries
    (up to 20 times) until both the analytic per-knot bound and the measured
    deviation on a uniform grid of grid_points samples over [-N, N] pass.
    """
    if not 0.0 < delta < 0.5:
        raise ValueError("delta must lie in (0, 1/2)")
    if grid_points < 1_000:
        raise ValueError("grid_points must be >= 1000")
    worst_dev, worst_point = float("inf"), float("nan")
    for _ in range(MOLLIFY_RETRIES):
        candidate = SmoothEnvelope(base=env, mode="mollified", delta=delta)
        worst_dev, worst_point = _containment_deviation(env, candidate, grid_points)
        if worst_dev <= 1.0 / 3.0 and _analytic_containment_ok(env, delta):
            return SmoothEnvelope(
                base=env,
                mode="mollified",
                delta=delta,
                max_rel_deviation=worst_dev,
                verification_points=grid_points,
            )
        delta *= 0.5
    raise ContainmentError(
        f"containment |e-p| <= p/3 unachievable after {MOLLIFY_RETRIES} retries "
        f"(worst relative deviation {worst_dev:.6g} at u = {worst_point:.17g})",
        point=worst_point,
        deviation=worst_dev,
    )


def dump_polygonal(env: PolygonalEnvelope, points: int) -> tuple[np.ndarray, np.ndarray]:
    """(u, p(u)) sampled uniformly on [0, last knot] for plotting dumps."""
    u = np.linspace(0.0, float(max(env.last_knot, 1)), points)
    return u, env.values(u)


def dump_smooth(env: SmoothEnvelope, points: int) -> tuple[np.ndarray, np.ndarray]:
    """(u, e(u)) sampled uniformly on [0, last knot] for plotting dumps."""
    u = np.linspace(0.0, float(max(env.last_knot, 1)), points)
    return u, env.values(u)
