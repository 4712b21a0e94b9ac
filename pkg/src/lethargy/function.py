"""The slowly-approximable function: envelope times a reciprocal oscillator.

On the unit chart the function is f(0) = 0 and f(t) = e(1/t) * cos(2*pi/t)
for t in (0, 1]; on a general interval [a, b] with 0 < a < b it is the affine
transport of the unit chart.  The oscillator touches the envelope exactly at
the half-integer lattice of u = 1/t, i.e. at t = 2/k: those are the candidate
points every certificate is built from, and there the cosine is evaluated by
integer parity ((-1)**k), never by floating reduction.  Elsewhere the phase
2*pi/t is reduced modulo 2*pi with a double-double reciprocal, keeping phase
error near machine level even for very small t.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import dd
from .envelope import SmoothEnvelope
from .errors import DomainError
from .schemes import SchemeProfile

# |2/t - k| below this snaps to the parity-exact candidate path; covers the
# rounding of t = fl(2/k) for k up to ~4.5e3 while perturbing the generic
# value by less than 1e-12 relative (the cosine is extremal there).
_SNAP_TOL = 1e-12


class CandidatePoint(NamedTuple):
    t: float
    sign: int
    k: int


@dataclass(frozen=True)
class LethargyFunction:
    """Evaluable assembled function on [a, b] with its construction data."""

    envelope: SmoothEnvelope
    interval: tuple[float, float]
    eps: tuple[float, ...]
    profile: SchemeProfile

    def __post_init__(self):
        a, b = self.interval
        if not ((a, b) == (0.0, 1.0) or 0.0 < a < b):
            raise ValueError("interval must be (0, 1) or satisfy 0 < a < b")
        object.__setattr__(self, "interval", (float(a), float(b)))
        object.__setattr__(self, "eps", tuple(float(e) for e in self.eps))

    @property
    def unit_chart(self) -> bool:
        return self.interval == (0.0, 1.0)

    def _to_unit(self, t: np.ndarray) -> np.ndarray:
        a, b = self.interval
        if self.unit_chart:
            return t
        return (t - a) / (b - a)

    def values(self, t) -> np.ndarray:
        """f at scalar or array t; raises DomainError off [a, b]."""
        arr = np.asarray(t, dtype=float)
        a, b = self.interval
        if np.any(arr < a) or np.any(arr > b) or np.any(np.isnan(arr)):
            raise DomainError(f"evaluation point outside [{a}, {b}]")
        s = self._to_unit(np.atleast_1d(arr))
        out = np.zeros(s.shape)
        pos = s > 0.0
        if np.any(pos):
            out[pos] = self._unit_values_positive(s[pos])
        return out.reshape(arr.shape)

    def _unit_values_positive(self, s: np.ndarray) -> np.ndarray:
        env = self.envelope
        with np.errstate(over="ignore", invalid="ignore"):
            hi, lo = dd.reciprocal(s)
            finite = np.isfinite(hi)
            hi_safe = np.where(finite, hi, 1.0)
            lo_safe = np.where(finite, lo, 0.0)
            k, offset = dd.nearest_half_integer(hi_safe, lo_safe)
            snap = finite & (np.abs(offset) <= _SNAP_TOL)
            phase = dd.frac(hi_safe, lo_safe)
            generic = env.values(hi_safe) * np.cos(2.0 * math.pi * phase)
        parity = np.where(np.mod(k, 2.0) == 0.0, 1.0, -1.0)
        snapped = env.values(0.5 * k) * parity
        out = np.where(snap, snapped, generic)
        # 1/s overflowed: far beyond the materialized knots the envelope is
        # constant and the reduced phase of an integer that large is 0.
        return np.where(finite, out, env.values(float(env.last_knot)))

    def eval(self, t: float) -> float:
        return float(self.values(t))

    __call__ = eval

    def candidate_points(self, u_max: float) -> list[CandidatePoint]:
        """Oscillator-extremal points t = 2/k with k/2 <= u_max, in increasing
        t order, with sign (-1)**k; |f| equals the envelope exactly there."""
        a, b = self.interval
        k_top = int(math.floor(2.0 * u_max))
        points = []
        for k in range(k_top, 1, -1):
            s = 2.0 / k
            t = s if self.unit_chart else a + (b - a) * s
            points.append(CandidatePoint(t=t, sign=-1 if k % 2 else 1, k=k))
        return points

    def candidate_magnitude(self, k: int) -> float:
        """Envelope value at u = k/2: the exact |f| at candidate k."""
        return float(self.envelope.values(0.5 * k))

    def lift(self, x) -> float:
        """Radial lift to the cube: value at f(x_1**2 + ... + x_s**2).

        Defined on the closed unit ball; on a coordinate axis this equals the
        single-variable composition f(x**2) exactly.
        """
        if not self.unit_chart:
            raise ValueError("lift requires the unit chart (0, 1)")
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("lift expects a 1-d point with s >= 1 coordinates")
        r2 = float(np.dot(x, x))
        if r2 > 1.0:
            raise DomainError(f"|x|^2 = {r2} exceeds 1: outside the unit ball")
        return self.eval(r2)


def build_function(
    envelope: SmoothEnvelope,
    eps,
    profile: SchemeProfile,
    interval=(0.0, 1.0),
) -> LethargyFunction:
    return LethargyFunction(
        envelope=envelope,
        interval=(float(interval[0]), float(interval[1])),
        eps=tuple(eps),
        profile=profile,
    )
