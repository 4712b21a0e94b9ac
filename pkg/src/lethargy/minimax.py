"""Discrete Remez exchange: best uniform polynomial approximation on a grid.

The solver computes the minimax approximation of f from the degree-n
polynomials over a fixed, strictly increasing grid by multiple-point
exchange: solve the (n+2)-unknown levelled system on an alternating
reference, move the reference to the residual's sign-run peaks (keeping the
global maximum), iterate.  The discrete error never exceeds the continuous
minimax error over the interval, which is the direction lower-bound
verification needs, and the alternating reference residuals provide a de la
Vallee-Poussin two-sided bracket at every iterate.

The working basis is Chebyshev on the interval, evaluated by backward
(Clenshaw) recurrence; the levelled systems are solved by LAPACK's
partial-pivoting LU after explicit column scaling, which keeps conditioning
mild through the supported range n <= 64.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

MAX_DEGREE = 64
MAX_ITERATIONS = 100


@dataclass
class MinimaxResult:
    degree: int
    interval: tuple[float, float]
    coefficients: np.ndarray
    error: float
    reference: np.ndarray
    lower_bracket: float
    iterations: int
    converged: bool
    grid: np.ndarray = field(repr=False, default=None)
    history: list = field(repr=False, default_factory=list)

    def to_json_dict(self, include_coefficients: bool = False) -> dict:
        out = {
            "n": self.degree,
            "error": self.error,
            "lower_bracket": self.lower_bracket,
            "converged": self.converged,
            "iterations": self.iterations,
            "reference": [float(t) for t in self.reference],
        }
        if include_coefficients:
            out["coefficients"] = [float(c) for c in self.coefficients]
        return out


def _to_unit(t, interval):
    a, b = interval
    return (2.0 * np.asarray(t, dtype=float) - (a + b)) / (b - a)


def _clenshaw(coeffs, z):
    b1 = np.zeros_like(z)
    b2 = np.zeros_like(z)
    for c in coeffs[:0:-1]:
        b1, b2 = c + 2.0 * z * b1 - b2, b1
    return coeffs[0] + z * b1 - b2


def cheb_eval(coeffs, t, interval) -> np.ndarray:
    """Evaluate sum c_j T_j at t for a Chebyshev series on [a, b]."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim != 1 or coeffs.size < 1:
        raise ValueError("coefficient list must be 1-d and non-empty")
    a, b = interval
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    arr = np.asarray(t, dtype=float)
    if np.any(arr < a) or np.any(arr > b) or np.any(np.isnan(arr)):
        raise DomainError(f"evaluation point outside [{a}, {b}]")
    return _clenshaw(coeffs, _to_unit(arr, interval))


def _cheb_columns(z, n):
    cols = np.empty((z.size, n + 1))
    cols[:, 0] = 1.0
    if n >= 1:
        cols[:, 1] = z
    for j in range(2, n + 1):
        cols[:, j] = 2.0 * z * cols[:, j - 1] - cols[:, j - 2]
    return cols


def _initial_reference(grid, interval, n):
    """Indices of the n+2 grid points nearest the Chebyshev extrema."""
    a, b = interval
    j = np.arange(n + 2)
    targets = 0.5 * (a + b) - 0.5 * (b - a) * np.cos(np.pi * j / (n + 1))
    pos = np.searchsorted(grid, targets)
    idx = np.empty(n + 2, dtype=int)
    for i, p in enumerate(pos):
        lo = min(max(p - 1, 0), grid.size - 1)
        hi = min(p, grid.size - 1)
        idx[i] = lo if abs(grid[lo] - targets[i]) <= abs(grid[hi] - targets[i]) else hi
    return _make_strictly_increasing(idx, grid.size)


def _make_strictly_increasing(idx, size):
    idx = np.sort(idx)
    for i in range(1, idx.size):
        if idx[i] <= idx[i - 1]:
            idx[i] = idx[i - 1] + 1
    for i in range(idx.size - 1, -1, -1):
        cap = size - (idx.size - i)
        if idx[i] > cap:
            idx[i] = cap
    for i in range(1, idx.size):
        if idx[i] <= idx[i - 1]:
            idx[i] = idx[i - 1] + 1
    return idx


def _solve_levelled(zref, fref, n):
    """Coefficients and levelled error h with residual sign (-1)**i on zref."""
    rows = zref.size
    m = np.empty((rows, n + 2))
    m[:, : n + 1] = _cheb_columns(zref, n)
    m[:, n + 1] = np.where(np.arange(rows) % 2 == 0, 1.0, -1.0)
    scale = np.max(np.abs(m), axis=0)
    scale[scale == 0.0] = 1.0
    try:
        solution = np.linalg.solve(m / scale, fref) / scale
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"singular reference system: {exc}") from exc
    return solution[: n + 1], solution[n + 1]


def _sign_run_peaks(residual):
    """Index of the largest |residual| inside each maximal sign run."""
    signs = np.sign(residual)
    # zeros inherit the previous sign so they never split a run
    for i in range(signs.size):
        if signs[i] == 0.0:
            signs[i] = signs[i - 1] if i else 1.0
    boundaries = np.flatnonzero(signs[1:] != signs[:-1]) + 1
    starts = np.concatenate(([0], boundaries))
    stops = np.concatenate((boundaries, [signs.size]))
    peaks = np.empty(starts.size, dtype=int)
    magnitude = np.abs(residual)
    for i, (lo, hi) in enumerate(zip(starts, stops)):
        peaks[i] = lo + int(np.argmax(magnitude[lo:hi]))
    return peaks


def _remerge(idx, residual):
    """Collapse adjacent same-sign entries, keeping the larger magnitude, so
    the surviving index list alternates in residual sign."""
    out: list[int] = []
    for i in idx:
        if out and np.sign(residual[out[-1]]) == np.sign(residual[i]):
            if abs(residual[i]) > abs(residual[out[-1]]):
                out[-1] = int(i)
        else:
            out.append(int(i))
    return out


def _window_select(candidates, residual, count):
    """Best run of `count` consecutive alternating candidates containing the
    global maximum: maximal minimum magnitude, leftmost on ties."""
    magnitude = np.abs(residual)
    g = int(np.argmax(magnitude[candidates]))
    best = None
    lo = max(0, g - count + 1)
    hi = min(g, len(candidates) - count)
    for start in range(lo, hi + 1):
        window = candidates[start : start + count]
        score = magnitude[window].min()
        if best is None or score > best[0]:
            best = (score, window)
    return np.asarray(best[1], dtype=int)


def _climb(residual, ref):
    """Move every reference point uphill to its local extremum of its own
    residual sign; keeps the reference spread across the grid."""
    climbed = []
    last = residual.size - 1
    for idx in ref:
        sigma = 1.0 if residual[idx] >= 0.0 else -1.0
        j = int(idx)
        value = sigma * residual[j]
        while j < last and sigma * residual[j + 1] > value:
            j += 1
            value = sigma * residual[j]
        if j == idx:
            while j > 0 and sigma * residual[j - 1] > value:
                j -= 1
                value = sigma * residual[j]
        climbed.append(j)
    return sorted(set(climbed))


def _insert_global_max(candidates, residual):
    """Splice the index of max |residual| into an alternating index list."""
    magnitude = np.abs(residual)
    g = int(np.argmax(magnitude))
    if g in candidates:
        return candidates
    pos = int(np.searchsorted(candidates, g))
    sign_g = np.sign(residual[g])
    if pos < len(candidates) and np.sign(residual[candidates[pos]]) == sign_g:
        if magnitude[g] >= magnitude[candidates[pos]]:
            candidates[pos] = g
    elif pos > 0 and np.sign(residual[candidates[pos - 1]]) == sign_g:
        if magnitude[g] >= magnitude[candidates[pos - 1]]:
            candidates[pos - 1] = g
    else:
        candidates.insert(pos, g)
    return candidates


def _exchange(residual, ref, h, count):
    """Next reference: hill-climbed current points plus the global peak,
    topped up from threshold-filtered sign-run peaks when points collide.

    Every selected point carries |residual| >= |h|, signs alternate, and the
    global maximum is always retained, which makes the levelled error
    monotone across iterations.  Returns None when no alternating set of the
    required size exists.
    """
    candidates = _remerge(_climb(residual, ref), residual)
    candidates = _remerge(_insert_global_max(candidates, residual), residual)
    if len(candidates) < count:
        peaks = _sign_run_peaks(residual)
        strong = peaks[np.abs(residual[peaks]) >= abs(h) * (1.0 - 1e-12)]
        candidates = _remerge(strong, residual)
        candidates = _remerge(_insert_global_max(candidates, residual), residual)
        if len(candidates) < count:
            return None
    return _window_select(candidates, residual, count)


def _nudge_reference(ref, size, salt):
    """Shift one reference point by one grid step, rotating the position with
    salt; breaks the symmetric degeneracies (even f, even degree) where the
    levelled error vanishes and the residual has too few sign runs."""
    ref = ref.copy()
    for attempt in range(ref.size):
        p = (salt + attempt) % ref.size
        upper = ref[p + 1] - 1 if p + 1 < ref.size else size - 1
        lower = ref[p - 1] + 1 if p > 0 else 0
        if ref[p] + 1 <= upper:
            ref[p] += 1
            return ref
        if ref[p] - 1 >= lower:
            ref[p] -= 1
            return ref
    return None


def _zero_scale(fvals):
    return 1e-13 * max(1.0, float(np.max(np.abs(fvals))))


def remez(f, n, interval, grid, tol, max_iterations: int = MAX_ITERATIONS) -> MinimaxResult:
    """Discrete minimax approximation of f from degree-n polynomials.

    f is a callable evaluated on the grid, or a precomputed value array
    aligned with it.  Iterates levelled solve + multiple-point exchange until
    (max residual - |h|) / max residual <= tol (or the residual is zero to
    rounding), at most max_iterations times; non-convergence is reported via
    the flag, never silently accepted or raised.
    """
    grid = np.asarray(grid, dtype=float)
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    if not 0 <= n <= MAX_DEGREE:
        raise ValueError(f"degree must lie in [0, {MAX_DEGREE}]")
    if grid.ndim != 1 or grid.size < n + 2:
        raise ValueError(f"grid needs at least {n + 2} points")
    if np.any(np.diff(grid) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    if grid[0] < a or grid[-1] > b:
        raise ValueError("grid extends outside the interval")
    if not tol >= 0.0:
        raise ValueError("tol must be >= 0")
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    fvals = np.asarray(f(grid) if callable(f) else f, dtype=float)
    if fvals.shape != grid.shape:
        raise ValueError("f values must align with the grid")
    if not np.all(np.isfinite(fvals)):
        raise ValueError("f must be finite on the grid")

    z = _to_unit(grid, (a, b))
    ref = _initial_reference(grid, (a, b), n)
    zero_tol = _zero_scale(fvals)
    coeffs = np.zeros(n + 1)
    err = float(np.max(np.abs(fvals)))
    lower = 0.0
    converged = False
    iterations = 0
    nudges = 0
    history = []

    for iterations in range(1, max_iterations + 1):
        coeffs, h = _solve_levelled(z[ref], fvals[ref], n)
        residual = fvals - _clenshaw(coeffs, z)
        err = float(np.max(np.abs(residual)))
        lower = float(np.min(np.abs(residual[ref])))
        history.append((iterations, abs(float(h)), err, lower))
        if err <= zero_tol:
            converged = True
            break
        if (err - lower) / err <= tol:
            converged = True
            break
        new_ref = _exchange(residual, ref, h, n + 2)
        if new_ref is None:
            # degenerate levelled solve (symmetry can force h = 0 and starve
            # the residual of sign runs); perturb the reference and retry
            nudged = _nudge_reference(ref, grid.size, nudges)
            nudges += 1
            if nudged is None:
                break
            ref = nudged
            continue
        if np.array_equal(new_ref, ref):
            break  # fixed point of the exchange at this tolerance
        ref = new_ref

    return MinimaxResult(
        degree=n,
        interval=(a, b),
        coefficients=coeffs,
        error=err,
        reference=grid[ref].copy(),
        lower_bracket=lower,
        iterations=iterations,
        converged=converged,
        grid=grid,
        history=history,
    )


def dvp_bracket(f, result: MinimaxResult) -> tuple[float, float]:
    """Two-sided bracket (min reference |residual|, max grid |residual|).

    Re-derives both residuals from f and the stored polynomial; requires the
    reference residuals to alternate in sign (unless they vanish to
    rounding), so lower <= E_grid <= upper and lower <= E_continuous.
    """
    if not callable(f):
        raise TypeError("dvp_bracket needs a callable evaluator")
    fref = np.asarray([float(f(t)) for t in result.reference])
    r_ref = fref - cheb_eval(result.coefficients, result.reference, result.interval)
    fgrid = np.asarray(f(result.grid), dtype=float)
    r_grid = fgrid - cheb_eval(result.coefficients, result.grid, result.interval)
    lower = float(np.min(np.abs(r_ref)))
    upper = float(np.max(np.abs(r_grid)))
    if lower > _zero_scale(fgrid):
        signs = np.sign(r_ref)
        if np.any(signs[1:] * signs[:-1] != -1.0):
            raise ValueError("reference residual signs do not alternate")
    return lower, upper
