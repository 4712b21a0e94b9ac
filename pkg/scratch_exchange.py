"""Prototype exchange strategies for the discrete Remez iteration."""
import numpy as np
from lethargy import ErrorSequence, SchemeProfile, build_envelope, SmoothEnvelope, build_function, certify_range
from lethargy.minimax import _cheb_columns, _solve_levelled, _to_unit, _clenshaw, _initial_reference


def sign_run_peaks(residual):
    signs = np.sign(residual)
    for i in range(signs.size):
        if signs[i] == 0.0:
            signs[i] = signs[i - 1] if i else 1.0
    boundaries = np.flatnonzero(signs[1:] != signs[:-1]) + 1
    starts = np.concatenate(([0], boundaries))
    stops = np.concatenate((boundaries, [signs.size]))
    mag = np.abs(residual)
    return np.array([lo + int(np.argmax(mag[lo:hi])) for lo, hi in zip(starts, stops)], dtype=int)


def remerge(idx, residual):
    """Collapse adjacent same-sign entries, keeping the larger |r|."""
    out = []
    for i in idx:
        if out and np.sign(residual[out[-1]]) == np.sign(residual[i]):
            if abs(residual[i]) > abs(residual[out[-1]]):
                out[-1] = i
        else:
            out.append(i)
    return np.array(out, dtype=int)


def exchange_window(residual, ref, h, count):
    peaks = sign_run_peaks(residual)
    mag = np.abs(residual)
    keep = mag[peaks] >= abs(h) * (1 - 1e-12)
    filtered = peaks[keep]
    filtered = remerge(filtered, residual)
    if filtered.size < count:
        return None
    gidx = int(np.argmax(mag[filtered]))
    best = None
    for start in range(max(0, gidx - count + 1), min(gidx, filtered.size - count) + 1):
        window = filtered[start:start + count]
        score = mag[window].min()
        if best is None or score > best[0]:
            best = (score, window)
    return best[1]


def exchange_climb(residual, ref, h, count):
    """Move each reference point uphill to its local extremum of sigma_i * r;
    then ensure the global max of |r| is in the reference."""
    mag = np.abs(residual)
    n_grid = residual.size
    new = []
    for i, idx in enumerate(ref):
        sigma = 1.0 if residual[idx] >= 0 else -1.0
        j = idx
        val = sigma * residual[j]
        while j + 1 < n_grid and sigma * residual[j + 1] > val:
            j += 1; val = sigma * residual[j]
        if j == idx:
            while j - 1 >= 0 and sigma * residual[j - 1] > val:
                j -= 1; val = sigma * residual[j]
        new.append(j)
    # dedupe, keep order
    new = sorted(set(new))
    # global max insertion
    g = int(np.argmax(mag))
    if g not in new:
        # find insertion position
        import bisect
        pos = bisect.bisect_left(new, g)
        sg = np.sign(residual[g])
        if pos < len(new) and np.sign(residual[new[pos]]) == sg:
            if mag[g] > mag[new[pos]]:
                new[pos] = g
        elif pos > 0 and np.sign(residual[new[pos - 1]]) == sg:
            if mag[g] > mag[new[pos - 1]]:
                new[pos - 1] = g
        else:
            new.insert(pos, g)
            # drop the far end to restore count parity-wise
            if pos < len(new) / 2:
                new.pop()
            else:
                new.pop(0)
    arr = remerge(np.array(new, dtype=int), residual)
    if arr.size < count:
        return None
    if arr.size > count:
        # keep window containing global max
        mag2 = np.abs(residual)
        gi = int(np.argmax(mag2[arr]))
        best = None
        for start in range(max(0, gi - count + 1), min(gi, arr.size - count) + 1):
            window = arr[start:start + count]
            score = mag2[window].min()
            if best is None or score > best[0]:
                best = (score, window)
        arr = best[1]
    return arr


def run_remez(fvals, z, n, tol, exchanger, max_iter=100):
    grid_size = z.size
    ref = _initial_reference(np.asarray(z), (-1.0, 1.0), n)  # z ascending works as grid
    hist = []
    for it in range(1, max_iter + 1):
        coeffs, h = _solve_levelled(z[ref], fvals[ref], n)
        r = fvals - _clenshaw(coeffs, z)
        E = float(np.max(np.abs(r)))
        lb = float(np.min(np.abs(r[ref])))
        hist.append((it, abs(h), E, lb))
        if E <= 1e-13 * max(1, np.max(np.abs(fvals))):
            return True, it, E, lb, hist
        if (E - lb) / E <= tol:
            return True, it, E, lb, hist
        new_ref = exchanger(r, ref, h, n + 2)
        if new_ref is None or np.array_equal(new_ref, ref):
            return False, it, E, lb, hist
        ref = new_ref
    return False, max_iter, E, lb, hist


def main():
    import time
    seq = ErrorSequence.power(0.5); prof = SchemeProfile.polynomial()
    eps = seq.materialize(15)
    env = build_envelope(eps, prof, 15)
    f = build_function(SmoothEnvelope.identity(env), eps, prof)
    certs = certify_range(f, 0, 15)
    base = np.linspace(0.0, 1.0, 50001)
    pts = [t for c in certs for t in c.certificate.points]
    grid = np.union1d(base, np.asarray(pts))
    fvals = f.values(grid)
    z = _to_unit(grid, (0.0, 1.0))
    for name, ex in [("window", exchange_window), ("climb", exchange_climb)]:
        t0 = time.perf_counter()
        print(f"--- {name} ---")
        for n in range(16):
            ok, it, E, lb, hist = run_remez(fvals, z, n, 1e-9, ex)
            flag = "OK " if ok else "FAIL"
            print(f"  n={n:2d} {flag} it={it:3d} E={E:.6f} lb={lb:.6f} lb>=eps:{lb >= eps[n]}")
        print(f"  time {time.perf_counter()-t0:.2f}s")


if __name__ == "__main__":
    main()
