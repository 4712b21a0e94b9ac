"""Double-double helpers for accurate reciprocal and phase reduction.

The oscillator argument 2*pi/t amplifies rounding in 1/t catastrophically for
small t, so the reciprocal is carried as an unevaluated sum hi + lo of two
doubles (~106 bits).  All routines are branch-free and work elementwise on
numpy arrays as well as on Python floats; they require round-to-nearest
arithmetic, which numpy guarantees.
"""

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Exact product a*b = p + err with p = fl(a*b)."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def fast_two_sum(a, b):
    """Exact sum a + b = s + err, assuming |a| >= |b|."""
    s = a + b
    err = b - (s - a)
    return s, err


def reciprocal(t):
    """1/t as a double-double (hi, lo), one Newton correction of fl(1/t)."""
    q1 = 1.0 / t
    p, pe = two_prod(q1, t)
    r = (1.0 - p) - pe
    return fast_two_sum(q1, r / t)


def frac(hi, lo):
    """Fractional part of the double-double hi + lo, for hi >= 1.

    The result is an ordinary double; it may fall marginally outside [0, 1)
    by the magnitude of lo, which is harmless for periodic consumers.
    """
    return (hi - np.floor(hi)) + lo


def nearest_half_integer(hi, lo):
    """Nearest half-integer to hi + lo, as (k, offset) with k = round(2u).

    offset = 2u - k is exact to double-double accuracy; |offset| small means
    u sits on the half-integer lattice k/2.
    """
    d = 2.0 * hi
    k = np.rint(d)
    return k, (d - k) + 2.0 * lo
