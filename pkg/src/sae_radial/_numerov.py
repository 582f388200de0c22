"""Jitted fixed-step integration kernels for the shooting oracle.

The radial equation u'' + [2m(E-V) - l(l+1)/r^2] u = 0 transforms under
x = ln r, v = u / sqrt(r) into v'' + f(x) v = 0 with
f = 2m(E - V(r)) r^2 - (l + 1/2)^2, which is integrated by the standard
fourth-order three-term recurrence on the uniform x mesh.  On-the-fly
renormalization keeps the exponentially growing sweeps inside double
range; only ratios and shapes are consumed downstream.
"""

import numpy as np
from numba import njit

_RENORM_LIMIT = 1e250


@njit(cache=True)
def numerov_outward(f, h, i0, i_end, v0, v1):
    """Integrate v'' + f v = 0 from index i0 up to i_end inclusive.

    Returns the solution array (zeros outside [i0, i_end]); rescales the
    filled prefix whenever the magnitude passes the renorm limit.
    """
    v = np.zeros(f.shape[0])
    v[i0] = v0
    v[i0 + 1] = v1
    hh = h * h / 12.0
    for i in range(i0 + 1, i_end):
        v[i + 1] = (
            2.0 * (1.0 - 5.0 * hh * f[i]) * v[i]
            - (1.0 + hh * f[i - 1]) * v[i - 1]
        ) / (1.0 + hh * f[i + 1])
        a = abs(v[i + 1])
        if a > _RENORM_LIMIT:
            for j in range(i0, i + 2):
                v[j] /= a
    return v


@njit(cache=True)
def numerov_inward(f, h, i_start, i_stop, seed, seed_prev):
    """Integrate from i_stop down to i_start inclusive.

    seed/seed_prev are the values at i_stop and i_stop - 1; the decaying
    character of the physical solution going outward makes the inward
    sweep self-correcting, so the seed only has to carry the right order
    of magnitude.
    """
    v = np.zeros(f.shape[0])
    v[i_stop] = seed
    v[i_stop - 1] = seed_prev
    hh = h * h / 12.0
    for i in range(i_stop - 1, i_start, -1):
        v[i - 1] = (
            2.0 * (1.0 - 5.0 * hh * f[i]) * v[i]
            - (1.0 + hh * f[i + 1]) * v[i + 1]
        ) / (1.0 + hh * f[i - 1])
        a = abs(v[i - 1])
        if a > _RENORM_LIMIT:
            for j in range(i - 1, i_stop + 1):
                v[j] /= a
    return v


@njit(cache=True)
def wkb_stop_index(f, h, i_from, budget):
    """First index past i_from where the accumulated decay exponent
    integral sum sqrt(max(-f,0)) h reaches the budget."""
    s = 0.0
    for i in range(i_from, f.shape[0]):
        fi = f[i]
        if fi < 0.0:
            s += np.sqrt(-fi) * h
        if s >= budget:
            return i
    return f.shape[0] - 1


@njit(cache=True)
def count_sign_changes(u, floor):
    """Sign changes of u ignoring entries below floor in magnitude."""
    count = 0
    last = 0
    for i in range(u.shape[0]):
        x = u[i]
        if x > floor:
            if last == -1:
                count += 1
            last = 1
        elif x < -floor:
            if last == 1:
                count += 1
            last = -1
    return count
