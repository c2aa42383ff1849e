"""Packed transition tables for power automata (internal).

Length-n state words are packed as integers with the first state in the
most significant digit, so word order matches lexicographic component
order.  Tables are built level by level without touching any individual
word, which keeps boundary checks around 2^17 words cheap.
"""

from __future__ import annotations

import numpy as np


def level_tables(delta, rho, n):
    """Tables (t_n, f_n) for length-n words, each shaped (n_letters, S**n).

    t_n[i, u] is the packed image of word u under letter i's transition
    action; f_n[i, u] is the single letter produced when word u rewrites
    letter i.
    """
    levels = all_level_tables(delta, rho, n)
    return levels[-1]


def all_level_tables(delta, rho, n):
    """List of (t_m, f_m) for m = 1..n; see level_tables."""
    delta = np.asarray(delta, dtype=np.int64)
    rho = np.asarray(rho, dtype=np.int64)
    n_letters, n_states = delta.shape
    t = delta.copy()
    f = rho.T.copy()
    out = [(t, f)]
    for m in range(2, n + 1):
        stride = n_states ** (m - 1)
        t_prev, f_prev = out[-1]
        t_m = np.empty((n_letters, n_states * stride), dtype=np.int64)
        f_m = np.empty((n_letters, n_states * stride), dtype=np.int64)
        for i in range(n_letters):
            for x in range(n_states):
                lo = x * stride
                carried = rho[x, i]
                t_m[i, lo:lo + stride] = delta[i, x] * stride + t_prev[carried]
                f_m[i, lo:lo + stride] = f_prev[carried]
        out.append((t_m, f_m))
    return out


def pack(word, n_states) -> int:
    value = 0
    for x in word:
        value = value * n_states + x
    return value


def unpack(value, n_states, length):
    word = [0] * length
    for k in range(length - 1, -1, -1):
        word[k] = value % n_states
        value //= n_states
    return tuple(word)
