"""Compiled column-dependence search used by :func:`localarc.lrc.min_distance`."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _reduce(x, basis, pivots, depth, add, neg, exp, log, q1):
    """Reduce ``x`` in place against the first ``depth`` basis rows; return first nonzero or -1."""
    rows = x.shape[0]
    for k in range(depth):
        c = x[pivots[k]]
        if c != 0:
            lc = log[c]
            b = basis[k]
            for t in range(rows):
                if b[t] != 0:
                    x[t] = add[x[t], neg[exp[(lc + log[b[t]]) % q1]]]
    for t in range(rows):
        if x[t] != 0:
            return t
    return -1


@njit(cache=True, nogil=True)
def search_level(H, w, first_lo, first_hi, add, neg, exp, log):
    """Scan w-subsets (lexicographic) whose first column lies in [first_lo, first_hi).

    Every proper subset is assumed independent. Returns (found, witness, checked):
    the first dependent w-subset, and how many w-subsets were tested.
    """
    rows, n = H.shape
    q1 = exp.shape[0] // 2
    basis = np.zeros((w, rows), dtype=np.int64)
    pivots = np.zeros(w, dtype=np.int64)
    idx = np.zeros(w, dtype=np.int64)
    x = np.zeros(rows, dtype=np.int64)
    checked = 0
    depth = 0
    idx[0] = first_lo - 1
    while True:
        idx[depth] += 1
        limit = n - (w - 1 - depth)
        if depth == 0:
            limit = min(first_hi, limit)
        if idx[depth] >= limit:
            if depth == 0:
                return False, idx, checked
            depth -= 1
            continue
        for t in range(rows):
            x[t] = H[t, idx[depth]]
        piv = _reduce(x, basis, pivots, depth, add, neg, exp, log, q1)
        if depth == w - 1:
            checked += 1
            if piv < 0:
                return True, idx, checked
            continue
        if piv < 0:
            # a smaller dependent set; the caller already ruled this out
            continue
        # normalise so the pivot entry is 1
        s = exp[(q1 - log[x[piv]]) % q1]
        for t in range(rows):
            if x[t] != 0:
                basis[depth, t] = exp[(log[x[t]] + log[s]) % q1]
            else:
                basis[depth, t] = 0
        pivots[depth] = piv
        depth += 1
        idx[depth] = idx[depth - 1]
