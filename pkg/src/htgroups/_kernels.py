"""Garside left normal form kernels for the Artin braid group B_n.

Simple elements (permutation braids) are stored as 0-based position maps:
``a[p]`` is the final position of the strand that starts at position ``p``.
Products are read left to right, so ``(ab)[p] = b[a[p]]``.

Letters are signed 1-based generator indices, as in :mod:`htgroups.braid`.
"""

import numpy as np

from ._jit import kernel


@kernel
def left_weight(a, b):
    """Make the pair of simple factors ``(a, b)`` left-weighted, in place.

    Moves generators from the front of ``b`` onto the end of ``a`` until every
    starting generator of ``b`` is already a finishing generator of ``a``.
    Returns True when anything moved.
    """
    n = a.shape[0]
    ainv = np.empty(n, np.int64)
    for p in range(n):
        ainv[a[p]] = p
    changed = False
    while True:
        found = -1
        for i in range(n - 1):
            # i starts b, and the strands ending at i, i+1 in a have not crossed
            if b[i] > b[i + 1] and ainv[i] < ainv[i + 1]:
                found = i
                break
        if found < 0:
            return changed
        i = found
        p1 = ainv[i]
        p2 = ainv[i + 1]
        a[p1] = i + 1
        a[p2] = i
        ainv[i] = p2
        ainv[i + 1] = p1
        tmp = b[i]
        b[i] = b[i + 1]
        b[i + 1] = tmp
        changed = True


@kernel
def is_identity(a):
    for p in range(a.shape[0]):
        if a[p] != p:
            return False
    return True


@kernel
def is_delta(a):
    n = a.shape[0]
    for p in range(n):
        if a[p] != n - 1 - p:
            return False
    return True


@kernel
def normal_form(letters, n):
    """Left normal form ``Delta^inf x_1 ... x_m`` of a braid word on ``n`` strands.

    Returns ``(inf, factors)`` with ``factors`` an ``m x n`` array of position
    maps, none trivial and none equal to Delta.
    """
    L = letters.shape[0]
    fac = np.empty((L, n), np.int64)
    if n < 2:
        return 0, fac[:0]
    neg_after = 0
    for j in range(L):
        if letters[j] < 0:
            neg_after += 1
    inf = -neg_after
    m = 0
    x = np.empty(n, np.int64)
    for j in range(L):
        g = letters[j]
        i = abs(g) - 1
        if g > 0:
            for p in range(n):
                x[p] = p
            x[i] = i + 1
            x[i + 1] = i
        else:
            # sigma_i^-1 = Delta^-1 (Delta sigma_i^-1); the second factor is s_i after w0
            neg_after -= 1
            for p in range(n):
                v = n - 1 - p
                if v == i:
                    v = i + 1
                elif v == i + 1:
                    v = i
                x[p] = v
        if neg_after % 2 == 1:
            # slide the remaining Delta^-1 powers to the front: conjugate by w0
            for p in range(n):
                fac[m, p] = n - 1 - x[n - 1 - p]
        else:
            for p in range(n):
                fac[m, p] = x[p]
        m += 1
        t = m - 2
        while t >= 0:
            if not left_weight(fac[t], fac[t + 1]):
                break
            t -= 1
        while m > 0 and is_identity(fac[m - 1]):
            m -= 1
    # combing can stall behind a factor that became trivial; sweep to a fixed point
    changed = True
    while changed:
        changed = False
        for t in range(m - 1):
            if left_weight(fac[t], fac[t + 1]):
                changed = True
        while m > 0 and is_identity(fac[m - 1]):
            m -= 1
    start = 0
    while start < m and is_delta(fac[start]):
        start += 1
    return inf + start, fac[start:m].copy()


@kernel
def permutation_of(letters, n):
    """Position map of a braid word: entry ``p`` is where strand ``p`` ends."""
    at = np.arange(n)  # at[pos] = strand currently at pos
    for j in range(letters.shape[0]):
        i = abs(letters[j]) - 1
        tmp = at[i]
        at[i] = at[i + 1]
        at[i + 1] = tmp
    out = np.empty(n, np.int64)
    for pos in range(n):
        out[at[pos]] = pos
    return out
