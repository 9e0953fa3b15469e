"""Compiled kernels for the brute-force plactic histogram.

A tableau is held as a count matrix ``C[i, j]`` = number of letters j+1 in row i.
Row insertion is a pipeline: each row consumes a stream of letters and emits
the stream of bumped letters, so a whole word can be pushed through one row at a
time.  A run of k copies of x entering a row bumps the k leftmost entries > x,
which leave in increasing order; with run-length streams every product costs
O(n^4) regardless of tableau sizes.

numba is used when importable; the pure-Python versions compute the same thing.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
except ImportError:  # pragma: no cover
    numba = None


def _enumerate_patterns_py(lam: np.ndarray, count: int) -> np.ndarray:
    n = lam.shape[0]
    length = n * (n - 1) // 2
    out = np.zeros((count, n, n), dtype=np.int64)
    p = np.zeros((n, n), dtype=np.int64)
    p[0, :n] = lam
    rows = np.zeros(length, dtype=np.int64)
    cols = np.zeros(length, dtype=np.int64)
    k = 0
    for r in range(1, n):
        for i in range(n - r):
            rows[k] = r
            cols[k] = i
            k += 1
    for k in range(length):
        p[rows[k], cols[k]] = p[rows[k] - 1, cols[k] + 1]
    idx = 0
    while True:
        out[idx] = p
        idx += 1
        k = length - 1
        while k >= 0 and p[rows[k], cols[k]] == p[rows[k] - 1, cols[k]]:
            k -= 1
        if k < 0:
            break
        p[rows[k], cols[k]] += 1
        for j in range(k + 1, length):
            p[rows[j], cols[j]] = p[rows[j] - 1, cols[j] + 1]
    if idx != count:
        raise AssertionError("pattern count mismatch")
    return out


def _patterns_to_counts_py(pats: np.ndarray) -> np.ndarray:
    # pattern row r has length n - r and holds a_{n-r}(i+1) at column i
    d, n, _ = pats.shape
    out = np.zeros((d, n, n), dtype=np.int64)
    for t in range(d):
        for i in range(n):
            prev = 0
            for l in range(i + 1, n + 1):
                a = pats[t, n - l, i]
                out[t, i, l - 1] = a - prev
                prev = a
    return out


def _product_shape_py(s_counts: np.ndarray, t_counts: np.ndarray, n: int) -> np.ndarray:
    rows = s_counts.copy()
    # reading word of T as runs: bottom row first, letters ascending
    letters = []
    mult = []
    for i in range(n - 1, -1, -1):
        for j in range(n):
            c = t_counts[i, j]
            if c > 0:
                letters.append(j)
                mult.append(c)
    for r in range(n):
        out_letters = []
        out_mult = []
        for x, k in zip(letters, mult):
            left = k
            for y in range(x + 1, n):
                if left == 0:
                    break
                b = rows[r, y] if rows[r, y] < left else left
                if b > 0:
                    rows[r, y] -= b
                    left -= b
                    if out_letters and out_letters[-1] == y:
                        out_mult[-1] += b
                    else:
                        out_letters.append(y)
                        out_mult.append(b)
            rows[r, x] += k
        letters, mult = out_letters, out_mult
        if not letters:
            break
    if letters:
        raise AssertionError("a letter was bumped below row n")
    return rows.sum(axis=1)


def _histogram_keys_py(s_all: np.ndarray, t_all: np.ndarray, n: int, base: int) -> np.ndarray:
    keys = np.zeros(s_all.shape[0] * t_all.shape[0], dtype=np.int64)
    idx = 0
    for a in range(s_all.shape[0]):
        for b in range(t_all.shape[0]):
            shape = _product_shape_py(s_all[a], t_all[b], n)
            key = 0
            for i in range(n - 1):
                key = key * base + shape[i]
            keys[idx] = key
            idx += 1
    return keys


if numba is not None:

    @numba.njit(cache=True)
    def _enumerate_patterns_nb(lam, count):
        n = lam.shape[0]
        length = n * (n - 1) // 2
        out = np.zeros((count, n, n), dtype=np.int64)
        p = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            p[0, i] = lam[i]
        rows = np.zeros(length, dtype=np.int64)
        cols = np.zeros(length, dtype=np.int64)
        k = 0
        for r in range(1, n):
            for i in range(n - r):
                rows[k] = r
                cols[k] = i
                k += 1
        for k in range(length):
            p[rows[k], cols[k]] = p[rows[k] - 1, cols[k] + 1]
        idx = 0
        while True:
            if idx >= count:
                return out[:0]
            out[idx] = p
            idx += 1
            k = length - 1
            while k >= 0 and p[rows[k], cols[k]] == p[rows[k] - 1, cols[k]]:
                k -= 1
            if k < 0:
                break
            p[rows[k], cols[k]] += 1
            for j in range(k + 1, length):
                p[rows[j], cols[j]] = p[rows[j] - 1, cols[j] + 1]
        if idx != count:
            return out[:0]
        return out

    @numba.njit(cache=True)
    def _patterns_to_counts_nb(pats):
        d, n, _ = pats.shape
        out = np.zeros((d, n, n), dtype=np.int64)
        for t in range(d):
            for i in range(n):
                prev = 0
                for l in range(i + 1, n + 1):
                    a = pats[t, n - l, i]
                    out[t, i, l - 1] = a - prev
                    prev = a
        return out

    @numba.njit(cache=True)
    def _histogram_keys_nb(s_all, t_all, n, base):
        ds = s_all.shape[0]
        dt = t_all.shape[0]
        keys = np.zeros(ds * dt, dtype=np.int64)
        cap = n * n
        for i in range(n):
            cap *= n
        cap = max(cap * n, 64)
        in_l = np.zeros(cap, dtype=np.int64)
        in_m = np.zeros(cap, dtype=np.int64)
        out_l = np.zeros(cap, dtype=np.int64)
        out_m = np.zeros(cap, dtype=np.int64)
        t_l = np.zeros(cap, dtype=np.int64)
        t_m = np.zeros(cap, dtype=np.int64)
        rows = np.zeros((n, n), dtype=np.int64)
        idx = 0
        for b in range(dt):
            t_len = 0
            for i in range(n - 1, -1, -1):
                for j in range(n):
                    c = t_all[b, i, j]
                    if c > 0:
                        t_l[t_len] = j
                        t_m[t_len] = c
                        t_len += 1
            for a in range(ds):
                for i in range(n):
                    for j in range(n):
                        rows[i, j] = s_all[a, i, j]
                n_in = t_len
                for q in range(t_len):
                    in_l[q] = t_l[q]
                    in_m[q] = t_m[q]
                for r in range(n):
                    n_out = 0
                    for q in range(n_in):
                        x = in_l[q]
                        k = in_m[q]
                        left = k
                        for y in range(x + 1, n):
                            if left == 0:
                                break
                            bmp = rows[r, y]
                            if bmp > left:
                                bmp = left
                            if bmp > 0:
                                rows[r, y] -= bmp
                                left -= bmp
                                if n_out > 0 and out_l[n_out - 1] == y:
                                    out_m[n_out - 1] += bmp
                                else:
                                    out_l[n_out] = y
                                    out_m[n_out] = bmp
                                    n_out += 1
                        rows[r, x] += k
                    for q in range(n_out):
                        in_l[q] = out_l[q]
                        in_m[q] = out_m[q]
                    n_in = n_out
                    if n_in == 0:
                        break
                if n_in != 0:
                    keys[idx] = -1
                else:
                    key = 0
                    for i in range(n - 1):
                        s = 0
                        for j in range(n):
                            s += rows[i, j]
                        key = key * base + s
                    keys[idx] = key
                idx += 1
        return keys


def enumerate_count_matrices(lam, count: int, compiled: bool = True) -> np.ndarray:
    """Count matrices of every tableau of shape ``lam`` (``count`` must be its dimension)."""
    arr = np.asarray(lam, dtype=np.int64)
    if compiled and numba is not None:
        pats = _enumerate_patterns_nb(arr, count)
        if pats.shape[0] != count:
            raise AssertionError("pattern count mismatch")
        return _patterns_to_counts_nb(pats)
    return _patterns_to_counts_py(_enumerate_patterns_py(arr, count))


def histogram_keys(s_all: np.ndarray, t_all: np.ndarray, n: int, base: int,
                   compiled: bool = True) -> np.ndarray:
    """Encoded shapes of S·T for every pair; key = first n-1 row lengths in radix ``base``."""
    if compiled and numba is not None:
        keys = _histogram_keys_nb(s_all, t_all, n, base)
        if keys.size and keys.min() < 0:
            raise AssertionError("a letter was bumped below row n")
        return keys
    return _histogram_keys_py(s_all, t_all, n, base)
