"""Hot inner loops: numba-jitted kernels with a pure-NumPy fallback.

The JIT path is used whenever numba imports cleanly; set GENUSTAX_NO_NUMBA=1
to force the NumPy fallback. Both paths are kept behaviourally identical and
are cross-checked in tests; benchmarks/bench_kernels.py compares their speed.

All kernels work on integer-encoded words: a definition corpus is a flat
int64 token array plus an offsets array (definition d spans
tokens[offsets[d]:offsets[d+1]]); -1 marks an out-of-vocabulary token.
Word pairs travel as scalar keys a * vocab_size + b with a < b.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("GENUSTAX_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA and not _DISABLED


# ---------------------------------------------------------------------------
# NumPy fallback implementations
# ---------------------------------------------------------------------------

def _def_pair_keys_np(offsets, tokens, vocab_size):
    """Unordered distinct-word pair keys, one per pair per definition."""
    chunks = []
    for d in range(len(offsets) - 1):
        seg = tokens[offsets[d]:offsets[d + 1]]
        uniq = np.unique(seg[seg >= 0])
        if len(uniq) < 2:
            continue
        i, j = np.triu_indices(len(uniq), k=1)
        chunks.append(uniq[i] * vocab_size + uniq[j])
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def _window_pair_keys_np(offsets, tokens, vocab_size, window):
    """Pair keys for co-presence within `window` consecutive tokens.

    A pair is emitted at most once per definition, matching the
    whole-definition mode in the limit window >= definition length.
    """
    chunks = []
    for d in range(len(offsets) - 1):
        seg = tokens[offsets[d]:offsets[d + 1]]
        keys = []
        for lag in range(1, min(window, len(seg))):
            a, b = seg[:-lag], seg[lag:]
            ok = (a >= 0) & (b >= 0) & (a != b)
            lo = np.minimum(a[ok], b[ok])
            hi = np.maximum(a[ok], b[ok])
            keys.append(lo * vocab_size + hi)
        if keys:
            chunks.append(np.unique(np.concatenate(keys)))
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def _pair_sum_np(indptr, indices, data, left, right):
    """Sum of CSR[a, b] over the full cross product of two token lists."""
    total = 0.0
    right = right[right >= 0]
    if len(right) == 0:
        return total
    for a in left:
        if a < 0:
            continue
        lo, hi = indptr[a], indptr[a + 1]
        if lo == hi:
            continue
        row = indices[lo:hi]
        pos = np.searchsorted(row, right)
        ok = (pos < len(row)) & (row[np.minimum(pos, len(row) - 1)] == right)
        total += float(data[lo:hi][pos[ok]].sum())
    return total


def _accumulate_rows_np(indptr, indices, data, tokens, size):
    """Dense sum of CSR rows for a token multiset (repeats accumulate)."""
    out = np.zeros(size, dtype=np.float64)
    for t in tokens:
        if t < 0:
            continue
        lo, hi = indptr[t], indptr[t + 1]
        out[indices[lo:hi]] += data[lo:hi]
    return out


def _file_word_counts_np(offsets, tokens, def_masks, vocab_size, n_files):
    """Per-semantic-file word occurrence counts and token totals.

    def_masks[d] is a bitmask of the files the definition's headword links
    to; definitions with mask 0 contribute nothing.
    """
    counts = np.zeros((vocab_size, n_files), dtype=np.int64)
    totals = np.zeros(n_files, dtype=np.int64)
    for d in range(len(offsets) - 1):
        mask = int(def_masks[d])
        if mask == 0:
            continue
        seg = tokens[offsets[d]:offsets[d + 1]]
        seg = seg[seg >= 0]
        for t in range(n_files):
            if mask >> t & 1:
                totals[t] += len(seg)
                np.add.at(counts[:, t], seg, 1)
    return counts, totals


# ---------------------------------------------------------------------------
# Numba kernels (same contracts as the fallbacks above)
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _def_pair_keys_nb(offsets, tokens, vocab_size):
        bound = 0
        for d in range(len(offsets) - 1):
            m = offsets[d + 1] - offsets[d]
            bound += m * (m - 1) // 2
        out = np.empty(bound, dtype=np.int64)
        k = 0
        for d in range(len(offsets) - 1):
            seg = tokens[offsets[d]:offsets[d + 1]]
            local = np.sort(seg)
            # distinct in-vocabulary words of this definition
            n = 0
            for i in range(len(local)):
                if local[i] < 0:
                    continue
                if n == 0 or local[n - 1] != local[i]:
                    local[n] = local[i]
                    n += 1
            for i in range(n):
                for j in range(i + 1, n):
                    out[k] = local[i] * vocab_size + local[j]
                    k += 1
        return out[:k]

    @njit(cache=True, nogil=True)
    def _window_pair_keys_nb(offsets, tokens, vocab_size, window):
        bound = 0
        for d in range(len(offsets) - 1):
            m = offsets[d + 1] - offsets[d]
            bound += m * (m - 1) // 2
        out = np.empty(bound, dtype=np.int64)
        k = 0
        for d in range(len(offsets) - 1):
            lo, hi = offsets[d], offsets[d + 1]
            start = k
            for i in range(lo, hi):
                if tokens[i] < 0:
                    continue
                for j in range(i + 1, min(i + window, hi)):
                    if tokens[j] < 0 or tokens[j] == tokens[i]:
                        continue
                    a, b = tokens[i], tokens[j]
                    if a > b:
                        a, b = b, a
                    out[k] = a * vocab_size + b
                    k += 1
            if k > start:
                block = np.sort(out[start:k])
                n = start
                for i in range(len(block)):
                    if n == start or out[n - 1] != block[i]:
                        out[n] = block[i]
                        n += 1
                k = n
        return out[:k]

    @njit(cache=True, nogil=True)
    def _pair_sum_nb(indptr, indices, data, left, right):
        total = 0.0
        for ii in range(len(left)):
            a = left[ii]
            if a < 0:
                continue
            lo, hi = indptr[a], indptr[a + 1]
            if lo == hi:
                continue
            for jj in range(len(right)):
                b = right[jj]
                if b < 0:
                    continue
                p, q = lo, hi
                while p < q:
                    mid = (p + q) // 2
                    if indices[mid] < b:
                        p = mid + 1
                    else:
                        q = mid
                if p < hi and indices[p] == b:
                    total += data[p]
        return total

    @njit(cache=True, nogil=True)
    def _accumulate_rows_nb(indptr, indices, data, tokens, size):
        out = np.zeros(size, dtype=np.float64)
        for ii in range(len(tokens)):
            t = tokens[ii]
            if t < 0:
                continue
            for p in range(indptr[t], indptr[t + 1]):
                out[indices[p]] += data[p]
        return out

    @njit(cache=True, nogil=True)
    def _file_word_counts_nb(offsets, tokens, def_masks, vocab_size, n_files):
        counts = np.zeros((vocab_size, n_files), dtype=np.int64)
        totals = np.zeros(n_files, dtype=np.int64)
        for d in range(len(offsets) - 1):
            mask = def_masks[d]
            if mask == 0:
                continue
            for t in range(n_files):
                if mask >> t & 1:
                    for i in range(offsets[d], offsets[d + 1]):
                        if tokens[i] >= 0:
                            counts[tokens[i], t] += 1
                            totals[t] += 1
        return counts, totals


if USING_NUMBA:
    def_pair_keys = _def_pair_keys_nb
    window_pair_keys = _window_pair_keys_nb
    pair_sum = _pair_sum_nb
    accumulate_rows = _accumulate_rows_nb
    file_word_counts = _file_word_counts_nb
else:
    def_pair_keys = _def_pair_keys_np
    window_pair_keys = _window_pair_keys_np
    pair_sum = _pair_sum_np
    accumulate_rows = _accumulate_rows_np
    file_word_counts = _file_word_counts_np
