#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-NumPy fallbacks.

Synthesizes a dictionary-scale workload (definition corpus + cooccurrence
CSR) and times each kernel on both paths. The JIT path gets a warmup call
so compile time is not billed to the measurement.

    python3 benchmarks/bench_kernels.py [--defs 50000] [--vocab 20000] [--repeat 5]
"""

import argparse
import statistics
import time

import numpy as np

from genustax import _kernels


def make_corpus(rng, n_defs, vocab, avg_len):
    lengths = rng.poisson(avg_len, size=n_defs).clip(1)
    offsets = np.zeros(n_defs + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    # zipf-ish skew so the pair distribution resembles real definition text
    tokens = rng.zipf(1.3, size=int(offsets[-1])) % vocab
    return offsets, tokens.astype(np.int64)


def make_csr(rng, vocab, avg_degree):
    degrees = rng.poisson(avg_degree, size=vocab).clip(1)
    indptr = np.zeros(vocab + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    indices = np.sort(
        rng.integers(0, vocab, size=int(indptr[-1])).astype(np.int64).reshape(-1)
    )
    # per-row sorted columns
    for row in range(vocab):
        lo, hi = indptr[row], indptr[row + 1]
        indices[lo:hi] = np.sort(indices[lo:hi])
    data = rng.random(int(indptr[-1]))
    return indptr, indices, data


def bench(label, fn, args, repeat):
    fn(*args)  # warmup (JIT compile on the numba path)
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    best = min(times)
    spread = statistics.pstdev(times)
    print(f"  {label:<10} {best * 1e3:9.2f} ms  (±{spread * 1e3:.2f})")
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--defs", type=int, default=50_000)
    parser.add_argument("--vocab", type=int, default=20_000)
    parser.add_argument("--avg-len", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba unavailable: nothing to compare")

    rng = np.random.default_rng(20240817)
    offsets, tokens = make_corpus(rng, args.defs, args.vocab, args.avg_len)
    indptr, indices, data = make_csr(rng, args.vocab, avg_degree=30)
    queries = rng.integers(0, args.vocab, size=(200, 10)).astype(np.int64)

    print(
        f"corpus: {args.defs} definitions, {len(tokens)} tokens, "
        f"vocab {args.vocab}; csr nnz {len(indices)}"
    )

    pairs = [
        ("def_pair_keys", _kernels._def_pair_keys_nb, _kernels._def_pair_keys_np,
         (offsets, tokens, args.vocab)),
        ("window_pairs", _kernels._window_pair_keys_nb, _kernels._window_pair_keys_np,
         (offsets, tokens, args.vocab, 7)),
        ("accum_rows", _kernels._accumulate_rows_nb, _kernels._accumulate_rows_np,
         (indptr, indices, data, tokens[:5000], args.vocab)),
        ("file_counts", _kernels._file_word_counts_nb, _kernels._file_word_counts_np,
         (offsets, tokens,
          rng.integers(0, 2**25, size=args.defs).astype(np.int64), args.vocab, 25)),
    ]
    for name, nb, np_, kargs in pairs:
        print(f"{name}:")
        t_nb = bench("numba", nb, kargs, args.repeat)
        t_np = bench("numpy", np_, kargs, args.repeat)
        print(f"  {'speedup':<10} {t_np / t_nb:9.1f} x")

    # pair_sum is called once per (hyponym, candidate); time a batch of queries
    def batch_nb():
        total = 0.0
        for row in queries:
            total += _kernels._pair_sum_nb(indptr, indices, data, row, row[::-1])
        return total

    def batch_np():
        total = 0.0
        for row in queries:
            total += _kernels._pair_sum_np(indptr, indices, data, row, row[::-1])
        return total

    print("pair_sum (200 scoring queries):")
    t_nb = bench("numba", lambda: batch_nb(), (), args.repeat)
    t_np = bench("numpy", lambda: batch_np(), (), args.repeat)
    print(f"  {'speedup':<10} {t_np / t_nb:9.1f} x")


if __name__ == "__main__":
    main()
