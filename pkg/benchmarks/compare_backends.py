"""Time the compiled matrix-scan kernels against the NumPy fallback.

Usage: python3 benchmarks/compare_backends.py [--sizes 200,1000,4000] [--tries 7]

Both backends are imported directly, so the WINMOMENTS_BACKEND variable
has no effect here. The compiled column is skipped with a note when the
extension is not built.
"""

import argparse
import time

import numpy as np

from winmoments._kernels import _py

try:
    from winmoments._kernels import _cy
except ImportError:
    _cy = None


def dense_skew(rng: np.random.Generator, n: int) -> np.ndarray:
    upper = np.triu(rng.integers(0, 2, size=(n, n)) * 2 - 1, 1)
    entries = np.ascontiguousarray(upper - upper.T, dtype=np.int8)
    entries.setflags(write=False)
    return entries


def once(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def best_ms(fn, tries: int) -> float:
    fn()  # warm up
    return min(once(fn) for _ in range(tries)) * 1e3


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,500,1000,2000,4000")
    parser.add_argument("--tries", type=int, default=7)
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]

    rng = np.random.default_rng(2024)
    if _cy is None:
        print("compiled extension not built; timing the NumPy backend only")
    header = f"{'N':>6}  {'numpy_ms':>10}"
    if _cy is not None:
        header += f"  {'compiled_ms':>12}  {'speedup':>8}"
    print(header)
    for n in sizes:
        entries = dense_skew(rng, n)
        arms = np.ascontiguousarray(rng.integers(0, 2, size=n), dtype=np.uint8)
        t_py = best_ms(lambda: _py.summarize(entries, arms), args.tries)
        line = f"{n:>6}  {t_py:>10.3f}"
        if _cy is not None:
            t_cy = best_ms(lambda: _cy.summarize(entries, arms), args.tries)
            line += f"  {t_cy:>12.3f}  {t_py / t_cy:>8.2f}"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
