"""Time the compiled and pure-Python kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--sizes 2001,20001,200001] [--repeat 5]

Prints one line per (kernel, size, backend) with the best wall time and the
speed-up of the compiled backend.
"""
import argparse
import timeit

import numpy as np

from pgcurves import kernels


def cases(n):
    s = np.linspace(1.0, 5.0, n)
    h = s[1] - s[0]
    mid = s[:-1] + 0.5 * h
    f = np.sin(s) * np.exp(-s)
    yield "cumulative_simpson", lambda: kernels.cumulative_simpson(f, h)
    yield "rk4_msystem", lambda: kernels.rk4_msystem(
        s[0], h, 1.0 / s, 1.0 / mid, -2.0 / s, -2.0 / mid, 0.0, 1.0 / 3.0, 2.0 / 3.0)
    yield "stencil_derivative", lambda: kernels.stencil_derivative(f, h, 2)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="2001,20001,200001")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(v) for v in args.sizes.split(",")]
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python backend only")
    previous = kernels.backend()
    print(f"{'kernel':<20} {'n':>8} {'backend':<8} {'best [ms]':>10} {'speed-up':>9}")
    try:
        for n in sizes:
            for name, fn in cases(n):
                times = {}
                for b in backends:
                    kernels.use_backend(b)
                    number = max(1, 20000 // n)
                    times[b] = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
                for b in backends:
                    ratio = times["python"] / times[b] if "python" in times else float("nan")
                    print(f"{name:<20} {n:>8} {b:<8} {1e3 * times[b]:>10.3f} {ratio:>8.1f}x")
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
