"""Compare the numba and numpy kernel lanes on representative workloads.

Times the two hot elimination kernels and the modular matrix product on the
kind of structured matrices the tower actually produces, plus one end-to-end
primitive computation.  Results are checked equal across lanes before any
timing is reported.

Run:  python benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from braidrank import GF, RATIONALS, make_flip
from braidrank.bialgebra import free_truncated, primitives
from braidrank import _accel
from braidrank.shuffle import delta_component


def structured_int_matrix(n: int, d: int) -> np.ndarray:
    """Rows of the degree-d flip coproduct stack: 0/1 sums, rank-deficient."""
    space = make_flip(n, RATIONALS)
    blocks = [delta_component(space, i, d - i).num for i in range(1, d)]
    return np.ascontiguousarray(np.vstack(blocks), dtype=np.int64)


def bench(label, fn, repeats):
    fn()  # warmup (includes JIT compilation on the numba lane)
    best = min(timed(fn) for _ in range(repeats))
    print(f"    {label:<38} {best * 1000:9.2f} ms")
    return best


def timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    stack = structured_int_matrix(3, 5)
    rng = np.random.default_rng(7)
    mod_mat = rng.integers(0, 13, size=(400, 500)).astype(np.int64)
    mm_a = rng.integers(0, 13, size=(350, 350)).astype(np.int64)
    mm_b = rng.integers(0, 13, size=(350, 350)).astype(np.int64)

    lanes = ["numpy"]
    if _accel.active_lane() == "numba":
        lanes.insert(0, "numba")
    else:
        print("numba unavailable or disabled; benchmarking the numpy lane only")

    results = {}
    timings = {}
    for lane in lanes:
        _accel.set_lane(lane)
        print(f"lane: {lane}")
        results[lane] = (
            _accel.rref_frac(stack),
            _accel.rref_mod(mod_mat, 13),
            _accel.matmul_mod(mm_a, mm_b, 13),
        )
        timings[lane] = {
            "rref_frac (flip coproduct stack)": bench(
                "rref_frac (flip coproduct stack)", lambda: _accel.rref_frac(stack), args.repeats
            ),
            "rref_mod p=13 (400x500)": bench(
                "rref_mod p=13 (400x500)", lambda: _accel.rref_mod(mod_mat, 13), args.repeats
            ),
            "matmul_mod p=13 (350x350)": bench(
                "matmul_mod p=13 (350x350)", lambda: _accel.matmul_mod(mm_a, mm_b, 13), args.repeats
            ),
            "primitives(free flip n=3, D=5)": bench(
                "primitives(free flip n=3, D=5)",
                lambda: primitives(free_truncated(make_flip(3, RATIONALS), 5), 5),
                args.repeats,
            ),
        }

    if len(lanes) == 2:
        a, b = results["numba"], results["numpy"]
        frac_same = (
            np.array_equal(a[0][0], b[0][0])
            and np.array_equal(a[0][1], b[0][1])
            and list(a[0][2]) == list(b[0][2])
        )
        mod_same = np.array_equal(a[1][0], b[1][0]) and list(a[1][1]) == list(b[1][1])
        same = frac_same and mod_same and np.array_equal(a[2], b[2])
        print(f"lanes agree exactly: {same}")
        print("speedup (numpy / numba):")
        for key in timings["numba"]:
            ratio = timings["numpy"][key] / timings["numba"][key]
            print(f"    {key:<38} {ratio:6.2f}x")
        if not same:
            raise SystemExit("lane results diverged; this is a bug")

    _accel.set_lane(lanes[0])


if __name__ == "__main__":
    main()
