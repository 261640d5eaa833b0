"""Compare the compiled THD kernel against the pure-Python twin.

The workload is the provisioning inner loop: all 18 inverters of one
device evaluated over the full 256-challenge region schedule (4608
region evaluations per pass). Both backends are called directly so one
process measures both; results are checked bit-identical first.

Usage: python benchmarks/bench_kernels.py [--passes N]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from puftank.kernels import compiled_thd_regions, pure_thd_regions
from puftank.puf.device import synthesize_device
from puftank.puf.lut import _all_regions
from puftank.puf.thd import COS_TABLE, _COS_LISTS


def bench(fn, repeats: int, *args) -> list[float]:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return times


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--passes", type=int, default=20,
                        help="timed passes per backend (default 20)")
    args = parser.parse_args()

    device = synthesize_device(0xBE5C)
    idx, lo, hi = _all_regions(device.v_dd)
    n = len(lo)
    out_pure = np.empty(n)
    out_compiled = np.empty(n)

    curves_lists = device.curves_as_lists()
    idx_list = list(int(i) for i in idx)
    lo_list = list(map(float, lo))
    hi_list = list(map(float, hi))

    pure_thd_regions(curves_lists, idx_list, lo_list, hi_list,
                     device.v_dd, _COS_LISTS, out_pure)

    if compiled_thd_regions is None:
        print("compiled backend not importable; nothing to compare")
        print(f"pure pass over {n} regions: "
              f"{min(bench(pure_thd_regions, args.passes, curves_lists, idx_list, lo_list, hi_list, device.v_dd, _COS_LISTS, out_pure)) * 1e3:.2f} ms (best)")
        return

    compiled_thd_regions(device.curves, np.ascontiguousarray(idx, dtype=np.int64),
                         lo, hi, device.v_dd, COS_TABLE, out_compiled)
    max_diff = float(np.max(np.abs(out_pure - out_compiled)))
    print(f"bit-identity check over {n} regions: max |pure - compiled| = {max_diff}")
    if max_diff != 0.0:
        raise SystemExit("backends disagree; benchmark numbers would be meaningless")

    t_pure = bench(pure_thd_regions, args.passes, curves_lists, idx_list,
                   lo_list, hi_list, device.v_dd, _COS_LISTS, out_pure)
    idx64 = np.ascontiguousarray(idx, dtype=np.int64)
    t_comp = bench(compiled_thd_regions, args.passes, device.curves, idx64,
                   lo, hi, device.v_dd, COS_TABLE, out_compiled)

    best_pure, best_comp = min(t_pure), min(t_comp)
    print(f"pure:     best {best_pure * 1e3:8.2f} ms   "
          f"median {statistics.median(t_pure) * 1e3:8.2f} ms")
    print(f"compiled: best {best_comp * 1e3:8.2f} ms   "
          f"median {statistics.median(t_comp) * 1e3:8.2f} ms")
    print(f"speedup (best/best): {best_pure / best_comp:.1f}x")


if __name__ == "__main__":
    main()
