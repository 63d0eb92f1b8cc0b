"""Time the numba and numpy GF(2) elimination kernels on the same inputs.

    python3 benchmarks/bench_gf2.py [--repeat 5]

Inputs: the top coboundary of the obstruction complex for n = 3
(420 x 1680) and random dense matrices.  The numba kernel is compiled
once before timing.
"""

import argparse
import time

import numpy as np

from vklink import _kernels
from vklink import deleted_product as dp
from vklink._jit import JIT_ENABLED
from vklink.obstruction import vk_complex
from vklink.z2linalg import pack_rows


def best_of(fn, data, ncols, repeat):
    times = []
    for _ in range(repeat):
        work = data.copy()
        t0 = time.perf_counter()
        r, _ = fn(work, ncols)
        times.append(time.perf_counter() - t0)
    return min(times), int(r)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    cases = [("coboundary n=3", dp.build(vk_complex(3)).delta_top.data, 1680)]
    for r, c in [(500, 500), (1500, 1500), (3000, 3000)]:
        cases.append((f"random {r}x{c}", pack_rows(rng.integers(0, 2, size=(r, c), dtype=np.uint8)), c))

    if JIT_ENABLED:
        _kernels._eliminate_jit(cases[0][1].copy(), cases[0][2])
    print(f"{'case':<20}{'rank':>8}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for name, data, ncols in cases:
        t_np, r_np = best_of(_kernels._eliminate_numpy, data, ncols, args.repeat)
        if JIT_ENABLED:
            t_jit, r_jit = best_of(_kernels._eliminate_jit, data, ncols, args.repeat)
            assert r_jit == r_np
            print(f"{name:<20}{r_np:>8}{t_np:>12.4f}{t_jit:>12.4f}{t_np / t_jit:>10.1f}")
        else:
            print(f"{name:<20}{r_np:>8}{t_np:>12.4f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()
