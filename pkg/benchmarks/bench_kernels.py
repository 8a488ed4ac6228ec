"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--skip-census]

Each row reports the best of ``--repeat`` runs per backend and the speedup.
The census rows run in subprocesses with TWISTCODE_PURE set accordingly.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from twistcode import _kernels_py, families
from twistcode.code import _steps, parity_check_array, projective_count
from twistcode.field import gf
from twistcode.matrix import kernel_array

try:
    from twistcode import _kernels as compiled
except ImportError:  # pragma: no cover
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def weight_case(q, A, a):
    F = gf(q)
    H = parity_check_array(F, A.data, F(a))
    G = kernel_array(F, H)
    args = (G, _steps(F, G), F.q, F.p, F.add_table if F.m > 1 else None, F.mul_table if F.m > 1 else None,
            projective_count(F.q, G.shape[0]))
    return args


def census_time(pure: bool, q: int, n: int) -> float:
    env = dict(os.environ, TWISTCODE_PURE="1" if pure else "0")
    code = f"import time; from twistcode.census import run_census; t=time.perf_counter(); run_census({q}, {n}, -1); print(time.perf_counter()-t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-census", action="store_true")
    args = ap.parse_args(argv)
    if compiled is None:
        sys.exit("compiled kernels not built; run: python3 setup.py build_ext --inplace")

    H30 = parity_check_array(gf(10007), families.an_matrix(30, gf(10007)).data, 10006)
    rng = np.random.default_rng(0)
    R200 = rng.integers(0, 3, (200, 200)).astype(np.int64)
    cases = [
        ("rank_modp 900x900 (A_30 map, p=10007)", lambda k: k.rank_modp(H30, 10007)),
        ("rref_modp 200x200 random (p=3)", lambda k: k.rref_modp(R200, 3)),
    ]
    w_h4 = weight_case(3, families.sylvester(2, gf(3)), -1)
    w_f3 = weight_case(3, families.all_ones(4, gf(3)), 2)
    w_f4 = weight_case(4, families.all_ones(3, gf(4)), 2)
    cases += [
        ("weights C(H_4,-1)/GF(3), 3280 classes", lambda k: k.projective_weights(*w_h4)),
        ("weights C(J_4,2)/GF(3), k=9", lambda k: k.projective_weights(*w_f3)),
        ("weights C(J_3,2)/GF(4), table path", lambda k: k.projective_weights(*w_f4)),
    ]
    print(f"{'kernel':46s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn in cases:
        tc = best_of(lambda: fn(compiled), args.repeat)
        tp = best_of(lambda: fn(_kernels_py), args.repeat)
        print(f"{name:46s} {tc * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tc:7.1f}x")
    if not args.skip_census:
        for q, n in ((3, 2), (3, 3)):
            tc, tp = census_time(False, q, n), census_time(True, q, n)
            name = f"census q={q} n={n} a=-1 (end to end)"
            print(f"{name:46s} {tc * 1e3:9.0f}ms {tp * 1e3:9.0f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
