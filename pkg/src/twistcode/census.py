"""Exhaustive (k, d) censuses over F_q^{n x n} and the table of named examples.

Matrix index i in [0, q^(n^2)) encodes A row-major with entry t equal to
digit t of i in base q (least significant first).  Iteration follows the
index, and each bucket keeps the lowest index as its witness.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import config
from .code import code_build, code_params_array
from .families import sylvester
from .field import FieldSpec, gf
from .matrix import Mat


class CensusBudgetError(ValueError):
    pass


def index_to_array(idx: int, q: int, n: int) -> np.ndarray:
    digits = np.empty(n * n, dtype=np.int64)
    for t in range(n * n):
        idx, digits[t] = divmod(idx, q)
    return digits.reshape(n, n)


def index_to_matrix(idx: int, F: FieldSpec, n: int) -> Mat:
    return Mat(F, index_to_array(idx, F.q, n), check=False)


def _tally(args) -> dict:
    q, n, a, start, stop, budget = args
    F = gf(q)
    a = F(a)
    N = n * n
    out: dict[tuple[int, int], list[int]] = {}
    # odometer over matrix entries, seeded at `start`
    digits = index_to_array(start, q, n).reshape(-1).copy()
    for idx in range(start, stop):
        k, d, _ = code_params_array(F, digits.reshape(n, n), a, budget)
        slot = out.get((k, d))
        if slot is None:
            out[(k, d)] = [1, idx]
        else:
            slot[0] += 1
        t = 0
        while t < N:
            digits[t] += 1
            if digits[t] < q:
                break
            digits[t] = 0
            t += 1
    return out


def merge_tallies(parts) -> dict:
    """Sum counts, keep the smallest witness index; independent of part order."""
    merged: dict[tuple[int, int], list[int]] = {}
    for part in parts:
        for key, (count, witness) in part.items():
            slot = merged.get(key)
            if slot is None:
                merged[key] = [count, witness]
            else:
                slot[0] += count
                slot[1] = min(slot[1], witness)
    return merged


@dataclass
class CensusReport:
    q: int
    n: int
    a: int
    total: int
    buckets: dict = dc_field(default_factory=dict)  # (k, d) -> [count, witness index]
    wall_clock: float = 0.0

    def counts(self) -> dict[tuple[int, int], int]:
        return {key: v[0] for key, v in sorted(self.buckets.items())}

    def witness(self, k: int, d: int) -> Mat:
        return index_to_matrix(self.buckets[(k, d)][1], gf(self.q), self.n)

    def to_json(self, witnesses: bool = True) -> dict:
        buckets = []
        for (k, d), (count, widx) in sorted(self.buckets.items()):
            entry = {"k": k, "d": d, "count": count}
            if witnesses:
                entry["witness"] = index_to_array(widx, self.q, self.n).tolist()
            buckets.append(entry)
        return {"meta": {"q": self.q, "n": self.n, "a": self.a, "total": self.total}, "buckets": buckets}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "d", "count", "witness_index"])
        for (k, d), (count, widx) in sorted(self.buckets.items()):
            w.writerow([k, d, count, widx])
        return buf.getvalue()


def run_census(
    q: int,
    n: int,
    a: int,
    jobs: int = 1,
    budget: int = config.DEFAULT_CENSUS_BUDGET,
    distance_budget: int | None = None,
    stripes: int | None = None,
) -> CensusReport:
    """Parameters (k, d) of C(A, a) for every A in F_q^{n x n}, tallied.

    Zero codes are tallied with d = n^2.  Work is split into contiguous
    index stripes (processed by ``jobs`` worker processes when jobs > 1)
    and merged at the end.
    """
    F = gf(q)
    total = q ** (n * n)
    if total > budget:
        raise CensusBudgetError(f"{q}^{n * n} = {total} matrices exceed the census budget {budget}")
    a_el = F(a)
    stripes = stripes or max(1, jobs * 4)
    bounds = np.linspace(0, total, stripes + 1).astype(np.int64)
    work = [(q, n, a_el, int(bounds[i]), int(bounds[i + 1]), distance_budget) for i in range(stripes) if bounds[i] < bounds[i + 1]]
    t0 = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            parts = list(ex.map(_tally, work))
    else:
        parts = [_tally(w) for w in work]
    merged = merge_tallies(parts)
    report = CensusReport(q, n, a_el, total, merged, time.perf_counter() - t0)
    if sum(v[0] for v in merged.values()) != total:
        raise AssertionError("census tally does not cover the matrix space")
    return report


# -- named examples -----------------------------------------------------------------

NAMED_EXAMPLES = [
    ("F3 n=4 A1", 3, -1, [[0, 0, 0, 1], [0, 0, 2, 0], [1, 0, 1, 0], [1, 2, 0, 1]], (16, 2, 12)),
    ("F3 n=4 A2", 3, -1, [[0, 0, 1, 1], [0, 1, 1, 2], [2, 2, 1, 1], [1, 0, 0, 2]], (16, 3, 10)),
    ("F3 n=4 A3", 3, -1, [[0, 1, 1, 1], [2, 0, 1, 2], [2, 1, 2, 0], [1, 1, 0, 2]], (16, 4, 9)),
    ("F3 n=4 A4", 3, -1, [[2, 1, 2, 2], [2, 1, 2, 2], [2, 1, 2, 2], [1, 2, 1, 1]], (16, 10, 4)),
    ("F5 n=2 A", 5, 2, [[1, 1], [4, 4]], (4, 2, 3)),
    ("F5 n=3 A1", 5, 2, [[0, 1, 1], [1, 1, 0], [2, 0, 3]], (9, 2, 7)),
    ("F5 n=3 A2", 5, 2, [[0, 1, 1], [1, 0, 2], [2, 1, 0]], (9, 3, 6)),
    ("F5 n=3 A3", 5, 2, [[1, 1, 1], [1, 1, 1], [3, 3, 3]], (9, 5, 4)),
    ("F5 n=4 A1", 5, 2, [[0, 0, 0, 1], [0, 0, 4, 0], [3, 2, 2, 2], [4, 3, 4, 4]], (16, 2, 13)),
    ("F5 n=4 A2", 5, 2, [[0, 0, 0, 1], [0, 0, 4, 0], [3, 2, 2, 4], [3, 3, 1, 2]], (16, 3, 12)),
]


def named_example_matrices() -> list[tuple[str, Mat, int, tuple]]:
    out = []
    for label, q, a, rows, expected in NAMED_EXAMPLES:
        F = gf(q)
        out.append((label, Mat.from_rows(F, rows), F(a), expected))
    for q in (3, 5):
        F = gf(q)
        out.append((f"H4 over F{q}", sylvester(2, F), F(-1), (16, 8, 4)))
    return out


def verify_named_examples() -> list[dict]:
    """One row per named example: expected vs computed [N, k, d]."""
    rows = []
    for label, A, a, expected in named_example_matrices():
        params = code_build(A, a).min_distance()
        got = params.triple
        rows.append({
            "label": label,
            "q": A.field.q,
            "a": a,
            "expected": list(expected),
            "got": list(got),
            "status": params.status,
            "pass": got == expected and params.status == "exact",
        })
        if label == "F5 n=2 A":
            N, k, d = got
            rows.append({
                "label": "F5 n=2 A is MDS",
                "q": A.field.q,
                "a": a,
                "expected": [N + 1],
                "got": [k + d],
                "status": params.status,
                "pass": k + d == N + 1,
            })
    return rows


def verify_theorem_suite(seed: int = config.DEFAULT_SEED, trials: int = 1000, sweeps: bool = True) -> list[dict]:
    from .suite import run_suite

    return run_suite(seed=seed, trials=trials, sweeps=sweeps)
