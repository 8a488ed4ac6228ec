"""Named matrices and the bad-characteristic scan for the A_n / B_n family.

Indices in public constructors are 1-based, matching the usual E_ij notation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .code import parity_check_array
from .field import FieldSpec, field_make, primes_up_to
from .matrix import Mat, kron, matmul_array


def all_ones(n: int, F: FieldSpec) -> Mat:
    return Mat(F, np.ones((n, n), dtype=np.int64), check=False)


def identity(n: int, F: FieldSpec) -> Mat:
    return Mat.identity(F, n)


def unit(i: int, j: int, n: int, F: FieldSpec) -> Mat:
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"unit matrix index ({i}, {j}) outside 1..{n}")
    data = np.zeros((n, n), dtype=np.int64)
    data[i - 1, j - 1] = 1
    return Mat(F, data, check=False)


def ones_plus_id(n: int, F: FieldSpec) -> Mat:
    return all_ones(n, F) + identity(n, F)


def sylvester(k: int, F: FieldSpec) -> Mat:
    """k-fold Kronecker power of [[1, 1], [1, -1]]."""
    if k < 1:
        raise ValueError("Sylvester order exponent must be >= 1")
    if F.p == 2:
        raise ValueError("Sylvester-Hadamard matrices need characteristic != 2")
    h2 = Mat.from_rows(F, [[1, 1], [1, -1]])
    H = h2
    for _ in range(k - 1):
        H = kron(H, h2)
    return H


def an_matrix(n: int, F: FieldSpec) -> Mat:
    """E_{n,1} - E_{n,n} + sum_{i<n} (E_{i,i} - E_{i,i+1})."""
    if n < 2:
        raise ValueError("A_n needs n >= 2")
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i] = 1
        rows[i][i + 1] = -1
    rows[n - 1][0] = 1
    rows[n - 1][n - 1] = -1
    return Mat.from_rows(F, rows)


def bn_matrix(n: int, F: FieldSpec) -> Mat:
    """J_n - 2 sum_i E_{i,n}: all ones except a last column of -1."""
    if n < 2:
        raise ValueError("B_n needs n >= 2")
    return Mat.from_rows(F, [[1] * (n - 1) + [-1] for _ in range(n)])


def cycle_perm(n: int, F: FieldSpec) -> Mat:
    """Permutation matrix P with P e_i = e_{i+1 mod n}."""
    data = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        data[(j + 1) % n, j] = 1
    return Mat(F, data, check=False)


def perm_matrix(sigma, F: FieldSpec) -> Mat:
    """P with P e_j = e_{sigma[j]} (0-based images)."""
    n = len(sigma)
    data = np.zeros((n, n), dtype=np.int64)
    data[list(sigma), list(range(n))] = 1
    return Mat(F, data, check=False)


def from_graph(adjacency, F: FieldSpec) -> Mat:
    """Reinterpret a simple-graph 0/1 adjacency matrix over F."""
    adj = np.array(adjacency.data if isinstance(adjacency, Mat) else adjacency, dtype=np.int64)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency matrix must be square")
    if not np.isin(adj, (0, 1)).all():
        raise ValueError("adjacency entries must be 0 or 1")
    if not np.array_equal(adj, adj.T):
        raise ValueError("adjacency matrix must be symmetric")
    if np.diag(adj).any():
        raise ValueError("simple graphs have zero diagonal")
    return Mat(F, adj, check=False)


def path_graph(n: int, F: FieldSpec) -> Mat:
    adj = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        adj[i, i + 1] = adj[i + 1, i] = 1
    return from_graph(adj, F)


def complete_graph(n: int, F: FieldSpec) -> Mat:
    return from_graph(np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64), F)


# -- bad characteristics ----------------------------------------------------------


@dataclass
class BadPrimeReport:
    n: int
    prime_bound: int
    bad: list
    examined: int
    note: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "prime_bound": self.prime_bound,
            "bad": self.bad,
            "count": len(self.bad),
            "examined": self.examined,
            "note": self.note,
        }


def twisted_dim_an(n: int, p: int) -> int:
    """dim C(A_n, -1) over GF(p); for dimension 1, also checks the code is <B_n>."""
    F = field_make(p)
    A = an_matrix(n, F)
    H = parity_check_array(F, A.data, F(-1))
    dim = n * n - int(_backend.rank_modp(H, p))
    if dim == 1:
        # B_n is a nonzero codeword, so a 1-dimensional code is exactly <B_n>
        B = bn_matrix(n, F).data
        syn = F.vadd(matmul_array(F, A.data, B), matmul_array(F, B, A.data))
        if syn.any():
            raise AssertionError(f"B_{n} is not in C(A_{n}, -1) over GF({p})")
    return dim


def _scan_chunk(args):
    n, primes = args
    return [(p, twisted_dim_an(n, p)) for p in primes]


def bad_prime_scan(n: int, prime_bound: int = 10**4, jobs: int = 1) -> BadPrimeReport:
    """Primes p <= prime_bound with dim C(A_n, -1) > 1 over GF(p)."""
    if n < 2 or prime_bound < 2:
        raise ValueError("bad_prime_scan needs n >= 2 and prime_bound >= 2")
    primes = primes_up_to(prime_bound)
    if jobs > 1 and len(primes) > 1:
        chunks = [primes[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            results = [r for part in ex.map(_scan_chunk, [(n, c) for c in chunks]) for r in part]
    else:
        results = _scan_chunk((n, primes))
    bad = sorted(p for p, dim in results if dim > 1)
    return BadPrimeReport(
        n, prime_bound, bad, len(primes),
        f"primes above {prime_bound} were not examined",
    )
