"""Seeded property checks across all modules, run by ``twistcode verify``.

Each check returns ``(passed, detail)``; :func:`run_suite` collects them into
machine-readable rows.  Exhaustive scans ignore ``trials``.
"""

from __future__ import annotations

import itertools
import numpy as np

from . import bounds, families, poly
from .census import index_to_array, merge_tallies, run_census, _tally
from .code import code_build, code_params_array
from .field import FieldSpec, gf
from .matrix import (
    Mat,
    charpoly,
    kernel_basis,
    kron,
    mat_mul,
    poly_at_matrix,
    rank,
    rank_array,
    unvec,
    vec,
)
from . import symmetry


def _rand_mat(rng, F: FieldSpec, rows: int, cols: int | None = None) -> Mat:
    return Mat(F, rng.integers(0, F.q, (rows, rows if cols is None else cols)), check=False)


def _all_mats(F: FieldSpec, n: int):
    for idx in range(F.q ** (n * n)):
        yield Mat(F, index_to_array(idx, F.q, n), check=False)


def _codewords(code, limit: int | None = None):
    """All codewords (if q^k <= limit) as Mats."""
    F, k = code.field, code.k
    if limit is not None and F.q**k > limit:
        return None
    out = []
    for msg in itertools.product(range(F.q), repeat=k):
        out.append(code.encode(msg) if k else Mat.zeros(F, code.n))
    return out


def _is_invertible(B: Mat) -> bool:
    return rank(B) == B.rows


# -- field -------------------------------------------------------------------------


def check_field_axioms(rng, trials):
    for q in (2, 3, 4, 5, 7, 8, 9, 25):
        F = gf(q)
        xs = rng.integers(0, q, (trials, 3))
        for a, b, c in xs.tolist():
            if F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)):
                return False, f"mul not associative in {F}"
            if F.add(F.add(a, b), c) != F.add(a, F.add(b, c)):
                return False, f"add not associative in {F}"
            if F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)):
                return False, f"not distributive in {F}"
            if a and F.mul(a, F.inv(a)) != 1:
                return False, f"bad inverse of {a} in {F}"
            if F.frobenius(F.add(a, b)) != F.add(F.frobenius(a), F.frobenius(b)):
                return False, f"Frobenius not additive in {F}"
    return True, "GF(2,3,4,5,7,8,9,25)"


def check_factor_roundtrip(rng, trials):
    for q in (2, 3, 4, 5, 9):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            d = int(rng.integers(1, 9))
            f = poly.norm([int(c) for c in rng.integers(0, q, d)] + [int(rng.integers(1, q))])
            facs = poly.poly_factor(f, F)
            if poly.scale(poly.product(facs, F), f[-1], F) != f:
                return False, f"factor product != {f} over {F}"
            gs = [g for g, _ in facs]
            if len(set(gs)) != len(gs) or not all(poly.is_irreducible(g, F) and g[-1] == 1 for g in gs):
                return False, f"bad factors of {f} over {F}"
    return True, ""


def check_root_multiplicity(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            f = poly.norm([int(c) for c in rng.integers(0, q, 5)] + [1])
            for lam in range(q):
                if (poly.poly_root_multiplicity(f, lam, F) >= 1) != (poly.evaluate(f, lam, F) == 0):
                    return False, f"{f} at {lam} over {F}"
    return True, ""


def check_irreducible_count(rng, trials):
    for p in (2, 3, 5):
        F = gf(p)
        cnt = sum(poly.is_irreducible((a, b, 1), F) for a in range(p) for b in range(p))
        if cnt != (p * p - p) // 2:
            return False, f"{cnt} monic irreducible quadratics over GF({p})"
    return True, ""


# -- matrix ------------------------------------------------------------------------


def check_cayley_hamilton(rng, trials):
    for q in (2, 3, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            A = _rand_mat(rng, F, int(rng.integers(1, 6)))
            if not poly_at_matrix(charpoly(A), A).is_zero():
                return False, f"{A}"
    return True, ""


def check_rank_transpose(rng, trials):
    for q in (2, 3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            X = _rand_mat(rng, F, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
            if rank(X) != rank(X.T):
                return False, f"{X}"
    return True, ""


def check_vec_identity(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            r, c = (int(x) for x in rng.integers(1, 4, 2))
            X, B, Y = _rand_mat(rng, F, r, c), _rand_mat(rng, F, c, c), _rand_mat(rng, F, r, c)
            lhs = vec(X @ B @ Y.T)
            rhs = mat_mul(kron(Y, X), Mat(F, vec(B)[:, None], check=False)).data[:, 0]
            if not np.array_equal(lhs, rhs):
                return False, "vec(XBY^t) != (Y (x) X) vec(B)"
    return True, ""


def check_kernel_basis(rng, trials):
    for q in (2, 3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            X = _rand_mat(rng, F, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
            K = kernel_basis(X)
            if len(K) != X.cols - rank(X):
                return False, "kernel size"
            for v in K:
                if mat_mul(X, Mat(F, v[:, None], check=False)).data.any():
                    return False, "Xv != 0"
            if K and rank_array(F, np.array(K)) != len(K):
                return False, "kernel vectors dependent"
    return True, ""


# -- code --------------------------------------------------------------------------


def check_parity_consistency(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 20)):
            n = int(rng.integers(1, 5))
            code = code_build(_rand_mat(rng, F, n), int(rng.integers(0, q)))
            B = _rand_mat(rng, F, n)
            Hv = mat_mul(code.H, Mat(F, vec(B)[:, None], check=False)).data[:, 0]
            if not np.array_equal(vec(code.syndrome(B)), Hv):
                return False, "vec(syndrome) != H vec(B)"
    return True, ""


def check_self_membership(rng, trials):
    F = gf(3)
    for A in _all_mats(F, 2):
        sq_zero = (A @ A).is_zero()
        for a in range(3):
            if code_build(A, a).contains(A) != (a == 1 or sq_zero):
                return False, f"A={A.tolist()} a={a}"
    return True, "exhaustive GF(3), n=2"


def _random_code_pair(rng, F, n):
    A = _rand_mat(rng, F, n)
    a = int(rng.integers(0, F.q))
    return A, a


def _random_codeword(rng, code):
    if code.k == 0:
        return Mat.zeros(code.field, code.n)
    return code.encode(rng.integers(0, code.field.q, code.k).tolist())


def check_twist_products(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(2, 4))
            A = _rand_mat(rng, F, n)
            a, a2 = (int(x) for x in rng.integers(0, q, 2))
            c1, c2 = code_build(A, a), code_build(A, a2)
            B, B2 = _random_codeword(rng, c1), _random_codeword(rng, c2)
            target = code_build(A, F.mul(a, a2))
            if not (target.contains(B @ B2) and target.contains(B2 @ B)):
                return False, "BB' or B'B outside C(A, aa')"
    return True, ""


def check_swap_roles(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 4))
            A = _rand_mat(rng, F, n)
            a = int(rng.integers(1, q))
            code = code_build(A, a)
            B = _random_codeword(rng, code) if rng.random() < 0.5 else _rand_mat(rng, F, n)
            if code.contains(B) != code_build(B, F.inv(a)).contains(A):
                return False, "B in C(A,a) <=> A in C(B,1/a) fails"
    return True, ""


def check_identity_membership(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 4))
            A = _rand_mat(rng, F, n)
            if A.is_zero():
                continue
            a = int(rng.integers(0, q))
            if code_build(A, a).contains(Mat.identity(F, n)) != (a == 1):
                return False, f"I in C(A,{a}) wrong"
    return True, ""


def check_transpose_membership(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 4))
            A = _rand_mat(rng, F, n)
            a = int(rng.integers(1, q))
            code = code_build(A, a)
            B = _random_codeword(rng, code) if rng.random() < 0.5 else _rand_mat(rng, F, n)
            if code.contains(B) != code_build(A.T, F.inv(a)).contains(B.T):
                return False, "B in C(A,a) <=> B^t in C(A^t,1/a) fails"
    return True, ""


def _contains_invertible(code, rng, samples: int = 200) -> bool | None:
    words = _codewords(code, limit=3**6)
    if words is not None:
        return any(_is_invertible(B) for B in words)
    for _ in range(samples):
        if _is_invertible(_random_codeword(rng, code)):
            return True
    return None  # undecided


def check_invertible_dimension(rng, trials):
    F = gf(3)
    for A in _all_mats(F, 2):
        k1 = code_build(A, 1).k
        for a in (0, 2):
            code = code_build(A, a)
            if _contains_invertible(code, rng) and code.k != k1:
                return False, f"A={A.tolist()} a={a}"
    for q in (3, 5):
        F = gf(q)
        for _ in range(max(1, trials // 20)):
            A = _rand_mat(rng, F, 3)
            a = int(rng.integers(0, q))
            code = code_build(A, a)
            if _contains_invertible(code, rng) and code.k != code_build(A, 1).k:
                return False, f"n=3 A={A.tolist()} a={a}"
    return True, "exhaustive GF(3) n=2 plus random n=3"


def check_singleton(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 4))
            code = code_build(_rand_mat(rng, F, n), int(rng.integers(0, q)))
            p = code.min_distance()
            if p.k >= 1 and p.status == "exact" and p.k + p.d > p.N + 1:
                return False, f"{p}"
    return True, ""


def check_coset_syndromes(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 4))
            code = code_build(_rand_mat(rng, F, n), int(rng.integers(0, q)))
            B1 = _rand_mat(rng, F, n)
            B2 = B1 + _random_codeword(rng, code) if rng.random() < 0.5 else _rand_mat(rng, F, n)
            if (code.syndrome(B1) == code.syndrome(B2)) != code.contains(B1 - B2):
                return False, "syndrome equality != same coset"
    return True, ""


# -- bounds ------------------------------------------------------------------------


def _bounds_ok(A, a):
    code = code_build(A, a)
    k = code.k
    lower, upper = bounds.spectral_bounds(A, a)
    if not lower <= k <= upper:
        return f"sandwich {lower} <= {k} <= {upper} fails for A={A.tolist()} a={a} over {A.field}"
    k0 = A.rows - rank(A)
    if k < k0 * k0:
        return "dim < (dim Ker A)^2"
    if k0 * k0 > lower:
        return "kernel_sq > spectral lower"
    if bounds.zero_code_check(A, a) and k != 0:
        return "zero-code criterion violated"
    bounds.product_code(A, a)  # raises if a generator falls outside the code
    return None


def check_spectral_sandwich(rng, trials):
    F = gf(3)
    for A in _all_mats(F, 2):
        for a in range(3):
            err = _bounds_ok(A, a)
            if err:
                return False, err
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(trials):
            n = int(rng.integers(1, 5))
            err = _bounds_ok(_rand_mat(rng, F, n), int(rng.integers(0, q)))
            if err:
                return False, err
    return True, f"exhaustive GF(3) n=2 plus {trials} random per field"


def check_eigen_invariants(rng, trials):
    for q in (2, 3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 5))
            ed = bounds.eigen_data(_rand_mat(rng, F, n))
            if ed.total_multiplicity() != n:
                return False, "sum of M != n"
            for r in ed.roots:
                if not 1 <= r.K <= r.M:
                    return False, "K outside [1, M]"
            by_factor = {}
            for r in ed.roots:
                by_factor.setdefault(r.factor, set()).add((r.M, r.K))
            if any(len(v) != 1 for v in by_factor.values()):
                return False, "conjugate roots disagree"
    return True, ""


def check_hadamard_exact(rng, trials):
    for q in (3, 5):
        F = gf(q)
        H = families.sylvester(2, F)
        for a in (1, -1):
            lo, hi = bounds.spectral_bounds(H, F(a))
            if lo != hi or lo != 8:
                return False, f"H4 over {F}, a={a}: {lo}..{hi}"
    return True, ""


def check_rank1_dimension(rng, trials):
    F = gf(3)
    for n in (2, 3):
        seen = set()
        for u in itertools.product(range(3), repeat=n):
            for v in itertools.product(range(3), repeat=n):
                if not any(u) or not any(v):
                    continue
                data = np.outer(u, v) % 3
                key = data.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                A = Mat(F, data, check=False)
                if bounds.rank1_dim(A, 2) != code_build(A, 2).k:
                    return False, f"A={data.tolist()}"
    return True, "all rank-1 A over GF(3), n <= 3, a = 2"


def check_dim_caps(rng, trials):
    for q in (3, 4, 5):
        F = gf(q)
        for _ in range(max(1, trials // 10)):
            n = int(rng.integers(1, 5))
            A = _rand_mat(rng, F, n)
            a = int(rng.integers(0, q))
            if A.is_zero() or a == 1:
                continue
            rep = bounds.dim_caps_check(A, a, code_build(A, a).k)
            if not rep.ok:
                return False, "; ".join(rep.violations)
    return True, ""


# -- families ----------------------------------------------------------------------


def check_family_identities(rng, trials):
    for q in (3, 4, 5, 7):
        F = gf(q)
        for n in range(1, 7):
            J = families.all_ones(n, F)
            if J @ J != J.scale(F.from_int(n)):
                return False, "J^2 != nJ"
            if (n + 1) % F.p == 0:
                JI = families.ones_plus_id(n, F)
                if not (JI @ J).is_zero() or not (J @ JI).is_zero():
                    return False, "J+I does not annihilate J"
        if F.p != 2:
            for k in (1, 2, 3):
                H = families.sylvester(k, F)
                if H != H.T or H.trace() != 0 or H @ H != Mat.identity(F, 2**k).scale(F.from_int(2**k)):
                    return False, f"Sylvester H_{2**k} over {F}"
    for p in (3, 5, 7, 11):
        F = gf(p)
        for n in range(2, 7):
            A, B = families.an_matrix(n, F), families.bn_matrix(n, F)
            if not (A @ B + B @ A).is_zero():
                return False, f"A_{n} B_{n} + B_{n} A_{n} != 0 over GF({p})"
    return True, ""


# -- symmetry ----------------------------------------------------------------------


def check_action_law(rng, trials):
    F = gf(5)
    for A in (families.all_ones(3, F), families.cycle_perm(4, F), families.path_graph(4, F)):
        perms = symmetry.commuting_permutations(A)
        code = code_build(A, 2)
        if not code.basis:
            continue
        for _ in range(max(1, trials // 50)):
            s1, t1, s2, t2 = (perms[int(i)] for i in rng.integers(0, len(perms), 4))
            B = code.basis[int(rng.integers(0, len(code.basis)))]
            lhs = symmetry.act(symmetry.act(B, s1, t1), s2, t2)
            rhs = symmetry.act(B, symmetry.compose(s1, s2), symmetry.compose(t1, t2))
            if lhs != rhs:
                return False, "action law fails"
            if not symmetry.product_action_invariance(code, s1, t1):
                return False, "product action leaves the code"
            # coordinate permutation cycle type vs grid action
            pi = symmetry.coordinate_permutation(s1, t1, code.n)
            grid = sorted(len(c) for c in symmetry.cycles(pi))
            expected = sorted(
                np.lcm(len(c1), len(c2))
                for c1 in symmetry.cycles(s1)
                for c2 in symmetry.cycles(t1)
                for _ in range(np.gcd(len(c1), len(c2)))
            )
            if grid != expected:
                return False, "coordinate cycle type mismatch"
    return True, ""


def check_transpose_map(rng, trials):
    for q in (3, 5):
        F = gf(q)
        for _ in range(max(1, trials // 20)):
            n = int(rng.integers(1, 4))
            A = _rand_mat(rng, F, n)
            a = int(rng.integers(1, q))
            if not symmetry.transpose_maps_onto(A, a):
                return False, f"A={A.tolist()} a={a}"
    return True, ""


# -- census ------------------------------------------------------------------------


def check_census_merge(rng, trials):
    parts = [_tally((3, 2, 2, lo, lo + 27, None)) for lo in range(0, 81, 27)]
    m1 = merge_tallies(parts)
    m2 = merge_tallies(list(reversed(parts)))
    m3 = merge_tallies([merge_tallies(parts[:2]), parts[2]])
    if not (m1 == m2 == m3):
        return False, "merge depends on order"
    report = run_census(3, 2, 2)
    if sum(report.counts().values()) != 81:
        return False, "census total != q^(n^2)"
    for (k, d) in report.buckets:
        W = report.witness(k, d)
        if code_params_array(W.field, W.data, 2)[:2] != (k, d):
            return False, f"witness of ({k},{d}) re-analyzes differently"
    return True, ""


# -- rank-1 sweeps -----------------------------------------------------------------


def check_jn_distances(rng, trials):
    """d(J_n, a) = 4 unless n = 2 and q even (then 3); single errors decode."""
    for q in (3, 4, 5, 7):
        F = gf(q)
        for n in (2, 3, 4):
            J = families.all_ones(n, F)
            for a in range(2, q):
                code = code_build(J, a)
                p = code.min_distance()
                if n == 2 and q % 2 == 0:
                    W = Mat.from_rows(F, [[a, F.sub(a, 1)], [0, 1]])
                    if p.d != 3 or not code.contains(W):
                        return False, f"q={q} n=2 a={a}: d={p.d}"
                else:
                    W = Mat.from_rows(F, [[1 if (i < 2 and j < 2 and i == j) else (-1 if i < 2 and j < 2 else 0) for j in range(n)] for i in range(n)])
                    if p.d != 4 or not code.contains(W):
                        return False, f"q={q} n={n} a={a}: d={p.d}"
                dec = code.single_error_decoder()
                if not dec:
                    return False, f"q={q} n={n} a={a}: decoder refused ({dec.reason})"
                B = _random_codeword(rng, code)
                E = Mat.zeros(F, n).data.copy()
                E[int(rng.integers(0, n)), int(rng.integers(0, n))] = int(rng.integers(1, q))
                got, err = dec.decode(B + Mat(F, E, check=False))
                if got != B:
                    return False, f"q={q} n={n} a={a}: single-error decode failed"
    return True, "q in {3,4,5,7}, n in {2,3,4}"


def check_jn_dimensions(rng, trials):
    for q in (3, 4, 5, 7):
        F = gf(q)
        for n in (2, 3, 4):
            J = families.all_ones(n, F)
            for a in range(2, q):
                k = code_build(J, a).k
                expected = (n - 1) ** 2 + (1 if n % F.p == 0 else 0)
                if k != expected or k != bounds.rank1_dim(J, a):
                    return False, f"q={q} n={n} a={a}: k={k}, expected {expected}"
    return True, "q in {3,4,5,7}, n in {2,3,4}"


CHECKS = [
    ("field.axioms", check_field_axioms),
    ("field.factor_roundtrip", check_factor_roundtrip),
    ("field.root_multiplicity", check_root_multiplicity),
    ("field.irreducible_quadratics", check_irreducible_count),
    ("matrix.cayley_hamilton", check_cayley_hamilton),
    ("matrix.rank_transpose", check_rank_transpose),
    ("matrix.vec_kron_identity", check_vec_identity),
    ("matrix.kernel_basis", check_kernel_basis),
    ("code.parity_check_consistency", check_parity_consistency),
    ("code.self_membership", check_self_membership),
    ("code.twist_products", check_twist_products),
    ("code.swap_roles", check_swap_roles),
    ("code.identity_membership", check_identity_membership),
    ("code.transpose_membership", check_transpose_membership),
    ("code.invertible_dimension", check_invertible_dimension),
    ("code.singleton", check_singleton),
    ("code.coset_syndromes", check_coset_syndromes),
    ("bounds.spectral_sandwich", check_spectral_sandwich),
    ("bounds.eigen_invariants", check_eigen_invariants),
    ("bounds.hadamard_exact", check_hadamard_exact),
    ("bounds.rank1_dimension", check_rank1_dimension),
    ("bounds.dim_caps", check_dim_caps),
    ("families.identities", check_family_identities),
    ("symmetry.action_law", check_action_law),
    ("symmetry.transpose_map", check_transpose_map),
    ("census.merge_and_witnesses", check_census_merge),
]

SWEEPS = [
    ("sweep.jn_distances", check_jn_distances),
    ("sweep.jn_dimensions", check_jn_dimensions),
]


def run_suite(seed: int = 0, trials: int = 1000, sweeps: bool = True, only=None) -> list[dict]:
    rows = []
    checks = CHECKS + (SWEEPS if sweeps else [])
    for i, (name, fn) in enumerate(checks):
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, i])
        try:
            ok, detail = fn(rng, trials)
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append({"check": name, "pass": bool(ok), "detail": detail})
    return rows
