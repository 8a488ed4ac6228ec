"""Dimension and distance bounds for C(A, a), computed without building the code.

Eigenvalue data is computed per irreducible factor g of the characteristic
polynomial: g's roots live in GF(q^deg g), and since a lies in the base
field, a*mu lives there too.  No common splitting field is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import poly
from .code import distance_from_generator
from .field import FieldSpec, ext_field
from .matrix import Mat, charpoly, kernel_array, mat_pow, matmul_array, rank_array


@dataclass(frozen=True)
class EigenRoot:
    factor: tuple
    degree: int
    field: FieldSpec
    root: int
    M: int
    K: int


@dataclass(frozen=True)
class FactorSplit:
    """An irreducible factor of charpoly(A) with its splitting field and roots."""

    factor: tuple
    multiplicity: int
    field: FieldSpec
    embed: Callable = dc_field(repr=False, compare=False)
    roots: tuple = ()

    @property
    def degree(self) -> int:
        return len(self.factor) - 1


@dataclass(frozen=True)
class EigenData:
    n: int
    charpoly: tuple
    factors: tuple  # of FactorSplit
    roots: tuple  # of EigenRoot, conjugates included

    def total_multiplicity(self) -> int:
        return sum(r.M for r in self.roots)


def split_factors(A: Mat) -> list[FactorSplit]:
    F = A.field
    f = charpoly(A)
    out = []
    for g, e in poly.poly_factor(f, F):
        d = len(g) - 1
        if d == 1:
            E, emb = F, (lambda x: x.copy() if isinstance(x, np.ndarray) else int(x))
            r = F.neg(g[0])
        elif F.m == 1:
            E, emb = ext_field(F, d, modulus=g)
            r = F.p  # the class of x in GF(p)[x]/(g)
        else:
            E, emb = ext_field(F, d)
            r = min(poly.roots(tuple(emb(c) for c in g), E))
        conj = tuple(E.pow(r, F.q**i) for i in range(d))
        out.append(FactorSplit(g, e, E, emb, conj))
    return out


def _embed_poly(f, emb) -> tuple:
    return tuple(emb(c) for c in f)


def _geometric(A: Mat, E: FieldSpec, emb, mu: int) -> int:
    """n - rank(A - mu I) over E."""
    n = A.rows
    X = emb(A.data)
    X = X.copy()
    idx = np.arange(n)
    X[idx, idx] = E.vsub(X[idx, idx], np.full(n, mu, dtype=np.int64))
    return n - rank_array(E, X)


def eigen_data(A: Mat) -> EigenData:
    if not A.is_square():
        raise ValueError("eigen data of a non-square matrix")
    f = charpoly(A)
    splits = split_factors(A)
    roots = []
    for s in splits:
        fe = _embed_poly(f, s.embed)
        for mu in s.roots:
            M = poly.poly_root_multiplicity(fe, mu, s.field)
            K = _geometric(A, s.field, s.embed, mu)
            roots.append(EigenRoot(s.factor, s.degree, s.field, mu, M, K))
    return EigenData(A.rows, f, tuple(splits), tuple(roots))


def spectral_terms(A: Mat, a: int) -> list[dict]:
    """Per-factor contributions (K-product, M-product) times the factor degree."""
    F = A.field
    a = F(a)
    f = charpoly(A)
    At = A.T
    terms = []
    for s in split_factors(A):
        E, emb = s.field, s.embed
        fe = _embed_poly(f, emb)
        mu = s.roots[0]
        nu = E.mul(emb(a), mu)
        m_t = poly.poly_root_multiplicity(fe, mu, E)  # charpoly(A^t) = charpoly(A)
        k_t = _geometric(At, E, emb, mu)
        m_a = poly.poly_root_multiplicity(fe, nu, E) if poly.evaluate(fe, nu, E) == 0 else 0
        k_a = _geometric(A, E, emb, nu) if m_a else 0
        terms.append({
            "factor": list(s.factor),
            "degree": s.degree,
            "lower": s.degree * k_a * k_t,
            "upper": s.degree * m_a * m_t,
        })
    return terms


def spectral_bounds(A: Mat, a: int) -> tuple[int, int]:
    """(sum K(A, a mu) K(A^t, mu), sum M(A, a mu) M(A^t, mu)) over eigenvalues mu."""
    terms = spectral_terms(A, a)
    return sum(t["lower"] for t in terms), sum(t["upper"] for t in terms)


def zero_code_check(A: Mat, a: int) -> bool:
    """True when no eigenvalue lambda has a*lambda also an eigenvalue (forcing C(A,a) = 0)."""
    F = A.field
    a = F(a)
    f = charpoly(A)
    for s in split_factors(A):
        E = s.field
        nu = E.mul(s.embed(a), s.roots[0])
        if poly.evaluate(_embed_poly(f, s.embed), nu, E) == 0:
            return False
    return True


@dataclass
class ProductCode:
    generators: list
    dim_lower: int
    dist_upper: int | None
    kernel_distances: tuple


def _kernel_code_distance(F: FieldSpec, K: np.ndarray) -> int | None:
    if K.shape[0] == 0:
        return None
    d, _, _ = distance_from_generator(F, K, budget=2**40)
    return d


def product_code(A: Mat, a: int) -> ProductCode:
    """Ker(A) (x) Ker(A^t) inside C(A, a), with its dimension and distance."""
    F = A.field
    a = F(a)
    Ku = kernel_array(F, A.data)
    Kv = kernel_array(F, A.data.T)
    gens = []
    for u in Ku:
        for v in Kv:
            B = F.vmul(u[:, None], v[None, :])
            syn = F.vsub(matmul_array(F, A.data, B), F.vmul(matmul_array(F, B, A.data), a))
            if syn.any():
                raise AssertionError("product-code generator outside C(A, a)")
            gens.append(Mat(F, B, check=False))
    du = _kernel_code_distance(F, Ku)
    dv = _kernel_code_distance(F, Kv)
    upper = du * dv if du is not None and dv is not None else None
    return ProductCode(gens, len(Ku) * len(Kv), upper, (du, dv))


def rank1_dim(A: Mat, a: int) -> int:
    """(n-1)^2 + delta, delta = 1 iff A^n = 0, for rank-one A and a not in {0, 1}."""
    F = A.field
    a = F(a)
    if rank_array(F, A.data) != 1:
        raise ValueError("rank1_dim needs a rank-one matrix")
    if a in (0, 1):
        raise ValueError("rank1_dim needs a not in {0, 1}")
    n = A.rows
    delta = 1 if mat_pow(A, n).is_zero() else 0
    return (n - 1) ** 2 + delta


@dataclass
class DimCapsReport:
    dim: int
    cap_basic: int
    cap_improved: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def dim_caps_check(A: Mat, a: int, dim: int) -> DimCapsReport:
    """Compare ``dim`` with n^2 - 1 and the sharper n^2 - n (A != 0, a != 1)."""
    if A.is_zero() or A.field(a) == 1:
        raise ValueError("dimension caps need A != 0 and a != 1")
    n = A.rows
    report = DimCapsReport(dim, n * n - 1, n * n - n, [])
    if dim > report.cap_basic:
        report.violations.append(f"dim {dim} > n^2-1 = {report.cap_basic}")
    if dim > report.cap_improved:
        report.violations.append(f"dim {dim} > n^2-n = {report.cap_improved}")
    return report


def q_ary_entropy(x: float, q: int) -> float:
    """x log_q(q-1) - x log_q x - (1-x) log_q(1-x), for 0 < x <= (q-1)/q."""
    if q < 2 or not 0 < x <= (q - 1) / q:
        raise ValueError(f"q-ary entropy needs q >= 2 and 0 < x <= (q-1)/q, got x={x}, q={q}")
    lg = math.log(q)
    val = x * math.log(q - 1) / lg - x * math.log(x) / lg
    if x < 1:
        val -= (1 - x) * math.log(1 - x) / lg
    return val


@dataclass
class BoundsReport:
    spectral_lower: int
    spectral_upper: int
    kernel_sq: int
    zero_forced: bool
    generic_cap: int | None
    improved_cap: int | None
    product_dim_lower: int
    product_dist_upper: int | None
    rank1_dim: int | None
    singleton_sq: int | None

    def to_dict(self) -> dict:
        return {
            "spectral_lower": self.spectral_lower,
            "spectral_upper": self.spectral_upper,
            "kernel_sq": self.kernel_sq,
            "zero_forced": self.zero_forced,
            "generic_cap": self.generic_cap,
            "improved_cap": self.improved_cap,
            "product_dim_lower": self.product_dim_lower,
            "product_dist_upper": self.product_dist_upper,
            "rank1_dim": self.rank1_dim,
            "singleton_sq": self.singleton_sq,
        }


def bounds_report(A: Mat, a: int) -> BoundsReport:
    F = A.field
    a = F(a)
    n = A.rows
    lower, upper = spectral_bounds(A, a)
    k0 = n - rank_array(F, A.data)
    pc = product_code(A, a)
    capped = not A.is_zero() and a != 1
    r1 = None
    if k0 == n - 1 and a not in (0, 1):
        r1 = rank1_dim(A, a)
    return BoundsReport(
        spectral_lower=lower,
        spectral_upper=upper,
        kernel_sq=k0 * k0,
        zero_forced=zero_code_check(A, a),
        generic_cap=n * n - 1 if capped else None,
        improved_cap=n * n - n if capped else None,
        product_dim_lower=pc.dim_lower,
        product_dist_upper=pc.dist_upper,
        rank1_dim=r1,
        singleton_sq=(n - k0 + 1) ** 2 if k0 >= 1 else None,
    )
