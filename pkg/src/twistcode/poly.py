"""Univariate polynomials over a :class:`~twistcode.field.FieldSpec`.

A polynomial is a tuple of element encodings, constant term first, with no
trailing zeros; the zero polynomial is ``()``.  All functions take the field
explicitly and never mutate their inputs.
"""

from __future__ import annotations

import random
from typing import Sequence

from . import config
from .field import FieldSpec

Poly = tuple


def norm(f: Sequence[int]) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def deg(f: Poly) -> int:
    return len(f) - 1


def is_one(f: Poly) -> bool:
    return f == (1,)


def x_poly() -> Poly:
    return (0, 1)


def add(f: Poly, g: Poly, F: FieldSpec) -> Poly:
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return norm(F.add(a, b) for a, b in zip(f, g))


def neg(f: Poly, F: FieldSpec) -> Poly:
    return tuple(F.neg(c) for c in f)


def sub(f: Poly, g: Poly, F: FieldSpec) -> Poly:
    return add(f, neg(g, F), F)


def scale(f: Poly, c: int, F: FieldSpec) -> Poly:
    return norm(F.mul(c, a) for a in f)


def mul(f: Poly, g: Poly, F: FieldSpec) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return norm(out)


def divmod_(f: Poly, g: Poly, F: FieldSpec) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = deg(g)
    if len(r) <= dg:
        return (), norm(r)
    lead_inv = F.inv(g[-1])
    quot = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = F.mul(c, lead_inv)
            quot[i - dg] = c
            for j, b in enumerate(g):
                if b:
                    r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, b))
    return norm(quot), norm(r[:dg])


def mod(f: Poly, g: Poly, F: FieldSpec) -> Poly:
    return divmod_(f, g, F)[1]


def exact_div(f: Poly, g: Poly, F: FieldSpec) -> Poly:
    q, r = divmod_(f, g, F)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(f: Poly, F: FieldSpec) -> Poly:
    if not f:
        return f
    return scale(f, F.inv(f[-1]), F)


def gcd(f: Poly, g: Poly, F: FieldSpec) -> Poly:
    while g:
        f, g = g, mod(f, g, F)
    return monic(f, F)


def derivative(f: Poly, F: FieldSpec) -> Poly:
    return norm(F.mul(F.from_int(i), c) for i, c in enumerate(f) if i > 0)


def powmod(f: Poly, e: int, m: Poly, F: FieldSpec) -> Poly:
    result: Poly = (1,)
    base = mod(f, m, F)
    while e:
        if e & 1:
            result = mod(mul(result, base, F), m, F)
        base = mod(mul(base, base, F), m, F)
        e >>= 1
    return result


def evaluate(f: Poly, x: int, F: FieldSpec) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def product(factors, F: FieldSpec) -> Poly:
    """Multiply out ``[(g, e), ...]``."""
    out: Poly = (1,)
    for g, e in factors:
        for _ in range(e):
            out = mul(out, g, F)
    return out


def linear(root: int, F: FieldSpec) -> Poly:
    """x - root."""
    return norm((F.neg(root), 1))


def is_irreducible(f: Poly, F: FieldSpec) -> bool:
    """Ben-Or test: no gcd with x^(q^i) - x for i <= deg/2."""
    f = monic(norm(f), F)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = x_poly()
    h = x
    for _ in range(n // 2):
        h = powmod(h, F.q, f, F)
        if not is_one(gcd(f, sub(h, x, F), F)):
            return False
    return True


def _pth_root_poly(f: Poly, F: FieldSpec) -> Poly:
    p = F.p
    return norm(F.pth_root(f[i]) for i in range(0, len(f), p))


def squarefree_decomposition(f: Poly, F: FieldSpec) -> list[tuple[Poly, int]]:
    """Monic f as a product of pairwise coprime squarefree parts g_i^i.

    Handles the characteristic-p case where f' = 0 by taking p-th roots.
    """
    f = monic(f, F)
    out: list[tuple[Poly, int]] = []
    if deg(f) < 1:
        return out
    df = derivative(f, F)
    if not df:
        for g, e in squarefree_decomposition(_pth_root_poly(f, F), F):
            out.append((g, e * F.p))
        return out
    c = gcd(f, df, F)
    w = exact_div(f, c, F)
    i = 1
    while not is_one(w):
        y = gcd(w, c, F)
        fac = exact_div(w, y, F)
        if not is_one(fac):
            out.append((fac, i))
        i += 1
        w = y
        c = exact_div(c, y, F)
    if not is_one(c):
        for g, e in squarefree_decomposition(_pth_root_poly(c, F), F):
            out.append((g, e * F.p))
    return out


def distinct_degree(f: Poly, F: FieldSpec) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of irreducibles of equal degree."""
    out = []
    x = x_poly()
    h = x
    i = 0
    while deg(f) >= 2 * (i + 1):
        i += 1
        h = powmod(h, F.q, f, F)
        g = gcd(f, sub(h, x, F), F)
        if not is_one(g):
            out.append((g, i))
            f = exact_div(f, g, F)
            h = mod(h, f, F)
    if deg(f) >= 1:
        out.append((f, deg(f)))
    return out


def _random_poly(below: int, F: FieldSpec, rng: random.Random) -> Poly:
    return norm(rng.randrange(F.q) for _ in range(below))


def equal_degree(f: Poly, d: int, F: FieldSpec, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = _random_poly(n, F, rng)
        if deg(a) < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(md-1))
            t = a
            acc = a
            for _ in range(F.m * d - 1):
                t = mod(mul(t, t, F), f, F)
                acc = add(acc, t, F)
            b = acc
        else:
            b = sub(powmod(a, (F.q**d - 1) // 2, f, F), (1,), F)
        g = gcd(f, b, F)
        if 0 < deg(g) < n:
            break
    return equal_degree(g, d, F, rng) + equal_degree(exact_div(f, g, F), d, F, rng)


def poly_factor(f: Poly, F: FieldSpec) -> list[tuple[Poly, int]]:
    """Factor f into monic irreducibles with multiplicities.

    The leading coefficient is dropped (the product of the output times
    ``f[-1]`` equals f).  Output is sorted by (degree, coefficients) and the
    splitting step uses a fixed seed, so results are reproducible.
    """
    f = norm(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(config.EDF_SEED)
    out = []
    for part, e in squarefree_decomposition(f, F):
        for block, d in distinct_degree(part, F):
            for g in equal_degree(block, d, F, rng):
                out.append((g, e))
    out.sort(key=lambda ge: (len(ge[0]), tuple(reversed(ge[0])), ge[1]))
    return out


def roots(f: Poly, F: FieldSpec) -> list[int]:
    """Distinct roots of f in F, ascending."""
    return sorted(F.neg(g[0]) for g, _ in poly_factor(f, F) if deg(g) == 1)


def poly_root_multiplicity(f: Poly, root: int, F: FieldSpec) -> int:
    """Largest e with (x - root)^e dividing f, by repeated synthetic division."""
    f = norm(f)
    if not f:
        raise ValueError("root multiplicity of the zero polynomial")
    e = 0
    while len(f) > 1:
        # synthetic division by (x - root)
        quot = [0] * (len(f) - 1)
        acc = 0
        for i in range(len(f) - 1, 0, -1):
            acc = F.add(F.mul(acc, root), f[i])
            quot[i - 1] = acc
        rem = F.add(F.mul(acc, root), f[0])
        if rem:
            break
        e += 1
        f = norm(quot)
    return e
