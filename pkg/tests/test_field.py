from __future__ import annotations

import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from twistcode import poly
from twistcode.field import FieldError, ext_field, field_make, gf, prime_power, primes_up_to, smallest_irreducible

X = sympy.Symbol("x")


def ref_mul(F, a, b):
    """Schoolbook product of coefficient vectors reduced by the modulus."""
    ca, cb = F.coeffs(a), F.coeffs(b)
    prod = [0] * (2 * F.m)
    for i, u in enumerate(ca):
        for j, v in enumerate(cb):
            prod[i + j] = (prod[i + j] + u * v) % F.p
    mod = F.modulus
    for top in range(len(prod) - 1, F.m - 1, -1):
        c = prod[top]
        if c:
            for t in range(F.m + 1):
                prod[top - F.m + t] = (prod[top - F.m + t] - c * mod[t]) % F.p
    return sum(c * F.p**i for i, c in enumerate(prod[: F.m]))


def sympy_factors(f, p):
    """Monic irreducible factors of f over GF(p) via sympy, as {coeff tuple: mult}."""
    P = sympy.Poly(list(reversed(f)), X, modulus=p)
    _, facs = P.factor_list()
    out = {}
    for g, e in facs:
        coeffs = [int(c) % p for c in reversed(g.all_coeffs())]
        lead_inv = pow(coeffs[-1], -1, p)
        key = tuple(c * lead_inv % p for c in coeffs)
        out[key] = out.get(key, 0) + e
    return out


# -- construction ----------------------------------------------------------------


def test_prime_field():
    F = field_make(3)
    assert (F.p, F.m, F.q) == (3, 1, 3)
    assert F.add(2, 2) == 1


def test_gf9_from_explicit_modulus():
    F = field_make(3, 2, (1, 0, 1))
    assert F.q == 9
    i = 3  # the class of x
    assert F.mul(i, i) == F(-1)


def test_char2_one_plus_one():
    F = field_make(2)
    assert F.add(1, 1) == 0


def test_default_moduli():
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert gf(9).modulus == (1, 0, 1)


@pytest.mark.parametrize("bad", [(4, 1), (1, 1), (0, 1)])
def test_non_prime_characteristic(bad):
    with pytest.raises(FieldError):
        field_make(*bad)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        field_make(3, 2, (2, 0, 1))  # x^2 - 1


def test_prime_power_parse():
    assert prime_power(25) == (5, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(FieldError):
        prime_power(12)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_order_cap():
    with pytest.raises(FieldError):
        field_make(2, 30)


# -- arithmetic ----------------------------------------------------------------------


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_extension_mul_matches_schoolbook(q):
    F = gf(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert F.mul(a, b) == ref_mul(F, a, b)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 49])
def test_inverse_and_frobenius(q):
    F = gf(q)
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pth_root(F.frobenius(a)) == a
    assert F.pow(2 % q or 1, q) == (2 % q or 1)


@pytest.mark.parametrize("q", [3, 4, 9])
def test_vectorized_ops_agree_with_scalar(q):
    F = gf(q)
    e = np.arange(q)
    A, B = np.meshgrid(e, e, indexing="ij")
    assert np.array_equal(F.vmul(A, B), [[F.mul(a, b) for b in e] for a in e])
    assert np.array_equal(F.vadd(A, B), [[F.add(a, b) for b in e] for a in e])
    assert np.array_equal(F.vinv(e[1:]), [F.inv(a) for a in e[1:]])


@settings(max_examples=200, deadline=None)
@given(q=st.sampled_from([2, 3, 4, 5, 7, 8, 9, 25]), data=st.data())
def test_field_axioms(q, data):
    F = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


def test_negative_coercion():
    assert gf(5)(-1) == 4
    F = gf(9)
    assert F.add(F(-1), 1) == 0


def test_large_prime_field_no_tables():
    F = gf(16707851)
    assert F.add_table is None
    assert F.mul(F.inv(123456), 123456) == 1


# -- extensions ----------------------------------------------------------------------


def test_ext_of_gf3_degree2():
    E, emb = ext_field(gf(3), 2)
    assert E.q == 9
    assert E.mul(emb(2), emb(2)) == 1


def test_ext_degree1_is_identity():
    F = gf(5)
    E, emb = ext_field(F, 1)
    assert E is F and all(emb(x) == x for x in range(5))


def test_ext_root_of_modulus():
    E, _ = ext_field(gf(3), 2, modulus=(1, 0, 1))
    i = 3
    assert E.mul(i, i) == E(-1)


@pytest.mark.parametrize("q,d", [(4, 2), (4, 3), (9, 2)])
def test_tower_embedding_is_homomorphism(q, d):
    F = gf(q)
    E, emb = ext_field(F, d)
    assert E.q == q**d
    for a, b in itertools.product(range(q), repeat=2):
        assert emb(F.mul(a, b)) == E.mul(emb(a), emb(b))
        assert emb(F.add(a, b)) == E.add(emb(a), emb(b))
    assert len({emb(a) for a in range(q)}) == q


# -- polynomials -----------------------------------------------------------------


def test_factor_x2_minus_x():
    F = gf(3)
    assert dict(poly.poly_factor((0, -1 % 3, 1), F)) == {(0, 1): 1, (2, 1): 1}


def test_factor_charpoly_of_J3_over_gf5():
    F = gf(5)
    f = (0, 0, F(-3), 1)
    assert dict(poly.poly_factor(f, F)) == {(0, 1): 2, (2, 1): 1}  # x^2 (x - 3)


def test_x2_minus_2_irreducible_over_gf5():
    F = gf(5)
    assert poly.poly_factor((3, 0, 1), F) == [((3, 0, 1), 1)]


def test_perfect_power_in_char_p():
    F = gf(3)
    f = poly.norm((F(-1), 0, 0, 1))  # x^3 - 1 = (x - 1)^3
    assert poly.poly_factor(f, F) == [((2, 1), 3)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_factor_matches_sympy(p):
    rng = np.random.default_rng(p)
    F = gf(p)
    for _ in range(40):
        d = int(rng.integers(1, 10))
        f = poly.norm([int(c) for c in rng.integers(0, p, d)] + [1])
        assert dict(poly.poly_factor(f, F)) == sympy_factors(f, p)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_factor_roundtrip_extension_fields(q):
    rng = np.random.default_rng(q)
    F = gf(q)
    for _ in range(30):
        d = int(rng.integers(1, 8))
        f = poly.norm([int(c) for c in rng.integers(0, q, d)] + [int(rng.integers(1, q))])
        facs = poly.poly_factor(f, F)
        assert poly.scale(poly.product(facs, F), f[-1], F) == f
        assert all(poly.is_irreducible(g, F) for g, _ in facs)


def test_factor_is_deterministic():
    F = gf(9)
    f = poly.norm([1, 2, 3, 4, 5, 6, 7, 1])
    assert poly.poly_factor(f, F) == poly.poly_factor(f, F)


def _monic_irreducible_count(q, n):
    return sum(sympy.mobius(d) * q ** (n // d) for d in sympy.divisors(n)) // n


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_irreducible_counts(q, n):
    F = gf(q)
    cnt = sum(poly.is_irreducible(tuple(c) + (1,), F) for c in itertools.product(range(q), repeat=n))
    assert cnt == _monic_irreducible_count(q, n)


def test_root_multiplicity_examples():
    F5 = gf(5)
    f = (0, 0, F5(-3), 1)
    assert poly.poly_root_multiplicity(f, 0, F5) == 2
    assert poly.poly_root_multiplicity(f, 1, F5) == 0
    F3 = gf(3)
    assert poly.poly_root_multiplicity((2, 0, 0, 1), 1, F3) == 3


@pytest.mark.parametrize("q", [3, 4, 7, 9])
def test_multiplicity_positive_iff_root(q):
    rng = np.random.default_rng(q)
    F = gf(q)
    for _ in range(30):
        f = poly.norm([int(c) for c in rng.integers(0, q, 5)] + [1])
        for lam in range(q):
            assert (poly.poly_root_multiplicity(f, lam, F) > 0) == (poly.evaluate(f, lam, F) == 0)


def test_roots_of_split_polynomial():
    F = gf(7)
    f = poly.product([((6, 1), 2), ((3, 1), 1)], F)  # (x-1)^2 (x-4)
    assert poly.roots(f, F) == [1, 4]
    assert poly.poly_root_multiplicity(f, 1, F) == 2
