"""Finite fields GF(p^m) with elements stored as plain integers.

An element of GF(p^m) = GF(p)[x]/(modulus) is the residue
c_0 + c_1 x + ... + c_{m-1} x^{m-1}; it is encoded as the integer
c_0 + c_1 p + ... + c_{m-1} p^{m-1} in [0, q).  This encoding is the
canonical representation everywhere (matrices, files, JSON), so equality of
elements is equality of integers.  0 and 1 encode the field zero and one.

Scalar operations work on Python ints; the ``v*`` methods work elementwise on
numpy integer arrays and back all matrix code.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

from . import config


class FieldError(ValueError):
    """Invalid field request (non-prime characteristic, bad modulus, order cap)."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(x) for x in np.nonzero(sieve)[0]]


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m; raise FieldError if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
        if p * p > q:
            p = q
            break
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not is_prime(p):
        raise FieldError(f"{q} is not a prime power")
    return p, m


class FieldSpec:
    """The field GF(p^m) defined by an explicit monic irreducible modulus.

    Build instances with :func:`field_make` (cached, so equal fields are
    usually the same object).  Instances are immutable.
    """

    __slots__ = (
        "p", "m", "q", "modulus", "_digits", "_powers", "_exp", "_log",
        "_exp_arr", "_log_arr", "add_table", "mul_table", "_neg_table",
    )

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(int(c) for c in modulus)
        self.add_table = None
        self.mul_table = None
        self._exp = self._log = None
        if m > 1:
            q = self.q
            self._powers = np.array([p**i for i in range(m)], dtype=np.int64)
            ints = np.arange(q, dtype=np.int64)
            self._digits = (ints[:, None] // self._powers[None, :]) % p
            self._build_log_tables()
        if self.q <= config.TABLE_ORDER_LIMIT:
            e = np.arange(self.q, dtype=np.int64)
            self.add_table = self.vadd(e[:, None], e[None, :])
            self.mul_table = self.vmul(e[:, None], e[None, :])
            self.add_table.setflags(write=False)
            self.mul_table.setflags(write=False)
        self._neg_table = self.vneg(np.arange(self.q, dtype=np.int64)) if self.q <= 2**16 else None

    # -- construction helpers ------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        # schoolbook product in GF(p)[x] reduced mod the modulus
        p, m, mod = self.p, self.m, self.modulus
        da, db = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg]
            if c:
                for i in range(m + 1):
                    prod[deg - m + i] = (prod[deg - m + i] - c * mod[i]) % p
        return self.from_coeffs(prod[:m])

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _build_log_tables(self) -> None:
        q = self.q
        order = q - 1
        prime_divs = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        for g in range(2, q):
            if all(self._pow_slow(g, order // r) != 1 for r in prime_divs):
                break
        else:  # q = 2 never reaches here (m > 1)
            raise FieldError("no primitive element found")
        exp = [0] * order
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        self._exp, self._log = exp, log
        self._exp_arr = np.array(exp, dtype=np.int64)
        self._log_arr = np.array(log, dtype=np.int64)

    # -- representation --------------------------------------------------------

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def coeffs(self, x: int) -> tuple[int, ...]:
        """Base-p digits of ``x``, constant term first."""
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        x, scale = 0, 1
        for c in coeffs:
            x += (c % self.p) * scale
            scale *= self.p
        return x

    def __call__(self, x: int) -> int:
        """Coerce an integer to an element.

        For prime fields any integer is reduced mod p.  For extension fields
        integers in [0, q) are encodings and negative integers denote the
        additive inverse of the encoded element (so -1 is minus one).
        """
        x = int(x)
        if self.m == 1:
            return x % self.p
        if 0 <= x < self.q:
            return x
        if -self.q < x < 0:
            return self.neg(-x)
        raise FieldError(f"{x} is not an element encoding of {self}")

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return (field_make, (self.p, self.m, self.modulus))

    # -- scalar arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.add_table is not None:
            return int(self.add_table[a, b])
        return self.from_coeffs(x + y for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs(-x for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(int(a), self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if self.m == 1:
            if e < 0:
                a, e = self.inv(a), -e
            return pow(int(a), e, self.p)
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        """a -> a^(p^times)."""
        return self.pow(a, self.p**times)

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.q // self.p)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    # -- vectorized arithmetic -------------------------------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.add_table is not None:
            return self.add_table[a, b]
        return ((self._digits[a] + self._digits[b]) % self.p) @ self._powers

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        if getattr(self, "_neg_table", None) is not None:
            return self._neg_table[a]
        return ((-self._digits[a]) % self.p) @ self._powers

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a, b = np.broadcast_arrays(a, b)
        out = self._exp_arr[(self._log_arr[a] + self._log_arr[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return np.vectorize(lambda x: pow(int(x), self.p - 2, self.p), otypes=[np.int64])(a)
        return self._exp_arr[(-self._log_arr[a]) % (self.q - 1)]


def _check_irreducible(p: int, m: int, modulus: tuple[int, ...]) -> None:
    from . import poly

    if len(modulus) != m + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus {list(modulus)} is not monic of degree {m}")
    if any(not 0 <= c < p for c in modulus):
        raise FieldError(f"modulus coefficients must lie in [0, {p})")
    if not poly.is_irreducible(modulus, field_make(p)):
        raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Monic irreducible of degree m over GF(p) with the smallest encoding.

    Candidates x^m + c_{m-1} x^{m-1} + ... + c_0 are scanned in increasing
    order of c_0 + c_1 p + ... + c_{m-1} p^{m-1}.
    """
    from . import poly

    base = field_make(p)
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = tuple(low) + (1,)
        if poly.is_irreducible(cand, base):
            return cand
    raise FieldError(f"no irreducible of degree {m} over GF({p})")  # unreachable


@functools.lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    else:
        _check_irreducible(p, m, modulus)
    return FieldSpec(p, m, modulus)


def field_make(
    p: int,
    m: int = 1,
    modulus: Sequence[int] | None = None,
    cap: int = config.FIELD_ORDER_CAP,
) -> FieldSpec:
    """Return GF(p^m).

    Without ``modulus`` the smallest irreducible (see
    :func:`smallest_irreducible`) is used, so repeated runs agree.  For m = 1
    elements are the residues 0..p-1 and a supplied modulus must be linear.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"extension degree must be >= 1, got {m}")
    if m == 1 and p > config.PRIME_FIELD_CAP:
        raise FieldError(f"prime {p} exceeds the prime-field cap {config.PRIME_FIELD_CAP}")
    if m > 1 and p**m > cap:
        raise FieldError(f"field order {p}^{m} exceeds the cap {cap}")
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        while modulus and modulus[-1] == 0:
            modulus = modulus[:-1]
        if m == 1:
            if len(modulus) != 2 or modulus[1] != 1:
                raise FieldError(f"modulus {list(modulus)} is not monic of degree 1")
            modulus = None
    return _field_cached(p, m, modulus)


def gf(q: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """GF(q) for a prime power q."""
    p, m = prime_power(q)
    return field_make(p, m, modulus)


def ext_field(base: FieldSpec, d: int, modulus: Sequence[int] | None = None):
    """Degree-d extension of ``base`` and the embedding base -> extension.

    Returns ``(ext, embed)`` where ``embed`` maps element encodings of
    ``base`` to encodings in ``ext`` (scalar ints or numpy arrays).

    Over a prime field the extension is GF(p)[x]/(modulus) (``modulus`` is
    any monic irreducible of degree d; default the smallest), and elements
    of GF(p) keep their encodings.  Over GF(p^m) with m > 1 the extension is
    GF(p^(md)) with its default modulus and base is embedded by sending the
    generator of ``base`` to the smallest root of ``base.modulus``.
    """
    if d < 1:
        raise FieldError(f"extension degree must be >= 1, got {d}")
    if d == 1 and modulus is None:
        return base, _identity_embedding
    if base.m == 1:
        ext = field_make(base.p, d, modulus)
        return ext, _identity_embedding
    if modulus is not None:
        raise FieldError("explicit modulus only supported over a prime field")
    from . import poly

    ext = field_make(base.p, base.m * d)
    roots = poly.roots(base.modulus, ext)
    if not roots:
        raise FieldError(f"{base} does not embed in {ext}")  # unreachable
    gen = min(roots)
    powers = [1]
    for _ in range(base.m - 1):
        powers.append(ext.mul(powers[-1], gen))
    table = np.zeros(base.q, dtype=np.int64)
    for x in range(base.q):
        acc = 0
        for c, g in zip(base.coeffs(x), powers):
            if c:
                acc = ext.add(acc, ext.mul(ext.from_int(c), g))
        table[x] = acc
    table.setflags(write=False)

    def embed(x):
        if isinstance(x, np.ndarray):
            return table[x]
        return int(table[x])

    return ext, embed


def _identity_embedding(x):
    if isinstance(x, np.ndarray):
        return x.copy()
    return int(x)
