"""The twisted centralizer code C(A, a) = {B : AB = aBA} as a linear code of length n^2."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import _backend, config
from .field import FieldSpec
from .matrix import (
    Mat,
    kernel_from_rref,
    kron_array,
    matmul_array,
    rank_array,
    rref_array,
    unvec,
    vec,
)

EXACT = "exact"
BOUNDS_ONLY = "bounds-only"


class NotACodeword(ValueError):
    """Raised when decoding a matrix outside the code; ``syndrome`` holds AB - aBA."""

    def __init__(self, syndrome: Mat):
        super().__init__("matrix is not a codeword (nonzero syndrome)")
        self.syndrome = syndrome


class BudgetExceeded(ValueError):
    pass


class UncorrectableError(ValueError):
    """Received word whose syndrome matches no correctable error pattern."""


@dataclass(frozen=True)
class CodeParams:
    N: int
    k: int
    d: int
    status: str = EXACT
    d_lower: int = 1

    def __post_init__(self):
        if not 0 <= self.k <= self.N:
            raise ValueError(f"dimension {self.k} outside [0, {self.N}]")
        if self.status == EXACT:
            object.__setattr__(self, "d_lower", self.d)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.N, self.k, self.d)


def parity_check_array(F: FieldSpec, A: np.ndarray, a: int) -> np.ndarray:
    """I_n (x) A - a (A^t (x) I_n) as an n^2 x n^2 array."""
    n = A.shape[0]
    eye = np.eye(n, dtype=np.int64)
    left = kron_array(F, eye, A)
    right = kron_array(F, A.T, eye)
    return F.vsub(left, F.vmul(right, a))


def _steps(F: FieldSpec, G: np.ndarray) -> np.ndarray:
    if F.m == 1:
        return G[:, None, :]
    nxt = (np.arange(F.q) + 1) % F.q
    diff = F.vsub(nxt, np.arange(F.q))  # (c+1) - c in the field
    return F.vmul(diff[None, :, None], G[:, None, :])


def projective_weight_hist(F: FieldSpec, G: np.ndarray, limit: int) -> tuple[np.ndarray, int]:
    """Weight histogram over one representative per scalar class of nonzero codewords.

    Representatives are the messages whose first nonzero coefficient is 1;
    there are (q^k - 1)/(q - 1) of them.  At most ``limit`` are visited.
    """
    if F.m > 1 and F.add_table is None:
        raise BudgetExceeded(f"distance enumeration over {F} needs q <= {config.TABLE_ORDER_LIMIT}")
    G = np.ascontiguousarray(G, dtype=np.int64)
    if G.shape[0] == 0:
        return np.zeros(G.shape[1] + 1, dtype=np.int64), 0
    return _backend.projective_weights(
        G, _steps(F, G), F.q, F.p, F.add_table if F.m > 1 else None,
        F.mul_table if F.m > 1 else None, int(limit),
    )


def projective_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def low_weight_codeword(F: FieldSpec, G: np.ndarray, budget: int, seed: int = config.DEFAULT_SEED) -> np.ndarray:
    """Lowest-weight nonzero codeword met by low-weight message enumeration.

    Runs over a few information sets (identity plus seeded random column
    orders); on each, messages of weight 1, 2, ... with first nonzero
    coefficient 1 are tried until that set's share of ``budget`` is spent.
    """
    k, N = G.shape
    rng = np.random.default_rng(seed)
    best = None
    sets = 4
    share = max(1, budget // sets)
    nonzero = np.arange(1, F.q, dtype=np.int64)

    def keep(cands):
        nonlocal best
        wts = np.count_nonzero(cands, axis=1)
        i = int(wts.argmin())
        if best is None or wts[i] < np.count_nonzero(best):
            best = cands[i].copy()

    for t in range(sets):
        perm = np.arange(N) if t == 0 else rng.permutation(N)
        R, r, _ = rref_array(F, G[:, perm])
        sysG = np.empty_like(R[:r])
        sysG[:, perm] = R[:r]
        keep(sysG)
        spent = r
        for w in range(2, r + 1):
            if spent >= share:
                break
            tails = np.array(list(itertools.product(nonzero, repeat=w - 1)), dtype=np.int64)
            for combo in itertools.combinations(range(r), w):
                rows = sysG[list(combo)]
                cw = np.broadcast_to(rows[0], (len(tails), N))
                for j in range(1, w):
                    cw = F.vadd(cw, F.vmul(tails[:, j - 1][:, None], rows[j][None, :]))
                keep(cw)
                spent += len(tails)
                if spent >= share:
                    break
    return best


def distance_from_generator(
    F: FieldSpec, G: np.ndarray, budget: int | None = None, search_budget: int = 2**18, seed: int = config.DEFAULT_SEED
) -> tuple[int | None, str, int]:
    """(d, status, d_lower) of the code spanned by the rows of G.

    Returns ``(None, EXACT, 0)`` for k = 0 (caller applies its convention).
    """
    budget = config.distance_budget(budget)
    k, N = G.shape
    if k == 0:
        return None, EXACT, 0
    classes = projective_count(F.q, k)
    if classes <= budget:
        hist, _ = projective_weight_hist(F, G, classes)
        return int(np.nonzero(hist[1:])[0][0]) + 1, EXACT, 0
    d_upper = int(np.count_nonzero(low_weight_codeword(F, G, min(budget, search_budget), seed)))
    return d_upper, BOUNDS_ONLY, 1


def code_params_array(F: FieldSpec, A: np.ndarray, a: int, budget: int | None = None) -> tuple[int, int, str]:
    """(k, d, status) for C(A, a) without building a TwistedCode (census fast path)."""
    n = A.shape[0]
    N = n * n
    H = parity_check_array(F, A, a)
    R, r, piv = rref_array(F, H)
    k = N - r
    if k == 0:
        return 0, N, EXACT
    G = kernel_from_rref(F, R, r, piv)
    d, status, _ = distance_from_generator(F, G, budget)
    return k, d, status


class TwistedCode:
    """C(A, a) with its parity-check matrix, basis and lazily computed distance.

    The basis comes from the kernel of ``H = I (x) A - a (A^t (x) I)``: one
    basis matrix per free column of rref(H).  The generator matrix ``G``
    (rows vec(A_i)) is therefore the identity on those free columns, which
    makes message recovery a coordinate read-off.
    """

    def __init__(self, A: Mat, a: int):
        if not A.is_square():
            raise ValueError(f"A must be square, got shape {A.shape}")
        F = A.field
        self.field = F
        self.n = A.rows
        self.A = A
        self.a = F(a)
        self.H = Mat(F, parity_check_array(F, A.data, self.a), check=False)
        R, r, piv = rref_array(F, self.H.data)
        self.rank_H = r
        self.pivots = tuple(piv)
        self.G = kernel_from_rref(F, R, r, piv)
        self.G.setflags(write=False)
        self.free = tuple(c for c in range(self.N) if c not in set(piv))
        self.basis = [unvec(row, self.n, F) for row in self.G]
        self._params: CodeParams | None = None
        self._lock = threading.Lock()

    @property
    def N(self) -> int:
        return self.n * self.n

    @property
    def k(self) -> int:
        return len(self.free)

    def __repr__(self) -> str:
        return f"TwistedCode(n={self.n}, a={self.a}, {self.field!r}, k={self.k})"

    def _check_shape(self, B: Mat) -> None:
        if B.field != self.field:
            raise ValueError(f"field mismatch: {B.field} vs {self.field}")
        if B.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix, got {B.shape}")

    def syndrome(self, B: Mat) -> Mat:
        """AB - aBA."""
        self._check_shape(B)
        F = self.field
        AB = matmul_array(F, self.A.data, B.data)
        BA = matmul_array(F, B.data, self.A.data)
        return Mat(F, F.vsub(AB, F.vmul(BA, self.a)), check=False)

    def contains(self, B: Mat) -> bool:
        return self.syndrome(B).is_zero()

    def contains_vector(self, v: np.ndarray) -> bool:
        return not matmul_array(self.field, self.H.data, np.asarray(v, dtype=np.int64)[:, None]).any()

    def encode(self, message) -> Mat:
        """sum_i message[i] * A_i."""
        F = self.field
        msg = np.array([F(x) for x in message], dtype=np.int64)
        if msg.size != self.k:
            raise ValueError(f"message length {msg.size} != dimension {self.k}")
        if self.k == 0:
            return Mat.zeros(F, self.n)
        v = matmul_array(F, msg[None, :], self.G)[0]
        return unvec(v, self.n, F)

    def decode_to_message(self, B: Mat) -> np.ndarray:
        """Coordinates of a codeword in the basis (its entries on the free columns)."""
        s = self.syndrome(B)
        if not s.is_zero():
            raise NotACodeword(s)
        return vec(B)[list(self.free)]

    def min_distance(self, budget: int | None = None, seed: int = config.DEFAULT_SEED) -> CodeParams:
        with self._lock:
            if self._params is None or (self._params.status != EXACT and budget is not None):
                d, status, lower = distance_from_generator(self.field, np.asarray(self.G), budget, seed=seed)
                if d is None:
                    self._params = CodeParams(self.N, 0, self.N)  # zero-code convention
                else:
                    self._params = CodeParams(self.N, self.k, d, status, lower)
            return self._params

    def low_weight_codeword(self, budget: int = 2**18, seed: int = config.DEFAULT_SEED) -> Mat:
        """A nonzero codeword of small weight (an upper-bound witness for d)."""
        if self.k == 0:
            raise ValueError("the zero code has no nonzero codeword")
        return unvec(low_weight_codeword(self.field, np.asarray(self.G), budget, seed), self.n, self.field)

    def weight_distribution(self, budget: int | None = None) -> dict[int, int]:
        """Weight -> number of codewords, zero codeword included."""
        budget = config.distance_budget(budget)
        q = self.field.q
        if q**self.k > budget:
            raise BudgetExceeded(f"{q}^{self.k} codewords exceed the budget {budget}")
        dist = {0: 1}
        if self.k:
            hist, _ = projective_weight_hist(self.field, np.asarray(self.G), projective_count(q, self.k))
            for w in np.nonzero(hist)[0]:
                dist[int(w)] = int(hist[w]) * (q - 1)
        return dist

    def single_error_decoder(self) -> "SingleErrorDecoder | DecoderRefusal":
        return SingleErrorDecoder.build(self)

    def coset_leader_decoder(self, cap: int = config.COSET_TABLE_CAP) -> "CosetLeaderDecoder":
        return CosetLeaderDecoder.build(self, cap)

    def in_span(self, vectors) -> bool:
        """True if every row of ``vectors`` (vec form) is a codeword."""
        V = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
        return not matmul_array(self.field, self.H.data, V.T).any()


def code_build(A: Mat, a: int) -> TwistedCode:
    return TwistedCode(A, a)


# -- decoding ---------------------------------------------------------------------


@dataclass(frozen=True)
class DecoderRefusal:
    """Why single-error decoding is impossible.

    ``pair`` holds two single errors ``(b, i, j)`` (0-based) with equal
    syndromes; the second is ``None`` when the first is itself a codeword
    (its syndrome collides with that of the zero error).
    """

    reason: str
    pair: tuple

    def __bool__(self) -> bool:
        return False


@dataclass
class SingleErrorDecoder:
    code: TwistedCode
    table: dict = dc_field(repr=False)

    @classmethod
    def build(cls, code: TwistedCode):
        F, n, H = code.field, code.n, code.H.data
        table = {}
        for j in range(n):
            for i in range(n):
                col = H[:, i + n * j]
                for b in range(1, F.q):
                    s = F.vmul(col, b)
                    if not s.any():
                        return DecoderRefusal("weight-1 codeword", ((b, i, j), None))
                    key = s.tobytes()
                    if key in table:
                        return DecoderRefusal("syndrome collision", (table[key], (b, i, j)))
                    table[key] = (b, i, j)
        return cls(code, table)

    def decode(self, R: Mat) -> tuple[Mat, Mat]:
        """Split a received matrix into (codeword, error) with error weight <= 1."""
        code = self.code
        F = code.field
        s = vec(code.syndrome(R))
        E = np.zeros((code.n, code.n), dtype=np.int64)
        if s.any():
            hit = self.table.get(s.tobytes())
            if hit is None:
                raise UncorrectableError("syndrome matches no single error")
            b, i, j = hit
            E[i, j] = b
        err = Mat(F, E, check=False)
        return R - err, err


@dataclass
class CosetLeaderDecoder:
    """Syndrome table of minimum-weight coset leaders (first found in scan order)."""

    code: TwistedCode
    table: dict = dc_field(repr=False)

    @classmethod
    def build(cls, code: TwistedCode, cap: int = config.COSET_TABLE_CAP):
        F, H, N = code.field, code.H.data, code.N
        size = F.q**code.rank_H
        if size > cap:
            raise BudgetExceeded(f"{size} cosets exceed the table cap {cap}")
        zero = np.zeros(N, dtype=np.int64)
        table = {matmul_array(F, H, zero[:, None])[:, 0].tobytes(): zero}
        nonzero = np.arange(1, F.q, dtype=np.int64)
        w = 0
        while len(table) < size:
            w += 1
            vals = np.array(list(itertools.product(nonzero, repeat=w)), dtype=np.int64)
            for pos in itertools.combinations(range(N), w):
                E = np.zeros((len(vals), N), dtype=np.int64)
                E[:, list(pos)] = vals
                S = matmul_array(F, E, H.T)
                for e, s in zip(E, S):
                    key = s.tobytes()
                    if key not in table:
                        table[key] = e
                if len(table) == size:
                    break
        return cls(code, table)

    def decode(self, R: Mat) -> tuple[Mat, Mat]:
        code = self.code
        s = vec(code.syndrome(R))
        e = self.table[s.tobytes()]
        err = unvec(e, code.n, code.field)
        return R - err, err


def rank_of(F: FieldSpec, vectors) -> int:
    V = np.atleast_2d(np.asarray(vectors, dtype=np.int64))
    return rank_array(F, V)
