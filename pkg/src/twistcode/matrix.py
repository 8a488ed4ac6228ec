"""Dense matrices over a finite field.

``Mat`` wraps a read-only int64 array of element encodings together with its
:class:`~twistcode.field.FieldSpec`.  Vectors are plain 1-D numpy arrays.
Vectorization is column-major: ``vec(B)[i + n*j] == B[i, j]``.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from . import _backend, poly
from .field import FieldSpec, gf


class MatrixFormatError(ValueError):
    """Malformed matrix text or JSON; carries a line/column position."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.col = col


class Mat:
    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data, *, check: bool = True):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-D, got shape {arr.shape}")
        if check and arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries must be element encodings in [0, {field.q})")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable[int]]) -> "Mat":
        """Build from nested integers, coercing each through ``field(x)`` (so -1 works)."""
        return cls(field, [[field(x) for x in row] for row in rows])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> "Mat":
        return cls(field, np.zeros((rows, rows if cols is None else cols), dtype=np.int64), check=False)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        return cls(field, np.eye(n, dtype=np.int64), check=False)

    # -- basic protocol ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not self.data.any()

    def __getitem__(self, ij) -> int:
        return int(self.data[ij])

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Mat({self.field!r}, {self.tolist()})"

    def _same_field(self, other: "Mat") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return Mat(self.field, self.field.vadd(self.data, other.data), check=False)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return Mat(self.field, self.field.vsub(self.data, other.data), check=False)

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.field.vneg(self.data), check=False)

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def scale(self, c: int) -> "Mat":
        return Mat(self.field, self.field.vmul(self.data, self.field(c)), check=False)

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T, check=False)

    def trace(self) -> int:
        acc = 0
        for i in range(min(self.shape)):
            acc = self.field.add(acc, int(self.data[i, i]))
        return acc


def mat_mul(X: Mat, Y: Mat) -> Mat:
    X._same_field(Y)
    if X.cols != Y.rows:
        raise ValueError(f"cannot multiply {X.shape} by {Y.shape}")
    return Mat(X.field, matmul_array(X.field, X.data, Y.data), check=False)


def matmul_array(F: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if F.m == 1:
        return (x @ y) % F.p
    out = np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    for t in range(x.shape[1]):
        out = F.vadd(out, F.vmul(x[:, t][:, None], y[t][None, :]))
    return out


def mat_pow(X: Mat, e: int) -> Mat:
    result = Mat.identity(X.field, X.rows)
    base = X
    while e:
        if e & 1:
            result = result @ base
        base = base @ base
        e >>= 1
    return result


def kron(X: Mat, Y: Mat) -> Mat:
    X._same_field(Y)
    return Mat(X.field, kron_array(X.field, X.data, Y.data), check=False)


def kron_array(F: FieldSpec, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    prod = F.vmul(x[:, None, :, None], y[None, :, None, :])
    return prod.reshape(x.shape[0] * y.shape[0], x.shape[1] * y.shape[1])


def vec(B: Mat) -> np.ndarray:
    """Column-major flattening (reads B column by column)."""
    return B.data.flatten(order="F")


def unvec(v, n: int, field: FieldSpec) -> Mat:
    v = np.asarray(v, dtype=np.int64)
    if v.ndim != 1 or v.size != n * n:
        raise ValueError(f"vector of length {v.size} does not match an {n}x{n} matrix")
    return Mat(field, v.reshape((n, n), order="F"))


def hamming_weight(B) -> int:
    data = B.data if isinstance(B, Mat) else np.asarray(B)
    return int(np.count_nonzero(data))


def rref_array(F: FieldSpec, x: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    if F.m == 1:
        R, r, piv = _backend.rref_modp(x, F.p)
        return R, int(r), list(piv)
    R = np.array(x, dtype=np.int64)
    rows, cols = R.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = F.vmul(R[r], F.inv(int(R[r, c])))
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = F.vsub(R[others], F.vmul(R[others, c][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rref(X: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns (first nonzero wins)."""
    R, r, piv = rref_array(X.field, X.data)
    return Mat(X.field, R, check=False), r, piv


def rank_array(F: FieldSpec, x: np.ndarray) -> int:
    if F.m == 1:
        return int(_backend.rank_modp(x, F.p))
    return rref_array(F, x)[1]


def rank(X: Mat) -> int:
    return rank_array(X.field, X.data)


def kernel_from_rref(F: FieldSpec, R: np.ndarray, r: int, pivots: Sequence[int]) -> np.ndarray:
    """Kernel basis as rows of a (cols - r) x cols array.

    One vector per free column f: entry 1 at f, -R[i, f] at pivot column i,
    zero elsewhere.
    """
    cols = R.shape[1]
    pivots = list(pivots)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if r:
            K[:, pivots] = F.vneg(R[:r, free]).T
    return K


def kernel_array(F: FieldSpec, x: np.ndarray) -> np.ndarray:
    R, r, piv = rref_array(F, x)
    return kernel_from_rref(F, R, r, piv)


def kernel_basis(X: Mat) -> list[np.ndarray]:
    """Basis of {v : Xv = 0}, derived from the free columns of rref(X)."""
    return list(kernel_array(X.field, X.data))


def charpoly(X: Mat) -> poly.Poly:
    """det(xI - X) via reduction to upper Hessenberg form."""
    if not X.is_square():
        raise ValueError(f"characteristic polynomial of non-square {X.shape} matrix")
    F = X.field
    n = X.rows
    h = [[int(v) for v in row] for row in X.data]
    add, sub, mul = F.add, F.sub, F.mul
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = F.inv(h[j + 1][j])
        for i in range(j + 2, n):
            if h[i][j]:
                t = mul(h[i][j], inv)
                # row_i -= t row_{j+1}; col_{j+1} += t col_i
                hi, hj = h[i], h[j + 1]
                for c in range(n):
                    if hj[c]:
                        hi[c] = sub(hi[c], mul(t, hj[c]))
                for row in h:
                    if row[i]:
                        row[j + 1] = add(row[j + 1], mul(t, row[i]))
    # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{l=i+1..k} h_{l,l-1}) p_{i-1}
    polys: list[poly.Poly] = [(1,)]
    for k in range(n):
        pk = poly.mul((F.neg(h[k][k]), 1), polys[k], F)
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = mul(prod, h[i + 1][i])
            if not prod:
                break
            c = mul(h[i][k], prod)
            if c:
                pk = poly.sub(pk, poly.scale(polys[i], c, F), F)
        polys.append(pk)
    return polys[n]


def poly_at_matrix(f: poly.Poly, X: Mat) -> Mat:
    """f(X) by Horner's rule."""
    F = X.field
    n = X.rows
    acc = Mat.zeros(F, n)
    ident = Mat.identity(F, n)
    for c in reversed(f):
        acc = acc @ X + ident.scale(c)
    return acc


def embed(X: Mat, ext: FieldSpec, embedding) -> Mat:
    return Mat(ext, embedding(X.data), check=False)


# -- text and JSON formats --------------------------------------------------------


def format_matrix(X: Mat) -> str:
    """``q rows [cols]`` header then one line of integers per row."""
    head = f"{X.field.q} {X.rows}" + ("" if X.is_square() else f" {X.cols}")
    lines = [head] + [" ".join(str(int(v)) for v in row) for row in X.data]
    return "\n".join(lines) + "\n"


def _field_for(q: int, line: int) -> FieldSpec:
    try:
        return gf(q)
    except ValueError as exc:
        raise MatrixFormatError(str(exc), line, 1) from None


def parse_matrix(text: str) -> Mat:
    """Inverse of :func:`format_matrix`; ``#`` comment lines and blank lines are skipped."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) not in (2, 3):
        raise MatrixFormatError("header must be 'q rows [cols]'", lineno, 1)
    try:
        nums = [int(x) for x in parts]
    except ValueError:
        raise MatrixFormatError("header must be integers 'q rows [cols]'", lineno, 1) from None
    q, nrows = nums[0], nums[1]
    ncols = nums[2] if len(nums) == 3 else nrows
    if nrows < 1 or ncols < 1:
        raise MatrixFormatError("matrix dimensions must be positive", lineno, 1)
    F = _field_for(q, lineno)
    body = lines[1:]
    if len(body) != nrows:
        raise MatrixFormatError(f"expected {nrows} rows, found {len(body)}", body[-1][0] if body else lineno)
    data = []
    for lineno, ln in body:
        toks = ln.split()
        if len(toks) != ncols:
            raise MatrixFormatError(f"expected {ncols} entries, found {len(toks)}", lineno)
        row = []
        for col, tok in enumerate(toks, start=1):
            try:
                v = int(tok)
            except ValueError:
                raise MatrixFormatError(f"not an integer: {tok!r}", lineno, col) from None
            if not 0 <= v < q:
                raise MatrixFormatError(f"entry {v} outside [0, {q})", lineno, col)
            row.append(v)
        data.append(row)
    return Mat(F, data)


def matrix_to_json(X: Mat) -> dict:
    return {"q": X.field.q, "rows": X.rows, "cols": X.cols, "entries": X.tolist()}


def matrix_from_json(obj) -> Mat:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        F = gf(int(obj["q"]))
        M = Mat(F, obj["entries"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"bad matrix JSON: {exc}") from None
    if M.shape != (obj["rows"], obj["cols"]):
        raise MatrixFormatError("rows/cols disagree with entries")
    return M
