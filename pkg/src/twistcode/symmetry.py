"""Permutation symmetries of C(A, a).

Permutations are tuples of 0-based images; ``sigma`` corresponds to the
permutation matrix P with P e_j = e_{sigma[j]}.  The pair (P, Q) acts on a
codeword by B -> P^{-1} B Q, i.e. ``B'[r, c] = B[sigma[r], tau[c]]``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import factorial

import numpy as np

from .code import TwistedCode, code_build
from .matrix import Mat, rank_array, vec


def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def compose(s, t) -> tuple:
    """(s . t)[i] = s[t[i]]; the matrix of s.t is P_s P_t."""
    return tuple(s[i] for i in t)


def inverse(s) -> tuple:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def cycles(s) -> list[tuple]:
    seen = set()
    out = []
    for i in range(len(s)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = s[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = s[j]
        out.append(tuple(cyc))
    return out


def is_semiregular(s) -> bool:
    """Non-identity with all cycles of one length."""
    lengths = {len(c) for c in cycles(s)}
    return len(lengths) == 1 and lengths != {1}


def parse_cycles(text: str, n: int) -> tuple:
    """'(1 2)(3 4)' with 1-based points -> 0-based image tuple."""
    s = list(range(n))
    body = text.replace(" ", ",")
    for grp in re.findall(r"\(([^()]*)\)", body):
        pts = [int(x) - 1 for x in grp.split(",") if x]
        if any(not 0 <= x < n for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({grp}) for degree {n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            s[a] = b
    if sorted(s) != list(range(n)):
        raise ValueError(f"cycles {text!r} do not define a permutation")
    return tuple(s)


def format_cycles(s) -> str:
    cyc = [c for c in cycles(s) if len(c) > 1]
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)


def commutes(A: Mat, s) -> bool:
    """P_s A = A P_s, i.e. A[s[i], s[j]] == A[i, j]."""
    s = np.asarray(s)
    return bool(np.array_equal(A.data[np.ix_(s, s)], A.data))


def commuting_permutations(A: Mat, n_cap: int = 8) -> list[tuple]:
    """All permutations whose matrices commute with A (brute force over S_n)."""
    n = A.rows
    if n > n_cap:
        raise ValueError(f"brute force over {n}! permutations exceeds n_cap = {n_cap}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(factorial(n), n)
    D = A.data
    permuted = D[perms[:, :, None], perms[:, None, :]]
    ok = (permuted == D[None]).all(axis=(1, 2))
    return [tuple(int(x) for x in perms[i]) for i in np.nonzero(ok)[0]]


def act(B: Mat, sigma, tau) -> Mat:
    """P^{-1} B Q."""
    return Mat(B.field, B.data[np.ix_(np.asarray(sigma), np.asarray(tau))], check=False)


def coordinate_permutation(sigma, tau, n: int) -> tuple:
    """pi with vec(P^{-1} B Q)[x] = vec(B)[pi[x]] (column-major coordinates)."""
    return tuple(sigma[r] + n * tau[c] for c in range(n) for r in range(n))


def _require_commuting(code: TwistedCode, *perms) -> None:
    for s in perms:
        if len(s) != code.n:
            raise ValueError(f"permutation of degree {len(s)} for n = {code.n}")
        if not commutes(code.A, s):
            raise ValueError(f"permutation {format_cycles(s)} does not commute with A")


def product_action_invariance(code: TwistedCode, sigma, tau) -> bool:
    """True iff P^{-1} B Q stays in the code for every basis matrix B."""
    _require_commuting(code, sigma, tau)
    return all(code.contains(act(B, sigma, tau)) for B in code.basis)


def _span_closed(F, rows: np.ndarray, images: np.ndarray) -> bool:
    if rows.shape[0] == 0:
        return True
    r = rank_array(F, rows)
    return rank_array(F, np.vstack([rows, images])) == r


@dataclass
class QuasicyclicReport:
    ell: int
    cycle_length: int
    reordering: list
    side: str
    preserved: bool
    shift_closed: bool

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "cycle_length": self.cycle_length,
            "side": self.side,
            "reordering": self.reordering,
            "preserved": self.preserved,
            "shift_closed": self.shift_closed,
        }


def quasicyclic_report(code: TwistedCode, sigma, side: str = "rows") -> QuasicyclicReport:
    """Reorder coordinates so that sigma's action becomes a cyclic shift.

    sigma acts on rows (tau = id) or columns (sigma = id, tau = sigma).  The
    induced coordinate permutation has N / L cycles of length L; listing
    cycle j's s-th point at position j + ell*s (ell = N / L) turns it into a
    shift by ell.  Both the invariance and the shift-closure of the
    reordered code are checked, not assumed.
    """
    n = code.n
    if not is_semiregular(sigma):
        raise ValueError(f"{format_cycles(sigma)} is not semiregular")
    _require_commuting(code, sigma)
    ident = identity_perm(n)
    if side == "rows":
        pi = coordinate_permutation(sigma, ident, n)
    elif side == "columns":
        pi = coordinate_permutation(ident, sigma, n)
    else:
        raise ValueError("side must be 'rows' or 'columns'")
    G = np.asarray(code.G)
    F = code.field
    preserved = _span_closed(F, G, G[:, list(pi)])
    cyc = cycles(pi)
    L = len(cyc[0])
    ell = len(cyc)
    order = [0] * code.N
    for j, c in enumerate(cyc):
        for s, x in enumerate(c):
            order[j + ell * s] = x
    Y = G[:, order]
    shift_closed = _span_closed(F, Y, np.roll(Y, ell, axis=1))
    return QuasicyclicReport(ell, L, order, side, preserved, shift_closed)


def transposition_invariance(code: TwistedCode) -> bool:
    """True iff B^t is a codeword for every basis matrix B."""
    return all(code.contains(B.T) for B in code.basis)


def transpose_maps_onto(A: Mat, a: int) -> bool:
    """{B^t : B in C(A, a)} == C(A^t, 1/a) as subspaces (a != 0)."""
    F = A.field
    a = F(a)
    src = code_build(A, a)
    dst = code_build(A.T, F.inv(a))
    if src.k != dst.k:
        return False
    if src.k == 0:
        return True
    T = np.array([vec(B.T) for B in src.basis])
    return dst.in_span(T)
