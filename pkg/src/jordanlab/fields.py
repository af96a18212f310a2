"""Small finite fields and matrix groups over them.

Field elements are integers ``0 <= a < q``. For a prime field that is the
residue itself; for ``F_{p^2}`` the integer ``a0 + a1*p`` stands for
``a0 + a1*x`` modulo a fixed irreducible quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import SingularMatrix, UnsupportedField
from .group import FiniteGroup
from .perm import Permutation

# x^2 + c1*x + c0, stored as (c0, c1)
IRREDUCIBLE = {4: (1, 1), 9: (2, 1), 25: (2, 1)}
PRIMES = {2, 3, 5, 7, 11}
SUPPORTED = (2, 3, 4, 5, 7, 9, 11, 25)


class GF:
    """Addition/multiplication tables for one field."""

    def __init__(self, q: int):
        if q not in SUPPORTED:
            raise UnsupportedField(f"F{q} is not supported (choose from {SUPPORTED})")
        self.q = q
        self.p = q if q in PRIMES else int(round(q ** 0.5))
        self.degree = 1 if q in PRIMES else 2
        p = self.p
        els = np.arange(q)
        if self.degree == 1:
            self.add = (els[:, None] + els[None, :]) % p
            self.mul = (els[:, None] * els[None, :]) % p
        else:
            c0, c1 = IRREDUCIBLE[q]
            a0, a1 = els % p, els // p
            s0 = (a0[:, None] + a0[None, :]) % p
            s1 = (a1[:, None] + a1[None, :]) % p
            self.add = s0 + p * s1
            # (a0 + a1 x)(b0 + b1 x), with x^2 = -c1 x - c0
            t0 = a0[:, None] * a0[None, :]
            t1 = a0[:, None] * a1[None, :] + a1[:, None] * a0[None, :]
            t2 = a1[:, None] * a1[None, :]
            m0 = (t0 - c0 * t2) % p
            m1 = (t1 - c1 * t2) % p
            self.mul = m0 + p * m1
        self.neg = np.argmin(self.add, axis=1)  # add[a, neg[a]] == 0
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])
        self._check_axioms()

    def _check_axioms(self):
        q = self.q
        nz = np.arange(1, q)
        if not (self.mul[nz, self.inv[nz]] == 1).all():
            raise UnsupportedField(f"F{q}: multiplicative inverses fail")
        # a field's multiplicative group has no zero divisors
        if (self.mul[1:, 1:] == 0).any():
            raise UnsupportedField(f"F{q}: defining polynomial is reducible")

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def from_coeffs(self, c) -> int:
        """Accept a residue or a coefficient pair ``[a0, a1]``."""
        if isinstance(c, (list, tuple)):
            if self.degree == 1:
                raise ValueError(f"coefficient pair given for prime field F{self.q}")
            a0, a1 = (int(x) % self.p for x in c)
            return a0 + self.p * a1
        c = int(c)
        return c % self.p if self.degree == 1 else c

    def primitive_element(self) -> int:
        for a in range(2, self.q):
            x, k = a, 1
            while x != 1:
                x = int(self.mul[x, a])
                k += 1
            if k == self.q - 1:
                return a
        return 1  # F2


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


@dataclass(frozen=True)
class FqMatrix:
    q: int
    dim: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence]) -> "FqMatrix":
        F = field(q)
        ent = tuple(tuple(F.from_coeffs(c) for c in row) for row in rows)
        dim = len(ent)
        if any(len(r) != dim for r in ent):
            raise ValueError("matrix must be square")
        return cls(q, dim, ent)

    @classmethod
    def identity(cls, q: int, dim: int) -> "FqMatrix":
        return cls(q, dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    def array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64)

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        F = field(self.q)
        A, B = self.array(), other.array()
        out = [[0] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                s = 0
                for k in range(self.dim):
                    s = int(F.add[s, F.mul[A[i, k], B[k, j]]])
                out[i][j] = s
        return FqMatrix(self.q, self.dim, tuple(map(tuple, out)))

    def det(self) -> int:
        F = field(self.q)
        A = [list(r) for r in self.entries]
        n, d = self.dim, 1
        for c in range(n):
            piv = next((r for r in range(c, n) if A[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                d = int(F.neg[d])
            d = int(F.mul[d, A[c][c]])
            ic = int(F.inv[A[c][c]])
            for r in range(c + 1, n):
                f = int(F.mul[A[r][c], ic])
                if f:
                    nf = int(F.neg[f])
                    A[r] = [int(F.add[A[r][k], F.mul[nf, A[c][k]]]) for k in range(n)]
        return d

    def kron(self, other: "FqMatrix") -> "FqMatrix":
        F = field(self.q)
        A, B = self.array(), other.array()
        n, m = self.dim, other.dim
        rows = [[int(F.mul[A[i // m, j // m], B[i % m, j % m]]) for j in range(n * m)] for i in range(n * m)]
        return FqMatrix(self.q, n * m, tuple(map(tuple, rows)))

    def to_json(self) -> list[list]:
        F = field(self.q)
        if F.degree == 1:
            return [list(r) for r in self.entries]
        return [[[a % F.p, a // F.p] for a in r] for r in self.entries]


def all_vectors(q: int, dim: int) -> np.ndarray:
    """All of ``F_q^dim`` as rows; row ``i`` has coordinates = base-q digits
    of ``i`` (coordinate 0 least significant)."""
    idx = np.arange(q ** dim)
    return np.stack([(idx // q ** k) % q for k in range(dim)], axis=1)


def apply(M: FqMatrix, V: np.ndarray) -> np.ndarray:
    """``M @ v`` for every row ``v`` of ``V``."""
    F = field(M.q)
    A = M.array()
    out = np.zeros_like(V)
    for i in range(M.dim):
        acc = np.zeros(len(V), dtype=np.int64)
        for k in range(M.dim):
            acc = F.add[acc, F.mul[A[i, k], V[:, k]]]
        out[:, i] = acc
    return out


def _encode(V: np.ndarray, q: int) -> np.ndarray:
    return (V * q ** np.arange(V.shape[1])).sum(axis=1)


def projective_points(q: int, dim: int) -> np.ndarray:
    """Representatives of lines: first nonzero coordinate equal to 1."""
    V = all_vectors(q, dim)
    nz = V != 0
    has = nz.any(axis=1)
    lead = V[np.arange(len(V)), np.argmax(nz, axis=1)]
    return V[has & (lead == 1)]


def _normalize(V: np.ndarray, F: GF) -> np.ndarray:
    nz = V != 0
    lead = V[np.arange(len(V)), np.argmax(nz, axis=1)]
    return F.mul[F.inv[lead][:, None], V]


AFFINE = "affine"
PROJECTIVE = "projective"


def matrix_to_perm(q: int, dim: int, generators: Sequence[FqMatrix], action: str,
                   *, cap: int | None = None, name: str | None = None) -> FiniteGroup:
    """Permutation group induced by matrices acting on nonzero vectors
    (``affine``, faithful) or on lines (``projective``, kernel = scalars)."""
    F = field(q)
    if action not in (AFFINE, PROJECTIVE):
        raise ValueError(f"unknown action {action!r}")
    if action == PROJECTIVE and dim < 2:
        raise ValueError("projective action needs dim >= 2")
    for g in generators:
        if g.q != q or g.dim != dim:
            raise ValueError("generator does not match field/dimension")
        if g.det() == 0:
            raise SingularMatrix(f"singular generator {g.entries}")
    if action == AFFINE:
        pts = all_vectors(q, dim)[1:]
        lookup = np.arange(-1, q ** dim - 1)  # code -> point index
    else:
        pts = projective_points(q, dim)
        lookup = np.full(q ** dim, -1)
        lookup[_encode(pts, q)] = np.arange(len(pts))
    perms = []
    for g in generators:
        img = apply(g, pts)
        if action == PROJECTIVE:
            img = _normalize(img, F)
        perms.append(Permutation._trusted(tuple(int(x) for x in lookup[_encode(img, q)])))
    return FiniteGroup(len(pts), perms, cap=cap, name=name)


def perm_to_matrix(q: int, dim: int, perm: Permutation) -> FqMatrix:
    """Inverse of the affine action: read off the images of the basis."""
    V = all_vectors(q, dim)
    cols = []
    for k in range(dim):
        code = q ** k
        cols.append(V[perm(code - 1) + 1])
    rows = tuple(tuple(int(cols[j][i]) for j in range(dim)) for i in range(dim))
    return FqMatrix(q, dim, rows)


def scalar_matrices(q: int, dim: int, det_one: bool = True) -> list[FqMatrix]:
    F = field(q)
    out = []
    for a in range(1, q):
        d = 1
        for _ in range(dim):
            d = int(F.mul[d, a])
        if d == 1 or not det_one:
            out.append(FqMatrix(q, dim, tuple(tuple(a if i == j else 0 for j in range(dim)) for i in range(dim))))
    return out


def symplectic_transvection(q: int, v: Sequence[int]) -> FqMatrix:
    """``x -> x + <x, v> v`` for the standard form <x,y> = x0 y2 + x1 y3 - x2 y0 - x3 y1
    on ``F_q^4`` (prime q)."""
    F = field(q)
    if F.degree != 1:
        raise UnsupportedField("transvections are only built over prime fields")
    J = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    v = np.asarray(v) % q
    # <x, v> = x^T J v, so the matrix is I + v (J v)^T
    M = (np.eye(4, dtype=np.int64) + np.outer(v, J @ v)) % q
    return FqMatrix(q, 4, tuple(tuple(int(x) for x in r) for r in M))


def sl2_generators(q: int) -> list[FqMatrix]:
    """Generators of SL2(F_q): the Weyl element, a diagonal torus element and
    one unipotent."""
    F = field(q)
    z = F.primitive_element()
    one, mone = 1, int(F.neg[1])
    w = FqMatrix(q, 2, ((0, mone), (one, 0)))
    u = FqMatrix(q, 2, ((1, 1), (0, 1)))
    d = FqMatrix(q, 2, ((z, 0), (0, int(F.inv[z]))))
    return [w, u, d]
