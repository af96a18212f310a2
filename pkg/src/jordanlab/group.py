"""Permutation groups given by generators, backed by a base and strong
generating set (BSGS).

The stabilizer chain is built with deterministic Schreier-Sims. Besides
order and membership it gives every element a *rank*: the mixed-radix
number formed by its transversal coordinates, level 0 most significant.
Ranks are computed in bulk with numpy, which is what makes class and
centralizer computations on groups of order ~10^6 practical: the whole
group is held as an ``(order, degree)`` array of images, and conjugation
by a generator becomes a permutation of ``range(order)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DegreeMismatch, GroupOrderOverflow, NotMember, TooLarge
from .perm import MAX_DEGREE, Permutation, image_dtype

DEFAULT_CAP = 2_097_152
MAX_ORDER = 1 << 64
_CHUNK = 1 << 18


@dataclass
class _Level:
    base: int
    gens: list[np.ndarray]
    orbit: np.ndarray
    pos: np.ndarray  # point -> orbit index, -1 outside the orbit
    U: np.ndarray  # U[k] maps base -> orbit[k]
    Uinv: np.ndarray
    stride: int = 1


def _transversal(b: int, gens: Sequence[np.ndarray], degree: int, dtype) -> _Level:
    ident = np.arange(degree, dtype=np.intp)
    pos = np.full(degree, -1, dtype=np.int64)
    pos[b] = 0
    orbit = [b]
    reps = [ident]
    k = 0
    while k < len(orbit):
        beta, u = orbit[k], reps[k]
        for s in gens:
            g = int(s[beta])
            if pos[g] < 0:
                pos[g] = len(orbit)
                orbit.append(g)
                reps.append(s[u])
        k += 1
    U = np.stack(reps).astype(dtype)
    Uinv = np.empty_like(U)
    rows = np.arange(len(orbit))[:, None]
    Uinv[rows, U] = np.arange(degree, dtype=dtype)[None, :]
    return _Level(b, list(gens), np.asarray(orbit, dtype=np.intp), pos, U, Uinv)


@dataclass
class BSGS:
    degree: int
    levels: list[_Level] = field(default_factory=list)

    @property
    def base(self) -> list[int]:
        return [lev.base for lev in self.levels]

    @property
    def strong_generators(self) -> list[np.ndarray]:
        out, seen = [], set()
        for lev in self.levels:
            for g in lev.gens:
                key = g.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(g)
        return out

    @property
    def orbit_lengths(self) -> list[int]:
        return [len(lev.orbit) for lev in self.levels]

    def order(self) -> int:
        n = 1
        for lev in self.levels:
            n *= len(lev.orbit)
            if n >= MAX_ORDER:
                raise GroupOrderOverflow(f"group order exceeds 2^64 at base point {lev.base}")
        return n

    def sift(self, h: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        """Strip ``h`` through levels ``start..``; return the residue and the
        level where stripping stopped (``len(levels)`` if it went through)."""
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            k = lev.pos[h[lev.base]]
            if k < 0:
                return h, i
            h = lev.Uinv[k][h].astype(np.intp)
        return h, len(self.levels)


def _moved_point(g: np.ndarray) -> int:
    return int(np.flatnonzero(g != np.arange(len(g)))[0])


def schreier_sims(degree: int, gens: Sequence[np.ndarray]) -> BSGS:
    """Deterministic Schreier-Sims on generator arrays."""
    dtype = image_dtype(degree)
    ident = np.arange(degree, dtype=np.intp)
    gens = [np.asarray(g, dtype=np.intp) for g in gens if not np.array_equal(g, ident)]
    base: list[int] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_moved_point(g))
    S = [[g for g in gens if all(g[b] == b for b in base[:i])] for i in range(len(base))]
    bsgs = BSGS(degree, [_transversal(base[i], S[i], degree, dtype) for i in range(len(base))])

    i = len(base) - 1
    while i >= 0:
        lev = bsgs.levels[i]
        restart = False
        for k in range(len(lev.orbit)):
            ub = lev.U[k].astype(np.intp)
            for s in lev.gens:
                gamma = s[lev.orbit[k]]
                h = lev.Uinv[lev.pos[gamma]][s[ub]].astype(np.intp)
                if np.array_equal(h, ident):
                    continue
                h, j = bsgs.sift(h, i + 1)
                if np.array_equal(h, ident):
                    continue
                if j == len(bsgs.levels):
                    nb = _moved_point(h)
                    bsgs.levels.append(_transversal(nb, [], degree, dtype))
                for m in range(i + 1, j + 1):
                    prev = bsgs.levels[m]
                    bsgs.levels[m] = _transversal(prev.base, prev.gens + [h], degree, dtype)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    stride = 1
    for lev in reversed(bsgs.levels):
        lev.stride = stride
        stride *= len(lev.orbit)
    # orbit-stabilizer: |G^(i)| = |orbit_i| * |G^(i+1)| holds by construction of strides
    assert all(
        bsgs.levels[m].stride * len(bsgs.levels[m].orbit) == (bsgs.levels[m - 1].stride if m else stride)
        for m in range(len(bsgs.levels))
    )
    bsgs.order()
    return bsgs


class FiniteGroup:
    """A permutation group on ``degree`` points, defined by generators.

    The BSGS, the element table and the class data are built lazily and
    cached; after that the object is read-only.
    """

    def __init__(
        self,
        degree: int,
        generators: Iterable[Permutation] = (),
        *,
        cap: int | None = None,
        name: str | None = None,
    ):
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree {degree} out of range")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a degree-{degree} group")
        self.degree = degree
        self.generators = gens
        self.cap = DEFAULT_CAP if cap is None else cap
        self.name = name
        self._bsgs: BSGS | None = None
        self._elements: np.ndarray | None = None
        self._classes = None

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} degree={self.degree} ngens={len(self.generators)}>"

    @property
    def bsgs(self) -> BSGS:
        if self._bsgs is None:
            self._bsgs = schreier_sims(self.degree, [g.array() for g in self.generators])
        return self._bsgs

    def order(self) -> int:
        return self.bsgs.order()

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def _check(self, p: Permutation):
        if p.degree != self.degree:
            raise DegreeMismatch(f"permutation of degree {p.degree} vs group of degree {self.degree}")

    def contains(self, p: Permutation) -> bool:
        self._check(p)
        h, _ = self.bsgs.sift(p.array())
        return bool(np.array_equal(h, np.arange(self.degree)))

    __contains__ = contains

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_trivial(self) -> bool:
        return self.order() == 1

    # -- bulk machinery ------------------------------------------------

    def _require_cap(self):
        n = self.order()
        if n > self.cap:
            raise TooLarge(f"order {n} exceeds the enumeration cap {self.cap}")

    def element_array(self) -> np.ndarray:
        """All elements as an ``(order, degree)`` array, row ``r`` holding the
        element of rank ``r``."""
        if self._elements is None:
            self._require_cap()
            dtype = image_dtype(self.degree)
            E = np.arange(self.degree, dtype=dtype)[None, :]
            for lev in reversed(self.bsgs.levels):
                E = lev.U[:, E].reshape(-1, self.degree)
            E.setflags(write=False)
            self._elements = E
        return self._elements

    def elements(self) -> Iterator[Permutation]:
        for row in self.element_array():
            yield Permutation.from_array(row)

    def rank(self, E: np.ndarray) -> np.ndarray:
        """Ranks of the rows of ``E``; ``-1`` marks rows outside the group."""
        E = np.atleast_2d(np.asarray(E))
        if E.shape[1] != self.degree:
            raise DegreeMismatch("row length differs from the group degree")
        out = np.empty(len(E), dtype=np.int64)
        ident = np.arange(self.degree)
        for lo in range(0, len(E), _CHUNK):
            cur = E[lo:lo + _CHUNK]
            r = np.zeros(len(cur), dtype=np.int64)
            ok = np.ones(len(cur), dtype=bool)
            for lev in self.bsgs.levels:
                k = lev.pos[cur[:, lev.base]]
                ok &= k >= 0
                k[k < 0] = 0
                r += k * lev.stride
                cur = np.take_along_axis(lev.Uinv[k], cur, axis=1)
            ok &= (cur == ident).all(axis=1)
            r[~ok] = -1
            out[lo:lo + _CHUNK] = r
        return out

    def rank_members(self, base_images: np.ndarray) -> np.ndarray:
        """Ranks of known members given only their images of the base points
        (column ``j`` holds the image of ``bsgs.base[j]``). Much cheaper
        than :meth:`rank` on large degrees; garbage for non-members."""
        cur = np.atleast_2d(np.asarray(base_images, dtype=np.intp))
        r = np.zeros(len(cur), dtype=np.int64)
        for lev in self.bsgs.levels:
            k = lev.pos[cur[:, 0]]
            r += k * lev.stride
            # only the images of the remaining base points matter from here on
            cur = lev.Uinv[k[:, None], cur[:, 1:]]
        return r

    def element(self, r: int) -> Permutation:
        return Permutation.from_array(self.element_array()[r])

    def contains_array(self, E: np.ndarray) -> np.ndarray:
        return self.rank(E) >= 0

    def conjugation_action(self, g: Permutation) -> np.ndarray:
        """``act[r] = rank(g * element(r) * g^-1)``."""
        E = self.element_array()
        ga = g.array()
        pre = np.argsort(ga)[self.bsgs.base]  # g^-1 of each base point
        act = np.empty(len(E), dtype=np.int64)
        for lo in range(0, len(E), _CHUNK):
            act[lo:lo + _CHUNK] = self.rank_members(ga[E[lo:lo + _CHUNK][:, pre]])
        return act

    def _class_data(self):
        if self._classes is None:
            E = self.element_array()
            n = len(E)
            rows, cols = [], []
            for g in self.generators:
                rows.append(np.arange(n))
                cols.append(self.conjugation_action(g))
            if rows:
                rows = np.concatenate(rows)
                cols = np.concatenate(cols)
                graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
                ncomp, labels = connected_components(graph, directed=True, connection="weak")
            else:
                ncomp, labels = 1, np.zeros(1, dtype=np.int64)
            lex = np.lexsort(E.T[::-1])
            _, first = np.unique(labels[lex], return_index=True)
            # classes are listed in lex order of their representatives
            rep_idx = lex[np.sort(first)]
            sizes = np.bincount(labels, minlength=ncomp)
            relabel = np.empty(ncomp, dtype=np.int64)
            relabel[labels[rep_idx]] = np.arange(ncomp)
            labels = relabel[labels]
            self._classes = (labels, rep_idx, sizes[np.argsort(relabel)])
        return self._classes

    def conjugacy_classes(self) -> list[tuple[Permutation, int]]:
        """Classes as ``(representative, size)``; the representative is the
        lexicographically smallest image tuple in its class."""
        _, rep_idx, sizes = self._class_data()
        return [(self.element(int(r)), int(s)) for r, s in zip(rep_idx, sizes)]

    def class_labels(self) -> np.ndarray:
        return self._class_data()[0]

    def centralizer_mask(self, p: Permutation) -> np.ndarray:
        E = self.element_array()
        pa = p.array()
        return (E[:, pa] == pa[E]).all(axis=1)

    def centralizer(self, p: Permutation) -> "FiniteGroup":
        self._check(p)
        if not self.contains(p):
            raise NotMember(f"{p} is not in the group")
        return self.subgroup_from_mask(self.centralizer_mask(p))

    def subgroup_from_mask(self, mask: np.ndarray, seed: int = 0) -> "FiniteGroup":
        """The subgroup whose element set is ``mask`` (which must be closed).

        Generators are drawn from the set with a seeded RNG until the
        generated order equals the set size; equality of size certifies the
        result."""
        idx = np.flatnonzero(mask)
        target = len(idx)
        E = self.element_array()
        rng = np.random.default_rng(seed)
        gens: list[Permutation] = []
        H = FiniteGroup(self.degree, (), cap=self.cap)
        tries = 0
        while H.order() < target:
            g = Permutation.from_array(E[idx[rng.integers(target)]])
            tries += 1
            if H.contains(g):
                if tries > 64 * (len(gens) + 1) + 1000:
                    raise RuntimeError("element set is not a subgroup")
                continue
            gens.append(g)
            H = FiniteGroup(self.degree, gens, cap=self.cap)
            if H.order() > target or target % H.order():
                raise RuntimeError("element set is not a subgroup")
        return H

    def subgroup(self, S: Iterable[Permutation], name: str | None = None) -> "FiniteGroup":
        S = list(S)
        for s in S:
            self._check(s)
            if not self.contains(s):
                raise NotMember(f"{s} is not in the group")
        return FiniteGroup(self.degree, S, cap=self.cap, name=name)

    def normal_closure(self, S: Iterable[Permutation]) -> "FiniteGroup":
        S = list(S)
        for s in S:
            self._check(s)
            if not self.contains(s):
                raise NotMember(f"{s} is not in the group")
        gens = [s for s in S if not s.is_identity()]
        H = FiniteGroup(self.degree, gens, cap=self.cap)
        k = 0
        while k < len(gens):
            n = gens[k]
            for g in self.generators:
                c = g * n * ~g
                if not H.contains(c):
                    gens.append(c)
                    H = FiniteGroup(self.degree, gens, cap=self.cap)
            k += 1
        return H

    def is_normal_in(self, G: "FiniteGroup") -> bool:
        return all(self.contains(g * h * ~g) for g in G.generators for h in self.generators)

    def center_mask(self) -> np.ndarray:
        E = self.element_array()
        mask = np.ones(len(E), dtype=bool)
        for g in self.generators:
            ga = g.array()
            mask &= (E[:, ga] == ga[E]).all(axis=1)
        return mask

    def center(self) -> "FiniteGroup":
        return self.subgroup_from_mask(self.center_mask())

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.to_json() for g in self.generators]}


def build_group(degree: int, generators: Sequence[Permutation] = (), *, cap: int | None = None,
                name: str | None = None) -> FiniteGroup:
    """Construct a group and run Schreier-Sims eagerly."""
    G = FiniteGroup(degree, generators, cap=cap, name=name)
    G.order()
    return G


def closure_elements(degree: int, generators: Sequence[Permutation], limit: int = 10_000) -> set[Permutation]:
    """Naive closure under right multiplication by generators. Used as an
    independent oracle for small groups."""
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise TooLarge("closure exceeded its limit")
        frontier = nxt
    return seen
