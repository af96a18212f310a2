"""Jordan and weak Jordan constants of finite permutation groups.

For a finite group the weak constant is ``|G| / |A|`` with ``A`` an abelian
subgroup of maximal order: if ``H <= G`` then ``A & H`` is abelian and
``[H : A & H] <= [G : A]``, so no subgroup does worse than ``G`` itself.
The (strong) constant uses the largest *normal* abelian subgroup instead.

Maximal abelian search
----------------------
Every maximal abelian subgroup contains the centre, and if ``C`` is not
abelian it contains a non-central element; conjugating, we may assume that
element is a class representative ``x`` of ``C`` and continue inside
``C_C(x)``. Nodes are therefore iterated centralizers, leaves are abelian
(and self-centralizing) subgroups, and a child can only help if
``|C_C(x)| = |C| / |x^C|`` beats the best order found so far.

The search runs twice. The first pass finds the optimum ``M`` (optionally
with a process pool over the top-level branches). The second pass is a
single-process depth-first walk that stops at the first leaf of order
``M``; the reported witness is that leaf, whatever the worker count was.
"""

from __future__ import annotations

import hashlib
import multiprocessing as mp
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import LatticeExplosion
from .group import FiniteGroup
from .perm import Permutation

DEFAULT_TIMEOUT = 15 * 60.0
DEFAULT_LATTICE_CAP = 10_000


@dataclass
class AbelianResult:
    order: int
    witness: list[Permutation]
    certified: bool = True
    nodes: int = 0


@dataclass
class JordanReport:
    name: str
    order: int
    max_abelian: AbelianResult
    max_normal_abelian: AbelianResult
    wall_time_ms: int = 0

    @property
    def weak_jordan(self) -> int:
        return self.order // self.max_abelian.order

    @property
    def jordan(self) -> int:
        return self.order // self.max_normal_abelian.order

    @property
    def certified(self) -> bool:
        return self.max_abelian.certified and self.max_normal_abelian.certified

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "order": self.order,
            "max_abelian": {"order": self.max_abelian.order,
                            "witness": [g.to_json() for g in self.max_abelian.witness]},
            "weak_jordan": self.weak_jordan,
            "max_normal_abelian": {"order": self.max_normal_abelian.order,
                                   "witness": [g.to_json() for g in self.max_normal_abelian.witness]},
            "jordan": self.jordan,
            "certified": self.certified,
        }
        if timing:
            out["wall_time_ms"] = self.wall_time_ms
        return out


class _Timeout(Exception):
    pass


class _Found(Exception):
    pass


def _subgroup_key(G: FiniteGroup, H: FiniteGroup) -> bytes:
    ranks = np.sort(G.rank(H.element_array()))
    return hashlib.blake2b(ranks.tobytes(), digest_size=16).digest()


class _Search:
    """One depth-first walk. ``shared`` (a multiprocessing Value or None)
    carries the best order across workers; it only ever increases."""

    def __init__(self, G: FiniteGroup, best: int, deadline: float | None, shared=None,
                 stop_at: int | None = None, seed: int = 0):
        self.G = G
        self.seed = seed
        self.best = best
        self.witness: list[Permutation] | None = None
        self.deadline = deadline
        self.shared = shared
        self.stop_at = stop_at
        self.visited: set[bytes] = set()
        self.nodes = 0

    def _bound(self) -> int:
        if self.shared is not None:
            v = self.shared.value
            if v > self.best:
                return v
        return self.best

    def _record(self, n: int, H: FiniteGroup):
        if n > self.best:
            self.best = n
            self.witness = list(H.generators)
            if self.shared is not None:
                with self.shared.get_lock():
                    if n > self.shared.value:
                        self.shared.value = n
        if self.stop_at is not None and n >= self.stop_at:
            raise _Found

    def children(self, H: FiniteGroup) -> list[tuple[int, Permutation]]:
        """Non-central class representatives of ``H`` with the order of
        their centralizer, largest centralizer first."""
        n = H.order()
        out = [(n // s, rep) for rep, s in H.conjugacy_classes() if s > 1]
        out.sort(key=lambda t: -t[0])  # stable: ties stay in class order
        return out

    def explore(self, H: FiniteGroup):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Timeout
        n = H.order()
        if n <= self._bound():
            return
        key = _subgroup_key(self.G, H)
        if key in self.visited:
            return
        self.visited.add(key)
        self.nodes += 1
        if H.is_abelian():
            self._record(n, H)
            return
        for size, rep in self.children(H):
            if size <= self._bound():
                break
            self.explore(H.subgroup_from_mask(H.centralizer_mask(rep), seed=self.seed))


# -- process pool plumbing (fork start method; state inherited) ------------

_POOL_STATE: dict = {}


def _pool_init(shared):
    _POOL_STATE["shared"] = shared


def _pool_task(rep_images: tuple[int, ...]):
    G = _POOL_STATE["G"]
    seed = _POOL_STATE["seed"]
    s = _Search(G, _POOL_STATE["floor"], _POOL_STATE["deadline"], _POOL_STATE["shared"], seed=seed)
    rep = Permutation._trusted(rep_images)
    timed_out = False
    try:
        s.explore(G.subgroup_from_mask(G.centralizer_mask(rep), seed=seed))
    except _Timeout:
        timed_out = True
    wit = [g.images for g in s.witness] if s.witness is not None else None
    return s.best, wit, timed_out, s.nodes


def default_workers() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:  # pragma: no cover
        return max(1, os.cpu_count() or 1)


def _phase_one(G: FiniteGroup, workers: int, deadline: float | None, seed: int) -> tuple[int, bool, int]:
    """Optimal order (or a lower bound on timeout), whether it timed out, and
    the number of nodes visited."""
    floor = G.center_mask().sum() if G.order() > 1 else 1
    floor = int(floor)
    if G.is_abelian():
        return G.order(), False, 1
    if workers <= 1:
        s = _Search(G, floor - 1, deadline, seed=seed)
        try:
            s.explore(G)
        except _Timeout:
            return max(s.best, floor), True, s.nodes
        return s.best, False, s.nodes
    root = _Search(G, floor - 1, deadline)
    kids = root.children(G)
    ctx = mp.get_context("fork")
    shared = ctx.Value("q", floor - 1)
    _POOL_STATE.update(G=G, floor=floor - 1, deadline=deadline, seed=seed)
    best, timed_out, nodes = floor, False, 1
    try:
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx,
                                 initializer=_pool_init, initargs=(shared,)) as ex:
            for b, _, t, k in ex.map(_pool_task, [rep.images for _, rep in kids]):
                best = max(best, b)
                timed_out |= t
                nodes += k
    finally:
        for k in ("G", "floor", "deadline", "seed"):
            _POOL_STATE.pop(k, None)
    return best, timed_out, nodes


def max_abelian(G: FiniteGroup, *, workers: int = 1, timeout: float | None = DEFAULT_TIMEOUT,
                seed: int = 0) -> AbelianResult:
    """Largest order of an abelian subgroup of ``G`` with generators of a
    witness. On timeout the result is a lower bound with ``certified=False``."""
    deadline = None if timeout is None else time.monotonic() + timeout
    n = G.order()
    if G.is_abelian():
        return AbelianResult(n, list(G.generators), True, 1)
    M, timed_out, nodes = _phase_one(G, workers, deadline, seed)
    # second pass: sequential, stop at the first leaf of order M
    s = _Search(G, M - 1, None, stop_at=M, seed=seed)
    try:
        s.explore(G)
    except _Found:
        pass
    if s.witness is None:  # pragma: no cover - phase one certified M
        raise RuntimeError("witness pass did not reproduce the optimum")
    return AbelianResult(s.best, s.witness, not timed_out, nodes)


def weak_jordan(G: FiniteGroup, **kw) -> int:
    return G.order() // max_abelian(G, **kw).order


# -- normal subgroups -----------------------------------------------------

@dataclass
class _Normal:
    classes: int  # bitmask over conjugacy classes of the ambient group
    gens: list[Permutation] = field(default_factory=list)


def normal_subgroups(G: FiniteGroup, *, cap: int = DEFAULT_LATTICE_CAP) -> list[FiniteGroup]:
    """All normal subgroups of ``G``, smallest first.

    Each normal subgroup is a join of normal closures of cyclic subgroups,
    so the list is the join-closure of those closures. Subgroups are
    identified by the set of conjugacy classes they contain."""
    classes = G.conjugacy_classes()
    sizes = [s for _, s in classes]

    def mask_of(H: FiniteGroup) -> int:
        m = 0
        for i, (rep, _) in enumerate(classes):
            if H.contains(rep):
                m |= 1 << i
        return m

    found: dict[int, _Normal] = {1: _Normal(1, [])}  # class 0 is the identity
    for rep, _ in classes[1:]:
        N = G.normal_closure([rep])
        m = mask_of(N)
        found.setdefault(m, _Normal(m, list(N.generators)))
    atoms = list(found.values())
    frontier = list(found.values())
    while frontier:
        nxt = []
        for A in frontier:
            for B in atoms:
                if A.classes | B.classes == A.classes or A.classes | B.classes == B.classes:
                    continue
                H = FiniteGroup(G.degree, A.gens + B.gens, cap=G.cap)
                m = mask_of(H)
                if m not in found:
                    found[m] = _Normal(m, list(H.generators))
                    nxt.append(found[m])
                    if len(found) > cap:
                        raise LatticeExplosion(f"more than {cap} normal subgroups")
        frontier = nxt

    def order_of(m: int) -> int:
        return sum(s for i, s in enumerate(sizes) if m >> i & 1)

    out = []
    for m in sorted(found, key=lambda m: (order_of(m), m)):
        H = FiniteGroup(G.degree, found[m].gens, cap=G.cap)
        assert H.order() == order_of(m)
        out.append(H)
    return out


def max_normal_abelian(G: FiniteGroup, *, cap: int = DEFAULT_LATTICE_CAP) -> AbelianResult:
    best = None
    for N in normal_subgroups(G, cap=cap):
        if N.is_abelian() and (best is None or N.order() > best.order()):
            best = N
    return AbelianResult(best.order(), list(best.generators), True, 0)


def jordan_constant(G: FiniteGroup, **kw) -> int:
    return G.order() // max_normal_abelian(G, **kw).order


def jordan_report(G: FiniteGroup, name: str | None = None, *, workers: int = 1,
                  timeout: float | None = DEFAULT_TIMEOUT, lattice_cap: int = DEFAULT_LATTICE_CAP,
                  seed: int = 0) -> JordanReport:
    t0 = time.perf_counter()
    ab = max_abelian(G, workers=workers, timeout=timeout, seed=seed)
    nab = max_normal_abelian(G, cap=lattice_cap)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return JordanReport(name or G.name or "group", G.order(), ab, nab, ms)


@dataclass
class PyberReport:
    jordan: int
    weak_jordan: int

    @property
    def bound(self) -> int:
        return self.weak_jordan ** 2

    @property
    def slack(self) -> int:
        return self.bound - self.jordan

    @property
    def ok(self) -> bool:
        return self.jordan <= self.bound


def pyber_check(G: FiniteGroup, report: JordanReport | None = None, **kw) -> PyberReport:
    """Check ``J <= Jbar^2`` (and ``Jbar <= J``) for ``G``; a violation means a bug."""
    if report is None:
        report = jordan_report(G, **kw)
    r = PyberReport(report.jordan, report.weak_jordan)
    if not (r.ok and r.weak_jordan <= r.jordan):
        raise AssertionError(f"Jordan constants inconsistent for {report.name}: "
                             f"J={r.jordan}, Jbar={r.weak_jordan}")
    return r


def verify_witness(G: FiniteGroup, res: AbelianResult) -> bool:
    """Witness generates an abelian subgroup of ``G`` of the stated order."""
    A = G.subgroup(res.witness)
    return A.is_abelian() and A.order() == res.order


def is_self_centralizing(G: FiniteGroup, gens: list[Permutation]) -> bool:
    E = G.element_array()
    mask = np.ones(len(E), dtype=bool)
    for g in gens:
        mask &= G.centralizer_mask(g)
    return int(mask.sum()) == G.subgroup(gens).order()


__all__ = [
    "AbelianResult", "JordanReport", "PyberReport",
    "max_abelian", "weak_jordan", "normal_subgroups", "max_normal_abelian",
    "jordan_constant", "jordan_report", "pyber_check", "verify_witness",
    "is_self_centralizing", "default_workers",
]
