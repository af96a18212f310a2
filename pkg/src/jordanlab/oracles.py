"""Slow, independent reference computations over a Cayley table.

Used to cross-check :mod:`jordanlab.jordan` on small groups. Nothing here
uses BSGS sifting beyond ranking elements, and nothing prunes.
"""

from __future__ import annotations

import numpy as np

from .group import FiniteGroup


def cayley_table(G: FiniteGroup) -> np.ndarray:
    """``T[i, j]`` is the rank of ``element(i) * element(j)``."""
    E = G.element_array()
    EB = E[:, G.bsgs.base]
    n = len(E)
    T = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        T[i] = G.rank_members(E[i][EB])
    return T


def _identity_index(G: FiniteGroup) -> int:
    return int(G.rank(np.arange(G.degree)[None, :])[0])


def _closure(T: np.ndarray, gens, e: int) -> frozenset[int]:
    seen = {e}
    frontier = [e]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(T[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def all_subgroups(G: FiniteGroup) -> set[frozenset[int]]:
    """Every subgroup, as a set of element ranks: joins of cyclic subgroups
    until nothing new appears."""
    T = cayley_table(G)
    e = _identity_index(G)
    n = len(T)
    cyclic = {_closure(T, [g], e) for g in range(n)}
    subs = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                J = _closure(T, H | C, e)
                if J not in subs:
                    subs.add(J)
                    nxt.append(J)
        frontier = nxt
    return subs


def _commutes(T: np.ndarray, a: int, b: int) -> bool:
    return T[a, b] == T[b, a]


def max_abelian_by_subgroups(G: FiniteGroup) -> int:
    T = cayley_table(G)
    best = 1
    for H in all_subgroups(G):
        if len(H) > best and all(_commutes(T, a, b) for a in H for b in H):
            best = len(H)
    return best


def max_abelian_by_chains(G: FiniteGroup) -> int:
    """Walk every abelian subgroup reachable by adding one centralizing
    element at a time; the largest one reached is the maximum."""
    T = cayley_table(G)
    e = _identity_index(G)
    comm = T == T.T  # comm[a, b]: a and b commute
    powers = []
    for g in range(len(T)):
        cyc, x = [e], int(T[e, g])
        while x != e:
            cyc.append(x)
            x = int(T[x, g])
        powers.append(np.array(cyc, dtype=np.intp))
    # one generator per cyclic subgroup is enough: A<g> only depends on <g>
    cyclic_rep = {}
    for g in range(len(T)):
        cyclic_rep.setdefault(np.sort(powers[g]).tobytes(), g)
    reps = np.array(sorted(cyclic_rep.values()), dtype=np.intp)
    best = 1
    seen: set[bytes] = set()
    stack = [np.array([e], dtype=np.intp)]
    while stack:
        A = stack.pop()
        best = max(best, len(A))
        inside = np.zeros(len(T), dtype=bool)
        inside[A] = True
        cand = reps[comm[np.ix_(A, reps)].all(axis=0) & ~inside[reps]]
        for g in cand:
            # g centralizes the abelian A, so <A, g> = A<g>
            B = np.unique(T[np.ix_(A, powers[g])])
            key = B.tobytes()
            if key not in seen:
                seen.add(key)
                stack.append(B)
    return best
