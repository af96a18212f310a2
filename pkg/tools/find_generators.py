"""Offline search for the matrix generators stored in the catalog.

3.A6 inside SL3(F4): the preimage of the stabilizer of a hyperoval
(conic plus nucleus) in PG(2,4).
2.S4 inside SL2(F7): the normalizer of a quaternion subgroup.

In both cases a seeded search then looks for a generating pair. Run it
with ``python3 tools/find_generators.py``; it prints JSON matrices.
"""

import json

import numpy as np

from jordanlab.fields import AFFINE, FqMatrix, field, matrix_to_perm, perm_to_matrix
from jordanlab.perm import Permutation


def vec_index(v, q):
    return sum(int(c) * q ** k for k, c in enumerate(v)) - 1


def generating_pair(G, mask, target, seed=0):
    idx = np.flatnonzero(mask)
    E = G.element_array()
    rng = np.random.default_rng(seed)
    while True:
        a, b = (Permutation.from_array(E[i]) for i in rng.choice(idx, 2))
        H = G.subgroup([a, b])
        if H.order() == target:
            return a, b


def three_a6():
    q = 4
    F = field(q)
    z = F.primitive_element()
    M = lambda rows: FqMatrix.from_rows(q, rows)
    gens = [
        M([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        M([[1, z, 0], [0, 1, 0], [0, 0, 1]]),
        M([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
        M([[z, 0, 0], [0, int(F.inv[z]), 0], [0, 0, 1]]),
    ]
    SL = matrix_to_perm(q, 3, gens, AFFINE)
    assert SL.order() == 60480
    # conic x1^2 = x0 x2 and its nucleus (0, 1, 0)
    lines = [(1, t, int(F.mul[t, t])) for t in range(q)] + [(0, 0, 1), (0, 1, 0)]
    pts = []
    for v in lines:
        for a in range(1, q):
            pts.append(vec_index([int(F.mul[a, c]) for c in v], q))
    inside = np.zeros(SL.degree, dtype=bool)
    inside[pts] = True
    E = SL.element_array()
    mask = inside[E[:, pts]].all(axis=1)
    assert mask.sum() == 1080, mask.sum()
    a, b = generating_pair(SL, mask, 1080)
    return [perm_to_matrix(q, 3, p).to_json() for p in (a, b)]


def binary_octahedral():
    q = 7
    M = lambda rows: FqMatrix.from_rows(q, rows)
    SL = matrix_to_perm(q, 2, [M([[0, 6], [1, 0]]), M([[1, 1], [0, 1]])], AFFINE)
    assert SL.order() == 336
    E = SL.element_array()
    mats = [perm_to_matrix(q, 2, Permutation.from_array(r)) for r in E]
    order4 = [i for i, m in enumerate(mats) if (m.entries[0][0] + m.entries[1][1]) % q == 0]
    a = Permutation.from_array(E[order4[0]])
    b = next(Permutation.from_array(E[i]) for i in order4
             if Permutation.from_array(E[i]) * a * ~Permutation.from_array(E[i]) == ~a)
    Q8 = SL.subgroup([a, b])
    assert Q8.order() == 8
    mask = np.array([all(Q8.contains(g * h * ~g) for h in (a, b))
                     for g in map(Permutation.from_array, E)])
    assert mask.sum() == 48
    x, y = generating_pair(SL, mask, 48)
    return [perm_to_matrix(q, 2, p).to_json() for p in (x, y)]


if __name__ == "__main__":
    print(json.dumps({"3.A6": three_a6(), "2.S4": binary_octahedral()}))
