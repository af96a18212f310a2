"""Permutations of {0, ..., n-1}.

Composition is "right factor first" everywhere in the package:
``compose(p, q)(x) == p(q(x))``, and ``p * q`` means the same thing.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeMismatch

MAX_DEGREE = 1 << 16


def image_dtype(degree: int):
    """Smallest unsigned dtype able to hold the points of a degree."""
    return np.uint8 if degree <= 256 else np.uint16


class Permutation:
    """An immutable bijection stored as its tuple of images."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        n = len(images)
        if n < 1:
            raise ValueError("a permutation needs degree >= 1")
        if n > MAX_DEGREE:
            raise ValueError(f"degree {n} exceeds {MAX_DEGREE}")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation: {images!r}")
        self._images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        p._images = images
        p._hash = hash(images)
        return p

    @classmethod
    def from_array(cls, arr) -> "Permutation":
        return cls._trusted(tuple(int(x) for x in arr))

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(5, (0, 1, 2))``."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {cyc!r}")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a] = b
        return cls(images)

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def degree(self) -> int:
        return len(self._images)

    def __call__(self, x: int) -> int:
        return self._images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else inverse(self)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self._images)})"

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self._images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def array(self) -> np.ndarray:
        return np.asarray(self._images, dtype=np.intp)

    def to_json(self) -> list[int]:
        return list(self._images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation ``x -> p(q(x))``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    pi = p.images
    return Permutation._trusted(tuple(pi[x] for x in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def dumps_group(degree: int, generators: Sequence[Permutation]) -> str:
    return json.dumps({"degree": degree, "generators": [g.to_json() for g in generators]})


def loads_group(text: str) -> tuple[int, list[Permutation]]:
    obj = json.loads(text)
    degree = int(obj["degree"])
    gens = [Permutation(g) for g in obj["generators"]]
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator of degree {g.degree} in a degree-{degree} group")
    return degree, gens
