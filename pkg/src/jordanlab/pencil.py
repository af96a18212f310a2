"""Moebius symmetries of the marked points of a pencil of diagonal quadrics.

The pencil ``s*f1 + t*f2`` with ``f1 = sum x_i^2`` and
``f2 = sum lambda_i x_i^2`` has its singular members at ``t/s``-values
``lambda_0..lambda_n`` (up to the obvious reparametrization). Any
automorphism of the intersection acts on the pencil line by a Moebius map
permuting those points. :func:`aut_w` computes *all* such Moebius maps,
which is a group containing the image of the automorphism group.

Points of the projective line are pairs ``(x, y)`` up to scale; a finite
value ``a`` is ``(a, 1)`` and infinity is ``(1, 0)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cyclotomic import Cyclo
from .errors import DegeneratePoints, InvalidPencil, OutOfRange
from .group import FiniteGroup
from .perm import Permutation


@dataclass(frozen=True)
class ProjPoint:
    x: Cyclo
    y: Cyclo

    @classmethod
    def finite(cls, a: Cyclo) -> "ProjPoint":
        return cls(a, Cyclo(a.m, [1]))

    @classmethod
    def infinity(cls, m: int = 1) -> "ProjPoint":
        return cls(Cyclo(m, [1]), Cyclo(m, []))

    def normalized(self) -> "ProjPoint":
        if self.y:
            return ProjPoint(self.x / self.y, Cyclo(self.y.m, [1]))
        if not self.x:
            raise DegeneratePoints("(0, 0) is not a point of the projective line")
        return ProjPoint.infinity(self.x.m)

    def same(self, other: "ProjPoint") -> bool:
        return self.x * other.y == self.y * other.x

    def is_infinite(self) -> bool:
        return not self.y

    def __str__(self) -> str:
        p = self.normalized()
        return "inf" if p.is_infinite() else str(p.x)


def _pt(v) -> ProjPoint:
    return v if isinstance(v, ProjPoint) else ProjPoint.finite(v)


def _det(p: ProjPoint, q: ProjPoint) -> Cyclo:
    return p.x * q.y - p.y * q.x


class MoebiusMap:
    """``z -> (a z + b) / (c z + d)``, stored with the first nonzero entry 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo):
        if not (a * d - b * c):
            raise DegeneratePoints("singular Moebius matrix")
        lead = next(e for e in (a, b, c, d) if e)
        inv = lead.inverse()
        self.a, self.b, self.c, self.d = a * inv, b * inv, c * inv, d * inv

    @classmethod
    def identity(cls, m: int = 1) -> "MoebiusMap":
        one, zero = Cyclo(m, [1]), Cyclo(m, [])
        return cls(one, zero, zero, one)

    def __call__(self, p) -> ProjPoint:
        p = _pt(p)
        return ProjPoint(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Composition: ``(f @ g)(z) = f(g(z))``."""
        return MoebiusMap(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                          self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def matrix(self) -> tuple[tuple[Cyclo, Cyclo], tuple[Cyclo, Cyclo]]:
        return ((self.a, self.b), (self.c, self.d))

    def _key(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return isinstance(other, MoebiusMap) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"MoebiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def to_json(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]


def _frame(p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> MoebiusMap:
    """The map sending inf, 0, 1 to p1, p2, p3."""
    # columns u*P1 and v*P2 with u*P1 + v*P2 = P3
    D = _det(p1, p2)
    if not D or not _det(p1, p3) or not _det(p2, p3):
        raise DegeneratePoints("points must be pairwise distinct")
    u = _det(p3, p2) / D
    v = _det(p1, p3) / D
    return MoebiusMap(u * p1.x, v * p2.x, u * p1.y, v * p2.y)


def moebius_through(pairs: Sequence[tuple]) -> MoebiusMap:
    """The unique Moebius map with ``p_i -> q_i`` for three pairs."""
    if len(pairs) != 3:
        raise DegeneratePoints("exactly three point pairs are needed")
    ps = [_pt(p) for p, _ in pairs]
    qs = [_pt(q) for _, q in pairs]
    A = _frame(*ps)
    B = _frame(*qs)
    M = B @ A.inverse()
    for p, q in zip(ps, qs):
        assert M(p).same(q)
    return M


def cross_ratio(p1, p2, p3, p4) -> ProjPoint:
    """``([p1,p3][p2,p4]) : ([p2,p3][p1,p4])`` as a point of the line."""
    p1, p2, p3, p4 = map(_pt, (p1, p2, p3, p4))
    return ProjPoint(_det(p1, p3) * _det(p2, p4), _det(p2, p3) * _det(p1, p4))


@dataclass(frozen=True)
class PencilConfig:
    lambdas: tuple[Cyclo, ...]

    def __post_init__(self):
        lam = self.lambdas
        if len(lam) < 3:
            raise InvalidPencil("need at least three values (n >= 2)")
        if len({v.m for v in lam}) != 1:
            raise InvalidPencil("all values must lie in the same field")
        if len(set(lam)) != len(lam):
            raise InvalidPencil("values must be pairwise distinct")

    @property
    def n(self) -> int:
        return len(self.lambdas) - 1


@dataclass
class AutWResult:
    """Moebius stabilizer of the marked points; it contains ``Aut_W``."""
    group: FiniteGroup
    maps: list[MoebiusMap]
    perms: list[Permutation]

    @property
    def order(self) -> int:
        return len(self.maps)


def aut_w(config: PencilConfig | Sequence[Cyclo]) -> AutWResult:
    if not isinstance(config, PencilConfig):
        config = PencilConfig(tuple(config))
    pts = [ProjPoint.finite(v) for v in config.lambdas]
    index = {p.normalized(): i for i, p in enumerate(pts)}
    k = len(pts)
    found: dict[Permutation, MoebiusMap] = {}
    for i, j, l in itertools.permutations(range(k), 3):
        M = moebius_through([(pts[0], pts[i]), (pts[1], pts[j]), (pts[2], pts[l])])
        images = []
        for p in pts:
            q = M(p).normalized()
            if q not in index:
                break
            images.append(index[q])
        else:
            found[Permutation(images)] = M
    perms = sorted(found)
    maps = [found[p] for p in perms]
    group = FiniteGroup(k, [p for p in perms if not p.is_identity()])
    if group.order() != len(maps):  # pragma: no cover - faithfulness on >= 3 points
        raise AssertionError("Moebius stabilizer and its permutation image differ in size")
    return AutWResult(group, maps, perms)


def gamma_order(n: int) -> int:
    """Order of the group of sign changes acting trivially on the pencil:
    ``2^n`` for an intersection of two quadrics in ``P^n``, ``n >= 4``."""
    if n < 4:
        raise OutOfRange(f"n = {n} is outside the supported range n >= 4")
    return 2 ** n
