"""Group constructions and the validated catalog of named groups.

A :class:`GroupSpec` is a small expression tree. It serializes to nested
JSON arrays (``["wreath", ["alt", 5], 3, "sym"]``) and parses from a
call-style string (``Wreath(Alt(5), 3, Sym)``) for the command line.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import CatalogMismatch
from .fields import AFFINE, PROJECTIVE, FqMatrix, field as gf, matrix_to_perm, sl2_generators
from .group import FiniteGroup
from .perm import Permutation


class GroupSpec:
    def to_json(self) -> list:
        raise NotImplementedError

    def __str__(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class Trivial(GroupSpec):
    def to_json(self):
        return ["trivial"]


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def to_json(self):
        return ["cyclic", self.n]


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Dihedral group of order ``2n``."""
    n: int

    def to_json(self):
        return ["dihedral", self.n]


@dataclass(frozen=True)
class Sym(GroupSpec):
    n: int

    def to_json(self):
        return ["sym", self.n]


@dataclass(frozen=True)
class Alt(GroupSpec):
    n: int

    def to_json(self):
        return ["alt", self.n]


@dataclass(frozen=True)
class DirectProduct(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    def to_json(self):
        return ["product", self.left.to_json(), self.right.to_json()]


@dataclass(frozen=True)
class Wreath(GroupSpec):
    base: GroupSpec
    k: int
    top: str = "sym"  # "sym" or "alt"

    def to_json(self):
        return ["wreath", self.base.to_json(), self.k, self.top]


@dataclass(frozen=True)
class MatrixGroup(GroupSpec):
    q: int
    dim: int
    generators: tuple[FqMatrix, ...]
    action: str = AFFINE

    def to_json(self):
        return ["matrix", self.q, self.dim, self.action, [g.to_json() for g in self.generators]]


@dataclass(frozen=True)
class TensorCentralProduct(GroupSpec):
    """``<g (x) 1, 1 (x) h>`` acting on the nonzero vectors of the tensor
    square. The two factors meet in their common scalar subgroup."""
    left: MatrixGroup
    right: MatrixGroup

    def to_json(self):
        return ["tensor", self.left.to_json(), self.right.to_json()]


@dataclass(frozen=True)
class HeisenbergSL2(GroupSpec):
    """``H_p`` (order ``p^3``) extended by ``SL2(F_p)`` acting on it, realized
    on the ``p^3`` elements of ``H_p`` (left translations and automorphisms)."""
    p: int

    def to_json(self):
        return ["heisenberg_sl2", self.p]


@dataclass(frozen=True)
class Named(GroupSpec):
    name: str

    def to_json(self):
        return ["named", self.name]


@dataclass(frozen=True)
class Perms(GroupSpec):
    degree: int
    generators: tuple[Permutation, ...] = ()

    def to_json(self):
        return ["perms", self.degree, [g.to_json() for g in self.generators]]


# -- construction -----------------------------------------------------------

def _shift(p: Permutation, offset: int, degree: int) -> Permutation:
    img = list(range(degree))
    for i, x in enumerate(p.images):
        img[offset + i] = offset + x
    return Permutation._trusted(tuple(img))


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    if n == 1:
        return FiniteGroup(1)
    return FiniteGroup(n, [Permutation._trusted(tuple(range(1, n)) + (0,))])


def dihedral(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    if n == 1:
        return cyclic(2)
    if n == 2:
        return direct_product(cyclic(2), cyclic(2))
    rot = Permutation._trusted(tuple(range(1, n)) + (0,))
    ref = Permutation._trusted(tuple((-i) % n for i in range(n)))
    return FiniteGroup(n, [rot, ref])


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n == 1:
        return FiniteGroup(1)
    gens = [Permutation.from_cycles(n, (0, 1))]
    if n > 2:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return FiniteGroup(n, gens)


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("alternating group needs n >= 1")
    if n < 3:
        return FiniteGroup(n)
    return FiniteGroup(n, [Permutation.from_cycles(n, (0, 1, i)) for i in range(2, n)])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    d = G.degree + H.degree
    gens = [_shift(g, 0, d) for g in G.generators] + [_shift(h, G.degree, d) for h in H.generators]
    return FiniteGroup(d, gens)


def wreath(base: FiniteGroup, k: int, top: str = "sym") -> FiniteGroup:
    """``base`` wr ``top`` in the imprimitive action: block ``i`` is the point
    range ``[i*d, (i+1)*d)``."""
    if k < 1:
        raise ValueError("wreath product needs k >= 1")
    if top not in ("sym", "alt"):
        raise ValueError(f"top group must be 'sym' or 'alt', not {top!r}")
    d = base.degree
    n = d * k
    gens = [_shift(g, i * d, n) for i in range(k) for g in base.generators]
    T = symmetric(k) if top == "sym" else alternating(k)
    for t in T.generators:
        img = [t(i // d) * d + i % d for i in range(n)]
        gens.append(Permutation._trusted(tuple(img)))
    return FiniteGroup(n, gens)


def tensor_central_product(left: MatrixGroup, right: MatrixGroup) -> FiniteGroup:
    if left.q != right.q:
        raise ValueError("tensor factors must be over the same field")
    q = left.q
    I_l, I_r = FqMatrix.identity(q, left.dim), FqMatrix.identity(q, right.dim)
    gens = [g.kron(I_r) for g in left.generators] + [I_l.kron(h) for h in right.generators]
    return matrix_to_perm(q, left.dim * right.dim, gens, AFFINE)


def heisenberg_sl2(p: int) -> FiniteGroup:
    F = gf(p)
    if F.degree != 1 or p == 2:
        raise ValueError("heisenberg_sl2 needs an odd prime")
    half = int(F.inv[2])

    def code(v0, v1, z):
        return v0 % p + p * (v1 % p) + p * p * (z % p)

    pts = [(i % p, (i // p) % p, i // (p * p)) for i in range(p ** 3)]

    def translation(e0, e1):
        # (e, 0) * (w, z) = (e + w, z + (e0 w1 - e1 w0) / 2)
        return Permutation._trusted(tuple(
            code(e0 + w0, e1 + w1, z + half * (e0 * w1 - e1 * w0)) for w0, w1, z in pts))

    def automorphism(M: FqMatrix):
        (a, b), (c, d) = M.entries
        return Permutation._trusted(tuple(
            code(a * w0 + b * w1, c * w0 + d * w1, z) for w0, w1, z in pts))

    gens = [translation(1, 0), translation(0, 1)] + [automorphism(M) for M in sl2_generators(p)]
    return FiniteGroup(p ** 3, gens)


def realize(spec: GroupSpec, *, cap: int | None = None, catalog_path: str | Path | None = None) -> FiniteGroup:
    """Build the permutation group described by ``spec``."""
    G = _realize(spec, catalog_path)
    if cap is not None:
        G.cap = cap
    if G.name is None:
        G.name = spec_label(spec)
    return G


def _realize(spec: GroupSpec, catalog_path) -> FiniteGroup:
    if isinstance(spec, Trivial):
        return FiniteGroup(1)
    if isinstance(spec, Cyclic):
        return cyclic(spec.n)
    if isinstance(spec, Dihedral):
        return dihedral(spec.n)
    if isinstance(spec, Sym):
        return symmetric(spec.n)
    if isinstance(spec, Alt):
        return alternating(spec.n)
    if isinstance(spec, DirectProduct):
        return direct_product(_realize(spec.left, catalog_path), _realize(spec.right, catalog_path))
    if isinstance(spec, Wreath):
        return wreath(_realize(spec.base, catalog_path), spec.k, spec.top)
    if isinstance(spec, MatrixGroup):
        return matrix_to_perm(spec.q, spec.dim, spec.generators, spec.action)
    if isinstance(spec, TensorCentralProduct):
        return tensor_central_product(spec.left, spec.right)
    if isinstance(spec, HeisenbergSL2):
        return heisenberg_sl2(spec.p)
    if isinstance(spec, Perms):
        return FiniteGroup(spec.degree, spec.generators)
    if isinstance(spec, Named):
        entry = lookup(spec.name, catalog_path)
        G = _realize(entry.spec, catalog_path)
        G.name = entry.name
        return G
    raise TypeError(f"not a group spec: {spec!r}")


# -- (de)serialization --------------------------------------------------------

def spec_from_json(obj) -> GroupSpec:
    if isinstance(obj, str):
        return Named(obj)
    tag, *args = obj
    if tag == "trivial":
        return Trivial()
    if tag in ("cyclic", "dihedral", "sym", "alt"):
        return {"cyclic": Cyclic, "dihedral": Dihedral, "sym": Sym, "alt": Alt}[tag](int(args[0]))
    if tag == "product":
        return DirectProduct(spec_from_json(args[0]), spec_from_json(args[1]))
    if tag == "wreath":
        top = args[2] if len(args) > 2 else "sym"
        return Wreath(spec_from_json(args[0]), int(args[1]), top)
    if tag == "matrix":
        q, dim, action, mats = args
        if action not in (AFFINE, PROJECTIVE):
            raise ValueError(f"unknown action {action!r}")
        return MatrixGroup(int(q), int(dim), tuple(FqMatrix.from_rows(int(q), m) for m in mats), action)
    if tag == "tensor":
        left, right = spec_from_json(args[0]), spec_from_json(args[1])
        if not (isinstance(left, MatrixGroup) and isinstance(right, MatrixGroup)):
            raise ValueError("tensor factors must be matrix groups")
        return TensorCentralProduct(left, right)
    if tag == "heisenberg_sl2":
        return HeisenbergSL2(int(args[0]))
    if tag == "named":
        return Named(str(args[0]))
    if tag == "perms":
        degree, gens = int(args[0]), args[1]
        return Perms(degree, tuple(Permutation(g) for g in gens))
    raise ValueError(f"unknown spec tag {tag!r}")


_CALLS = {
    "Trivial": lambda: Trivial(),
    "Cyclic": Cyclic,
    "Dihedral": Dihedral,
    "Sym": Sym,
    "Alt": Alt,
    "DirectProduct": DirectProduct,
    "Wreath": lambda b, k, top="sym": Wreath(b, k, top),
    "HeisenbergSL2": HeisenbergSL2,
    "Named": Named,
}


def parse_spec(text: str) -> GroupSpec:
    """Parse ``Wreath(Alt(5), 3, Sym)``-style expressions."""
    try:
        tree = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse group spec {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, str)):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in ("Sym", "Alt"):
                return node.id.lower()
            if node.id == "Trivial":
                return Trivial()
            return Named(node.id)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _CALLS:
            if node.keywords:
                raise ValueError("keyword arguments are not supported in group specs")
            return _CALLS[node.func.id](*[ev(a) for a in node.args])
        raise ValueError(f"unsupported expression in group spec: {ast.dump(node)}")

    spec = ev(tree)
    if not isinstance(spec, GroupSpec):
        raise ValueError(f"{text!r} does not describe a group")
    return spec


def spec_label(spec: GroupSpec) -> str:
    if isinstance(spec, Named):
        return spec.name
    if isinstance(spec, Trivial):
        return "Trivial"
    if isinstance(spec, (Cyclic, Dihedral, Sym, Alt)):
        return f"{type(spec).__name__}({spec.n})"
    if isinstance(spec, DirectProduct):
        return f"DirectProduct({spec_label(spec.left)}, {spec_label(spec.right)})"
    if isinstance(spec, Wreath):
        return f"Wreath({spec_label(spec.base)}, {spec.k}, {spec.top.capitalize()})"
    if isinstance(spec, HeisenbergSL2):
        return f"HeisenbergSL2({spec.p})"
    return type(spec).__name__


# -- catalog ------------------------------------------------------------------

CATALOG_SCHEMA = 1


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: GroupSpec
    expected_order: int
    provenance: str
    source: str
    experimental: bool = False
    tags: tuple[str, ...] = field(default=())


def default_catalog_path() -> Path:
    return Path(str(resources.files("jordanlab") / "data" / "catalog.json"))


@lru_cache(maxsize=8)
def _load(path: str) -> tuple[CatalogEntry, ...]:
    with open(path) as fh:
        obj = json.load(fh)
    if obj.get("schema") != CATALOG_SCHEMA:
        raise CatalogMismatch(f"{path}: unsupported catalog schema {obj.get('schema')!r}")
    entries = []
    names = set()
    for raw in obj["entries"]:
        e = CatalogEntry(
            name=raw["name"],
            spec=spec_from_json(raw["spec"]),
            expected_order=int(raw["expected_order"]),
            provenance=raw.get("provenance", ""),
            source=raw.get("source", ""),
            experimental=bool(raw.get("experimental", False)),
            tags=tuple(raw.get("tags", ())),
        )
        if e.name in names:
            raise CatalogMismatch(f"duplicate catalog name {e.name!r}")
        names.add(e.name)
        entries.append(e)
    by_name = {e.name: e for e in entries}
    for e in entries:
        G = _realize_entry(e, by_name)
        n = G.order()
        if n != e.expected_order:
            raise CatalogMismatch(f"{e.name}: realized order {n}, expected {e.expected_order}")
    return tuple(entries)


def _realize_entry(e: CatalogEntry, by_name: dict, depth: int = 0) -> FiniteGroup:
    if depth > 16:
        raise CatalogMismatch(f"{e.name}: named references nest too deeply")
    spec = e.spec
    if isinstance(spec, Named):
        if spec.name not in by_name:
            raise CatalogMismatch(f"{e.name}: unknown reference {spec.name!r}")
        return _realize_entry(by_name[spec.name], by_name, depth + 1)
    return _realize(spec, None)


def catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    """Load the catalog, realizing every entry and checking its order."""
    p = str(path) if path is not None else str(default_catalog_path())
    return list(_load(p))


def lookup(name: str, path: str | Path | None = None) -> CatalogEntry:
    for e in catalog(path):
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


def get_group(name: str, *, cap: int | None = None, path: str | Path | None = None) -> FiniteGroup:
    """Realize a catalog group by name."""
    return realize(Named(name), cap=cap, catalog_path=path)
