import json
from math import factorial

import numpy as np
import pytest

from jordanlab import atlas, fields
from jordanlab.atlas import Alt, Cyclic, DirectProduct, Named, TensorCentralProduct, Trivial, Wreath
from jordanlab.errors import CatalogMismatch, SingularMatrix, UnsupportedField
from jordanlab.fields import AFFINE, PROJECTIVE, FqMatrix, matrix_to_perm


# -- finite fields -------------------------------------------------------------

@pytest.mark.parametrize("q", fields.SUPPORTED)
def test_field_axioms(q):
    F = fields.field(q)
    a = np.arange(q)
    assert (F.add[a, 0] == a).all() and (F.mul[a, 1] == a).all()
    assert (F.add == F.add.T).all() and (F.mul == F.mul.T).all()
    for x in range(1, q):
        assert F.mul[x, F.inv[x]] == 1
        assert F.add[x, F.neg[x]] == 0
    # distributivity on every triple
    lhs = F.mul[a[:, None, None], F.add[a[None, :, None], a[None, None, :]]]
    rhs = F.add[F.mul[a[:, None, None], a[None, :, None]], F.mul[a[:, None, None], a[None, None, :]]]
    assert (lhs == rhs).all()
    # multiplicative group is cyclic of order q - 1
    g = F.primitive_element()
    seen, x = set(), 1
    for _ in range(q - 1):
        x = int(F.mul[x, g])
        seen.add(x)
    assert len(seen) == q - 1


def test_unsupported_field():
    with pytest.raises(UnsupportedField):
        fields.field(8)


def test_singular_matrix_rejected():
    with pytest.raises(SingularMatrix):
        matrix_to_perm(5, 2, [FqMatrix.from_rows(5, [[1, 2], [2, 4]])], AFFINE)


def test_extension_field_entries_as_pairs():
    M = FqMatrix.from_rows(9, [[[0, 1], 0], [0, [0, 1]]])  # diag(x, x)
    assert M.det() == fields.field(9).mul[3, 3]


# -- matrix actions --------------------------------------------------------------

def test_sl2f5_affine_is_binary_icosahedral():
    G = matrix_to_perm(5, 2, fields.sl2_generators(5), AFFINE)
    assert G.degree == 24 and G.order() == 120


def test_psp4f3_on_forty_points():
    sp = atlas.lookup("Sp4F3").spec
    G = matrix_to_perm(3, 4, sp.generators, PROJECTIVE)
    assert G.degree == 40 and G.order() == 25920


def test_sl3f2_projective():
    gens = [FqMatrix.from_rows(2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            FqMatrix.from_rows(2, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])]
    G = matrix_to_perm(2, 3, gens, PROJECTIVE)
    assert G.degree == 7 and G.order() == 168


@pytest.mark.parametrize("q,dim,gens", [
    (5, 2, fields.sl2_generators(5)),
    (9, 2, fields.sl2_generators(9)),
    (3, 4, atlas.lookup("Sp4F3").spec.generators),
])
def test_central_quotient_sanity(q, dim, gens):
    affine = matrix_to_perm(q, dim, gens, AFFINE)
    proj = matrix_to_perm(q, dim, gens, PROJECTIVE)
    scalars = [s for s in fields.scalar_matrices(q, dim) if affine.contains(
        matrix_to_perm(q, dim, [s], AFFINE).generators[0])]
    assert proj.order() * len(scalars) == affine.order()


def test_perm_to_matrix_round_trip():
    gens = fields.sl2_generators(7)
    G = matrix_to_perm(7, 2, gens, AFFINE)
    for M, p in zip(gens, G.generators):
        assert fields.perm_to_matrix(7, 2, p).entries == M.entries


# -- constructors ------------------------------------------------------------------

def test_wreath_orders_and_blocks():
    A5 = atlas.alternating(5)
    G = atlas.wreath(A5, 3)
    assert G.degree == 15 and G.order() == 1_296_000
    D = atlas.wreath(atlas.cyclic(2), 2)
    assert D.order() == 8 and not D.is_abelian()
    S = atlas.wreath(atlas.realize(Trivial()), 3)
    assert S.degree == 3 and S.order() == 6
    for g in G.generators:  # blocks of 5 points are permuted as blocks
        blocks = {frozenset(g(i) for i in range(b * 5, b * 5 + 5)) for b in range(3)}
        assert blocks == {frozenset(range(b * 5, b * 5 + 5)) for b in range(3)}
    assert atlas.wreath(A5, 3, top="alt").order() == 60 ** 3 * 3


def test_realize_spec_examples():
    G = atlas.realize(Wreath(Alt(5), 2, "sym"))
    assert G.degree == 10 and G.order() == 7200
    assert atlas.realize(DirectProduct(Cyclic(2), Alt(4))).order() == 24
    assert atlas.realize(Named("Sp4F3")).order() == 51840


@pytest.mark.parametrize("name", [e.name for e in atlas.catalog() if isinstance(e.spec, Wreath)])
def test_catalog_wreath_order_formula(name):
    spec = atlas.lookup(name).spec
    base = atlas.realize(spec.base).order()
    top = factorial(spec.k) // (2 if spec.top == "alt" and spec.k > 1 else 1)
    assert atlas.get_group(name).order() == base ** spec.k * top


def test_tensor_central_product_order():
    spec = atlas.lookup("CP_2S4_2S4").spec
    assert isinstance(spec, TensorCentralProduct)
    left = atlas.realize(spec.left).order()
    right = atlas.realize(spec.right).order()
    assert atlas.realize(spec).order() == left * right // 2 == 1152


def test_parse_spec():
    assert atlas.parse_spec("Wreath(Alt(5),3,Sym)") == Wreath(Alt(5), 3, "sym")
    assert atlas.parse_spec("A5wrS2") == Named("A5wrS2")
    assert atlas.parse_spec("DirectProduct(Cyclic(2), Named('A4'))") == DirectProduct(Cyclic(2), Named("A4"))
    with pytest.raises(ValueError):
        atlas.parse_spec("import os")


def test_spec_json_round_trip():
    for e in atlas.catalog():
        assert atlas.spec_from_json(json.loads(json.dumps(e.spec.to_json()))) == e.spec


# -- catalog ---------------------------------------------------------------------

REQUIRED = {"Q8": 8, "2.A4": 24, "2.S4": 48, "2.A5": 120, "A6": 360, "2.A6": 720, "3.A6": 1080,
            "PSL2F7": 168, "Sp4F3": 51840, "PSp4F3": 25920, "Heis27": 27, "Hess648": 648,
            "Heis125SL25": 15000, "mu2xA4": 24, "A5wrS2": 7200, "A5wrS3": 1_296_000, "CP_2S4_2S4": 1152}


def test_catalog_contents():
    by_name = {e.name: e for e in atlas.catalog()}
    for name, order in REQUIRED.items():
        assert by_name[name].expected_order == order
    kinds = {type(e.spec).__name__ for e in atlas.catalog()}
    assert {"Cyclic", "Dihedral", "Sym", "Alt"} <= kinds
    assert atlas.lookup("3.A6").expected_order == 1080
    assert atlas.lookup("Hess648").expected_order == 648
    assert atlas.lookup("2.S4").expected_order == 48


@pytest.mark.parametrize("name", [e.name for e in atlas.catalog()])
def test_catalog_realizations_faithful(name):
    G = atlas.get_group(name)
    assert G.order() == atlas.lookup(name).expected_order
    assert all(not g.is_identity() for g in G.generators)


def test_3a6_certificates():
    G = atlas.get_group("3.A6")
    Z = G.center()
    assert Z.order() == 3
    # the quotient by the centre is nonabelian of order 360: commutators escape Z
    g, h = G.generators[:2]
    assert G.order() // Z.order() == 360
    assert not Z.contains(g * h * ~g * ~h)


def test_catalog_mismatch(tmp_path):
    raw = json.loads(atlas.default_catalog_path().read_text())
    for e in raw["entries"]:
        if e["name"] == "A5":
            e["expected_order"] = 61
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(raw))
    with pytest.raises(CatalogMismatch):
        atlas.catalog(str(bad))


def test_lookup_unknown():
    with pytest.raises(KeyError):
        atlas.lookup("NoSuchGroup")
