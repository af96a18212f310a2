import json
import random

import numpy as np
import pytest

from jordanlab import atlas
from jordanlab.errors import DegreeMismatch, GroupOrderOverflow, NotMember, TooLarge
from jordanlab.group import DEFAULT_CAP, FiniteGroup, build_group, closure_elements
from jordanlab.perm import Permutation, compose, dumps_group, inverse, loads_group

cyc = Permutation.from_cycles


def A5():
    return build_group(5, [cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1, 2))])


def S4():
    return build_group(4, [cyc(4, (0, 1)), cyc(4, (0, 1, 2, 3))])


def random_perm(rng, n):
    a = list(range(n))
    rng.shuffle(a)
    return Permutation(a)


# -- permutations ------------------------------------------------------------

def test_compose_applies_right_factor_first():
    p, q = cyc(3, (0, 1, 2)), cyc(3, (0, 1))
    r = compose(p, q)
    assert [r(0), r(1), r(2)] == [2, 1, 0]
    assert r == p * q


def test_identity_and_inverse_laws():
    rng = random.Random(1)
    e = Permutation.identity(7)
    for _ in range(50):
        p = random_perm(rng, 7)
        assert compose(p, e) == p == compose(e, p)
        assert compose(p, inverse(p)).is_identity()
        assert compose(inverse(p), p).is_identity()
        assert inverse(inverse(p)) == p
    assert inverse(e) == e
    assert inverse(cyc(3, (0, 1, 2))) == cyc(3, (0, 2, 1))


def test_compose_is_associative():
    rng = random.Random(2)
    for _ in range(100):
        p, q, r = (random_perm(rng, 9) for _ in range(3))
        assert (p * q) * r == p * (q * r)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(cyc(3, (0, 1)), cyc(4, (0, 1)))
    with pytest.raises(DegreeMismatch):
        A5().contains(cyc(6, (0, 1, 2)))


def test_bad_permutations_rejected():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([])


def test_cycles_order_sign():
    p = cyc(7, (0, 1, 2), (3, 4))
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.order() == 6
    assert p.sign() == -1
    assert p ** 6 == Permutation.identity(7)
    assert p ** -1 == ~p


def test_json_round_trip():
    G = A5()
    text = dumps_group(G.degree, G.generators)
    assert json.loads(text) == {"degree": 5, "generators": [[1, 2, 3, 4, 0], [1, 2, 0, 3, 4]]}
    degree, gens = loads_group(text)
    assert degree == 5 and list(gens) == list(G.generators)


# -- orders, membership ------------------------------------------------------

def test_spec_orders():
    assert A5().order() == 60
    assert S4().order() == 24
    assert build_group(12, [Permutation(list(range(1, 12)) + [0])]).order() == 12


def test_trivial_group():
    G = build_group(4, [])
    assert G.order() == 1
    assert len(list(G.elements())) == 1


@pytest.mark.parametrize("name", [e.name for e in atlas.catalog() if e.expected_order <= 5000])
def test_bsgs_order_matches_closure(name):
    G = atlas.get_group(name)
    assert len(closure_elements(G.degree, G.generators)) == G.order()


def test_orbit_stabilizer_on_every_level():
    G = atlas.get_group("A5wrS3")
    n = 1
    for length in reversed(G.bsgs.orbit_lengths):
        n *= length
    assert n == G.order() == 1_296_000


def test_contains():
    G = A5()
    assert G.contains(cyc(5, (0, 1, 2)))
    assert not G.contains(cyc(5, (0, 1)))


def test_contains_agrees_with_closure():
    rng = random.Random(3)
    for name in ["S4", "A5", "2.A4", "PSL2F7", "Hess648"]:
        G = atlas.get_group(name)
        members = closure_elements(G.degree, G.generators)
        for _ in range(200):
            p = random_perm(rng, G.degree)
            if rng.random() < 0.5:
                p = rng.choice(sorted(members))
            assert G.contains(p) == (p in members)


def test_products_of_generators_stay_inside():
    rng = random.Random(4)
    G = S4()
    for _ in range(100):
        w = Permutation.identity(4)
        for _ in range(rng.randint(1, 12)):
            w = w * rng.choice(G.generators)
        assert G.contains(w)


def test_order_overflow_is_an_error():
    with pytest.raises(GroupOrderOverflow):
        atlas.symmetric(21).order()


# -- enumeration ---------------------------------------------------------------

def test_elements_distinct_and_members():
    G = atlas.symmetric(3)
    els = list(G.elements())
    assert len(els) == len(set(els)) == 6
    assert all(G.contains(g) for g in els)


def test_enumeration_cap():
    G = atlas.symmetric(10)
    G.cap = 1000
    with pytest.raises(TooLarge):
        G.element_array()


def test_big_wreath_enumerates_under_default_cap():
    G = atlas.get_group("A5wrS3")
    assert G.cap == DEFAULT_CAP
    E = G.element_array()
    assert E.shape == (1_296_000, 15)
    assert len(np.unique(G.rank(E))) == 1_296_000


# -- classes, centralizers, closures -------------------------------------------

def _check_classes(G):
    cl = G.conjugacy_classes()
    sizes = [s for _, s in cl]
    assert sum(sizes) == G.order()
    for rep, size in cl:
        assert G.order() % size == 0
        assert size * G.centralizer(rep).order() == G.order()
    return sorted(sizes)


def test_conjugacy_classes():
    assert _check_classes(A5()) == [1, 12, 12, 15, 20]
    assert _check_classes(atlas.cyclic(6)) == [1] * 6
    assert sum(_check_classes(S4())) == 24 and len(S4().conjugacy_classes()) == 5
    for name in ["2.A5", "3.A6", "Hess648"]:
        _check_classes(atlas.get_group(name))


def test_class_reps_are_lex_smallest():
    G = S4()
    E = G.element_array()
    labels = G.class_labels()
    for rep, _ in G.conjugacy_classes():
        members = E[labels == labels[G.rank(rep.array()[None, :])[0]]]
        smallest = min(tuple(int(x) for x in row) for row in members)
        assert rep.images == smallest


def test_centralizers():
    G = A5()
    assert G.centralizer(cyc(5, (0, 1, 2, 3, 4))).order() == 5
    assert G.centralizer(G.identity()).order() == 60
    S3 = atlas.symmetric(3)
    assert S3.centralizer(cyc(3, (0, 1))).order() == 2
    with pytest.raises(NotMember):
        G.centralizer(cyc(5, (0, 1)))


def test_normal_closure():
    S3 = atlas.symmetric(3)
    assert S3.normal_closure([cyc(3, (0, 1, 2))]).order() == 3
    G = S4()
    assert G.normal_closure([cyc(4, (0, 1))]).order() == 24
    V = G.normal_closure([cyc(4, (0, 1), (2, 3))])
    assert V.order() == 4 and V.is_normal_in(G)
    with pytest.raises(NotMember):
        A5().normal_closure([cyc(5, (0, 1))])


def test_subgroup_generated():
    G = A5()
    H = G.subgroup([cyc(5, (0, 1), (2, 3)), cyc(5, (0, 2), (1, 3))])
    assert H.order() == 4
    assert G.subgroup([]).order() == 1
    assert G.subgroup(G.generators).order() == 60


def test_lagrange_on_random_subgroups():
    rng = np.random.default_rng(5)
    G = atlas.get_group("3.A6")
    for _ in range(30):
        H = G.subgroup([G.element(int(rng.integers(G.order()))) for _ in range(2)])
        assert G.order() % H.order() == 0


def test_is_abelian():
    assert atlas.direct_product(atlas.cyclic(2), atlas.cyclic(2)).is_abelian()
    assert not atlas.symmetric(3).is_abelian()
    C5 = atlas.cyclic(5)
    assert atlas.direct_product(atlas.direct_product(C5, C5), C5).is_abelian()


def test_center():
    assert atlas.get_group("2.A5").center().order() == 2
    assert atlas.get_group("3.A6").center().order() == 3
    assert FiniteGroup(5, A5().generators).center().order() == 1
