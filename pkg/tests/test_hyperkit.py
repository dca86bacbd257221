import itertools

import pytest

from momentcat import hyperkit as hk
from momentcat.catkit import check_factorisation
from momentcat.skeletons import parse_morphism
from momentcat.skeletons.delta import DeltaMorphism


def gm(G, text):
    return parse_morphism(G, text)


@pytest.fixture(scope="module")
def five_vertex(G, GP):
    return GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1,2}|{}]:2->2"), gm(G, "[{}|{1,2,3}]:2->3"))


@pytest.fixture(scope="module")
def host(G, GP):
    return GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1}|{2,3}]:2->3"))


def test_tree_validation(G, GP):
    with pytest.raises(hk.TreeError):
        GP.tree(gm(G, "[{1}]:1->2"))
    with pytest.raises(hk.TreeError):
        GP.tree(gm(G, "[{1,2}|{3}]:2->3"))
    with pytest.raises(hk.TreeError):
        GP.tree(gm(G, "[{}]:1->0"), gm(G, "[]:0->0"))
    with pytest.raises(hk.TreeError):
        GP.tree()


def test_units_and_nilobjects(GP):
    units = GP.units(4)
    assert [u.top for u in units] == [0, 1, 2, 3]
    assert all(u.height == 1 and u.root == 1 for u in units)
    assert [str(n) for n in GP.nilobjects()] == ["([0]; 1)"]


def test_five_vertex_tree(GP, five_vertex):
    assert five_vertex.height == 3
    assert GP.cardinality(five_vertex) == 5
    assert [v.height for v in GP.vertices(five_vertex)] == [0, 1, 1, 2, 2]


def test_vertex_morphisms_are_inert_from_units(GP, five_vertex):
    for v in GP.vertices(five_vertex):
        alpha = GP.vertex_morphism(five_vertex, v)
        assert GP.is_inert(alpha) and GP.is_unit(alpha.source)
        assert alpha.phi.values == (v.height, v.height + 1)


def test_augmentation_sends_vertex_to_singleton(GP, five_vertex):
    for k, v in enumerate(GP.vertices(five_vertex), 1):
        g = GP.gamma(GP.vertex_morphism(five_vertex, v))
        assert g.pmap == tuple(1 if x == k else 0 for x in range(1, 6))


def test_plus_factorisation_system(GP, DP):
    assert check_factorisation(GP, 5).passed
    assert check_factorisation(DP, 4).passed


def test_factorize_inert_input(GP, five_vertex):
    for v in GP.vertices(five_vertex):
        alpha = GP.vertex_morphism(five_vertex, v)
        act, inr = hk.factorize_plus(GP, alpha)
        assert GP.is_iso(act) and GP.compose(inr, act) == alpha


def test_factorize_degeneracy(G, GP):
    s = GP.tree(G.identity(1))
    t = GP.tree(root=1)
    f = hk.CTreeMorphism(s, t, DeltaMorphism(0, (0, 0)), (G.identity(1), G.identity(1)))
    act, inr = hk.factorize_plus(GP, f)
    assert act.target == t and GP.is_active(act)
    assert inr == GP.identity(t)


def brute_factorisations(P, f, bound):
    out = []
    for mid in P.objects(bound):
        for a in P.active_hom(f.source, mid):
            for i in P.inert_hom(mid, f.target):
                if P.compose(i, a) == f:
                    out.append((a, i))
    return out


def test_factorize_mixed_against_search(GP, host):
    checked = 0
    for s in GP.objects(5):
        if s.height != 2:
            continue
        for f in GP.hom(s, host):
            if GP.is_active(f) or GP.is_inert(f):
                continue
            act, inr = hk.factorize_plus(GP, f)
            assert GP.compose(inr, act) == f
            found = brute_factorisations(GP, f, 6)
            assert found
            for a, i in found:
                isos = GP.isomorphisms(act.target, a.target)
                assert any(GP.compose(h, act) == a and GP.compose(i, h) == inr for h in isos)
            checked += 1
    assert checked > 0


def test_insert_unit_tree_is_identity(GP, five_vertex):
    for v in GP.vertices(five_vertex):
        result, f, j = GP.insert(five_vertex, v, GP.vertex_tree(five_vertex, v))
        assert result == five_vertex


def test_insert_vertex_bookkeeping(G, GP, host):
    s = GP.tree(gm(G, "[{1}]:1->1"), gm(G, "[{1,2}]:1->2"))
    result, f, j = GP.insert(host, hk.Vertex(0, 1), s)
    assert result.height == 3
    assert GP.cardinality(result) == GP.cardinality(host) - 1 + GP.cardinality(s)


def test_insert_counts_stretched_siblings(G, GP, host):
    v = hk.Vertex(1, 2)
    s = GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1}|{2}]:2->2"))
    result, f, j = GP.insert(host, v, s)
    assert result.height == 3
    siblings = [w for w in GP.vertices(host) if w.height == v.height and w != v]
    extra = sum(len(GP.effaceable(GP.vertex_tree(host, w), s.height - 1)) for w in siblings)
    assert GP.cardinality(result) == GP.cardinality(host) - 1 + GP.cardinality(s) + extra


def test_insertion_pushout(G, GP, host):
    for v, s in ((hk.Vertex(0, 1), GP.tree(gm(G, "[{1}]:1->1"), gm(G, "[{1,2}]:1->2"))),
                 (hk.Vertex(1, 2), GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1}|{2}]:2->2")))):
        rep = hk.check_insertion_pushout(GP, host, v, s, 8)
        assert rep.passed and rep.checked > 100


def test_insert_rejects_mismatch(G, GP, host):
    with pytest.raises(hk.TreeError):
        GP.insert(host, hk.Vertex(1, 2), GP.tree(gm(G, "[{1,2,3}]:1->3")))
    with pytest.raises(hk.TreeError):
        GP.insert(host, hk.Vertex(4, 1), GP.tree(gm(G, "[{1}]:1->1")))


def test_coherent_insert_units_family(GP, five_vertex):
    family = {v: GP.vertex_tree(five_vertex, v) for v in GP.vertices(five_vertex)}
    result, f = GP.coherent_insert(five_vertex, family)
    assert result == five_vertex and f == GP.identity(five_vertex)


def test_coherent_insert_two_members(G, GP):
    t = GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1}|{2}]:2->2"))
    a = GP.tree(gm(G, "[{1}]:1->1"), gm(G, "[{1}]:1->1"))
    family = {hk.Vertex(0, 1): GP.vertex_tree(t, hk.Vertex(0, 1)), hk.Vertex(1, 1): a, hk.Vertex(1, 2): a}
    result, f = GP.coherent_insert(t, family)
    assert result.height == 3 and GP.cardinality(result) == 5
    assert [v.height for v in GP.vertices(result)] == [0, 1, 1, 2, 2]
    for v, member in family.items():
        act, _ = GP.factorize(GP.compose(f, GP.vertex_morphism(t, v)))
        assert GP.isomorphic(act.target, member)


def test_coherent_insert_active_parts(G, GP, five_vertex):
    deeper = {}
    for v in GP.vertices(five_vertex):
        unit = GP.vertex_tree(five_vertex, v)
        deeper[v] = GP.stretch(unit, 1) if v.height == 1 else unit
    result, f = GP.coherent_insert(five_vertex, deeper)
    assert GP.is_active(f)
    for v, member in deeper.items():
        act, _ = GP.factorize(GP.compose(f, GP.vertex_morphism(five_vertex, v)))
        assert act.target == member


def test_incoherent_family(G, GP, host):
    family = {v: GP.vertex_tree(host, v) for v in GP.vertices(host)}
    family[hk.Vertex(1, 2)] = GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1}|{2}]:2->2"))
    with pytest.raises(hk.TreeError, match="v1.1 and v1.2"):
        GP.coherent_insert(host, family)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_stretch_and_contract(GP, five_vertex, k):
    big = GP.stretch(five_vertex, k)
    assert big.height == five_vertex.height + k
    c = GP.contraction(five_vertex, k)
    section = GP.stretch_section(five_vertex, k)
    assert GP.contract(c) == k
    assert GP.compose(c, section) == GP.identity(five_vertex)
    assert GP.is_inert(section) and GP.is_active(c)
    assert len(GP.effaceable(five_vertex, k)) == k * 3
    if k == 0:
        assert big == five_vertex and c == GP.identity(five_vertex)


def test_contract_rejects(GP, five_vertex):
    for v in GP.vertices(five_vertex):
        assert GP.contract(GP.vertex_morphism(five_vertex, v)) is None


def test_normalize_coherent_family(GP, five_vertex):
    family = {v: GP.vertex_tree(five_vertex, v) for v in GP.vertices(five_vertex)}
    nf = GP.normalize_family(five_vertex, family)
    assert nf.degree == 0 and set(nf.degrees.values()) == {0}
    assert nf.tree == five_vertex


def test_normalize_heights_two_and_one(G, GP, host):
    family = {v: GP.vertex_tree(host, v) for v in GP.vertices(host)}
    family[hk.Vertex(1, 2)] = GP.tree(gm(G, "[{1,2}]:1->2"), gm(G, "[{1}|{2}]:2->2"))
    nf = GP.normalize_family(host, family)
    assert nf.degrees[hk.Vertex(1, 1)] == 1 and nf.degree == 1
    assert nf.coherent[hk.Vertex(1, 1)] == GP.stretch(family[hk.Vertex(1, 1)], 1)
    best = min(sum(d.values()) for d, _ in GP.coherentizations(host, family, 2))
    assert best == nf.degree
    for d, tree in GP.coherentizations(host, family, 2):
        if sum(d.values()) == best:
            assert GP.isomorphic(tree, nf.tree)


def test_hypermoment_gamma(G):
    assert hk.check_hypermoment(hk.Hypermoment(G), 4).passed


def test_hypermoment_mutant(G):
    H = hk.Hypermoment(G, cardinality=lambda n: n + 1 if n else 0)
    rep = hk.check_hypermoment(H, 3, functor=False)
    assert not rep.passed
    assert any("no inert lift" in str(w[-1]) for w in rep.counterexamples)


def test_hypermoment_plus(GP, DP):
    assert hk.check_hypermoment(hk.Hypermoment(GP), 4).passed
    assert hk.check_hypermoment(hk.Hypermoment(DP), 4).passed


def test_strong_unitality(G, D, GP):
    assert hk.check_strong_unitality(hk.Hypermoment(GP), 4).passed
    assert hk.check_strong_unitality(hk.Hypermoment(D), 4).passed
    assert not hk.check_strong_unitality(hk.Hypermoment(G), 3).passed


def test_extensionality(G, D):
    assert hk.check_extensionality(hk.Hypermoment(D), 3).passed
    assert hk.check_extensionality(hk.Hypermoment(G), 3).passed


def test_extensionality_by_search(D):
    class NoGraft:
        def __init__(self, C):
            self._C = C

        def __getattr__(self, name):
            if name in ("graft", "graft_map", "graft_inclusion"):
                raise AttributeError(name)
            return getattr(self._C, name)

    rep = hk.check_extensionality(hk.Hypermoment(NoGraft(D)), 2, pushout_bound=3)
    assert rep.passed
