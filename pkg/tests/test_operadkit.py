import itertools
import math

import pytest

from momentcat import operadkit as ok
from momentcat.hyperkit import PlusCategory
from momentcat.skeletons import augmentation, gamma, parse_morphism, wreath
from momentcat.dendro import Omega


def planar_binary_trees(n):
    if n == 1:
        return ["x"]
    return [f"({a}{b})" for k in range(1, n) for a in planar_binary_trees(k) for b in planar_binary_trees(n - k)]


def binary_shapes(n):
    """Non-planar binary trees with n labelled leaves, as frozensets."""
    if n == 1:
        return {1}
    out = set()

    def splits(labels):
        first, rest = labels[0], labels[1:]
        for r in range(len(rest)):
            for combo in itertools.combinations(rest, r):
                left = (first,) + combo
                right = tuple(x for x in rest if x not in combo)
                yield left, right

    def build(labels):
        if len(labels) == 1:
            return {labels[0]}
        res = set()
        for left, right in splits(labels):
            for a in build(left):
                for b in build(right):
                    res.add(frozenset([a, b]))
        return res

    return build(tuple(range(1, n + 1)))


@pytest.fixture(scope="module")
def assoc_gamma(G):
    return ok.associative_operad(G, 3)


@pytest.mark.parametrize("cat,bound", [("G", 3), ("D", 3), ("T2", 3)])
def test_terminal_operad(cat, bound, request):
    C = request.getfixturevalue(cat)
    assert ok.check_operad(ok.terminal_operad(C, bound), bound).passed


@pytest.mark.parametrize("cat", ["G", "D"])
def test_associative_operad(cat, request):
    C = request.getfixturevalue(cat)
    O = ok.associative_operad(C, 3)
    rep = ok.check_operad(O, 3)
    assert rep.passed and rep.checked > 10000


def test_initial_operad(G, D):
    for C in (G, D):
        O = ok.initial_operad(C, 3)
        assert [len(O(a)) for a in C.objects(3)] == [0, 1, 0, 0]
        assert ok.check_operad(O, 3).passed


def test_mutated_composition_breaks_associativity(G, assoc_gamma):
    table = ok.tabulate(assoc_gamma, 3)
    f = parse_morphism(G, "[{1,2,3}]:1->3")
    key = next(k for k in table if k[0] == f and k[1] == (1,) and k[2] == ((1, 2, 3),))
    table[key] = (3, 2, 1)
    bad = ok.from_table(assoc_gamma.collection, assoc_gamma.eta, table)
    rep = ok.check_operad(bad, 3)
    assert not rep.passed
    names = {w[0] for w in rep.counterexamples}
    assert names & {"associativity", "left unit", "right unit", "equivariance"}


def test_mutated_action_breaks_equivariance(G, assoc_gamma):
    C = assoc_gamma.collection
    broken = ok.Collection(G, C.values, lambda sigma, x: x)
    bad = ok.OperadSet(broken, assoc_gamma.eta, assoc_gamma.mu)
    rep = ok.check_operad(bad, 3)
    assert not rep.passed
    assert any(w[0] == "equivariance" for w in rep.counterexamples)
    assert ok.check_operad(bad, 3, equivariance=False).passed


def test_restriction_along_augmentation(D, assoc_gamma):
    O = ok.restrict_operad(augmentation(D), assoc_gamma, D, 3)
    assert [len(O(a)) for a in D.objects(3)] == [1, 1, 2, 6]
    assert ok.check_operad(O, 3).passed
    T = ok.restrict_operad(augmentation(D), ok.terminal_operad(gamma(), 3), D, 3)
    assert ok.operads_equal(T, ok.terminal_operad(D, 3), 3).passed


def test_operads_equal_detects_difference(G, assoc_gamma):
    assert ok.operads_equal(assoc_gamma, assoc_gamma, 3).passed
    assert not ok.operads_equal(assoc_gamma, ok.terminal_operad(G, 3), 3).passed


@pytest.mark.parametrize("make", [ok.terminal_operad, ok.associative_operad])
@pytest.mark.parametrize("cat", ["G", "D"])
def test_operad_monoid_round_trip(cat, make, request):
    C = request.getfixturevalue(cat)
    P = PlusCategory(C)
    O = make(C, 3)
    X = ok.operad_to_plus_monoid(O, P, 3)
    assert ok.check_monoid(X, 3, [t for t in P.objects(4) if t.height <= 2]).passed
    back = ok.plus_monoid_to_operad(X, P, 3)
    assert ok.operads_equal(O, back, 3).passed


def test_delta_nerve_segal(D):
    P = ok.nerve_presheaf(D, (0, 1, 2), max, 0, 3)
    rep = ok.strict_segal_check(P, 3)
    assert rep.passed
    f = parse_morphism(D, "(0,2):[1]->[2]")
    assert rep.monoid.act(f, ((1,), (2,))) == (2,)
    assert rep.to_json()["passed"] is True


def test_segal_failure_on_doubled_nilobject(D):
    P = ok.nerve_presheaf(D, (0, 1), max, 0, 3)
    values = dict(P.values)
    values[0] = ((), ("extra",))
    rep = ok.strict_segal_check(ok.Presheaf(D, values, P.act), 3)
    assert not rep.passed
    assert any(row.get("nil") is False for row in rep.objects)


def test_gamma_commutative_segal(G):
    P = ok.commutative_presheaf(G, (0, 1), lambda a, b: (a + b) % 2, 0, 3)
    rep = ok.strict_segal_check(P, 3)
    assert rep.passed
    assert ok.check_monoid(rep.monoid, 3).passed


def test_eckmann_hilton(T2):
    res = ok.eckmann_hilton_search(T2, 4)
    assert res["passing"] == 4 and res["eckmann_hilton"]


def test_eckmann_hilton_needs_interchange_objects(T2):
    res = ok.eckmann_hilton_search(T2, 3)
    assert res["passing"] > 4 and not res["eckmann_hilton"]


@pytest.fixture(scope="module")
def binary_delta(D):
    X = ok.Collection(D, {2: ("m",)})
    return X, ok.free_operad(X, PlusCategory(D), 6)


def test_free_delta_operad_is_catalan(D, binary_delta):
    _, F = binary_delta
    counts = [len(F.operad(n)) for n in range(1, 7)]
    assert counts == [len(planar_binary_trees(n)) for n in range(1, 7)] == [1, 1, 2, 5, 14, 42]
    assert len(F.operad(0)) == 0 and not F.truncated


def test_free_gamma_operad(G):
    X = ok.Collection(G, {2: ("m",)})
    F = ok.free_operad(X, PlusCategory(G), 5)
    counts = [len(F.operad(n)) for n in range(1, 6)]
    assert counts == [len(binary_shapes(n)) for n in range(1, 6)] == [1, 1, 3, 15, 105]


def test_free_operads_satisfy_axioms(D, binary_delta):
    X, F = binary_delta
    assert ok.check_operad(F.operad, 4).passed
    P = PlusCategory(D)
    Fm = ok.free_plus_monoid(X, P, 4)
    assert ok.check_monoid(Fm.monoid, 3, [t for t in P.objects(4) if t.height <= 2]).passed


def test_free_gamma_with_swapped_generators(G):
    def swap(sigma, x):
        return {"a": "b", "b": "a"}[x] if G.gamma(sigma).pmap != tuple(range(1, 3)) else x

    X = ok.Collection(G, {2: ("a", "b")}, swap)
    F = ok.free_operad(X, PlusCategory(G), 3)
    assert [len(F.operad(n)) for n in range(4)] == [0, 1, 2, 12]
    assert ok.check_operad(F.operad, 3).passed


def test_free_on_empty_is_initial(G, D):
    for C in (G, D):
        F = ok.free_operad(ok.Collection(C, {}), PlusCategory(C), 3)
        assert [len(F.operad(a)) for a in C.objects(3)] == [0, 1, 0, 0]
        assert ok.check_operad(F.operad, 3).passed


def test_triangle_identities(G, D, binary_delta):
    X, F = binary_delta
    assert ok.check_triangles(X, F, ok.associative_operad(D, 4), 4).passed
    XG = ok.Collection(G, {2: ("m",)})
    FG = ok.free_operad(XG, PlusCategory(G), 4)
    assert ok.check_triangles(XG, FG, ok.associative_operad(G, 4), 4).passed


def test_rigid_and_cooperadic(G, D):
    for C in (G, D, wreath(D, D)):
        assert ok.check_rigid(C, 3).passed
    for C in (D, wreath(D, D)):
        assert ok.check_cooperadic(ok.cooperadic_export(C, 3), 3).passed


def test_omega_is_not_rigid():
    rep = ok.check_rigid(Omega(), 3)
    assert not rep.passed
    with pytest.raises(ValueError):
        ok.cooperadic_export(Omega(), 3)


def test_theta_eckmann_hilton_witness_shape(T2):
    res = ok.eckmann_hilton_search(T2, 3)
    for e, h, v in res["witnesses"]:
        assert all(h[(e, x)] == x for x in (0, 1))
