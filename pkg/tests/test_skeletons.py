import itertools
from math import comb

import pytest

from momentcat.catkit import check_M1_M2_MC, check_factorisation
from momentcat.skeletons import (Gamma, GammaMorphism, Wreath, assembly, augment, augmentation,
                                 check_augmentation, check_disjoint_elementary, check_partition,
                                 check_unital, delta, detect_nilobjects, detect_units,
                                 format_morphism, from_permutation, gamma, gamma_compose,
                                 internal_wreath, parse_morphism, parse_object, partition,
                                 NotationError, wreath)
from momentcat.skeletons.notation import morphism_from_data, morphism_to_data


def partial_maps(n, m):
    """Partial maps {1..n} -> {1..m} as tuples with 0 for undefined."""
    return list(itertools.product(range(m + 1), repeat=n))


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(5)])
def test_gamma_hom_counts(G, m, n):
    assert len(G.hom(m, n)) == len(partial_maps(n, m)) == (m + 1) ** n


def test_gamma_composition_is_partial_map_composition(G):
    def as_map(f):
        return dict(enumerate(f.pmap, 1))

    for a in range(4):
        for b in range(4):
            for c in range(4):
                for f in G.hom(a, b):
                    for g in G.hom(b, c):
                        pf, pg = as_map(f), as_map(g)
                        # dual maps compose in the other order: c -> b -> a
                        expected = tuple(pf.get(pg[z], 0) if pg[z] else 0 for z in range(1, c + 1))
                        assert G.compose(g, f).pmap == expected


def monotone_maps(m, n):
    return [v for v in itertools.product(range(n + 1), repeat=m + 1)
            if all(x <= y for x, y in zip(v, v[1:]))]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(5) for n in range(5)])
def test_delta_hom_counts(D, m, n):
    assert len(D.hom(m, n)) == len(monotone_maps(m, n)) == comb(m + n + 1, m + 1)


def test_gamma_nilobject_and_unit(G):
    assert GammaMorphism.from_subsets([[]], 0) in G.hom(1, 0)
    assert detect_nilobjects(G, 4) == [0]
    assert detect_units(G, 4) == [1]
    assert [G.cardinality(n) for n in range(5)] == list(range(5))


def test_delta_units(D):
    assert detect_units(D, 4) == [1]
    assert detect_nilobjects(D, 4) == [0]
    assert [D.cardinality(n) for n in range(5)] == list(range(5))


def test_theta2_unit_is_linear_tree(T2):
    assert T2.units() == [(1, (1,))]
    assert detect_units(T2, 3) == [(1, (1,))]


def test_wreath_cardinality_and_units(G):
    T = wreath(delta(), delta())
    assert T.cardinality((2, (1, 3))) == 4
    assert wreath(G, G).units() == [(1, (1,))]


def test_theta2_moment_axioms(T2):
    assert check_factorisation(T2, 4).passed
    reps = check_M1_M2_MC(T2, 4)
    assert reps["M1"].passed and reps["M2"].passed
    assert check_unital(T2, 4).passed


@pytest.mark.parametrize("cat", ["G", "D", "T2"])
def test_unique_active_from_unit(cat, request):
    C = request.getfixturevalue(cat)
    for a in C.objects(4):
        actives = [f for u in C.units() for f in C.active_hom(u, a)]
        assert len(actives) == 1


@pytest.mark.parametrize("cat", ["G", "D", "T2"])
def test_elementary_moments_disjoint(cat, request):
    assert check_disjoint_elementary(request.getfixturevalue(cat), 3).passed


def test_assembly():
    assert assembly((2, (3, 1))) == 4
    GG = Wreath(Gamma(), Gamma())
    for f in GG.morphisms(3):
        g = assembly(f)
        assert g.source == assembly(f.source) and g.target == assembly(f.target)


def test_internal_wreath_gamma_swap(G):
    f = G.identity(2)
    sigma = from_permutation({1: 2, 2: 1}, 2)
    (rho,) = internal_wreath(G, f, sigma, [G.identity(1), G.identity(1)])
    assert rho == sigma


def test_internal_wreath_delta_empty():
    D = delta()
    f = D.identity(2)
    sigma = GammaMorphism.from_subsets([[2], [1]], 2)
    ident = GammaMorphism.from_subsets([[1]], 1)
    assert internal_wreath(D, f, sigma, [ident, ident]) == []


def test_internal_wreath_block_layout(G):
    # f : 2 -> 3 with blocks {1,2}, {3}; swapping the blocks puts the singleton first
    f = parse_morphism(G, "[{1,2}|{3}]:2->3")
    sigma = from_permutation({1: 2, 2: 1}, 2)
    (rho,) = internal_wreath(G, f, sigma, [G.identity(2), G.identity(1)])
    assert rho.subsets == ({2}, {3}, {1}) or [sorted(s) for s in rho.subsets] == [[2], [3], [1]]


def test_augmentation_delta(D):
    f = parse_morphism(D, "(0,2):[1]->[2]")
    assert D.gamma(f) == parse_morphism(Gamma(), "[{1,2}]:1->2")
    assert augment(D, f) == D.gamma(f)


def test_augmentation_gamma_identity(G):
    for f in G.morphisms(3):
        assert G.gamma(f) == f == augment(G, f)


@pytest.mark.parametrize("cat", ["G", "D", "T2"])
def test_augmentation_functor(cat, request):
    reps = check_augmentation(request.getfixturevalue(cat), 3)
    assert all(r.passed for r in reps.values()), {k: r.counterexamples[:2] for k, r in reps.items()}


def test_augmentation_preserves_classes(D):
    aug = augmentation(D)
    for f in D.morphisms(3):
        g = aug(f)
        assert g.is_active() == D.is_active(f)
        assert g.is_inert() == D.is_inert(f)


def test_partition_examples(G, D):
    f = parse_morphism(D, "(0,2,4):[2]->[4]")
    assert partition(D, f) == [[1, 2], [3, 4]]
    assert partition(G, parse_morphism(G, "[{1,3}|{2}]:2->3")) == [[1, 3], [2]]
    assert partition(G, G.identity(3)) == [[1], [2], [3]]
    with pytest.raises(ValueError):
        partition(G, parse_morphism(G, "[{1}]:1->2"))


@pytest.mark.parametrize("cat", ["G", "D", "T2"])
def test_partition_property(cat, request):
    assert check_partition(request.getfixturevalue(cat), 3).passed


def test_partition_refines_under_composition(G, D):
    for C in (G, D):
        obs = C.objects(3)
        for a in obs:
            for b in obs:
                for f in C.active_hom(a, b):
                    for c in obs:
                        for g in C.active_hom(b, c):
                            pf, pg = partition(C, f), partition(C, g)
                            expected = [sorted(x for y in blk for x in pg[y - 1]) for blk in pf]
                            assert [sorted(b_) for b_ in partition(C, C.compose(g, f))] == expected


def test_notation_round_trip(G, D, T2):
    for C in (G, D):
        for f in C.morphisms(3):
            assert parse_morphism(C, format_morphism(C, f)) == f
    for f in T2.morphisms(2):
        assert morphism_from_data(T2, morphism_to_data(T2, f)) == f
    assert parse_object(T2, "[2,[1,3]]") == (2, (1, 3))


@pytest.mark.parametrize("text", ["[{1,2}:1->2", "[{1}|{1}]:2->2", "[{3}]:1->2", "(0,2):[2]->[2]"])
def test_notation_errors(text):
    C = delta() if text.startswith("(") else gamma()
    with pytest.raises(NotationError):
        parse_morphism(C, text)


def test_notation_error_has_position():
    with pytest.raises(NotationError) as info:
        parse_morphism(gamma(), "[{1,2}x]:1->2")
    assert info.value.position == 6
