"""Concrete unital moment categories: Gamma, Delta, wreath products and Theta_n."""
from __future__ import annotations

from ..catkit import FinCategory
from .delta import Delta, DeltaMorphism, delta_compose, interval
from .gamma import Gamma, GammaMorphism, gamma_compose
from .notation import (NotationError, format_morphism, format_object, parse_morphism,
                       parse_object)
from .units import (Augmentation, augment, augmentation, check_augmentation,
                    check_disjoint_elementary, check_partition, check_unital,
                    detect_nilobjects, detect_units, partition)
from .wreath import Wreath, WreathMorphism, assembly, theta


def gamma() -> Gamma:
    return Gamma()


def delta() -> Delta:
    return Delta()


def wreath(C: FinCategory, D: FinCategory) -> Wreath:
    return Wreath(C, D)


def units(C: FinCategory, bound: int | None = None) -> list:
    if hasattr(C, "units"):
        return C.units()
    return detect_units(C, bound)


def nilobjects(C: FinCategory, bound: int) -> list:
    if hasattr(C, "nilobjects"):
        return C.nilobjects(bound)
    return detect_nilobjects(C, bound)


def elementary(C: FinCategory, a) -> list:
    return C.elementary(a)


def cardinality(C: FinCategory, a) -> int:
    return C.cardinality(a)


def permutation_of(g: GammaMorphism) -> dict:
    """A Gamma automorphism as the bijection sending i to the element of its i-th subset."""
    return {i: next(iter(s)) for i, s in enumerate(g.subsets, 1)}


def from_permutation(perm: dict, n: int) -> GammaMorphism:
    return GammaMorphism.from_subsets([[perm[i]] for i in range(1, n + 1)], n)


def gamma_wreath(f: GammaMorphism, sigma: GammaMorphism, taus: list) -> GammaMorphism:
    """Block permutation of the target of an active f: the k-th element of the
    block of alpha goes to slot tau_alpha(k) of the block placed sigma(alpha)-th
    in a contiguous layout."""
    blocks = f.blocks
    s = permutation_of(sigma)
    sizes = {s[a]: len(blocks[a - 1]) for a in range(1, f.source + 1)}
    offset, acc = {}, 0
    for slot in range(1, f.source + 1):
        offset[slot] = acc
        acc += sizes[slot]
    perm = {}
    for a, block in enumerate(blocks, 1):
        t = permutation_of(taus[a - 1])
        for k, x in enumerate(block, 1):
            perm[x] = offset[s[a]] + t[k]
    return from_permutation(perm, f.target)


def internal_wreath(C: FinCategory, f, sigma, taus) -> list:
    """All automorphisms of the target of f whose augmentation is the Gamma wreath
    product of the augmentations of sigma and the taus.  sigma and the taus may be
    given in C or directly as Gamma automorphisms."""
    if not C.is_active(f):
        raise ValueError("internal wreath products are taken along active morphisms")
    g = C.gamma(f)
    s = sigma if isinstance(sigma, GammaMorphism) else C.gamma(sigma)
    ts = [t if isinstance(t, GammaMorphism) else C.gamma(t) for t in taus]
    if len(ts) != g.source or any(t.source != len(b) for t, b in zip(ts, g.blocks)):
        raise ValueError("one automorphism per block of matching size is required")
    if s.source != g.source:
        raise ValueError("sigma must be an automorphism of the source")
    want = gamma_wreath(g, s, ts)
    b = C.target(f)
    return [rho for rho in C.automorphisms(b) if C.gamma(rho) == want]


__all__ = [
    "Gamma", "GammaMorphism", "Delta", "DeltaMorphism", "Wreath", "WreathMorphism",
    "gamma", "delta", "wreath", "theta", "assembly", "internal_wreath", "gamma_wreath",
    "units", "nilobjects", "elementary", "cardinality", "augmentation", "Augmentation",
    "augment", "partition", "check_partition", "check_augmentation", "check_unital",
    "check_disjoint_elementary", "detect_units", "detect_nilobjects", "gamma_compose",
    "delta_compose", "interval", "parse_morphism", "parse_object", "format_morphism",
    "format_object", "NotationError", "permutation_of", "from_permutation",
]
