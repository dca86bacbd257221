"""Segal's category of finite cardinals with disjoint-subset operators.

A morphism m -> n is an m-tuple of pairwise disjoint subsets of {1..n}.  We
store it as the dual partial map n -> m: ``pmap[x-1] = i`` when x lies in the
i-th subset and 0 when x lies in none of them.  Composition is then plain
partial-map composition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..catkit import CompositionError, FinCategory


@dataclass(frozen=True, order=True)
class GammaMorphism:
    source: int
    target: int
    pmap: tuple

    def __post_init__(self):
        if len(self.pmap) != self.target:
            raise ValueError(f"partial map has length {len(self.pmap)}, expected {self.target}")
        if any(v < 0 or v > self.source for v in self.pmap):
            raise ValueError(f"partial map values must lie in 0..{self.source}")

    @classmethod
    def from_subsets(cls, subsets, target):
        pmap = [0] * target
        for i, block in enumerate(subsets, 1):
            for x in block:
                if not 1 <= x <= target:
                    raise ValueError(f"element {x} outside 1..{target}")
                if pmap[x - 1]:
                    raise ValueError("subsets are not pairwise disjoint")
                pmap[x - 1] = i
        return cls(len(subsets), target, tuple(pmap))

    @cached_property
    def subsets(self) -> tuple:
        blocks = [[] for _ in range(self.source)]
        for x, i in enumerate(self.pmap, 1):
            if i:
                blocks[i - 1].append(x)
        return tuple(frozenset(b) for b in blocks)

    @cached_property
    def blocks(self) -> tuple:
        """Subsets as sorted tuples, the form used by partitions and augmentations."""
        return tuple(tuple(sorted(b)) for b in self.subsets)

    def is_active(self) -> bool:
        return all(self.pmap)

    def is_inert(self) -> bool:
        return sorted(v for v in self.pmap if v) == list(range(1, self.source + 1))

    def __str__(self):
        inner = "|".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"[{inner}] : {self.source} -> {self.target}"


def gamma_compose(g: GammaMorphism, f: GammaMorphism) -> GammaMorphism:
    if f.target != g.source:
        raise CompositionError(f"cannot compose {g} after {f}")
    fp = f.pmap
    return GammaMorphism(f.source, g.target, tuple(fp[k - 1] if k else 0 for k in g.pmap))


class Gamma(FinCategory):
    """Objects are the cardinals 0, 1, 2, ...; the single unit is 1."""

    name = "gamma"

    def objects(self, bound):
        return list(range(bound + 1))

    def size(self, obj):
        return obj

    def cardinality(self, obj):
        return obj

    def hom(self, a, b):
        return [GammaMorphism(a, b, p) for p in itertools.product(range(a + 1), repeat=b)]

    def compose(self, g, f):
        return gamma_compose(g, f)

    def identity(self, a):
        return GammaMorphism(a, a, tuple(range(1, a + 1)))

    def is_active(self, f):
        return f.is_active()

    def is_inert(self, f):
        return f.is_inert()

    def is_iso(self, f):
        return f.source == f.target and f.is_active() and f.is_inert()

    def inverse(self, f):
        if not self.is_iso(f):
            return None
        inv = [0] * f.source
        for x, i in enumerate(f.pmap, 1):
            inv[i - 1] = x
        return GammaMorphism(f.target, f.source, tuple(inv))

    def automorphisms(self, a):
        return [GammaMorphism(a, a, p) for p in itertools.permutations(range(1, a + 1))]

    def factorize(self, f):
        support = [x for x, v in enumerate(f.pmap, 1) if v]
        k = len(support)
        active = GammaMorphism(f.source, k, tuple(f.pmap[x - 1] for x in support))
        pmap = [0] * f.target
        for j, x in enumerate(support, 1):
            pmap[x - 1] = j
        return active, GammaMorphism(k, f.target, tuple(pmap))

    def inert_hom(self, a, b):
        out = []
        for image in itertools.permutations(range(b), a):
            pmap = [0] * b
            for i, x in enumerate(image, 1):
                pmap[x] = i
            out.append(GammaMorphism(a, b, tuple(pmap)))
        return sorted(out)

    def active_hom(self, a, b):
        if a == 0:
            return [GammaMorphism(0, 0, ())] if b == 0 else []
        return [GammaMorphism(a, b, p) for p in itertools.product(range(1, a + 1), repeat=b)]

    def retraction(self, i):
        if not i.is_inert():
            raise ValueError(f"{i} is not inert")
        back = [0] * i.source
        for x, v in enumerate(i.pmap, 1):
            if v:
                back[v - 1] = x
        return GammaMorphism(i.target, i.source, tuple(back))

    def retractions(self, i):
        return [self.retraction(i)]

    def inert_subobjects(self, a):
        """One order-preserving inclusion per subset of a."""
        out = []
        for k in range(a + 1):
            for subset in itertools.combinations(range(1, a + 1), k):
                out.append(self.inclusion(subset, a))
        return out

    def inclusion(self, subset, n):
        pmap = [0] * n
        for j, x in enumerate(sorted(subset), 1):
            pmap[x - 1] = j
        return GammaMorphism(len(subset), n, tuple(pmap))

    # unital structure

    def units(self, bound=None):
        return [1]

    def nilobjects(self, bound=None):
        return [0]

    def is_unit(self, obj):
        return obj == 1

    def elementary(self, a):
        return [self.inclusion((k,), a) for k in range(1, a + 1)]

    def gamma(self, f):
        return f

    # grafting: objects side by side, used by tree insertion

    def graft(self, objs):
        return sum(objs)

    def graft_map(self, maps):
        """Blockwise sum of morphisms X_k -> Y_k as one morphism sum(X) -> sum(Y)."""
        pmap, off = [], 0
        for h in maps:
            pmap.extend(v + off if v else 0 for v in h.pmap)
            off += h.source
        return GammaMorphism(off, len(pmap), tuple(pmap))

    def graft_inclusion(self, objs, k):
        """The k-th summand (0-based) of graft(objs) as an inert inclusion."""
        off = sum(objs[:k])
        return self.inclusion(tuple(range(off + 1, off + objs[k] + 1)), sum(objs))

    def copair(self, maps, target):
        """The morphism sum(X_k) -> target restricting to maps[k] on the k-th summand."""
        pmap, off = [0] * target, 0
        for h in maps:
            for y, v in enumerate(h.pmap):
                if v:
                    if pmap[y]:
                        raise ValueError("copair: overlapping images")
                    pmap[y] = v + off
            off += h.source
        return GammaMorphism(off, target, tuple(pmap))

    def unit_active(self, a):
        return GammaMorphism(1, a, (1,) * a)

    def encode(self, f):
        return str(f)
