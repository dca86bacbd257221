"""Wreath products of unital moment categories and the Theta_n tower."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from ..catkit import CompositionError, FinCategory
from .delta import Delta
from .gamma import Gamma, GammaMorphism


@dataclass(frozen=True, order=True)
class WreathMorphism:
    """A base morphism f plus components indexed by pairs (alpha, alpha') with
    alpha' in the block of alpha under the augmentation of f (1-based)."""

    source: tuple
    target: tuple
    base: object
    comps: tuple

    @cached_property
    def comp(self) -> dict:
        return dict(self.comps)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source, self.target, self.base, self.comps))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        parts = ", ".join(f"{a}->{b}: {g}" for (a, b), g in self.comps)
        return f"<{self.base}; {parts}>"


def _raw(source, target, base, comps) -> WreathMorphism:
    m = object.__new__(WreathMorphism)
    d = m.__dict__
    d["source"], d["target"], d["base"], d["comps"] = source, target, base, comps
    return m


def _freeze(comps: dict) -> tuple:
    return tuple(sorted(comps.items(), key=lambda kv: kv[0]))


class Wreath(FinCategory):
    """C wr D: objects (A, (B_1..B_k)) with k the cardinality of A.

    The enumeration size of an object is size_C(A) plus the sizes of the B's,
    so that bounded truncations stay finite even though C may have infinitely
    many objects over a given cardinality.
    """

    def __init__(self, outer: FinCategory, inner: FinCategory, name=None):
        self.C = outer
        self.D = inner
        self.name = name or f"({outer.name} wr {inner.name})"
        self._hom_cache = {}
        self._blocks = {}

    def blocks(self, f) -> tuple:
        b = self._blocks.get(f)
        if b is None:
            b = self._blocks[f] = self.C.gamma(f).blocks
        return b

    # objects

    def objects(self, bound):
        C, D = self.C, self.D
        inner = D.objects(bound)
        out = []
        for a in C.objects(bound):
            room = bound - C.size(a)
            if room < 0:
                continue
            k = C.cardinality(a)
            choices = [b for b in inner if D.size(b) <= room]
            for bs in itertools.product(choices, repeat=k):
                if sum(D.size(b) for b in bs) <= room:
                    out.append((a, tuple(bs)))
        return out

    def size(self, obj):
        a, bs = obj
        return self.C.size(a) + sum(self.D.size(b) for b in bs)

    def cardinality(self, obj):
        return sum(self.D.cardinality(b) for b in obj[1])

    # morphisms

    def _assemble(self, src, tgt, f, choose):
        """All morphisms over base f whose components are drawn by ``choose``."""
        keys, options = [], []
        for a, block in enumerate(self.blocks(f), 1):
            for a2 in block:
                keys.append((a, a2))
                options.append(choose(src[1][a - 1], tgt[1][a2 - 1]))
        return [WreathMorphism(src, tgt, f, tuple(zip(keys, pick)))
                for pick in itertools.product(*options)]

    def hom(self, a, b):
        key = (a, b)
        if key not in self._hom_cache:
            self._hom_cache[key] = [m for f in self.C.hom(a[0], b[0])
                                    for m in self._assemble(a, b, f, self.D.hom)]
        return self._hom_cache[key]

    def inert_hom(self, a, b):
        return [m for f in self.C.inert_hom(a[0], b[0])
                for m in self._assemble(a, b, f, self.D.inert_hom)]

    def active_hom(self, a, b):
        return [m for f in self.C.active_hom(a[0], b[0])
                for m in self._assemble(a, b, f, self.D.active_hom)]

    def compose(self, g, f):
        if f.target != g.source:
            raise CompositionError(f"cannot compose {g} after {f}")
        C, D = self.C, self.D
        base = C.compose(g.base, f.base)
        gblocks = self.blocks(g.base)
        gcomp = g.comp
        comps = []
        for (a, b), fab in f.comps:
            for c in gblocks[b - 1]:
                comps.append(((a, c), D.compose(gcomp[(b, c)], fab)))
        comps.sort(key=lambda kv: kv[0])
        return _raw(f.source, g.target, base, tuple(comps))

    def identity(self, a):
        comps = {(k, k): self.D.identity(b) for k, b in enumerate(a[1], 1)}
        return WreathMorphism(a, a, self.C.identity(a[0]), _freeze(comps))

    def is_active(self, f):
        return self.C.is_active(f.base) and all(self.D.is_active(g) for _, g in f.comps)

    def is_inert(self, f):
        return self.C.is_inert(f.base) and all(self.D.is_inert(g) for _, g in f.comps)

    def is_iso(self, f):
        return self.C.is_iso(f.base) and all(self.D.is_iso(g) for _, g in f.comps)

    def factorize(self, f):
        C, D = self.C, self.D
        act, inr = C.factorize(f.base)
        ga, gi = C.gamma(act), C.gamma(inr)
        owner = {t: a for a, block in enumerate(ga.blocks, 1) for t in block}
        mids, acomps, icomps = [], {}, {}
        for t in range(1, ga.target + 1):
            a = owner[t]
            (a2,) = gi.blocks[t - 1]
            x, y = D.factorize(f.comp[(a, a2)])
            mids.append(D.target(x))
            acomps[(a, t)] = x
            icomps[(t, a2)] = y
        mid = (C.target(act), tuple(mids))
        return (WreathMorphism(f.source, mid, act, _freeze(acomps)),
                WreathMorphism(mid, f.target, inr, _freeze(icomps)))

    def retraction(self, i):
        if not self.is_inert(i):
            raise ValueError(f"{i} is not inert")
        C, D = self.C, self.D
        r = C.retraction(i.base)
        comps = {}
        for a2, block in enumerate(C.gamma(r).blocks, 1):
            for a in block:
                comps[(a2, a)] = D.retraction(i.comp[(a, a2)])
        return WreathMorphism(i.target, i.source, r, _freeze(comps))

    def retractions(self, i):
        return [self.retraction(i)]

    def inverse(self, f):
        if not self.is_iso(f):
            return None
        C, D = self.C, self.D
        inv = C.inverse(f.base)
        comps = {(b, a): D.inverse(g) for (a, b), g in f.comps}
        return WreathMorphism(f.target, f.source, inv, _freeze(comps))

    def automorphisms(self, a):
        return [m for f in self.C.automorphisms(a[0])
                for m in self._assemble(a, a, f, lambda x, y: self.D.hom(x, y))
                if self.is_iso(m)]

    # unital structure

    def units(self, bound=None):
        return [(u, (v,)) for u in self.C.units() for v in self.D.units()]

    def nilobjects(self, bound):
        return [x for x in self.objects(bound) if self.cardinality(x) == 0]

    def is_unit(self, obj):
        a, bs = obj
        return self.C.is_unit(a) and len(bs) == 1 and self.D.is_unit(bs[0])

    def elementary(self, obj):
        """Pairs (alpha, beta) in lexicographic order."""
        C, D = self.C, self.D
        a, bs = obj
        out = []
        for alpha, ea in enumerate(C.elementary(a), 1):
            u = C.source(ea)
            for eb in D.elementary(bs[alpha - 1]):
                src = (u, (D.source(eb),))
                out.append(WreathMorphism(src, obj, ea, ((( 1, alpha), eb),)))
        return out

    def element_index(self, obj) -> dict:
        out, k = {}, 0
        for alpha, b in enumerate(obj[1], 1):
            for beta in range(1, self.D.cardinality(b) + 1):
                k += 1
                out[(alpha, beta)] = k
        return out

    def gamma(self, f):
        C, D = self.C, self.D
        src_idx, tgt_idx = self.element_index(f.source), self.element_index(f.target)
        gb = C.gamma(f.base)
        subsets = [[] for _ in src_idx]
        for (alpha, beta), k in src_idx.items():
            for a2 in gb.blocks[alpha - 1]:
                for b2 in D.gamma(f.comp[(alpha, a2)]).blocks[beta - 1]:
                    subsets[k - 1].append(tgt_idx[(a2, b2)])
        return GammaMorphism.from_subsets(subsets, len(tgt_idx))

    def unit_active(self, obj):
        C, D = self.C, self.D
        a, bs = obj
        base = C.unit_active(a)
        u = C.source(base)
        comps = {(1, k): D.unit_active(b) for k, b in enumerate(bs, 1)}
        src = (u, (D.source(comps[(1, 1)]) if bs else D.units()[0],))
        return WreathMorphism(src, obj, base, _freeze(comps))

    def encode(self, f):
        return str(f)


def theta(n: int) -> FinCategory:
    """Joyal's Theta_n as the iterated wreath product of Delta."""
    if n < 1:
        raise ValueError("theta needs n >= 1")
    cat: FinCategory = Delta()
    for k in range(2, n + 1):
        cat = Wreath(Delta(), cat, name=f"theta{k}")
    return cat


def assembly(x):
    """Gamma wr Gamma -> Gamma: objects go to the sum of the family, morphisms to
    the block-wise union of component operators."""
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], tuple):
        return sum(x[1])
    return Wreath(Gamma(), Gamma()).gamma(x)
