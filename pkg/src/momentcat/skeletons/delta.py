"""The simplex category: monotone maps [m] -> [n]."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..catkit import CompositionError, FinCategory
from .gamma import GammaMorphism


@dataclass(frozen=True, order=True)
class DeltaMorphism:
    target: int
    values: tuple

    def __post_init__(self):
        vs = self.values
        if not vs:
            raise ValueError("a simplicial operator has at least one value")
        if any(b < a for a, b in zip(vs, vs[1:])):
            raise ValueError(f"{vs} is not monotone")
        if vs[0] < 0 or vs[-1] > self.target:
            raise ValueError(f"values {vs} leave [0..{self.target}]")

    @property
    def source(self) -> int:
        return len(self.values) - 1

    def __call__(self, i):
        return self.values[i]

    def is_active(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == self.target

    def is_inert(self) -> bool:
        vs = self.values
        return all(b == a + 1 for a, b in zip(vs, vs[1:]))

    def __str__(self):
        return f"({','.join(map(str, self.values))}) : [{self.source}] -> [{self.target}]"


def _raw(target, values) -> DeltaMorphism:
    # skips validation; callers guarantee a monotone value list
    m = object.__new__(DeltaMorphism)
    object.__setattr__(m, "target", target)
    object.__setattr__(m, "values", values)
    return m


def delta_compose(g: DeltaMorphism, f: DeltaMorphism) -> DeltaMorphism:
    if f.target != g.source:
        raise CompositionError(f"cannot compose {g} after {f}")
    gv = g.values
    return _raw(g.target, tuple([gv[v] for v in f.values]))


def interval(a: int, b: int, n: int) -> DeltaMorphism:
    """The inert inclusion [b-a] -> [n] with image {a..b}."""
    return DeltaMorphism(n, tuple(range(a, b + 1)))


class Delta(FinCategory):
    """Objects are integers n standing for [n]; the unit is [1], the nilobject [0]."""

    name = "delta"

    def __init__(self):
        self._gamma = {}

    def objects(self, bound):
        return list(range(bound + 1))

    def size(self, obj):
        return obj

    def cardinality(self, obj):
        return obj

    def hom(self, a, b):
        return [DeltaMorphism(b, vs)
                for vs in itertools.combinations_with_replacement(range(b + 1), a + 1)]

    def compose(self, g, f):
        return delta_compose(g, f)

    def identity(self, a):
        return DeltaMorphism(a, tuple(range(a + 1)))

    def is_active(self, f):
        return f.is_active()

    def is_inert(self, f):
        return f.is_inert()

    def is_iso(self, f):
        return f.source == f.target and f.is_inert()

    def inverse(self, f):
        return f if self.is_iso(f) else None

    def automorphisms(self, a):
        return [self.identity(a)]

    def factorize(self, f):
        a, b = f.values[0], f.values[-1]
        active = DeltaMorphism(b - a, tuple(v - a for v in f.values))
        return active, interval(a, b, f.target)

    def inert_hom(self, a, b):
        return [interval(s, s + a, b) for s in range(b - a + 1)]

    def active_hom(self, a, b):
        if a == 0:
            return [DeltaMorphism(0, (0,))] if b == 0 else []
        return [DeltaMorphism(b, (0,) + mid + (b,))
                for mid in itertools.combinations_with_replacement(range(b + 1), a - 1)]

    def retraction(self, i):
        if not i.is_inert():
            raise ValueError(f"{i} is not inert")
        a, k = i.values[0], i.source
        return DeltaMorphism(k, tuple(min(max(x - a, 0), k) for x in range(i.target + 1)))

    def retractions(self, i):
        return [self.retraction(i)]

    def inert_subobjects(self, n):
        return [interval(a, b, n) for a in range(n + 1) for b in range(a, n + 1)]

    def units(self, bound=None):
        return [1]

    def nilobjects(self, bound=None):
        return [0]

    def is_unit(self, obj):
        return obj == 1

    def elementary(self, n):
        return [interval(j - 1, j, n) for j in range(1, n + 1)]

    def gamma(self, f):
        g = self._gamma.get(f)
        if g is None:
            vs = f.values
            blocks = [range(vs[i - 1] + 1, vs[i] + 1) for i in range(1, len(vs))]
            g = self._gamma[f] = GammaMorphism.from_subsets(blocks, f.target)
        return g

    def unit_active(self, n):
        return DeltaMorphism(n, (0, n))

    # grafting: ordinal sum with shared endpoints

    def graft(self, objs):
        return sum(objs)

    def graft_map(self, maps):
        """Ordinal sum of active morphisms [x_k] -> [y_k]."""
        values, off = [0], 0
        for h in maps:
            if not h.is_active():
                raise ValueError(f"graft_map needs active maps, got {h}")
            values.extend(v + off for v in h.values[1:])
            off += h.target
        return DeltaMorphism(off, tuple(values))

    def graft_inclusion(self, objs, k):
        off = sum(objs[:k])
        return interval(off, off + objs[k], sum(objs))

    def copair(self, maps, target):
        values = None
        for h in maps:
            if values is None:
                values = list(h.values)
            elif values[-1] != h.values[0]:
                raise ValueError("copair: summands do not glue")
            else:
                values.extend(h.values[1:])
        return DeltaMorphism(target, tuple(values if values is not None else (0,)))

    def encode(self, f):
        return str(f)
