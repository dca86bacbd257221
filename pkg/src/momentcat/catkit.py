"""Finite category kernel with active/inert factorisation systems.

A concrete category subclasses :class:`FinCategory` and provides objects up to
a size bound, hom-set enumeration, composition, identities, an active/inert
classifier and a canonical factorizer.  Everything else in this module is
generic and works by brute-force enumeration on a truncation.
"""
from __future__ import annotations

import enum
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable


class CompositionError(ValueError):
    """Raised when composing morphisms whose endpoints do not match."""


class Classification(enum.Enum):
    ACTIVE = "Active"
    INERT = "Inert"
    ISO = "Iso"
    GENERAL = "General"

    def __str__(self):
        return self.value


@dataclass
class AxiomReport:
    axiom: str
    passed: bool
    counterexamples: list = field(default_factory=list)
    bound: Any = None
    checked: int = 0

    def __bool__(self):
        return self.passed

    def to_json(self, encode=repr) -> dict:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "bound": self.bound,
            "checked": self.checked,
            "counterexamples": [[encode(x) for x in ce] for ce in self.counterexamples],
        }


class Reporter:
    """Accumulates counterexamples for one axiom, keeping at most ``limit``."""

    def __init__(self, axiom, bound, limit=20):
        self.axiom = axiom
        self.bound = bound
        self.limit = limit
        self.failures = []
        self.failed = False
        self.checked = 0

    def check(self, ok, *witness):
        self.checked += 1
        if not ok:
            self.failed = True
            if len(self.failures) < self.limit:
                self.failures.append(tuple(witness))
        return ok

    def report(self) -> AxiomReport:
        return AxiomReport(self.axiom, not self.failed, self.failures, self.bound, self.checked)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("MOMENTCAT_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Iterable) -> list:
    """Map ``fn`` over ``items`` preserving order; parallel when MOMENTCAT_THREADS > 1."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


class FinCategory:
    """Finitely enumerable category with an active/inert factorisation system.

    Subclasses must implement ``objects``, ``hom``, ``compose``, ``identity``,
    ``is_active``, ``is_inert`` and ``factorize``.  Morphisms must be hashable
    values with ``source`` and ``target`` attributes.
    """

    name = "category"

    def objects(self, bound: int) -> list:
        raise NotImplementedError

    def size(self, obj) -> int:
        raise NotImplementedError

    def hom(self, a, b) -> list:
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def is_active(self, f) -> bool:
        raise NotImplementedError

    def is_inert(self, f) -> bool:
        raise NotImplementedError

    def factorize(self, f):
        raise NotImplementedError

    # generic helpers; subclasses override these when a formula is available

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def classify(self, f) -> Classification:
        act, inr = self.is_active(f), self.is_inert(f)
        if act and inr:
            return Classification.ISO
        if act:
            return Classification.ACTIVE
        if inr:
            return Classification.INERT
        return Classification.GENERAL

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f):
        a, b = self.source(f), self.target(f)
        ida, idb = self.identity(a), self.identity(b)
        for g in self.hom(b, a):
            if self.compose(g, f) == ida and self.compose(f, g) == idb:
                return g
        return None

    def automorphisms(self, a) -> list:
        return [f for f in self.hom(a, a) if self.is_iso(f)]

    def isomorphisms(self, a, b) -> list:
        if a == b:
            return self.automorphisms(a)
        return [f for f in self.hom(a, b) if self.is_iso(f)]

    def inert_hom(self, a, b) -> list:
        return [f for f in self.hom(a, b) if self.is_inert(f)]

    def active_hom(self, a, b) -> list:
        return [f for f in self.hom(a, b) if self.is_active(f)]

    def retractions(self, i) -> list:
        """All active r with r∘i = id, for an inert i."""
        a, b = self.source(i), self.target(i)
        ida = self.identity(a)
        return [r for r in self.active_hom(b, a) if self.compose(r, i) == ida]

    def retraction(self, i):
        rs = self.retractions(i)
        if not rs:
            raise ValueError(f"no active retraction of {i!r}")
        return rs[0]

    def inert_sections(self, r) -> list:
        a, b = self.source(r), self.target(r)
        idb = self.identity(b)
        return [s for s in self.inert_hom(b, a) if self.compose(r, s) == idb]

    def morphisms(self, bound: int) -> list:
        obs = self.objects(bound)
        return [f for a in obs for b in obs for f in self.hom(a, b)]

    def encode(self, f) -> str:
        return repr(f)


def compose(C: FinCategory, g, f):
    if C.target(f) != C.source(g):
        raise CompositionError(f"cannot compose {g!r} after {f!r}")
    return C.compose(g, f)


def factorize(C: FinCategory, f):
    return C.factorize(f)


def classify(C: FinCategory, f) -> Classification:
    return C.classify(f)


def check_factorisation(C: FinCategory, bound: int, uniqueness: bool = True) -> AxiomReport:
    """Check the factorisation system on all morphisms between objects within bound."""
    rep = Reporter("factorisation", bound)
    obs = C.objects(bound)
    homs = {(a, b): C.hom(a, b) for a in obs for b in obs}
    for (a, b), fs in homs.items():
        for f in fs:
            act, inr = C.factorize(f)
            rep.check(C.compose(inr, act) == f, f, "recomposition")
            rep.check(C.is_active(act), f, act, "active part not active")
            rep.check(C.is_inert(inr), f, inr, "inert part not inert")
            if C.is_active(f) and C.is_inert(f):
                rep.check(C.is_iso(f), f, "active and inert but not iso")
    # closure under composition
    for a in obs:
        for b in obs:
            for f in homs[(a, b)]:
                fa, fi = C.is_active(f), C.is_inert(f)
                if not (fa or fi):
                    continue
                for c in obs:
                    for g in homs[(b, c)]:
                        gf = C.compose(g, f)
                        if fa and C.is_active(g):
                            rep.check(C.is_active(gf), g, f, "active not closed")
                        if fi and C.is_inert(g):
                            rep.check(C.is_inert(gf), g, f, "inert not closed")
    for a in obs:
        for f in homs[(a, a)]:
            if C.is_iso(f):
                rep.check(C.is_active(f) and C.is_inert(f), f, "iso outside both classes")
    if uniqueness:
        actives = {k: [f for f in fs if C.is_active(f)] for k, fs in homs.items()}
        inerts = {k: [f for f in fs if C.is_inert(f)] for k, fs in homs.items()}
        for a in obs:
            for b in obs:
                # every (active, inert) pair recomposing to a morphism a -> b
                others = {}
                for m in obs:
                    for a2 in actives[(a, m)]:
                        for i2 in inerts[(m, b)]:
                            others.setdefault(C.compose(i2, a2), []).append((a2, i2))
                for f in homs[(a, b)]:
                    act, inr = C.factorize(f)
                    mid = C.target(act)
                    for a2, i2 in others.get(f, ()):
                        m = C.target(a2)
                        hs = [h for h in C.isomorphisms(mid, m)
                              if C.compose(h, act) == a2 and C.compose(i2, h) == inr]
                        rep.check(len(hs) == 1, f, a2, i2,
                                  "factorizations not related by a unique iso")
    return rep.report()


def check_M1(C: FinCategory, bound: int) -> AxiomReport:
    rep = Reporter("M1", bound)
    obs = C.objects(bound)
    for a in obs:
        for b in obs:
            for i in C.inert_hom(a, b):
                rs = C.retractions(i)
                rep.check(len(rs) == 1, i, f"{len(rs)} active retractions")
    return rep.report()


def check_M2(C: FinCategory, bound: int) -> AxiomReport:
    """If f∘i = g with i inert and f, g active then f = g∘r (r the retraction of i)."""
    rep = Reporter("M2", bound)
    obs = C.objects(bound)
    for a in obs:
        for b in obs:
            for i in C.inert_hom(a, b):
                rs = C.retractions(i)
                if len(rs) != 1:
                    continue
                r = rs[0]
                for c in obs:
                    for f in C.active_hom(b, c):
                        g = C.compose(f, i)
                        if C.is_active(g):
                            rep.check(C.compose(g, r) == f, i, f)
    return rep.report()


def check_MC(C: FinCategory, bound: int) -> AxiomReport:
    rep = Reporter("MC", bound)
    obs = C.objects(bound)
    for a in obs:
        for b in obs:
            for r in C.active_hom(a, b):
                ss = C.inert_sections(r)
                rep.check(len(ss) <= 1, r, *ss)
    return rep.report()


def check_M1_M2_MC(C: FinCategory, bound: int) -> dict:
    return {"M1": check_M1(C, bound), "M2": check_M2(C, bound), "MC": check_MC(C, bound)}


def check_epis_active(C: FinCategory, bound: int) -> AxiomReport:
    """Right-cancellable morphisms within the truncation are active."""
    rep = Reporter("epis-active", bound)
    obs = C.objects(bound)
    for a in obs:
        for b in obs:
            for f in C.hom(a, b):
                if C.is_active(f):
                    continue
                epi = True
                for c in obs:
                    seen = {}
                    for g in C.hom(b, c):
                        key = C.compose(g, f)
                        if key in seen:
                            epi = False
                            break
                        seen[key] = g
                    if not epi:
                        break
                rep.check(not epi, f, "epimorphism that is not active")
    return rep.report()


def iso_classes(C: FinCategory, bound: int | None = None, objects: list | None = None) -> list[list]:
    """Group objects by isomorphism; classes and members are sorted, least first."""
    obs = list(objects) if objects is not None else C.objects(bound)
    try:
        obs = sorted(obs)
    except TypeError:
        pass
    classes: list[list] = []
    for a in obs:
        for cls in classes:
            b = cls[0]
            if any(C.is_iso(f) for f in C.hom(b, a)):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


def hom_count_table(C: FinCategory, objs: list) -> dict:
    return {(a, b): len(C.hom(a, b)) for a in objs for b in objs}


def product_choices(options: list[list]) -> Iterable[tuple]:
    return itertools.product(*options)
