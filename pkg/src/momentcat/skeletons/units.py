"""Units, elementary moments, the augmentation to Gamma and induced partitions.

The functions here work intrinsically from the factorisation system, so they
double as an independent route against the closed formulas that each concrete
skeleton provides (``elementary``, ``gamma``, ``unit_active``).
"""
from __future__ import annotations

from ..catkit import AxiomReport, FinCategory, Reporter
from ..momentkit import SplitMoments, moments_of, semilattice_quotient
from .gamma import GammaMorphism


def is_primitive(C: FinCategory, u, bound: int | None = None) -> bool:
    """u has non-identity moments and their congruence quotient is a chain.

    For Gamma and Delta the chain has two elements.  In the wreath product the
    unit carries two non-congruent layers of degenerate moments, so the chain
    is longer there; requiring exactly two classes would reject it.
    """
    q = semilattice_quotient(moments_of(C, u, bound))
    if len(q) < 2:
        return False
    return all(q.leq(x, y) or q.leq(y, x) for x in range(len(q)) for y in range(len(q)))


def has_unique_sections(C: FinCategory, u, bound: int) -> bool:
    for x in C.objects(bound):
        for r in C.active_hom(x, u):
            if len(C.inert_sections(r)) != 1:
                return False
    return True


def detect_units(C: FinCategory, bound: int) -> list:
    """Objects within bound satisfying (U1) and (U2) on the truncation."""
    return [u for u in C.objects(bound)
            if is_primitive(C, u, bound) and has_unique_sections(C, u, bound)]


def elementary_moments(C: FinCategory, a, units: list, bound: int | None = None) -> list:
    """Moments of a that split over one of the given units."""
    S = SplitMoments(C, bound)
    return [m for m in S.moment_records(a) if m.split_over in units]


def detect_nilobjects(C: FinCategory, bound: int) -> list:
    units = detect_units(C, bound)
    return [a for a in C.objects(bound) if not elementary_moments(C, a, units, bound)]


def submoment(C, small, big) -> bool:
    return C.compose(big, small) == small


def augment(C: FinCategory, f, bound: int | None = None) -> GammaMorphism:
    """The augmentation of f computed from pushforwards of elementary moments,
    using the canonical order of ``C.elementary``."""
    S = SplitMoments(C, bound)
    src = [C.compose(e, C.retraction(e)) for e in C.elementary(C.source(f))]
    tgt = [C.compose(e, C.retraction(e)) for e in C.elementary(C.target(f))]
    subsets = []
    for alpha in src:
        pushed = S.push(f, alpha)
        subsets.append([k for k, beta in enumerate(tgt, 1) if submoment(C, beta, pushed)])
    return GammaMorphism.from_subsets(subsets, len(tgt))


def partition(C: FinCategory, f, bound: int | None = None) -> list[list[int]]:
    """Blocks of elementary moments of the target indexed by those of the source."""
    if not C.is_active(f):
        raise ValueError(f"{C.encode(f)} is not active")
    return [list(b) for b in augment(C, f, bound).blocks]


def check_partition(C: FinCategory, bound: int) -> AxiomReport:
    """Pushforwards of distinct elementary moments along actives are disjoint and cover."""
    rep = Reporter("partition", bound)
    obs = C.objects(bound)
    for a in obs:
        for b in obs:
            for f in C.active_hom(a, b):
                blocks = partition(C, f, bound)
                flat = [x for blk in blocks for x in blk]
                n = C.cardinality(b)
                rep.check(sorted(flat) == list(range(1, n + 1)), f, blocks)
    return rep.report()


class Augmentation:
    """The cardinality- and unit-preserving moment functor to Gamma."""

    def __init__(self, C: FinCategory):
        self.C = C

    def obj(self, a) -> int:
        return self.C.cardinality(a)

    def mor(self, f) -> GammaMorphism:
        return self.C.gamma(f)

    __call__ = mor


def augmentation(C: FinCategory) -> Augmentation:
    return Augmentation(C)


def check_augmentation(C: FinCategory, bound: int) -> dict:
    """Functoriality, classification preservation and agreement with the
    pushforward route, on the truncation."""
    from ..catkit import Classification
    from .gamma import Gamma

    G = Gamma()
    reps = {k: Reporter(k, bound) for k in ("functor", "classification", "formula", "cardinality")}
    obs = C.objects(bound)
    homs = {(a, b): C.hom(a, b) for a in obs for b in obs}
    for a in obs:
        reps["cardinality"].check(len(C.elementary(a)) == C.cardinality(a), a)
        reps["functor"].check(C.gamma(C.identity(a)) == G.identity(C.cardinality(a)), a)
    for (a, b), fs in homs.items():
        for f in fs:
            gf = C.gamma(f)
            reps["formula"].check(gf == augment(C, f, bound), f)
            cf = C.classify(f)
            cg = G.classify(gf)
            ok = True
            if cf in (Classification.ACTIVE, Classification.ISO):
                ok = ok and gf.is_active()
            if cf in (Classification.INERT, Classification.ISO):
                ok = ok and gf.is_inert()
            reps["classification"].check(ok, f, cg)
            for c in obs:
                for g in homs[(b, c)]:
                    reps["functor"].check(C.gamma(C.compose(g, f)) == G.compose(C.gamma(g), gf), g, f)
    return {k: r.report() for k, r in reps.items()}


def check_unital(C: FinCategory, bound: int) -> AxiomReport:
    """Every object receives an essentially unique active map from a unit."""
    rep = Reporter("unital", bound)
    units = C.units()
    for a in C.objects(bound):
        pairs = [(u, f) for u in units for f in C.active_hom(u, a)]
        base = pairs[0] if pairs else None
        ok = bool(pairs)
        for u, f in pairs[1:]:
            ok = ok and any(C.compose(f, h) == base[1]
                            for h in C.hom(base[0], u) if C.is_iso(h))
        rep.check(ok, a, len(pairs))
    return rep.report()


def check_disjoint_elementary(C: FinCategory, bound: int) -> AxiomReport:
    """Elementary moments of one object are equal or disjoint."""
    rep = Reporter("elementary-disjoint", bound)
    for a in C.objects(bound):
        es = [C.compose(e, C.retraction(e)) for e in C.elementary(a)]
        for x in es:
            for y in es:
                if x != y:
                    rep.check(not submoment(C, x, y) and not submoment(C, y, x), x, y)
    return rep.report()
