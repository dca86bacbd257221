"""Moments, pushforward, left regular bands and the constructions built on them.

A moment structure assigns to every object a finite monoid of idempotent
endomorphisms and to every morphism a pushforward between these monoids.  For a
category with an active/inert factorisation satisfying (M1) the structure is
obtained by splitting: a moment is ``section . retraction`` for an inert
section and its unique active retraction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .catkit import AxiomReport, FinCategory, Reporter, iso_classes


class TruncationWarning(UserWarning):
    pass


@dataclass(eq=False)
class Moment:
    carrier: object
    endo: object
    section: object = None
    retraction: object = None
    split_over: object = None
    cat: object = field(default=None, repr=False)

    def __eq__(self, other):
        return isinstance(other, Moment) and self.endo == other.endo

    def __hash__(self):
        return hash(self.endo)

    def __str__(self):
        return str(self.endo)


@dataclass
class MomentSet:
    carrier: object
    moments: list
    table: list
    truncated: bool = False

    def index(self, endo) -> int:
        for k, m in enumerate(self.moments):
            if m.endo == endo:
                return k
        raise KeyError(endo)

    def __len__(self):
        return len(self.moments)


class MomentStructure:
    """Moments as endomorphisms plus a pushforward; subclasses fill in both."""

    def __init__(self, cat: FinCategory):
        self.cat = cat

    def moments(self, a) -> list:
        raise NotImplementedError

    def push(self, f, endo):
        raise NotImplementedError

    def compose(self, g, f):
        return self.cat.compose(g, f)

    def identity(self, a):
        return self.cat.identity(a)

    def objects(self, bound):
        return self.cat.objects(bound)

    def hom(self, a, b):
        return self.cat.hom(a, b)


class SplitMoments(MomentStructure):
    """The moment structure induced by an active/inert factorisation system."""

    def __init__(self, cat: FinCategory, bound: int | None = None):
        super().__init__(cat)
        self.bound = bound
        self._moments = {}
        self._records = {}
        self._push = {}

    def _subobjects(self, a):
        C = self.cat
        if hasattr(C, "inert_subobjects"):
            return C.inert_subobjects(a), False
        if self.bound is None:
            raise ValueError("a size bound is needed to enumerate inert subobjects")
        obs = C.objects(self.bound)
        found = [i for b in obs for i in C.inert_hom(b, a)]
        # a subobject bigger than the carrier is impossible in the shipped categories,
        # so the truncation is complete once the carrier itself lies inside the bound
        return found, a not in obs

    def moment_records(self, a) -> list:
        if a not in self._moments:
            C = self.cat
            subs, truncated = self._subobjects(a)
            seen, recs = set(), []
            for i in subs:
                r = C.retraction(i)
                endo = C.compose(i, r)
                if endo in seen:
                    continue
                seen.add(endo)
                m = Moment(a, endo, i, r, C.source(i), C)
                recs.append(m)
                self._records[endo] = m
            self._moments[a] = (recs, truncated)
        return self._moments[a][0]

    def moments(self, a):
        return [m.endo for m in self.moment_records(a)]

    def record(self, endo) -> Moment:
        if endo not in self._records:
            self.moment_records(self.cat.source(endo))
        return self._records[endo]

    def push_moment(self, f, phi: Moment) -> Moment:
        C = self.cat
        act, j = C.factorize(C.compose(f, phi.section))
        r = C.retraction(j)
        m = Moment(C.target(f), C.compose(j, r), j, r, C.source(j), C)
        self._records.setdefault(m.endo, m)
        return m

    def push(self, f, endo):
        key = (f, endo)
        if key not in self._push:
            self._push[key] = self.push_moment(f, self.record(endo)).endo
        return self._push[key]


def moments_of(C: FinCategory, a, bound: int | None = None) -> MomentSet:
    S = SplitMoments(C, bound)
    recs = S.moment_records(a)
    truncated = S._moments[a][1]
    idx = {m.endo: k for k, m in enumerate(recs)}
    table = [[idx.get(C.compose(x.endo, y.endo), -1) for y in recs] for x in recs]
    return MomentSet(a, recs, table, truncated)


def pushforward(C: FinCategory, f, phi: Moment) -> Moment:
    if C.source(f) != phi.carrier:
        raise ValueError("moment does not live on the source of the morphism")
    return SplitMoments(C).push_moment(f, phi)


def check_m_axioms(S: MomentStructure, bound: int, triples: bool = True) -> dict:
    """Check (m1)-(m4) plus idempotency and antisymmetry on the truncation."""
    reps = {k: Reporter(k, bound) for k in ("m1", "m2", "m3", "m4", "idempotent", "antisymmetry")}
    obs = S.objects(bound)
    ms = {a: S.moments(a) for a in obs}
    for a in obs:
        ida = S.identity(a)
        reps["m1"].check(ida in ms[a], a)
        for phi in ms[a]:
            reps["idempotent"].check(S.compose(phi, phi) == phi, phi)
            for psi in ms[a]:
                reps["m2"].check(S.push(phi, psi) == S.compose(phi, psi), phi, psi)
                if S.compose(psi, phi) == phi and S.compose(phi, psi) == psi:
                    reps["antisymmetry"].check(phi == psi, phi, psi)
    homs = {(a, b): S.hom(a, b) for a in obs for b in obs}
    index = {a: {phi: k for k, phi in enumerate(ms[a])} for a in obs}
    # pushforward along f as a table on moment indices; -1 marks a value that
    # is not a moment of the target
    table = {}
    for (a, b), fs in homs.items():
        for f in fs:
            row = []
            for phi in ms[a]:
                pushed = S.push(f, phi)
                reps["m4"].check(S.compose(f, phi) == S.compose(pushed, f), f, phi)
                row.append(index[b].get(pushed, -1))
            table[f] = tuple(row)
    if triples:
        m3 = reps["m3"]
        for (a, b), fs in homs.items():
            for f in fs:
                tf = table[f]
                for c in obs:
                    for g in homs[(b, c)]:
                        tg = table[g]
                        via = tuple(tg[k] if k >= 0 else -1 for k in tf)
                        tgf = table[S.compose(g, f)]
                        if tgf == via:
                            m3.check(True)
                            continue
                        for k, phi in enumerate(ms[a]):
                            if tgf[k] != via[k]:
                                m3.check(False, g, f, phi)
                                break
    return {k: r.report() for k, r in reps.items()}


class MutatedPushforward(MomentStructure):
    """Wraps a structure and swaps two pushforward values; used to exercise checkers."""

    def __init__(self, base: MomentStructure, f, swap: tuple):
        super().__init__(base.cat)
        self.base = base
        self.f = f
        self.swap = swap

    def moments(self, a):
        return self.base.moments(a)

    def push(self, f, endo):
        out = self.base.push(f, endo)
        if f == self.f:
            x, y = self.swap
            if endo == x:
                return self.base.push(f, y)
            if endo == y:
                return self.base.push(f, x)
        return out


# Left regular bands


@dataclass
class LRB:
    """A finite monoid given by its multiplication table; element 0 is neutral."""

    elements: list
    table: list

    def __post_init__(self):
        self._index = {e: k for k, e in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def index(self, e) -> int:
        return self._index[e]

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, x, y):
        return self.elements[self.table[self._index[x]][self._index[y]]]

    def violations(self) -> list:
        n = len(self.elements)
        t = self.table
        bad = []
        for x in range(n):
            if t[0][x] != x or t[x][0] != x:
                bad.append(("unit", x))
            for y in range(n):
                if t[t[x][y]][x] != t[x][y]:
                    bad.append(("left-regular", x, y))
                for z in range(n):
                    if t[t[x][y]][z] != t[x][t[y][z]]:
                        bad.append(("associativity", x, y, z))
        return bad

    def validate(self):
        bad = self.violations()
        if bad:
            raise ValueError(f"not a left regular band: {bad[:5]}")
        return self

    def leq(self, x: int, y: int) -> bool:
        return self.table[y][x] == x

    def congruent(self, x: int, y: int) -> bool:
        t = self.table
        return t[t[x][y]][x] == x and t[t[y][x]][y] == y

    def to_json(self) -> dict:
        return {"elements": [_label_data(e) for e in self.elements], "table": self.table}

    @classmethod
    def from_json(cls, data: dict) -> "LRB":
        return cls([_label_from(e) for e in data["elements"]],
                   [list(r) for r in data["table"]]).validate()


def _label_data(e):
    """Element labels as JSON: nested tuples become lists, other objects strings."""
    if isinstance(e, tuple):
        return [_label_data(x) for x in e]
    if isinstance(e, (int, str)):
        return e
    return str(e)


def _label_from(e):
    return tuple(_label_from(x) for x in e) if isinstance(e, list) else e


def lrb_of(C: FinCategory, a, bound: int | None = None) -> LRB:
    ms = moments_of(C, a, bound)
    ida = C.identity(a)
    order = [ms.index(ida)] + [k for k in range(len(ms)) if ms.moments[k].endo != ida]
    pos = {old: new for new, old in enumerate(order)}
    table = [[pos[ms.table[i][j]] for j in order] for i in order]
    return LRB([ms.moments[k].endo for k in order], table).validate()


def leq(phi: Moment, psi: Moment) -> bool:
    """phi is a submoment of psi when psi.phi = phi."""
    _same_carrier(phi, psi)
    C = phi.cat
    return C.compose(psi.endo, phi.endo) == phi.endo


def congruent(phi: Moment, psi: Moment) -> bool:
    _same_carrier(phi, psi)
    C = phi.cat
    x, y = phi.endo, psi.endo
    return C.compose(C.compose(x, y), x) == x and C.compose(C.compose(y, x), y) == y


def _same_carrier(phi, psi):
    if phi.carrier != psi.carrier:
        raise ValueError("moments live on different objects")


def active_parts_isomorphic(C: FinCategory, phi: Moment, psi: Moment) -> bool:
    """Is there an iso rho with rho.phi_act = psi_act?"""
    x, y = phi.split_over, psi.split_over
    return any(C.is_iso(h) and C.compose(h, phi.retraction) == psi.retraction
               for h in C.hom(x, y))


@dataclass
class Lattice:
    elements: list
    meet: list
    join: list
    top: int
    bottom: int

    def __len__(self):
        return len(self.elements)

    def leq(self, x, y) -> bool:
        return self.meet[x][y] == x

    def violations(self) -> list:
        n = len(self.elements)
        m, j = self.meet, self.join
        bad = []
        for x in range(n):
            if m[x][x] != x or j[x][x] != x:
                bad.append(("idempotent", x))
            if m[x][self.top] != x or j[x][self.bottom] != x:
                bad.append(("bounds", x))
            for y in range(n):
                if m[x][y] != m[y][x] or j[x][y] != j[y][x]:
                    bad.append(("commutative", x, y))
                if m[x][j[x][y]] != x or j[x][m[x][y]] != x:
                    bad.append(("absorption", x, y))
                for z in range(n):
                    if m[m[x][y]][z] != m[x][m[y][z]] or j[j[x][y]][z] != j[x][j[y][z]]:
                        bad.append(("associative", x, y, z))
        return bad


def semilattice_quotient(M) -> Lattice:
    """Quotient of a moment set (or LRB) by congruence, with its lattice structure."""
    if isinstance(M, MomentSet):
        t = M.table
        labels = [m.endo for m in M.moments]
        neutral = next(k for k, m in enumerate(M.moments) if m.endo == M.moments[0].cat.identity(M.carrier))
    else:
        t, labels, neutral = M.table, M.elements, 0
    n = len(labels)
    cls_of, classes = {}, []
    for x in range(n):
        for c, members in enumerate(classes):
            y = members[0]
            if t[t[x][y]][x] == x and t[t[y][x]][y] == y:
                members.append(x)
                cls_of[x] = c
                break
        else:
            cls_of[x] = len(classes)
            classes.append([x])
    k = len(classes)
    meet = [[cls_of[t[classes[a][0]][classes[b][0]]] for b in range(k)] for a in range(k)]
    top = cls_of[neutral]
    bottom = top
    for a in range(k):
        bottom = meet[bottom][a]

    def below(a, b):
        return meet[a][b] == a

    join = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            ups = [z for z in range(k) if below(a, z) and below(b, z)]
            z = top
            for u in ups:
                z = meet[z][u]
            join[a][b] = z
    elements = [tuple(labels[x] for x in members) for members in classes]
    return Lattice(elements, meet, join, top, bottom)


# Idempotent completion


@dataclass(frozen=True, order=True)
class KaroubiMorphism:
    source: tuple
    target: tuple
    arrow: object

    def __str__(self):
        return f"{self.arrow} : {self.source[1]} -> {self.target[1]}"


class IdempotentCompletion(FinCategory):
    """Objects are pairs (A, phi) with phi a moment of A; hom((A,phi),(B,psi)) is
    the set of f: A -> B with psi.f.phi = f.  A morphism is active when it pushes
    the source moment onto the target moment."""

    def __init__(self, S: MomentStructure):
        self.S = S
        self.name = f"completion({getattr(S.cat, 'name', 'C')})"
        self._hom = {}

    def objects(self, bound):
        return [(a, phi) for a in self.S.objects(bound) for phi in self.S.moments(a)]

    def size(self, obj):
        return self.S.cat.size(obj[0])

    def hom(self, x, y):
        key = (x, y)
        if key not in self._hom:
            S = self.S
            (a, phi), (b, psi) = x, y
            self._hom[key] = [KaroubiMorphism(x, y, f) for f in S.hom(a, b)
                              if S.compose(psi, S.compose(f, phi)) == f]
        return self._hom[key]

    def compose(self, g, f):
        if f.target != g.source:
            from .catkit import CompositionError
            raise CompositionError(f"cannot compose {g} after {f}")
        return KaroubiMorphism(f.source, g.target, self.S.compose(g.arrow, f.arrow))

    def identity(self, x):
        return KaroubiMorphism(x, x, x[1])

    def pushed(self, f):
        return self.S.push(f.arrow, f.source[1])

    def is_active(self, f):
        return self.pushed(f) == f.target[1]

    def factorize(self, f):
        chi = self.pushed(f)
        mid = (f.target[0], chi)
        return KaroubiMorphism(f.source, mid, f.arrow), KaroubiMorphism(mid, f.target, chi)

    def is_inert(self, f):
        return self.is_iso(self.factorize(f)[0])

    def encode(self, f):
        return str(f)


def idempotent_completion(S, bound: int | None = None) -> IdempotentCompletion:
    if not isinstance(S, MomentStructure):
        S = SplitMoments(S, bound)
    return IdempotentCompletion(S)


# Left regular bands as one-object categories


@dataclass(frozen=True, order=True)
class BandElement:
    index: int
    label: object = field(compare=False, default=None)

    source = "*"
    target = "*"

    def __str__(self):
        return str(self.label)


class LRBCategory(FinCategory, MomentStructure):
    """One object, endomorphisms the band, pushforward by left translation."""

    def __init__(self, L: LRB):
        L.validate()
        self.L = L
        self.cat = self
        self.name = "lrb"
        self.elements = [BandElement(k, e) for k, e in enumerate(L.elements)]

    def objects(self, bound=None):
        return ["*"]

    def size(self, obj):
        return 0

    def hom(self, a, b):
        return list(self.elements)

    def compose(self, g, f):
        return self.elements[self.L.mul(g.index, f.index)]

    def identity(self, a):
        return self.elements[0]

    def moments(self, a):
        return list(self.elements)

    def push(self, f, endo):
        return self.compose(f, endo)

    def is_iso(self, f):
        return f.index == 0


def lrb_category(L: LRB) -> LRBCategory:
    return LRBCategory(L)


def skeleton(C: FinCategory, bound: int | None = None) -> tuple[list, dict]:
    """Class representatives and the inert hom counts between them."""
    classes = iso_classes(C, bound)
    reps = [cls[0] for cls in classes]
    counts = {(a, b): len(C.inert_hom(a, b)) for a in reps for b in reps}
    return reps, counts


# The braid arrangement on three strands


def _tits_product(x: tuple, y: tuple) -> tuple:
    return tuple(tuple(sorted(set(b) & set(c))) for b in x for c in y if set(b) & set(c))


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _parabolic(composition) -> list:
    """Permutations (as tuples w with w[i] the image of i+1) preserving the blocks."""
    n = sum(composition)
    blocks, start = [], 1
    for c in composition:
        blocks.append(set(range(start, start + c)))
        start += c
    return [w for w in itertools.permutations(range(1, n + 1))
            if all({w[i - 1] for i in b} == b for b in blocks)]


def _perm_mul(v, w):
    return tuple(v[w[i] - 1] for i in range(len(w)))


def braid_cosets(strands: int = 3) -> list:
    """Left cosets wH of the standard parabolic subgroups, as (composition, frozenset)."""
    group = list(itertools.permutations(range(1, strands + 1)))
    out = []
    for comp in _compositions(strands):
        H = _parabolic(comp)
        seen = set()
        for w in group:
            coset = frozenset(_perm_mul(w, h) for h in H)
            if coset not in seen:
                seen.add(coset)
                out.append((comp, coset))
    return out


def coset_to_facet(comp, coset) -> tuple:
    w = min(coset)
    blocks, start = [], 1
    for c in comp:
        blocks.append(tuple(sorted(w[i - 1] for i in range(start, start + c))))
        start += c
    return tuple(blocks)


def braid_face_monoid(strands: int = 3) -> LRB:
    """Face monoid of the braid arrangement built from parabolic cosets.

    Each coset wH of the parabolic subgroup for the composition (a, b, ...) is the
    ordered set partition (w{1..a}, w{a+1..a+b}, ...); the product is the Tits
    product of ordered set partitions.
    """
    if strands != 3:
        raise ValueError("only the three-strand arrangement is shipped")
    facets = [coset_to_facet(c, s) for c, s in braid_cosets(strands)]
    one = (tuple(range(1, strands + 1)),)
    facets.sort(key=lambda f: (f != one, len(f), f))
    idx = {f: k for k, f in enumerate(facets)}
    table = [[idx[_tits_product(x, y)] for y in facets] for x in facets]
    return LRB(facets, table).validate()


# LRB morphisms


def lrb_factorize(f: list, M: LRB, N: LRB):
    """Split a multiplicative map M -> N (as an index list) into a monoid morphism
    onto the ideal f(1)N followed by the ideal inclusion.  Returns the ideal as an
    LRB, the active map M -> ideal, the inclusion ideal -> N and the retraction
    N -> ideal given by left translation."""
    for x in range(len(M)):
        for y in range(len(M)):
            if f[M.mul(x, y)] != N.mul(f[x], f[y]):
                raise ValueError(f"map is not multiplicative at ({x}, {y})")
    e = f[0]
    ideal = sorted({N.mul(e, n) for n in range(len(N))}, key=lambda k: (k != e, k))
    pos = {k: i for i, k in enumerate(ideal)}
    sub = LRB([N.elements[k] for k in ideal],
              [[pos[N.mul(a, b)] for b in ideal] for a in ideal]).validate()
    active = [pos[f[x]] for x in range(len(M))]
    inclusion = list(ideal)
    retraction = [pos[N.mul(e, n)] for n in range(len(N))]
    return sub, active, inclusion, retraction


# Centric quotient


@dataclass(frozen=True, order=True)
class Cospan:
    source: object
    target: object
    active: object
    retractive: object

    def __str__(self):
        return f"({self.active} ; {self.retractive})"


class CentricQuotient(FinCategory):
    """Cospans A -> X <- B of an active map and a retractive map, up to iso of X."""

    def __init__(self, C: FinCategory, bound: int):
        self.C = C
        self.bound = bound
        self.name = f"B({getattr(C, 'name', 'C')})"
        self._hom = {}
        self._canon = {}

    def objects(self, bound=None):
        return self.C.objects(self.bound if bound is None else min(bound, self.bound))

    def size(self, obj):
        return self.C.size(obj)

    def is_retractive(self, r) -> bool:
        return self.C.is_active(r) and bool(self.C.inert_sections(r))

    def canonical(self, f, r) -> Cospan:
        key = (f, r)
        if key not in self._canon:
            C = self.C
            x = C.target(f)
            best = min((C.compose(h, f), C.compose(h, r)) for h in C.automorphisms(x))
            self._canon[key] = Cospan(C.source(f), C.source(r), *best)
        return self._canon[key]

    def hom(self, a, b):
        key = (a, b)
        if key not in self._hom:
            C = self.C
            out = set()
            for x in C.objects(self.bound):
                rs = [r for r in C.active_hom(b, x) if self.is_retractive(r)]
                if not rs:
                    continue
                for f in C.active_hom(a, x):
                    for r in rs:
                        out.add(self.canonical(f, r))
            self._hom[key] = sorted(out)
        return self._hom[key]

    def pushout(self, r, g):
        """Pushout of retractive r: B -> X along active g: B -> Y, as (r', g')
        with r': Y -> P retractive and g': X -> P."""
        C = self.C
        i = C.inert_sections(r)[0]
        S = SplitMoments(C, self.bound)
        pushed = S.push_moment(g, Moment(C.source(r), C.compose(i, r), i, r, C.target(r), C))
        r2 = pushed.retraction
        i2 = pushed.section
        return r2, C.compose(r2, C.compose(g, i))

    def compose(self, g, f):
        if f.target != g.source:
            from .catkit import CompositionError
            raise CompositionError(f"cannot compose {g} after {f}")
        C = self.C
        r2, g2 = self.pushout(f.retractive, g.active)
        return self.canonical(C.compose(g2, f.active), C.compose(r2, g.retractive))

    def identity(self, a):
        ida = self.C.identity(a)
        return self.canonical(ida, ida)

    def is_active(self, f):
        return self.C.is_iso(f.retractive)

    def is_inert(self, f):
        return self.C.is_iso(f.active)

    def factorize(self, f):
        x = self.C.target(f.active)
        idx = self.C.identity(x)
        return self.canonical(f.active, idx), self.canonical(idx, f.retractive)

    def quotient(self, f) -> Cospan:
        """The identity-on-objects functor C -> BC."""
        C = self.C
        act, inr = C.factorize(f)
        return self.canonical(act, C.retraction(inr))

    def encode(self, f):
        return str(f)


def centric_quotient(C: FinCategory, bound: int):
    B = CentricQuotient(C, bound)
    return B, B.quotient


def check_corestriction(S, bound: int) -> dict:
    """Axioms (C1)-(C4) with the cocombinator f -> f_*(1)."""
    if not isinstance(S, MomentStructure):
        S = SplitMoments(S, bound)
    reps = {k: Reporter(k, bound) for k in ("C1", "C2", "C3", "C4")}
    obs = S.objects(bound)
    homs = {(a, b): S.hom(a, b) for a in obs for b in obs}

    def unit_push(f):
        return S.push(f, S.identity(S.cat.source(f)))

    for a in obs:
        ms = S.moments(a)
        for x in ms:
            for y in ms:
                reps["C2"].check(S.compose(x, y) == S.compose(y, x), x, y)
    for (a, b), fs in homs.items():
        mb = S.moments(b)
        for f in fs:
            fp = unit_push(f)
            reps["C1"].check(S.compose(fp, f) == f, f)
            for psi in mb:
                reps["C3"].check(unit_push(S.compose(psi, f)) == S.compose(psi, fp), psi, f)
            for c in obs:
                for g in homs[(b, c)]:
                    gf = S.compose(g, f)
                    reps["C4"].check(S.compose(g, fp) == S.compose(unit_push(gf), g), g, f)
    return {k: r.report() for k, r in reps.items()}
