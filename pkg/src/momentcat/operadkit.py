"""Set-valued operads and monoids over unital (hyper)moment categories.

Tensor products are cartesian products of finite sets.  A family indexed by
the elementary subobjects of an object is stored as a tuple in the order of
``C.elementary``.  The splitting of an active f : A -> B over the alpha-th
element is the factorisation of f o e_alpha, normalised to the identity of B
when it covers all of B.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .catkit import AxiomReport, FinCategory, Reporter
from .skeletons import from_permutation, internal_wreath, permutation_of
from .skeletons.gamma import GammaMorphism


# splittings

def splittings(C: FinCategory, f) -> list:
    """[(f_alpha, i_alpha)] for alpha in el(source f), normalised."""
    out = []
    b = C.target(f)
    for e in C.elementary(C.source(f)):
        act, inr = C.factorize(C.compose(f, e))
        if C.is_iso(inr):
            act, inr = C.compose(inr, act), C.identity(b)
        out.append((act, inr))
    return out


def positions(C: FinCategory, i) -> tuple:
    """Element k of the source of an inert i goes to element positions[k-1] of its target."""
    g = C.gamma(i)
    where = {x: y for y, x in enumerate(g.pmap, 1) if x}
    return tuple(where[k] for k in range(1, g.source + 1))


def restrict(C: FinCategory, g, i):
    """(g_alpha, inclusion) from factorising g o i; normalised like a splitting."""
    act, inr = C.factorize(C.compose(g, i))
    if C.is_iso(inr):
        act, inr = C.compose(inr, act), C.identity(C.target(g))
    return act, inr


def active_between(C: FinCategory, obs: list) -> dict:
    return {(a, b): C.active_hom(a, b) for a in obs for b in obs}


# collections and operads

@dataclass
class Collection:
    """Finite sets on objects with an action of automorphisms."""
    cat: FinCategory
    values: dict
    action: Callable | None = None

    def __call__(self, a) -> tuple:
        return tuple(self.values.get(a, ()))

    def act(self, sigma, x):
        if self.action is None or self.cat.is_iso(sigma) and sigma == self.cat.identity(self.cat.source(sigma)):
            return x
        return self.action(sigma, x)

    def of(self, f) -> list:
        """O(f): families over the splittings of an active f."""
        parts = [self(self.cat.target(fa)) for fa, _ in splittings(self.cat, f)]
        return list(itertools.product(*parts))


@dataclass
class OperadSet:
    collection: Collection
    eta: dict
    mu: Callable
    name: str = "operad"

    @property
    def cat(self):
        return self.collection.cat

    def __call__(self, a):
        return self.collection(a)


def from_table(collection: Collection, eta: dict, table: dict, name="tabulated") -> OperadSet:
    return OperadSet(collection, eta, lambda f, x, ys: table[(f, x, tuple(ys))], name)


def tabulate(O: OperadSet, bound: int) -> dict:
    C = O.cat
    obs = C.objects(bound)
    table = {}
    for (a, b), fs in active_between(C, obs).items():
        for f in fs:
            for x in O(a):
                for ys in O.collection.of(f):
                    table[(f, x, ys)] = O.mu(f, x, ys)
    return table


def terminal_operad(C: FinCategory, bound: int) -> OperadSet:
    values = {a: ("*",) for a in C.objects(bound)}
    eta = {u: "*" for u in C.units(bound)}
    return OperadSet(Collection(C, values), eta, lambda f, x, ys: "*", "terminal")


def unit_operad(C: FinCategory, bound: int) -> OperadSet:
    """Set-valued, the unit operad is the terminal one."""
    O = terminal_operad(C, bound)
    O.name = "unit"
    return O


def initial_operad(C: FinCategory, bound: int) -> OperadSet:
    """Singletons at units and empty elsewhere: the free operad on nothing."""
    units = C.units(bound)
    values = {a: (("id",) if a in units else ()) for a in C.objects(bound)}
    eta = {u: "id" for u in units}
    return OperadSet(Collection(C, values), eta, lambda f, x, ys: "id", "initial")


def associative_operad(C: FinCategory, bound: int) -> OperadSet:
    """O(A) = linear orders of the elements of A; composition concatenates blocks."""
    values = {a: tuple(itertools.permutations(range(1, C.cardinality(a) + 1)))
              for a in C.objects(bound)}

    def action(sigma, x):
        p = permutation_of(C.gamma(sigma))
        return tuple(p[k] for k in x)

    def mu(f, x, ys):
        parts = splittings(C, f)
        out = []
        for alpha in x:
            _, inc = parts[alpha - 1]
            pos = positions(C, inc)
            out.extend(pos[k - 1] for k in ys[alpha - 1])
        return tuple(out)

    eta = {u: (1,) for u in C.units(bound)}
    return OperadSet(Collection(C, values, action), eta, mu, "associative")


def check_operad(O: OperadSet, bound: int, equivariance: bool = True) -> AxiomReport:
    """Unit, associativity and equivariance on the truncation."""
    C = O.cat
    rep = Reporter("operad", bound)
    obs = C.objects(bound)
    acts = active_between(C, obs)
    units = [u for u in C.units(bound) if u in obs]
    for u in units:
        for a in obs:
            for f in acts[(u, a)]:
                for x in O(a):
                    rep.check(O.mu(f, O.eta[u], (x,)) == x, "left unit", f, x)
    for a in obs:
        ident = C.identity(a)
        etas = tuple(O.eta[C.source(e)] for e in C.elementary(a))
        for x in O(a):
            rep.check(O.mu(ident, x, etas) == x, "right unit", a, x)
    for (a, b), fs in acts.items():
        for f in fs:
            fparts = splittings(C, f)
            for c in obs:
                for g in acts[(b, c)]:
                    _check_assoc(O, f, fparts, g, rep)
    if equivariance:
        for (a, b), fs in acts.items():
            for f in fs:
                _check_equivariance(O, f, rep)
    return rep.report()


def _compose_families(O: OperadSet, f, fparts, g, ys, zs):
    """mu_{f,g}: one composite per element of the source of f."""
    C = O.cat
    out = []
    for (_, inc), y in zip(fparts, ys):
        g_alpha, _ = restrict(C, g, inc)
        pos = positions(C, inc)
        out.append(O.mu(g_alpha, y, tuple(zs[p - 1] for p in pos)))
    return tuple(out)


def _check_assoc(O, f, fparts, g, rep):
    C = O.cat
    gf = C.compose(g, f)
    for x in O(C.source(f)):
        for ys in O.collection.of(f):
            left_inner = O.mu(f, x, ys)
            for zs in O.collection.of(g):
                left = O.mu(g, left_inner, zs)
                right = O.mu(gf, x, _compose_families(O, f, fparts, g, ys, zs))
                if not rep.check(left == right, "associativity", f, g, x, ys, zs):
                    return


def _check_equivariance(O, f, rep):
    """rho . mu_f(x, ys) = mu_{rho f sigma^-1}(sigma . x, tau . ys) reindexed by sigma."""
    C = O.cat
    a, b = C.source(f), C.target(f)
    parts = splittings(C, f)
    sigmas = C.automorphisms(a)
    taus = [C.automorphisms(C.target(fa)) for fa, _ in parts]
    for sigma in sigmas:
        s = permutation_of(C.gamma(sigma))
        sinv = C.inverse(sigma)
        for ts in itertools.product(*taus):
            for rho in internal_wreath(C, f, sigma, list(ts)):
                f2 = C.compose(rho, C.compose(f, sinv))
                for x in O(a):
                    sx = O.collection.act(sigma, x)
                    for ys in O.collection.of(f):
                        moved = [None] * len(ys)
                        for k, (t, y) in enumerate(zip(ts, ys), 1):
                            moved[s[k] - 1] = O.collection.act(t, y)
                        left = O.collection.act(rho, O.mu(f, x, ys))
                        right = O.mu(f2, sx, tuple(moved))
                        if not rep.check(left == right, "equivariance", f, sigma, ts, x, ys):
                            return


def restrict_operad(functor, O: OperadSet, C: FinCategory, bound: int) -> OperadSet:
    """Pull an operad back along a moment functor given by ``obj``/``mor`` maps.

    Families are transported along the automorphism relating the splittings
    in the two categories.
    """
    D = O.cat
    values = {a: O(functor.obj(a)) for a in C.objects(bound)}

    def action(sigma, x):
        return O.collection.act(functor.mor(sigma), x)

    def transport(f, ys):
        image = functor.mor(f)
        theirs = splittings(D, image)
        out = []
        for (_, inc), (_, dinc), y in zip(splittings(C, f), theirs, ys):
            mine = functor.mor(inc)
            h = next(h for h in D.automorphisms(D.source(dinc)) if D.compose(dinc, h) == mine)
            out.append(O.collection.act(h, y))
        return image, tuple(out)

    def mu(f, x, ys):
        image, moved = transport(f, ys)
        return O.mu(image, x, moved)

    eta = {u: O.eta[functor.obj(u)] for u in C.units(bound)}
    return OperadSet(Collection(C, values, action if O.collection.action else None), eta, mu,
                     f"restricted {O.name}")


def operads_equal(O1: OperadSet, O2: OperadSet, bound: int) -> AxiomReport:
    """Values, units, actions and multiplication tables agree on the truncation."""
    C = O1.cat
    rep = Reporter("operad-equality", bound)
    obs = C.objects(bound)
    for a in obs:
        rep.check(sorted(O1(a)) == sorted(O2(a)), "values", a)
        for sigma in C.automorphisms(a):
            for x in O1(a):
                rep.check(O1.collection.act(sigma, x) == O2.collection.act(sigma, x), "action", sigma, x)
    for u in C.units(bound):
        if u in obs:
            rep.check(O1.eta[u] == O2.eta[u], "unit", u)
    for (a, b), fs in active_between(C, obs).items():
        for f in fs:
            for x in O1(a):
                for ys in O1.collection.of(f):
                    rep.check(O1.mu(f, x, ys) == O2.mu(f, x, ys), "mu", f, x, ys)
    return rep.report()


# monoids and Segal presheaves

@dataclass
class MonoidSet:
    """Values on units and the action of actives with unital domain.

    ``act(f, xs)`` takes a family xs over el(target f) to X(unit).
    """
    cat: FinCategory
    values: dict
    act: Callable
    name: str = "monoid"

    def unit_value(self, u) -> tuple:
        return tuple(self.values.get(u, ()))

    def value(self, a) -> list:
        parts = [self.unit_value(self.cat.source(e)) for e in self.cat.elementary(a)]
        return list(itertools.product(*parts))

    def apply(self, f, xs) -> tuple:
        """X(f) : X(B) -> X(A) for an active f : A -> B."""
        C = self.cat
        out = []
        for fa, inc in splittings(C, f):
            pos = positions(C, inc)
            out.append(self.act(fa, tuple(xs[p - 1] for p in pos)))
        return tuple(out)


def check_monoid(X: MonoidSet, bound: int, objects: list | None = None, limit: int = 20) -> AxiomReport:
    """X(gf) = X(f) X(g) and X(1) = 1 on the truncation."""
    C = X.cat
    rep = Reporter("monoid", bound, limit=limit)
    obs = objects if objects is not None else C.objects(bound)
    acts = active_between(C, obs)
    values = {a: X.value(a) for a in obs}
    for a in obs:
        ident = C.identity(a)
        for xs in values[a]:
            if not rep.check(X.apply(ident, xs) == xs, "identity", a, xs):
                return rep.report()
    for (a, b), fs in acts.items():
        for f in fs:
            for c in obs:
                for g in acts[(b, c)]:
                    gf = C.compose(g, f)
                    for xs in values[c]:
                        if not rep.check(X.apply(gf, xs) == X.apply(f, X.apply(g, xs)),
                                         "functoriality", f, g, xs):
                            return rep.report()
    return rep.report()


@dataclass
class Presheaf:
    cat: FinCategory
    values: dict
    act: Callable   # (f, x) -> element of the value at the source of f

    def __call__(self, a):
        return tuple(self.values.get(a, ()))


@dataclass
class SegalReport:
    passed: bool
    objects: list = field(default_factory=list)
    monoid: MonoidSet | None = None

    def __bool__(self):
        return self.passed

    def to_json(self, encode=str) -> dict:
        return {"passed": self.passed,
                "objects": [{**o, "object": encode(o["object"])} for o in self.objects]}


def segal_map(P: Presheaf, a) -> dict:
    C = P.cat
    els = C.elementary(a)
    return {x: tuple(P.act(e, x) for e in els) for x in P(a)}


def strict_segal_check(P: Presheaf, bound: int) -> SegalReport:
    """(i) nilobjects have singleton values; (ii) Segal maps are bijections."""
    C = P.cat
    rows, ok = [], True
    inverses = {}
    for a in C.objects(bound):
        card = C.cardinality(a)
        row = {"object": a, "size": len(P(a))}
        if card == 0:
            row["nil"] = len(P(a)) == 1
            ok &= row["nil"]
            inverses[a] = {(): P(a)[0]} if row["nil"] else None
        else:
            s = segal_map(P, a)
            target = 1
            for e in C.elementary(a):
                target *= len(P(C.source(e)))
            row["segal_image"] = len(set(s.values()))
            row["segal_target"] = target
            row["bijective"] = len(set(s.values())) == len(s) == target
            ok &= row["bijective"]
            inverses[a] = {v: k for k, v in s.items()} if row["bijective"] else None
        rows.append(row)
    if not ok:
        return SegalReport(False, rows)
    units = {C.source(e) for a in C.objects(bound) for e in C.elementary(a)}
    values = {u: P(u) for u in units}

    def act(f, xs):
        return P.act(f, inverses[C.target(f)][tuple(xs)])

    return SegalReport(True, rows, MonoidSet(C, values, act, "from presheaf"))


def nerve_presheaf(C: FinCategory, elements, mul, unit, bound: int) -> Presheaf:
    """Nerve of a monoid on Delta: [n] -> M^n, operators multiply consecutive runs."""
    values = {n: tuple(itertools.product(elements, repeat=n)) for n in C.objects(bound)}

    def prod(run):
        out = unit
        for m in run:
            out = mul(out, m)
        return out

    def act(f, x):
        v = f.values
        return tuple(prod(x[v[i - 1]:v[i]]) for i in range(1, len(v)))

    return Presheaf(C, values, act)


def commutative_presheaf(C: FinCategory, elements, add, zero, bound: int) -> Presheaf:
    """A commutative monoid on Gamma: n -> M^n, an operator sums each subset."""
    values = {n: tuple(itertools.product(elements, repeat=n)) for n in C.objects(bound)}

    def act(f, x):
        out = []
        for subset in f.subsets:
            total = zero
            for y in subset:
                total = add(total, x[y - 1])
            out.append(total)
        return tuple(out)

    return Presheaf(C, values, act)


def two_fold_monoid(T: FinCategory, elements, horizontal, vertical, unit) -> MonoidSet:
    """Candidate Theta_2 monoid: columns multiply vertically, then rows horizontally."""
    u = T.units()[0]

    def fold(op, items):
        out = unit
        for x in items:
            out = op(out, x)
        return out

    def act(f, xs):
        obj = T.target(f)
        index = T.element_index(obj)
        cols = []
        for alpha, b in enumerate(obj[1], 1):
            cols.append(fold(vertical, [xs[index[(alpha, beta)] - 1] for beta in range(1, b + 1)]))
        return fold(horizontal, cols)

    return MonoidSet(T, {u: tuple(elements)}, act, "two-fold")


def eckmann_hilton_search(T: FinCategory, bound: int, size: int = 2) -> dict:
    """Every (horizontal, vertical, unit) on a small set whose candidate passes
    check_monoid; EH predicts both operations agree and commute."""
    elems = tuple(range(size))
    pairs = list(itertools.product(elems, repeat=2))
    tables = [dict(zip(pairs, vals)) for vals in itertools.product(elems, repeat=len(pairs))]
    obs = T.objects(bound)
    passing = []
    for e in elems:
        unital = [t for t in tables if all(t[(e, x)] == x == t[(x, e)] for x in elems)]
        for h in unital:
            for v in unital:
                X = two_fold_monoid(T, elems, lambda a, b, h=h: h[(a, b)],
                                    lambda a, b, v=v: v[(a, b)], e)
                if check_monoid(X, bound, obs, limit=1):
                    passing.append((e, h, v))
    agree = all(h == v and all(h[(a, b)] == h[(b, a)] for a, b in pairs) for _, h, v in passing)
    return {"passing": len(passing), "eckmann_hilton": agree, "witnesses": passing}


# operads versus monoids over the plus construction

def _unit_tree(P, a):
    return P.tree(P.base.unit_active(a))


def operad_to_plus_monoid(O: OperadSet, P, bound: int) -> MonoidSet:
    """The monoid on C+ whose value at ([1], U -> A) is O(A)."""
    C = P.base
    values = {_unit_tree(P, a): O(a) for a in C.objects(bound)}

    def act(f, xs):
        t = f.target
        if t.height == 0:
            result = O.eta[t.root]
        else:
            result = xs[0]
            k = 1
            for i in range(1, t.height):
                n = C.cardinality(t.objects[i])
                result = O.mu(t.maps[i], result, tuple(xs[k:k + n]))
                k += n
        back = C.inverse(f.comps[-1])
        return O.collection.act(back, result)

    return MonoidSet(P, values, act, f"plus({O.name})")


def _plus_iso(P, t, comps):
    from .skeletons.delta import DeltaMorphism
    from .hyperkit import CTreeMorphism
    return CTreeMorphism(t, t, DeltaMorphism(t.height, tuple(range(t.height + 1))), tuple(comps))


def plus_monoid_to_operad(X: MonoidSet, P, bound: int) -> OperadSet:
    from .hyperkit import CTree, CTreeMorphism
    from .skeletons.delta import DeltaMorphism
    C = P.base
    objs = [a for a in C.objects(bound)]
    values = {a: X.unit_value(_unit_tree(P, a)) for a in objs}

    def action(sigma, x):
        t = _unit_tree(P, C.source(sigma))
        iso = _plus_iso(P, t, (C.identity(t.root), C.inverse(sigma)))
        return X.act(iso, (x,))

    eta = {}
    for u in C.units():
        unit = CTree((u, u), (C.identity(u),))
        down = CTreeMorphism(unit, CTree((u,), ()), DeltaMorphism(0, (0, 0)),
                             (C.identity(u), C.identity(u)))
        eta[u] = X.act(down, ())

    def mu(f, x, ys):
        a, b = C.source(f), C.target(f)
        if C.cardinality(a) == 0:
            return x
        u_a = C.unit_active(a)
        two = CTree((C.source(u_a), a, b), (u_a, f))
        one = CTree((C.source(u_a), b), (C.compose(f, u_a),))
        m = CTreeMorphism(one, two, DeltaMorphism(2, (0, 2)), (C.identity(two.root), C.identity(b)))
        return X.act(m, (x,) + tuple(ys))

    return OperadSet(Collection(C, values, action), eta, mu, "from plus monoid")


# free operads through decorated trees

LEAF = "leaf"


def leaf(label: int) -> tuple:
    return (LEAF, label)


def node(obj, x, children) -> tuple:
    return ("node", obj, x, tuple(children))


def leaves_of(term) -> list:
    if term[0] == LEAF:
        return [term[1]]
    return [l for c in term[3] for l in leaves_of(c)]


def relabel(term, mapping) -> tuple:
    if term[0] == LEAF:
        return leaf(mapping[term[1]])
    return node(term[1], term[2], [relabel(c, mapping) for c in term[3]])


def substitute(term, pieces: dict) -> tuple:
    """Replace leaf k of term with pieces[k]."""
    if term[0] == LEAF:
        return pieces[term[1]]
    return node(term[1], term[2], [substitute(c, pieces) for c in term[3]])


def canonical_term(C: FinCategory, X: Collection, term) -> tuple:
    """Least representative under automorphisms acting at every node."""
    if term[0] == LEAF:
        return term
    _, obj, x, kids = term
    kids = [canonical_term(C, X, k) for k in kids]
    best = None
    for sigma in C.automorphisms(obj):
        p = permutation_of(C.gamma(sigma))
        moved = [None] * len(kids)
        for j, k in enumerate(kids, 1):
            moved[p[j] - 1] = k
        cand = node(obj, X.act(sigma, x), moved)
        if best is None or repr(cand) < repr(best):
            best = cand
    return best


@dataclass
class FreeOperad:
    operad: OperadSet
    monoid: MonoidSet | None
    generators: Collection
    truncated: bool
    trees: dict     # object -> number of decorated trees generated before quotienting


def decorated_trees(P, X: Collection, max_vertices: int, max_leaves: int):
    """Canonical decorated C-trees: identity vertices only above leaves, no
    level made only of identities.  Returns ([(tree, decorations)], truncated).

    max_vertices bounds the decorated (non-identity) vertices; every level
    has one, so it bounds the height too.
    """
    C = P.base
    gens = [(a, x) for a, xs in X.values.items() for x in xs]
    # without nullary generators the number of leaves never drops
    monotone = all(C.cardinality(a) > 0 for a, _ in gens)
    out = []
    truncated = False

    def grow(objs, maps, decos, padding, used):
        nonlocal truncated
        top = objs[-1]
        n = C.cardinality(top)
        if n <= max_leaves or not monotone:
            out.append((P.tree(*maps, root=objs[0]), dict(decos)))
        if n == 0:
            return
        units = [C.source(e) for e in C.elementary(top)]
        choices = []
        for k in range(n):
            if padding[k]:
                choices.append([None])
            else:
                choices.append([None] + [g for g in gens if C.source(C.unit_active(g[0])) == units[k]])
        for pick in itertools.product(*choices):
            count = sum(p is not None for p in pick)
            if not count:
                continue
            size = sum(1 if p is None else C.cardinality(p[0]) for p in pick)
            if monotone and size > max_leaves:
                continue
            if used + count > max_vertices:
                truncated = True
                continue
            steps, flags = [], []
            for k, p in enumerate(pick):
                if p is None:
                    steps.append(C.identity(units[k]))
                    flags.append(True)
                else:
                    steps.append(C.unit_active(p[0]))
                    flags.extend([False] * C.cardinality(p[0]))
            step = C.graft_map(steps)
            new = dict(decos)
            for k, p in enumerate(pick, 1):
                new[(len(maps), k)] = p
            grow(objs + [C.target(step)], maps + [step], new, flags, used + count)

    for u in C.units():
        grow([u], [], {}, [False], 0)
    return out, truncated


def tree_term(P, t, decos, labels) -> tuple:
    """The term of a decorated tree; labels[y-1] names top element y."""
    C = P.base

    def edge(i, e):
        if i == t.height:
            return leaf(labels[e - 1])
        p = decos[(i, e)]
        step = t.maps[i]
        _, inc = restrict(C, step, C.elementary(t.objects[i])[e - 1])
        kids = positions(C, inc)
        if p is None:
            (child,) = kids
            return edge(i + 1, child)
        return node(p[0], p[1], [edge(i + 1, c) for c in kids])

    return edge(0, 1)


def free_operad(X: Collection, P, bound: int, max_vertices: int | None = None) -> FreeOperad:
    """Free operad on a collection, its values read off decorated C-trees.

    The value at B collects the canonical terms of all decorated trees with
    top isomorphic to B, one per identification of the top with B.
    """
    C = P.base
    max_vertices = max_vertices if max_vertices is not None else 2 * bound
    trees, truncated = decorated_trees(P, X, max_vertices, max(C.cardinality(a) for a in C.objects(bound)))
    values = {a: set() for a in C.objects(bound)}
    counts = {a: 0 for a in values}
    for t, decos in trees:
        for b in values:
            for h in C.isomorphisms(b, t.top):
                pos = positions(C, h)
                labels = [0] * len(pos)
                for k, p in enumerate(pos, 1):
                    labels[p - 1] = k
                values[b].add(canonical_term(C, X, tree_term(P, t, decos, labels)))
                counts[b] += 1
    values = {a: tuple(sorted(v, key=repr)) for a, v in values.items()}

    def action(sigma, term):
        return canonical_term(C, X, relabel(term, permutation_of(C.gamma(sigma))))

    def mu(f, x, ys):
        parts = splittings(C, f)
        pieces = {}
        for k, ((_, inc), y) in enumerate(zip(parts, ys), 1):
            pos = positions(C, inc)
            pieces[k] = relabel(y, {j: pos[j - 1] for j in range(1, len(pos) + 1)})
        return canonical_term(C, X, substitute(x, pieces))

    eta = {u: leaf(1) for u in C.units()}
    O = OperadSet(Collection(C, values, action), eta, mu, "free")
    return FreeOperad(O, None, X, truncated, counts)


def free_plus_monoid(X: Collection, P, bound: int, max_vertices: int | None = None) -> FreeOperad:
    F = free_operad(X, P, bound, max_vertices)
    F.monoid = operad_to_plus_monoid(F.operad, P, bound)
    return F


def adjunction_unit(X: Collection, F: FreeOperad) -> dict:
    """x in X(A) -> the one-vertex term."""
    C = X.cat
    out = {}
    for a, xs in X.values.items():
        for x in xs:
            out[(a, x)] = canonical_term(C, X, node(a, x, [leaf(k) for k in range(1, C.cardinality(a) + 1)]))
    return out


def term_object(C: FinCategory, term):
    if term[0] == LEAF:
        return C.units()[0]
    return C.graft([term_object(C, k) for k in term[3]])


def _evaluate(term, O: OperadSet, C: FinCategory):
    """(value, labels): labels[p-1] names element p of the value's object."""
    if term[0] == LEAF:
        return O.eta[C.units()[0]], [term[1]]
    _, obj, x, kids = term
    evals = [_evaluate(k, O, C) for k in kids]
    objs = [term_object(C, k) for k in kids]
    step = C.graft_map([C.unit_active(b) for b in objs])
    labels = {}
    for k, (_, labs) in enumerate(evals):
        for j, p in enumerate(positions(C, C.graft_inclusion(objs, k)), 1):
            labels[p] = labs[j - 1]
    value = O.mu(step, x, tuple(v for v, _ in evals))
    return value, [labels[p] for p in range(1, len(labels) + 1)]


def evaluate(term, O: OperadSet, C: FinCategory):
    """Counit: evaluate a term whose node labels are elements of O."""
    value, labels = _evaluate(term, O, C)
    if labels == sorted(labels):
        return value
    sigma = from_permutation(dict(enumerate(labels, 1)), len(labels))
    obj = term_object(C, term)
    rho = next(r for r in C.automorphisms(obj) if C.gamma(r) == sigma)
    return O.collection.act(rho, value)


def check_triangles(X: Collection, F: FreeOperad, O: OperadSet, bound: int) -> AxiomReport:
    """counit_F o F(unit) = id on F(X) and counit_O o unit_{O} = id on O."""
    C = X.cat
    rep = Reporter("triangular-identities", bound)
    unit = adjunction_unit(X, F)
    for a in C.objects(bound):
        for t in F.operad(a):
            lifted = _lift_generators(t, unit)
            rep.check(evaluate(lifted, F.operad, C) == t, "F side", a, t)
        for y in O(a):
            one = node(a, y, [leaf(k) for k in range(1, C.cardinality(a) + 1)])
            rep.check(evaluate(one, O, C) == y, "U side", a, y)
    return rep.report()


def _lift_generators(term, unit):
    if term[0] == LEAF:
        return term
    _, obj, x, kids = term
    return node(obj, unit[(obj, x)], [_lift_generators(k, unit) for k in kids])


# rigid hypermoment categories and the cooperadic export

def check_rigid(C: FinCategory, bound: int) -> AxiomReport:
    """Isos are automorphisms; automorphisms fix actives with unital domain."""
    rep = Reporter("rigid", bound)
    obs = C.objects(bound)
    for a in obs:
        for b in obs:
            if a != b:
                isos = C.isomorphisms(a, b)
                rep.check(not isos, "iso between distinct objects", a, b)
    units = C.units(bound)
    for a in obs:
        auts = [s for s in C.automorphisms(a) if s != C.identity(a)]
        if not auts:
            continue
        for u in units:
            for f in C.active_hom(u, a):
                for s in auts:
                    if not rep.check(C.compose(s, f) == f, "automorphism moves an active", s, f):
                        break
    return rep.report()


@dataclass
class OperadicCat:
    """Cooperadic structure on the active part of a rigid category."""
    cat: FinCategory
    bound: int

    def initial(self, a):
        return self.cat.unit_active(a)

    def cardinality(self, f) -> GammaMorphism:
        return self.cat.gamma(f)

    def cofibre(self, f, alpha: int):
        return self.restriction(f, None, alpha)[0]

    def restriction(self, g, under, alpha: int):
        """(g_alpha, inclusion of the source cofibre, inclusion of the target cofibre).

        With ``under`` = a : A -> B and g : B -> C both active, restrict g to the
        cofibres over the alpha-th element of A.  With ``under`` None, restrict
        the unit inclusion: the result is the cofibre map U_alpha -> B_alpha of g.
        """
        C = self.cat
        if under is None:
            e = C.elementary(C.source(g))[alpha - 1]
            act, inc = splittings_one(C, g, e)
            return C.target(act), act, inc
        _, inc_b = splittings(C, under)[alpha - 1]
        g_alpha, inc_c = restrict(C, g, inc_b)
        return g_alpha, inc_b, inc_c


def splittings_one(C, f, e):
    act, inr = C.factorize(C.compose(f, e))
    if C.is_iso(inr):
        act, inr = C.compose(inr, act), C.identity(C.target(f))
    return act, inr


def cooperadic_export(C: FinCategory, bound: int) -> OperadicCat:
    rigid = check_rigid(C, bound)
    if not rigid:
        raise ValueError(f"category is not rigid: {rigid.counterexamples[0]}")
    return OperadicCat(C, bound)


def check_cooperadic(OC: OperadicCat, bound: int) -> AxiomReport:
    """Axioms (i)-(v) of a cooperadic category on the active truncation."""
    C = OC.cat
    rep = Reporter("cooperadic", bound)
    obs = C.objects(bound)
    acts = active_between(C, obs)
    for a in obs:
        init = OC.initial(a)
        u = C.source(init)
        rep.check(C.cardinality(u) == 1, "(i) initial object of cardinality != 1", u)
        rep.check(len([f for f in C.active_hom(u, a)]) == 1, "(i) initial object not initial", u, a)
        ident = C.identity(a)
        for alpha in range(1, C.cardinality(a) + 1):
            rep.check(C.is_unit(OC.cofibre(ident, alpha)), "(ii) cofibre of identity not initial", a, alpha)
    for (a, b), fs in acts.items():
        for f in fs:
            gf = C.gamma(f)
            for alpha in range(1, C.cardinality(a) + 1):
                rep.check(C.cardinality(OC.cofibre(f, alpha)) == len(gf.blocks[alpha - 1]),
                          "cofibre cardinality", f, alpha)
            for c in obs:
                for g in acts[(b, c)]:
                    _cooperadic_triples(OC, f, g, obs, acts, rep)
    return rep.report()


def _cooperadic_triples(OC, a_to_b, g, obs, acts, rep):
    C = OC.cat
    a = C.source(a_to_b)
    b, c = C.target(a_to_b), C.target(g)
    ga = C.compose(g, a_to_b)
    for alpha in range(1, C.cardinality(a) + 1):
        g_alpha, inc_b, inc_c = OC.restriction(g, a_to_b, alpha)
        _, inc_c2 = splittings(C, ga)[alpha - 1]
        rep.check(inc_c == inc_c2 and C.target(g_alpha) == C.source(inc_c2),
                  "(iii) restricted map does not land in the cofibre", a_to_b, g, alpha)
        for beta_local, beta in enumerate(positions(C, inc_b), 1):
            rep.check(OC.cofibre(g, beta) == OC.cofibre(g_alpha, beta_local),
                      "(iv) cofibres disagree", a_to_b, g, alpha, beta)
        for d in obs:
            for h in acts[(c, d)]:
                h_alpha, _, _ = OC.restriction(h, ga, alpha)
                hg_alpha, _, _ = OC.restriction(C.compose(h, g), a_to_b, alpha)
                rep.check(hg_alpha == C.compose(h_alpha, g_alpha),
                          "(iii) restriction is not functorial", a_to_b, g, h, alpha)
    # axiom (v): k = a_to_b, f = g, and every g2 : C -> D gives h = g2 o g
    k, f = a_to_b, g
    for alpha in range(1, C.cardinality(a) + 1):
        f_alpha, inc_a2, _ = OC.restriction(f, k, alpha)
        local = positions(C, inc_a2)
        for d in obs:
            for g2 in acts[(c, d)]:
                g2_alpha, _, _ = OC.restriction(g2, C.compose(f, k), alpha)
                for a2_local, a2 in enumerate(local, 1):
                    left, _, _ = OC.restriction(g2_alpha, f_alpha, a2_local)
                    right, _, _ = OC.restriction(g2, f, a2)
                    rep.check(left == right, "(v) iterated restriction differs", k, f, g2, alpha, a2)
