"""Dendrices (finite rooted trees) and the dendroidal category at desk scale.

Edges are labelled 0..n-1 and each vertex is a pair (out, ins).  Morphisms
S -> T are stored as edge maps; the vertex assignment alpha -> T_alpha is
recovered from the root and leaves each vertex is sent to, since a
subdendrix is determined by its root and its leaves.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .catkit import AxiomReport, CompositionError, FinCategory, Reporter
from .skeletons.gamma import Gamma, GammaMorphism


class DendrixError(ValueError):
    """A vertex/edge configuration violating the dendrix axioms."""


LEAF = (0,)


@dataclass(frozen=True, order=True)
class Dendrix:
    n_edges: int
    vertices: tuple     # ((out, (in, ...)), ...)
    root: int = 0

    @cached_property
    def out_of(self) -> dict:
        """edge -> index of the vertex it leaves."""
        return {out: k for k, (out, _) in enumerate(self.vertices)}

    @cached_property
    def in_of(self) -> dict:
        """edge -> index of the vertex it enters."""
        return {e: k for k, (_, ins) in enumerate(self.vertices) for e in ins}

    @cached_property
    def heights(self) -> dict:
        h = {self.root: 0}
        stack = [self.root]
        while stack:
            e = stack.pop()
            v = self.out_of.get(e)
            if v is not None:
                for x in self.vertices[v][1]:
                    h[x] = h[e] + 1
                    stack.append(x)
        return h

    @cached_property
    def leaves(self) -> tuple:
        """Edges without a vertex above them; the free edge is its own leaf."""
        return tuple(e for e in range(self.n_edges) if e not in self.out_of)

    def arity(self, v: int) -> int:
        return len(self.vertices[v][1])

    def vertex_height(self, v: int) -> int:
        return self.heights[self.vertices[v][0]]

    def code(self, e: int | None = None) -> tuple:
        """Isomorphism invariant of the subtree above edge e (default: root)."""
        e = self.root if e is None else e
        v = self.out_of.get(e)
        if v is None:
            return LEAF
        return (1, tuple(sorted(self.code(x) for x in self.vertices[v][1])))

    def is_closed(self) -> bool:
        return not self.leaves

    def is_open(self) -> bool:
        return all(ins for _, ins in self.vertices)

    def to_json(self) -> dict:
        return {"edges": list(range(self.n_edges)), "root": self.root,
                "vertices": [{"out": out, "in": list(ins)} for out, ins in self.vertices]}

    def __str__(self):
        return code_string(self.code())


def code_string(code) -> str:
    if code == LEAF:
        return "|"
    return "(" + " ".join(code_string(c) for c in code[1]) + ")"


def from_json(data: dict) -> Dendrix:
    labels = list(data["edges"])
    index = {e: k for k, e in enumerate(labels)}
    if len(index) != len(labels):
        raise DendrixError("repeated edge label")
    try:
        verts = tuple((index[v["out"]], tuple(index[x] for x in v["in"])) for v in data["vertices"])
        d = Dendrix(len(labels), verts, index[data["root"]])
    except KeyError as exc:
        raise DendrixError(f"unknown edge {exc}") from None
    validate_dendrix(d)
    return d


def validate_dendrix(d: Dendrix) -> None:
    if d.n_edges < 1:
        raise DendrixError("a dendrix has at least one edge")
    edges = range(d.n_edges)
    if d.root not in edges:
        raise DendrixError("root is not an edge")
    outs, ins = {}, {}
    for k, (out, inputs) in enumerate(d.vertices):
        for e in (out,) + tuple(inputs):
            if e not in edges:
                raise DendrixError(f"vertex {k} uses unknown edge {e}")
        if out in inputs or len(set(inputs)) != len(inputs):
            raise DendrixError(f"vertex {k} has a repeated incident edge")
        if out in outs:
            raise DendrixError(f"axiom (1): edge {out} is outgoing for two vertices")
        outs[out] = k
        for e in inputs:
            if e in ins:
                raise DendrixError(f"axiom (1): edge {e} is incoming for two vertices")
            ins[e] = k
    bottoms = [e for e in edges if e not in ins]
    if bottoms != [d.root]:
        raise DendrixError(f"axiom (2): outer non-leaf edges {bottoms}, expected only the root")
    reached, stack = {d.root}, [d.root]
    while stack:
        e = stack.pop()
        if e in outs:
            for x in d.vertices[outs[e]][1]:
                if x in reached:
                    raise DendrixError("axiom (2): oriented cycle")
                reached.add(x)
                stack.append(x)
    if len(reached) != d.n_edges:
        raise DendrixError("axiom (2): some edge is not linked to the root")


def is_valid(d: Dendrix) -> bool:
    try:
        validate_dendrix(d)
    except DendrixError:
        return False
    return True


def _relabel(d: Dendrix, order_key=None):
    """Depth-first relabelling with children ordered by subtree code.

    Returns (relabelled dendrix, old edge -> new edge, old vertex -> new vertex).
    """
    key = order_key or d.code
    edge_map, vert_map, verts = {}, {}, []

    def visit(e):
        edge_map[e] = len(edge_map)
        v = d.out_of.get(e)
        if v is None:
            return
        slot = len(verts)
        verts.append(None)
        vert_map[v] = slot
        kids = sorted(d.vertices[v][1], key=lambda x: (key(x), x))
        for x in kids:
            visit(x)
        verts[slot] = (edge_map[e], tuple(edge_map[x] for x in kids))

    visit(d.root)
    return Dendrix(len(edge_map), tuple(verts), 0), edge_map, vert_map


def canonical(d: Dendrix):
    """(canonical representative, edge relabelling, vertex relabelling)."""
    return _relabel(d)


def from_code(code) -> Dendrix:
    edges = [0]
    verts = []

    def build(c, e):
        if c == LEAF:
            return
        slot = len(verts)
        verts.append(None)
        kids = []
        for sub in c[1]:
            x = len(edges)
            edges.append(x)
            kids.append((x, sub))
        verts[slot] = (e, tuple(x for x, _ in kids))
        for x, sub in kids:
            build(sub, x)

    build(code, 0)
    d = Dendrix(len(edges), tuple(verts), 0)
    return canonical(d)[0]


def free_edge() -> Dendrix:
    return Dendrix(1, (), 0)


def corolla(k: int) -> Dendrix:
    return Dendrix(k + 1, ((0, tuple(range(1, k + 1))),), 0)


def _codes(n: int) -> list:
    """All subtree codes with exactly n edges."""
    if n < 1:
        return []
    out = [LEAF] if n == 1 else []
    for kids in _multisets(n - 1):
        out.append((1, kids))
    return sorted(out)


def _multisets(total: int, least=None) -> list:
    """Sorted tuples of codes whose edge counts sum to total."""
    if total == 0:
        return [()]
    out = []
    for size in range(1, total + 1):
        for c in _codes(size):
            if least is not None and c < least:
                continue
            for rest in _multisets(total - size, c):
                out.append(tuple(sorted((c,) + rest)))
    return sorted(set(out))


def enumerate_dendrices(max_edges: int) -> list:
    """Isomorphism-class representatives with at most max_edges edges."""
    out = []
    for n in range(1, max_edges + 1):
        out.extend(from_code(c) for c in _codes(n))
    return out


# subdendrices, inert maps and the free monad

@dataclass(frozen=True, order=True)
class SubDendrix:
    root: int
    leaves: tuple       # sorted
    vertices: frozenset

    @property
    def is_edge(self) -> bool:
        return not self.vertices


def subdendrices(t: Dendrix) -> list:
    """All subdendrices of t: single edges and connected vertex sets."""
    out = []
    for r in range(t.n_edges):
        out.extend(_rooted(t, r))
    return out


def _rooted(t: Dendrix, r: int) -> list:
    res = [SubDendrix(r, (r,), frozenset())]

    def grow(e):
        """Options (leaves, vertices) for the part above e inside a subdendrix."""
        opts = [((e,), frozenset())]
        v = t.out_of.get(e)
        if v is not None:
            for combo in itertools.product(*(grow(x) for x in t.vertices[v][1])):
                leaves = tuple(x for ls, _ in combo for x in ls)
                verts = frozenset({v}).union(*(vs for _, vs in combo))
                opts.append((leaves, verts))
        return opts

    v = t.out_of.get(r)
    if v is not None:
        for combo in itertools.product(*(grow(x) for x in t.vertices[v][1])):
            leaves = tuple(sorted(x for ls, _ in combo for x in ls))
            verts = frozenset({v}).union(*(vs for _, vs in combo))
            res.append(SubDendrix(r, leaves, verts))
    return res


def find_subdendrix(t: Dendrix, root: int, leaves) -> SubDendrix | None:
    """The subdendrix of t with this root and exactly these leaves, if any."""
    leaves = tuple(sorted(leaves))
    if leaves == (root,):
        return SubDendrix(root, leaves, frozenset())
    want = set(leaves)
    if len(want) != len(leaves) or root in want:
        return None
    verts, seen = set(), set()
    stack = [root]
    while stack:
        e = stack.pop()
        v = t.out_of.get(e)
        if v is None:
            return None
        verts.add(v)
        for x in t.vertices[v][1]:
            if x in want:
                seen.add(x)
            else:
                stack.append(x)
    if seen != want:
        return None
    return SubDendrix(root, leaves, frozenset(verts))


def extract(t: Dendrix, sub: SubDendrix):
    """The subdendrix as a dendrix in its own right, with inclusion labels.

    Returns (dendrix, new edge -> edge of t)."""
    edges = [sub.root] + sorted({x for v in sub.vertices for x in t.vertices[v][1]})
    index = {e: k for k, e in enumerate(edges)}
    verts = tuple((index[t.vertices[v][0]], tuple(index[x] for x in t.vertices[v][1]))
                  for v in sorted(sub.vertices))
    return Dendrix(len(edges), verts, 0), edges


@dataclass(frozen=True, order=True)
class InertMap:
    source: Dendrix
    target: Dendrix
    edges: tuple
    verts: tuple


def inert_homs(s: Dendrix, t: Dendrix) -> list:
    """Incidence-, output- and arity-preserving maps, bijective on inputs."""
    out = []
    order = _top_down(s)

    def rec(k, emap, vmap):
        if k == len(order):
            out.append(InertMap(s, t, tuple(emap[e] for e in range(s.n_edges)),
                                tuple(vmap[v] for v in range(len(s.vertices)))))
            return
        v = order[k]
        e_out, ins = s.vertices[v]
        w = t.out_of.get(emap[e_out])
        if w is None or t.arity(w) != len(ins):
            return
        for perm in itertools.permutations(t.vertices[w][1]):
            for x, y in zip(ins, perm):
                emap[x] = y
            rec(k + 1, emap, {**vmap, v: w})
        for x in ins:
            emap.pop(x, None)

    for e in range(t.n_edges):
        rec(0, {s.root: e}, {})
    return out


def _top_down(d: Dendrix) -> list:
    """Vertices ordered from the root upwards."""
    order, stack = [], [d.root]
    while stack:
        e = stack.pop(0)
        v = d.out_of.get(e)
        if v is not None:
            order.append(v)
            stack.extend(d.vertices[v][1])
    return order


def free_monad(t: Dendrix, k: int) -> list:
    """Pairs (subdendrix with k leaves, bijection 1..k -> leaves)."""
    out = []
    for sub in subdendrices(t):
        if len(sub.leaves) == k:
            for perm in itertools.permutations(sub.leaves):
                out.append((sub, perm))
    return out


# general morphisms

@dataclass(frozen=True, order=True)
class DendrixMorphism:
    source: Dendrix
    target: Dendrix
    edges: tuple

    def __call__(self, e):
        return self.edges[e]

    def __str__(self):
        return f"{self.source} -> {self.target} {list(self.edges)}"


def assignment(f: DendrixMorphism) -> dict | None:
    """vertex of the source -> (subdendrix of the target, inputs -> leaves)."""
    s, t = f.source, f.target
    out = {}
    for v, (e_out, ins) in enumerate(s.vertices):
        images = tuple(f.edges[x] for x in ins)
        sub = find_subdendrix(t, f.edges[e_out], images)
        if sub is None or len(sub.leaves) != len(ins):
            return None
        out[v] = (sub, dict(zip(ins, images)))
    return out


def is_morphism(f: DendrixMorphism) -> bool:
    return len(f.edges) == f.source.n_edges and assignment(f) is not None


def omega_hom(s: Dendrix, t: Dendrix) -> list:
    by_root = {r: _rooted(t, r) for r in range(t.n_edges)}
    order = _top_down(s)
    out = []

    def rec(k, emap):
        if k == len(order):
            out.append(DendrixMorphism(s, t, tuple(emap[e] for e in range(s.n_edges))))
            return
        v = order[k]
        e_out, ins = s.vertices[v]
        for sub in by_root[emap[e_out]]:
            if len(sub.leaves) != len(ins):
                continue
            for perm in itertools.permutations(sub.leaves):
                for x, y in zip(ins, perm):
                    emap[x] = y
                rec(k + 1, emap)
        for x in ins:
            emap.pop(x, None)

    for e in range(t.n_edges):
        rec(0, {s.root: e})
    return out


def substitute(g: DendrixMorphism, f: DendrixMorphism) -> dict:
    """Composite vertex assignment: the vertices of each f-subdendrix are
    replaced by their g-subdendrices and flattened."""
    ga = assignment(g)
    out = {}
    for v, (sub, _) in assignment(f).items():
        if sub.is_edge:
            out[v] = frozenset()
        else:
            out[v] = frozenset().union(*(ga[w][0].vertices for w in sub.vertices))
    return out


def omega_compose(g: DendrixMorphism, f: DendrixMorphism) -> DendrixMorphism:
    if f.target != g.source:
        raise CompositionError("cannot compose dendrix morphisms")
    return DendrixMorphism(f.source, g.target, tuple(g.edges[e] for e in f.edges))


def is_inert_morphism(f: DendrixMorphism) -> bool:
    if len(set(f.edges)) != len(f.edges):
        return False
    a = assignment(f)
    return all(len(sub.vertices) == 1 for sub, _ in a.values())


def is_active_morphism(f: DendrixMorphism) -> bool:
    s, t = f.source, f.target
    return (f.edges[s.root] == t.root
            and sorted(f.edges[e] for e in s.leaves) == sorted(t.leaves))


def classify_omega(f: DendrixMorphism) -> str:
    act, inr = is_active_morphism(f), is_inert_morphism(f)
    if act and inr:
        return "Iso"
    if act:
        return "Active"
    if inr:
        return "Inert"
    return "General"


def image(f: DendrixMorphism) -> SubDendrix:
    s = f.source
    return find_subdendrix(f.target, f.edges[s.root], [f.edges[e] for e in s.leaves])


def omega_factorize(f: DendrixMorphism):
    """Active morphism onto the canonical image, then its inert inclusion."""
    sub = image(f)
    raw, labels = extract(f.target, sub)
    canon, relabel, _ = canonical(raw)
    back = {relabel[k]: e for k, e in enumerate(labels)}
    to_canon = {e: relabel[k] for k, e in enumerate(labels)}
    act = DendrixMorphism(f.source, canon, tuple(to_canon[e] for e in f.edges))
    inr = DendrixMorphism(canon, f.target, tuple(back[k] for k in range(canon.n_edges)))
    return act, inr


def is_reduced(t: Dendrix) -> bool:
    if t.is_closed():
        return True
    top = max(t.heights.values())
    return set(t.leaves) == {e for e, h in t.heights.items() if h == top}


def tree_height(d: Dendrix) -> int:
    """Number of vertex levels: 0 for the free edge, 1 for corollas."""
    if not d.vertices:
        return 0
    top = max(d.heights.values())
    return top + 1 if d.is_closed() else top


def is_reduced_mor(f: DendrixMorphism) -> bool:
    """Reduced image, reduced vertex subdendrices, and height-preserving on edges."""
    act, _ = omega_factorize(f)
    if not is_reduced(act.target):
        return False
    level = {}
    for v, (sub, _) in assignment(f).items():
        piece = extract(f.target, sub)[0]
        if not sub.is_edge and not is_reduced(piece):
            return False
        if level.setdefault(f.source.vertex_height(v), tree_height(piece)) != tree_height(piece):
            return False
    hs, ht = f.source.heights, f.target.heights
    level = {}
    for e in range(f.source.n_edges):
        if level.setdefault(hs[e], ht[f.edges[e]]) != ht[f.edges[e]]:
            return False
    return True


class Omega(FinCategory):
    """Dendrices up to isomorphism with Kleisli morphisms; size = edge count."""

    name = "omega"

    def __init__(self):
        self._homs = {}

    def objects(self, bound):
        return enumerate_dendrices(bound)

    def size(self, d):
        return d.n_edges

    def cardinality(self, d):
        return len(d.vertices)

    def hom(self, a, b):
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = omega_hom(a, b)
        return self._homs[key]

    def compose(self, g, f):
        return omega_compose(g, f)

    def identity(self, d):
        return DendrixMorphism(d, d, tuple(range(d.n_edges)))

    def is_active(self, f):
        return is_active_morphism(f)

    def is_inert(self, f):
        return is_inert_morphism(f)

    def factorize(self, f):
        return omega_factorize(f)

    def is_iso(self, f):
        return self.is_active(f) and self.is_inert(f)

    def inverse(self, f):
        if not self.is_iso(f):
            return None
        inv = [0] * len(f.edges)
        for e, x in enumerate(f.edges):
            inv[x] = e
        return DendrixMorphism(f.target, f.source, tuple(inv))

    def isomorphisms(self, a, b):
        if a.code() != b.code():
            return []
        return [DendrixMorphism(a, b, m.edges) for m in inert_homs(a, b)
                if m.edges[a.root] == b.root]

    def automorphisms(self, a):
        return self.isomorphisms(a, a)

    def inert_hom(self, a, b):
        return [DendrixMorphism(a, b, m.edges) for m in inert_homs(a, b)]

    def active_hom(self, a, b):
        return [f for f in self.hom(a, b) if is_active_morphism(f)]

    def gamma(self, f):
        subsets = []
        for sub, _ in assignment(f).values():
            subsets.append([w + 1 for w in sorted(sub.vertices)])
        return GammaMorphism.from_subsets(subsets, len(f.target.vertices))

    def units(self, bound=None):
        return [corolla(k) for k in range(0, (bound or 1))]

    def is_unit(self, d):
        return len(d.vertices) == 1

    def nilobjects(self, bound=None):
        return [free_edge()]

    def elementary(self, d):
        out = []
        for out_e, ins in d.vertices:
            c = corolla(len(ins))
            out.append(DendrixMorphism(c, d, (out_e,) + tuple(ins)))
        return out

    def encode(self, f):
        return str(f)


# Gamma-trees and reduced dendrices

def gammatree_to_dendrix(t):
    """A Gamma-tree (CTree over Gamma) as a canonical dendrix.

    Returns (dendrix, (height, element) -> edge)."""
    index, verts = {}, []
    for i, n in enumerate(t.objects):
        for x in range(1, n + 1):
            index[(i, x)] = len(index)
    for i, a in enumerate(t.maps):
        for x in range(1, t.objects[i] + 1):
            ins = tuple(index[(i + 1, y)] for y, p in enumerate(a.pmap, 1) if p == x)
            verts.append((index[(i, x)], ins))
    raw = Dendrix(len(index), tuple(verts), index[(0, 1)])
    canon, relabel, _ = canonical(raw)
    return canon, {k: relabel[e] for k, e in index.items()}


def dendrix_to_gammatree(d: Dendrix):
    """The Gamma-tree of a reduced dendrix; edges of each height in label order.

    Returns (CTree, edge -> (height, element))."""
    from .hyperkit import CTree
    if not is_reduced(d):
        raise DendrixError(f"{d} is not reduced")
    hs = d.heights
    top = max(hs.values())
    levels = [sorted(e for e in range(d.n_edges) if hs[e] == i) for i in range(top + 1)]
    m = top + 1 if d.is_closed() else top
    if m == top + 1:
        levels.append([])
    pos = {e: (i, k) for i, lev in enumerate(levels) for k, e in enumerate(lev, 1)}
    maps = []
    for i in range(m):
        pmap = []
        for e in levels[i + 1]:
            parent = d.vertices[d.in_of[e]][0]
            pmap.append(pos[parent][1])
        maps.append(GammaMorphism(len(levels[i]), len(levels[i + 1]), tuple(pmap)))
    objects = tuple(len(lev) for lev in levels[:m + 1])
    return CTree(objects, tuple(maps)), pos


def comparison(P, f) -> DendrixMorphism:
    """The dendrix morphism of a Gamma+ morphism: edge (i, x) -> (phi(i), f_i(x))."""
    ds, ls = gammatree_to_dendrix(f.source)
    dt, lt = gammatree_to_dendrix(f.target)
    edges = [None] * ds.n_edges
    for (i, x), e in ls.items():
        comp = f.comps[i]
        y = comp.pmap.index(x) + 1
        edges[e] = lt[(f.phi(i), y)]
    return DendrixMorphism(ds, dt, tuple(edges))


def reduced_dendrices(max_edges: int) -> list:
    return [d for d in enumerate_dendrices(max_edges) if is_reduced(d)]


def has_low_stump(d: Dendrix) -> bool:
    """Some stump sits below the maximal edge height."""
    top = max(d.heights.values())
    return any(d.heights[o] < top for o, ins in d.vertices if not ins)


def check_equivalence(max_edges: int, P=None, pairs=None, limit: int = 20) -> AxiomReport:
    """Gamma+ -> Omega is bijective onto reduced morphisms between reduced dendrices.

    ``pairs`` optionally filters the (source, target) pairs that are compared.
    """
    from .hyperkit import PlusCategory
    P = P or PlusCategory(Gamma())
    rep = Reporter("gamma-plus-omega", max_edges, limit=limit)
    ds = reduced_dendrices(max_edges)
    trees = {}
    for d in ds:
        t, _ = dendrix_to_gammatree(d)
        back, _ = gammatree_to_dendrix(t)
        rep.check(back == d, d, "round trip through Gamma-trees changes the dendrix")
        trees[d] = t
    for s in ds:
        for t in ds:
            if pairs is not None and not pairs(s, t):
                continue
            plus_hom = P.hom(trees[s], trees[t])
            images = [comparison(P, f) for f in plus_hom]
            reduced = {f for f in omega_hom(s, t) if is_reduced_mor(f)}
            rep.check(len(set(images)) == len(images), s, t, "comparison is not faithful")
            rep.check(set(images) == reduced, s, t,
                      f"|Gamma+| = {len(plus_hom)}, |Omega_r| = {len(reduced)}")
    return rep.report()


def stump_free_pairs(s: Dendrix, t: Dendrix) -> bool:
    """Pairs whose target has no stump below its maximal height."""
    return not has_low_stump(t)


def hom_counts(max_edges: int, P=None) -> dict:
    """(s, t) -> (|Gamma+ hom|, |Omega_r hom|) for reduced dendrices."""
    from .hyperkit import PlusCategory
    P = P or PlusCategory(Gamma())
    ds = reduced_dendrices(max_edges)
    trees = {d: dendrix_to_gammatree(d)[0] for d in ds}
    return {(s, t): (len(P.hom(trees[s], trees[t])),
                     sum(1 for f in omega_hom(s, t) if is_reduced_mor(f)))
            for s in ds for t in ds}


def insert_reduced(s: Dendrix, v: int, piece: Dendrix) -> Dendrix:
    """Insert piece into vertex v of s and stretch same-height corollas.

    The k-th leaf of piece (label order) is glued to the k-th input of v
    (label order).  Inputs of the other vertices at the height of v are
    replaced by linear trees so that the result stays reduced.
    """
    if not is_reduced(s) or not is_reduced(piece):
        raise DendrixError("insert_reduced needs reduced dendrices")
    out_e, ins = s.vertices[v]
    if len(piece.leaves if not piece.is_closed() else ()) != len(ins):
        raise DendrixError("piece leaves do not match the vertex inputs")
    hp = max(piece.heights.values())
    depth = hp + 1 if piece.is_closed() else hp
    level = s.vertex_height(v)
    n = s.n_edges
    new_verts = []

    def fresh():
        nonlocal n
        n += 1
        return n - 1

    glue = {piece.root: out_e}
    for leaf, e in zip(sorted(piece.leaves) if not piece.is_closed() else (), ins):
        glue[leaf] = e
    for e in range(piece.n_edges):
        if e not in glue:
            glue[e] = fresh()
    for w, (o, xs) in enumerate(s.vertices):
        if w == v:
            continue
        if s.vertex_height(w) != level or depth == 1:
            new_verts.append((o, xs))
            continue
        if depth == 0:
            continue
        stretched = []
        for x in xs:
            below = fresh()
            stretched.append(below)
            for _ in range(depth - 2):
                mid = fresh()
                new_verts.append((below, (mid,)))
                below = mid
            new_verts.append((below, (x,)))
        new_verts.append((o, tuple(stretched)))
    for o, xs in piece.vertices:
        new_verts.append((glue[o], tuple(glue[x] for x in xs)))
    raw = Dendrix(n, tuple(new_verts), s.root)
    if depth == 0:
        raw = _contract_level(s, level)
    validate_dendrix(raw)
    return canonical(raw)[0]


def _contract_level(s: Dendrix, level: int) -> Dendrix:
    """Remove every (unary) vertex at this height, merging its two edges."""
    merge = {}
    for o, xs in s.vertices:
        if s.heights[o] == level:
            if len(xs) != 1:
                raise DendrixError("height-0 insertion next to a non-unary vertex")
            merge[xs[0]] = o

    def rep(e):
        while e in merge:
            e = merge[e]
        return e

    keep = sorted({rep(e) for e in range(s.n_edges)})
    index = {e: k for k, e in enumerate(keep)}
    verts = tuple((index[rep(o)], tuple(index[rep(x)] for x in xs))
                  for o, xs in s.vertices if s.heights[o] != level)
    return Dendrix(len(keep), verts, index[rep(s.root)])


def insert_via_plus(s: Dendrix, v: int, piece: Dendrix, P=None) -> Dendrix:
    """The same insertion computed in Gamma+ and translated back."""
    from .hyperkit import PlusCategory, Vertex
    P = P or PlusCategory(Gamma())
    t, pos = dendrix_to_gammatree(s)
    i, x = pos[s.vertices[v][0]]
    sub, _ = dendrix_to_gammatree(piece)
    result, _, _ = P.insert(t, Vertex(i, x), sub)
    return gammatree_to_dendrix(result)[0]


def to_dot(d: Dendrix, name: str = "dendrix") -> str:
    """Graphviz drawing with the root at the bottom and leaves on top."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=point];"]
    lines.append("  root [shape=none, label=\"\"];")
    for k in range(len(d.vertices)):
        lines.append(f"  v{k} [shape=circle, label=\"\", width=0.12];")
    for e in range(d.n_edges):
        lower = "root" if e == d.root else f"v{d.in_of[e]}"
        upper = f"v{d.out_of[e]}" if e in d.out_of else f"leaf{e}"
        if e not in d.out_of:
            lines.append(f"  leaf{e} [shape=none, label=\"\"];")
        lines.append(f"  {lower} -> {upper} [arrowhead=none, label=\"{e}\"];")
    lines.append("}")
    return "\n".join(lines)
