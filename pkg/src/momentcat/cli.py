"""Command line front end.

    momentcat verify gamma --bound 3 --axioms m,M,MC
    momentcat factorize gamma "[{2,3}]:1->3"
    momentcat free-operad delta one-binary.json --bound 6

Output is JSON (schema ``momentcat/1``) unless ``--pretty`` is given.  Exit
status: 0 all checks pass, 1 some check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catkit, dendro, hyperkit, momentkit, operadkit
from .catkit import FinCategory
from .skeletons import Delta, Gamma, Wreath, delta, gamma, theta
from .skeletons.notation import (NotationError, compact, format_morphism, format_object,
                                 morphism_from_data, morphism_to_data, object_from_data,
                                 object_to_data, parse_morphism, parse_object)

SCHEMA = "momentcat/1"
AXIOMS = ("m", "M", "MC", "hyper", "segal", "ext", "coop")


class UsageError(Exception):
    pass


class SchemaError(UsageError):
    pass


# categories

def select(text: str) -> FinCategory:
    """gamma | delta | theta:n | lrb:<file> | plus:<selector> | omega"""
    if text == "gamma":
        return gamma()
    if text == "delta":
        return delta()
    if text == "omega":
        return dendro.Omega()
    kind, _, rest = text.partition(":")
    if kind == "theta" and rest.isdigit() and int(rest) >= 1:
        return theta(int(rest))
    if kind == "lrb" and rest:
        data = load_json(rest)
        return momentkit.lrb_category(deserialize(data, "lrb"))
    if kind == "plus" and rest:
        return hyperkit.plus(select(rest))
    raise UsageError(f"unknown selector {text!r} (gamma, delta, theta:n, lrb:FILE, plus:SEL, omega)")


def load_json(source: str):
    """A path to a JSON file or inline JSON."""
    path = Path(source)
    try:
        text = path.read_text() if path.exists() else source
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {source!r}") from None


def read_object(C, text: str):
    if isinstance(C, hyperkit.PlusCategory):
        return tree_from_data(C, load_json(text))
    if isinstance(C, dendro.Omega):
        return dendro.canonical(dendro.from_json(load_json(text)))[0]
    if isinstance(C, momentkit.LRBCategory):
        return "*"
    return parse_object(C, text)


def read_morphism(C, text: str):
    if isinstance(C, momentkit.LRBCategory):
        try:
            return C.elements[C.L.index(text)]
        except KeyError:
            raise UsageError(f"{text!r} is not an element of the band") from None
    if isinstance(C, (hyperkit.PlusCategory, dendro.Omega)):
        raise UsageError(f"no morphism notation for {C.name}")
    return parse_morphism(C, text)


def show_object(C, a):
    if isinstance(C, hyperkit.PlusCategory):
        return tree_to_data(C, a)
    if isinstance(C, dendro.Omega):
        return str(a)
    if isinstance(C, momentkit.LRBCategory):
        return a
    return format_object(C, a)


def show_morphism(C, f):
    if isinstance(C, (Gamma, Delta)):
        return compact(format_morphism(C, f))
    if isinstance(C, Wreath):
        return morphism_to_data(C, f)
    if isinstance(C, momentkit.LRBCategory):
        return str(C.L.elements[f.index])
    return str(f)


# serialization

def tree_to_data(P, t) -> dict:
    B = P.base
    return {"root": object_to_data(B, t.root),
            "maps": [morphism_to_data(B, a) for a in t.maps]}


def tree_from_data(P, data):
    B = P.base
    try:
        if isinstance(data, list):
            data = {"maps": data}
        maps = [morphism_from_data(B, m) for m in data.get("maps", [])]
        root = object_from_data(B, data["root"]) if "root" in data else None
        return P.tree(*maps, root=root)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed tree: {exc}") from None


def _tuples(x):
    """JSON lists back to the tuples operad elements are made of."""
    if isinstance(x, list):
        return tuple(_tuples(y) for y in x)
    return x


def _operad_body(O, bound: int) -> dict:
    C = O.cat
    obs = C.objects(bound)
    values = [{"object": object_to_data(C, a), "elements": list(O(a))} for a in obs]
    action = [{"morphism": morphism_to_data(C, s), "x": x, "value": O.collection.act(s, x)}
              for a in obs for s in C.automorphisms(a) if s != C.identity(a) for x in O(a)]
    eta = [{"object": object_to_data(C, u), "element": O.eta[u]} for u in C.units(bound) if u in obs]
    table = [{"morphism": morphism_to_data(C, f), "x": x, "ys": list(ys), "value": v}
             for (f, x, ys), v in operadkit.tabulate(O, bound).items()]
    return {"bound": bound, "values": values, "action": action, "eta": eta, "table": table}


def _operad_from(data, C):
    values = {object_from_data(C, row["object"]): tuple(_tuples(row["elements"]))
              for row in data["values"]}
    moves = {(morphism_from_data(C, row["morphism"]), _tuples(row["x"])): _tuples(row["value"])
             for row in data["action"]}
    eta = {object_from_data(C, row["object"]): _tuples(row["element"]) for row in data["eta"]}
    table = {(morphism_from_data(C, row["morphism"]), _tuples(row["x"]), _tuples(row["ys"])):
             _tuples(row["value"]) for row in data["table"]}
    coll = operadkit.Collection(C, values, lambda s, x: moves[(s, x)])
    return operadkit.from_table(coll, eta, table, data.get("name", "tabulated"))


def serialize(value, kind: str, bound: int | None = None) -> dict:
    """Schema-tagged JSON for dendrices, bands, collections and operad tables.

    Operads are tabulated on the truncation at ``bound``."""
    if kind == "dendrix":
        body = value.to_json()
    elif kind == "lrb":
        body = value.to_json()
    elif kind == "collection":
        C = value.cat
        body = {"generators": {json.dumps(object_to_data(C, a)): list(xs)
                               for a, xs in value.values.items() if xs}}
    elif kind == "operad":
        if bound is None:
            raise SchemaError("operad tables need a bound")
        body = {"name": value.name, **_operad_body(value, bound)}
    else:
        raise SchemaError(f"cannot serialize {kind!r}")
    return {"schema": SCHEMA, "kind": kind, **body}


def deserialize(data, kind: str, cat: FinCategory | None = None):
    if not isinstance(data, dict):
        raise SchemaError("expected a JSON object")
    if data.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"schema {data.get('schema')!r} is not {SCHEMA}")
    if data.get("kind", kind) != kind:
        raise SchemaError(f"expected a {kind}, found {data.get('kind')!r}")
    try:
        if kind == "dendrix":
            return dendro.from_json(data)
        if kind == "lrb":
            return momentkit.LRB.from_json(data)
        if kind == "collection":
            values = {}
            for key, xs in data.get("generators", {}).items():
                obj = object_from_data(cat, json.loads(key))
                values[obj] = tuple(xs)
            return operadkit.Collection(cat, values)
        if kind == "operad":
            return _operad_from(data, cat)
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"invalid {kind}: {exc}") from None
    raise SchemaError(f"unknown kind {kind!r}")


# commands

def _report_json(C, rep: catkit.AxiomReport) -> dict:
    return rep.to_json(lambda x: _encode(C, x))


def _encode(C, x):
    if isinstance(x, (str, int)) or x is None:
        return x
    if isinstance(x, momentkit.Moment):
        x = x.endo
    if isinstance(x, (tuple, list)) and not hasattr(x, "_fields"):
        if isinstance(C, Wreath) and len(x) == 2 and isinstance(x[1], tuple):
            return show_object(C, x)
        return [_encode(C, y) for y in x]
    try:
        return show_morphism(C, x)
    except Exception:
        return str(x)


def cmd_verify(args) -> tuple[int, dict]:
    C = select(args.selector)
    wanted = [a.strip() for a in args.axioms.split(",") if a.strip()]
    for a in wanted:
        if a not in AXIOMS:
            raise UsageError(f"unknown axiom group {a!r} (choose from {','.join(AXIOMS)})")
    b = args.bound
    reports = []
    for group in wanted:
        reports.extend(_run_group(C, group, b))
    ok = all(r.passed for r in reports)
    return (0 if ok else 1), {"category": C.name, "bound": b, "passed": ok,
                              "reports": [_report_json(C, r) for r in reports]}


def _run_group(C, group: str, bound: int) -> list:
    if group == "m":
        S = C if isinstance(C, momentkit.MomentStructure) else momentkit.SplitMoments(C, bound)
        return list(momentkit.check_m_axioms(S, bound).values())
    if isinstance(C, momentkit.LRBCategory):
        raise UsageError(f"axiom group {group!r} needs an active/inert category")
    if group == "M":
        return [catkit.check_factorisation(C, bound), *catkit.check_M1_M2_MC(C, bound).values()]
    if group == "MC":
        return [catkit.check_MC(C, bound), *momentkit.check_corestriction(C, bound).values()]
    H = hyperkit.Hypermoment(C)
    if group == "hyper":
        return [hyperkit.check_hypermoment(H, bound)]
    if group == "segal":
        return [hyperkit.check_strong_unitality(H, bound)]
    if group == "ext":
        return [hyperkit.check_extensionality(H, bound)]
    rigid = operadkit.check_rigid(C, bound)
    if not rigid:
        return [rigid]
    return [rigid, operadkit.check_cooperadic(operadkit.OperadicCat(C, bound), bound)]


def cmd_factorize(args):
    C = select(args.selector)
    f = read_morphism(C, args.morphism)
    act, inr = C.factorize(f)
    return 0, {"morphism": show_morphism(C, f), "active": show_morphism(C, act),
               "inert": show_morphism(C, inr), "class": str(catkit.classify(C, f))}


def cmd_pushforward(args):
    C = select(args.selector)
    f = read_morphism(C, args.morphism)
    endo = read_morphism(C, args.moment)
    ms = momentkit.moments_of(C, C.source(f))
    try:
        phi = ms.moments[ms.index(endo)]
    except KeyError:
        raise UsageError(f"{args.moment!r} is not a moment of the source") from None
    pushed = momentkit.pushforward(C, f, phi)
    return 0, {"morphism": show_morphism(C, f), "moment": show_morphism(C, endo),
               "pushforward": show_morphism(C, pushed.endo)}


def _hom_payload(C, a, b, listing: bool) -> dict:
    homs = C.hom(a, b)
    out = {"source": show_object(C, a), "target": show_object(C, b), "count": len(homs)}
    if hasattr(C, "is_active"):
        out["active"] = sum(1 for f in homs if C.is_active(f))
        out["inert"] = sum(1 for f in homs if C.is_inert(f))
    if listing:
        out["morphisms"] = [show_morphism(C, f) for f in homs]
    return out


def cmd_hom(args):
    C = select(args.selector)
    return 0, _hom_payload(C, read_object(C, args.source), read_object(C, args.target), args.list)


def cmd_plus_hom(args):
    base = select(args.selector)
    P = base if isinstance(base, hyperkit.PlusCategory) else hyperkit.plus(base)
    try:
        s, t = read_object(P, args.source), read_object(P, args.target)
    except hyperkit.TreeError as exc:
        raise UsageError(str(exc)) from None
    return 0, _hom_payload(P, s, t, args.list)


def cmd_free_operad(args):
    C = select(args.selector)
    X = deserialize(load_json(args.collection), "collection", C)
    P = hyperkit.plus(C)
    F = operadkit.free_operad(X, P, args.bound, args.max_vertices)
    objs = sorted((a for a in C.objects(args.bound) if C.cardinality(a) >= 1),
                  key=lambda a: (C.cardinality(a), repr(a)))
    counts = [[show_object(C, a), len(F.operad(a))] for a in objs]
    return 0, {"category": C.name, "bound": args.bound, "truncated": F.truncated,
               "counts": [n for _, n in counts], "by_object": counts}


def cmd_equiv(args):
    if args.which != "gamma-plus-omega":
        raise UsageError(f"unknown equivalence {args.which!r}")
    pairs = dendro.stump_free_pairs if args.stump_free else None
    rep = dendro.check_equivalence(args.edges, pairs=pairs)
    return (0 if rep.passed else 1), {"equivalence": args.which, "edges": args.edges,
                                      "stump_free": args.stump_free,
                                      "report": rep.to_json(str)}


def cmd_export_dot(args):
    C = select(args.selector)
    a = read_object(C, args.object)
    if isinstance(C, dendro.Omega):
        return 0, dendro.to_dot(a)
    if isinstance(C, hyperkit.PlusCategory):
        return 0, tree_dot(C, a)
    return 0, inert_dot(C, a)


def tree_dot(P, t) -> str:
    B = P.base
    lines = ["digraph tree {", "  rankdir=BT;"]
    for v in P.vertices(t):
        vt = P.vertex_tree(t, v)
        lines.append(f'  "{v}" [label="{B.cardinality(vt.top)}"];')
    for v in P.vertices(t):
        if v.height + 1 >= t.height:
            continue
        _, inc = operadkit.restrict(B, t.maps[v.height], B.elementary(t.objects[v.height])[v.index - 1])
        for k in operadkit.positions(B, inc):
            lines.append(f'  "{v}" -> "{hyperkit.Vertex(v.height + 1, k)}";')
    lines.append("}")
    return "\n".join(lines)


def inert_dot(C, a) -> str:
    """Hasse diagram of the inert subobjects of an object, up to isomorphism."""
    subs = []
    for b in C.objects(C.size(a)):
        for i in C.inert_hom(b, a):
            if not any(C.compose(i, h) in subs for h in C.automorphisms(b) if h != C.identity(b)):
                subs.append(i)
    label = {i: f"s{k}" for k, i in enumerate(subs)}
    below = {}
    for i in subs:
        for j in subs:
            if i != j and C.size(C.source(i)) < C.size(C.source(j)):
                if any(C.compose(j, k) == i for k in C.inert_hom(C.source(i), C.source(j))):
                    below.setdefault(i, []).append(j)
    lines = ["digraph inert {", "  rankdir=BT;"]
    for i in subs:
        lines.append(f'  {label[i]} [label="{show_object(C, C.source(i))}"];')
    for i, ups in below.items():
        for j in ups:
            direct = not any(j in below.get(k, []) for k in ups if k != j)
            if direct:
                lines.append(f"  {label[i]} -> {label[j]};")
    lines.append("}")
    return "\n".join(lines)


# entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="aligned text instead of JSON")
    p = argparse.ArgumentParser(prog="momentcat", description="Moment categories on the command line.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def bound(text):
        try:
            n = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bound must be a positive integer, got {text!r}")
        if n < 1:
            raise argparse.ArgumentTypeError(f"bound must be a positive integer, got {text!r}")
        return n

    v = sub.add_parser("verify", help="run axiom suites on a truncation", parents=[common])
    v.add_argument("selector")
    v.add_argument("--bound", type=bound, required=True)
    v.add_argument("--axioms", default="m,M")
    v.set_defaults(run=cmd_verify)

    f = sub.add_parser("factorize", help="active/inert factorisation", parents=[common])
    f.add_argument("selector")
    f.add_argument("morphism")
    f.set_defaults(run=cmd_factorize)

    pf = sub.add_parser("pushforward", help="pushforward of a moment", parents=[common])
    pf.add_argument("selector")
    pf.add_argument("morphism")
    pf.add_argument("moment")
    pf.set_defaults(run=cmd_pushforward)

    for name, fn in (("hom", cmd_hom), ("plus-hom", cmd_plus_hom)):
        h = sub.add_parser(name, help="hom-set sizes", parents=[common])
        h.add_argument("selector")
        h.add_argument("source")
        h.add_argument("target")
        h.add_argument("--list", action="store_true", help="print the morphisms too")
        h.set_defaults(run=fn)

    fo = sub.add_parser("free-operad", help="component sizes of a free operad", parents=[common])
    fo.add_argument("selector")
    fo.add_argument("collection")
    fo.add_argument("--bound", type=bound, required=True)
    fo.add_argument("--max-vertices", type=bound, default=None)
    fo.set_defaults(run=cmd_free_operad)

    e = sub.add_parser("equiv", help="compare Gamma+ with reduced dendrices", parents=[common])
    e.add_argument("which")
    e.add_argument("--edges", type=bound, required=True)
    e.add_argument("--stump-free", action="store_true",
                   help="only targets without stumps below the top level")
    e.set_defaults(run=cmd_equiv)

    d = sub.add_parser("export-dot", help="Graphviz drawing of an object", parents=[common])
    d.add_argument("selector")
    d.add_argument("object")
    d.set_defaults(run=cmd_export_dot)
    return p


def render(payload, pretty: bool) -> str:
    if isinstance(payload, str):
        return payload
    if not pretty:
        return json.dumps({"schema": SCHEMA, **payload}, sort_keys=True)
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if key == "reports":
            for r in val:
                mark = "pass" if r["passed"] else "FAIL"
                lines.append(f"  {r['axiom']:<24} {mark:<5} checked={r['checked']}")
                for ce in r["counterexamples"][:3]:
                    lines.append(f"      witness: {json.dumps(ce)}")
        elif key == "counts":
            lines.append(f"{key:<12} {','.join(map(str, val))}")
        elif isinstance(val, (dict, list)):
            lines.append(f"{key:<12} {json.dumps(val, sort_keys=True)}")
        else:
            lines.append(f"{key:<12} {val}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, payload = args.run(args)
    except (UsageError, NotationError, dendro.DendrixError, hyperkit.TreeError) as exc:
        print(f"momentcat: error: {exc}", file=sys.stderr)
        return 2
    print(render(payload, getattr(args, "pretty", False)))
    return code


if __name__ == "__main__":
    sys.exit(main())
