"""Text notation for objects and morphisms of the shipped skeletons.

Gamma: ``[{1,2}|{}|{3}] : 3 -> 3``      Delta: ``(0,1,1) : [2] -> [2]``
Wreath objects are nested lists ``[2,[1,3]]``; wreath morphisms are JSON objects
``{"base": ..., "components": {"1,1": ..., ...}}``.
"""
from __future__ import annotations

import json
import re

from .delta import Delta, DeltaMorphism
from .gamma import Gamma, GammaMorphism
from .wreath import Wreath, WreathMorphism


class NotationError(ValueError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        where = f" at column {position + 1}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}")


_GAMMA = re.compile(r"^\s*\[(?P<inner>[^\]]*)\]\s*:\s*(?P<m>\d+)\s*->\s*(?P<n>\d+)\s*$")
_DELTA = re.compile(r"^\s*\((?P<vals>[^)]*)\)\s*:\s*\[(?P<m>\d+)\]\s*->\s*\[(?P<n>\d+)\]\s*$")
_SUBSET = re.compile(r"\{([^}]*)\}")


def _ints(body: str, text: str, offset: int) -> list:
    """Comma separated integers; offset locates body inside text for errors."""
    bad = _first_bad(body, ",0123456789 ")
    if bad is not None:
        raise NotationError("expected integers", text, offset + bad)
    try:
        return [int(x) for x in body.split(",") if x.strip()]
    except ValueError:
        raise NotationError("empty entry", text, offset) from None


def parse_gamma(text: str) -> GammaMorphism:
    m = _GAMMA.match(text)
    if not m:
        raise NotationError("expected [{..}|..] : m -> n", text, _first_bad(text, "[{},|0123456789 :->"))
    inner = m.group("inner").strip()
    subsets = []
    if inner:
        for part in inner.split("|"):
            sm = _SUBSET.fullmatch(part.strip())
            if not sm:
                start = text.find(part)
                bad = _first_bad(part, "{},0123456789 ")
                raise NotationError("malformed subset", text, start + (bad or 0))
            subsets.append(_ints(sm.group(1), text, text.find(part) + part.find("{") + 1))
    src, tgt = int(m.group("m")), int(m.group("n"))
    if len(subsets) != src:
        raise NotationError(f"{len(subsets)} subsets but source {src}", text, m.start("m"))
    try:
        return GammaMorphism.from_subsets(subsets, tgt)
    except ValueError as e:
        raise NotationError(str(e), text, m.start("inner")) from None


def parse_delta(text: str) -> DeltaMorphism:
    m = _DELTA.match(text)
    if not m:
        raise NotationError("expected (v0,..,vm) : [m] -> [n]", text, _first_bad(text, "(),[]0123456789 :->"))
    vals = tuple(_ints(m.group("vals"), text, m.start("vals")))
    src, tgt = int(m.group("m")), int(m.group("n"))
    if len(vals) != src + 1:
        raise NotationError(f"{len(vals)} values but source [{src}]", text, m.start("vals"))
    try:
        return DeltaMorphism(tgt, vals)
    except ValueError as e:
        raise NotationError(str(e), text, m.start("vals")) from None


def _first_bad(text, allowed):
    for k, ch in enumerate(text):
        if ch not in allowed:
            return k
    pairs = {")": "(", "]": "[", "}": "{"}
    stack = []
    for k, ch in enumerate(text):
        if ch in "([{":
            stack.append((ch, k))
        elif ch in pairs:
            if not stack or stack[-1][0] != pairs[ch]:
                return k
            stack.pop()
    if stack:
        return stack[-1][1]
    return None


def parse_object(C, text):
    if isinstance(C, Gamma):
        try:
            return int(text.strip())
        except ValueError:
            raise NotationError("expected a cardinal", text, 0) from None
    if isinstance(C, Delta):
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        try:
            return int(s)
        except ValueError:
            raise NotationError("expected [n]", text, 0) from None
    if isinstance(C, Wreath):
        try:
            data = json.loads(text) if isinstance(text, str) else text
        except json.JSONDecodeError as e:
            raise NotationError("malformed nested list", text, e.pos) from None
        return object_from_data(C, data)
    raise NotationError(f"no notation for objects of {C.name}", str(text))


def object_from_data(C, data):
    if isinstance(C, Wreath):
        if not (isinstance(data, list) and len(data) == 2 and isinstance(data[1], list)):
            raise NotationError("wreath objects are [base, [family]]", json.dumps(data))
        a = object_from_data(C.C, data[0])
        fam = tuple(object_from_data(C.D, b) for b in data[1])
        if len(fam) != C.C.cardinality(a):
            raise NotationError(f"family has {len(fam)} members, base has cardinality "
                                f"{C.C.cardinality(a)}", json.dumps(data))
        return (a, fam)
    if isinstance(data, int):
        return data
    if isinstance(data, str):
        return parse_object(C, data)
    raise NotationError("unexpected object data", json.dumps(data))


def object_to_data(C, obj):
    if isinstance(C, Wreath):
        a, fam = obj
        return [object_to_data(C.C, a), [object_to_data(C.D, b) for b in fam]]
    return obj


def format_object(C, obj) -> str:
    if isinstance(C, Wreath):
        return json.dumps(object_to_data(C, obj), separators=(",", ":"))
    if isinstance(C, Delta):
        return f"[{obj}]"
    return str(obj)


def parse_morphism(C, text):
    if isinstance(C, Gamma):
        return parse_gamma(text)
    if isinstance(C, Delta):
        return parse_delta(text)
    if isinstance(C, Wreath):
        try:
            data = json.loads(text) if isinstance(text, str) else text
        except json.JSONDecodeError as e:
            raise NotationError("malformed wreath morphism", text, e.pos) from None
        return morphism_from_data(C, data)
    raise NotationError(f"no notation for morphisms of {C.name}", str(text))


def morphism_from_data(C, data):
    if isinstance(C, Wreath):
        base = morphism_from_data(C.C, data["base"])
        src = object_from_data(C, data["source"])
        tgt = object_from_data(C, data["target"])
        comps = {}
        for key, val in data.get("components", {}).items():
            a, b = (int(x) for x in key.split(","))
            comps[(a, b)] = morphism_from_data(C.D, val)
        expected = {(a, b) for a, blk in enumerate(C.C.gamma(base).blocks, 1) for b in blk}
        if set(comps) != expected:
            raise NotationError("component index set does not match the base morphism", json.dumps(data))
        return WreathMorphism(src, tgt, base, tuple(sorted(comps.items())))
    return parse_morphism(C, data)


def morphism_to_data(C, f):
    if isinstance(C, Wreath):
        return {"source": object_to_data(C, f.source), "target": object_to_data(C, f.target),
                "base": morphism_to_data(C.C, f.base),
                "components": {f"{a},{b}": morphism_to_data(C.D, g) for (a, b), g in f.comps}}
    return format_morphism(C, f)


def format_morphism(C, f) -> str:
    if isinstance(C, Wreath):
        return json.dumps(morphism_to_data(C, f), separators=(",", ":"))
    return str(f)


def compact(text: str) -> str:
    """Notation without spaces, e.g. ``[{1,2}]:1->2``."""
    return re.sub(r"\s+", "", text)
