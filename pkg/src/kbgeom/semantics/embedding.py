"""Embedding container and its JSON form.

Payload kinds per method (``individuals`` / ``concepts`` / ``roles``):

    conv    vector          HPolyhedron(d)          HPolyhedron(2d)
    cone    non-zero vector AlCone                  frozenset of (vector, vector)
    elem    OpenBall (nominal {a})  OpenBall        vector
    emel    same as elem
    elbe    Box (nominal {a})       Box             vector
    boxel   vector          Box                     AffineDiagMap
    box2el  (vector, bump)  (Box, bump)             (head Box, tail Box)
    boxe    (base, bump)    Box                     (Box r1, Box r2)
    expr    vector          (unused)                BandStack
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Mapping

from ..errors import DimensionMismatch, ParseError, PreconditionError
from ..geometry import AffineDiagMap, AlCone, BandStack, Box, HPolyhedron, OpenBall, fmt_q, parse_q

METHODS = ("conv", "cone", "elem", "emel", "elbe", "boxel", "box2el", "boxe", "expr")

METHOD_LANGUAGE = {
    "conv": "ELHI-bot-nf",
    "cone": "ALCp",
    "elem": "ELO-bot-nf",
    "emel": "ELHO-comp-bot-nf",
    "elbe": "ELO-bot-nf",
    "boxel": "ELO-bot-nf",
    "box2el": "ELHO-comp-bot-nf",
    "boxe": "patterns-no-comp",
    "expr": "patterns-full",
}

# methods that only see assertions through their nominal encoding
NOMINAL_METHODS = ("elem", "emel", "elbe", "box2el")


@dataclass(frozen=True)
class Embedding:
    method: str
    dim: int
    individuals: Mapping[str, Any] = field(default_factory=dict)
    concepts: Mapping[str, Any] = field(default_factory=dict)
    roles: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise PreconditionError(f"unknown method {self.method!r}")
        for kind, table in (("individual", self.individuals), ("concept", self.concepts),
                            ("role", self.roles)):
            for name, p in table.items():
                _validate(self.method, kind, self.dim, name, p)

    def ind(self, a: str):
        try:
            return self.individuals[a]
        except KeyError:
            raise PreconditionError(f"embedding has no payload for individual {a}") from None

    def concept(self, c: str):
        try:
            return self.concepts[c]
        except KeyError:
            raise PreconditionError(f"embedding has no payload for concept {c}") from None

    def role(self, r: str):
        try:
            return self.roles[r]
        except KeyError:
            raise PreconditionError(f"embedding has no payload for role {r}") from None

    def replace(self, individuals=None, concepts=None, roles=None) -> "Embedding":
        return Embedding(
            self.method, self.dim,
            dict(self.individuals) if individuals is None else individuals,
            dict(self.concepts) if concepts is None else concepts,
            dict(self.roles) if roles is None else roles,
        )


def _dim_of(p) -> int:
    return p.dim if hasattr(p, "dim") else len(p)


def _validate(method: str, kind: str, d: int, name: str, p) -> None:
    def need(ok, what):
        if not ok:
            raise DimensionMismatch(f"{method} {kind} {name}: {what}")

    if method == "conv":
        need(_dim_of(p) == (2 * d if kind == "role" else d), "wrong dimension")
    elif method == "cone":
        if kind == "individual":
            need(len(p) == d, "wrong dimension")
            need(any(x != 0 for x in p), "individual vectors must be non-zero")
        elif kind == "concept":
            need(isinstance(p, AlCone) and p.dim == d, "expects an al-cone of the embedding dimension")
        else:
            for x, y in p:
                need(len(x) == d and len(y) == d, "pair of wrong dimension")
                need(any(v != 0 for v in x) and any(v != 0 for v in y), "role pairs avoid the origin")
    elif method == "box2el" or (method == "boxe" and kind != "concept"):
        need(all(_dim_of(x) == d for x in p), "wrong dimension")
    else:
        need(_dim_of(p) == d, "wrong dimension")


# ---------------------------------------------------------------- JSON
def _vec_out(v):
    return [fmt_q(x) for x in v]


def _vec_in(xs):
    if not isinstance(xs, list):
        raise ParseError(f"expected a list of numbers, got {xs!r}")
    return tuple(parse_q(x) for x in xs)


def _box_out(b: Box):
    return {"lower": _vec_out(b.lower), "upper": _vec_out(b.upper)}


def _box_in(o) -> Box:
    if "center" in o:
        return Box.from_center(_vec_in(o["center"]), _vec_in(o["offset"]))
    return Box(_vec_in(o["lower"]), _vec_in(o["upper"]))


def _poly_out(p: HPolyhedron):
    return {"rows": [{"coeffs": _vec_out(a), "op": "<" if s else "<=", "bound": fmt_q(b)}
                     for a, s, b in p.rows]}


def _poly_in(o, dim: int) -> HPolyhedron:
    rows = []
    for r in o.get("rows", []):
        op = r.get("op", "<=")
        if op not in ("<", "<="):
            raise ParseError(f"row operator must be < or <=, got {op!r}")
        rows.append((_vec_in(r["coeffs"]), op == "<", parse_q(r["bound"])))
    return HPolyhedron.make(dim, rows)


def _payload_out(method: str, kind: str, p):
    if method == "conv":
        return _vec_out(p) if kind == "individual" else _poly_out(p)
    if method == "cone":
        if kind == "concept":
            return p.comps
        if kind == "role":
            return [[_vec_out(x), _vec_out(y)] for x, y in sorted(p)]
        return _vec_out(p)
    if method in ("elem", "emel"):
        if kind == "role":
            return _vec_out(p)
        return {"center": _vec_out(p.center), "radius": fmt_q(p.radius)}
    if method == "elbe":
        if kind == "role":
            return _vec_out(p)
        return {"center": _vec_out(p.center), "offset": _vec_out(p.offset)}
    if method == "boxel":
        if kind == "individual":
            return _vec_out(p)
        if kind == "concept":
            return _box_out(p)
        return {"diag": _vec_out(p.diag), "offset": _vec_out(p.offset)}
    if method == "box2el":
        if kind == "individual":
            return {"point": _vec_out(p[0]), "bump": _vec_out(p[1])}
        if kind == "concept":
            return {"box": _box_out(p[0]), "bump": _vec_out(p[1])}
        return {"head": _box_out(p[0]), "tail": _box_out(p[1])}
    if method == "boxe":
        if kind == "individual":
            return {"base": _vec_out(p[0]), "bump": _vec_out(p[1])}
        if kind == "concept":
            return _box_out(p)
        return {"head": _box_out(p[0]), "tail": _box_out(p[1])}
    # expr
    if kind == "individual":
        return _vec_out(p)
    if kind == "role":
        if p.params is not None:
            s, c, w = p.params
            return {"slope": _vec_out(s), "center": _vec_out(c), "width": _vec_out(w)}
        return {"slices": [_poly_out(s) for s in p.slices]}
    raise PreconditionError("expr embeddings carry no concept payloads")


def _payload_in(method: str, kind: str, o, d: int):
    if method == "conv":
        if kind == "individual":
            return _vec_in(o)
        return _poly_in(o, 2 * d if kind == "role" else d)
    if method == "cone":
        if kind == "concept":
            return AlCone(o)
        if kind == "role":
            return frozenset((_vec_in(x), _vec_in(y)) for x, y in o)
        return _vec_in(o)
    if method in ("elem", "emel"):
        if kind == "role":
            return _vec_in(o)
        return OpenBall(_vec_in(o["center"]), parse_q(o["radius"]))
    if method == "elbe":
        return _vec_in(o) if kind == "role" else _box_in(o)
    if method == "boxel":
        if kind == "individual":
            return _vec_in(o)
        if kind == "concept":
            return _box_in(o)
        return AffineDiagMap(_vec_in(o["diag"]), _vec_in(o["offset"]))
    if method == "box2el":
        if kind == "individual":
            return (_vec_in(o["point"]), _vec_in(o["bump"]))
        if kind == "concept":
            return (_box_in(o["box"]), _vec_in(o["bump"]))
        return (_box_in(o["head"]), _box_in(o["tail"]))
    if method == "boxe":
        if kind == "individual":
            return (_vec_in(o["base"]), _vec_in(o["bump"]))
        if kind == "concept":
            return _box_in(o)
        return (_box_in(o["head"]), _box_in(o["tail"]))
    if kind == "individual":
        return _vec_in(o)
    if kind == "role":
        if "slices" in o:
            return BandStack(tuple(_poly_in(s, 2) for s in o["slices"]))
        return BandStack.from_bands(_vec_in(o["slope"]), _vec_in(o["center"]), _vec_in(o["width"]))
    raise ParseError("expr embeddings carry no concept payloads")


_KINDS = (("individuals", "individual"), ("concepts", "concept"), ("roles", "role"))


def embedding_to_dict(e: Embedding) -> Dict[str, Any]:
    out: Dict[str, Any] = {"method": e.method, "dim": e.dim}
    for key, kind in _KINDS:
        table = getattr(e, key)
        out[key] = {n: _payload_out(e.method, kind, table[n]) for n in sorted(table)}
    return out


def embedding_from_dict(o: Mapping[str, Any]) -> Embedding:
    try:
        method, d = o["method"], int(o["dim"])
        tables = {}
        for key, kind in _KINDS:
            tables[key] = {n: _payload_in(method, kind, p, d) for n, p in o.get(key, {}).items()}
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DimensionMismatch):
            raise
        raise ParseError(f"malformed embedding document: {exc!r}") from None
    return Embedding(method, d, tables["individuals"], tables["concepts"], tables["roles"])


def dumps_embedding(e: Embedding) -> str:
    return json.dumps(embedding_to_dict(e), indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def loads_embedding(text: str) -> Embedding:
    try:
        o = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return embedding_from_dict(o)


def load_embedding(path: str) -> Embedding:
    with open(path, encoding="utf-8") as fh:
        return loads_embedding(fh.read())


def zero(d: int):
    return (Fraction(0),) * d
