"""Property identifiers, the implication lattice between them, and property matrices.

A matrix cell is ``yes``, ``no``, ``unknown`` or ``conditional``; footnote marks
(†, ‡, ∘) ride along as free text. ``lattice_check`` propagates every ``yes``
through the implication edges and reports each derived property whose cell
says ``no``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..errors import ParseError

SCOPES = ("ABox", "TBox", "KB")


def _pid(q: str, kind: str, scope: str) -> str:
    return f"{q}-{kind}-{scope}"


PROPERTY_IDS: Tuple[str, ...] = (
    ("Soundness", "SoundnessWrtLoss", "Completeness")
    + tuple(_pid(q, "Entailed", s) for q in ("exists", "forall") for s in SCOPES)
    + tuple(_pid(q, k, s) for k in ("Weak", "Strong") for q in ("exists", "forall") for s in SCOPES)
    + tuple(f"Full-{s}" for s in SCOPES)
    + ("Capture-exactly", "Capture-exclusively")
)

MARKS = "†‡∘"

# Edges X -> Y meaning "X implies Y", valid for every language.
Edge = Tuple[str, str]


def _general_edges() -> List[Edge]:
    out: List[Edge] = []
    for kind in ("Entailed", "Weak", "Strong"):
        for s in SCOPES:
            out.append((_pid("forall", kind, s), _pid("exists", kind, s)))
        for q in ("exists", "forall"):
            for s in ("ABox", "TBox"):
                out.append((_pid(q, kind, "KB"), _pid(q, kind, s)))
    for q in ("exists", "forall"):
        for s in SCOPES:
            out.append((_pid(q, "Strong", s), _pid(q, "Weak", s)))
    for s in SCOPES:
        out.append((_pid("exists", "Strong", s), f"Full-{s}"))
    out += [("Full-KB", "Full-ABox"), ("Full-KB", "Full-TBox"), ("Full-KB", "Completeness")]
    for kind in ("Entailed", "Weak", "Strong"):
        for s in SCOPES:
            out.append((_pid("exists", kind, s), "Completeness"))
    # for pattern languages, capturing exactly and exclusively is the ability
    # to be strongly TBox-faithful; the converse direction is a conjunctive rule
    out += [(_pid("exists", "Strong", "TBox"), "Capture-exactly"),
            (_pid("exists", "Strong", "TBox"), "Capture-exclusively")]
    return out


GENERAL_EDGES: Tuple[Edge, ...] = tuple(_general_edges())

# Extra implications that hold when the language is finite.
FINITE_EDGES: Tuple[Edge, ...] = tuple(
    [("Completeness", _pid("exists", "Entailed", s)) for s in SCOPES]
    + [("Full-KB", _pid("exists", "Strong", "KB"))]
)

# Holds only for KBs with an empty TBox; never applied by lattice_check.
CONDITIONAL_EDGES: Tuple[Tuple[str, str, str], ...] = (
    ("Full-ABox", _pid("exists", "Strong", "ABox"), "empty TBox"),
)

# (premises, conclusion): all premises together imply the conclusion.
CONJUNCTIVE_RULES: Tuple[Tuple[Tuple[str, ...], str], ...] = tuple(
    [((_pid("forall", k, "ABox"), _pid("forall", k, "TBox")), _pid("forall", k, "KB"))
     for k in ("Entailed", "Weak", "Strong")]
    + [(("Capture-exactly", "Capture-exclusively"), _pid("exists", "Strong", "TBox"))]
)


def edges(finite: bool) -> Tuple[Edge, ...]:
    return GENERAL_EDGES + (FINITE_EDGES if finite else ())


# ---------------------------------------------------------------- matrix
CELL_VALUES = ("yes", "no", "unknown", "conditional")


@dataclass(frozen=True)
class Cell:
    value: str
    note: str = ""

    def __post_init__(self):
        if self.value not in CELL_VALUES:
            raise ValueError(f"bad cell value {self.value!r}")

    def __str__(self):
        if self.value == "conditional":
            return f"conditional({self.note})"
        return self.value + self.note


def parse_cell(text: str) -> Cell:
    t = text.strip()
    if t.startswith("conditional(") and t.endswith(")"):
        return Cell("conditional", t[len("conditional("):-1])
    marks = ""
    while t and t[-1] in MARKS:
        marks = t[-1] + marks
        t = t[:-1].rstrip()
    word = {"?": "unknown", "": "unknown", "✓": "yes", "✗": "no"}.get(t, t.lower())
    if word not in ("yes", "no", "unknown"):
        raise ParseError(f"bad matrix cell {text!r}")
    return Cell(word, marks)


@dataclass(frozen=True)
class PropertyMatrix:
    methods: Tuple[str, ...]
    properties: Tuple[str, ...]
    cells: Mapping[Tuple[str, str], Cell]
    notes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for p in self.properties:
            if p not in PROPERTY_IDS:
                raise ParseError(f"unknown property column {p!r}")
        for m in self.methods:
            for p in self.properties:
                if (m, p) not in self.cells:
                    raise ParseError(f"matrix is not rectangular: no cell for {m}/{p}")

    def get(self, method: str, prop: str) -> Cell:
        return self.cells.get((method, prop), Cell("unknown"))

    def with_cell(self, method: str, prop: str, value: str) -> "PropertyMatrix":
        cells = dict(self.cells)
        cells[(method, prop)] = Cell(value)
        return replace(self, cells=cells)

    @classmethod
    def from_rows(cls, methods: Sequence[str], properties: Sequence[str],
                  rows: Mapping[str, Sequence[str]], notes: Optional[Mapping[str, str]] = None):
        cells = {}
        for m in methods:
            if len(rows[m]) != len(properties):
                raise ParseError(f"row {m} has {len(rows[m])} cells, expected {len(properties)}")
            for p, t in zip(properties, rows[m]):
                cells[(m, p)] = parse_cell(t)
        return cls(tuple(methods), tuple(properties), cells, dict(notes or {}))


def load_matrix(text: str) -> PropertyMatrix:
    """CSV with a header ``method,<PropertyId>...,note``; the note column is optional."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not rows:
        return PropertyMatrix((), (), {})
    header = [h.strip() for h in rows[0]]
    if not header or header[0] != "method":
        raise ParseError("matrix header must start with 'method'")
    has_note = header[-1] == "note"
    props = header[1:-1] if has_note else header[1:]
    methods, table, notes = [], {}, {}
    for n, r in enumerate(rows[1:], 2):
        if len(r) != len(header):
            raise ParseError(f"matrix row has {len(r)} fields, header has {len(header)}", n)
        m = r[0].strip()
        if m in table:
            raise ParseError(f"duplicate method row {m!r}", n)
        methods.append(m)
        table[m] = r[1:len(props) + 1]
        if has_note and r[-1].strip():
            notes[m] = r[-1].strip()
    return PropertyMatrix.from_rows(methods, props, table, notes)


def dump_matrix(m: PropertyMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["method", *m.properties, "note"])
    for meth in m.methods:
        w.writerow([meth, *(str(m.get(meth, p)) for p in m.properties), m.notes.get(meth, "")])
    return buf.getvalue()


# ---------------------------------------------------------------- lattice check
@dataclass(frozen=True)
class LatticeViolation:
    method: str
    premise: str     # a property marked yes
    conclusion: str  # a property it implies, marked no
    path: Tuple[str, ...]

    def to_dict(self) -> Dict:
        return {"method": self.method, "premise": self.premise, "conclusion": self.conclusion,
                "path": list(self.path)}

    def __str__(self):
        return f"{self.method}: {' -> '.join(self.path)} but {self.conclusion} is no"


def _closure(yes: Iterable[str], finite: bool) -> Dict[str, Tuple[str, ...]]:
    """Every property derivable from ``yes`` with one derivation path each."""
    succ: Dict[str, List[str]] = {}
    for a, b in edges(finite):
        succ.setdefault(a, []).append(b)
    got: Dict[str, Tuple[str, ...]] = {p: (p,) for p in yes}
    queue = list(got)
    while True:
        while queue:
            p = queue.pop(0)
            for q in succ.get(p, ()):
                if q not in got:
                    got[q] = got[p] + (q,)
                    queue.append(q)
        for prem, concl in CONJUNCTIVE_RULES:
            if concl not in got and all(p in got for p in prem):
                got[concl] = got[prem[0]] + (concl,)
                queue.append(concl)
        if not queue:
            return got


def lattice_check(matrix: PropertyMatrix, finite: bool = True) -> List[LatticeViolation]:
    out: List[LatticeViolation] = []
    for m in matrix.methods:
        yes = [p for p in matrix.properties if matrix.get(m, p).value == "yes"]
        got = _closure(yes, finite)
        for p in matrix.properties:
            if p in got and matrix.get(m, p).value == "no":
                path = got[p]
                out.append(LatticeViolation(m, path[0], p, path))
    return out


# ---------------------------------------------------------------- published table
TABLE4_METHODS = ("conv", "cone", "elem", "emel", "elbe", "boxel", "box2el", "boxe", "expr")
TABLE4_PROPERTIES = (
    "Soundness", "Completeness", "forall-Entailed-ABox", "forall-Entailed-TBox",
    "exists-Weak-ABox", "exists-Weak-TBox", "exists-Weak-KB", "forall-Weak-ABox", "forall-Weak-TBox",
    "exists-Strong-ABox", "exists-Strong-TBox", "exists-Strong-KB", "forall-Strong-ABox",
    "forall-Strong-TBox", "Full-ABox", "Full-TBox",
)

_N16 = ["no"] * 16
TABLE4_ROWS = {
    "conv": ["yes"] * 9 + ["yes†", "yes†", "yes†", "no", "no", "yes", "yes†"],
    "cone": ["yes", "yes", "yes‡", "yes‡", "yes", "yes‡", "yes‡", "yes", "?",
             "yes", "yes‡", "yes‡", "no", "no", "yes", "yes‡"],
    "elem": list(_N16),
    "emel": list(_N16),
    "elbe": list(_N16),
    "boxel": ["yes"] + ["no"] * 15,
    "box2el": ["no"] * 14 + ["yes", "no"],
    "boxe": ["yes"] + ["no"] * 13 + ["yes", "yes"],
    "expr": ["yes"] + ["no"] * 13 + ["yes", "yes∘"],
}
TABLE4_NOTES = {
    "conv": "ELHI-bot in normal form; † shown for ELH",
    "cone": "ALC_r; ‡ results for ALC_p",
    "elem": "ELO-bot in normal form",
    "emel": "ELHO(comp)-bot in normal form",
    "elbe": "ELO-bot in normal form",
    "boxel": "ELO-bot in normal form",
    "box2el": "ELHO(comp)-bot in normal form",
    "boxe": "patterns without composition",
    "expr": "patterns; ∘ for positive patterns",
}


def table4() -> PropertyMatrix:
    return PropertyMatrix.from_rows(TABLE4_METHODS, TABLE4_PROPERTIES, TABLE4_ROWS, TABLE4_NOTES)


# Single-cell edits of the published table, each of which breaks the lattice.
TABLE4_MUTATIONS: Tuple[Tuple[str, str, str], ...] = (
    ("elem", "exists-Strong-KB", "yes"),
    ("conv", "Completeness", "no"),
    ("boxe", "forall-Strong-ABox", "yes"),
    ("cone", "Full-ABox", "no"),
    ("conv", "exists-Weak-TBox", "no"),
    ("expr", "forall-Entailed-ABox", "yes"),
    ("cone", "exists-Strong-ABox", "no"),
    ("conv", "exists-Weak-ABox", "no"),
    ("boxel", "exists-Strong-TBox", "yes"),
    ("cone", "Full-TBox", "no"),
)


def mutate(m: PropertyMatrix, mutation: Tuple[str, str, str]) -> PropertyMatrix:
    return m.with_cell(*mutation)
