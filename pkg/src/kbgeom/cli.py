"""Command-line entry point.

Every subcommand builds one report dict; ``--json`` prints it and the human
output is rendered from the same dict. Exit codes: 0 success, 1 a violation or
failed check, 2 usage or parse error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .config import Config, load_config
from .errors import KBGeomError, PreconditionError
from .geometry import row_cap_scope

Result = Tuple[Dict, List[str], int]


# ---------------------------------------------------------------- inputs
def resolve(path: str) -> str:
    """``path`` itself when it exists, else a bundled gallery data file of that name."""
    if os.path.exists(path):
        return path
    data = resources.files("kbgeom.gallery").joinpath("data")
    base = os.path.basename(path)
    for name in (base, base + ".json"):
        f = data.joinpath(name)
        if f.is_file():
            return str(f)
    raise PreconditionError(f"no such file: {path}")


def read_text(path: str) -> str:
    with open(resolve(path), encoding="utf-8") as fh:
        return fh.read()


def read_kb(path: str):
    from .kb import parse_kb
    return parse_kb(read_text(path))


def read_embedding(path: str, method: Optional[str] = None):
    from .semantics import loads_embedding
    e = loads_embedding(read_text(path))
    if method is not None and e.method != method:
        raise PreconditionError(f"embedding method is {e.method}, not {method}")
    return e


def read_axioms(texts: Sequence[str], kb) -> List:
    from .kb import parse_axiom
    return [parse_axiom(t, kb.signature) for t in texts]


# ---------------------------------------------------------------- subcommands
def cmd_parse(a, cfg: Config) -> Result:
    from .kb import ser_axiom
    kb = read_kb(a.kb)
    sig = kb.signature
    rep = {"command": "parse", "language": kb.language,
           "signature": {"concepts": list(sig.concepts), "roles": list(sig.roles),
                         "individuals": list(sig.individuals)},
           "tbox": [ser_axiom(x) for x in kb.tbox], "abox": [ser_axiom(x) for x in kb.abox]}
    lines = [f"Language: {kb.language}",
             f"{len(sig.concepts)} concepts, {len(sig.roles)} roles, {len(sig.individuals)} individuals",
             f"{len(kb.tbox)} TBox axioms, {len(kb.abox)} ABox axioms"]
    lines += ["  " + t for t in rep["tbox"] + rep["abox"]]
    return rep, lines, 0


def cmd_reason(a, cfg: Config) -> Result:
    from .reasoner import consistent, entails
    kb = read_kb(a.kb)
    if a.task == "consistent":
        ok = consistent(kb)
        rep = {"command": "reason consistent", "consistent": ok}
        return rep, ["CONSISTENT" if ok else "INCONSISTENT"], 0
    if not a.axiom:
        raise PreconditionError("reason entails needs an axiom")
    (ax,) = read_axioms([a.axiom], kb)
    ok = entails(kb, ax)
    rep = {"command": "reason entails", "axiom": a.axiom, "entailed": ok}
    return rep, ["ENTAILED" if ok else "NOT ENTAILED"], 0


def cmd_check_model(a, cfg: Config) -> Result:
    from .kb import ser_axiom
    from .semantics import is_model, violated
    kb, e = read_kb(a.kb), read_embedding(a.embedding, a.method)
    v = is_model(e, kb)
    rep = {"command": "check-model", "method": a.method, "model": bool(v), "exact": v.exact}
    if v.eps is not None:
        rep["epsilon"] = str(v.eps)
    how = "exact" if v.exact else f"numeric, eps={v.eps}"
    if v:
        return rep, [f"MODEL ({how})"], 0
    bad = [ser_axiom(x) for x in violated(e, kb)]
    rep["violated"] = bad
    return rep, [f"NOT A MODEL ({how})"] + ["  violated: " + t for t in bad], 1


def cmd_audit(a, cfg: Config) -> Result:
    from .auditor.audits import audit_report, audit_soundness_instance, capture_check
    from .kb import ser_axiom
    from .kb.syntax import Pattern
    e = read_embedding(a.embedding, a.method)
    if a.property == "capture":
        kb = read_kb(a.kb)
        pats = [p for p in kb.tbox if isinstance(p, Pattern)]
        cap = capture_check(e, pats, a.tag or kb.language)
        rep = {"command": "audit capture", "method": a.method, "exactly": cap["exactly"],
               "exclusively": cap["exclusively"], "uncaptured": [ser_axiom(p) for p in cap["uncaptured"]]}
        ok = cap["exactly"] and cap["exclusively"]
        lines = [f"exactly: {'yes' if cap['exactly'] else 'no'}",
                 f"exclusively: {'yes' if cap['exclusively'] else 'no'}"]
        lines += ["  not implied: " + t for t in rep["uncaptured"]]
        return rep, lines, 0 if ok else 1
    kb = read_kb(a.kb)
    if a.property == "soundness":
        report = audit_soundness_instance(a.method, e, kb)
    else:
        report = audit_report(a.property, a.method, e, kb, a.scope, a.tag, cfg.enum_cap)
    rep = {"command": f"audit {a.property}", **report.to_dict()}
    return rep, report.lines(), 1 if report.verdict == "refuted" else 0


def cmd_probe(a, cfg: Config) -> Result:
    from .auditor.probe import probe_model, separation_report
    kb = read_kb(a.kb)
    budget = a.budget or cfg.search_budget
    if a.task == "synth":
        report = probe_model(a.method, kb, budget, cfg.seed)
    else:
        neg = read_axioms(a.neg, kb)
        if not neg:
            raise PreconditionError("probe separate needs at least one --neg axiom")
        report = separation_report(a.method, kb, neg, budget, cfg.seed)
    rep = {"command": f"probe {a.task}", **report.to_dict()}
    return rep, report.lines(), 1 if report.verdict == "refuted" else 0


def cmd_matrix_check(a, cfg: Config) -> Result:
    from .auditor.properties import lattice_check, load_matrix
    m = load_matrix(read_text(a.matrix))
    vs = lattice_check(m, finite=a.finite)
    rep = {"command": "matrix-check", "finite": a.finite, "violations": [v.to_dict() for v in vs]}
    lines = [f"VIOLATION {v.method}: {v.premise} yes but {v.conclusion} no (via {' -> '.join(v.path)})"
             for v in vs]
    lines.append("OK: 0 violations" if not vs else f"FAIL: {len(vs)} violations")
    return rep, lines, 1 if vs else 0


def cmd_gallery(a, cfg: Config) -> Result:
    from .gallery import list_cases, run_gallery
    if a.task == "list":
        cases = list_cases()
        rep = {"command": "gallery list", "cases": [{"id": i, "anchor": t} for i, t in cases]}
        return rep, [f"{i:28} {t}" for i, t in cases], 0
    report = run_gallery(a.id, cfg.seed, a.budget or cfg.search_budget)
    rep = {"command": "gallery run", **report.to_dict()}
    return rep, report.lines(), 0 if report.passed else 1


# ---------------------------------------------------------------- wiring
def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--fm-row-cap", type=int, dest="fm_row_cap")
    p.add_argument("--enum-cap", type=int, dest="enum_cap")
    p.add_argument("--search-budget", type=int, dest="search_budget")
    p.add_argument("--epsilon", type=Fraction)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kbgeom", description="Check geometric models of knowledge bases.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a KB file and print its normalized form")
    p.add_argument("kb")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("reason", help="classical consistency and entailment")
    p.add_argument("task", choices=["consistent", "entails"])
    p.add_argument("kb")
    p.add_argument("axiom", nargs="?")
    p.set_defaults(run=cmd_reason)

    p = sub.add_parser("check-model", help="is the embedding a model of the KB")
    p.add_argument("method")
    p.add_argument("kb")
    p.add_argument("embedding")
    p.set_defaults(run=cmd_check_model)

    p = sub.add_parser("audit", help="audit one embedding against a KB")
    p.add_argument("property", choices=["soundness", "entailed", "weak-faithful", "strong-faithful", "capture"])
    p.add_argument("method")
    p.add_argument("kb")
    p.add_argument("embedding")
    p.add_argument("--scope", choices=["ABox", "TBox", "KB"], default="KB")
    p.add_argument("--tag", help="language tag of the audited axioms (default: the KB's)")
    p.set_defaults(run=cmd_audit)

    p = sub.add_parser("probe", help="search for separating models or for a model at all")
    p.add_argument("task", choices=["separate", "synth"])
    p.add_argument("method")
    p.add_argument("kb")
    p.add_argument("--neg", action="append", default=[], help="axiom the model must falsify (repeatable)")
    p.add_argument("--budget", type=int)
    p.set_defaults(run=cmd_probe)

    p = sub.add_parser("matrix-check", help="check a property matrix against the implication lattice")
    p.add_argument("matrix")
    p.add_argument("--finite", action="store_true", help="include the finite-language collapses")
    p.set_defaults(run=cmd_matrix_check)

    p = sub.add_parser("gallery", help="list or run the executable gallery")
    p.add_argument("task", choices=["list", "run"])
    p.add_argument("id", nargs="?", help="case id or glob; all cases when omitted")
    p.add_argument("--budget", type=int)
    p.set_defaults(run=cmd_gallery)

    for p in sub.choices.values():
        _common(p)
    return ap


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    run: Callable[..., Result] = a.run
    try:
        cfg = load_config(a.config, seed=a.seed, fm_row_cap=a.fm_row_cap, enum_cap=a.enum_cap,
                          search_budget=a.search_budget, epsilon=a.epsilon)
        with row_cap_scope(cfg.fm_row_cap):
            rep, lines, code = run(a, cfg)
    except KBGeomError as exc:
        print(f"kbgeom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"kbgeom: {exc}", file=sys.stderr)
        return 2
    if a.json:
        print(json.dumps(rep, indent=2, ensure_ascii=False, default=_json_default))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
