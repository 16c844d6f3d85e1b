import json
import os
import subprocess
import sys

import pytest

from kbgeom.cli import main
from kbgeom.config import Config, load_config
from kbgeom.errors import PreconditionError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_model_example1(capsys):
    code, out, _ = run(capsys, "check-model", "elem", "example1.kb", "example1.emb")
    assert code == 0 and out.strip() == "MODEL (exact)"


def test_check_model_violation_exit_code(capsys):
    code, out, _ = run(capsys, "check-model", "conv", "example2.kb", "example2.emb")
    assert code == 1 and out.startswith("NOT A MODEL")
    assert "violated: SubRoleOfNeg(r1 r2)" in out


def test_reason(capsys):
    code, out, _ = run(capsys, "reason", "consistent", "example1.kb")
    assert code == 0 and out.strip() == "INCONSISTENT"
    code, out, _ = run(capsys, "reason", "consistent", "example3.kb")
    assert out.strip() == "CONSISTENT"
    code, out, _ = run(capsys, "reason", "entails", "hierarchy.kb", "Assert(B a)")
    assert code == 0 and out.strip() in ("ENTAILED", "NOT ENTAILED")


def test_matrix_check(capsys, tmp_path):
    code, out, _ = run(capsys, "matrix-check", "table4.csv", "--finite")
    assert code == 0 and out.strip().endswith("OK: 0 violations")
    from kbgeom.auditor.properties import dump_matrix, mutate, table4
    bad = tmp_path / "bad.csv"
    bad.write_text(dump_matrix(mutate(table4(), ("elem", "exists-Strong-KB", "yes"))))
    code, out, _ = run(capsys, "matrix-check", str(bad), "--finite")
    assert code == 1 and "FAIL" in out and "VIOLATION elem" in out


def test_audit_and_probe(capsys):
    code, out, _ = run(capsys, "audit", "soundness", "elem", "example1.kb", "example1.emb")
    assert code == 1 and "refuted" in out
    code, _, _ = run(capsys, "audit", "entailed", "box2el", "example4-mod.kb", "fig3.emb", "--scope", "ABox")
    assert code == 1
    code, _, _ = run(capsys, "probe", "synth", "boxe", "example3.kb", "--budget", "100")
    assert code == 1
    code, _, _ = run(capsys, "probe", "separate", "elem", "elem-cycle.kb", "--neg", "Assert(r a a)")
    assert code == 1


def test_gallery_verbs(capsys):
    code, out, _ = run(capsys, "gallery", "list")
    assert code == 0 and "example4" in out
    code, out, _ = run(capsys, "gallery", "run", "example1")
    assert code == 0 and "1/1 cases passed" in out
    code, out, _ = run(capsys, "gallery", "run", "nothing-here")
    assert code == 0 and "0/0 cases passed" in out


@pytest.mark.parametrize("argv", [
    ["parse", "example4.kb"],
    ["reason", "consistent", "example1.kb"],
    ["reason", "entails", "hierarchy.kb", "SubClassOf(A B)"],
    ["check-model", "box2el", "example4.kb", "fig3.emb"],
    ["audit", "soundness", "box2el", "example4.kb", "fig3.emb"],
    ["audit", "strong-faithful", "conv", "hierarchy.kb", "hierarchy.emb"],
    ["audit", "weak-faithful", "conv", "hierarchy.kb", "hierarchy.emb"],
    ["audit", "entailed", "conv", "hierarchy.kb", "hierarchy.emb"],
    ["probe", "separate", "boxe", "example3.kb", "--neg", "Assert(r a c)"],
    ["probe", "synth", "elbe", "hierarchy.kb"],
    ["matrix-check", "table4.csv", "--finite"],
    ["gallery", "list"],
    ["gallery", "run", "example3"],
])
def test_json_on_every_subcommand(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    rep = json.loads(out)
    assert isinstance(rep, dict) and rep.get("command", "").split()[0] == argv[0]
    code2, out2, _ = run(capsys, *argv, "--json")
    assert (code, out) == (code2, out2)


def test_capture_subcommand(capsys, tmp_path):
    kb = tmp_path / "sym.kb"
    kb.write_text("Language: patterns-full\nRoles: r\nPattern(Symmetry r)\n")
    emb = tmp_path / "sym.json"
    emb.write_text(json.dumps({"method": "expr", "dim": 1, "individuals": {}, "concepts": {},
                               "roles": {"r": {"slope": ["1"], "center": ["0"], "width": ["2"]}}}))
    code, out, _ = run(capsys, "audit", "capture", "expr", str(kb), str(emb), "--json")
    rep = json.loads(out)
    assert rep["exactly"] and rep["exclusively"] and code == 0


def test_usage_and_parse_errors(capsys, tmp_path):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
    bad = tmp_path / "bad.kb"
    bad.write_text("SubClassOf(A\n")
    code, _, err = run(capsys, "parse", str(bad))
    assert code == 2 and "ParseError" in err
    code, _, err = run(capsys, "parse", str(tmp_path / "missing.kb"))
    assert code == 2
    code, _, err = run(capsys, "check-model", "conv", "example1.kb", "example1.emb")
    assert code == 2 and "method" in err


def test_resource_cap_exit_code(capsys):
    code, _, err = run(capsys, "audit", "strong-faithful", "conv", "hierarchy.kb", "hierarchy.emb", "--enum-cap", "3")
    assert code == 3 and "ResourceCapError" in err


def test_config_file_and_seed_override(tmp_path, monkeypatch):
    cfg = tmp_path / "kbgeom.conf"
    cfg.write_text("# settings\nseed = 4\nsearch_budget=50\nepsilon = 1/1000\n")
    monkeypatch.delenv("KBGEOM_SEED", raising=False)
    c = load_config(str(cfg))
    assert (c.seed, c.search_budget, str(c.epsilon)) == (4, 50, "1/1000")
    monkeypatch.setenv("KBGEOM_SEED", "9")
    assert load_config(str(cfg)).seed == 9
    assert load_config(str(cfg), seed=1).seed == 1
    monkeypatch.setenv("KBGEOM_SEED", "nine")
    with pytest.raises(PreconditionError):
        load_config()
    monkeypatch.delenv("KBGEOM_SEED")
    assert load_config() == Config()
    cfg.write_text("fm_row_cap = 0\n")
    with pytest.raises(PreconditionError):
        load_config(str(cfg))
    cfg.write_text("colour = blue\n")
    with pytest.raises(PreconditionError):
        load_config(str(cfg))


def _cli(*argv, env=None):
    e = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "kbgeom.cli", *argv], capture_output=True, env=e, check=False)


def test_json_output_byte_identical_across_processes():
    argv = ["probe", "separate", "elem", "example5.kb", "--neg", "Assert(B c)", "--seed", "5", "--json"]
    a, b = _cli(*argv), _cli(*argv)
    assert a.returncode == b.returncode and a.stdout == b.stdout and a.stdout
    c, d = _cli(*argv, env={"KBGEOM_SEED": "3"}), _cli(*argv, env={"KBGEOM_SEED": "3"})
    assert c.stdout == d.stdout
