import pytest

from kbgeom.gallery import list_cases, run_gallery
from kbgeom.gallery.cases import (
    BY_ID, CASES, COVERAGE, Context, case_example2, fig3_constraints, load_kb, load_witness, run_case,
)
from kbgeom.reasoner import consistent
from kbgeom.semantics import is_model


def test_coverage_manifest_is_complete():
    keys = set(COVERAGE)
    for n in range(1, 9):
        assert f"example-{n}" in keys
    assert {"figure-3", "table-4", "remark/helly"} <= keys
    for method in ("conv", "cone", "elem", "boxel", "box2el", "boxe", "expr"):
        assert any(k.startswith(f"appendix/{method}/") for k in keys), method
    assert set(COVERAGE.values()) <= set(BY_ID)
    # no orphan cases
    assert set(BY_ID) == set(COVERAGE.values())


def test_case_ids_unique_and_listed():
    ids = [c.id for c in CASES]
    assert len(ids) == len(set(ids))
    assert [i for i, _ in list_cases()] == ids


def test_case_data_files_load():
    for c in CASES:
        if c.kb:
            load_kb(c.kb)
        if c.witness:
            load_witness(c.witness)


def test_fig3_witness_constraint_by_constraint():
    e = load_witness("fig3")
    rows = fig3_constraints(e)
    assert len(rows) == 9
    bad = [name for name, ok in rows if not ok]
    assert bad == []
    kb = load_kb("example4")
    assert is_model(e, kb) and not consistent(kb)


def test_example2_midpoint_certificate():
    checks = case_example2(Context())
    by_name = {c.name: c.ok for c in checks}
    assert by_name["midpoint v⊕v lies in both role regions"]
    assert by_name["conv synthesis finds no model"]
    assert all(by_name.values())


def test_nonexistent_case_gives_empty_report():
    rep = run_gallery("no-such-case")
    assert rep.results == [] and rep.to_dict()["total"] == 0


def test_glob_selection():
    rep = run_gallery("example1*")
    assert {r.id for r in rep.results} == {"example1", "example1-loss"}
    assert rep.passed


@pytest.mark.parametrize("case_id", [c.id for c in CASES])
def test_case_passes(case_id):
    res = run_case(BY_ID[case_id], Context())
    assert res.passed, res.failed


def test_report_is_deterministic():
    a = run_gallery("example[35]").to_dict()
    b = run_gallery("example[35]").to_dict()
    assert a == b
