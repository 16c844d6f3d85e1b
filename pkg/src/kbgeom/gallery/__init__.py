"""Executable encodings of the worked examples and constructions."""
from .cases import (
    CASES, COVERAGE, CaseResult, Check, Context, GalleryCase, GalleryReport, fig3_constraints, list_cases,
    load_kb, load_witness, run_gallery,
)
