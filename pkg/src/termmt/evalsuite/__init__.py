"""Terminology-aware translation metrics and term coverage analysis."""

from termmt.evalsuite.bleu import bleu
from termmt.evalsuite.coverage import CoverageReport, coverage, occurrence_counts
from termmt.evalsuite.report import EvalReport, evaluate, render_json, render_text
from termmt.evalsuite.ter import edit_distance, ter, ter_edits
from termmt.evalsuite.terms import (
    EXACT, LEMMATIZED, EvalInstance, TermAnnotation, term_accuracy, term_weights, window_overlap,
)

__all__ = [
    "bleu", "CoverageReport", "coverage", "occurrence_counts", "EvalReport", "evaluate",
    "render_json", "render_text", "edit_distance", "ter", "ter_edits", "EXACT", "LEMMATIZED",
    "EvalInstance", "TermAnnotation", "term_accuracy", "term_weights", "window_overlap",
]
