"""Dynamic terminology integration toolkit for machine translation."""

__version__ = "0.1.0"

from termmt.termbank import (
    TargetEquivalent,
    TermCollection,
    TermEntry,
    parse_term_collection,
    write_term_collection,
)
from termmt.stemmer import StemmerRuleSet, load_stemmer, stem
from termmt.tokenize import tokenize
from termmt.filters import TermFilter, run_filter_pipeline
from termmt.aligner import EquivalentSelector, LexiconAligner, LexiconModel, train_lexicon
from termmt.recognizer import TermRecognizer, build_index, recognize
from termmt.annotator import TLAAnnotator, annotate_inference, strip_annotation

__all__ = [
    "TargetEquivalent",
    "TermCollection",
    "TermEntry",
    "parse_term_collection",
    "write_term_collection",
    "StemmerRuleSet",
    "load_stemmer",
    "stem",
    "tokenize",
    "TermFilter",
    "run_filter_pipeline",
    "EquivalentSelector",
    "LexiconAligner",
    "LexiconModel",
    "train_lexicon",
    "TermRecognizer",
    "build_index",
    "recognize",
    "TLAAnnotator",
    "annotate_inference",
    "strip_annotation",
]
