from pathlib import Path

import pytest

from termmt.stemmer import StemmerRuleSet, load_stemmer
from termmt.termbank import parse_term_collection

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def table1():
    return parse_term_collection((FIXTURES / "table1.tsv").read_text("utf-8"), "mul", "mul")


@pytest.fixture
def table2():
    return parse_term_collection((FIXTURES / "table2.tsv").read_text("utf-8"), "mul", "mul")


@pytest.fixture
def table3():
    return parse_term_collection((FIXTURES / "table3.tsv").read_text("utf-8"), "en", "fr")


@pytest.fixture
def en():
    return load_stemmer("en")


@pytest.fixture
def strip_s():
    """The minimal English rule set: strip a final 's' if 3+ characters remain."""
    return StemmerRuleSet("en", (("s", "", 3),), min_stem_length=1)
