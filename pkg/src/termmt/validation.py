"""Input validation helpers shared by the estimators."""

from __future__ import annotations

import math
from typing import Sequence

from termmt.errors import ConfigError, NotFittedError


def check_fitted(estimator, *attributes) -> None:
    missing = [a for a in attributes if not hasattr(estimator, a)]
    if missing:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit before using it "
            f"(missing {', '.join(missing)})"
        )


def check_threshold(value) -> float:
    value = float(value)
    if math.isnan(value) or value < 0:
        raise ConfigError(f"threshold must be >= 0, got {value}")
    return value


def check_probability(value, name="rate") -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must be in [0, 1], got {value}")
    return value


def check_positive_int(value, name) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ConfigError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_tokens(tokens, name="tokens") -> list[str]:
    """Accept a token list/tuple; reject bare strings (a common mistake)."""
    if isinstance(tokens, str):
        raise TypeError(f"{name} must be a token sequence, not a string; tokenize it first")
    tokens = list(tokens)
    for tok in tokens:
        if not isinstance(tok, str) or not tok:
            raise ValueError(f"{name} must contain non-empty strings, got {tok!r}")
    return tokens


def check_collection(collection) -> None:
    from termmt.termbank import TermCollection

    if not isinstance(collection, TermCollection):
        raise TypeError(f"expected TermCollection, got {type(collection).__name__}")


def check_span(span: Sequence[int], length: int) -> tuple[int, int]:
    start, end = span
    if not 0 <= start < end <= length:
        raise ValueError(f"span [{start}, {end}) invalid for sequence of length {length}")
    return start, end
