"""Translation edit rate with block shifts and per-token weights.

Edits transform the hypothesis into the reference. Deleting a hypothesis
token costs its weight, inserting a reference token costs its weight, a
substitution costs the larger of the two weights, and shifting a block
costs the largest weight inside the block (1 with unit weights). The rate
is the total cost over the weighted reference length.

Shifts are found greedily: every round evaluates each hypothesis block
(up to ``max_shift_size`` tokens) that also occurs in the reference,
moved to every position within ``max_shift_dist``, and applies the one
giving the lowest total cost, until no shift lowers the cost.
"""

from __future__ import annotations

from typing import Sequence

MAX_SHIFT_SIZE = 10
MAX_SHIFT_DIST = 50


def edit_distance(hyp: Sequence, ref: Sequence, hyp_w: Sequence[float] | None = None,
                  ref_w: Sequence[float] | None = None) -> float:
    """Weighted Levenshtein distance (no shifts)."""
    n, m = len(hyp), len(ref)
    hw = hyp_w if hyp_w is not None else [1.0] * n
    rw = ref_w if ref_w is not None else [1.0] * m
    prev = [0.0] * (m + 1)
    for j in range(m):
        prev[j + 1] = prev[j] + rw[j]
    for i in range(n):
        h, w = hyp[i], hw[i]
        cur = [prev[0] + w] + [0.0] * m
        for j in range(m):
            if h == ref[j]:
                sub = prev[j]
            else:
                sub = prev[j] + (w if w > rw[j] else rw[j])
            dele = prev[j + 1] + w
            ins = cur[j] + rw[j]
            best = sub
            if dele < best:
                best = dele
            if ins < best:
                best = ins
            cur[j + 1] = best
        prev = cur
    return prev[m]


def _ref_ngrams(ref, max_size):
    grams = set()
    for i in range(len(ref)):
        for j in range(i + 1, min(len(ref), i + max_size) + 1):
            grams.add(tuple(ref[i:j]))
    return grams


def _shift(seq, i, j, p):
    """Move ``seq[i:j]`` so that it starts at index ``p`` of the remaining sequence."""
    block = seq[i:j]
    rest = seq[:i] + seq[j:]
    return rest[:p] + block + rest[p:]


def shift_candidates(hyp, ref, max_shift_size=MAX_SHIFT_SIZE, max_shift_dist=MAX_SHIFT_DIST):
    """Yield ``(i, j, p)`` shifts of hypothesis blocks that occur in ``ref``."""
    grams = _ref_ngrams(ref, max_shift_size)
    n = len(hyp)
    for i in range(n):
        for j in range(i + 1, min(n, i + max_shift_size) + 1):
            if tuple(hyp[i:j]) not in grams:
                break
            rest_len = n - (j - i)
            for p in range(max(0, i - max_shift_dist), min(rest_len, i + max_shift_dist) + 1):
                if p != i:
                    yield i, j, p


def ter_edits(hyp: Sequence, ref: Sequence, hyp_w: Sequence[float] | None = None,
              ref_w: Sequence[float] | None = None, max_shift_size: int = MAX_SHIFT_SIZE,
              max_shift_dist: int = MAX_SHIFT_DIST) -> tuple[float, float, int]:
    """Return ``(edit cost incl. shifts, weighted reference length, shifts applied)``."""
    hyp = list(hyp)
    ref = list(ref)
    hw = list(hyp_w) if hyp_w is not None else [1.0] * len(hyp)
    rw = list(ref_w) if ref_w is not None else [1.0] * len(ref)
    if len(hw) != len(hyp) or len(rw) != len(ref):
        raise ValueError("weight vectors must match token sequences in length")
    shift_cost = 0.0
    shifts = 0
    cur = edit_distance(hyp, ref, hw, rw)
    while cur > 0:
        best = None
        best_total = cur
        for i, j, p in shift_candidates(hyp, ref, max_shift_size, max_shift_dist):
            cost = max(hw[i:j])
            if cost >= best_total:
                continue
            cand, cand_w = _shift(hyp, i, j, p), _shift(hw, i, j, p)
            total = edit_distance(cand, ref, cand_w, rw) + cost
            if total < best_total:
                best_total, best = total, (cand, cand_w, cost)
        if best is None:
            break
        hyp, hw, cost = best
        shift_cost += cost
        shifts += 1
        cur = best_total - cost
    return cur + shift_cost, float(sum(rw)), shifts


def ter(hypothesis: Sequence, reference: Sequence, hyp_weights: Sequence[float] | None = None,
        ref_weights: Sequence[float] | None = None, **kwargs) -> float:
    """Sentence-level TER (lower is better; report ``1 - ter``)."""
    if not reference:
        raise ValueError("TER needs a non-empty reference")
    edits, ref_len, _ = ter_edits(hypothesis, reference, hyp_weights, ref_weights, **kwargs)
    return edits / ref_len
