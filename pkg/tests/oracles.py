"""Independent brute-force references used to check the metric implementations."""

import itertools
from fractions import Fraction


def levenshtein(a, b):
    """Plain unit-cost edit distance (full matrix)."""
    d = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        d[i][0] = i
    for j in range(len(b) + 1):
        d[0][j] = j
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1]))
    return d[len(a)][len(b)]


def all_block_shifts(seq):
    """Every sequence reachable by moving one contiguous block anywhere else."""
    n = len(seq)
    out = set()
    for i in range(n):
        for j in range(i + 1, n + 1):
            block, rest = seq[i:j], seq[:i] + seq[j:]
            for p in range(len(rest) + 1):
                cand = rest[:p] + block + rest[p:]
                if cand != seq:
                    out.add(cand)
    return out


def exhaustive_ter_edits(hyp, ref):
    """Minimum over all shift sequences of (#shifts + edit distance), unit costs."""
    hyp, ref = tuple(hyp), tuple(ref)
    best = levenshtein(hyp, ref)
    frontier, seen, k = {hyp}, {hyp}, 0
    while frontier and k + 1 < best:
        k += 1
        nxt = set()
        for s in frontier:
            for t in all_block_shifts(s):
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
                    best = min(best, k + levenshtein(t, ref))
        frontier = nxt
    return best


def enumerate_pairs(alphabet="abcd", max_total=6):
    """All (hyp, ref) with non-empty sides and |hyp| + |ref| <= max_total."""
    for lh in range(1, max_total):
        for lr in range(1, max_total - lh + 1):
            for h in itertools.product(alphabet, repeat=lh):
                for r in itertools.product(alphabet, repeat=lr):
                    yield h, r


def hand_bleu(clipped, totals, hyp_len, ref_len):
    """BLEU-4 from hand-counted clipped matches, as an exact fraction before the root."""
    import math

    prod = Fraction(1)
    for m, t in zip(clipped, totals):
        prod *= Fraction(m, t)
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    return 100.0 * bp * float(prod) ** 0.25


def naive_cooccurrence(src_term, tgt_term, pairs, stem_src, stem_tgt):
    """Count sentence pairs containing both stemmed terms, via joined-string search."""

    def contains(sentence, term, stem):
        hay = " " + " ".join(stem(t) for t in sentence) + " "
        needle = " " + " ".join(stem(t) for t in term) + " "
        return needle in hay

    return sum(1 for s, t in pairs if contains(s, src_term, stem_src) and contains(t, tgt_term, stem_tgt))


def check_leftmost_longest(sentence, matches, index, rules):
    """Assert ordering, maximality and completeness of a match list."""
    from termmt.stemmer import stem_sequence

    stems = stem_sequence(sentence, rules)
    keys = index.keys
    last = 0
    covered = set()
    for m in matches:
        assert m.start >= last
        last = m.end
        assert stems[m.start:m.end] in keys
        # nothing longer starts here
        for length in range(m.end - m.start + 1, index.max_key_len + 1):
            assert stems[m.start:m.start + length] not in keys or m.start + length > len(stems)
        covered.update(range(m.start, m.end))
    # an uncovered position can start no key at all
    for i in range(len(stems)):
        if i in covered:
            continue
        for length in range(1, index.max_key_len + 1):
            if i + length <= len(stems):
                assert stems[i:i + length] not in keys


def random_annotation_case(rng):
    """A random sentence with non-overlapping matches and a length budget."""
    from termmt.recognizer import TermMatch

    n = rng.randint(1, 15)
    sentence = [rng.choice(["a", "bb", "c-d", "é", "x1"]) for _ in range(n)]
    matches, i = [], 0
    while i < n:
        if rng.random() < 0.3:
            j = rng.randint(i + 1, min(n, i + 3))
            target = " ".join(rng.choice(["t", "uu", "v"]) for _ in range(rng.randint(1, 3)))
            matches.append(TermMatch(i, j, len(matches), target))
            i = j
        else:
            i += 1
    return sentence, matches, rng.randint(n, n + 8)
