import math

import pytest

from termmt.aligner import (
    ALIGNMENT, FIRST, NULL, EquivalentSelector, LexiconAligner, LexiconModel, ParallelCorpus,
    apply_selections, corpus_log_likelihood, parse_model, score_equivalent, select_by_alignment,
    select_first, train_lexicon, write_model,
)
from termmt.errors import ConfigError, InputParseError, NotFittedError
from termmt.termbank import TermEntry

from synth import multi_equivalent_entries, unambiguous_corpus


def flu_corpus():
    fillers = [("the", "la"), ("a", "une"), ("bad", "mauvaise"), ("new", "nouvelle")]
    pairs = []
    for i in range(20):
        s, t = fillers[i % 4]
        pairs.append((["flu", s], [t, "grippe"]))
    return ParallelCorpus(pairs)


def test_unambiguous_cooccurrence():
    model = train_lexicon(flu_corpus(), 5)
    assert model.p("grippe", "flu") > 0.9


def test_single_pair():
    for k in (1, 3, 10):
        model = train_lexicon(ParallelCorpus([(["a"], ["x"])]), k)
        assert model.p("x", "a") == 1.0
        assert model.p("x", NULL) == 1.0


def test_loglik_monotone_and_normalized():
    corpus = unambiguous_corpus(200, seed=1)
    model = train_lexicon(corpus, 8)
    lls = model.log_likelihoods
    assert len(lls) == 9
    assert all(b >= a - 1e-9 for a, b in zip(lls, lls[1:]))
    assert lls[-1] == pytest.approx(corpus_log_likelihood(model, corpus))
    for s, total in model.row_sums().items():
        assert total == pytest.approx(1.0, abs=1e-6)
        assert all(0.0 <= p <= 1.0 for p in model.prob[s].values())


def test_deterministic_training():
    a = train_lexicon(unambiguous_corpus(200, seed=2), 5)
    b = train_lexicon(unambiguous_corpus(200, seed=2), 5)
    assert a.prob.keys() == b.prob.keys()
    for s in a.prob:
        for t, p in a.prob[s].items():
            assert abs(p - b.prob[s][t]) <= 1e-12


def test_training_errors():
    with pytest.raises(ValueError):
        train_lexicon(ParallelCorpus([]), 5)
    with pytest.raises(ConfigError):
        train_lexicon(flu_corpus(), 0)
    with pytest.raises(ValueError):
        ParallelCorpus([([], ["x"])])


def test_score_formula():
    model = LexiconModel({"flu": {"grippe": 1.0}, NULL: {"la": 1.0}})
    assert score_equivalent(model, ["flu"], ["grippe"]) == pytest.approx(math.log(0.5))


def test_score_unseen_floor():
    model = LexiconModel({"flu": {"grippe": 1.0}, NULL: {"la": 1.0}})
    unseen = score_equivalent(model, ["flu"], ["zzz", "yyy"])
    assert unseen == pytest.approx(math.log(1e-9))
    assert unseen < score_equivalent(model, ["flu"], ["la"])
    assert score_equivalent(model, ["flu"], ["grippe", "zzz"]) < score_equivalent(model, ["flu"], ["grippe"])
    assert score_equivalent(model, ["flu"], ["zzz"], floor=1e-3) == pytest.approx(math.log(1e-3))


def test_select_first_table3(table3):
    chosen = [e.targets[select_first(e).rank] for e in table3]
    assert chosen[:2] == ["apparition de maladie", "épidémiologistes"]
    single = TermEntry.from_surfaces(9, "x", ["y"])
    assert select_first(single).rank == 0 and select_first(single).scores == ()


def test_select_first_never_reads_model(table3):
    class Exploding:
        def __getattr__(self, name):
            raise AssertionError("model consulted")

    sel = EquivalentSelector(FIRST, model=Exploding()).fit()
    assert len(sel.select(table3)) == len(table3)


def test_alignment_prefers_seen_singular():
    corpus = ParallelCorpus.from_texts(
        ["the epidemiologist said"] * 10, ["l' épidémiologiste a dit"] * 10
    )
    model = train_lexicon(corpus, 5)
    e = TermEntry.from_surfaces(0, "epidemiologist", ["épidémiologistes", "épidémiologiste"])
    res = select_by_alignment(e, model)
    assert res.rank == 1 and res.strategy == ALIGNMENT
    assert res.scores[1] == max(res.scores)


def test_alignment_single_and_ties():
    class Exploding:
        def __getattr__(self, name):
            raise AssertionError("model consulted")

    assert select_by_alignment(TermEntry.from_surfaces(0, "x", ["y"]), Exploding()).rank == 0
    model = train_lexicon(flu_corpus(), 3)
    assert select_by_alignment(TermEntry.from_surfaces(0, "flu", ["grippe", "grippe"]), model).rank == 0


def test_alignment_recovers_planted():
    model = train_lexicon(unambiguous_corpus(200), 5)
    collection, planted = multi_equivalent_entries()
    for e in collection:
        assert select_by_alignment(e, model).rank == planted[e.id], e


def test_argmax_invariant_under_monotone_transform():
    model = train_lexicon(unambiguous_corpus(200), 5)
    collection, _ = multi_equivalent_entries()
    for e in collection:
        res = select_by_alignment(e, model)
        transformed = [math.exp(s) * 3 + 1 for s in res.scores]
        best = max(range(len(transformed)), key=lambda i: (transformed[i], -i))
        assert best == res.rank


def test_model_persistence_roundtrip():
    model = train_lexicon(unambiguous_corpus(100), 4)
    loaded = parse_model(write_model(model, prune=0.0).splitlines())
    assert loaded.trained_iterations == 4
    for s, row in model.prob.items():
        for t, p in row.items():
            assert loaded.p(t, s) == pytest.approx(p, rel=1e-12)
    pruned = parse_model(write_model(model, prune=1e-3).splitlines())
    for total in pruned.row_sums().values():
        assert total == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(InputParseError):
        parse_model(["a\tb"])


def test_estimators_and_apply(table3):
    aligner = LexiconAligner(iterations=3)
    with pytest.raises(NotFittedError):
        aligner.score(["flu"], ["grippe"])
    aligner.fit(flu_corpus().pairs)
    assert aligner.score(["flu"], ["grippe"]) > aligner.score(["flu"], ["zzz"])
    assert aligner.get_params() == {"iterations": 3, "floor": 1e-9}
    with pytest.raises(ConfigError):
        EquivalentSelector(ALIGNMENT).fit()
    out = EquivalentSelector(FIRST).fit_transform(table3)
    assert all(len(e.equivalents) == 1 for e in out)
    assert out.entries[1].targets == ["épidémiologistes"]
    sel = [select_first(e) for e in table3]
    assert apply_selections(table3, sel) == out
