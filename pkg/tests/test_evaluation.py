import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import confusion_metrics
from tcms import Corpus, PipelineConfig, SplitSpec, datasets, run_protocol, score, split
from tcms.evaluation import METRICS, format_float
from tcms.exceptions import CorpusTooSmall, EmptyVocabulary


def corpus_with_sizes(sizes):
    pairs = []
    for j, n in enumerate(sizes):
        pairs += [(f"c{j}", f"word{j} doc{i}") for i in range(n)]
    return Corpus.from_texts(pairs, PipelineConfig.bare())


class TestSplit:
    def test_stratified_counts_and_determinism(self):
        corpus = corpus_with_sizes([10, 10, 10, 10])
        train, test = split(corpus, SplitSpec(0.8, seed=7))
        assert train.class_sizes() == [8, 8, 8, 8]
        assert test.class_sizes() == [2, 2, 2, 2]
        again = split(corpus, SplitSpec(0.8, seed=7))
        assert [d.doc_id for d in again[0].documents] == [d.doc_id for d in train.documents]
        other = split(corpus, SplitSpec(0.8, seed=8))
        assert [d.doc_id for d in other[0].documents] != [d.doc_id for d in train.documents]

    def test_partition(self):
        corpus = corpus_with_sizes([13, 7, 21])
        train, test = split(corpus, SplitSpec(0.3, seed=1))
        ids = [d.doc_id for d in train.documents] + [d.doc_id for d in test.documents]
        assert sorted(ids) == sorted(d.doc_id for d in corpus.documents)
        assert len(set(ids)) == len(ids)

    def test_tiny4_half(self, tiny4):
        train, test = split(tiny4, SplitSpec(0.5, seed=0))
        assert train.class_sizes() == [1, 1] and test.class_sizes() == [1, 1]

    @pytest.mark.parametrize("fraction", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8])
    def test_ceil_without_float_noise(self, fraction):
        corpus = corpus_with_sizes([10, 10])
        train, _ = split(corpus, SplitSpec(fraction, seed=0))
        assert train.class_sizes() == [round(fraction * 10)] * 2

    def test_at_least_one_each_side(self):
        corpus = corpus_with_sizes([2, 3])
        for f in (0.01, 0.99):
            train, test = split(corpus, SplitSpec(f, seed=0))
            assert min(train.class_sizes()) >= 1 and min(test.class_sizes()) >= 1

    def test_min_class_docs_drops_small_class(self):
        corpus = corpus_with_sizes([3, 6, 8])
        train, test = split(corpus, SplitSpec(0.5, seed=0, min_class_docs=5))
        assert train.class_names == ("c1", "c2") == test.class_names
        assert sum(train.class_sizes()) + sum(test.class_sizes()) == 14

    def test_too_small(self):
        with pytest.raises(CorpusTooSmall):
            split(corpus_with_sizes([1, 5]), SplitSpec(0.5))
        with pytest.raises(CorpusTooSmall):
            split(corpus_with_sizes([3, 6]), SplitSpec(0.5, min_class_docs=5))

    def test_unstratified(self):
        corpus = corpus_with_sizes([10, 10])
        train, test = split(corpus, SplitSpec(0.5, seed=3, stratified=False))
        assert train.N == 10 and test.N == 10

    def test_bad_fraction(self):
        with pytest.raises(ValueError):
            SplitSpec(1.0)


class TestScore:
    def test_perfect(self):
        s = score([(0, 0), (1, 1), (2, 2)], 3)
        assert all(v == 1.0 for v in s.metrics().values())

    def test_hand_example(self):
        s = score([(0, 0), (0, 1), (1, 1), (1, 1)], 2)
        assert s.micro_f == 0.75 and s.accuracy == 0.75
        assert s.precision == [1.0, pytest.approx(2 / 3)]
        assert s.recall == [0.5, 1.0]
        assert s.f1 == [pytest.approx(2 / 3), pytest.approx(0.8)]
        assert s.macro_f == pytest.approx(11 / 15, abs=1e-15)

    def test_constant_predictor(self):
        s = score([(0, 0), (0, 0), (1, 0), (1, 0)], 2)
        assert s.micro_f == 0.5
        assert s.macro_f == pytest.approx(1 / 3, abs=1e-15)

    def test_macro_over_present_classes_only(self):
        # class 2 never occurs in the truth labels; it must not add a zero to the macro mean
        s = score([(0, 0), (1, 1), (1, 2)], 3)
        assert s.present == [0, 1]
        assert s.macro_r == pytest.approx((1.0 + 0.5) / 2)

    @pytest.mark.parametrize("seed", range(100))
    def test_against_confusion_oracle(self, seed):
        rng = random.Random(seed)
        K = rng.randint(2, 6)
        pairs = [(rng.randrange(K), rng.randrange(K)) for _ in range(rng.randint(1, 60))]
        s = score(pairs, K)
        ref = confusion_metrics(pairs, K)
        assert s.tp == ref["tp"] and s.fp == ref["fp"] and s.fn == ref["fn"]
        for name in ("macro_p", "macro_r", "macro_f", "accuracy"):
            assert getattr(s, name) == pytest.approx(float(ref[name]), abs=1e-12)
        for name in ("precision", "recall", "f1"):
            assert getattr(s, name) == pytest.approx([float(x) for x in ref[name]], abs=1e-12)
        assert s.micro_f == pytest.approx(float(ref["accuracy"]), abs=1e-12)

    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=80))
    def test_properties(self, pairs):
        s = score(pairs, 5)
        assert s.micro_p == pytest.approx(s.accuracy) and s.micro_r == pytest.approx(s.accuracy)
        assert s.micro_f == pytest.approx(s.accuracy)
        for v in s.metrics().values():
            assert 0.0 <= v <= 1.0
        present_f = [s.f1[j] for j in s.present]
        assert min(present_f) - 1e-12 <= s.macro_f <= max(present_f) + 1e-12

    @given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=50), st.permutations(range(4)))
    def test_macro_invariant_under_relabeling(self, pairs, perm):
        a = score(pairs, 4)
        b = score([(perm[t], perm[p]) for t, p in pairs], 4)
        for m in ("macro_p", "macro_r", "macro_f"):
            assert getattr(a, m) == pytest.approx(getattr(b, m), abs=1e-12)

    def test_empty(self):
        with pytest.raises(ValueError):
            score([], 2)


class TestProtocol:
    def test_tiny4_smoke(self, tiny4):
        report = run_protocol(tiny4, [0.5], trials=1, base_seed=0, pipeline=PipelineConfig.bare(), order=3)
        assert len(report.rows) == 1
        for v in report.rows[0].scores.metrics().values():
            assert 0.0 <= v <= 1.0

    def test_shape_of_full_grid(self):
        corpus = datasets.synthetic(n_per_class=20)
        fractions = [round(0.1 * i, 1) for i in range(1, 9)]
        report = run_protocol(corpus, fractions, trials=10, base_seed=5)
        assert len(report.rows) == 80
        csv_lines = report.to_csv().splitlines()
        assert len(csv_lines) == 1 + 80 + 8
        assert csv_lines[0] == "fraction,trial,macro_p,macro_r,macro_f,micro_p,micro_r,micro_f,accuracy"
        assert sum(1 for line in csv_lines if ",avg," in line) == 8
        assert [r.seed for r in report.rows[:10]] == list(range(5, 15))
        for r in report.rows:
            assert r.scores.micro_f == pytest.approx(r.scores.accuracy)

    def test_deterministic(self):
        corpus = datasets.synthetic(n_per_class=15)
        a = run_protocol(corpus, [0.3, 0.6], trials=3, base_seed=11)
        b = run_protocol(corpus, [0.3, 0.6], trials=3, base_seed=11)
        assert a.to_csv() == b.to_csv()
        assert a.to_text() == b.to_text()

    def test_error_annotated(self):
        corpus = corpus_with_sizes([4, 4])
        with pytest.raises(EmptyVocabulary) as info:
            run_protocol(corpus, [0.5], trials=2, pipeline=PipelineConfig.bare(min_doc_frequency=50))
        assert info.value.fraction == 0.5 and info.value.trial == 0
        assert "fraction=0.5, trial=0" in str(info.value)

    def test_averages(self):
        corpus = datasets.synthetic(n_per_class=15)
        report = run_protocol(corpus, [0.5], trials=4, base_seed=0)
        avg = report.averages()[0.5]
        for m in METRICS:
            assert avg[m] == pytest.approx(sum(getattr(r.scores, m) for r in report.rows) / 4)


@pytest.mark.parametrize("x, text", [(0.5, "0.5"), (0.0, "0"), (1.0, "1"), (0.1, "0.1"), (1 / 3, "0.3333333333333333"), (1e-05, "1e-05")])
def test_format_float(x, text):
    assert format_float(x) == text
    assert float(text) == x
