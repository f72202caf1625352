import pytest
from hypothesis import given
from hypothesis import strategies as st

from tcms import Corpus, PipelineConfig, TermCounts, build_vocabulary, preprocess_document, tokenize
from tcms.exceptions import EmptyVocabulary
from tcms.text_pipeline import builtin_stopwords, filter_stopwords, load_stopwords, stem


class TestTokenize:
    def test_default_rules(self):
        assert tokenize("The B-tree, order 3!", PipelineConfig()) == ["the", "tree", "order"]

    def test_empty(self):
        assert tokenize("", PipelineConfig()) == []

    def test_duplicates_kept_in_order(self):
        assert tokenize("aaa aaa", PipelineConfig()) == ["aaa", "aaa"]

    def test_numbers_kept_when_requested(self):
        cfg = PipelineConfig(drop_numeric=False)
        assert tokenize("route 66 and b52", cfg) == ["route", "66", "and", "b52"]
        assert tokenize("route 66 and b52", PipelineConfig()) == ["route", "and"]

    def test_case_preserved_without_lowercase(self):
        assert tokenize("Alpha beta", PipelineConfig(lowercase=False)) == ["Alpha", "beta"]

    def test_min_length(self):
        assert tokenize("a bb ccc", PipelineConfig(min_token_length=3)) == ["ccc"]
        assert tokenize("a bb ccc", PipelineConfig.bare()) == ["a", "bb", "ccc"]


class TestStopwords:
    @pytest.mark.parametrize(
        "tokens, stop, expected",
        [
            (["the", "tree", "order"], {"the"}, ["tree", "order"]),
            (["tree"], set(), ["tree"]),
            (["the", "the"], {"the"}, []),
        ],
    )
    def test_filter(self, tokens, stop, expected):
        assert filter_stopwords(tokens, PipelineConfig(stopwords=stop)) == expected

    def test_stopwords_case_normalized(self):
        cfg = PipelineConfig(stopwords={"The", "AND"})
        assert cfg.stopwords == {"the", "and"}

    def test_builtin_list(self):
        words = builtin_stopwords()
        assert {"the", "and", "of"} <= words
        assert all(w == w.lower() for w in words)

    def test_file_format(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nThe\n\n  And  \n#ignored\nof\n", encoding="utf-8")
        assert load_stopwords(path) == {"the", "and", "of"}


def test_stem_examples():
    assert stem("relational") == "relat"
    assert stem("tree") == "tree"
    assert stem("sky") == "sky"


class TestPreprocess:
    def test_counts(self):
        tc = preprocess_document("alpha alpha beta", PipelineConfig.bare())
        assert tc == {"alpha": 2, "beta": 1}
        assert tc.total_occurrences == 3

    def test_empty(self):
        tc = preprocess_document("", PipelineConfig())
        assert tc == {} and tc.total_occurrences == 0

    def test_all_stopwords(self):
        assert preprocess_document("The the THE", PipelineConfig.bare(stopwords={"the"})) == {}

    def test_stemming_merges_forms(self):
        cfg = PipelineConfig(stopwords=set())
        assert preprocess_document("connected connecting connection", cfg) == {"connect": 3}

    @given(st.text(max_size=200))
    def test_deterministic(self, text):
        cfg = PipelineConfig()
        assert preprocess_document(text, cfg) == preprocess_document(text, cfg)

    @given(st.text(max_size=100), st.text(max_size=100))
    def test_concatenation_adds_counts(self, a, b):
        cfg = PipelineConfig()
        joined = preprocess_document(a + " " + b, cfg)
        assert joined == preprocess_document(a, cfg) + preprocess_document(b, cfg)

    def test_termcounts_rejects_negative(self):
        with pytest.raises(ValueError):
            TermCounts({"a": -1})


class TestVocabulary:
    def test_tiny4(self, tiny4):
        assert build_vocabulary(tiny4, PipelineConfig.bare()) == ["alpha", "beta", "gamma"]

    def test_tiny4_pruned(self, tiny4):
        assert build_vocabulary(tiny4, PipelineConfig.bare(min_doc_frequency=3)) == ["beta", "gamma"]

    def test_empty_document_corpus(self):
        corpus = Corpus.from_texts([("A", "")], PipelineConfig())
        with pytest.raises(EmptyVocabulary):
            build_vocabulary(corpus)

    @given(
        st.lists(st.tuples(st.sampled_from("AB"), st.text(alphabet="abc d", max_size=30)), min_size=1, max_size=15),
        st.integers(1, 5),
    )
    def test_sorted_unique_and_monotone(self, pairs, min_df):
        corpus = Corpus.from_texts(pairs, PipelineConfig.bare())
        try:
            low = build_vocabulary(corpus, PipelineConfig.bare(min_doc_frequency=min_df))
        except EmptyVocabulary:
            low = []
        try:
            high = build_vocabulary(corpus, PipelineConfig.bare(min_doc_frequency=min_df + 1))
        except EmptyVocabulary:
            high = []
        assert all(a < b for a, b in zip(low, low[1:]))
        assert set(high) <= set(low)


class TestCorpus:
    def test_canonical_class_order(self):
        corpus = Corpus.from_texts([("zeta", "x"), ("alpha", "y"), ("zeta", "z")], PipelineConfig.bare())
        assert corpus.class_names == ("alpha", "zeta")
        assert corpus.labels() == [1, 0, 1]
        assert corpus.N == 3 and corpus.K == 2

    def test_rejects_bad_class_id(self, tiny4):
        with pytest.raises(ValueError):
            Corpus(tiny4.documents, ("A",))

    def test_reprocess(self, tiny4):
        again = tiny4.reprocess(PipelineConfig.bare(min_token_length=6))
        assert all(len(doc.terms) == 0 for doc in again.documents)
