"""Tokenization, stopword removal, stemming and vocabulary construction."""

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from collections.abc import Mapping
from typing import Iterable, Optional

from .exceptions import CorpusTooSmall, EmptyVocabulary
from .porter import stem as _porter_stem

_ALPHA_RUN = re.compile(r"[^\W\d_]+")
_ALNUM_RUN = re.compile(r"[^\W_]+")


def read_stopword_lines(lines, lowercase=True):
    words = set()
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line.lower() if lowercase else line)
    return frozenset(words)


def load_stopwords(path, lowercase=True):
    """Read a stopword file: UTF-8, one token per line, '#' starts a comment line."""
    with open(path, encoding="utf-8") as fh:
        return read_stopword_lines(fh, lowercase)


@lru_cache(maxsize=1)
def builtin_stopwords():
    text = resources.files("tcms").joinpath("data/stopwords_en.txt").read_text("utf-8")
    return read_stopword_lines(text.splitlines())


@dataclass(frozen=True)
class PipelineConfig:
    lowercase: bool = True
    min_token_length: int = 2
    drop_numeric: bool = True
    stopwords: frozenset = field(default_factory=builtin_stopwords)
    stemming_enabled: bool = True
    min_doc_frequency: int = 1

    def __post_init__(self):
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")
        if self.min_doc_frequency < 1:
            raise ValueError("min_doc_frequency must be >= 1")
        words = frozenset(self.stopwords)
        if self.lowercase:
            words = frozenset(w.lower() for w in words)
        object.__setattr__(self, "stopwords", words)

    @classmethod
    def bare(cls, **overrides):
        """No stopwords, no stemming, single-character tokens kept."""
        params = dict(stopwords=frozenset(), stemming_enabled=False, min_token_length=1)
        params.update(overrides)
        return cls(**params)

    def with_(self, **changes):
        return replace(self, **changes)


class TermCounts(Mapping):
    """Immutable multiset of terms: term -> occurrence count (every count >= 1)."""

    __slots__ = ("_counts", "total_occurrences")

    def __init__(self, counts=()):
        c = {t: int(n) for t, n in dict(counts).items() if n}
        if any(n < 0 for n in c.values()):
            raise ValueError("term counts must be non-negative")
        self._counts = c
        self.total_occurrences = sum(c.values())

    @classmethod
    def from_tokens(cls, tokens):
        return cls(Counter(tokens))

    def __getitem__(self, term):
        return self._counts[term]

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def __add__(self, other):
        merged = Counter(self._counts)
        merged.update(dict(other))
        return TermCounts(merged)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._counts == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self):
        return f"TermCounts({self._counts!r})"


def tokenize(raw_text, config=None):
    """Split text into maximal letter runs (letter/digit runs when numbers are kept).

    >>> tokenize("The B-tree, order 3!", PipelineConfig())
    ['the', 'tree', 'order']
    """
    if config is None:
        config = PipelineConfig()
    pattern = _ALPHA_RUN if config.drop_numeric else _ALNUM_RUN
    if config.lowercase:
        raw_text = raw_text.lower()
    n = config.min_token_length
    return [t for t in pattern.findall(raw_text) if len(t) >= n]


def filter_stopwords(tokens, config):
    stop = config.stopwords
    if not stop:
        return list(tokens)
    return [t for t in tokens if t not in stop]


def stem(token):
    return _porter_stem(token)


def preprocess_document(raw_text, config):
    tokens = filter_stopwords(tokenize(raw_text, config), config)
    if config.stemming_enabled:
        tokens = [stem(t) for t in tokens]
    return TermCounts.from_tokens(tokens)


@dataclass(frozen=True)
class Document:
    doc_id: str
    class_id: int
    terms: TermCounts
    text: Optional[str] = None


@dataclass(frozen=True)
class Corpus:
    """Labeled, preprocessed documents with canonically ordered class names."""

    documents: tuple
    class_names: tuple
    config: Optional[PipelineConfig] = None

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        object.__setattr__(self, "class_names", tuple(self.class_names))
        if len(set(self.class_names)) != len(self.class_names):
            raise ValueError("class names must be unique")
        if list(self.class_names) != sorted(self.class_names):
            raise ValueError("class names must be in lexicographic order")
        k = len(self.class_names)
        for doc in self.documents:
            if not 0 <= doc.class_id < k:
                raise ValueError(f"document {doc.doc_id!r} has class id {doc.class_id} outside 0..{k - 1}")

    @property
    def N(self):
        return len(self.documents)

    @property
    def K(self):
        return len(self.class_names)

    def labels(self):
        return [doc.class_id for doc in self.documents]

    def class_sizes(self):
        sizes = [0] * self.K
        for doc in self.documents:
            sizes[doc.class_id] += 1
        return sizes

    @classmethod
    def from_texts(cls, labeled_texts, config, doc_ids=None):
        """Build a corpus from ``(label, raw_text)`` pairs, preprocessing each text."""
        pairs = list(labeled_texts)
        names = tuple(sorted({label for label, _ in pairs}))
        index = {name: j for j, name in enumerate(names)}
        if doc_ids is None:
            doc_ids = [str(i) for i in range(len(pairs))]
        docs = [
            Document(doc_id, index[label], preprocess_document(text, config), text)
            for doc_id, (label, text) in zip(doc_ids, pairs)
        ]
        return cls(docs, names, config)

    def reprocess(self, config):
        """Re-run preprocessing from the stored raw text under another config."""
        if config == self.config:
            return self
        if any(doc.text is None for doc in self.documents):
            raise ValueError("corpus lacks raw text; cannot re-preprocess")
        docs = [replace(doc, terms=preprocess_document(doc.text, config)) for doc in self.documents]
        return Corpus(docs, self.class_names, config)

    def subset(self, indices, class_names=None):
        """Documents at ``indices``, remapped onto ``class_names`` (default: unchanged)."""
        docs = [self.documents[i] for i in indices]
        if class_names is None:
            return Corpus(docs, self.class_names, self.config)
        new_index = {name: j for j, name in enumerate(class_names)}
        remapped = [replace(d, class_id=new_index[self.class_names[d.class_id]]) for d in docs]
        return Corpus(remapped, class_names, self.config)


def document_frequencies(documents: Iterable[Document]) -> Counter:
    df = Counter()
    for doc in documents:
        df.update(doc.terms.keys())
    return df


def build_vocabulary(corpus, config=None) -> list:
    """Sorted list of terms whose document frequency reaches ``min_doc_frequency``."""
    if config is None:
        config = corpus.config or PipelineConfig.bare()
    df = document_frequencies(corpus.documents)
    vocab = sorted(t for t, n in df.items() if n >= config.min_doc_frequency)
    if not vocab:
        raise EmptyVocabulary(
            f"no term reaches document frequency {config.min_doc_frequency} "
            f"in {corpus.N} documents"
        )
    return vocab


def require_trainable(corpus: Corpus):
    if corpus.K < 2:
        raise CorpusTooSmall(f"training needs at least 2 classes, got {corpus.K}")
    empty = [n for n, size in zip(corpus.class_names, corpus.class_sizes()) if size == 0]
    if empty:
        raise CorpusTooSmall(f"classes without training documents: {', '.join(empty)}")
