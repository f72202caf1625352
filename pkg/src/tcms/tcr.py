"""Term-Class Relevance weighting.

For a term t and class C_j the relevance is the product of three ratios
computed from training counts::

    class_weight(j)          = docs in C_j / N
    class_term_weight(t, j)  = docs of C_j containing t / docs containing t
    class_term_density(t, j) = occurrences of t in C_j / occurrences of t

Counts are exact integers; each ratio is a single float division.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyVocabulary, UnknownTerm
from .text_pipeline import build_vocabulary


@dataclass
class CorpusStats:
    """Count tables over a fixed vocabulary.

    ``df`` and ``tf`` are ``(d, K)`` integer arrays whose rows follow ``terms``.
    """

    terms: list
    docs_per_class: np.ndarray
    df: np.ndarray
    tf: np.ndarray

    def __post_init__(self):
        self.index = {t: i for i, t in enumerate(self.terms)}

    @property
    def K(self):
        return len(self.docs_per_class)

    @property
    def N(self):
        return int(self.docs_per_class.sum())

    @property
    def d(self):
        return len(self.terms)

    @property
    def df_total(self):
        return self.df.sum(axis=1)

    @property
    def tf_total(self):
        return self.tf.sum(axis=1)

    def row(self, term):
        try:
            return self.index[term]
        except KeyError:
            raise UnknownTerm(f"term {term!r} is not in the vocabulary") from None

    @classmethod
    def from_corpus(cls, corpus, vocabulary=None):
        if vocabulary is None:
            vocabulary = build_vocabulary(corpus)
        terms = list(vocabulary)
        index = {t: i for i, t in enumerate(terms)}
        K = corpus.K
        df = np.zeros((len(terms), K), dtype=np.int64)
        tf = np.zeros((len(terms), K), dtype=np.int64)
        for doc in corpus.documents:
            j = doc.class_id
            for term, count in doc.terms.items():
                i = index.get(term)
                if i is not None:
                    df[i, j] += 1
                    tf[i, j] += count
        docs_per_class = np.array(corpus.class_sizes(), dtype=np.int64)
        return cls(terms, docs_per_class, df, tf)

    def merge(self, other):
        """Combine stats of two disjoint document partitions over the same vocabulary."""
        if self.terms != other.terms:
            raise ValueError("can only merge stats built over the same vocabulary")
        return CorpusStats(
            self.terms,
            self.docs_per_class + other.docs_per_class,
            self.df + other.df,
            self.tf + other.tf,
        )


def class_weight(stats, j):
    return float(stats.docs_per_class[j]) / stats.N


def class_term_weight(stats, term, j):
    i = stats.row(term)
    return float(stats.df[i, j]) / int(stats.df[i].sum())


def class_term_density(stats, term, j):
    i = stats.row(term)
    return float(stats.tf[i, j]) / int(stats.tf[i].sum())


def tcr(stats, term, j):
    return class_weight(stats, j) * class_term_weight(stats, term, j) * class_term_density(stats, term, j)


@dataclass(frozen=True)
class WeightRecord:
    term: str
    weights: tuple

    @property
    def K(self):
        return len(self.weights)


class WeightMatrix:
    """Relevance weights for every vocabulary term, rows sorted by term."""

    def __init__(self, terms, weights):
        self.terms = list(terms)
        self.weights = np.asarray(weights, dtype=np.float64)
        if self.weights.ndim != 2 or self.weights.shape[0] != len(self.terms):
            raise ValueError("weights must be a (d, K) array matching terms")

    @property
    def d(self):
        return len(self.terms)

    @property
    def K(self):
        return self.weights.shape[1]

    @property
    def records(self):
        return [WeightRecord(t, tuple(row.tolist())) for t, row in zip(self.terms, self.weights)]

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.records)


def weights_from_stats(stats):
    """Vectorized relevance over all terms and classes, same operation order as :func:`tcr`."""
    cw = stats.docs_per_class.astype(np.float64) / stats.N
    ctw = stats.df.astype(np.float64) / stats.df.sum(axis=1, keepdims=True)
    ctd = stats.tf.astype(np.float64) / stats.tf.sum(axis=1, keepdims=True)
    return WeightMatrix(stats.terms, cw[np.newaxis, :] * ctw * ctd)


def compute_weight_matrix(corpus, vocabulary=None):
    if vocabulary is None:
        vocabulary = build_vocabulary(corpus)
    if len(vocabulary) == 0:
        raise EmptyVocabulary("cannot weight an empty vocabulary")
    return weights_from_stats(CorpusStats.from_corpus(corpus, vocabulary))
