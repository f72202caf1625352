"""Class support accumulation, argmax prediction and top-K' shortlists."""

from dataclasses import dataclass, field

import numpy as np

from .btree import DEFAULT_ORDER, KnowledgeBase
from .exceptions import CorpusTooSmall, InvalidKPrime
from .tcr import compute_weight_matrix
from .text_pipeline import PipelineConfig, build_vocabulary, preprocess_document, require_trainable


@dataclass
class SupportVector:
    supports: np.ndarray
    matched_terms: int = 0

    @property
    def all_zero(self):
        return not np.any(self.supports)


@dataclass
class Prediction:
    class_id: int
    class_name: str
    supports: SupportVector
    confident: bool


@dataclass
class SearchCost:
    """Tally of index probes made while scoring queries."""

    searches: int = 0
    node_visits: int = 0


def total_support(kb, query, cost=None):
    """Per-class sum of ``frequency * weight`` over query terms found in ``kb``.

    Each distinct query term is looked up once; unseen terms add nothing.
    """
    if kb.K < 2:
        raise CorpusTooSmall("classification needs a knowledgebase with at least 2 classes")
    supports = np.zeros(kb.K)
    matched = 0
    for term, freq in query.items():
        record, visits = kb.search_with_cost(term)
        if cost is not None:
            cost.searches += 1
            cost.node_visits += visits
        if record is None:
            continue
        matched += 1
        supports += freq * np.asarray(record.weights)
    return SupportVector(supports, matched)


def _order(supports):
    # descending support, ties to the smaller class index
    return sorted(range(len(supports)), key=lambda j: (-supports[j], j))


def classify(kb, query, cost=None):
    sv = total_support(kb, query, cost)
    best = int(np.argmax(sv.supports))  # first maximum on ties
    return Prediction(best, kb.class_names[best], sv, confident=not sv.all_zero)


def rank_classes(kb, query, k_prime):
    if not 1 <= k_prime <= kb.K:
        raise InvalidKPrime(f"k' must be between 1 and {kb.K}, got {k_prime}")
    sv = total_support(kb, query)
    return [(kb.class_names[j], float(sv.supports[j])) for j in _order(sv.supports)[:k_prime]]


@dataclass
class Model:
    """A trained knowledgebase together with the preprocessing used to build it."""

    kb: KnowledgeBase
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)

    @property
    def class_names(self):
        return self.kb.class_names

    def query(self, text):
        return preprocess_document(text, self.pipeline)

    def classify_text(self, text):
        return classify(self.kb, self.query(text))

    def rank_text(self, text, k_prime):
        return rank_classes(self.kb, self.query(text), k_prime)

    def predict(self, documents):
        """Class ids for already-preprocessed ``TermCounts``."""
        return [classify(self.kb, terms).class_id for terms in documents]


def train(corpus, pipeline=None, order=DEFAULT_ORDER):
    """Vocabulary, relevance weights and B-tree index from a labeled corpus.

    If ``pipeline`` differs from the corpus's own preprocessing the raw
    texts are processed again, so queries and training share one config.
    """
    if pipeline is None:
        pipeline = corpus.config or PipelineConfig()
    else:
        corpus = corpus.reprocess(pipeline)
    require_trainable(corpus)
    vocab = build_vocabulary(corpus, pipeline)
    matrix = compute_weight_matrix(corpus, vocab)
    return Model(KnowledgeBase.build(matrix, corpus.class_names, order), pipeline)

