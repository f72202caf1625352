"""Text categorization by maximum accumulated term-class relevance.

Training turns a labeled corpus into a table of per-class relevance
weights for every vocabulary term and indexes it in a B-tree; a document
is assigned to the class whose weights, summed over its terms, are
largest.
"""

from .btree import KnowledgeBase
from .classifier import Model, Prediction, SupportVector, classify, rank_classes, total_support, train
from .evaluation import EvalReport, SplitSpec, run_protocol, score, split
from .exceptions import TCMSError
from .io import load_corpus, load_corpus_dir, load_corpus_jsonl, load_model, save_model
from .tcr import CorpusStats, WeightMatrix, WeightRecord, compute_weight_matrix
from .text_pipeline import Corpus, PipelineConfig, TermCounts, build_vocabulary, preprocess_document, tokenize

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "CorpusStats",
    "EvalReport",
    "KnowledgeBase",
    "Model",
    "PipelineConfig",
    "Prediction",
    "SplitSpec",
    "SupportVector",
    "TCMSError",
    "TermCounts",
    "WeightMatrix",
    "WeightRecord",
    "build_vocabulary",
    "classify",
    "compute_weight_matrix",
    "load_corpus",
    "load_corpus_dir",
    "load_corpus_jsonl",
    "load_model",
    "preprocess_document",
    "rank_classes",
    "run_protocol",
    "save_model",
    "score",
    "split",
    "tokenize",
    "total_support",
    "train",
]
