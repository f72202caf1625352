"""Train/test splitting, macro/micro scoring and the repeated-trial protocol."""

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .btree import DEFAULT_ORDER
from .classifier import train
from .exceptions import CorpusTooSmall, TCMSError
from .text_pipeline import PipelineConfig

METRICS = ("macro_p", "macro_r", "macro_f", "micro_p", "micro_r", "micro_f", "accuracy")
CSV_HEADER = ("fraction", "trial") + METRICS


def format_float(x):
    """Shortest round-trip decimal, with integral values written without '.0'."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float
    seed: int = 0
    stratified: bool = True
    min_class_docs: int = 0

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")
        if self.min_class_docs < 0:
            raise ValueError("min_class_docs must be >= 0")


def _train_count(fraction, n):
    # tolerance absorbs float products such as 0.7 * 10 = 7.000000000000001
    k = math.ceil(fraction * n - 1e-9)
    return min(max(k, 1), n - 1)


def filter_small_classes(corpus, min_class_docs):
    """Drop classes with fewer than ``min_class_docs`` documents and re-index the rest."""
    sizes = corpus.class_sizes()
    keep = tuple(name for name, size in zip(corpus.class_names, sizes) if size >= min_class_docs and size > 0)
    if keep == corpus.class_names:
        return corpus
    kept = set(keep)
    indices = [i for i, doc in enumerate(corpus.documents) if corpus.class_names[doc.class_id] in kept]
    return corpus.subset(indices, keep)


def split(corpus, spec):
    """Seeded train/test partition; stratified splits send ceil(f * n_j) of class j to train."""
    corpus = filter_small_classes(corpus, spec.min_class_docs)
    sizes = corpus.class_sizes()
    if corpus.K < 2:
        raise CorpusTooSmall(f"need at least 2 classes after filtering, got {corpus.K}")
    small = [n for n, s in zip(corpus.class_names, sizes) if s < 2]
    if small:
        raise CorpusTooSmall(f"classes with fewer than 2 documents: {', '.join(small)}")

    rng = np.random.default_rng(spec.seed)
    train_idx, test_idx = [], []
    if spec.stratified:
        by_class = [[] for _ in range(corpus.K)]
        for i, doc in enumerate(corpus.documents):
            by_class[doc.class_id].append(i)
        for members in by_class:
            order = rng.permutation(len(members))
            k = _train_count(spec.train_fraction, len(members))
            train_idx.extend(members[o] for o in order[:k])
            test_idx.extend(members[o] for o in order[k:])
    else:
        order = rng.permutation(corpus.N)
        k = _train_count(spec.train_fraction, corpus.N)
        train_idx, test_idx = order[:k].tolist(), order[k:].tolist()
    train_idx.sort()
    test_idx.sort()
    return corpus.subset(train_idx), corpus.subset(test_idx)


def _ratio(num, den):
    return num / den if den else 0.0


@dataclass
class Scores:
    """Confusion counts and derived metrics for one set of predictions."""

    tp: list
    fp: list
    fn: list
    precision: list
    recall: list
    f1: list
    present: list
    macro_p: float
    macro_r: float
    macro_f: float
    micro_p: float
    micro_r: float
    micro_f: float
    accuracy: float

    def metrics(self):
        return {name: getattr(self, name) for name in METRICS}


def score(predictions, K):
    """Score ``(true, predicted)`` class-id pairs.

    Macro averages run over the classes that occur among the true labels;
    micro averages pool TP/FP/FN over all classes. Any 0/0 ratio is 0.
    """
    predictions = list(predictions)
    if not predictions:
        raise ValueError("score needs at least one prediction")
    tp, fp, fn = [0] * K, [0] * K, [0] * K
    for truth, pred in predictions:
        if truth == pred:
            tp[truth] += 1
        else:
            fp[pred] += 1
            fn[truth] += 1
    precision = [_ratio(tp[j], tp[j] + fp[j]) for j in range(K)]
    recall = [_ratio(tp[j], tp[j] + fn[j]) for j in range(K)]
    f1 = [_ratio(2 * p * r, p + r) for p, r in zip(precision, recall)]
    present = sorted({truth for truth, _ in predictions})
    n = len(present)
    sum_tp, sum_fp, sum_fn = sum(tp), sum(fp), sum(fn)
    micro_p = _ratio(sum_tp, sum_tp + sum_fp)
    micro_r = _ratio(sum_tp, sum_tp + sum_fn)
    return Scores(
        tp, fp, fn, precision, recall, f1, present,
        macro_p=sum(precision[j] for j in present) / n,
        macro_r=sum(recall[j] for j in present) / n,
        macro_f=sum(f1[j] for j in present) / n,
        micro_p=micro_p,
        micro_r=micro_r,
        micro_f=_ratio(2 * micro_p * micro_r, micro_p + micro_r),
        accuracy=sum_tp / len(predictions),
    )


@dataclass
class TrialResult:
    fraction: float
    trial: int
    seed: int
    scores: Scores
    n_train: int
    n_test: int
    vocabulary_size: int


@dataclass
class EvalReport:
    rows: list = field(default_factory=list)

    def fractions(self):
        return sorted({r.fraction for r in self.rows})

    def averages(self):
        """Mean of every metric over the trials of each fraction."""
        out = {}
        for f in self.fractions():
            group = [r.scores for r in self.rows if r.fraction == f]
            out[f] = {m: sum(getattr(s, m) for s in group) / len(group) for m in METRICS}
        return out

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([format_float(r.fraction), r.trial] + [format_float(v) for v in r.scores.metrics().values()])
        for f, avg in self.averages().items():
            writer.writerow([format_float(f), "avg"] + [format_float(avg[m]) for m in METRICS])
        return buf.getvalue()

    def to_text(self):
        head = f"{'fraction':>8}  {'trials':>6}  " + "  ".join(f"{m:>8}" for m in METRICS)
        lines = [head, "-" * len(head)]
        for f, avg in self.averages().items():
            n = sum(1 for r in self.rows if r.fraction == f)
            lines.append(f"{f:>8.2f}  {n:>6d}  " + "  ".join(f"{avg[m]:>8.4f}" for m in METRICS))
        return "\n".join(lines) + "\n"


def _annotate(exc, fraction, trial):
    annotated = type(exc)(f"fraction={format_float(fraction)}, trial={trial}: {exc}")
    annotated.fraction, annotated.trial = fraction, trial
    return annotated


def run_trial(corpus, fraction, trial, seed, pipeline, order, stratified=True, min_class_docs=0):
    train_set, test_set = split(corpus, SplitSpec(fraction, seed, stratified, min_class_docs))
    model = train(train_set, pipeline, order)
    predicted = model.predict(doc.terms for doc in test_set.documents)
    pairs = list(zip(test_set.labels(), predicted))
    return TrialResult(fraction, trial, seed, score(pairs, train_set.K), train_set.N, test_set.N, model.kb.d)


def run_protocol(corpus, fractions, trials=10, base_seed=0, pipeline=None, order=DEFAULT_ORDER,
                 stratified=True, min_class_docs=0):
    """Repeat split/train/classify/score for every fraction and trial.

    Trial ``t`` uses seed ``base_seed + t``, so equal arguments give an
    identical report.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for f in fractions:
        if not 0 < f < 1:
            raise ValueError(f"fractions must lie in (0, 1), got {f}")
    if pipeline is None:
        pipeline = corpus.config or PipelineConfig()
    corpus = corpus.reprocess(pipeline)
    report = EvalReport()
    for f in fractions:
        for t in range(trials):
            try:
                report.rows.append(run_trial(corpus, f, t, base_seed + t, pipeline, order, stratified, min_class_docs))
            except TCMSError as exc:
                raise _annotate(exc, f, t) from exc
    return report
