"""Bundled corpora: the four-document TINY4 toy set and a seeded synthetic newsgroup-like set."""

import random
from itertools import accumulate
from importlib import resources

from .text_pipeline import Corpus, PipelineConfig

TINY4_TEXTS = (
    ("A1", "A", "alpha alpha beta"),
    ("A2", "A", "alpha gamma"),
    ("B1", "B", "beta beta gamma"),
    ("B2", "B", "gamma gamma gamma beta"),
)

SYNTHETIC_CLASSES = ("comp", "rec", "sci", "talk")
_SYLLABLES = (
    "ba", "be", "bo", "da", "de", "di", "fa", "fo", "ga", "gu", "ka", "ki", "ko", "la", "le",
    "lu", "ma", "me", "mo", "na", "ni", "no", "pa", "pe", "po", "ra", "re", "ri", "sa", "se",
    "so", "ta", "te", "tu", "va", "vo", "za", "zu",
)


def tiny4(config=None):
    """Classes A and B, two documents each; by default no stemming or stopwords and 1-letter tokens kept."""
    if config is None:
        config = PipelineConfig.bare()
    return Corpus.from_texts(
        [(label, text) for _, label, text in TINY4_TEXTS],
        config,
        doc_ids=[doc_id for doc_id, _, _ in TINY4_TEXTS],
    )


def _pseudo_words(rng, n, taken):
    words = []
    while len(words) < n:
        w = "".join(rng.choice(_SYLLABLES) for _ in range(rng.randint(2, 4))) + rng.choice("krtx")
        if w not in taken:
            taken.add(w)
            words.append(w)
    return words


def synthetic_texts(n_per_class=200, classes=SYNTHETIC_CLASSES, seed=20, topic_size=120,
                    shared_size=400, topic_rate=0.1, length=(20, 80)):
    """Labeled ``(doc_id, label, text)`` triples.

    Every class owns ``topic_size`` topical words; all classes share a pool
    of ``shared_size`` background words drawn with Zipf-like frequencies.
    Each token is topical with probability ``topic_rate`` and topical
    tokens come from a random class 25% of the time, so classes overlap.
    Uses :mod:`random` so output does not depend on the numpy version.
    """
    rng = random.Random(seed)
    taken = set()
    topics = {c: _pseudo_words(rng, topic_size, taken) for c in classes}
    shared = _pseudo_words(rng, shared_size, taken)
    shared_cum = list(accumulate(1.0 / (rank + 1) for rank in range(shared_size)))
    topic_cum = list(accumulate(1.0 / (rank + 1) ** 0.7 for rank in range(topic_size)))

    out = []
    for c in classes:
        for i in range(n_per_class):
            n = rng.randint(*length)
            tokens = []
            for _ in range(n):
                if rng.random() < topic_rate:
                    source = c if rng.random() >= 0.25 else rng.choice(classes)
                    tokens.append(rng.choices(topics[source], cum_weights=topic_cum)[0])
                else:
                    tokens.append(rng.choices(shared, cum_weights=shared_cum)[0])
            sentences, pos = [], 0
            while pos < len(tokens):
                step = rng.randint(6, 14)
                sentences.append(" ".join(tokens[pos:pos + step]).capitalize() + ".")
                pos += step
            out.append((f"{c}-{i:03d}", c, " ".join(sentences)))
    return out


def synthetic(config=None, **kwargs):
    if config is None:
        config = PipelineConfig()
    triples = synthetic_texts(**kwargs)
    return Corpus.from_texts([(label, text) for _, label, text in triples], config,
                             doc_ids=[doc_id for doc_id, _, _ in triples])


def bundled_path(name):
    """Filesystem path of a bundled fixture ('tiny4' directory or 'synthetic_4x200.jsonl')."""
    return resources.files("tcms").joinpath("data", name)
