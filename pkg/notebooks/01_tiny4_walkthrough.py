"""
Weighting and classifying a four-document corpus
=================================================

Two classes, four short documents, three terms. Everything here is small
enough to check by hand: the per-class relevance weight of each term, the
support each class accumulates for a query, and the resulting decision.
"""

# %%
# Build the corpus. ``tiny4`` uses a bare pipeline: no stopwords, no
# stemming, so the terms are exactly the words in the texts.
from tcms import CorpusStats, compute_weight_matrix, train
from tcms.datasets import TINY4_TEXTS, tiny4
from tcms.text_pipeline import PipelineConfig
from tcms.tcr import class_term_density, class_term_weight, class_weight

for doc_id, label, text in TINY4_TEXTS:
    print(f"{doc_id} [{label}] {text}")

corpus = tiny4()
stats = CorpusStats.from_corpus(corpus)

# %%
# Each weight is the product of three ratios: the share of documents in
# the class, the share of the term's document frequency falling in the
# class, and the share of its occurrences falling in the class.
print(f"\n{'term':6} {'class':5} {'cw':>6} {'ctw':>6} {'ctd':>6} {'weight':>8}")
matrix = compute_weight_matrix(corpus)
for i, term in enumerate(matrix.terms):
    for j, name in enumerate(corpus.class_names):
        print(
            f"{term:6} {name:5} {class_weight(stats, j):6.3f} {class_term_weight(stats, term, j):6.3f}"
            f" {class_term_density(stats, term, j):6.3f} {matrix.weights[i, j]:8.4f}"
        )

# %%
# Classify a query. The support for a class is the sum over query terms of
# term frequency times weight; the class with the largest support wins.
model = train(corpus, pipeline=PipelineConfig.bare(), order=3)
prediction = model.classify_text("beta gamma gamma")
print("\nquery: beta gamma gamma")
for name, s in zip(corpus.class_names, prediction.supports.supports):
    print(f"  support[{name}] = {s:.4f}")
print(f"  -> {prediction.class_name} (confident={prediction.confident})")

# %%
# A query sharing no terms with the vocabulary gets zero support
# everywhere; the first class is returned and flagged as not confident.
unknown = model.classify_text("delta")
print(f"\nquery: delta -> {unknown.class_name} (confident={unknown.confident})")
