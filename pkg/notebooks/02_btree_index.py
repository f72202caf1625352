"""
The B-tree knowledge base
=========================

Term weights are stored in a B-tree keyed by term. This script builds the
index at several orders over a synthetic vocabulary, shows how height
tracks the theoretical bound, and counts node visits per lookup.
"""

# %%
import random

from tcms import compute_weight_matrix
from tcms.btree import KnowledgeBase, height_bound
from tcms.datasets import synthetic, tiny4

# %%
# The four-document corpus at order 3 (at most two keys per node).
kb = KnowledgeBase.build(compute_weight_matrix(tiny4()), order=3)
print(kb.structure())

# %%
# A realistic vocabulary from the synthetic corpus.
corpus = synthetic()
matrix = compute_weight_matrix(corpus)
d = matrix.d
print(f"\nvocabulary size d = {d}")
print(f"{'order':>5} {'height':>6} {'bound':>5} {'mean visits':>11}")
rng = random.Random(0)
probes = rng.sample(matrix.terms, k=min(500, d))
for order in (3, 4, 8, 16, 64):
    kb = KnowledgeBase.build(matrix, order=order)
    assert not kb.validate()
    visits = [kb.search_with_cost(t)[1] for t in probes]
    print(f"{order:5d} {kb.height():6d} {height_bound(d, order):5d} {sum(visits) / len(visits):11.2f}")

# %%
# Incremental inserts keep the tree valid; a miss costs one visit per level.
kb = KnowledgeBase(corpus.class_names, order=4)
for record in rng.sample(matrix.records, k=len(matrix.records)):
    kb.insert(record)
print(f"\ninserted {len(list(kb.terms()))} terms one by one, height {kb.height()}, violations {kb.validate()}")
record, visits = kb.search_with_cost("notaword")
print(f"miss: record={record}, visits={visits}")
