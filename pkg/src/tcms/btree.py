"""B-tree knowledgebase mapping terms to their class weight vectors.

The order ``r`` is the maximum number of children per node, so a node
holds at most ``r - 1`` keys and every non-root node holds at least
``ceil(r / 2) - 1``. Weight records live outside the nodes; each key
carries a reference to its record.
"""

import math
from bisect import bisect_left

from .exceptions import DuplicateTerm

DEFAULT_ORDER = 64


class BTreeNode:
    __slots__ = ("keys", "records", "children")

    def __init__(self, keys=None, records=None, children=None):
        self.keys = keys if keys is not None else []
        self.records = records if records is not None else []
        self.children = children if children is not None else []

    @property
    def is_leaf(self):
        return not self.children

    def __repr__(self):
        return f"BTreeNode({self.keys!r})"


def min_keys(order):
    return math.ceil(order / 2) - 1


def height_bound(d, order):
    """Largest height any valid tree of ``d`` keys can have at this order."""
    if d == 0:
        return 0
    m = math.ceil(order / 2)
    # integer form of 1 + floor(log_m((d + 1) / 2))
    h, capacity = 1, 2
    while capacity * m <= d + 1:
        capacity *= m
        h += 1
    return h


def _split_entries(keys, records, children, order):
    """Split an overflowing node around its median; returns (left, key, record, right)."""
    mid = order // 2
    left = BTreeNode(keys[:mid], records[:mid], children[: mid + 1] if children else [])
    right = BTreeNode(keys[mid + 1 :], records[mid + 1 :], children[mid + 1 :] if children else [])
    return left, keys[mid], records[mid], right


def _pack_leaves(keys, records, order):
    cap = order - 1
    leaves, seps = [], []
    i, n = 0, len(keys)
    while True:
        leaves.append(BTreeNode(keys[i : i + cap], records[i : i + cap]))
        i += cap
        if i >= n:
            break
        seps.append((keys[i], records[i]))
        i += 1
    if len(leaves) > 1 and len(leaves[-1].keys) < min_keys(order):
        left, right = leaves[-2], leaves[-1]
        sk, sr = seps.pop()
        ck = left.keys + [sk] + right.keys
        cr = left.records + [sr] + right.records
        mid = len(ck) // 2
        leaves[-2:] = [BTreeNode(ck[:mid], cr[:mid]), BTreeNode(ck[mid + 1 :], cr[mid + 1 :])]
        seps.append((ck[mid], cr[mid]))
    return leaves, seps


def _pack_level(nodes, seps, order):
    parents, up = [], []
    j, n = 0, len(nodes)
    while True:
        group = nodes[j : j + order]
        inner = seps[j : j + len(group) - 1]
        parents.append(BTreeNode([k for k, _ in inner], [r for _, r in inner], group))
        j += len(group)
        if j >= n:
            break
        up.append(seps[j - 1])
    if len(parents) > 1 and len(parents[-1].children) < math.ceil(order / 2):
        left, right = parents[-2], parents[-1]
        sk, sr = up.pop()
        cc = left.children + right.children
        ck = left.keys + [sk] + right.keys
        cr = left.records + [sr] + right.records
        lc = (len(cc) + 1) // 2
        parents[-2:] = [
            BTreeNode(ck[: lc - 1], cr[: lc - 1], cc[:lc]),
            BTreeNode(ck[lc:], cr[lc:], cc[lc:]),
        ]
        up.append((ck[lc - 1], cr[lc - 1]))
    return parents, up


class KnowledgeBase:
    """Term -> :class:`~tcms.tcr.WeightRecord` index backed by a B-tree of order ``r``."""

    def __init__(self, class_names, order=DEFAULT_ORDER):
        if order < 3:
            raise ValueError(f"B-tree order must be >= 3, got {order}")
        self.class_names = tuple(class_names)
        self.order = order
        self.root = None
        self.d = 0

    @property
    def K(self):
        return len(self.class_names)

    def __len__(self):
        return self.d

    def __contains__(self, term):
        return self.search(term) is not None

    @classmethod
    def build(cls, matrix, class_names=None, order=DEFAULT_ORDER):
        """Bulk-load a sorted weight matrix.

        Leaves are filled left to right at capacity, then each internal level
        is packed the same way. The last node on a level is rebalanced with its
        left sibling when it falls below minimum occupancy, so equal input
        always gives the same shape.
        """
        if class_names is None:
            class_names = [str(j) for j in range(matrix.K)]
        kb = cls(class_names, order)
        if len(class_names) != matrix.K:
            raise ValueError("class_names length does not match the weight matrix")
        records = matrix.records
        keys = [r.term for r in records]
        for a, b in zip(keys, keys[1:]):
            if not a < b:
                raise DuplicateTerm(f"terms must be unique and sorted; found {a!r} before {b!r}")
        if not keys:
            return kb
        nodes, seps = _pack_leaves(keys, records, order)
        while len(nodes) > 1:
            nodes, seps = _pack_level(nodes, seps, order)
        kb.root = nodes[0]
        kb.d = len(keys)
        return kb

    def search_with_cost(self, term):
        """Return ``(record or None, nodes visited)``."""
        node = self.root
        visits = 0
        while node is not None:
            visits += 1
            keys = node.keys
            i = bisect_left(keys, term)
            if i < len(keys) and keys[i] == term:
                return node.records[i], visits
            if node.is_leaf:
                break
            node = node.children[i]
        return None, visits

    def search(self, term):
        """Record for ``term``, or None when it was never indexed."""
        return self.search_with_cost(term)[0]

    def insert(self, record):
        """Insert or replace ``record``; overflowing nodes split at the median."""
        if len(record.weights) != self.K:
            raise ValueError(f"record has {len(record.weights)} weights, expected {self.K}")
        if self.root is None:
            self.root = BTreeNode([record.term], [record])
            self.d = 1
            return self
        split = self._insert(self.root, record)
        if split is not None:
            left, key, rec, right = split
            self.root = BTreeNode([key], [rec], [left, right])
        return self

    def _insert(self, node, record):
        term = record.term
        i = bisect_left(node.keys, term)
        if i < len(node.keys) and node.keys[i] == term:
            node.records[i] = record
            return None
        if node.is_leaf:
            node.keys.insert(i, term)
            node.records.insert(i, record)
            self.d += 1
        else:
            split = self._insert(node.children[i], record)
            if split is None:
                return None
            left, key, rec, right = split
            node.keys.insert(i, key)
            node.records.insert(i, rec)
            node.children[i : i + 1] = [left, right]
        if len(node.keys) >= self.order:
            return _split_entries(node.keys, node.records, node.children, self.order)
        return None

    def height(self):
        h, node = 0, self.root
        while node is not None:
            h += 1
            node = node.children[0] if node.children else None
        return h

    def items(self):
        """Records in ascending term order."""
        out = []

        def walk(node):
            if node.is_leaf:
                out.extend(node.records)
                return
            for child, rec in zip(node.children, node.records):
                walk(child)
                out.append(rec)
            walk(node.children[-1])

        if self.root is not None:
            walk(self.root)
        return out

    def terms(self):
        return [r.term for r in self.items()]

    def structure(self):
        """Level-by-level rendering of node keys; equal shapes give equal strings."""
        if self.root is None:
            return ""
        lines, level = [], [self.root]
        while level:
            lines.append(" | ".join(" ".join(n.keys) for n in level))
            level = [c for n in level for c in n.children]
        return "\n".join(lines)

    def validate(self):
        """List every structural violation found; empty when the tree is sound."""
        problems = []
        if self.root is None:
            if self.d != 0:
                problems.append(f"empty tree but d={self.d}")
            return problems
        lo_keys = min_keys(self.order)
        leaf_depths = set()
        count = 0

        def check(node, path, depth, lo, hi):
            nonlocal count
            keys = node.keys
            count += len(keys)
            if len(keys) > self.order - 1:
                problems.append(f"{path}: {len(keys)} keys exceeds maximum {self.order - 1}")
            if path == "root":
                if not keys:
                    problems.append("root: no keys in a non-empty tree")
            elif len(keys) < lo_keys:
                problems.append(f"{path}: {len(keys)} keys below minimum {lo_keys}")
            if len(node.records) != len(keys):
                problems.append(f"{path}: {len(node.records)} records for {len(keys)} keys")
            for a, b in zip(keys, keys[1:]):
                if not a < b:
                    problems.append(f"{path}: keys not strictly sorted ({a!r} >= {b!r})")
                    break
            for key, rec in zip(keys, node.records):
                if rec.term != key:
                    problems.append(f"{path}: record for {rec.term!r} stored under key {key!r}")
                if len(rec.weights) != self.K:
                    problems.append(f"{path}: record {key!r} has {len(rec.weights)} weights, expected {self.K}")
            if keys and ((lo is not None and keys[0] <= lo) or (hi is not None and keys[-1] >= hi)):
                problems.append(f"{path}: keys outside separator range ({lo!r}, {hi!r})")
            if node.is_leaf:
                leaf_depths.add(depth)
                return
            if len(node.children) != len(keys) + 1:
                problems.append(f"{path}: {len(node.children)} children for {len(keys)} keys")
                return
            bounds = [lo] + keys + [hi]
            for c, child in enumerate(node.children):
                check(child, f"{path}/{c}", depth + 1, bounds[c], bounds[c + 1])

        check(self.root, "root", 1, None, None)
        if len(leaf_depths) > 1:
            problems.append(f"leaves at unequal depths {sorted(leaf_depths)}")
        if count != self.d:
            problems.append(f"d={self.d} but {count} keys reachable")
        return problems
