"""Corpus loaders and the plain-text model file format.

Model file layout (UTF-8, ``\\n`` line endings)::

    TCMS 1
    <class 1>\\t<class 2>\\t...\\t<class K>
    lowercase=true min_token_length=2 drop_numeric=true stemming=true min_df=1 stopwords=builtin
    r=<order> d=<number of terms>
    <term>\\t<w_1>\\t...\\t<w_K>        (d rows, sorted by term)

Weights are written as shortest round-trip decimals, so saving a loaded
model reproduces the file byte for byte. The B-tree is not stored; it is
bulk-loaded again from the term table.
"""

import json
import math
import os
import re
import warnings
from pathlib import Path

import numpy as np

from .btree import KnowledgeBase
from .classifier import Model
from .evaluation import format_float
from .exceptions import (
    BadMagic,
    ChecksumOfCountsMismatch,
    LoaderWarning,
    MalformedRow,
    MissingField,
    NoClassesFound,
    TooManyMalformedLines,
    VersionUnsupported,
)
from .tcr import WeightMatrix
from .text_pipeline import Corpus, PipelineConfig, builtin_stopwords

MAGIC = "TCMS"
FORMAT_VERSION = 1
_TOKEN_SHAPED = re.compile(r"[^\W_]+")


# -- corpora -----------------------------------------------------------------

def load_corpus_dir(path, config=None):
    """One document per file under ``path/<class name>/``.

    Documents are ordered by class name, then file name. Empty class
    directories and nested directories are skipped with a LoaderWarning.
    """
    if config is None:
        config = PipelineConfig()
    root = Path(path)
    if not root.is_dir():
        raise NoClassesFound(f"{path} is not a directory")
    pairs, ids = [], []
    for class_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        files = []
        for entry in sorted(class_dir.iterdir()):
            if entry.is_dir():
                warnings.warn(LoaderWarning(f"ignoring nested directory {entry}"), stacklevel=2)
            elif entry.is_file():
                files.append(entry)
        if not files:
            warnings.warn(LoaderWarning(f"class directory {class_dir.name!r} has no documents"), stacklevel=2)
            continue
        for f in files:
            text = f.read_bytes().decode("utf-8", errors="replace")
            pairs.append((class_dir.name, text))
            ids.append(f"{class_dir.name}/{f.name}")
    if not pairs:
        raise NoClassesFound(f"no labeled documents under {path}")
    return Corpus.from_texts(pairs, config, ids)


def parse_jsonl_record(line):
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise MissingField("record is not a JSON object")
    for key in ("label", "text"):
        if not isinstance(obj.get(key), str):
            raise MissingField(f"record lacks string field {key!r}")
    return obj


def load_corpus_jsonl(path, config=None, max_malformed=0.01):
    """One ``{"label": ..., "text": ...}`` object per line, in file order.

    Malformed lines are skipped while they make up at most ``max_malformed``
    of the non-blank lines; the skip count is reported as a LoaderWarning
    carrying a ``skipped`` attribute.
    """
    if config is None:
        config = PipelineConfig()
    pairs, ids, bad = [], [], []
    total = 0
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            total += 1
            try:
                obj = parse_jsonl_record(line)
            except (ValueError, MissingField) as exc:
                bad.append((lineno, str(exc)))
                continue
            pairs.append((obj["label"], obj["text"]))
            ids.append(str(obj.get("id", f"line{lineno}")))
    if bad and len(bad) > max_malformed * total:
        first = ", ".join(f"line {n}: {msg}" for n, msg in bad[:3])
        raise TooManyMalformedLines(f"{len(bad)} of {total} lines malformed ({first})")
    if bad:
        w = LoaderWarning(f"skipped {len(bad)} malformed line(s): " + ", ".join(str(n) for n, _ in bad))
        w.skipped = len(bad)
        warnings.warn(w, stacklevel=2)
    if not pairs:
        raise NoClassesFound(f"no labeled documents in {path}")
    return Corpus.from_texts(pairs, config, ids)


def load_corpus(path, config=None, jsonl=None):
    if jsonl is None:
        jsonl = os.path.isfile(path)
    return load_corpus_jsonl(path, config) if jsonl else load_corpus_dir(path, config)


def write_corpus_jsonl(corpus, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in corpus.documents:
            rec = {"id": doc.doc_id, "label": corpus.class_names[doc.class_id], "text": doc.text}
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


# -- model files -------------------------------------------------------------

def _bool(v):
    return "true" if v else "false"


def pipeline_to_header(cfg):
    if cfg.stopwords == builtin_stopwords():
        stop = "builtin"
    else:
        # stopwords that no token can equal are behaviourally inert, so dropping them is lossless
        words = sorted(w for w in cfg.stopwords if _TOKEN_SHAPED.fullmatch(w))
        stop = "list:" + ",".join(words) if words else "none"
    return " ".join([
        f"lowercase={_bool(cfg.lowercase)}",
        f"min_token_length={cfg.min_token_length}",
        f"drop_numeric={_bool(cfg.drop_numeric)}",
        f"stemming={_bool(cfg.stemming_enabled)}",
        f"min_df={cfg.min_doc_frequency}",
        f"stopwords={stop}",
    ])


def pipeline_from_header(line, lineno=3):
    fields = {}
    for part in line.split(" "):
        key, sep, value = part.partition("=")
        if not sep:
            raise MalformedRow(lineno, f"expected key=value, got {part!r}")
        fields[key] = value

    def flag(key):
        v = fields.get(key)
        if v not in ("true", "false"):
            raise MalformedRow(lineno, f"{key} must be true or false, got {v!r}")
        return v == "true"

    def integer(key):
        try:
            return int(fields[key])
        except (KeyError, ValueError):
            raise MalformedRow(lineno, f"{key} must be an integer") from None

    stop = fields.get("stopwords")
    if stop is None:
        raise MalformedRow(lineno, "missing stopwords")
    if stop == "builtin":
        words = builtin_stopwords()
    elif stop == "none":
        words = frozenset()
    elif stop.startswith("list:"):
        words = frozenset(stop[5:].split(","))
    else:
        raise MalformedRow(lineno, f"stopwords must be builtin, none or list:..., got {stop!r}")
    try:
        return PipelineConfig(
            lowercase=flag("lowercase"),
            min_token_length=integer("min_token_length"),
            drop_numeric=flag("drop_numeric"),
            stopwords=words,
            stemming_enabled=flag("stemming"),
            min_doc_frequency=integer("min_df"),
        )
    except ValueError as exc:
        raise MalformedRow(lineno, str(exc)) from None


def dumps_model(model):
    kb = model.kb
    lines = [
        f"{MAGIC} {FORMAT_VERSION}",
        "\t".join(kb.class_names),
        pipeline_to_header(model.pipeline),
        f"r={kb.order} d={kb.d}",
    ]
    for rec in kb.items():
        lines.append("\t".join([rec.term] + [format_float(w) for w in rec.weights]))
    return "\n".join(lines) + "\n"


def save_model(model, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_model(model))


def loads_model(text):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith(MAGIC + " "):
        raise BadMagic(f"expected a {MAGIC!r} header line")
    version = lines[0][len(MAGIC) + 1:]
    if version != str(FORMAT_VERSION):
        raise VersionUnsupported(f"model format version {version!r} (supported: {FORMAT_VERSION})")
    if len(lines) < 4:
        raise ChecksumOfCountsMismatch(f"header truncated after {len(lines)} lines")
    class_names = lines[1].split("\t")
    if not lines[1] or len(set(class_names)) != len(class_names):
        raise MalformedRow(2, "class names must be non-empty and unique")
    pipeline = pipeline_from_header(lines[2])
    m = re.fullmatch(r"r=(\d+) d=(\d+)", lines[3])
    if not m:
        raise MalformedRow(4, f"expected 'r=<order> d=<terms>', got {lines[3]!r}")
    order, d = int(m.group(1)), int(m.group(2))
    if order < 3:
        raise MalformedRow(4, f"order must be >= 3, got {order}")

    rows = lines[4:]
    if len(rows) != d:
        raise ChecksumOfCountsMismatch(f"header declares d={d} but {len(rows)} term rows follow")
    K = len(class_names)
    terms = []
    weights = np.empty((d, K))
    for i, row in enumerate(rows):
        lineno = i + 5
        parts = row.split("\t")
        if len(parts) != K + 1:
            raise MalformedRow(lineno, f"expected term and {K} weights, got {len(parts)} fields")
        term = parts[0]
        if not term:
            raise MalformedRow(lineno, "empty term")
        if terms and not terms[-1] < term:
            raise MalformedRow(lineno, f"term {term!r} out of order or duplicated")
        for j, raw in enumerate(parts[1:]):
            try:
                w = float(raw)
            except ValueError:
                raise MalformedRow(lineno, f"weight {raw!r} is not a number") from None
            if not math.isfinite(w) or not 0.0 <= w <= 1.0:
                raise MalformedRow(lineno, f"weight {raw!r} outside [0, 1]")
            weights[i, j] = w
        terms.append(term)
    kb = KnowledgeBase.build(WeightMatrix(terms, weights), class_names, order)
    return Model(kb, pipeline)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())
