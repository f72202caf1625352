"""Command-line interface: ``tcms train|classify|rank|eval|inspect``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors.
Results go to stdout, diagnostics to stderr.
"""

import argparse
import re
import sys
import warnings

from .btree import DEFAULT_ORDER
from .classifier import train
from .evaluation import filter_small_classes, format_float, run_protocol
from .exceptions import TCMSError
from .io import load_corpus, load_model, save_model
from .text_pipeline import PipelineConfig, load_stopwords

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_fractions(spec):
    """``0.1..0.8`` (step 0.1), ``0.1..0.8:0.05``, or a comma list such as ``0.2,0.5``."""
    m = re.fullmatch(r"([0-9.]+)\.\.([0-9.]+)(?::([0-9.]+))?", spec)
    try:
        if m:
            start, stop = float(m.group(1)), float(m.group(2))
            step = float(m.group(3)) if m.group(3) else 0.1
            if step <= 0 or stop < start:
                raise ValueError
            n = int(round((stop - start) / step))
            values = [round(start + i * step, 10) for i in range(n + 1)]
        else:
            values = [float(x) for x in spec.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid fraction list {spec!r}") from None
    if not values or any(not 0 < v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"fractions must lie strictly between 0 and 1: {spec!r}")
    return values


def _positive_int(minimum):
    def convert(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {v}")
        return v
    return convert


def _add_corpus_options(p):
    p.add_argument("--corpus", required=True, help="directory with one subdirectory per class, or a JSONL file")
    p.add_argument("--jsonl", action="store_true", help="read --corpus as JSON lines with label/text fields")
    p.add_argument("--order", type=_positive_int(3), default=DEFAULT_ORDER, help="B-tree order (max children per node)")
    p.add_argument("--min-df", type=_positive_int(1), default=1, help="drop terms in fewer documents than this")
    p.add_argument("--min-class-docs", type=_positive_int(0), default=0, help="drop classes with fewer documents")
    p.add_argument("--no-stem", action="store_true", help="disable Porter stemming")
    p.add_argument("--stopwords", metavar="FILE", help="stopword file replacing the bundled English list")


def build_parser():
    parser = _Parser(prog="tcms", description="Term-class relevance text categorization.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train a model from a labeled corpus")
    _add_corpus_options(p)
    p.add_argument("--out", required=True, help="model file to write")

    p = sub.add_parser("classify", help="predict the class of each document")
    p.add_argument("--model", required=True)
    p.add_argument("docs", nargs="+", metavar="DOC")

    p = sub.add_parser("rank", help="list the top classes for one document")
    p.add_argument("--model", required=True)
    p.add_argument("--top", type=_positive_int(1), required=True, metavar="K")
    p.add_argument("doc", metavar="DOC")

    p = sub.add_parser("eval", help="repeated random-split evaluation")
    _add_corpus_options(p)
    p.add_argument("--fractions", type=parse_fractions, default=parse_fractions("0.1..0.8"))
    p.add_argument("--trials", type=_positive_int(1), default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", metavar="FILE", help="write the CSV report here instead of printing a table")

    p = sub.add_parser("inspect", help="show model summary or one term's weights")
    p.add_argument("--model", required=True)
    p.add_argument("--term")
    return parser


def _pipeline(args):
    cfg = PipelineConfig(stemming_enabled=not args.no_stem, min_doc_frequency=args.min_df)
    if args.stopwords:
        cfg = cfg.with_(stopwords=load_stopwords(args.stopwords))
    return cfg


def _load_corpus(args, cfg):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        corpus = load_corpus(args.corpus, cfg, jsonl=True if args.jsonl else None)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return corpus


def _read(path):
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8", errors="replace")


def cmd_train(args, out):
    cfg = _pipeline(args)
    corpus = _load_corpus(args, cfg)
    if args.min_class_docs:
        corpus = filter_small_classes(corpus, args.min_class_docs)
    model = train(corpus, cfg, args.order)
    save_model(model, args.out)
    print(f"trained on {corpus.N} documents, {corpus.K} classes, {model.kb.d} terms -> {args.out}", file=sys.stderr)


def cmd_classify(args, out):
    model = load_model(args.model)
    for path in args.docs:
        pred = model.classify_text(_read(path))
        supports = "\t".join(format_float(s) for s in pred.supports.supports)
        print(f"{path}\t{pred.class_name}\t{'true' if pred.confident else 'false'}\t{supports}", file=out)


def cmd_rank(args, out):
    model = load_model(args.model)
    if args.top > model.kb.K:
        raise UsageError(f"--top must be between 1 and {model.kb.K}")
    for i, (name, support) in enumerate(model.rank_text(_read(args.doc), args.top), 1):
        print(f"{i}\t{name}\t{format_float(support)}", file=out)


def cmd_eval(args, out):
    cfg = _pipeline(args)
    corpus = _load_corpus(args, cfg)
    report = run_protocol(corpus, args.fractions, args.trials, args.seed, cfg, args.order,
                          min_class_docs=args.min_class_docs)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_csv())
    else:
        out.write(report.to_text())


def cmd_inspect(args, out):
    model = load_model(args.model)
    kb = model.kb
    if args.term is None:
        print(f"classes\t{kb.K}\t{' '.join(kb.class_names)}", file=out)
        print(f"terms\t{kb.d}", file=out)
        print(f"order\t{kb.order}", file=out)
        print(f"height\t{kb.height()}", file=out)
        return
    rec = kb.search(args.term)
    if rec is None:
        print("not found", file=out)
        return
    for name, w in zip(kb.class_names, rec.weights):
        print(f"{name}\t{format_float(w)}", file=out)


COMMANDS = {
    "train": cmd_train,
    "classify": cmd_classify,
    "rank": cmd_rank,
    "eval": cmd_eval,
    "inspect": cmd_inspect,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (TCMSError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
