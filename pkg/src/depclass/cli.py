"""Command-line interface.

Every subcommand is a thin binding over the library: analyze builds a
treebank report, classify prints one tree's record, transform rewrites
trees, verify-lattice runs the exhaustive property suite, and generate
samples random trees.  Exit codes: 0 clean, 1 fatal, 2 completed with
per-sentence errors.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from contextlib import ExitStack
from dataclasses import fields
from typing import Iterator, TextIO

from . import checkers, conllu, genenum, transforms
from .tree import DepTree, InvalidTreeError

FORMAT_ENV_VAR = "DEPCLASS_FORMAT"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depclass",
        description="Classify dependency trees into formal tree classes, "
        "transform them, and report class coverage over CoNLL-U treebanks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    default_format = os.environ.get(FORMAT_ENV_VAR, "csv")

    p = sub.add_parser("analyze", help="classify every sentence of CoNLL-U files into a report")
    p.add_argument("paths", nargs="+", help="CoNLL-U files ('-' for stdin)")
    p.add_argument("--format", choices=["csv", "json-lines"], default=default_format)
    p.add_argument("--attardi-cap", type=int, default=3)
    p.add_argument("--budget", type=int, default=10**6, help="state budget for derivability search")
    p.add_argument("--jobs", type=int, default=1, help="parallel classification workers")
    p.add_argument("--output", default="-", help="report destination (default stdout)")

    p = sub.add_parser("classify", help="print every class membership for one head array")
    p.add_argument("--heads", required=True, help='comma-separated head list, e.g. "0,4,1,1"')
    p.add_argument("--attardi-cap", type=int, default=3)
    p.add_argument("--budget", type=int, default=10**6)

    p = sub.add_parser("transform", help="rewrite trees of a CoNLL-U file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pseudo-projective", action="store_true",
                       help="lift non-projective dependents, annotating labels")
    group.add_argument("--rearrange", action="store_true",
                       help="reorder words so the tree becomes projective")
    p.add_argument("path", help="CoNLL-U input ('-' for stdin)")
    p.add_argument("--round-trip", action="store_true",
                   help="with --pseudo-projective: also invert and print the recovery rate")
    p.add_argument("--separator", default=transforms.DEFAULT_SEPARATOR,
                   help="label annotation separator (default '%%')")
    p.add_argument("--output", default="-")

    p = sub.add_parser("verify-lattice", help="exhaustively check all class relations")
    p.add_argument("--max-n", type=int, default=6)

    p = sub.add_parser("generate", help="sample random trees as head arrays")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--class", dest="class_filter", default=None,
                   help="keep only trees in this class; 'X-not-Y' subtracts a class")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "transform":
            return _cmd_transform(args)
        if args.command == "verify-lattice":
            return _cmd_verify_lattice(args)
        if args.command == "generate":
            return _cmd_generate(args)
    except OSError as exc:
        print(f"depclass: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command}")


def _open_output(path: str, stack: ExitStack) -> TextIO:
    if path == "-":
        return sys.stdout
    return stack.enter_context(open(path, "w", encoding="utf-8"))


def _iter_input_sentences(paths: list[str], stack: ExitStack) -> Iterator:
    for path in paths:
        if path == "-":
            yield from conllu.parse_conllu(sys.stdin)
        else:
            handle = stack.enter_context(open(path, encoding="utf-8"))
            yield from conllu.parse_conllu(handle)


def _cmd_analyze(args) -> int:
    had_error = False

    def watched(items):
        nonlocal had_error
        for item in items:
            if isinstance(item, conllu.SentenceError):
                had_error = True
            yield item

    with ExitStack() as stack:
        sentences = watched(_iter_input_sentences(args.paths, stack))
        report = conllu.classify_stream(
            sentences, attardi_cap=args.attardi_cap,
            attardi_budget=args.budget, jobs=args.jobs,
        )
        out = _open_output(args.output, stack)
        out.write(conllu.write_report(report, args.format))
    return 2 if had_error else 0


def _parse_heads(text: str) -> DepTree:
    try:
        heads = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidTreeError(f"could not parse head list {text!r}")
    return DepTree(heads)


def format_record(rec: checkers.ClassificationRecord) -> str:
    lines = []
    for f in fields(rec):
        value = getattr(rec, f.name)
        if f.name == "attardi_degree" and value is None:
            value = "above cap"
        elif f.name == "wg_level" and value is None:
            value = "none"
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def _cmd_classify(args) -> int:
    try:
        tree = _parse_heads(args.heads)
    except InvalidTreeError as exc:
        print(f"depclass: invalid tree: {exc}", file=sys.stderr)
        return 1
    rec = checkers.classify(tree, attardi_cap=args.attardi_cap, attardi_budget=args.budget)
    sys.stdout.write(format_record(rec))
    return 0


def _cmd_transform(args) -> int:
    had_error = False
    recovered = 0
    transformed = 0
    with ExitStack() as stack:
        out = _open_output(args.output, stack)
        for item in _iter_input_sentences([args.path], stack):
            if isinstance(item, conllu.SentenceError):
                had_error = True
                print(f"depclass: skipping sentence: {item.message}", file=sys.stderr)
                continue
            if args.pseudo_projective:
                new_tree, _ = transforms.pseudo_projectivize(item.tree, args.separator)
                if args.round_trip:
                    back, _ = transforms.deprojectivize(new_tree, args.separator)
                    if back == item.tree:
                        recovered += 1
                item = conllu.SentenceRecord(new_tree, item.forms, item.metadata, item.source_line)
            else:
                perm = transforms.projective_rearrangement(item.tree)
                new_tree = transforms.apply_permutation(item.tree, perm)
                new_forms = [""] * item.tree.n
                for i, form in enumerate(item.forms, 1):
                    new_forms[perm(i) - 1] = form
                item = conllu.SentenceRecord(new_tree, tuple(new_forms), item.metadata, item.source_line)
            transformed += 1
            out.write(conllu.sentence_to_conllu(item))
        if args.round_trip and args.pseudo_projective:
            rate = recovered / transformed if transformed else 0.0
            out.write(f"# round_trip_recovery_rate = {rate:.4f}\n")
    return 2 if had_error else 0


def _cmd_verify_lattice(args) -> int:
    try:
        results = genenum.verify_lattice(args.max_n)
    except genenum.TooLargeError as exc:
        print(f"depclass: {exc}", file=sys.stderr)
        return 1
    for check in results:
        print(check.line())
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} properties hold for all trees with n <= {args.max_n}")
    return 0 if not failed else 1


def _cmd_generate(args) -> int:
    if args.n < 1:
        print("depclass: --n must be >= 1", file=sys.stderr)
        return 1
    predicate = None
    if args.class_filter:
        try:
            predicate = _parse_class_filter(args.class_filter)
        except KeyError as exc:
            print(f"depclass: {exc.args[0]}", file=sys.stderr)
            return 1
    rng = random.Random(args.seed)
    produced = 0
    attempts = 0
    max_attempts = max(100_000, 1000 * args.count)
    while produced < args.count:
        attempts += 1
        if attempts > max_attempts:
            print(f"depclass: gave up after {max_attempts} draws; "
                  f"class {args.class_filter!r} looks empty at n={args.n}", file=sys.stderr)
            return 1
        tree = genenum.random_tree(args.n, rng)
        if predicate is not None and not predicate(tree):
            continue
        print(",".join(map(str, tree.heads)))
        produced += 1
    return 0


def _parse_class_filter(spec: str):
    positive, sep, negative = spec.partition("-not-")
    if not sep:
        positive, sep, negative = spec.partition("_not_")
    keep = checkers.CLASS_PREDICATES[checkers.resolve_class_name(positive)]
    if not sep:
        return keep
    drop = checkers.CLASS_PREDICATES[checkers.resolve_class_name(negative)]
    return lambda t: keep(t) and not drop(t)


if __name__ == "__main__":
    sys.exit(main())
