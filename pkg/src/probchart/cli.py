"""Command-line front end: train, parse, partial, eval.

Exit codes: 0 success, 1 no parse (or empty partial result), 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .chart import WordLattice, load_lattice
from .grammar import GrammarError, load_grammar, load_lexicon
from .parser import COMPLETE, ParserConfig, coverage, parse, partial_parse
from .stats import Model, dump_model, load_model
from .train import TrainConfig, train_supervised, train_unsupervised
from .trees import Tree, check_tree, read_treebank

log = logging.getLogger("probchart")

EXIT_OK, EXIT_NO_PARSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _parser_config(args, **overrides) -> ParserConfig:
    kw = dict(n=args.n, goal=args.goal, exhaustive=getattr(args, "exhaustive", False))
    if kw["exhaustive"]:
        kw["min_incomplete_mean"] = float("-inf")
    kw.update(overrides)
    return ParserConfig(**kw)


def _input_lattice(args) -> WordLattice:
    if args.lattice:
        return load_lattice(_read(args.lattice))
    if not args.input:
        raise UsageError("give an input sentence or --lattice FILE")
    return WordLattice.from_sentence(" ".join(args.input))


def cmd_train(args, out: TextIO) -> int:
    grammar = load_grammar(_read(args.grammar))
    lexicon = load_lexicon(_read(args.lexicon), grammar)
    target = args.out or args.model
    if not target:
        raise UsageError("train needs --out PATH")
    if args.treebank:
        model = train_supervised(read_treebank(_read(args.treebank)), grammar, lexicon)
    elif args.corpus:
        sentences = [l.strip() for l in _read(args.corpus).splitlines() if l.strip()]
        cfg = TrainConfig(iterations=args.iterations, epsilon=args.epsilon)
        result = train_unsupervised(sentences, grammar, lexicon, None, cfg)
        for i, d in enumerate(result.history, 1):
            print(f"iteration {i}\tdistance {d:.6g}", file=out)
        print(f"converged\t{'yes' if result.converged else 'no'}", file=out)
        model = result.model
    else:
        raise UsageError("train needs --treebank or --corpus")
    Path(target).write_text(dump_model(model), encoding="utf-8")
    return EXIT_OK


def cmd_parse(args, out: TextIO) -> int:
    model = load_model(_read(args.model))
    lattice = _input_lattice(args)
    result = parse(model, lattice, _parser_config(args))
    if result.status == COMPLETE:
        for p in result.parses[:args.k]:
            print(p.format(), file=out)
        return EXIT_OK
    print(f"no complete parse ({result.status})", file=out)
    for d in result.diagnostics:
        print(f"diagnostic\t{d}", file=out)
    for cat, start, end, score in coverage(result):
        print(f"partial\t{cat}({start},{end})\tscore={score:.6g}", file=out)
    return EXIT_NO_PARSE


def cmd_partial(args, out: TextIO) -> int:
    model = load_model(_read(args.model))
    lattice = _input_lattice(args)
    start, end = args.span
    if not 0 <= start < end <= lattice.n:
        raise UsageError(f"span ({start},{end}) out of range for input of length {lattice.n}")
    if args.cat not in model.grammar.by_lhs and not model.grammar.is_pos(args.cat):
        raise UsageError(f"unknown category {args.cat!r}")
    result = parse(model, lattice, _parser_config(args))
    found = partial_parse(result, start, end, args.cat)
    for tree, score in found[:args.k]:
        print(f"{tree}\tscore={score:.6g}", file=out)
    return EXIT_OK if found else EXIT_NO_PARSE


@dataclass
class EvalReport:
    matches: list[bool] = field(default_factory=list)
    unknown: dict = field(default_factory=lambda: defaultdict(lambda: [0, 0]))
    pp: dict = field(default_factory=lambda: defaultdict(lambda: [0, 0]))
    open_classes: tuple = ()
    masked: bool = False

    @property
    def exact_match(self) -> float:
        return sum(self.matches) / len(self.matches)

    def unknown_accuracy(self) -> Optional[float]:
        correct = sum(c for c, _ in self.unknown.values())
        total = sum(t for _, t in self.unknown.values())
        return correct / total if total else None

    @property
    def baseline(self) -> float:
        return 1.0 / len(self.open_classes) if self.open_classes else 0.0

    def lines(self) -> list[str]:
        out = ["sentence\tmatch"]
        out += [f"{i}\t{int(m)}" for i, m in enumerate(self.matches)]
        n = len(self.matches)
        out.append(f"exact match\t{sum(self.matches)}/{n}\t{_pct(self.exact_match)}")
        out.append("unknown category\tcorrect\ttotal\taccuracy")
        if not self.masked:
            out.append("n/a")
        else:
            for cat in sorted(self.unknown):
                c, t = self.unknown[cat]
                out.append(f"{cat}\t{c}\t{t}\t{_pct(c / t)}")
            acc = self.unknown_accuracy()
            total = sum(t for _, t in self.unknown.values())
            correct = sum(c for c, _ in self.unknown.values())
            out.append(f"overall\t{correct}\t{total}\t{_pct(acc) if acc is not None else 'n/a'}")
            out.append(f"uniform baseline\t\t\t{_pct(self.baseline)}")
        out.append("preposition\tcorrect\ttotal\taccuracy")
        if not self.pp:
            out.append("n/a")
        else:
            for prep in sorted(self.pp):
                c, t = self.pp[prep]
                out.append(f"{prep}\t{c}\t{t}\t{_pct(c / t)}")
            c = sum(v[0] for v in self.pp.values())
            t = sum(v[1] for v in self.pp.values())
            out.append(f"overall\t{c}\t{t}\t{_pct(c / t)}")
        return out


def _pct(x: float) -> str:
    return f"{100 * x:.1f}%"


def _pp_sites(tree: Tree, pp_cat: str) -> dict:
    """(start, end) of each PP node -> (preposition, parent category)."""
    sites = {}
    for node, start, end, parent in tree.nodes():
        if not node.is_leaf and node.label == pp_cat and parent is not None:
            sites[start, end] = (node.words()[0].lower(), parent.label)
    return sites


def evaluate(model: Model, gold_trees: Sequence[Tree], masked: Sequence[str] = (),
             config: Optional[ParserConfig] = None, pp_cat: str = "PP") -> EvalReport:
    """Exact-match accuracy, unknown-word tagging by category, PP attachment by preposition."""
    masked_set = {w.lower() for w in masked}
    if masked_set:
        model = model.with_lexicon(model.lexicon.without(masked_set))
    report = EvalReport(open_classes=model.lexicon.open_classes, masked=bool(masked_set))
    for gold in gold_trees:
        check_tree(gold, model.grammar)
        result = parse(model, WordLattice.from_sentence(gold.words()), config)
        best = result.best.tree if result.best else None
        report.matches.append(best is not None and str(best) == str(gold))
        predicted_tags = best.tags() if best else [None] * len(gold.words())
        for word, tag, guess in zip(gold.words(), gold.tags(), predicted_tags):
            if word.lower() in masked_set:
                slot = report.unknown[tag]
                slot[0] += guess == tag
                slot[1] += 1
        gold_sites = _pp_sites(gold, pp_cat)
        pred_sites = _pp_sites(best, pp_cat) if best else {}
        for span, (prep, parent) in gold_sites.items():
            slot = report.pp[prep]
            slot[0] += pred_sites.get(span, (None, None))[1] == parent
            slot[1] += 1
    return report


def cmd_eval(args, out: TextIO) -> int:
    model = load_model(_read(args.model))
    if not args.treebank:
        raise UsageError("eval needs --treebank")
    gold = read_treebank(_read(args.treebank))
    if not gold:
        raise UsageError("empty test set")
    masked = [l.strip() for l in _read(args.mask_words).splitlines() if l.strip()] if args.mask_words else []
    report = evaluate(model, gold, masked, _parser_config(args), args.pp_cat)
    lines = report.lines()
    for line in lines:
        print(line, file=out)
    if args.report:
        Path(args.report).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="probchart", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def parsing_flags(sp):
        sp.add_argument("--model", required=True)
        sp.add_argument("input", nargs="*", help="sentence words (omit with --lattice)")
        sp.add_argument("--lattice", help="lattice file: 'start end word [log_score]' per line")
        sp.add_argument("--n", type=int, default=3, help="theories advanced per pass")
        sp.add_argument("--goal", default=None)
        sp.add_argument("--k", type=int, default=1)

    t = sub.add_parser("train", help="estimate a model from a treebank or raw corpus")
    t.add_argument("--grammar", required=True)
    t.add_argument("--lexicon", required=True)
    t.add_argument("--treebank")
    t.add_argument("--corpus")
    t.add_argument("--iterations", type=int, default=5)
    t.add_argument("--epsilon", type=float, default=1e-6)
    t.add_argument("--out")
    t.add_argument("--model", help="alias for --out")
    t.set_defaults(func=cmd_train)

    sp = sub.add_parser("parse", help="print the best parses")
    parsing_flags(sp)
    sp.add_argument("--exhaustive", action="store_true")
    sp.set_defaults(func=cmd_parse)

    pa = sub.add_parser("partial", help="trees of a category over a span")
    parsing_flags(pa)
    pa.add_argument("--span", type=int, nargs=2, metavar=("A", "B"), required=True)
    pa.add_argument("--cat", required=True)
    pa.set_defaults(func=cmd_partial)

    ev = sub.add_parser("eval", help="accuracy report against a gold treebank")
    ev.add_argument("--model", required=True)
    ev.add_argument("--treebank")
    ev.add_argument("--mask-words", dest="mask_words")
    ev.add_argument("--report")
    ev.add_argument("--n", type=int, default=3)
    ev.add_argument("--goal", default=None)
    ev.add_argument("--exhaustive", action="store_true")
    ev.add_argument("--pp-cat", dest="pp_cat", default="PP")
    ev.set_defaults(func=cmd_eval)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, out)
    except (UsageError, GrammarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
