"""Estimating frequency tables from parsed text.

Supervised training counts gold trees.  Unsupervised training parses raw
sentences, counts every parse found (weighted), and repeats with the model
those counts define.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .chart import WordLattice
from .grammar import BOUNDARY, TOP_RULE_ID, Grammar, GrammarError, Lexicon
from .parser import ParserConfig, parse
from .stats import FrequencyTables, Model
from .trees import Tree, check_tree

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreebankSentence:
    tree: Tree
    words: tuple[str, ...]

    @classmethod
    def from_tree(cls, tree: Tree) -> "TreebankSentence":
        return cls(tree, tuple(tree.words()))

    def __post_init__(self):
        if len(self.tree.leaves()) != len(self.words):
            raise GrammarError("leaf count differs from word count")


@dataclass
class TrainConfig:
    iterations: int = 5
    epsilon: float = 1e-6
    per_sentence_parse_cap: int = 100
    parser: ParserConfig = field(default_factory=lambda: ParserConfig(
        n=10, exhaustive=True, min_incomplete_mean=-math.inf, max_passes=100000))

    def __post_init__(self):
        if self.iterations < 0 or self.epsilon < 0 or self.per_sentence_parse_cap < 1:
            raise ValueError("training bounds must be non-negative (parse cap positive)")


def count_tree(sentence: Union[TreebankSentence, Tree], tables: FrequencyTables, grammar: Grammar,
               weight: Union[int, float] = 1) -> FrequencyTables:
    """Add one tree's statistics to `tables` in place (and return it)."""
    if weight <= 0:
        raise ValueError("weight must be positive")
    tree = sentence.tree if isinstance(sentence, TreebankSentence) else sentence
    check_tree(tree, grammar)
    words = [w.lower() for w in tree.words()]
    tags = tree.tags()
    padded = [BOUNDARY] + tags + [BOUNDARY]

    def trigram_at(i: int):
        return padded[i], padded[i + 1], padded[i + 2]

    for i, (word, tag) in enumerate(zip(words, tags)):
        p0, p1, p2 = trigram_at(i)
        tables.trigram[p0, p1, p2] += weight
        tables.skip[p0, p2] += weight
        tables.center[p1] += weight
        tables.lexical[word, tag] += weight
        tables.tag_total[tag] += weight
        tables.total_positions += weight

    parent_rule: dict[int, int] = {}
    for node, start, _, parent in tree.nodes():
        if node.is_leaf:
            continue
        rule = grammar.find_rule(node.label, node.rhs())
        parent_rule[id(node)] = rule.id
        parent_id = TOP_RULE_ID if parent is None else parent_rule[id(parent)]
        p0, p1, p2 = trigram_at(start)
        tables.rule_in_context[rule.id, p0, p1, p2, parent_id] += weight
        tables.context_total[rule.lhs, p0, p1, p2, parent_id] += weight
    tables.grammar_signature = tables.grammar_signature or grammar.signature()
    tables.invalidate()
    return tables


def _lexicon_with_counts(lexicon: Lexicon, tables: FrequencyTables) -> Lexicon:
    return lexicon.extended(dict(tables.lexical))


def train_supervised(treebank: Iterable[Union[TreebankSentence, Tree]], grammar: Grammar,
                     lexicon: Lexicon, smoothing_delta: float = 0.5) -> Model:
    tables = FrequencyTables(grammar_signature=grammar.signature())
    for i, sent in enumerate(treebank):
        try:
            count_tree(sent, tables, grammar)
        except GrammarError as exc:
            raise GrammarError(f"sentence {i}: {exc}") from None
    return Model(tables, grammar, _lexicon_with_counts(lexicon, tables), smoothing_delta)


def model_distance(a: FrequencyTables, b: FrequencyTables) -> float:
    """Mean over table kinds of the L1 distance between mass-normalized tables."""
    if a.grammar_signature and b.grammar_signature and a.grammar_signature != b.grammar_signature:
        raise ValueError("tables were built for different grammars")
    dists = []
    for (name, ta), tb in zip(a.tables().items(), b.tables().values()):
        ma, mb = sum(ta.values()), sum(tb.values())
        if ma == 0 and mb == 0:
            continue
        d = 0.0
        for key in set(ta) | set(tb):
            pa = ta[key] / ma if ma else 0.0
            pb = tb[key] / mb if mb else 0.0
            d += abs(pa - pb)
        dists.append(d)
    return sum(dists) / len(dists) if dists else 0.0


@dataclass
class TrainResult:
    model: Model
    converged: bool
    history: list[float]


def train_unsupervised(corpus: Sequence[Union[WordLattice, str]], grammar: Grammar, lexicon: Lexicon,
                       seed: Optional[Model] = None, cfg: Optional[TrainConfig] = None) -> TrainResult:
    """Parse-and-recount training.

    The first pass from a uniform seed weights each of a sentence's k parses
    by 1/k; later passes (or any pass from a trained seed) weight parses by
    their share of the summed linear scores.
    """
    cfg = cfg or TrainConfig()
    uniform = seed is None
    model = seed or Model.uniform(grammar, lexicon)
    history: list[float] = []
    if cfg.iterations == 0:
        return TrainResult(model, False, history)
    lattices = [c if isinstance(c, WordLattice) else WordLattice.from_sentence(c) for c in corpus]
    for it in range(cfg.iterations):
        tables = FrequencyTables(grammar_signature=grammar.signature())
        for idx, lat in enumerate(lattices):
            res = parse(model, lat, cfg.parser)
            parses = res.parses[:cfg.per_sentence_parse_cap]
            if not parses:
                log.info("sentence %d: no parse, contributes nothing", idx)
                continue
            if uniform:
                weights = [1.0 / len(parses)] * len(parses)
            else:
                top = parses[0].log_score
                lin = [math.exp(p.log_score - top) for p in parses]
                total = sum(lin)
                weights = [v / total for v in lin]
            for p, w in zip(parses, weights):
                count_tree(p.tree, tables, grammar, w)
        history.append(model_distance(tables, model.tables))
        model = Model(tables, grammar, _lexicon_with_counts(lexicon, tables), model.smoothing_delta)
        uniform = False
        log.info("iteration %d: distance %.6g", it + 1, history[-1])
        if history[-1] < cfg.epsilon and (it > 0 or seed is not None):
            return TrainResult(model, True, history)
    return TrainResult(model, False, history)
