"""Probabilistic best-first chart parsing with context-conditioned rule scores."""

from .chart import Chart, LatticeEdge, Theory, WordLattice, build_chart, load_lattice
from .grammar import (BOUNDARY, Grammar, GrammarError, Lexicon, Rule, TagKind,
                      load_grammar, load_lexicon)
from .parser import (Parse, ParserConfig, ParseResult, coverage, parse, partial_parse,
                     should_stop)
from .stats import FrequencyTables, Model, dump_model, geometric_mean_score, load_model, smoothed_prob
from .train import (TrainConfig, TreebankSentence, count_tree, model_distance,
                    train_supervised, train_unsupervised)
from .trees import Tree, parse_tree, read_treebank

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY", "Chart", "FrequencyTables", "Grammar", "GrammarError", "LatticeEdge", "Lexicon",
    "Model", "Parse", "ParseResult", "ParserConfig", "Rule", "TagKind", "Theory", "TrainConfig",
    "Tree", "TreebankSentence", "WordLattice", "build_chart", "count_tree", "coverage",
    "dump_model", "geometric_mean_score", "load_grammar", "load_lattice", "load_lexicon",
    "load_model", "model_distance", "parse", "parse_tree", "partial_parse", "read_treebank",
    "should_stop", "smoothed_prob", "train_supervised", "train_unsupervised",
]
