import math

import pytest

from probchart import ParserConfig, parse_tree, train_supervised
from probchart.toy import FRUIT_FLIES_TREE, g0

# Trees biasing the (n, n, v) reading of "fruit flies" over (n, v, v).
FRUIT_CORPUS = [FRUIT_FLIES_TREE] * 4 + [
    "(S (NP (n flies)) (VP (v like) (NP (det a) (n banana))))",
    "(S (NP (n fruit) (n flies)) (VP (v like) (NP (det the) (n fruit))))",
    "(S (NP (n fruit)) (VP (v flies)))",
]


def exhaustive_config(**kw):
    base = dict(n=3, exhaustive=True, min_incomplete_mean=-math.inf, max_passes=10**6, max_chart=10**6)
    base.update(kw)
    return ParserConfig(**base)


@pytest.fixture
def grammar_lexicon():
    return g0()


@pytest.fixture
def g0_grammar(grammar_lexicon):
    return grammar_lexicon[0]


@pytest.fixture
def g0_lexicon(grammar_lexicon):
    return grammar_lexicon[1]


@pytest.fixture
def fruit_model(grammar_lexicon):
    g, lex = grammar_lexicon
    return train_supervised([parse_tree(t) for t in FRUIT_CORPUS], g, lex)
