import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from probchart import FrequencyTables, Model, TrainConfig, parse, parse_tree, train_supervised
from probchart.grammar import BOUNDARY as B, TOP_RULE_ID, GrammarError
from probchart.toy import FRUIT_FLIES_TREE
from probchart.train import TreebankSentence, count_tree, model_distance, train_unsupervised

from oracle import Oracle, linear, random_grammar, sample_tree

FIXTURE = {
    "trigram": {(B, "n", "n"): 1, ("n", "n", "v"): 1, ("n", "v", "det"): 1,
                ("v", "det", "n"): 1, ("det", "n", B): 1},
    "skip": {(B, "n"): 1, ("n", "v"): 1, ("n", "det"): 1, ("v", "n"): 1, ("det", B): 1},
    "center": {"n": 3, "v": 1, "det": 1},
    "lexical": {("fruit", "n"): 1, ("flies", "n"): 1, ("like", "v"): 1, ("a", "det"): 1, ("banana", "n"): 1},
    "tag_total": {"n": 3, "v": 1, "det": 1},
    # rule ids: 0 S -> NP VP, 1 NP -> det n, 3 NP -> n n, 4 VP -> v NP
    "rule_in_context": {(0, B, "n", "n", TOP_RULE_ID): 1, (3, B, "n", "n", 0): 1,
                        (4, "n", "v", "det", 0): 1, (1, "v", "det", "n", 4): 1},
    "context_total": {("S", B, "n", "n", TOP_RULE_ID): 1, ("NP", B, "n", "n", 0): 1,
                      ("VP", "n", "v", "det", 0): 1, ("NP", "v", "det", "n", 4): 1},
}


def fixture_tables(g, weight=1):
    t = FrequencyTables()
    count_tree(parse_tree(FRUIT_FLIES_TREE), t, g, weight)
    return t


def test_count_tree_fixture_exact(g0_grammar):
    t = fixture_tables(g0_grammar)
    for name, expected in FIXTURE.items():
        got = {k: v for k, v in t.tables()[name].items() if v}
        assert got == expected, name
        assert all(type(v) is int for v in got.values())
    assert t.total_positions == 5


def test_count_tree_half_weight(g0_grammar):
    full, half = fixture_tables(g0_grammar), fixture_tables(g0_grammar, 0.5)
    for name, table in full.tables().items():
        assert {k: v / 2 for k, v in table.items()} == dict(half.tables()[name]), name
    assert half.total_positions == 2.5


def test_count_tree_bad_weight_and_rule(g0_grammar):
    with pytest.raises(ValueError):
        fixture_tables(g0_grammar, 0)
    with pytest.raises(GrammarError, match="NP -> det"):
        count_tree(parse_tree("(S (NP (det a)) (VP (v x)))"), FrequencyTables(), g0_grammar)


def test_treebank_sentence_word_count():
    tree = parse_tree(FRUIT_FLIES_TREE)
    assert TreebankSentence.from_tree(tree).words == tuple(tree.words())
    with pytest.raises(GrammarError):
        TreebankSentence(tree, ("fruit",))


def test_supervised_fixture_conditional(g0_grammar, g0_lexicon):
    m = train_supervised([parse_tree(FRUIT_FLIES_TREE)], g0_grammar, g0_lexicon)
    nn = g0_grammar.find_rule("NP", ("n", "n"))
    assert m.rule_conditional(nn, (B, "n", "n"), 0) == pytest.approx(1.5 / 2.5, rel=1e-12, abs=1e-12)
    assert abs(m.rule_conditional(nn, (B, "n", "n"), 0) - 0.6) <= 1e-12


def test_supervised_sentence_index_in_errors(g0_grammar, g0_lexicon):
    bad = [parse_tree(FRUIT_FLIES_TREE), parse_tree("(S (NP (det a)) (VP (v x)))")]
    with pytest.raises(GrammarError, match="sentence 1"):
        train_supervised(bad, g0_grammar, g0_lexicon)


def test_supervised_extends_lexicon(g0_grammar, g0_lexicon):
    m = train_supervised([parse_tree("(S (NP (n kiwi)) (VP (v flies)))")], g0_grammar, g0_lexicon)
    assert "kiwi" in m.lexicon and "kiwi" not in g0_lexicon


def test_doubling_moves_toward_observed(g0_grammar, g0_lexicon):
    tree = parse_tree(FRUIT_FLIES_TREE)
    one = train_supervised([tree], g0_grammar, g0_lexicon)
    two = train_supervised([tree, tree], g0_grammar, g0_lexicon)
    for name, table in one.tables.tables().items():
        assert {k: 2 * v for k, v in table.items()} == dict(two.tables.tables()[name])
    nn = g0_grammar.find_rule("NP", ("n", "n"))
    n = g0_grammar.find_rule("NP", ("n",))
    assert two.rule_conditional(nn, (B, "n", "n"), 0) > one.rule_conditional(nn, (B, "n", "n"), 0)
    assert two.rule_conditional(n, (B, "n", "n"), 0) < one.rule_conditional(n, (B, "n", "n"), 0)
    assert two.trigram_prob("n", "n", "v") > one.trigram_prob("n", "n", "v")


def test_empty_treebank_is_uniform(g0_grammar, g0_lexicon):
    m = train_supervised([], g0_grammar, g0_lexicon)
    assert m.tables == FrequencyTables()
    for r in g0_grammar.rules:
        assert m.rule_conditional(r, ("n", "v", "det"), 0) == pytest.approx(1 / g0_grammar.lhs_support(r.lhs))
    assert m.trigram_prob("n", "v", "det") == pytest.approx(1 / m.tagset_size ** 3)


# algebraic properties over random trees

def random_trees(seed, k):
    rng = random.Random(seed)
    while True:
        # some grammars have no sentence within the sampling budget; draw another
        g, lex = random_grammar(rng)
        trees = []
        for _ in range(200 * k):
            t = sample_tree(g, lex, rng)
            if t is not None:
                trees.append(t)
                if len(trees) == k:
                    return g, trees
        if trees:
            return g, trees


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_count_tree_commutative_and_additive(seed, k):
    g, trees = random_trees(seed, k)
    forward, backward = FrequencyTables(), FrequencyTables()
    for t in trees:
        count_tree(t, forward, g)
        forward.check_consistency(g)
    for t in reversed(trees):
        count_tree(t, backward, g)
    assert forward == backward
    parts = [count_tree(t, FrequencyTables(), g) for t in trees]
    merged = FrequencyTables()
    for p in parts:
        merged = merged.merge(p)
    assert merged == forward


def test_sampled_treebank_recovers_argmax():
    g, trees = random_trees(7, 400)
    tables = FrequencyTables()
    for t in trees:
        count_tree(t, tables, g)
    from probchart.grammar import Lexicon
    m = Model(tables, g, Lexicon({}, ()))
    checked = 0
    for ctx_key, total in tables.context_total.items():
        if total < 20:
            continue
        lhs, p0, p1, p2, parent = ctx_key
        counts = {r.id: tables.rule_in_context[r.id, p0, p1, p2, parent] for r in g.rules_predictable_from(lhs)}
        probs = {r.id: m.rule_conditional(r, (p0, p1, p2), parent) for r in g.rules_predictable_from(lhs)}
        best = max(counts.values())
        assert {r for r, c in counts.items() if c == best} == \
               {r for r, p in probs.items() if p == max(probs.values())}
        checked += 1
    assert checked > 0


# model distance

def test_model_distance_examples(g0_grammar):
    a = fixture_tables(g0_grammar)
    assert model_distance(a, a) == 0
    x = FrequencyTables(center=Counter({"n": 1}))
    y = FrequencyTables(center=Counter({"v": 1}))
    assert model_distance(x, y) == pytest.approx(2.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_model_distance_symmetric_nonnegative(s1, s2):
    g1, t1 = random_trees(s1, 3)
    a, b = FrequencyTables(), FrequencyTables()
    for t in t1:
        count_tree(t, a, g1)
    rng = random.Random(s2)
    for t in rng.sample(t1, rng.randint(1, 3)):
        count_tree(t, b, g1, rng.choice([1, 2, 0.5]))
    assert model_distance(a, b) == pytest.approx(model_distance(b, a), abs=1e-15)
    assert model_distance(a, b) >= 0


def test_model_distance_grammar_mismatch(g0_grammar):
    a = fixture_tables(g0_grammar)
    b = FrequencyTables(grammar_signature="something else")
    with pytest.raises(ValueError):
        model_distance(a, b)


# unsupervised training

UNAMBIGUOUS = ["fruit flies like a banana", "a banana like the fruit", "flies like banana", "fruit flies"]


def test_unsupervised_iteration_one_equals_supervised(g0_grammar, g0_lexicon):
    corpus = UNAMBIGUOUS[:3]
    res = train_unsupervised(corpus, g0_grammar, g0_lexicon, cfg=TrainConfig(iterations=1))
    gold = [parse(Model.uniform(g0_grammar, g0_lexicon), s).best.tree for s in corpus]
    sup = train_supervised(gold, g0_grammar, g0_lexicon)
    assert res.model.tables == sup.tables


def test_unsupervised_fixed_point(g0_grammar, g0_lexicon):
    corpus = UNAMBIGUOUS[:3]
    res = train_unsupervised(corpus, g0_grammar, g0_lexicon, cfg=TrainConfig(iterations=5, epsilon=1e-12))
    assert res.converged
    assert len(res.history) == 2 and res.history[1] == 0


def test_unsupervised_zero_iterations_returns_seed(g0_grammar, g0_lexicon, fruit_model):
    res = train_unsupervised(UNAMBIGUOUS, g0_grammar, g0_lexicon, seed=fruit_model, cfg=TrainConfig(iterations=0))
    assert res.model is fruit_model and not res.converged and res.history == []
    res = train_unsupervised(UNAMBIGUOUS, g0_grammar, g0_lexicon, cfg=TrainConfig(iterations=0))
    assert res.model.tables == FrequencyTables()


def test_unsupervised_skips_unparseable(g0_grammar, g0_lexicon):
    res = train_unsupervised(["like like like", "fruit flies"], g0_grammar, g0_lexicon,
                             cfg=TrainConfig(iterations=1))
    assert res.model.tables.total_positions == 2


def test_unsupervised_nonconvergence_reported(g0_grammar, g0_lexicon):
    corpus = ["fruit flies flies"] * 3 + ["fruit like banana"]
    res = train_unsupervised(corpus, g0_grammar, g0_lexicon, cfg=TrainConfig(iterations=2, epsilon=0))
    assert not res.converged and len(res.history) == 2


NNV = ["fruit banana like a banana", "a fruit flies", "banana fruit like the fruit"]
NVN = ["fruit like banana", "banana like the fruit", "a fruit like banana"]
AMBIGUOUS = "fruit flies flies"


def preferred(base):
    from probchart.toy import g0
    g, lex = g0()
    corpus = [base[i % 3] for i in range(18)] + [AMBIGUOUS] * 2
    model = train_unsupervised(corpus, g, lex, cfg=TrainConfig(iterations=5)).model
    top_parse = parse(model, AMBIGUOUS, TrainConfig().parser).best
    oracle_best = Oracle(model, linear(AMBIGUOUS.split())).ranked("S", 0, 3)[0]
    assert str(top_parse.tree) == oracle_best[0]
    return oracle_best[0]


def test_preference_corpus_learns_nn():
    # 18 of 20 sentences show (n n v) unambiguously
    assert preferred(NNV) == "(S (NP (n fruit) (n flies)) (VP (v flies)))"


def test_opposite_corpus_learns_n():
    assert preferred(NVN) == "(S (NP (n fruit)) (VP (v flies) (NP (n flies))))"
