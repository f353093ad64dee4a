import pytest

from probchart.grammar import GrammarError
from probchart.toy import FRUIT_FLIES_TREE
from probchart.trees import check_tree, parse_tree, read_treebank


def test_round_trip():
    t = parse_tree(FRUIT_FLIES_TREE)
    assert str(t) == FRUIT_FLIES_TREE
    assert t.words() == ["fruit", "flies", "like", "a", "banana"]
    assert t.tags() == ["n", "n", "v", "det", "n"]


def test_node_spans():
    t = parse_tree(FRUIT_FLIES_TREE)
    spans = [(n.label, s, e) for n, s, e, _ in t.nodes() if not n.is_leaf]
    assert spans == [("S", 0, 5), ("NP", 0, 2), ("VP", 2, 5), ("NP", 3, 5)]


@pytest.mark.parametrize("bad", ["", "(S (n x)", "(S (n x y))", "(S)", "(S (n x)) extra"])
def test_malformed(bad):
    with pytest.raises(GrammarError):
        parse_tree(bad)


def test_treebank_line_numbers():
    with pytest.raises(GrammarError, match="line 2"):
        read_treebank("(S (n a))\n(S (n b)\n")


def test_check_tree_names_bad_node(g0_grammar):
    check_tree(parse_tree(FRUIT_FLIES_TREE), g0_grammar)
    with pytest.raises(GrammarError, match=r"\(0,1\) uses rule NP -> det"):
        check_tree(parse_tree("(S (NP (det a)) (VP (v x)))"), g0_grammar)
