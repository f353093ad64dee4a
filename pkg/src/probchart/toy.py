"""A toy grammar and lexicon with the classic noun-noun / noun-verb ambiguity."""

from .grammar import Grammar, Lexicon, load_grammar, load_lexicon

G0_GRAMMAR = """\
# toy grammar
%pos det n v p
S -> NP VP
NP -> det n
NP -> n
NP -> n n
VP -> v NP
VP -> v
"""

G0_LEXICON = """\
%open n v
the det
a det
fruit n
flies n v
like v p
banana n
"""

FRUIT_FLIES_TREE = "(S (NP (n fruit) (n flies)) (VP (v like) (NP (det a) (n banana))))"


def g0() -> tuple[Grammar, Lexicon]:
    grammar = load_grammar(G0_GRAMMAR)
    return grammar, load_lexicon(G0_LEXICON, grammar)
