"""A small English-like grammar and a seeded sentence generator for it.

Prepositional phrases attach by preposition: "with" and "near" mostly to
the verb phrase, "of" and "in" mostly to the noun phrase, so attachment is
learnable from the rule contexts.
"""

import random

from probchart.grammar import load_grammar, load_lexicon
from probchart.trees import Tree

GRAMMAR = """\
%pos det adj n pron v p
S -> NP VP
NP -> det n
NP -> det adj n
NP -> pron
NP -> NP PP
VP -> v NP
VP -> v NP PP
VP -> v
PP -> p NP
"""

WORDS = {
    "det": ["the", "a"],
    "adj": ["old", "small", "red"],
    "n": ["cafe", "museum", "dog", "map", "park", "friend", "key"],
    "pron": ["she", "he", "they", "we"],
    "v": ["find", "show", "see", "like", "visit", "sleep"],
    "p": ["with", "near", "of", "in"],
}

MASKED = ["she", "cafe", "museum", "find", "show"]
OPEN = ("n", "v", "adj", "pron")
VERB_ATTACH = {"with": 0.85, "near": 0.8, "of": 0.1, "in": 0.2}


def grammar_and_lexicon():
    g = load_grammar(GRAMMAR)
    lines = ["%open " + " ".join(OPEN)]
    lines += [f"{w} {t}" for t, ws in WORDS.items() for w in ws]
    return g, load_lexicon("\n".join(lines), g)


def _leaf(tag, rng):
    return Tree(tag, (), rng.choice(WORDS[tag]))


def _np(rng, subject=False):
    r = rng.random()
    if subject and r < 0.5 or not subject and r < 0.1:
        return Tree("NP", (_leaf("pron", rng),))
    if r < 0.75:
        return Tree("NP", (_leaf("det", rng), _leaf("n", rng)))
    return Tree("NP", (_leaf("det", rng), _leaf("adj", rng), _leaf("n", rng)))


def _pp(rng, prep):
    return Tree("PP", (Tree("p", (), prep), _np(rng)))


def sentence(rng: random.Random) -> Tree:
    subj = _np(rng, subject=True)
    verb = _leaf("v", rng)
    if verb.word == "sleep":
        return Tree("S", (subj, Tree("VP", (verb,))))
    obj = _np(rng)
    if rng.random() < 0.5:
        return Tree("S", (subj, Tree("VP", (verb, obj))))
    prep = rng.choice(WORDS["p"])
    if rng.random() < VERB_ATTACH[prep]:
        vp = Tree("VP", (verb, obj, _pp(rng, prep)))
    else:
        vp = Tree("VP", (verb, Tree("NP", (obj, _pp(rng, prep)))))
    return Tree("S", (subj, vp))


def corpus(n: int, seed: int) -> list[Tree]:
    rng = random.Random(seed)
    return [sentence(rng) for _ in range(n)]
