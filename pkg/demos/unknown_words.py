# Unknown words
#
# A word missing from the lexicon may take any open-class tag.  Its
# lexical probability is the same for every open tag it is tried with,
# so context alone has to pick: the tag trigram around it and the rule
# being predicted.

import random

from probchart import load_grammar, load_lexicon, parse, train_supervised
from probchart.cli import evaluate
from probchart.trees import Tree

grammar = load_grammar("""
%pos det n pron v
S -> NP VP
NP -> det n
NP -> pron
VP -> v NP
VP -> v
""")
words = {"det": ["the", "a"], "n": ["cafe", "museum", "map", "dog"],
         "pron": ["she", "he", "they"], "v": ["find", "show", "see", "sleep"]}
lexicon = load_lexicon("%open n v pron\n" + "\n".join(f"{w} {t}" for t, ws in words.items() for w in ws),
                       grammar)

rng = random.Random(4)


def np_():
    if rng.random() < 0.4:
        return Tree("NP", (Tree("pron", (), rng.choice(words["pron"])),))
    return Tree("NP", (Tree("det", (), rng.choice(words["det"])), Tree("n", (), rng.choice(words["n"]))))


def sentence():
    verb = Tree("v", (), rng.choice(words["v"]))
    vp = Tree("VP", (verb,)) if verb.word == "sleep" else Tree("VP", (verb, np_()))
    return Tree("S", (np_(), vp))


train = [sentence() for _ in range(150)]
test = [sentence() for _ in range(50)]
model = train_supervised(train, grammar, lexicon)

# Hide three words and see what the parser calls them.

hidden = ["she", "cafe", "find"]
blind = model.with_lexicon(model.lexicon.without(hidden))
print(blind.lexicon.pos_hypotheses("cafe"))
print(parse(blind, "she find the cafe").best.format())

# The evaluation report counts tagging accuracy on the hidden words by
# their true category, next to the one-in-three guess.

for line in evaluate(model, test, hidden).lines()[-10:]:
    print(line)
