# Partial parses
#
# When no sentence spans the whole input, the chart still holds every
# phrase it managed to build.  Those can be listed wholesale or requested
# by span and category.

from probchart import coverage, load_grammar, load_lexicon, parse, parse_tree, partial_parse, train_supervised

grammar = load_grammar("""
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
""")
lexicon = load_lexicon("""
%open n v adj
the det
a det
old adj
small adj
dog n
friend n
park n
she pron
sleep v
see v
of p
in p
""", grammar)

treebank = [
    "(S (NP (pron she)) (VP (v see) (NP (det the) (n dog)) (PP (p in) (NP (det the) (n park)))))",
    "(S (NP (NP (det the) (n dog)) (PP (p of) (NP (det a) (n friend)))) (VP (v sleep)))",
    "(S (NP (det the) (adj old) (n dog)) (VP (v see) (NP (pron she))))",
]
model = train_supervised([parse_tree(t) for t in treebank], grammar, lexicon)

# An intransitive verb cannot take the trailing prepositional phrase, so
# there is no sentence over all eleven words.

words = "the small dog of the friend sleep in the old park".split()
result = parse(model, words)
print(result.status)

# What did get built, best score per (category, span):

for cat, start, end, score in coverage(result):
    if end - start > 1:
        print(f"{cat}({start},{end})", " ".join(words[start:end]), round(score, 4))

# The sentence inside the first seven words, and the phrase left over.

for tree, score in partial_parse(result, 0, 7, "S"):
    print(tree)
for tree, score in partial_parse(result, 7, 11, "PP"):
    print(tree)
