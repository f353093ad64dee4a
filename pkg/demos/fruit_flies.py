# Fruit flies like a banana
#
# A six-rule grammar, a handful of hand-bracketed trees, and one ambiguous
# opening.  "fruit flies" can be a compound noun phrase or a noun followed
# by a verb; the tag trigram statistics decide which reading the parser
# pursues first.

from probchart import parse, parse_tree, partial_parse, train_supervised
from probchart.toy import FRUIT_FLIES_TREE, g0

grammar, lexicon = g0()
print(grammar.dumps())

# Training trees.  Most of them put "flies" after another noun and before a
# verb, so the trigram (n, n, v) is common and (n, v, v) never occurs.

treebank = [FRUIT_FLIES_TREE] * 4 + [
    "(S (NP (n flies)) (VP (v like) (NP (det a) (n banana))))",
    "(S (NP (n fruit) (n flies)) (VP (v like) (NP (det the) (n fruit))))",
    "(S (NP (n fruit)) (VP (v flies)))",
]
model = train_supervised([parse_tree(t) for t in treebank], grammar, lexicon)

for tri in [("n", "n", "v"), ("n", "v", "v")]:
    print(tri, "MI =", round(model.mutual_information(*tri), 3))

# Parse.  The default configuration advances three theories per pass and
# stops at the first complete sentence.

result = parse(model, "fruit flies like a banana")
print(result.status, "after", result.passes, "passes")
for p in result.parses:
    print(p.format())

# The trace lists theories in the order they were taken off the agenda.
# The compound-noun prediction comes off before the bare-noun one.

for tid in result.trace[:8]:
    print(result.chart[tid], round(result.chart[tid].score, 4))

# Every complete constituent stays in the chart, so sub-spans can be asked
# for afterwards.

for tree, score in partial_parse(result, 3, 5, "NP"):
    print(tree, round(score, 4))
