# Lattices and multiword entries
#
# Input does not have to be one word per position.  A lattice is a set of
# edges (start, end, word, log score); an idiom is simply an edge that
# spans more than one position, and a recognizer's confidence can ride on
# each edge as a log score.

from probchart import LatticeEdge, ParserConfig, WordLattice, load_lattice, parse, parse_tree, train_supervised
from probchart.toy import FRUIT_FLIES_TREE, g0

grammar, lexicon = g0()
model = train_supervised([parse_tree(FRUIT_FLIES_TREE)] * 3, grammar, lexicon)

# "fruit_flies" is entered as a single noun.  The word-by-word edges are
# still there, so both readings compete in one chart.

model = model.with_lexicon(model.lexicon.extended({("fruit_flies", "n"): 1}))
lattice = load_lattice("""
0 2 fruit_flies
0 1 fruit
1 2 flies
2 3 like
3 4 a
4 5 banana
""")

result = parse(model, lattice)
for p in result.parses:
    print(p.format())

# Ask for everything, not just the first complete parse.

full = parse(model, lattice, ParserConfig(exhaustive=True, min_incomplete_mean=float("-inf")))
for p in full.parses:
    print(p.format())

# A low recognizer score on the idiom edge pushes the parser back to the
# two-word path.

doubtful = WordLattice(5, tuple(
    LatticeEdge(e.start, e.end, e.word, -3.0 if e.word == "fruit_flies" else 0.0)
    for e in lattice.edges))
print(parse(model, doubtful).best.format())
