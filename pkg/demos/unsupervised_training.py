# Training from raw sentences
#
# Without a treebank, parse each sentence, count every parse found, and
# re-estimate.  The first round weights a sentence's k parses equally;
# later rounds weight them by score.  Whether the tables settle is
# reported, not assumed.

from probchart import TrainConfig, parse, train_unsupervised
from probchart.toy import g0

grammar, lexicon = g0()

# Mostly unambiguous sentences with a noun-noun-verb pattern, plus two that
# can be read either way.

corpus = ["fruit banana like a banana", "a fruit flies", "banana fruit like the fruit"] * 6
corpus += ["fruit flies flies"] * 2

result = train_unsupervised(corpus, grammar, lexicon, cfg=TrainConfig(iterations=6))
for i, d in enumerate(result.history, 1):
    print(f"iteration {i}: distance {d:.3g}")
print("converged:", result.converged)

for p in parse(result.model, "fruit flies flies", TrainConfig().parser).parses:
    print(p.format())

# The same procedure on a corpus that favours noun-verb-noun flips the
# preference.

other = ["fruit like banana", "banana like the fruit", "a fruit like banana"] * 6 + ["fruit flies flies"] * 2
flipped = train_unsupervised(other, grammar, lexicon, cfg=TrainConfig(iterations=6)).model
print(parse(flipped, "fruit flies flies", TrainConfig().parser).best.format())
