"""Frequency tables and the theory scoring function.

All scores are natural logs.  Probabilities come from add-delta smoothing
over fixed supports, so every query is strictly positive and every
conditional distribution normalizes over its declared support:

    trigrams          T**3 cells         (T = pos tags + boundary)
    skip bigrams      T**2 cells
    centre tags       T cells
    rules             rules sharing the lhs
    words given tag   distinct words seen with the tag, plus one unseen slot
    unknown words     open-class tags
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .grammar import (BOUNDARY, TOP_RULE_ID, Grammar, GrammarError, Lexicon, Rule,
                      load_grammar, load_lexicon)

Number = Union[int, float]
# (p0, p1, p2, word, known); word is None when the centre is the boundary
TrigramAlt = tuple

FORMAT_VERSION = 1
DEFAULT_DELTA = 0.5


def smoothed_prob(count: Number, total: Number, support: int, delta: float = DEFAULT_DELTA) -> float:
    """(count + delta) / (total + delta * support)."""
    if support < 1:
        raise ValueError("smoothing support must be at least 1 (empty event space)")
    if delta <= 0:
        raise ValueError("delta must be positive")
    return (count + delta) / (total + delta * support)


def geometric_mean_score(log_sum: float, n: int) -> float:
    """Linear score of a theory whose n contained raw scores have logs summing to log_sum."""
    if n < 1:
        raise ValueError("geometric mean needs at least one raw score")
    return math.exp(log_sum / n)


_TABLES = ("trigram", "skip", "center", "lexical", "tag_total", "rule_in_context", "context_total")


@dataclass
class FrequencyTables:
    trigram: Counter = field(default_factory=Counter)          # (p0, p1, p2)
    skip: Counter = field(default_factory=Counter)             # (p0, p2)
    center: Counter = field(default_factory=Counter)           # p1
    lexical: Counter = field(default_factory=Counter)          # (word, tag)
    tag_total: Counter = field(default_factory=Counter)        # tag
    rule_in_context: Counter = field(default_factory=Counter)  # (rule, p0, p1, p2, parent)
    context_total: Counter = field(default_factory=Counter)    # (lhs, p0, p1, p2, parent)
    total_positions: Number = 0
    grammar_signature: Optional[str] = None

    def __post_init__(self):
        self._words_per_tag: Optional[Counter] = None

    def tables(self) -> dict[str, Counter]:
        return {name: getattr(self, name) for name in _TABLES}

    def copy(self) -> "FrequencyTables":
        return FrequencyTables(**{k: Counter(v) for k, v in self.tables().items()},
                               total_positions=self.total_positions,
                               grammar_signature=self.grammar_signature)

    def merge(self, other: "FrequencyTables") -> "FrequencyTables":
        out = self.copy()
        for name, table in other.tables().items():
            mine = getattr(out, name)
            for k, v in table.items():
                mine[k] += v
        out.total_positions += other.total_positions
        out.grammar_signature = self.grammar_signature or other.grammar_signature
        return out

    def words_per_tag(self) -> Counter:
        if self._words_per_tag is None:
            wpt: Counter = Counter()
            for (_, tag), c in self.lexical.items():
                if c > 0:
                    wpt[tag] += 1
            self._words_per_tag = wpt
        return self._words_per_tag

    def invalidate(self):
        self._words_per_tag = None

    def __eq__(self, other):
        if not isinstance(other, FrequencyTables):
            return NotImplemented
        strip = lambda c: {k: v for k, v in c.items() if v != 0}
        return (self.total_positions == other.total_positions
                and all(strip(a) == strip(b) for a, b in zip(self.tables().values(), other.tables().values())))

    def check_consistency(self, grammar: Optional[Grammar] = None, tol: float = 1e-9) -> None:
        """Assert the marginal relations between tables; raise AssertionError if broken."""
        skip_from_tri: Counter = Counter()
        center_from_tri: Counter = Counter()
        for (p0, p1, p2), c in self.trigram.items():
            skip_from_tri[p0, p2] += c
            center_from_tri[p1] += c
        for key in set(skip_from_tri) | set(self.skip):
            assert abs(skip_from_tri[key] - self.skip[key]) <= tol, ("skip", key)
        for key in set(center_from_tri) | set(self.center):
            assert abs(center_from_tri[key] - self.center[key]) <= tol, ("center", key)
        for key in set(self.lexical):
            assert self.lexical[key] <= self.tag_total[key[1]] + tol, ("lexical", key)
        assert abs(sum(self.center.values()) - self.total_positions) <= tol
        assert abs(sum(self.lexical.values()) - self.total_positions) <= tol
        assert abs(sum(self.tag_total.values()) - self.total_positions) <= tol
        ctx_sum: Counter = Counter()
        for (rule, p0, p1, p2, parent), c in self.rule_in_context.items():
            lhs = grammar.rule(rule).lhs if grammar is not None else None
            ctx_sum[lhs, p0, p1, p2, parent] += c
        totals: Counter = Counter()
        for (lhs, p0, p1, p2, parent), c in self.context_total.items():
            totals[lhs if grammar is not None else None, p0, p1, p2, parent] += c
        for key in set(ctx_sum) | set(totals):
            assert abs(ctx_sum[key] - totals[key]) <= tol, ("context", key)


class Model:
    """Immutable scoring model: tables plus the grammar and lexicon they describe."""

    def __init__(self, tables: FrequencyTables, grammar: Grammar, lexicon: Lexicon,
                 smoothing_delta: float = DEFAULT_DELTA):
        if smoothing_delta <= 0:
            raise ValueError("smoothing_delta must be positive")
        self.tables = tables
        self.grammar = grammar
        self.lexicon = lexicon
        self.smoothing_delta = smoothing_delta
        self.tagset = grammar.tagset
        self.tagset_size = len(self.tagset)
        self._open_mass = sum(tables.tag_total[t] for t in lexicon.open_classes)

    @classmethod
    def uniform(cls, grammar: Grammar, lexicon: Lexicon, smoothing_delta: float = DEFAULT_DELTA) -> "Model":
        return cls(FrequencyTables(grammar_signature=grammar.signature()), grammar, lexicon, smoothing_delta)

    def with_lexicon(self, lexicon: Lexicon) -> "Model":
        return Model(self.tables, self.grammar, lexicon, self.smoothing_delta)

    def _p(self, count, total, support) -> float:
        return smoothed_prob(count, total, support, self.smoothing_delta)

    def trigram_prob(self, p0: str, p1: str, p2: str) -> float:
        t = self.tables
        return self._p(t.trigram[p0, p1, p2], t.total_positions, self.tagset_size ** 3)

    def skip_prob(self, p0: str, p2: str) -> float:
        t = self.tables
        return self._p(t.skip[p0, p2], t.total_positions, self.tagset_size ** 2)

    def center_prob(self, p1: str) -> float:
        t = self.tables
        return self._p(t.center[p1], t.total_positions, self.tagset_size)

    def mutual_information(self, p0: str, p1: str, p2: str) -> float:
        """P(p0 p1 p2) / (P(p0 x p2) P(p1)); not a probability, may exceed 1."""
        return self.trigram_prob(p0, p1, p2) / (self.skip_prob(p0, p2) * self.center_prob(p1))

    def lexical_prob(self, word: Optional[str], tag: str, known: bool) -> float:
        if tag == BOUNDARY:
            return 1.0
        if not self.grammar.is_pos(tag):
            raise ValueError(f"{tag!r} is not a part-of-speech tag")
        t = self.tables
        if known:
            support = t.words_per_tag()[tag] + 1
            return self._p(t.lexical[word.lower(), tag], t.tag_total[tag], support)
        open_classes = self.lexicon.open_classes
        if tag not in open_classes:
            raise ValueError(f"unknown word cannot take closed-class tag {tag!r}")
        return self._p(t.tag_total[tag], self._open_mass, len(open_classes))

    def trigram_score(self, p0: str, p1: str, p2: str, word: Optional[str], known: bool = True) -> float:
        """Log of MI(p0 p1 p2) times the lexical probability of word as p1."""
        return math.log(self.mutual_information(p0, p1, p2)) + math.log(self.lexical_prob(word, p1, known))

    def rule_conditional(self, rule: Rule, trigram: tuple[str, str, str], parent: Union[Rule, int]) -> float:
        parent_id = parent if isinstance(parent, int) else parent.id
        p0, p1, p2 = trigram
        t = self.tables
        return self._p(t.rule_in_context[rule.id, p0, p1, p2, parent_id],
                       t.context_total[rule.lhs, p0, p1, p2, parent_id],
                       self.grammar.lhs_support(rule.lhs))

    def raw_score(self, rule: Rule, trigram_alternatives: Iterable[TrigramAlt],
                  parent_alternatives: Iterable[Union[Rule, int]]) -> float:
        """Log raw score, maximized over trigram and parent ambiguity."""
        return self.raw_score_argmax(rule, trigram_alternatives, parent_alternatives)[0]

    def raw_score_argmax(self, rule, trigram_alternatives, parent_alternatives):
        trigrams = sorted(set(trigram_alternatives), key=_alt_key)
        parents = sorted({p if isinstance(p, int) else p.id for p in parent_alternatives})
        if not trigrams or not parents:
            raise ValueError("raw_score needs nonempty trigram and parent alternatives")
        best = None
        for alt in trigrams:
            p0, p1, p2, word, known = alt
            tri = self.trigram_score(p0, p1, p2, word, known)
            for parent in parents:
                value = math.log(self.rule_conditional(rule, (p0, p1, p2), parent)) + tri
                if best is None or value > best[0]:
                    best = (value, alt, parent)
        return best

    def lexical_raw_score(self, trigram_alternatives: Iterable[TrigramAlt]) -> float:
        """Score of a lexical assignment: best trigram score over context ambiguity."""
        return max(self.trigram_score(*alt) for alt in trigram_alternatives)

    def dumps(self) -> str:
        return dump_model(self)


def _alt_key(alt):
    p0, p1, p2, word, known = alt
    return (p0, p1, p2, word or "", not known)


def _fmt(v: Number) -> str:
    return str(v) if isinstance(v, int) else repr(float(v))


def _num(token: str) -> Number:
    try:
        return int(token)
    except ValueError:
        return float(token)


_RECORDS = {
    "trigram": "TRIGRAM", "skip": "SKIP", "center": "CENTER", "lexical": "LEXICAL",
    "tag_total": "TAGTOTAL", "rule_in_context": "RULECTX", "context_total": "CTXTOTAL",
}
_TABLE_OF = {v: k for k, v in _RECORDS.items()}


def dump_model(model: Model) -> str:
    """Serialize grammar, lexicon, smoothing, and all tables as UTF-8 text."""
    out = [f"probchart-model {FORMAT_VERSION}", f"delta {model.smoothing_delta!r}", "[grammar]"]
    out.append(model.grammar.dumps().rstrip("\n"))
    out.append("[lexicon]")
    out.append(model.lexicon.dumps().rstrip("\n"))
    out.append("[tables]")
    t = model.tables
    out.append(f"TOTAL {_fmt(t.total_positions)}")
    for name, record in _RECORDS.items():
        table = getattr(t, name)
        for key in sorted(table, key=lambda k: tuple(map(str, k)) if isinstance(k, tuple) else (str(k),)):
            value = table[key]
            if value == 0:
                continue
            parts = key if isinstance(key, tuple) else (key,)
            out.append(" ".join([record, *map(str, parts), _fmt(value)]))
    return "\n".join(out) + "\n"


def load_model(text: str) -> Model:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("probchart-model "):
        raise GrammarError("not a model file (missing header)", 1)
    version = lines[0].split()[1]
    if version != str(FORMAT_VERSION):
        raise GrammarError(f"unsupported model version {version}", 1)
    delta = DEFAULT_DELTA
    sections: dict[str, list[tuple[int, str]]] = {"grammar": [], "lexicon": [], "tables": []}
    current = None
    for lineno, line in enumerate(lines[1:], 2):
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1]
            if current not in sections:
                raise GrammarError(f"unknown section {stripped}", lineno)
            continue
        if current is None:
            if stripped.startswith("delta "):
                delta = float(stripped.split()[1])
            elif stripped:
                raise GrammarError(f"unexpected line {stripped!r}", lineno)
            continue
        sections[current].append((lineno, line))
    grammar = load_grammar("\n".join(l for _, l in sections["grammar"]))
    lexicon = load_lexicon("\n".join(l for _, l in sections["lexicon"]), grammar)
    tables = FrequencyTables(grammar_signature=grammar.signature())
    for lineno, line in sections["tables"]:
        parts = line.split()
        if not parts:
            continue
        record, *key, value = parts
        if record == "TOTAL":
            tables.total_positions = _num(value)
            continue
        name = _TABLE_OF.get(record)
        if name is None:
            raise GrammarError(f"unknown table record {record}", lineno)
        if name == "rule_in_context":
            key = (int(key[0]), *key[1:4], int(key[4]))
        elif name == "context_total":
            key = (*key[:4], int(key[4]))
        else:
            key = tuple(key) if len(key) > 1 else key[0]
        try:
            getattr(tables, name)[key] = _num(value)
        except ValueError:
            raise GrammarError(f"malformed count {value!r}", lineno) from None
    return Model(tables, grammar, lexicon, delta)


__all__ = [
    "BOUNDARY", "TOP_RULE_ID", "FrequencyTables", "Model", "smoothed_prob",
    "geometric_mean_score", "dump_model", "load_model",
]
