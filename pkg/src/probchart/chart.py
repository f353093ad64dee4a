"""Word lattices, theories (chart edges), the chart with its well-formed
substring table, and the score-ordered agenda of incomplete theories."""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from .grammar import BOUNDARY, TOP_RULE_ID, GrammarError, Lexicon, Rule
from .stats import Model
from .trees import Tree


@dataclass(frozen=True)
class LatticeEdge:
    start: int
    end: int
    word: str
    input_log_score: float = 0.0

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError(f"lattice edge {self.word!r} must have end > start")
        if self.input_log_score > 0:
            raise ValueError("input_log_score is a log probability and must be <= 0")


@dataclass(frozen=True)
class WordLattice:
    n: int
    edges: tuple[LatticeEdge, ...]

    def __post_init__(self):
        for e in self.edges:
            if e.start < 0 or e.end > self.n:
                raise ValueError(f"edge {e} lies outside 0..{self.n}")
        if self.edges and not self._connected():
            raise ValueError(f"no path of edges connects 0 to {self.n}")

    @classmethod
    def from_sentence(cls, sentence) -> "WordLattice":
        words = sentence.split() if isinstance(sentence, str) else list(sentence)
        return cls(len(words), tuple(LatticeEdge(i, i + 1, w) for i, w in enumerate(words)))

    def _connected(self) -> bool:
        reach = {0}
        for e in sorted(self.edges, key=lambda e: e.start):
            if e.start in reach:
                reach.add(e.end)
        return self.n in reach

    def edges_from(self, i: int) -> list[LatticeEdge]:
        return [e for e in self.edges if e.start == i]

    def edges_to(self, i: int) -> list[LatticeEdge]:
        return [e for e in self.edges if e.end == i]

    def dumps(self) -> str:
        return "".join(f"{e.start} {e.end} {e.word} {e.input_log_score!r}\n" for e in self.edges)


def load_lattice(text: str) -> WordLattice:
    """Lattice file: ``start end word [log_score]`` per line, ``#`` comments."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise GrammarError("expected 'start end word [log_score]'", lineno)
        try:
            start, end = int(parts[0]), int(parts[1])
            score = float(parts[3]) if len(parts) == 4 else 0.0
            edges.append(LatticeEdge(start, end, parts[2], score))
        except ValueError as exc:
            raise GrammarError(str(exc), lineno) from None
    if not edges:
        return WordLattice(0, ())
    try:
        return WordLattice(max(e.end for e in edges), tuple(edges))
    except ValueError as exc:
        raise GrammarError(str(exc)) from None


@dataclass(frozen=True)
class Lexical:
    """Marker for a lexical assignment theory: a lattice edge read as one tag."""
    word: str
    tag: str
    edge: LatticeEdge
    known: bool


@dataclass
class Theory:
    id: int
    rule: Optional[Rule]
    lexical: Optional[Lexical]
    start: int
    end: int
    dot: int
    children: tuple[int, ...]
    parents: frozenset
    own_raw: float
    acc_log_sum: float
    acc_count: int

    @property
    def category(self) -> str:
        return self.lexical.tag if self.lexical is not None else self.rule.lhs

    @property
    def complete(self) -> bool:
        return self.lexical is not None or self.dot == len(self.rule.rhs)

    @property
    def needed(self) -> Optional[str]:
        if self.complete:
            return None
        return self.rule.rhs[self.dot]

    @property
    def parent(self) -> int:
        """The single parent rule id this theory was predicted under."""
        return next(iter(self.parents)) if self.parents else TOP_RULE_ID

    @property
    def mean(self) -> float:
        return self.acc_log_sum / self.acc_count

    @property
    def score(self) -> float:
        return math.exp(self.mean)

    def dedup_key(self):
        rule_id = self.rule.id if self.rule is not None else None
        return (rule_id, self.lexical, self.dot, self.start, self.end, self.children, self.parents)

    def signature(self):
        rule_id = self.rule.id if self.rule is not None else None
        return (rule_id, self.lexical, self.dot, self.start, self.end, self.parents)

    def __str__(self) -> str:
        if self.lexical is not None:
            return f"[{self.lexical.tag} -> {self.lexical.word} . ({self.start},{self.end})]"
        rhs = list(self.rule.rhs)
        rhs.insert(self.dot, ".")
        return f"[{self.rule.lhs} -> {' '.join(rhs)} ({self.start},{self.end})]"


INSERTED, DUPLICATE, DOMINATED = "inserted", "duplicate", "dominated"


class Chart:
    """All theories of one parse, indexed for prediction, completion and retrieval."""

    def __init__(self, n: int, dominance_prune: bool = False):
        self.n = n
        self.dominance_prune = dominance_prune
        self.theories: list[Theory] = []
        self.wfst: dict[tuple[int, int, str], list[int]] = defaultdict(list)
        self.by_start: dict[tuple[int, str], list[int]] = defaultdict(list)  # complete, by (start, cat)
        self.waiting: dict[tuple[int, str], list[int]] = defaultdict(list)   # advanced, by (frontier, needed)
        self.signature_index: dict[tuple, list[int]] = defaultdict(list)
        self._keys: set = set()
        self._agenda: list[tuple[float, int]] = []
        self._in_agenda: set[int] = set()
        self.gaps: list[LatticeEdge] = []

    def __len__(self) -> int:
        return len(self.theories)

    def __getitem__(self, theory_id: int) -> Theory:
        return self.theories[theory_id]

    def next_id(self) -> int:
        return len(self.theories)

    def insert_theory(self, t: Theory) -> str:
        """Add t unless it exactly duplicates (or, when pruning, is dominated by) an existing theory."""
        key = t.dedup_key()
        if key in self._keys:
            return DUPLICATE
        sig = t.signature()
        if self.dominance_prune:
            for other_id in self.signature_index.get(sig, ()):
                other = self.theories[other_id]
                if other.acc_count == t.acc_count and other.acc_log_sum >= t.acc_log_sum:
                    return DOMINATED
        if t.id != len(self.theories):
            raise ValueError("theory ids must be dense and allocated by the chart")
        self._keys.add(key)
        self.theories.append(t)
        self.signature_index[sig].append(t.id)
        if t.complete:
            self.wfst[t.start, t.end, t.category].append(t.id)
            self.by_start[t.start, t.category].append(t.id)
        else:
            heapq.heappush(self._agenda, (-t.mean, t.id))
            self._in_agenda.add(t.id)
        return INSERTED

    @property
    def agenda_size(self) -> int:
        return len(self._in_agenda)

    def best_incomplete_mean(self) -> Optional[float]:
        return -self._agenda[0][0] if self._agenda else None

    def pop_top_incomplete(self, n: int) -> list[Theory]:
        """Remove and return up to n incomplete theories, best mean first, ties by lower id."""
        out = []
        while self._agenda and len(out) < n:
            _, tid = heapq.heappop(self._agenda)
            self._in_agenda.discard(tid)
            out.append(self.theories[tid])
        return out

    def agenda_ids(self) -> list[int]:
        return sorted(self._in_agenda)

    def wfst_query(self, start: int, end: int, cat: str) -> list[Theory]:
        if not 0 <= start < end <= self.n:
            raise ValueError(f"invalid span ({start},{end}) for chart of length {self.n}")
        found = [self.theories[i] for i in self.wfst.get((start, end, cat), ())]
        return sorted(found, key=lambda t: (-t.mean, t.id))

    def complete_from(self, start: int, cat: str) -> list[Theory]:
        return [self.theories[i] for i in self.by_start.get((start, cat), ())]

    def constituents(self, lexical: bool = False) -> list[Theory]:
        return [t for t in self.theories if t.complete and (lexical or t.lexical is None)]

    def tree(self, t: Theory) -> Tree:
        if t.lexical is not None:
            return Tree(t.lexical.tag, (), t.lexical.word)
        return Tree(t.rule.lhs, tuple(self.tree(self.theories[c]) for c in t.children))

    def raw_scores(self, t: Theory) -> list[float]:
        """Every contained raw score, gathered by walking the children."""
        out = [t.own_raw]
        for c in t.children:
            out.extend(self.raw_scores(self.theories[c]))
        return out


def trigram_alternatives(lattice: WordLattice, lexicon: Lexicon, i: int,
                         edge: Optional[LatticeEdge] = None, tag: Optional[str] = None) -> list[tuple]:
    """Tag trigrams centred at position i over every lattice path through i.

    Restricting to one edge (and tag) gives the alternatives for a lexical
    assignment; otherwise the centre ranges over every edge leaving i.
    Positions outside the lattice read as the boundary tag.
    """
    def tags_of(edges):
        out = []
        for e in edges:
            for t, _ in lexicon.pos_hypotheses(e.word):
                if t not in out:
                    out.append(t)
        return out or [BOUNDARY]

    left = tags_of(lattice.edges_to(i))
    centres = [edge] if edge is not None else lattice.edges_from(i)
    alts: list[tuple] = []
    if not centres:
        alts.extend((p0, BOUNDARY, BOUNDARY, None, True) for p0 in left)
    for e in centres:
        right = tags_of(lattice.edges_from(e.end))
        for t, known in lexicon.pos_hypotheses(e.word):
            if tag is not None and t != tag:
                continue
            for p0 in left:
                for p2 in right:
                    alts.append((p0, t, p2, e.word, known))
    return alts


def build_chart(lattice: WordLattice, lexicon: Lexicon, model: Model, dominance_prune: bool = False) -> Chart:
    """A chart holding one complete lexical theory per (edge, tag hypothesis)."""
    chart = Chart(lattice.n, dominance_prune)
    for e in lattice.edges:
        hyps = lexicon.pos_hypotheses(e.word)
        if not hyps:
            chart.gaps.append(e)
            continue
        for tag, known in hyps:
            alts = trigram_alternatives(lattice, lexicon, e.start, e, tag)
            raw = model.lexical_raw_score(alts) + e.input_log_score
            t = Theory(chart.next_id(), None, Lexical(e.word, tag, e, known), e.start, e.end,
                       0, (), frozenset(), raw, raw, 1)
            chart.insert_theory(t)
    return chart
