"""Best-first chart parsing with Earley-style prediction.

Each pass pops the N best incomplete theories from the agenda and advances
them against the chart.  A theory that has been advanced waits in the
completion index, so any constituent completed later extends it at once;
nothing is ever pruned from the agenda.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .chart import (INSERTED, Chart, Theory, WordLattice, build_chart,
                    trigram_alternatives)
from .grammar import TOP_RULE_ID, GrammarError, Rule, TagKind
from .stats import Model
from .trees import Tree

log = logging.getLogger(__name__)

COMPLETE, PARTIAL_ONLY, FAILED = "complete", "partial_only", "failed"


@dataclass
class ParserConfig:
    n: int = 3
    max_passes: int = 10000
    max_chart: int = 500000
    min_incomplete_mean: float = -50.0
    goal: Optional[str] = None
    exhaustive: bool = False
    dominance_prune: bool = False

    def __post_init__(self):
        if self.n < 1 or self.max_passes < 1 or self.max_chart < 1:
            raise ValueError("parser bounds must be positive")


@dataclass(frozen=True)
class Parse:
    tree: Tree
    log_score: float
    theory_id: int

    @property
    def score(self) -> float:
        return math.exp(self.log_score)

    def format(self) -> str:
        return f"{self.tree}\tlog={self.log_score:.6g}\tscore={self.score:.6g}"


@dataclass
class ParseResult:
    status: str
    parses: list[Parse]
    passes: int
    chart: Chart
    trace: list[int] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    engine: Optional["ChartParser"] = field(default=None, repr=False)

    @property
    def trees(self) -> list[tuple[str, float]]:
        return [(str(p.tree), p.score) for p in self.parses]

    @property
    def best(self) -> Optional[Parse]:
        return self.parses[0] if self.parses else None


def should_stop(passes: int, chart_size: int, best_incomplete_mean: Optional[float],
                cfg: ParserConfig) -> bool:
    if best_incomplete_mean is None:
        return True
    return (passes >= cfg.max_passes or chart_size >= cfg.max_chart
            or best_incomplete_mean < cfg.min_incomplete_mean)


class ChartParser:
    """Parse state for one lattice.  Kept alive in the result for partial-parse queries."""

    def __init__(self, model: Model, lattice: WordLattice, config: Optional[ParserConfig] = None):
        self.model = model
        self.grammar = model.grammar
        self.lattice = lattice
        self.config = config or ParserConfig()
        self.goal = self.config.goal or self.grammar.start
        if self.goal not in self.grammar.by_lhs:
            raise GrammarError(f"goal {self.goal!r} is not a nonterminal of the grammar")
        prune = self.config.dominance_prune and not self.config.exhaustive
        self.chart = build_chart(lattice, model.lexicon, model, prune)
        self.passes = 0
        self.trace: list[int] = []
        self.found: list[int] = []
        self.overflow = False
        self._predicted: set = set()
        self._alts: dict[int, list] = {}
        self._raw: dict[tuple, float] = {}

    # scoring

    def alternatives_at(self, i: int) -> list:
        if i not in self._alts:
            self._alts[i] = trigram_alternatives(self.lattice, self.model.lexicon, i)
        return self._alts[i]

    def prediction_raw(self, rule: Rule, i: int, parent_id: int) -> float:
        key = (rule.id, i, parent_id)
        if key not in self._raw:
            self._raw[key] = self.model.raw_score(rule, self.alternatives_at(i), [parent_id])
        return self._raw[key]

    # chart operations

    def _insert(self, t: Theory) -> bool:
        if len(self.chart) >= self.config.max_chart:
            self.overflow = True
            return False
        if self.chart.insert_theory(t) != INSERTED:
            return False
        if not t.complete:
            self.predict(t.needed, t.end, t.rule.id)
        elif (t.rule is not None and t.rule.lhs == self.goal and t.parent == TOP_RULE_ID
              and t.start == 0 and t.end == self.chart.n):
            self.found.append(t.id)
        return True

    def predict(self, cat: str, i: int, parent_id: int) -> list[Theory]:
        """Dot-0 theories for every rule of `cat` at i, once per predicting parent rule."""
        if self.grammar.kind(cat) is not TagKind.NONTERMINAL:
            return []
        key = (i, cat, parent_id)
        if key in self._predicted:
            return []
        self._predicted.add(key)
        out = []
        for rule in self.grammar.rules_predictable_from(cat):
            raw = self.prediction_raw(rule, i, parent_id)
            t = Theory(self.chart.next_id(), rule, None, i, i, 0, (), frozenset([parent_id]), raw, raw, 1)
            if self._insert(t):
                out.append(t)
        return out

    def _fits(self, waiting: Theory, done: Theory) -> bool:
        return done.lexical is not None or done.parent == waiting.rule.id

    def _extend(self, t: Theory, u: Theory) -> Theory:
        return Theory(self.chart.next_id(), t.rule, None, t.start, u.end, t.dot + 1,
                      t.children + (u.id,), t.parents, t.own_raw,
                      t.acc_log_sum + u.acc_log_sum, t.acc_count + u.acc_count)

    def advance(self, t: Theory) -> list[Theory]:
        """Extend t by every matching constituent at its frontier, completing eagerly."""
        needed = t.needed
        self.chart.waiting[t.end, needed].append(t.id)
        work = deque((t, u) for u in self.chart.complete_from(t.end, needed) if self._fits(t, u))
        emitted = []
        while work and not self.overflow:
            w, u = work.popleft()
            new = self._extend(w, u)
            if not self._insert(new):
                continue
            emitted.append(new)
            if new.complete:
                for wid in self.chart.waiting.get((new.start, new.category), ()):
                    other = self.chart[wid]
                    if self._fits(other, new):
                        work.append((other, new))
        return emitted

    # control

    def seed(self, cat: str, start: int = 0) -> list[Theory]:
        return self.predict(cat, start, TOP_RULE_ID)

    def run(self, max_passes: Optional[int] = None, continuation: bool = False) -> None:
        """Run passes; a continuation ignores the score floor and early exit, draining the agenda."""
        cfg = self.config
        limit = cfg.max_passes if max_passes is None else self.passes + max_passes
        while True:
            best = self.chart.best_incomplete_mean()
            if best is None or self.passes >= limit or len(self.chart) >= cfg.max_chart:
                break
            if not continuation and should_stop(self.passes, len(self.chart), best, cfg):
                break
            batch = self.chart.pop_top_incomplete(cfg.n)
            self.passes += 1
            for t in batch:
                self.trace.append(t.id)
                self.advance(t)
            if self.overflow:
                break
            if self.found and not cfg.exhaustive and not continuation:
                break

    def coverable(self) -> bool:
        gaps = set(self.chart.gaps)
        reach = {0}
        for e in sorted(self.lattice.edges, key=lambda e: e.start):
            if e not in gaps and e.start in reach:
                reach.add(e.end)
        return self.chart.n in reach

    def result(self) -> ParseResult:
        chart = self.chart
        goals = sorted((chart[i] for i in self.found), key=lambda t: (-t.mean, t.id))
        parses = [Parse(chart.tree(t), t.mean, t.id) for t in goals]
        diagnostics = [f"no lexical hypotheses for {e.word!r} at ({e.start},{e.end})" for e in chart.gaps]
        if self.overflow or len(chart) >= self.config.max_chart:
            diagnostics.append(f"chart size bound {self.config.max_chart} reached")
        if self.passes >= self.config.max_passes:
            diagnostics.append(f"pass bound {self.config.max_passes} reached")
        if parses:
            status = COMPLETE
        elif chart.constituents():
            status = PARTIAL_ONLY
        else:
            status = FAILED
        return ParseResult(status, parses, self.passes, chart, list(self.trace), diagnostics, self)


def parse(model: Model, lattice, config: Optional[ParserConfig] = None) -> ParseResult:
    """Parse a lattice (or a plain sentence string) into goal-category trees, best first."""
    if not isinstance(lattice, WordLattice):
        lattice = WordLattice.from_sentence(lattice)
    engine = ChartParser(model, lattice, config)
    if lattice.n == 0 or not lattice.edges:
        res = engine.result()
        res.diagnostics.append("empty input")
        return res
    if not engine.coverable():
        res = engine.result()
        res.diagnostics.append("unparseable token gap: no lattice path can be tagged")
        return res
    engine.seed(engine.goal, 0)
    engine.run()
    return engine.result()


def partial_parse(result: ParseResult, start: int, end: int, cat: str,
                  max_passes: Optional[int] = None) -> list[tuple[Tree, float]]:
    """Trees of category `cat` spanning exactly (start, end), best first.

    The category is predicted at `start` if it was not already, and the
    agenda is drained (bounded by `max_passes`) before answering, so the
    answer is every derivation the chart can build over that span.
    """
    engine = result.engine
    if engine is None:
        raise ValueError("result does not retain its parser state")
    n = engine.chart.n
    if not 0 <= start < end <= n:
        raise ValueError(f"invalid span ({start},{end}) for input of length {n}")
    if engine.grammar.kind(cat) is TagKind.NONTERMINAL:
        engine.seed(cat, start)
        engine.run(max_passes=max_passes or engine.config.max_passes, continuation=True)
    seen: dict[str, tuple[Tree, float]] = {}
    for t in engine.chart.wfst_query(start, end, cat):
        tree = engine.chart.tree(t)
        seen.setdefault(str(tree), (tree, t.score))
    return list(seen.values())


def coverage(result: ParseResult, max_passes: Optional[int] = None) -> list[tuple[str, int, int, float]]:
    """Every complete constituent the chart can build bottom-up, as (cat, start, end, best score).

    Each nonterminal is predicted at each position under the virtual root,
    the agenda is drained, and constituents are listed by span.
    """
    engine = result.engine
    n = engine.chart.n
    for i in range(n):
        for cat in engine.grammar.nonterminals:
            engine.seed(cat, i)
    engine.run(max_passes=max_passes or engine.config.max_passes, continuation=True)
    best: dict[tuple[str, int, int], float] = {}
    for t in engine.chart.constituents():
        key = (t.category, t.start, t.end)
        best[key] = max(best.get(key, -math.inf), t.mean)
    rows = [(cat, s, e, math.exp(m)) for (cat, s, e), m in best.items()]
    return sorted(rows, key=lambda r: (r[1], -r[2], r[0]))
