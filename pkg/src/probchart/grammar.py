"""Context-free grammar, tagset, and lexicon.

Tags are plain strings.  A grammar knows which of them are nonterminals
(every rule left-hand side) and which are part-of-speech terminals; the
boundary tag used to pad trigrams is reserved and never appears in rules
or in the lexicon.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

BOUNDARY = "<s>"
TOP = "<TOP>"
TOP_RULE_ID = -1


class TagKind(enum.Enum):
    NONTERMINAL = "nonterminal"
    POS = "pos"
    BOUNDARY = "boundary"


class GrammarError(ValueError):
    """Malformed grammar, lexicon, or tree input.  Carries a line number when known."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


@dataclass(frozen=True)
class Rule:
    id: int
    lhs: str
    rhs: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs)}"

    @property
    def is_top(self) -> bool:
        return self.id == TOP_RULE_ID


@dataclass(frozen=True)
class Grammar:
    rules: tuple[Rule, ...]
    start: str
    pos_tags: tuple[str, ...]
    by_lhs: dict = field(compare=False, repr=False, default=None)
    by_first_rhs: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        by_lhs: dict[str, list[int]] = {}
        by_first: dict[str, list[int]] = {}
        for r in self.rules:
            by_lhs.setdefault(r.lhs, []).append(r.id)
            by_first.setdefault(r.rhs[0], []).append(r.id)
        object.__setattr__(self, "by_lhs", {k: tuple(v) for k, v in by_lhs.items()})
        object.__setattr__(self, "by_first_rhs", {k: tuple(v) for k, v in by_first.items()})
        object.__setattr__(self, "_by_pair", {(r.lhs, r.rhs): r for r in self.rules})
        object.__setattr__(self, "_pos_set", frozenset(self.pos_tags))

    @property
    def top_rule(self) -> Rule:
        return Rule(TOP_RULE_ID, TOP, (self.start,))

    @property
    def nonterminals(self) -> tuple[str, ...]:
        return tuple(self.by_lhs)

    @property
    def tagset(self) -> tuple[str, ...]:
        """Part-of-speech tags plus the boundary tag, the trigram alphabet."""
        return self.pos_tags + (BOUNDARY,)

    def kind(self, tag: str) -> TagKind:
        if tag == BOUNDARY:
            return TagKind.BOUNDARY
        if tag in self.by_lhs:
            return TagKind.NONTERMINAL
        if tag in self._pos_set:
            return TagKind.POS
        raise KeyError(tag)

    def is_pos(self, tag: str) -> bool:
        return tag in self._pos_set

    def rule(self, rule_id: int) -> Rule:
        if rule_id == TOP_RULE_ID:
            return self.top_rule
        return self.rules[rule_id]

    def find_rule(self, lhs: str, rhs: Iterable[str]) -> Optional[Rule]:
        return self._by_pair.get((lhs, tuple(rhs)))

    def rules_predictable_from(self, needed: str) -> list[Rule]:
        """Rules an Earley predictor proposes for a theory waiting on `needed`."""
        return [self.rules[i] for i in self.by_lhs.get(needed, ())]

    def lhs_support(self, lhs: str) -> int:
        return len(self.by_lhs.get(lhs, ()))

    def signature(self) -> str:
        return "|".join(str(r) for r in self.rules) + f"|start={self.start}"

    def dumps(self) -> str:
        lines = [f"%start {self.start}", "%pos " + " ".join(self.pos_tags)]
        lines.extend(str(r) for r in self.rules)
        return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def load_grammar(text: str) -> Grammar:
    """Parse grammar-file text.

    One rule per line ``LHS -> RHS1 RHS2 ...``; ``#`` starts a comment.
    ``%start TAG`` overrides the default start (first rule's lhs) and
    ``%pos t1 t2 ...`` declares terminal tags.  Without ``%pos``, every rhs
    symbol that never appears as a lhs is taken to be a part-of-speech tag.
    """
    raw_rules: list[tuple[str, tuple[str, ...], int]] = []
    declared_pos: Optional[list[str]] = None
    start: Optional[str] = None
    start_line = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = _strip_comment(line)
        if not line:
            continue
        if line.startswith("%"):
            parts = line.split()
            if parts[0] == "%start":
                if len(parts) != 2:
                    raise GrammarError("%start takes exactly one tag", lineno)
                start, start_line = parts[1], lineno
            elif parts[0] == "%pos":
                declared_pos = (declared_pos or []) + [p for p in parts[1:] if p not in (declared_pos or [])]
            else:
                raise GrammarError(f"unknown directive {parts[0]}", lineno)
            continue
        if "->" not in line:
            raise GrammarError(f"expected 'LHS -> RHS', got {line!r}", lineno)
        lhs, rhs = line.split("->", 1)
        lhs_parts = lhs.split()
        rhs_parts = tuple(rhs.split())
        if len(lhs_parts) != 1:
            raise GrammarError("rule must have exactly one lhs symbol", lineno)
        if not rhs_parts:
            raise GrammarError("empty right-hand side", lineno)
        if any(s in (BOUNDARY, TOP) for s in (lhs_parts[0],) + rhs_parts):
            raise GrammarError("reserved tag used in rule", lineno)
        raw_rules.append((lhs_parts[0], rhs_parts, lineno))

    if not raw_rules:
        raise GrammarError("empty grammar")

    lhs_set = {lhs for lhs, _, _ in raw_rules}
    if declared_pos is None:
        seen: list[str] = []
        for _, rhs, _ in raw_rules:
            for s in rhs:
                if s not in lhs_set and s not in seen:
                    seen.append(s)
        pos_tags = seen
    else:
        pos_tags = declared_pos
        clash = lhs_set.intersection(pos_tags)
        if clash:
            raise GrammarError(f"tag declared %pos but used as lhs: {sorted(clash)[0]}")
        for _, rhs, lineno in raw_rules:
            for s in rhs:
                if s not in lhs_set and s not in pos_tags:
                    raise GrammarError(f"undeclared tag {s!r}", lineno)

    rules: list[Rule] = []
    seen_pairs: set = set()
    for lhs, rhs, lineno in raw_rules:
        if (lhs, rhs) in seen_pairs:
            raise GrammarError(f"duplicate rule {lhs} -> {' '.join(rhs)}", lineno)
        seen_pairs.add((lhs, rhs))
        rules.append(Rule(len(rules), lhs, rhs))

    if start is None:
        start = rules[0].lhs
    elif start not in lhs_set:
        raise GrammarError(f"start symbol {start!r} has no rules", start_line)
    return Grammar(tuple(rules), start, tuple(pos_tags))


@dataclass(frozen=True)
class Lexicon:
    entries: dict  # word -> tuple[(tag, count), ...]
    open_classes: tuple[str, ...] = ()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.entries

    def pos_hypotheses(self, word: str) -> list[tuple[str, bool]]:
        """Candidate tags for a surface word, flagged known/unknown."""
        entry = self.entries.get(word.lower())
        if entry is not None:
            return [(tag, True) for tag, _ in entry]
        return [(tag, False) for tag in self.open_classes]

    def without(self, words: Iterable[str]) -> "Lexicon":
        drop = {w.lower() for w in words}
        return Lexicon({w: e for w, e in self.entries.items() if w not in drop}, self.open_classes)

    def extended(self, pairs: dict) -> "Lexicon":
        """Add (word, tag) -> count pairs, creating entries or tags as needed."""
        merged = {w: dict(e) for w, e in self.entries.items()}
        for (word, tag), count in pairs.items():
            slot = merged.setdefault(word.lower(), {})
            slot[tag] = slot.get(tag, 0) + count
        return Lexicon({w: tuple(e.items()) for w, e in merged.items()}, self.open_classes)

    def dumps(self) -> str:
        lines = []
        if self.open_classes:
            lines.append("%open " + " ".join(self.open_classes))
        for word, entry in self.entries.items():
            lines.append(" ".join([word] + [f"{t} {_fmt_count(c)}" for t, c in entry]))
        return "\n".join(lines) + "\n"


def _fmt_count(c) -> str:
    return str(c) if isinstance(c, int) else repr(c)


def _parse_count(token: str, lineno: int):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = float(token)
    except ValueError:
        raise GrammarError(f"malformed count {token!r}", lineno) from None
    if value < 0:
        raise GrammarError(f"negative count {token!r}", lineno)
    return value


def load_lexicon(text: str, grammar: Optional[Grammar] = None) -> Lexicon:
    """Parse lexicon-file text: ``word tag [count] tag [count] ...`` per line.

    Words are case-folded.  When `grammar` is given, every tag must be one
    of its part-of-speech tags.
    """
    entries: dict[str, dict[str, object]] = {}
    open_classes: list[str] = []

    def check(tag: str, lineno: int):
        if tag in (BOUNDARY, TOP):
            raise GrammarError(f"reserved tag {tag!r} in lexicon", lineno)
        if grammar is not None and not grammar.is_pos(tag):
            raise GrammarError(f"unknown tag {tag!r}", lineno)

    for lineno, line in enumerate(text.splitlines(), 1):
        line = _strip_comment(line)
        if not line:
            continue
        parts = line.split()
        if parts[0] == "%open":
            for tag in parts[1:]:
                check(tag, lineno)
                if tag not in open_classes:
                    open_classes.append(tag)
            continue
        if parts[0].startswith("%"):
            raise GrammarError(f"unknown directive {parts[0]}", lineno)
        word = parts[0].lower()
        rest = parts[1:]
        if not rest:
            raise GrammarError(f"word {word!r} has no tags", lineno)
        slot = entries.setdefault(word, {})
        i = 0
        while i < len(rest):
            tag = rest[i]
            if _looks_numeric(tag):
                raise GrammarError(f"expected tag, got count {tag!r}", lineno)
            check(tag, lineno)
            count = 0
            if i + 1 < len(rest) and _looks_numeric(rest[i + 1]):
                count = _parse_count(rest[i + 1], lineno)
                i += 1
            slot[tag] = slot.get(tag, 0) + count
            i += 1
    return Lexicon({w: tuple(e.items()) for w, e in entries.items()}, tuple(open_classes))


def _looks_numeric(token: str) -> bool:
    return token[:1].isdigit() or (token[:1] in "-+." and token[1:2].isdigit())
