"""Bracketed parse trees: ``(CAT child child ...)`` with ``(pos word)`` leaves."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from .grammar import Grammar, GrammarError

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


@dataclass(frozen=True)
class Tree:
    label: str
    children: tuple["Tree", ...] = ()
    word: Optional[str] = None

    @property
    def is_leaf(self) -> bool:
        return self.word is not None

    def __str__(self) -> str:
        if self.is_leaf:
            return f"({self.label} {self.word})"
        return "(" + self.label + " " + " ".join(str(c) for c in self.children) + ")"

    def leaves(self) -> list["Tree"]:
        if self.is_leaf:
            return [self]
        out: list[Tree] = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def words(self) -> list[str]:
        return [leaf.word for leaf in self.leaves()]

    def tags(self) -> list[str]:
        return [leaf.label for leaf in self.leaves()]

    def nodes(self, start: int = 0, parent: Optional["Tree"] = None) -> Iterator[tuple["Tree", int, int, Optional["Tree"]]]:
        """Yield (node, start, end, parent) in preorder; spans count leaves."""
        if self.is_leaf:
            yield self, start, start + 1, parent
            return
        end = start + len(self.leaves())
        yield self, start, end, parent
        pos = start
        for c in self.children:
            yield from c.nodes(pos, self)
            pos += len(c.leaves())

    def rhs(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.children)


def parse_tree(text: str) -> Tree:
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise GrammarError("empty tree")
    tree, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise GrammarError(f"trailing tokens after tree: {' '.join(tokens[pos:])!r}")
    return tree


def _parse(tokens: list[str], pos: int) -> tuple[Tree, int]:
    if tokens[pos] != "(":
        raise GrammarError(f"expected '(' at token {pos}, got {tokens[pos]!r}")
    if pos + 2 >= len(tokens):
        raise GrammarError("unterminated tree")
    label = tokens[pos + 1]
    if label in "()":
        raise GrammarError("missing node label")
    pos += 2
    if tokens[pos] not in "()":
        word = tokens[pos]
        if pos + 1 >= len(tokens) or tokens[pos + 1] != ")":
            raise GrammarError(f"leaf ({label} {word} ...) has extra material")
        return Tree(label, (), word), pos + 2
    children = []
    while pos < len(tokens) and tokens[pos] == "(":
        child, pos = _parse(tokens, pos)
        children.append(child)
    if pos >= len(tokens) or tokens[pos] != ")":
        raise GrammarError("unbalanced parentheses")
    if not children:
        raise GrammarError(f"node {label} has no children")
    return Tree(label, tuple(children)), pos + 1


def read_treebank(text: str) -> list[Tree]:
    trees = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            trees.append(parse_tree(line))
        except GrammarError as exc:
            raise GrammarError(str(exc), lineno) from None
    return trees


def check_tree(tree: Tree, grammar: Grammar) -> None:
    """Raise GrammarError naming the first node that is not a grammar derivation."""
    for node, start, end, _ in tree.nodes():
        if node.is_leaf:
            if not grammar.is_pos(node.label):
                raise GrammarError(f"leaf tag {node.label!r} over ({start},{end}) is not a part-of-speech tag")
        elif grammar.find_rule(node.label, node.rhs()) is None:
            raise GrammarError(f"node ({start},{end}) uses rule {node.label} -> {' '.join(node.rhs())} absent from the grammar")
