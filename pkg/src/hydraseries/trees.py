"""Colored rooted plane trees: preorder serialization, validity against an
enriching language, and the rightmost-branch insertion bijection with cyclic
compositions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .series import Series, WindowError


@dataclass(frozen=True)
class PTree:
    """Rooted plane tree with an integer color per vertex."""

    color: int
    children: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


def preorder_word(tree: PTree) -> tuple:
    """Root-first, left-to-right reading of the vertex colors."""
    out = []
    stack = [tree]
    while stack:
        node = stack.pop()
        out.append(node.color)
        stack.extend(reversed(node.children))
    return tuple(out)


def tree_weight(tree: PTree) -> int:
    return sum(preorder_word(tree))


def leaf_count(tree: PTree) -> int:
    if not tree.children:
        return 1
    return sum(leaf_count(ch) for ch in tree.children)


def format_tree(tree: PTree) -> str:
    """Deterministic text form: "3(5(7 7) 4(5))"."""
    if not tree.children:
        return str(tree.color)
    inner = " ".join(format_tree(ch) for ch in tree.children)
    return f"{tree.color}({inner})"


def is_cyclic_composition(word) -> bool:
    """First part >= 1 and strictly smaller than every later part."""
    w = tuple(word)
    if not w or w[0] < 1:
        return False
    return all(w[0] < a for a in w[1:])


def insertion_tree(word) -> PTree:
    """Build the shift-plethystic tree of a cyclic composition by successive
    rightmost-branch insertion.

    Each new part walks the rightmost branch leaf-to-root to the first vertex
    with a strictly smaller color and becomes its rightmost child; the root is
    strictly smallest, so the walk always stops.  The preorder word of the
    result is the input composition.
    """
    w = tuple(word)
    if not is_cyclic_composition(w):
        raise ValueError(f"{w} is not a cyclic composition")
    root = [w[0], []]
    branch = [root]  # rightmost branch, root first
    for part in w[1:]:
        while branch[-1][0] >= part:
            branch.pop()
        node = [part, []]
        branch[-1][1].append(node)
        branch.append(node)

    def freeze(node):
        return PTree(node[0], tuple(freeze(ch) for ch in node[1]))

    return freeze(root)


def validate_tree(tree: PTree, enriching: Series, root_color: int):
    """Check a tree against an enriching language.

    True when the root has the requested color and, at every internal vertex
    of color k with children colors w, the shifted word w - k lies in the
    support of the language.  Returns False on a definite violation and None
    when some needed coefficient escapes the language's window, so truncation
    is never reported as a combinatorial failure.
    """
    if enriching.constant_term() != 1:
        raise ValueError("enriching series must be a language with constant term 1")
    if tree.color != root_color:
        return False
    undecided = False
    stack = [tree]
    while stack:
        node = stack.pop()
        if not node.children:
            continue
        shifted = tuple(ch.color - node.color for ch in node.children)
        try:
            c = enriching.coefficient(shifted)
        except WindowError:
            undecided = True
        else:
            if c == 0:
                return False
            if c != 1:
                raise ValueError("enriching series is not a language (coefficient not 0/1)")
        stack.extend(node.children)
    return None if undecided else True
