"""Finite rooted d-ary forests with globally numbered leaves.

A tree is a nested tuple: the empty tuple ``()`` is a leaf and an internal
node is a tuple of exactly ``d`` subtrees.  A :class:`Forest` is an ordered
sequence of ``r`` such trees.  Leaves are numbered ``1..l`` left to right
across the whole forest; :class:`LeafAddress` gives the per-tree view
(root index plus a descent path over ``{1..d}``).

All values are immutable, every operation returns a new forest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import ContextMismatch, ParseError

LEAF: tuple = ()


class LeafAddress(NamedTuple):
    """Vertex of the infinite forest: 1-based root index and descent path.

    Also used for the internal node sitting at the top of a caret.
    """

    root: int
    path: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.root}:" + "".join(str(c) for c in self.path)


def caret(d: int) -> tuple:
    return (LEAF,) * d


def _check_tree(tree, d: int) -> None:
    stack = [tree]
    while stack:
        t = stack.pop()
        if not isinstance(t, tuple):
            raise TypeError(f"tree nodes must be tuples, got {type(t).__name__}")
        if t and len(t) != d:
            raise ValueError(f"internal node has {len(t)} children, expected {d}")
        stack.extend(t)


def _tree_leaves(tree) -> int:
    if not tree:
        return 1
    return sum(_tree_leaves(c) for c in tree)


def _tree_carets(tree) -> int:
    if not tree:
        return 0
    return 1 + sum(_tree_carets(c) for c in tree)


def _subtree(tree, path):
    for c in path:
        if not tree:
            raise IndexError("address descends below a leaf")
        tree = tree[c - 1]
    return tree


def _replace(tree, path, new):
    if not path:
        return new
    k = path[0] - 1
    return tree[:k] + (_replace(tree[k], path[1:], new),) + tree[k + 1:]


def _union(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(_union(x, y) for x, y in zip(a, b))


def _is_refinement(big, small) -> bool:
    """True when ``big`` is obtained from ``small`` by splitting leaves."""
    if not small:
        return True
    if not big:
        return False
    return all(_is_refinement(x, y) for x, y in zip(big, small))


@dataclass(frozen=True)
class Forest:
    d: int
    roots: tuple

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"arity must be at least 2, got {self.d}")
        roots = tuple(self.roots)
        if not roots:
            raise ValueError("a forest needs at least one root")
        for t in roots:
            _check_tree(t, self.d)
        object.__setattr__(self, "roots", roots)

    @classmethod
    def trivial(cls, d: int, r: int) -> "Forest":
        return cls(d, (LEAF,) * r)

    @property
    def r(self) -> int:
        return len(self.roots)

    @cached_property
    def leaf_count(self) -> int:
        return sum(_tree_leaves(t) for t in self.roots)

    @property
    def caret_count(self) -> int:
        return sum(_tree_carets(t) for t in self.roots)

    @cached_property
    def addresses(self) -> tuple[LeafAddress, ...]:
        """Leaf addresses in leaf order (entry ``i-1`` is the address of leaf ``i``)."""
        out = []

        def walk(t, root, path):
            if not t:
                out.append(LeafAddress(root, path))
                return
            for k, c in enumerate(t, start=1):
                walk(c, root, path + (k,))

        for n, t in enumerate(self.roots, start=1):
            walk(t, n, ())
        return tuple(out)

    @cached_property
    def _address_index(self) -> dict:
        return {a: i for i, a in enumerate(self.addresses, start=1)}

    def subtree(self, address: LeafAddress):
        return _subtree(self.roots[address.root - 1], address.path)

    def __str__(self):
        return serialize_forest(self)


def leaf_count(forest: Forest) -> int:
    return forest.leaf_count


def leaf_address(forest: Forest, i: int) -> LeafAddress:
    if not 1 <= i <= forest.leaf_count:
        raise IndexError(f"leaf index {i} out of range 1..{forest.leaf_count}")
    return forest.addresses[i - 1]


def address_to_leaf(forest: Forest, address) -> int:
    address = LeafAddress(address[0], tuple(address[1]))
    try:
        return forest._address_index[address]
    except KeyError:
        raise ValueError(f"{address} is not a leaf of {forest}") from None


def elementary_carets(forest: Forest) -> list[tuple[LeafAddress, int]]:
    """Internal nodes whose children are all leaves, with their leftmost leaf index.

    Sorted by leftmost leaf.
    """
    d = forest.d
    out = []
    addrs = forest.addresses
    i = 0
    while i < len(addrs):
        a = addrs[i]
        if a.path and a.path[-1] == 1 and i + d <= len(addrs):
            parent = LeafAddress(a.root, a.path[:-1])
            if forest.subtree(parent) == caret(d):
                out.append((parent, i + 1))
                i += d
                continue
        i += 1
    return out


def has_elementary_caret(forest: Forest, first_leaf: int) -> bool:
    if not 1 <= first_leaf <= forest.leaf_count:
        return False
    a = forest.addresses[first_leaf - 1]
    if not a.path or a.path[-1] != 1:
        return False
    return forest.subtree(LeafAddress(a.root, a.path[:-1])) == caret(forest.d)


def split_leaf(forest: Forest, i: int) -> Forest:
    a = leaf_address(forest, i)
    roots = list(forest.roots)
    roots[a.root - 1] = _replace(roots[a.root - 1], a.path, caret(forest.d))
    return Forest(forest.d, tuple(roots))


def remove_elementary_caret(forest: Forest, first_leaf: int) -> Forest:
    if not has_elementary_caret(forest, first_leaf):
        raise ValueError(f"no elementary caret starting at leaf {first_leaf}")
    a = forest.addresses[first_leaf - 1]
    roots = list(forest.roots)
    roots[a.root - 1] = _replace(roots[a.root - 1], a.path[:-1], LEAF)
    return Forest(forest.d, tuple(roots))


def is_refinement(big: Forest, small: Forest) -> bool:
    """Partial order of the join: ``big`` arises from ``small`` by leaf splits."""
    return (big.d, big.r) == (small.d, small.r) and all(
        _is_refinement(x, y) for x, y in zip(big.roots, small.roots)
    )


def expansion_sequence(small: Forest, big: Forest) -> list[int]:
    """Leaf splits turning ``small`` into ``big``, leftmost split first."""
    if not is_refinement(big, small):
        raise ValueError(f"{big} does not refine {small}")
    seq = []
    current = small
    while True:
        for i, a in enumerate(current.addresses, start=1):
            if big.subtree(a):
                break
        else:
            return seq
        seq.append(i)
        current = split_leaf(current, i)


def join(f: Forest, g: Forest) -> tuple[Forest, list[int], list[int]]:
    """Least common refinement ``h`` and the canonical expansions f→h, g→h."""
    if (f.d, f.r) != (g.d, g.r):
        raise ContextMismatch(f"cannot join a ({f.d},{f.r})-forest with a ({g.d},{g.r})-forest")
    h = Forest(f.d, tuple(_union(a, b) for a, b in zip(f.roots, g.roots)))
    return h, expansion_sequence(f, h), expansion_sequence(g, h)


def unwrap_first_root(forest: Forest) -> Forest:
    """Replace the caret at root 1 by its ``d`` subtrees as separate roots."""
    first = forest.roots[0]
    if not first:
        raise ValueError("root 1 is a leaf")
    return Forest(forest.d, tuple(first) + forest.roots[1:])


def wrap_first_roots(forest: Forest) -> Forest:
    """Inverse of :func:`unwrap_first_root`: roots ``1..d`` go under one caret."""
    d = forest.d
    if forest.r <= d - 1:
        raise ValueError(f"need more than {d - 1} roots to wrap, have {forest.r}")
    return Forest(d, (tuple(forest.roots[:d]),) + forest.roots[d:])


def append_trivial_root(forest: Forest) -> Forest:
    return Forest(forest.d, forest.roots + (LEAF,))


# --- text form -----------------------------------------------------------


def _serialize_tree(t) -> str:
    if not t:
        return "."
    return "(" + ",".join(_serialize_tree(c) for c in t) + ")"


def serialize_forest(forest: Forest) -> str:
    return "+".join(_serialize_tree(t) for t in forest.roots)


class _Reader:
    def __init__(self, text: str, pos: int = 0):
        self.text = text
        self.pos = pos

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1


def _read_tree(rd: _Reader, d: int):
    ch = rd.peek()
    if ch == ".":
        rd.pos += 1
        return LEAF
    if ch != "(":
        raise ParseError(f"expected '.' or '(', found {ch!r}" if ch else "unexpected end of input", rd.pos)
    start = rd.pos
    rd.pos += 1
    children = [_read_tree(rd, d)]
    while rd.peek() == ",":
        rd.pos += 1
        children.append(_read_tree(rd, d))
    rd.expect(")")
    if len(children) != d:
        raise ParseError(f"caret has {len(children)} children, arity is {d}", start)
    return tuple(children)


def read_forest(text: str, d: int, r: int | None = None, pos: int = 0) -> tuple[Forest, int]:
    """Parse a forest starting at ``pos``; return it and the end position."""
    if d < 2:
        raise ValueError(f"arity must be at least 2, got {d}")
    rd = _Reader(text, pos)
    start = rd.pos
    roots = [_read_tree(rd, d)]
    while rd.peek() == "+":
        rd.pos += 1
        roots.append(_read_tree(rd, d))
    if r is not None and len(roots) != r:
        raise ParseError(f"forest has {len(roots)} trees, expected {r}", start)
    rd.skip()
    return Forest(d, tuple(roots)), rd.pos


def parse_forest(text: str, d: int, r: int | None = None) -> Forest:
    forest, end = read_forest(text, d, r)
    if end != len(text):
        raise ParseError(f"trailing input {text[end:]!r}", end)
    return forest


def forest_from_splits(d: int, r: int, splits: Sequence[int]) -> Forest:
    f = Forest.trivial(d, r)
    for i in splits:
        f = split_leaf(f, i)
    return f
