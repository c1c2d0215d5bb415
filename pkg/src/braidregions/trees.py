"""Rooted labeled plane trees and their cadet structure.

A tree on nodes ``1..n`` stores, for every node, the ordered list of its
children; an entry is a node label or ``None`` for a leaf.  The usual family
``T^(m)(n)`` has every node carrying exactly ``m + 1`` children.  The broom
trees used by the counting bijection have a wider root and unary other nodes,
so arity is only required to be uniform when a caller asks for it.

Text format: preorder, a node is its label followed by its parenthesised
children, leaves are ``*``.  The 2-chain with ``m = 0`` is ``1(2(*))``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import islice, permutations
from math import comb, factorial
from typing import Iterator, Sequence

__all__ = [
    "PlaneTree",
    "count_shapes",
    "count_trees",
    "decode_tree",
    "encode_tree",
    "enumerate_trees",
    "iter_shapes",
    "maximal_cadet_sequences",
]

Children = tuple  # tuple[int | None, ...]


class PlaneTree:
    """Immutable labeled plane tree with 1-based node labels."""

    __slots__ = ("root", "children", "_parent", "_pos", "_hash")

    def __init__(self, root: int, children: Sequence[Sequence[int | None]], *, check: bool = True):
        self.root = root
        self.children: tuple[Children, ...] = tuple(tuple(c) for c in children)
        n = len(self.children)
        parent = [0] * (n + 1)
        pos = [0] * (n + 1)
        for p, kids in enumerate(self.children, start=1):
            for idx, c in enumerate(kids):
                if c is not None:
                    if check and (not isinstance(c, int) or not 1 <= c <= n or parent[c]):
                        raise ValueError(f"bad or repeated child {c!r} under node {p}")
                    parent[c] = p
                    pos[c] = idx
        self._parent = parent
        self._pos = pos
        self._hash = None
        if check:
            self._validate()

    def _validate(self) -> None:
        n = self.n
        if n == 0:
            raise ValueError("a tree needs at least one node")
        if not 1 <= self.root <= n:
            raise ValueError(f"root {self.root} is not a label in 1..{n}")
        if self._parent[self.root]:
            raise ValueError("the root cannot be somebody's child")
        seen = 0
        stack = [self.root]
        while stack:
            v = stack.pop()
            seen += 1
            stack.extend(c for c in self.children[v - 1] if c is not None)
        if seen != n:
            raise ValueError("node lists do not form a single tree")
        if any(len(k) == 0 for k in self.children):
            raise ValueError("every node needs at least one child slot")

    # basic shape ---------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.children)

    def arity(self, v: int) -> int:
        return len(self.children[v - 1])

    def is_uniform(self) -> bool:
        return len({len(k) for k in self.children}) == 1

    @property
    def m(self) -> int:
        """Arity minus one; only defined for uniform trees."""
        sizes = {len(k) for k in self.children}
        if len(sizes) != 1:
            raise ValueError("tree does not have uniform arity")
        return sizes.pop() - 1

    # queries --------------------------------------------------------------
    def parent(self, v: int) -> int | None:
        p = self._parent[v]
        return p or None

    def position(self, v: int) -> int:
        if v == self.root:
            raise ValueError("the root has no siblings")
        return self._pos[v]

    def lsib(self, v: int) -> int:
        """Left siblings of ``v``, counting leaves."""
        if v == self.root:
            raise ValueError("the root has no siblings")
        return self._pos[v]

    def rsib(self, v: int) -> int:
        if v == self.root:
            raise ValueError("the root has no siblings")
        return len(self.children[self._parent[v] - 1]) - 1 - self._pos[v]

    def cadet(self, v: int) -> int | None:
        for c in reversed(self.children[v - 1]):
            if c is not None:
                return c
        return None

    def node_children(self, v: int) -> list[int]:
        return [c for c in self.children[v - 1] if c is not None]

    def preorder(self) -> list[int]:
        out = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(c for c in reversed(self.children[v - 1]) if c is not None)
        return out

    def ancestors(self, v: int) -> list[int]:
        """Path from ``v``'s parent up to the root."""
        out = []
        p = self._parent[v]
        while p:
            out.append(p)
            p = self._parent[p]
        return out

    def __eq__(self, other):
        if not isinstance(other, PlaneTree):
            return NotImplemented
        return self.root == other.root and self.children == other.children

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.root, self.children))
        return self._hash

    def __repr__(self):
        return f"PlaneTree({encode_tree(self)!r})"

    def __str__(self):
        return encode_tree(self)


def maximal_cadet_sequences(tree: PlaneTree) -> list[tuple[int, ...]]:
    """The partition of the nodes into maximal cadet sequences.

    A sequence starts at every node that is not its parent's cadet; blocks are
    listed by preorder of their first node.
    """
    out = []
    for v in tree.preorder():
        p = tree.parent(v)
        if p is not None and tree.cadet(p) == v:
            continue
        seq = [v]
        c = tree.cadet(v)
        while c is not None:
            seq.append(c)
            c = tree.cadet(c)
        out.append(tuple(seq))
    return out


# text format ---------------------------------------------------------------

def encode_tree(tree: PlaneTree) -> str:
    parts: list[str] = []

    def emit(v: int) -> None:
        parts.append(str(v))
        parts.append("(")
        for idx, c in enumerate(tree.children[v - 1]):
            if idx:
                parts.append(",")
            if c is None:
                parts.append("*")
            else:
                emit(c)
        parts.append(")")

    emit(tree.root)
    return "".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.i = 0

    def fail(self, what: str):
        raise ValueError(f"cannot parse tree at offset {self.i}: {what} in {self.text!r}")

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.i += 1

    def label(self) -> int:
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if start == self.i:
            self.fail("expected a node label")
        return int(self.text[start:self.i])

    def node(self, table: dict[int, list]) -> int:
        v = self.label()
        if v in table:
            self.fail(f"label {v} repeated")
        kids: list[int | None] = []
        table[v] = kids
        self.expect("(")
        while True:
            if self.peek() == "*":
                self.i += 1
                kids.append(None)
            else:
                kids.append(self.node(table))
            if self.peek() == ",":
                self.i += 1
                continue
            break
        self.expect(")")
        return v


def decode_tree(text: str, *, uniform: bool = True) -> PlaneTree:
    """Parse the preorder text format.

    With ``uniform`` (the default) every node must have the same number of
    children; pass ``uniform=False`` for broom trees.
    """
    parser = _Parser(text)
    table: dict[int, list] = {}
    root = parser.node(table)
    if parser.i != len(parser.text):
        parser.fail("trailing characters")
    n = len(table)
    if sorted(table) != list(range(1, n + 1)):
        raise ValueError(f"labels must be exactly 1..{n}, got {sorted(table)}")
    tree = PlaneTree(root, [table[v] for v in range(1, n + 1)])
    if uniform and not tree.is_uniform():
        raise ValueError("nodes have differing numbers of children")
    return tree


# enumeration ---------------------------------------------------------------

def count_trees(n: int, m: int) -> int:
    """``|T^(m)(n)| = n! * C((m+1)n, n) / (mn + 1)``."""
    if n <= 0:
        return 0
    return factorial(n) * count_shapes(n, m)


def count_shapes(n: int, m: int) -> int:
    if n <= 0:
        return 0
    return comb((m + 1) * n, n) // (m * n + 1)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _shapes(n: int, arity: int) -> tuple:
    """Unlabeled shapes as nested tuples: each child slot is ``None`` or a shape."""
    if n == 0:
        return ()
    out = []
    for comp in _compositions(n - 1, arity):
        pools = [(_shapes(k, arity) if k else (None,)) for k in comp]
        out.extend(_product(pools))
    return tuple(out)


def _product(pools: list) -> Iterator[tuple]:
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head,) + tail


@lru_cache(maxsize=None)
def _templates(n: int, arity: int) -> tuple:
    """Shapes flattened to child tables indexed by preorder position."""
    out = []
    for shape in _shapes(n, arity):
        table: list[tuple] = []

        def walk(node) -> int:
            idx = len(table)
            table.append(())
            row = [None if c is None else walk(c) for c in node]
            table[idx] = tuple(row)
            return idx

        walk(shape)
        out.append(tuple(table))
    return tuple(out)


def iter_shapes(n: int, m: int) -> tuple:
    """Shapes of ``T^(m)(n)`` as preorder child tables, in canonical order."""
    if n <= 0:
        return ()
    return _templates(n, m + 1)


def enumerate_trees(n: int, m: int, shape_range: tuple[int, int] | None = None) -> Iterator[PlaneTree]:
    """Every tree of ``T^(m)(n)`` exactly once.

    Shapes come in lexicographic order of their preorder child-slot choices;
    within a shape, labels run through the permutations of ``1..n`` in
    lexicographic order, assigned to nodes in preorder.  ``shape_range``
    restricts to shapes with index in ``[start, stop)`` so that work can be
    split between independent workers.
    """
    if n <= 0:
        return
    templates = iter_shapes(n, m)
    if shape_range is not None:
        templates = islice(templates, shape_range[0], shape_range[1])
    perms = list(permutations(range(1, n + 1)))
    for table in templates:
        for perm in perms:
            children: list = [None] * n
            for p, row in enumerate(table):
                children[perm[p] - 1] = tuple(None if c is None else perm[c] for c in row)
            yield PlaneTree(perm[0], children, check=False)
