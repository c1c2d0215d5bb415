"""Tools for Ish-type arrangements.

Ish-type means ``0 in S[1, j]`` for every ``j`` and ``S[i, j] = {0}`` when
``i != 1``.  For these (and more generally almost transitive) arrangements a
tree with nonzero contribution is summarised by four numbers:

* ``e_l`` - left siblings ``w`` of node 1 with ``lsib(w)`` outside ``S-[w, 1]``
* ``len_l`` - how far the run through node 1 reaches below it
* ``e_u`` - non-cadet children ``w`` of node 1 with ``lsib(w)`` outside ``S-[1, w]``
* ``len_u`` - how far that run reaches above node 1

The sign of the contribution is ``(-1)^(len_l + len_u)``.  Four tree
surgeries move a tree between neighbouring classes; pairing them gives two
sign-reversing involutions that cancel everything except class (0, 0, 0, 0).

Those surviving trees are in bijection with "broom" trees: node 1 is the
root with ``2m + 2`` child slots and every other node has a single child.
Brooms are in turn encoded by sequences, which gives the product formula.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations
from math import prod
from typing import Iterator, NamedTuple, Sequence

from .arrangement import ArrangementSpec, classify_family, is_almost_transitive
from .contribution import contribution_fast, maximal_s_cadet_sequences
from .errors import GuardError, NotApplicableError
from .trees import PlaneTree, count_trees, enumerate_trees

__all__ = [
    "IshClassification",
    "broom_to_tree",
    "class_histogram",
    "classify_tree",
    "closed_formula",
    "count_broom_trees",
    "count_zero_class",
    "decode_sequence",
    "demote_lower",
    "demote_upper",
    "encode_sequence",
    "enumerate_broom_trees",
    "enumerate_class",
    "is_broom_tree",
    "lower_inefficient_nodes",
    "lower_involution",
    "promote_lower",
    "promote_upper",
    "sequence_alphabet",
    "tree_to_broom",
    "upper_inefficient_nodes",
    "upper_involution",
]


class IshClassification(NamedTuple):
    e_l: int
    len_l: int
    e_u: int
    len_u: int

    @property
    def sign(self) -> int:
        return -1 if (self.len_l + self.len_u) & 1 else 1

    def __str__(self):
        return f"({self.e_l},{self.len_l},{self.e_u},{self.len_u})"


@lru_cache(maxsize=256)
def _almost_transitive(spec: ArrangementSpec) -> bool:
    return is_almost_transitive(spec)


@lru_cache(maxsize=256)
def _families(spec: ArrangementSpec) -> frozenset:
    return frozenset(classify_family(spec))


_DISPLAY = {"ish-type": "Ish-type", "nested-ish": "nested Ish"}


def _require(spec: ArrangementSpec, family: str) -> None:
    if family not in _families(spec):
        raise NotApplicableError(f"method requires {_DISPLAY.get(family, family)} arrangement")


def _chain_through_one(tree: PlaneTree) -> tuple[list[int], int]:
    """Maximal cadet chain containing node 1 and the 1-based position of 1 in it."""
    below = []
    v = 1
    p = tree.parent(v)
    while p is not None and tree.cadet(p) == v:
        below.append(p)
        v, p = p, tree.parent(p)
    chain = below[::-1] + [1]
    c = tree.cadet(1)
    while c is not None:
        chain.append(c)
        c = tree.cadet(c)
    return chain, len(below) + 1


def lower_inefficient_nodes(spec: ArrangementSpec, tree: PlaneTree) -> list[int]:
    """Left siblings ``w`` of node 1 with ``lsib(w)`` not in ``S-[w, 1]``, left to right."""
    p = tree.parent(1)
    if p is None:
        return []
    out = []
    for w in tree.children[p - 1][:tree.lsib(1)]:
        if w is not None and not spec.in_s_minus(w, 1, tree.lsib(w)):
            out.append(w)
    return out


def upper_inefficient_nodes(spec: ArrangementSpec, tree: PlaneTree) -> list[int]:
    """Children ``w`` of node 1 other than its cadet with ``lsib(w)`` not in ``S-[1, w]``."""
    cadet = tree.cadet(1)
    out = []
    for w in tree.children[0]:
        if w is not None and w != cadet and not spec.in_s_minus(1, w, tree.lsib(w)):
            out.append(w)
    return out


def classify_tree(spec: ArrangementSpec, tree: PlaneTree) -> IshClassification | None:
    """Class of a tree, or ``None`` when its contribution vanishes."""
    if not _almost_transitive(spec):
        raise NotApplicableError("classification requires an almost transitive arrangement")
    value = contribution_fast(spec, tree)
    if value == 0:
        return None
    chain, j = _chain_through_one(tree)
    runs = [r for r in maximal_s_cadet_sequences(spec, tree, chain) if r[0] <= j <= r[1]]
    if len(runs) != 1:
        raise AssertionError(f"expected one maximal run through node 1, found {runs}")
    start, end = runs[0]
    cls = IshClassification(
        len(lower_inefficient_nodes(spec, tree)),
        j - start,
        len(upper_inefficient_nodes(spec, tree)),
        end - j,
    )
    if cls.sign != value:
        raise AssertionError(f"class {cls} disagrees with contribution {value}")
    return cls


# surgeries -------------------------------------------------------------------

def _leaves(seq: Sequence[int | None]) -> bool:
    return all(x is None for x in seq)


def _rebuild(tree: PlaneTree, updates: dict[int, list], root: int | None = None) -> PlaneTree:
    """Replace some child lists, then pad or trim trailing leaves to the tree's arity."""
    width = tree.m + 1
    rows = []
    for v in range(1, tree.n + 1):
        row = list(updates.get(v, tree.children[v - 1]))
        if len(row) > width:
            if not _leaves(row[width:]):
                raise AssertionError(f"node {v} would need more than {width} children")
            row = row[:width]
        row.extend([None] * (width - len(row)))
        rows.append(row)
    return PlaneTree(tree.root if root is None else root, rows)


def _classified(spec: ArrangementSpec, tree: PlaneTree) -> IshClassification:
    _require(spec, "ish-type")
    cls = classify_tree(spec, tree)
    if cls is None:
        raise ValueError("tree has zero contribution")
    return cls


def demote_lower(spec: ArrangementSpec, tree: PlaneTree) -> PlaneTree:
    """Turn the node just below 1 into a lower inefficient node.

    Lowers ``len_l`` by one and raises ``e_l``.  The parent ``u`` of node 1
    is detached; its parent ``p`` adopts node 1 as rightmost child and the
    left siblings of 1 as its leftmost children, and ``u`` is reinserted
    between ``p`` and ``p``'s old leftmost child.
    """
    cls = _classified(spec, tree)
    if cls.len_l == 0:
        raise ValueError("lower 1-length is already zero")
    chain, j = _chain_through_one(tree)
    u, p = chain[j - 2], chain[j - 3]
    u_kids = tree.children[u - 1]
    ones = tree.lsib(1)
    if not _leaves(u_kids[ones + 1:]):
        raise AssertionError("right siblings of node 1 must be leaves")
    p_kids = tree.children[p - 1]
    pos_u = tree.lsib(u)
    if pos_u == 0 or not _leaves(p_kids[pos_u + 1:]):
        raise AssertionError(f"unexpected position of {u} under {p}")
    new_p = list(u_kids[:ones]) + [u] + list(p_kids[1:pos_u]) + [1]
    return _rebuild(tree, {p: new_p, u: [p_kids[0]]})


def promote_lower(spec: ArrangementSpec, tree: PlaneTree, index: int) -> PlaneTree:
    """Insert the ``index``-th (0-based, from the left) lower inefficient node below 1.

    Inverse of :func:`demote_lower` when ``index`` is the lower inefficiency
    of the original tree.
    """
    _classified(spec, tree)
    nodes = lower_inefficient_nodes(spec, tree)
    if not 0 <= index < len(nodes):
        raise ValueError(f"tree has {len(nodes)} lower inefficient nodes, index {index} requested")
    w = nodes[index]
    p = tree.parent(1)
    a = tree.lsib(w)
    w_kids = tree.children[w - 1]
    if not _leaves(w_kids[1:]):
        raise AssertionError(f"node {w} has node children besides its leftmost")
    c = w_kids[0]
    p_kids = tree.children[p - 1]
    new_p = [c if x == w else (w if x == 1 else x) for x in p_kids[a:]]
    new_w = list(p_kids[:a]) + [1]
    return _rebuild(tree, {p: new_p, w: new_w})


def demote_upper(spec: ArrangementSpec, tree: PlaneTree) -> PlaneTree:
    """Turn the cadet of 1 into an upper inefficient node.

    Lowers ``len_u`` by one and raises ``e_u``.  Node 1 adopts the cadet's
    cadet together with all of its left siblings except the leftmost.
    """
    cls = _classified(spec, tree)
    if cls.len_u == 0:
        raise ValueError("upper 1-length is already zero")
    a = tree.cadet(1)
    b = tree.cadet(a)
    a_kids = tree.children[a - 1]
    q = tree.lsib(b)
    if not _leaves(a_kids[q + 1:]):
        raise AssertionError(f"right siblings of {b} must be leaves")
    one_kids = tree.children[0]
    pos_a = tree.lsib(a)
    new_one = list(one_kids[:pos_a + 1]) + list(a_kids[1:q]) + [b]
    return _rebuild(tree, {1: new_one, a: list(a_kids[:1])})


def promote_upper(spec: ArrangementSpec, tree: PlaneTree, index: int) -> PlaneTree:
    """Insert the ``index``-th (0-based, from the left) upper inefficient node above 1.

    The node takes over the cadet of 1 and every child of 1 between them.
    """
    _classified(spec, tree)
    nodes = upper_inefficient_nodes(spec, tree)
    if not 0 <= index < len(nodes):
        raise ValueError(f"tree has {len(nodes)} upper inefficient nodes, index {index} requested")
    w = nodes[index]
    v = tree.cadet(1)
    pw, pv = tree.lsib(w), tree.lsib(v)
    w_kids = tree.children[w - 1]
    if not _leaves(w_kids[1:]):
        raise AssertionError(f"node {w} has node children besides its leftmost")
    one_kids = tree.children[0]
    new_w = [w_kids[0]] + list(one_kids[pw + 1:pv]) + [v]
    new_one = list(one_kids[:pw + 1]) + list(one_kids[pv + 1:])
    return _rebuild(tree, {1: new_one, w: new_w})


def lower_involution(spec: ArrangementSpec, tree: PlaneTree) -> PlaneTree:
    """Demote when there is no lower inefficient node, otherwise promote the leftmost."""
    cls = _classified(spec, tree)
    if cls.e_l + cls.len_l == 0:
        raise ValueError("lower involution needs e_l + len_l > 0")
    if cls.e_l == 0:
        return demote_lower(spec, tree)
    return promote_lower(spec, tree, 0)


def upper_involution(spec: ArrangementSpec, tree: PlaneTree) -> PlaneTree:
    cls = _classified(spec, tree)
    if cls.e_l or cls.len_l or cls.e_u + cls.len_u == 0:
        raise ValueError("upper involution needs e_l = len_l = 0 and e_u + len_u > 0")
    if cls.e_u == 0:
        return demote_upper(spec, tree)
    return promote_upper(spec, tree, 0)


# class counts ------------------------------------------------------------------

def enumerate_class(spec: ArrangementSpec, cls: Sequence[int]) -> Iterator[PlaneTree]:
    _require(spec, "ish-type")
    target = IshClassification(*cls)
    for t in enumerate_trees(spec.n, spec.m):
        if classify_tree(spec, t) == target:
            yield t


def class_histogram(spec: ArrangementSpec, *, guard: int | None = None) -> Counter:
    """How many trees fall in each class; zero-contribution trees are not counted."""
    _require(spec, "ish-type")
    if guard is not None and count_trees(spec.n, spec.m) > guard:
        raise GuardError(count_trees(spec.n, spec.m), guard)
    hist: Counter = Counter()
    for t in enumerate_trees(spec.n, spec.m):
        cls = classify_tree(spec, t)
        if cls is not None:
            hist[cls] += 1
    return hist


def count_zero_class(spec: ArrangementSpec, *, guard: int | None = None) -> int:
    """Number of trees in class (0, 0, 0, 0); equals the region count."""
    _require(spec, "ish-type")
    if guard is not None and count_trees(spec.n, spec.m) > guard:
        raise GuardError(count_trees(spec.n, spec.m), guard)
    zero = IshClassification(0, 0, 0, 0)
    return sum(1 for t in enumerate_trees(spec.n, spec.m) if classify_tree(spec, t) == zero)


def closed_formula(spec: ArrangementSpec) -> int:
    """``prod_{k=2..n} (n + 1 + |S[1,k]| - k)``."""
    _require(spec, "nested-ish")
    n = spec.n
    return prod(n + 1 + len(spec.offsets(1, k)) - k for k in range(2, n + 1))


# broom trees and their sequences -------------------------------------------

def is_broom_tree(spec: ArrangementSpec, tree: PlaneTree) -> bool:
    m = spec.m
    if tree.n != spec.n or tree.root != 1 or tree.arity(1) != 2 * m + 2:
        return False
    for k in range(2, tree.n + 1):
        if tree.arity(k) != 1:
            return False
        if not (spec.in_s_minus(1, k, tree.lsib(k)) or spec.in_s_minus(k, 1, tree.rsib(k))):
            return False
    return True


def _weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_broom_trees(spec: ArrangementSpec) -> Iterator[PlaneTree]:
    """All broom trees of the arrangement, by direct search.

    Nodes ``2..n`` are dealt, in every order, into stacks standing on the
    ``2m + 2`` slots of node 1; only the bottom node of a stack has siblings,
    so only it needs the sibling test.
    """
    _require(spec, "nested-ish")
    n, m = spec.n, spec.m
    width = 2 * m + 2
    if n == 1:
        yield PlaneTree(1, [[None] * width])
        return
    labels = range(2, n + 1)
    comps = list(_weak_compositions(n - 1, width))
    for perm in permutations(labels):
        for comp in comps:
            ok = True
            idx = 0
            for slot, size in enumerate(comp):
                if size and not (
                    spec.in_s_minus(1, perm[idx], slot)
                    or spec.in_s_minus(perm[idx], 1, width - 1 - slot)
                ):
                    ok = False
                    break
                idx += size
            if not ok:
                continue
            rows: list = [None] * n
            root_row = []
            idx = 0
            for size in comp:
                stack = perm[idx:idx + size]
                idx += size
                root_row.append(stack[0] if stack else None)
                for h, v in enumerate(stack):
                    rows[v - 1] = [stack[h + 1] if h + 1 < size else None]
            rows[0] = root_row
            yield PlaneTree(1, rows, check=False)


def count_broom_trees(spec: ArrangementSpec) -> int:
    return sum(1 for _ in enumerate_broom_trees(spec))


def sequence_alphabet(spec: ArrangementSpec, k: int) -> set[tuple[int, int]]:
    """Allowed values of the ``k``-th sequence entry."""
    out = {(0, i) for i in range(k + 1, spec.n + 1)}
    out |= {(1, s) for s in spec.s_minus(1, k)}
    out |= {(-1, t) for t in spec.s_minus(k, 1)}
    return out


def encode_sequence(spec: ArrangementSpec, tree: PlaneTree, *, check: bool = True) -> tuple[tuple[int, int], ...]:
    """Read off ``a_2, ..., a_n`` while extracting nodes ``2, 3, ...`` in turn.

    With ``check`` the tree must be a broom of the arrangement and every entry
    must be allowed; without it the raw extraction is reported as is.
    """
    if check and not is_broom_tree(spec, tree):
        raise ValueError("tree is not a broom tree of this arrangement")
    m = spec.m
    width = 2 * m + 2
    kids = {v: list(tree.children[v - 1]) for v in range(1, tree.n + 1)}
    parent = {c: v for v, row in kids.items() for c in row if c is not None}
    out = []
    for k in range(2, tree.n + 1):
        p = parent[k]
        if p != 1:
            entry = (0, p)
        else:
            pos = kids[1].index(k)
            if width - 1 - pos > m:
                entry = (1, pos)
            else:
                entry = (-1, width - 1 - pos)
        if check and entry not in sequence_alphabet(spec, k):
            raise ValueError(f"entry {entry} for node {k} is not allowed")
        out.append(entry)
        # extract k: its only child takes its place
        c = kids[k][0]
        row = kids[p]
        row[row.index(k)] = c
        if c is not None:
            parent[c] = p
        del kids[k]
    return tuple(out)


def decode_sequence(spec: ArrangementSpec, seq: Sequence[Sequence[int]], *, check: bool = True) -> PlaneTree:
    """Rebuild the broom tree by inserting ``n, n-1, ..., 2``."""
    n, m = spec.n, spec.m
    width = 2 * m + 2
    if len(seq) != n - 1:
        raise ValueError(f"need {n - 1} entries, got {len(seq)}")
    kids: dict[int, list] = {1: [None] * width}
    for k in range(n, 1, -1):
        kind, val = seq[k - 2]
        if check and (kind, val) not in sequence_alphabet(spec, k):
            raise ValueError(f"entry {(kind, val)} for node {k} is not allowed")
        if kind == 0:
            if val not in kids or val <= k:
                raise ValueError(f"node {val} is not present when inserting {k}")
            kids[k] = [kids[val][0]]
            kids[val][0] = k
        else:
            if kind not in (1, -1) or not 0 <= val < width:
                raise ValueError(f"bad entry {(kind, val)}")
            pos = val if kind == 1 else width - 1 - val
            kids[k] = [kids[1][pos]]
            kids[1][pos] = k
    return PlaneTree(1, [kids[v] for v in range(1, n + 1)])


def tree_to_broom(spec: ArrangementSpec, tree: PlaneTree, *, check: bool = True) -> PlaneTree:
    """Map a class (0, 0, 0, 0) tree to a broom by re-rooting at node 1.

    The path from the old root down to node 1 is turned upside down and hung
    from node 1 where node 1 used to sit, with the siblings of node 1 mirrored
    onto the right half of the root.
    """
    if check:
        cls = classify_tree(spec, tree)
        if cls != (0, 0, 0, 0):
            raise ValueError(f"tree is in class {cls}, not (0,0,0,0)")
    m = tree.m
    n = tree.n
    rows: list = [None] * n

    def leftmost_only(v: int) -> list:
        row = tree.children[v - 1]
        if not _leaves(row[1:]):
            raise AssertionError(f"node {v} has node children besides its leftmost")
        return [row[0]]

    if tree.root == 1:
        rows[0] = list(tree.children[0]) + [None] * (m + 1)
        for v in range(2, n + 1):
            rows[v - 1] = leftmost_only(v)
        return PlaneTree(1, rows)

    path = tree.ancestors(1)[::-1]
    for a, b in zip(path, path[1:] + [1]):
        if tree.cadet(a) != b:
            raise AssertionError("path to node 1 is not a cadet chain")
    top = path[-1]
    mirrored = [top if x == 1 else x for x in tree.children[top - 1]]
    rows[0] = list(tree.children[0]) + mirrored[::-1]
    on_path = set(path)
    for idx, v in enumerate(path):
        rows[v - 1] = [path[idx - 1] if idx else None]
    for v in range(2, n + 1):
        if v not in on_path:
            rows[v - 1] = leftmost_only(v)
    return PlaneTree(1, rows)


def broom_to_tree(spec: ArrangementSpec, tree: PlaneTree, *, check: bool = True) -> PlaneTree:
    """Inverse of :func:`tree_to_broom`."""
    if check and not is_broom_tree(spec, tree):
        raise ValueError("tree is not a broom tree of this arrangement")
    n = tree.n
    width = (tree.arity(1)) // 2
    ones = tree.children[0]
    right = list(ones[width:])[::-1]  # right[i - 1] is the i-th from the right
    rows: list = [None] * n
    rows[0] = list(ones[:width])
    for v in range(2, n + 1):
        rows[v - 1] = list(tree.children[v - 1])
    nodes = [i for i, x in enumerate(right) if x is not None]
    root = 1
    if nodes:
        k = nodes[-1]
        sk = right[k]
        chain = []
        c = tree.children[sk - 1][0]
        while c is not None:
            chain.append(c)
            c = tree.children[c - 1][0]
        root = chain[-1] if chain else sk
        for idx, v in enumerate(chain):
            rows[v - 1] = [chain[idx - 1] if idx else sk]
        rows[sk - 1] = right[:k] + [1] + right[k + 1:]
    for row in rows:
        row.extend([None] * (width - len(row)))
    return PlaneTree(root, rows)
