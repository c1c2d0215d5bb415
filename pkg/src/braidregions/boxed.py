"""Brute-force signed sum over boxed trees.

This is the slow ground truth: every partition of a tree's nodes into valid
cadet runs is generated and weighted by ``(-1)^(n - #boxes)``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from .arrangement import ArrangementSpec
from .errors import GuardError
from .trees import PlaneTree, count_trees, enumerate_trees, maximal_cadet_sequences

__all__ = [
    "DEFAULT_GUARD",
    "bernardi_sum_brute",
    "check_arity",
    "contribution_brute",
    "enumerate_s_boxings",
    "is_s_cadet_sequence",
    "valid_interval_table",
]

DEFAULT_GUARD = 10**8


def check_arity(spec: ArrangementSpec, tree: PlaneTree) -> None:
    if tree.n != spec.n:
        raise ValueError(f"tree has {tree.n} nodes but the arrangement lives in dimension {spec.n}")
    if tree.m < spec.m:
        raise ValueError(f"tree arity {tree.m + 1} is below the required {spec.m + 1}")


def _check_cadet_sequence(tree: PlaneTree, seq: Sequence[int]) -> None:
    if not seq:
        raise ValueError("empty cadet sequence")
    for a, b in zip(seq, seq[1:]):
        if tree.cadet(a) != b:
            raise ValueError(f"{b} is not the cadet of {a}")


def is_s_cadet_sequence(spec: ArrangementSpec, tree: PlaneTree, seq: Sequence[int]) -> bool:
    """Every partial left-sibling sum avoids the matching directed set."""
    _check_cadet_sequence(tree, seq)
    k = len(seq)
    for i in range(k):
        total = 0
        for j in range(i + 1, k):
            total += tree.lsib(seq[j])
            if spec.in_s_minus(seq[i], seq[j], total):
                return False
    return True


def valid_interval_table(spec: ArrangementSpec, tree: PlaneTree, chain: Sequence[int]) -> list[list[bool]]:
    """``ok[a][b]`` tells whether ``chain[a..b]`` (inclusive) is a valid run."""
    k = len(chain)
    bad = [[False] * k for _ in range(k)]
    for i in range(k):
        total = 0
        for j in range(i + 1, k):
            total += tree.lsib(chain[j])
            if spec.in_s_minus(chain[i], chain[j], total):
                bad[i][j] = True
    ok = [[False] * k for _ in range(k)]
    for a in range(k):
        ok[a][a] = True
        for b in range(a + 1, k):
            # [a, b] is valid iff [a, b-1] is and no pair (i, b) with i >= a fails
            ok[a][b] = ok[a][b - 1] and not any(bad[i][b] for i in range(a, b))
    return ok


def _chain_boxings(ok: list[list[bool]], start: int, k: int) -> Iterator[list[tuple[int, int]]]:
    if start == k:
        yield []
        return
    for end in range(start, k):
        if not ok[start][end]:
            break
        for rest in _chain_boxings(ok, end + 1, k):
            yield [(start, end)] + rest


def enumerate_s_boxings(spec: ArrangementSpec, tree: PlaneTree) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of the nodes into valid cadet runs, each yielded once.

    A boxing is a tuple of boxes, each box a tuple of labels in cadet order.
    """
    check_arity(spec, tree)
    per_chain = []
    for chain in maximal_cadet_sequences(tree):
        ok = valid_interval_table(spec, tree, chain)
        options = [
            tuple(tuple(chain[a:b + 1]) for a, b in cuts)
            for cuts in _chain_boxings(ok, 0, len(chain))
        ]
        per_chain.append(options)
    for combo in product(*per_chain):
        yield tuple(box for part in combo for box in part)


def contribution_brute(spec: ArrangementSpec, tree: PlaneTree) -> int:
    n = tree.n
    return sum((-1) ** ((n - len(b)) & 1) for b in enumerate_s_boxings(spec, tree))


def bernardi_sum_brute(spec: ArrangementSpec, *, guard: int = DEFAULT_GUARD) -> int:
    size = count_trees(spec.n, spec.m)
    if size > guard:
        raise GuardError(size, guard)
    return sum(contribution_brute(spec, t) for t in enumerate_trees(spec.n, spec.m))
