"""Polynomial-time contribution of a single tree.

Each maximal cadet chain is cut into its maximal valid runs (found with the
``f``/``g`` extension tables), runs are grouped into connected components by
overlap, and every component is evaluated by the greedy "reaches" chain.
The tree's contribution is the product over all components.

Positions inside a chain or component are 1-based; ``0`` is the sentinel
standing for "outside the component".
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .arrangement import ArrangementSpec
from .boxed import DEFAULT_GUARD, check_arity
from .errors import GuardError
from .trees import PlaneTree, count_shapes, count_trees, enumerate_trees, maximal_cadet_sequences

__all__ = [
    "ConnectedContext",
    "bernardi_sum_fast",
    "contribution_connected",
    "contribution_fast",
    "explain",
    "fast_tally",
    "longest_extension_table",
    "maximal_s_cadet_sequences",
    "s_connected_components",
]


def longest_extension_table(
    spec: ArrangementSpec, tree: PlaneTree, chain: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(f, g)`` as tuples whose entry ``i - 1`` describes position ``i``.

    ``f[i]`` is the first position ``j > i`` whose partial left-sibling sum
    from ``i`` lands in ``S-[v_i, v_j]`` (``k + 1`` if there is none) and
    ``g[i]`` is the end of the longest valid run starting at ``i``.
    """
    k = len(chain)
    m = spec.m
    lsib = [0] + [tree.lsib(v) if v != tree.root else 0 for v in chain]
    f = [k + 1] * (k + 1)
    for i in range(1, k + 1):
        total = 0
        vi = chain[i - 1]
        for j in range(i + 1, k + 1):
            total += lsib[j]
            if total > m:
                # sums only grow and directed sets live in [0, m]
                break
            if spec.in_s_minus(vi, chain[j - 1], total):
                f[i] = j
                break
    g = [0] * (k + 1)
    # g(i) = min over i <= l < f(i) of f(l) - 1; computed right to left
    for i in range(k, 0, -1):
        best = f[i] - 1
        for ell in range(i + 1, f[i]):
            if f[ell] - 1 < best:
                best = f[ell] - 1
        g[i] = best
    return tuple(f[1:]), tuple(g[1:])


def maximal_s_cadet_sequences(
    spec: ArrangementSpec, tree: PlaneTree, chain: Sequence[int]
) -> list[tuple[int, int]]:
    """Maximal valid runs of ``chain`` as 1-based ``(start, end)`` pairs.

    Runs ``[i, g(i)]`` are kept unless they extend downwards, which happens
    exactly when ``g(i) == g(i - 1)``; the result is ordered by end position.
    """
    _, g = longest_extension_table(spec, tree, chain)
    runs = []
    prev = 0
    for i, end in enumerate(g, start=1):
        if i == 1 or end > prev:
            runs.append((i, end))
        prev = end
    return runs


@dataclass(frozen=True)
class ConnectedContext:
    """A connected stretch of a cadet chain and its maximal valid runs.

    ``boxes`` holds 1-based ``(start, end)`` positions relative to ``nodes``,
    ordered by end position.  Box ``0`` and box ``k' + 1`` are the sentinels.
    """

    nodes: tuple[int, ...]
    boxes: tuple[tuple[int, int], ...]
    _tops: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = len(self.nodes)
        tops = [0]
        for r, (a, b) in enumerate(self.boxes):
            if r + 1 < len(self.boxes):
                tops.append(min(b, self.boxes[r + 1][0] - 1))
            else:
                tops.append(k)
        object.__setattr__(self, "_tops", tuple(tops))

    @property
    def k(self) -> int:
        return len(self.nodes)

    @property
    def kprime(self) -> int:
        return len(self.boxes)

    def box_nodes(self, r: int) -> tuple[int, ...]:
        if r == 0 or r == self.kprime + 1:
            return (0,)
        a, b = self.boxes[r - 1]
        return self.nodes[a - 1:b]

    def top(self, j: int) -> int:
        """Position of the last node of box ``j`` that box ``j + 1`` misses."""
        return self._tops[j]

    def reaches(self, i: int, j: int) -> bool:
        """Box ``i`` reaches box ``j`` when the parent of ``top(j)`` lies in box ``i``."""
        if not (0 <= i < j <= self.kprime):
            raise ValueError(f"need 0 <= i < j <= {self.kprime}, got ({i}, {j})")
        parent = self._tops[j] - 1
        if i == 0:
            return parent == 0
        a, b = self.boxes[i - 1]
        return a <= parent <= b

    def chain(self) -> list[int] | None:
        """Greedy chain of box indices from the sentinel, or ``None`` on failure."""
        kp = self.kprime
        picked = [0]
        while picked[-1] != kp:
            cur = picked[-1]
            earlier = picked[:-1]
            nxt = None
            for r in range(cur + 1, kp + 1):
                if self.reaches(cur, r) and not any(p < r and self.reaches(p, r) for p in earlier):
                    nxt = r
                    break
            if nxt is None:
                return None
            picked.append(nxt)
        return picked


def contribution_connected(ctx: ConnectedContext) -> int:
    picked = ctx.chain()
    if picked is None:
        return 0
    t = len(picked) - 1
    return -1 if (ctx.k - t) & 1 else 1


def _overlap_groups(runs: list[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    groups: list[list[tuple[int, int]]] = []
    for run in runs:
        if groups and run[0] <= groups[-1][-1][1]:
            groups[-1].append(run)
        else:
            groups.append([run])
    return groups


def s_connected_components(
    spec: ArrangementSpec, tree: PlaneTree, chain: Sequence[int]
) -> list[ConnectedContext]:
    """Split a maximal cadet chain into connected components of overlapping runs."""
    out = []
    for grp in _overlap_groups(maximal_s_cadet_sequences(spec, tree, chain)):
        lo, hi = grp[0][0], grp[-1][1]
        nodes = tuple(chain[lo - 1:hi])
        boxes = tuple((a - lo + 1, b - lo + 1) for a, b in grp)
        out.append(ConnectedContext(nodes, boxes))
    return out


def _chain_contribution(spec: ArrangementSpec, tree: PlaneTree, chain: Sequence[int]) -> int:
    if len(chain) == 1:
        return 1
    total = 1
    for grp in _overlap_groups(maximal_s_cadet_sequences(spec, tree, chain)):
        lo, hi = grp[0][0], grp[-1][1]
        if lo == hi:
            continue
        if len(grp) == 1:
            # a lone run of two or more nodes: its boxings cancel in pairs
            return 0
        ctx = ConnectedContext(tuple(chain[lo - 1:hi]), tuple((a - lo + 1, b - lo + 1) for a, b in grp))
        total *= contribution_connected(ctx)
        if total == 0:
            return 0
    return total


def contribution_fast(spec: ArrangementSpec, tree: PlaneTree, *, checked: bool = True) -> int:
    """Product over connected components of every maximal cadet chain."""
    if checked:
        check_arity(spec, tree)
    total = 1
    for chain in maximal_cadet_sequences(tree):
        total *= _chain_contribution(spec, tree, chain)
        if total == 0:
            return 0
    return total


def _tally_range(args) -> tuple[int, int, int]:
    spec, lo, hi = args
    total = trees = nonzero = 0
    for t in enumerate_trees(spec.n, spec.m, shape_range=(lo, hi)):
        c = contribution_fast(spec, t, checked=False)
        trees += 1
        if c:
            nonzero += 1
            total += c
    return total, trees, nonzero


def fast_tally(spec: ArrangementSpec, *, workers: int = 1, guard: int = DEFAULT_GUARD) -> tuple[int, int, int]:
    """``(sum, trees, nonzero trees)`` over all trees; ``workers > 1`` splits by shape."""
    size = count_trees(spec.n, spec.m)
    if size > guard:
        raise GuardError(size, guard)
    shapes = count_shapes(spec.n, spec.m)
    if workers <= 1 or shapes < 2:
        return _tally_range((spec, 0, shapes))
    step = -(-shapes // (workers * 4))
    chunks = [(spec, lo, min(lo + step, shapes)) for lo in range(0, shapes, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_tally_range, chunks))
    return tuple(sum(col) for col in zip(*parts))


def bernardi_sum_fast(spec: ArrangementSpec, *, workers: int = 1, guard: int = DEFAULT_GUARD) -> int:
    """Sum of fast contributions over all trees."""
    return fast_tally(spec, workers=workers, guard=guard)[0]


def explain(spec: ArrangementSpec, tree: PlaneTree) -> dict:
    """Everything the fast algorithm computes for one tree, as plain data."""
    check_arity(spec, tree)
    chains = []
    total = 1
    for chain in maximal_cadet_sequences(tree):
        f, g = longest_extension_table(spec, tree, chain)
        runs = maximal_s_cadet_sequences(spec, tree, chain)
        comps = []
        for ctx in s_connected_components(spec, tree, chain):
            kp = ctx.kprime
            reach = [(i, j) for j in range(1, kp + 1) for i in range(0, j) if ctx.reaches(i, j)]
            value = contribution_connected(ctx)
            total *= value
            comps.append({
                "nodes": list(ctx.nodes),
                "boxes": [list(ctx.box_nodes(r)) for r in range(1, kp + 1)],
                "reaches": reach,
                "chain": ctx.chain(),
                "contribution": value,
            })
        chains.append({
            "chain": list(chain),
            "f": list(f),
            "g": list(g),
            "maximal_runs": [list(chain[a - 1:b]) for a, b in runs],
            "components": comps,
        })
    return {"tree": str(tree), "chains": chains, "contribution": total}
