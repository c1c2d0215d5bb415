"""Deformations of the braid arrangement.

An arrangement in R^n is given by finite integer sets ``S[i, j]`` for
``1 <= i < j <= n``; it consists of the hyperplanes ``x_i - x_j = s`` for
``s`` in ``S[i, j]``.  Labels are 1-based everywhere in the public API.

The directed sets used by the boxed-tree machinery are, for ``i < j``::

    S-[i, j] = {s >= 0 : -s in S[i, j]}
    S-[j, i] = {0} | {s > 0 : s in S[i, j]}

All of them live inside ``[0, m]`` where ``m`` is the largest ``|s|``.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_left
from itertools import permutations
from typing import Iterable, Mapping

__all__ = [
    "ArrangementSpec",
    "SplitMix64",
    "classify_family",
    "is_almost_transitive",
    "is_transitive",
    "max_offset",
    "parse_arrangement",
    "parse_nest",
    "preset",
    "random_spec",
    "s_minus",
    "FAMILIES",
]

FAMILIES = ("braid", "shi", "ish", "nested-ish", "ish-type")


class ArrangementSpec:
    """Immutable description of an integer deformation of the braid arrangement.

    ``offsets`` maps ordered pairs ``(i, j)`` with ``i < j`` to iterables of
    integers; pairs that are absent carry no hyperplane.
    """

    __slots__ = ("n", "m", "_offsets", "_minus", "_key")

    def __init__(self, n: int, offsets: Mapping[tuple[int, int], Iterable[int]] | None = None):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {n!r}")
        table: dict[tuple[int, int], tuple[int, ...]] = {
            (i, j): () for i in range(1, n + 1) for j in range(i + 1, n + 1)
        }
        for key, values in (offsets or {}).items():
            i, j = key
            if not (1 <= i < j <= n):
                raise ValueError(f"pair {key!r} must satisfy 1 <= i < j <= {n}")
            vals = set()
            for s in values:
                if not isinstance(s, int) or isinstance(s, bool):
                    raise ValueError(f"offset {s!r} for pair {key!r} is not an integer")
                vals.add(s)
            table[(i, j)] = tuple(sorted(vals))
        self.n = n
        self._offsets = table
        self.m = max((abs(s) for vals in table.values() for s in vals), default=0)

        minus: dict[tuple[int, int], tuple[int, ...]] = {}
        for (i, j), vals in table.items():
            minus[(i, j)] = tuple(sorted(-s for s in vals if s <= 0))
            minus[(j, i)] = tuple(sorted({0} | {s for s in vals if s > 0}))
        self._minus = minus
        self._key = (n, tuple(sorted(table.items())))

    def offsets(self, i: int, j: int) -> tuple[int, ...]:
        """Sorted ``S[i, j]``; the pair may be given in either order."""
        if i > j:
            i, j = j, i
        return self._offsets[(i, j)]

    def pairs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self._offsets)

    def s_minus(self, a: int, b: int) -> tuple[int, ...]:
        try:
            return self._minus[(a, b)]
        except KeyError:
            raise ValueError(f"no directed set for labels ({a}, {b}) in dimension {self.n}") from None

    def in_s_minus(self, a: int, b: int, value: int) -> bool:
        """Binary-search membership of ``value`` in ``S-[a, b]``."""
        vals = self._minus[(a, b)]
        k = bisect_left(vals, value)
        return k < len(vals) and vals[k] == value

    def hyperplane_count(self) -> int:
        return sum(len(v) for v in self._offsets.values())

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "hyperplanes": [
                {"i": i, "j": j, "s": list(vals)}
                for (i, j), vals in sorted(self._offsets.items())
                if vals
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document())

    def __eq__(self, other):
        if not isinstance(other, ArrangementSpec):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        body = ", ".join(f"{i}{j}:{set(v) or '{}'}" for (i, j), v in sorted(self._offsets.items()))
        return f"ArrangementSpec(n={self.n}, {body})"


def parse_arrangement(text: str | Mapping) -> ArrangementSpec:
    """Build a spec from the JSON document format.

    ``{"n": 3, "hyperplanes": [{"i": 1, "j": 2, "s": [0, 1]}, ...]}``.
    Duplicate pairs are rejected; missing pairs mean no hyperplane.
    """
    if isinstance(text, Mapping):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed spec document: {exc}") from None
    if not isinstance(doc, Mapping) or "n" not in doc:
        raise ValueError("spec document must be an object with key 'n'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"'n' must be an integer, got {n!r}")
    entries = doc.get("hyperplanes", [])
    if not isinstance(entries, list):
        raise ValueError("'hyperplanes' must be a list")
    offsets: dict[tuple[int, int], list[int]] = {}
    for entry in entries:
        if not isinstance(entry, Mapping) or not {"i", "j", "s"} <= set(entry):
            raise ValueError(f"hyperplane entry needs i, j, s: {entry!r}")
        i, j, s = entry["i"], entry["j"], entry["s"]
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise ValueError(f"indices must be integers: {entry!r}")
        if not isinstance(s, list):
            raise ValueError(f"'s' must be a list of integers: {entry!r}")
        if (i, j) in offsets:
            raise ValueError(f"duplicate entry for pair ({i}, {j})")
        offsets[(i, j)] = s
    return ArrangementSpec(n, offsets)


def s_minus(spec: ArrangementSpec, a: int, b: int) -> frozenset[int]:
    if a == b:
        raise ValueError("directed sets need two distinct labels")
    return frozenset(spec.s_minus(a, b))


def max_offset(spec: ArrangementSpec) -> int:
    return spec.m


def _closure_holds(spec: ArrangementSpec, bound: int, exempt: int | None) -> bool:
    # s, t range over [0, bound]; values above m are never in a directed set
    # and neither is any sum exceeding m, so bound = m loses nothing.
    labels = range(1, spec.n + 1)
    for i, j, k in permutations(labels, 3):
        if exempt is not None and exempt in (i, k):
            continue
        ij, jk = spec.s_minus(i, j), spec.s_minus(j, k)
        for s in range(bound + 1):
            if s in ij:
                continue
            for t in range(bound + 1):
                if t in jk:
                    continue
                if spec.in_s_minus(i, k, s + t):
                    return False
    return True


def is_transitive(spec: ArrangementSpec, *, bound: int | None = None) -> bool:
    """Transitivity of the directed sets.

    Nonnegative ``s`` and ``t`` only need to be scanned up to ``m``: anything
    larger is outside every directed set, and so is any sum exceeding ``m``.
    ``bound`` overrides the scan limit (used to check that reduction).
    """
    return _closure_holds(spec, spec.m if bound is None else bound, None)


def is_almost_transitive(spec: ArrangementSpec, *, bound: int | None = None) -> bool:
    """Transitivity restricted to triples whose outer labels avoid 1."""
    return _closure_holds(spec, spec.m if bound is None else bound, 1)


def _is_ish_type(spec: ArrangementSpec) -> bool:
    for (i, j), vals in spec.pairs().items():
        if i == 1:
            if 0 not in vals:
                return False
        elif vals != (0,):
            return False
    return True


def _is_nested(spec: ArrangementSpec) -> bool:
    cols = [set(spec.offsets(1, j)) for j in range(2, spec.n + 1)]
    return all(a <= b for a, b in zip(cols, cols[1:]))


def classify_family(spec: ArrangementSpec) -> set[str]:
    tags = set()
    if _is_ish_type(spec):
        tags.add("ish-type")
        if _is_nested(spec):
            tags.add("nested-ish")
        if all(spec.offsets(1, j) == tuple(range(j)) for j in range(2, spec.n + 1)):
            tags.add("ish")
    if is_transitive(spec):
        tags.update(("transitive", "almost-transitive"))
    elif is_almost_transitive(spec):
        tags.add("almost-transitive")
    return tags


def preset(family: str, n: int, params: list[Iterable[int]] | None = None) -> ArrangementSpec:
    """Named arrangement families.

    ``params`` is required for ``nested-ish`` and ``ish-type``: the sets
    ``S[1, j]`` for ``j = 2..n`` in order.
    """
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if family == "braid":
        return ArrangementSpec(n, {p: (0,) for p in pairs})
    if family == "shi":
        return ArrangementSpec(n, {p: (0, 1) for p in pairs})
    if family == "ish":
        params = [range(j) for j in range(2, n + 1)]
    elif family in ("nested-ish", "ish-type"):
        if params is None or len(params) != n - 1:
            raise ValueError(f"{family} needs {n - 1} column sets S[1,j], j=2..{n}")
        params = [set(c) for c in params]
        for j, col in enumerate(params, start=2):
            if 0 not in col:
                raise ValueError(f"S[1,{j}] must contain 0")
        if family == "nested-ish":
            for j, (a, b) in enumerate(zip(params, params[1:]), start=2):
                if not set(a) <= set(b):
                    raise ValueError(f"S[1,{j}] is not contained in S[1,{j + 1}]")
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    offsets = {(i, j): (0,) for (i, j) in pairs if i != 1}
    for j, col in enumerate(params, start=2):
        offsets[(1, j)] = tuple(col)
    return ArrangementSpec(n, offsets)


_ITEM = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$")


def parse_nest(text: str) -> list[set[int]]:
    """Parse ``"0..0,0..1,0..2"`` into per-column sets.

    Columns are comma separated; within a column ``+`` joins several ranges
    or single integers, e.g. ``"-1..1+4"``.
    """
    columns = []
    for col in text.split(","):
        values: set[int] = set()
        for item in col.split("+"):
            match = _ITEM.match(item)
            if not match:
                raise ValueError(f"bad range item {item!r} in {text!r}")
            lo = int(match.group(1))
            hi = int(match.group(2)) if match.group(2) is not None else lo
            if hi < lo:
                raise ValueError(f"empty range {item!r}")
            values.update(range(lo, hi + 1))
        columns.append(values)
    return columns


class SplitMix64:
    """SplitMix64 generator; fixed so that sampled corpora are reproducible."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)


def random_spec(n: int, m: int, density: float, rng: SplitMix64) -> ArrangementSpec:
    """Each pair independently gets each offset in ``[-m, m]`` with probability ``density``."""
    offsets = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            offsets[(i, j)] = [s for s in range(-m, m + 1) if rng.random() < density]
    return ArrangementSpec(n, offsets)
