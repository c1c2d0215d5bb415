"""Method registry and the reports behind the command line."""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, Iterator

from .arrangement import ArrangementSpec, SplitMix64, classify_family, random_spec
from .boxed import DEFAULT_GUARD, bernardi_sum_brute, contribution_brute
from .contribution import contribution_fast, fast_tally
from .errors import GuardError, NotApplicableError
from .ish import class_histogram, closed_formula, count_broom_trees
from .oracle import region_count_zaslavsky
from .trees import count_trees, enumerate_trees

__all__ = [
    "METHODS",
    "RunReport",
    "SampleResult",
    "bench",
    "check_methods",
    "run_count",
    "run_verify",
]

METHODS = ("brute", "fast", "involution", "formula", "bijection", "oracle")
_NEEDS = {"involution": ("ish-type", "Ish-type"), "formula": ("nested-ish", "nested Ish"),
          "bijection": ("nested-ish", "nested Ish")}


@dataclass
class RunReport:
    spec: dict
    methods: list[str]
    counts: dict[str, int] = field(default_factory=dict)
    timings_ms: dict[str, float] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def agreement(self) -> bool:
        return len(set(self.counts.values())) <= 1

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "methods": self.methods,
            "counts": self.counts,
            "agreement": self.agreement,
            "timings_ms": self.timings_ms,
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_lines(self) -> str:
        lines = [
            f"n={self.spec['n']}",
            f"m={self.spec['m']}",
            f"hyperplanes={self.spec['hyperplanes']}",
            f"families={','.join(self.spec['families']) or '-'}",
        ]
        for name in self.methods:
            lines.append(f"count.{name}={self.counts[name]}")
        for name in self.methods:
            lines.append(f"time_ms.{name}={self.timings_ms[name]:.3f}")
        for key, value in self.stats.items():
            if isinstance(value, dict):
                for sub, v in value.items():
                    lines.append(f"{key}.{sub}={v}")
            else:
                lines.append(f"{key}={value}")
        lines.append(f"agreement={'true' if self.agreement else 'false'}")
        return "\n".join(lines) + "\n"


def spec_summary(spec: ArrangementSpec) -> dict:
    return {
        "n": spec.n,
        "m": spec.m,
        "hyperplanes": spec.hyperplane_count(),
        "families": sorted(classify_family(spec)),
    }


def check_methods(spec: ArrangementSpec, methods: list[str]) -> None:
    families = classify_family(spec)
    for name in methods:
        if name not in METHODS:
            raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
        need = _NEEDS.get(name)
        if need and need[0] not in families:
            raise NotApplicableError(f"method {name} requires {need[1]} arrangement")


def _guard_trees(spec: ArrangementSpec, guard: int) -> None:
    size = count_trees(spec.n, spec.m)
    if size > guard:
        raise GuardError(size, guard)


def _fast_with_stats(spec: ArrangementSpec, guard: int, workers: int, stats: dict) -> int:
    total, trees, nonzero = fast_tally(spec, workers=workers, guard=guard)
    stats["trees_total"] = trees
    stats["trees_nonzero"] = nonzero
    return total


def _involution_with_stats(spec: ArrangementSpec, guard: int, stats: dict) -> int:
    hist = class_histogram(spec, guard=guard)
    stats["trees_total"] = count_trees(spec.n, spec.m)
    stats["trees_nonzero"] = sum(hist.values())
    stats["class"] = {str(k): v for k, v in sorted(hist.items())}
    return hist.get((0, 0, 0, 0), 0)


def _bijection(spec: ArrangementSpec, guard: int) -> int:
    width = 2 * spec.m + 2
    size = factorial(spec.n - 1) * comb(spec.n - 2 + width, width - 1)
    if size > guard:
        raise GuardError(size, guard)
    return count_broom_trees(spec)


def _runner(
    name: str, spec: ArrangementSpec, guard: int, prime_bound: int | None, workers: int, stats: dict
) -> Callable[[], int]:
    if name == "brute":
        return lambda: bernardi_sum_brute(spec, guard=guard)
    if name == "fast":
        return lambda: _fast_with_stats(spec, guard, workers, stats)
    if name == "involution":
        return lambda: _involution_with_stats(spec, guard, stats)
    if name == "formula":
        return lambda: closed_formula(spec)
    if name == "bijection":
        return lambda: _bijection(spec, guard)
    if name == "oracle":
        return lambda: region_count_zaslavsky(spec, prime_bound=prime_bound, workers=workers)
    raise ValueError(f"unknown method {name!r}")


def run_count(
    spec: ArrangementSpec,
    methods: list[str],
    *,
    guard: int = DEFAULT_GUARD,
    prime_bound: int | None = None,
    workers: int = 1,
) -> RunReport:
    check_methods(spec, methods)
    report = RunReport(spec_summary(spec), list(methods))
    for name in methods:
        fn = _runner(name, spec, guard, prime_bound, workers, report.stats)
        start = time.perf_counter()
        report.counts[name] = fn()
        report.timings_ms[name] = (time.perf_counter() - start) * 1000.0
    return report


def bench(
    spec: ArrangementSpec,
    methods: list[str],
    *,
    repeats: int = 3,
    guard: int = DEFAULT_GUARD,
    prime_bound: int | None = None,
    workers: int = 1,
) -> list[dict]:
    """Median wall time of each method over ``repeats`` runs."""
    if repeats < 1:
        raise ValueError("repeats must be positive")
    check_methods(spec, methods)
    rows = []
    for name in methods:
        fn = _runner(name, spec, guard, prime_bound, workers, {})
        times = []
        value = None
        for _ in range(repeats):
            start = time.perf_counter()
            value = fn()
            times.append((time.perf_counter() - start) * 1000.0)
        rows.append({
            "method": name,
            "median_ms": statistics.median(times),
            "min_ms": min(times),
            "max_ms": max(times),
            "repeats": repeats,
            "count": value,
        })
    return rows


@dataclass
class SampleResult:
    index: int
    spec: ArrangementSpec
    counts: dict[str, int]
    failing_tree: str | None = None

    @property
    def agreement(self) -> bool:
        return len(set(self.counts.values())) == 1

    def to_dict(self) -> dict:
        out = {"sample": self.index, "counts": self.counts, "agreement": self.agreement}
        if not self.agreement:
            out["spec"] = self.spec.to_document()
            if self.failing_tree is not None:
                out["failing_tree"] = self.failing_tree
        return out


def _first_disagreeing_tree(spec: ArrangementSpec) -> str | None:
    for t in enumerate_trees(spec.n, spec.m):
        if contribution_brute(spec, t) != contribution_fast(spec, t):
            return str(t)
    return None


def run_verify(
    n: int,
    m: int,
    density: float,
    samples: int,
    seed: int,
    *,
    guard: int = DEFAULT_GUARD,
    prime_bound: int | None = None,
) -> Iterator[SampleResult]:
    """Brute, fast and oracle counts on seeded random arrangements.

    Stops after the first sample where the methods disagree.
    """
    rng = SplitMix64(seed)
    for idx in range(samples):
        spec = random_spec(n, m, density, rng)
        _guard_trees(spec, guard)
        counts = {
            "brute": bernardi_sum_brute(spec, guard=guard),
            "fast": sum(contribution_fast(spec, t, checked=False) for t in enumerate_trees(spec.n, spec.m)),
            "oracle": region_count_zaslavsky(spec, prime_bound=prime_bound),
        }
        result = SampleResult(idx, spec, counts)
        if not result.agreement:
            if counts["brute"] != counts["fast"]:
                result.failing_tree = _first_disagreeing_tree(spec)
            yield result
            return
        yield result
