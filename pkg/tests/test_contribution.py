import random

import pytest

from braidregions.arrangement import SplitMix64, is_transitive, preset, random_spec
from braidregions.boxed import contribution_brute, is_s_cadet_sequence
from braidregions.contribution import (
    ConnectedContext,
    _overlap_groups,
    bernardi_sum_fast,
    contribution_connected,
    contribution_fast,
    explain,
    longest_extension_table,
    maximal_s_cadet_sequences,
    s_connected_components,
)
from braidregions.trees import enumerate_trees, maximal_cadet_sequences

import samples


def signed_compositions(k, valid):
    """Sum over splittings of 1..k into valid intervals of prod (-1)^(len-1)."""
    total = [0] * (k + 1)
    total[0] = 1
    for j in range(1, k + 1):
        for i in range(j):
            if valid(i + 1, j):
                total[j] += (-1) ** (j - i - 1) * total[i]
    return total[k]


def runs_of(k, intervals):
    """Maximal members of the subinterval closure, singletons included."""
    fam = set(intervals) | {(i, i) for i in range(1, k + 1)}
    maximal = [
        (a, b) for a, b in fam if not any((c, d) != (a, b) and c <= a and b <= d for c, d in fam)
    ]
    return sorted(maximal, key=lambda r: r[1])


def test_reaching_rule_against_compositions():
    rnd = random.Random(5)
    for _ in range(3000):
        k = rnd.randint(1, 9)
        intervals = []
        for _ in range(rnd.randint(0, 5)):
            a = rnd.randint(1, k)
            intervals.append((a, rnd.randint(a, k)))
        runs = runs_of(k, intervals)

        def valid(i, j):
            return any(a <= i and j <= b for a, b in runs)

        expected = signed_compositions(k, valid)
        got = 1
        for grp in _overlap_groups(runs):
            lo = grp[0][0]
            ctx = ConnectedContext(
                tuple(range(grp[0][0], grp[-1][1] + 1)), tuple((a - lo + 1, b - lo + 1) for a, b in grp)
            )
            got *= contribution_connected(ctx)
        assert got == expected, runs


def test_extension_table_against_definition():
    rng = SplitMix64(8)
    for _ in range(6):
        spec = random_spec(4, 2, 0.35, rng)
        for tree in enumerate_trees(4, 2):
            for chain in maximal_cadet_sequences(tree):
                _, g = longest_extension_table(spec, tree, chain)
                k = len(chain)
                for i in range(1, k + 1):
                    longest = max(j for j in range(i, k + 1) if is_s_cadet_sequence(spec, tree, chain[i - 1:j]))
                    assert g[i - 1] == longest


def test_example_runs_and_components():
    spec, tree = samples.RUNS_SPEC, samples.RUNS_TREE
    chain = (1, 2, 3, 4, 5, 6)
    assert maximal_s_cadet_sequences(spec, tree, chain) == [(1, 2), (2, 3), (4, 4), (5, 6)]
    comps = s_connected_components(spec, tree, chain)
    assert [c.nodes for c in comps] == [(1, 2, 3), (4,), (5, 6)]
    assert comps[0].boxes == ((1, 2), (2, 3))


def test_example_reaching():
    spec, tree = samples.ALGO_SPEC, samples.ALGO_TREE
    (ctx,) = s_connected_components(spec, tree, tuple(range(1, 8)))
    assert ctx.boxes == ((1, 3), (2, 5), (3, 6), (5, 7))
    assert ctx.reaches(0, 1)
    assert not ctx.reaches(0, 2)
    assert ctx.chain() is None
    assert contribution_fast(spec, tree) == contribution_brute(spec, tree) == 0
    with pytest.raises(ValueError):
        ctx.reaches(2, 2)
    assert ctx.box_nodes(0) == (0,) and ctx.box_nodes(5) == (0,)


def test_example_contribution():
    spec, tree = samples.CONTRIB_SPEC, samples.CONTRIB_TREE
    data = explain(spec, tree)
    assert data["contribution"] == contribution_fast(spec, tree) == -1
    first = data["chains"][0]
    assert first["chain"] == [4, 5, 1]
    assert first["maximal_runs"] == [[4, 5], [5, 1]]
    assert first["components"][0]["chain"] == [0, 1, 2]


@pytest.mark.parametrize("n,m,density", [(3, 2, 0.3), (4, 1, 0.3), (4, 2, 0.15), (3, 3, 0.2)])
def test_per_tree_agreement(n, m, density):
    rng = SplitMix64(n * 100 + m)
    for _ in range(12):
        spec = random_spec(n, m, density, rng)
        transitive = is_transitive(spec)
        for tree in enumerate_trees(n, m):
            fast = contribution_fast(spec, tree)
            assert fast == contribution_brute(spec, tree), (spec.to_json(), str(tree))
            if transitive:
                assert fast in (0, 1)


def test_larger_arity_tree_accepted():
    spec = preset("braid", 3)
    sums = sum(contribution_fast(spec, t) for t in enumerate_trees(3, 2))
    assert sums == sum(contribution_brute(spec, t) for t in enumerate_trees(3, 2))


def test_workers_do_not_change_result():
    spec = preset("ish", 4)
    assert bernardi_sum_fast(spec, workers=2) == bernardi_sum_fast(spec) == 125
