import itertools

import pytest

from braidregions.arrangement import ArrangementSpec, SplitMix64, preset
from braidregions.contribution import bernardi_sum_fast, contribution_fast, explain
from braidregions.errors import GuardError, NotApplicableError
from braidregions.ish import (
    IshClassification,
    class_histogram,
    classify_tree,
    closed_formula,
    count_zero_class,
    demote_lower,
    demote_upper,
    enumerate_class,
    lower_inefficient_nodes,
    lower_involution,
    promote_lower,
    promote_upper,
    upper_inefficient_nodes,
    upper_involution,
)
from braidregions.oracle import region_count_zaslavsky
from braidregions.trees import enumerate_trees

import samples


def random_ish_type(n, m, rng, nested):
    cols = []
    prev = {0}
    for _ in range(2, n + 1):
        col = {0} | {s for s in range(-m, m + 1) if rng.random() < 0.4}
        if nested:
            col |= prev
        cols.append(col)
        prev = col
    return preset("nested-ish" if nested else "ish-type", n, cols)


def test_inefficiency_figure():
    # node 4 has three left siblings, which the directed set {0..3} allows
    spec, tree = samples.INEFF_SPEC, samples.INEFF_TREE
    assert lower_inefficient_nodes(spec, tree) == []
    assert upper_inefficient_nodes(spec, tree) == [2, 3]
    cls = classify_tree(spec, tree)
    assert cls == (0, 1, 2, 0)
    assert str(cls) == "(0,1,2,0)"
    assert cls.sign == -1 == contribution_fast(spec, tree)
    runs = [r for ch in explain(spec, tree)["chains"] for r in ch["maximal_runs"] if len(r) > 1]
    assert runs == [[7, 5], [5, 1]]


def test_lower_surgery_pair():
    spec = samples.ISH6
    assert classify_tree(spec, samples.LOWER_BEFORE) == (1, 2, 0, 0)
    assert classify_tree(spec, samples.LOWER_AFTER) == (2, 1, 0, 0)
    assert demote_lower(spec, samples.LOWER_BEFORE) == samples.LOWER_AFTER
    assert promote_lower(spec, samples.LOWER_AFTER, 1) == samples.LOWER_BEFORE
    assert lower_involution(spec, samples.LOWER_AFTER) != samples.LOWER_BEFORE


def test_upper_surgery_pair():
    spec = samples.UPPER_SPEC
    assert classify_tree(spec, samples.UPPER_BEFORE) == (0, 0, 1, 1)
    assert classify_tree(spec, samples.UPPER_AFTER) == (0, 0, 2, 0)
    assert demote_upper(spec, samples.UPPER_BEFORE) == samples.UPPER_AFTER
    # the promoted node is counted from the left
    assert promote_upper(spec, samples.UPPER_AFTER, 1) == samples.UPPER_BEFORE
    assert upper_involution(spec, samples.UPPER_BEFORE) == promote_upper(spec, samples.UPPER_BEFORE, 0)


def test_gates():
    tree = next(iter(enumerate_trees(3, 1)))
    # transitive but not Ish-type: classification works, class counts do not
    shi = preset("shi", 3)
    assert classify_tree(shi, tree) is None or classify_tree(shi, tree).sign == contribution_fast(shi, tree)
    with pytest.raises(NotApplicableError, match="Ish-type"):
        class_histogram(shi)
    lopsided = ArrangementSpec(3, {(2, 3): [1]})
    with pytest.raises(NotApplicableError):
        classify_tree(lopsided, tree)
    with pytest.raises(NotApplicableError, match="nested Ish"):
        closed_formula(preset("ish-type", 3, [[0, 1], [0]]))
    with pytest.raises(GuardError):
        count_zero_class(preset("ish", 4), guard=10)


def test_domain_errors():
    spec = preset("ish", 3)
    zero = next(t for t in enumerate_trees(3, 2) if classify_tree(spec, t) == (0, 0, 0, 0))
    for op in (demote_lower, demote_upper, lower_involution, upper_involution):
        with pytest.raises(ValueError):
            op(spec, zero)
    with pytest.raises(ValueError):
        promote_lower(spec, zero, 0)


@pytest.mark.parametrize("seed", range(6))
def test_classification_sign_and_counts(seed):
    rng = SplitMix64(seed)
    spec = random_ish_type(4, 2, rng, nested=seed % 2 == 0)
    hist = class_histogram(spec)
    for tree in enumerate_trees(4, spec.m):
        cls = classify_tree(spec, tree)
        c = contribution_fast(spec, tree)
        assert (cls is None) == (c == 0)
        if cls is not None:
            assert cls.sign == c
            assert sum(cls) < spec.n
    signed = sum(cls.sign * size for cls, size in hist.items())
    assert signed == count_zero_class(spec) == bernardi_sum_fast(spec)


@pytest.mark.parametrize("seed", range(4))
def test_involutions_on_random_ish_type(seed):
    spec = random_ish_type(4, 2, SplitMix64(50 + seed), nested=False)
    for tree in enumerate_trees(4, spec.m):
        cls = classify_tree(spec, tree)
        if cls is None:
            continue
        if cls.e_l + cls.len_l:
            image = lower_involution(spec, tree)
            assert lower_involution(spec, image) == tree
            assert classify_tree(spec, image).sign == -cls.sign
        elif cls.e_u + cls.len_u:
            image = upper_involution(spec, tree)
            assert upper_involution(spec, image) == tree
            assert classify_tree(spec, image).sign == -cls.sign


def test_enumerate_class():
    spec = preset("ish", 3)
    members = list(enumerate_class(spec, (0, 0, 0, 0)))
    assert len(members) == 16
    assert all(isinstance(classify_tree(spec, t), IshClassification) for t in members)


@pytest.mark.parametrize("n", range(1, 8))
def test_cayley(n):
    assert closed_formula(preset("ish", n)) == (n + 1) ** (n - 1)


def test_closed_formula_matches_oracle():
    rng = SplitMix64(77)
    for _ in range(6):
        spec = random_ish_type(4, 3, rng, nested=True)
        assert closed_formula(spec) == region_count_zaslavsky(spec) == count_zero_class(spec)
