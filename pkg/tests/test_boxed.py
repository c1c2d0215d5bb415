import pytest

from braidregions.arrangement import ArrangementSpec, preset
from braidregions.boxed import (
    bernardi_sum_brute,
    check_arity,
    contribution_brute,
    enumerate_s_boxings,
    is_s_cadet_sequence,
)
from braidregions.errors import GuardError
from braidregions.trees import decode_tree, enumerate_trees

import samples


def test_example_boxings():
    spec, tree = samples.CONTRIB_SPEC, samples.CONTRIB_TREE
    boxings = list(enumerate_s_boxings(spec, tree))
    assert len(boxings) == 3
    for boxing in boxings:
        assert sorted(v for box in boxing for v in box) == list(range(1, 7))
        for box in boxing:
            assert is_s_cadet_sequence(spec, tree, box)
    assert contribution_brute(spec, tree) == -1


def test_s_cadet_checks():
    spec, tree = samples.CONTRIB_SPEC, samples.CONTRIB_TREE
    assert is_s_cadet_sequence(spec, tree, (4, 5))
    assert is_s_cadet_sequence(spec, tree, (5, 1))
    # 4 -> 1 has partial sum 1 + 3 = 4, which lies in the directed set of (4, 1)
    assert not is_s_cadet_sequence(spec, tree, (4, 5, 1))
    with pytest.raises(ValueError):
        is_s_cadet_sequence(spec, tree, (4, 1))


@pytest.mark.parametrize(
    "family,n,expected",
    [("braid", 3, 6), ("braid", 4, 24), ("shi", 3, 16), ("ish", 2, 3), ("ish", 3, 16), ("ish", 4, 125)],
)
def test_brute_sums(family, n, expected):
    assert bernardi_sum_brute(preset(family, n)) == expected


def test_empty_arrangement_has_one_region():
    for n in (1, 2, 3):
        assert bernardi_sum_brute(ArrangementSpec(n, {})) == 1


def test_contributions_are_signs():
    spec = preset("shi", 3)
    assert {contribution_brute(spec, t) for t in enumerate_trees(3, 1)} <= {-1, 0, 1}


def test_guard():
    with pytest.raises(GuardError) as info:
        bernardi_sum_brute(preset("ish", 4), guard=100)
    assert info.value.size == 3360


def test_arity_check():
    with pytest.raises(ValueError):
        check_arity(preset("ish", 3), decode_tree("1(*,2(*,*))"))
    with pytest.raises(ValueError):
        check_arity(preset("ish", 3), decode_tree("1(*,2(*,3(*,*)))"))
    check_arity(preset("ish", 3), decode_tree("1(*,2(*,3(*,*,*,*),*,*),*,*)"))
