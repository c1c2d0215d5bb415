from braidregions.arrangement import ArrangementSpec, preset
from braidregions.render import render_dot
from braidregions.trees import decode_tree

import samples

import pytest


def test_boxes_clusters():
    dot = render_dot(samples.CONTRIB_SPEC, samples.CONTRIB_TREE, "boxes")
    assert dot.startswith("digraph tree {")
    assert 'label="{4,5}"' in dot and 'label="{5,1}"' in dot
    assert dot.count("subgraph cluster_") == 2
    node5 = next(line for line in dot.splitlines() if line.strip().startswith("n5 ["))
    assert "peripheries=2" in node5
    node4 = next(line for line in dot.splitlines() if line.strip().startswith("n4 ["))
    assert "peripheries" not in node4


def test_connected_clusters():
    dot = render_dot(samples.RUNS_SPEC, samples.RUNS_TREE, "connected")
    assert 'label="{1,2,3}"' in dot and 'label="{5,6}"' in dot
    assert dot.count("subgraph cluster_") == 2


def test_classification_label():
    dot = render_dot(samples.INEFF_SPEC, samples.INEFF_TREE, "classification")
    assert 'label="(0,1,2,0)"' in dot
    assert dot.count('xlabel="upper"') == 2
    lopsided = ArrangementSpec(3, {(2, 3): [1]})
    dot = render_dot(lopsided, decode_tree("1(*,2(*,3(*,*)))"), "classification")
    assert "not almost transitive" in dot


def test_single_node():
    dot = render_dot(ArrangementSpec(1, {}), decode_tree("1(*)"), "boxes")
    assert "cluster" not in dot
    assert 'n1 [label="1"]' in dot


def test_unknown_mode():
    with pytest.raises(ValueError):
        render_dot(preset("ish", 2), decode_tree("1(*,2(*,*))"), "colours")
