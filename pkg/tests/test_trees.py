import itertools

import pytest

from braidregions.trees import (
    PlaneTree,
    count_trees,
    decode_tree,
    encode_tree,
    enumerate_trees,
    maximal_cadet_sequences,
)

import samples


def naive_trees(n, m):
    """Every choice of (parent, slot) per non-root node that yields a tree."""
    arity = m + 1
    slots = [(p, s) for p in range(1, n + 1) for s in range(arity)]
    out = set()
    for root in range(1, n + 1):
        others = [v for v in range(1, n + 1) if v != root]
        for choice in itertools.product(slots, repeat=len(others)):
            if len(set(choice)) < len(choice):
                continue
            parent = dict(zip(others, (c[0] for c in choice)))
            ok = True
            for v in others:
                seen, u = set(), v
                while u != root:
                    if u in seen:
                        ok = False
                        break
                    seen.add(u)
                    u = parent[u]
                if not ok:
                    break
            if not ok:
                continue
            rows = [[None] * arity for _ in range(n)]
            for v, (p, s) in zip(others, choice):
                rows[p - 1][s] = v
            out.add(PlaneTree(root, rows))
    return out


@pytest.mark.parametrize("n,m", [(1, 0), (2, 0), (3, 0), (2, 1), (3, 1), (2, 2), (3, 2), (4, 1)])
def test_enumeration_matches_naive(n, m):
    trees = list(enumerate_trees(n, m))
    assert len(trees) == len(set(trees)) == count_trees(n, m)
    assert set(trees) == naive_trees(n, m)


def test_counts():
    assert [count_trees(n, 0) for n in range(1, 6)] == [1, 2, 6, 24, 120]
    assert count_trees(4, 3) == 3360
    assert count_trees(5, 4) == 303600


def test_sibling_queries():
    t = samples.CONTRIB_TREE
    assert t.root == 4 and t.parent(4) is None
    assert t.parent(1) == 5 and t.lsib(1) == 3 and t.rsib(1) == 2
    assert t.cadet(5) == 1 and t.cadet(1) is None
    assert t.node_children(5) == [6, 2, 1]
    assert t.ancestors(3) == [2, 5, 4]
    assert t.preorder() == [4, 5, 6, 2, 3, 1]
    assert t.m == 5 and t.is_uniform()


def test_maximal_cadet_sequences_partition():
    for t in enumerate_trees(3, 2):
        blocks = maximal_cadet_sequences(t)
        assert sorted(v for b in blocks for v in b) == [1, 2, 3]
        for b in blocks:
            for a, c in zip(b, b[1:]):
                assert t.cadet(a) == c
    assert maximal_cadet_sequences(samples.CONTRIB_TREE) == [(4, 5, 1), (6,), (2, 3)]


def test_encoding_round_trip():
    for t in enumerate_trees(3, 1):
        assert decode_tree(encode_tree(t)) == t
    text = "2( *, 1(*,*) )"
    assert encode_tree(decode_tree(text)) == "2(*,1(*,*))"
    single = decode_tree("1(*)")
    assert single.n == 1 and single.m == 0


@pytest.mark.parametrize("bad", ["", "1(", "1(*,*", "1(2(*),*)", "0(*)", "1(*,1(*))", "1(*,*)x", "1(*,3(*,*))"])
def test_decode_rejects(bad):
    with pytest.raises(ValueError):
        decode_tree(bad)


def test_non_uniform_decode():
    t = decode_tree("1(*,2(*),*)", uniform=False)
    assert t.arity(1) == 3 and t.arity(2) == 1
    assert not t.is_uniform()
    with pytest.raises(ValueError):
        decode_tree("1(*,2(*),*)")


def test_invalid_structures():
    with pytest.raises(ValueError):
        PlaneTree(1, [[2], [1]])
    with pytest.raises(ValueError):
        PlaneTree(1, [[None, None], [None, None]])
