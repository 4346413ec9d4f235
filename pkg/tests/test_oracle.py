import math

import pytest

from abctrees.errors import LimitExceeded
from abctrees.oracle import enumerate_leaf_trees, oracle_minimal
from abctrees.search import enumerate_shapes, minimal_tree
from abctrees.shapes import CandidateShape, shape_abc
from abctrees.tree_core import build_extremal_tree, canonical_code
from test_oracles import LEAF_TREE_COUNTS


@pytest.mark.parametrize("t", range(2, 11))
def test_stream_invariants(t):
    codes = set()
    for tree in enumerate_leaf_trees(t):
        assert 2 not in tree.degrees
        assert len(tree.leaves()) == t
        code = canonical_code(tree)
        assert code not in codes
        codes.add(code)
    assert codes


def test_small_counts():
    assert len(list(enumerate_leaf_trees(2))) == 1
    assert len(list(enumerate_leaf_trees(3))) == 1
    for t, n in LEAF_TREE_COUNTS.items():
        assert len(list(enumerate_leaf_trees(t))) == n


def test_counts_regression():
    # Degree-2-free trees by leaf count, t = 8..10.
    assert [len(list(enumerate_leaf_trees(t))) for t in (8, 9, 10)] == [32, 73, 190]


def test_parallel_matches_sequential():
    seq = [canonical_code(tr) for tr in enumerate_leaf_trees(8)]
    par = [canonical_code(tr) for tr in enumerate_leaf_trees(8, workers=2)]
    assert sorted(seq) == sorted(par)


def test_limits():
    with pytest.raises(LimitExceeded):
        list(enumerate_leaf_trees(11))
    assert len(list(enumerate_leaf_trees(11, max_leaves=11))) > 190
    # Capping internal vertices keeps only small skeletons.
    assert len(list(enumerate_leaf_trees(7, max_internal=1))) == 1


def test_minimal_examples():
    res = oracle_minimal(5)
    assert res.min_abc == pytest.approx(math.sqrt(20), abs=1e-14)
    assert res.minimizers == [canonical_code(build_extremal_tree(CandidateShape.star(5)))]
    assert oracle_minimal(10).min_abc == pytest.approx(math.sqrt(90), abs=1e-14)
    assert oracle_minimal(8).min_abc == minimal_tree(8).abc


@pytest.mark.parametrize("t", range(2, 11))
def test_oracle_dominates_every_shape(t):
    res = oracle_minimal(t, keep_trees=True)
    assert all(res.min_abc <= shape_abc(s) + 1e-12 for s in enumerate_shapes(t))
    assert res.trees and canonical_code(res.trees[0]) == res.minimizers[0]
