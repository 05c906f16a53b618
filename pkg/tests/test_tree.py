import json
import math
import random

import numpy as np
import pytest

from isct import (InfeasibleKError, MiningConfig, ProjectionConfig, SequenceDatabase, TreeConfig,
                  TreeFormatError, build_isct, contains, export_tree, fit_predict, tree_from_json)
from isct.synth import planted_database
from isct.tree import IsctNode, IsctTree
from oracles import contains_exhaustive
from conftest import TOY_GROUPS

FAST = ProjectionConfig(num_patterns=256)


def _members(tree):
    return {leaf.cluster_id: sorted(leaf.member_indices) for leaf in tree.leaves()}


def test_toy_pinned(toy_db, enc):
    tree = build_isct(toy_db, TreeConfig(k=3, boost=False), initial_labels=TOY_GROUPS)
    assert tree.leaf_count == 3 and len(tree.patterns_used) == 2
    assert sorted(_members(tree).values()) == [[0, 1], [2, 3], [4, 5]]
    assert math.isinf(tree.root.score.rr) and tree.root.score.positive_cluster == 0
    assert tree.root.right.member_indices == [0, 1]
    # s4 goes left at both questions and reaches the last leaf
    s4 = enc("acaeadcd")
    assert tree.assign(s4) == tree.root.left.left.cluster_id


def test_single_leaf(toy_db):
    tree, cl = fit_predict(toy_db, TreeConfig(k=1))
    assert tree.leaf_count == 1 and tree.patterns_used == []
    assert set(cl.labels) == {0}
    assert tree.assign((0, 1)) == 0
    doc = json.loads(export_tree(tree, "json"))
    assert doc["root"]["kind"] == "leaf" and doc["root"]["cluster_id"] == 0


def test_errors(toy_db):
    with pytest.raises(InfeasibleKError):
        build_isct(toy_db, TreeConfig(k=7))
    with pytest.raises(ValueError):
        TreeConfig(k=0)
    with pytest.raises(ValueError):
        TreeConfig(k=2, min_split=0)


def test_planted_bipartition():
    db, truth, sigs = planted_database(2, 8, 8, 6, seed=3)
    sig = db.alphabet.encode(sigs[0])
    assert [contains_exhaustive(s, sig) for s in db] == list(truth == 0)
    tree, cl = fit_predict(db, TreeConfig(k=2, seed=0, projection=FAST))
    assert tree.leaf_count == 2
    groups = {tuple(np.flatnonzero(cl.labels == c)) for c in range(2)}
    assert groups == {tuple(np.flatnonzero(truth == c)) for c in range(2)}


@pytest.mark.parametrize("boost", [True, False])
def test_partition_routing_and_determinism(boost):
    db, truth, _ = planted_database(4, 8, 14, 8, seed=1, overlap=1)
    cfg = TreeConfig(k=4, boost=boost, seed=5, projection=FAST)
    tree, cl = fit_predict(db, cfg)
    members = [i for leaf in tree.leaves() for i in leaf.member_indices]
    assert sorted(members) == list(range(len(db)))
    assert sorted(leaf.cluster_id for leaf in tree.leaves()) == list(range(tree.leaf_count))
    assert len(tree.patterns_used) == tree.leaf_count - 1 <= 3
    np.testing.assert_array_equal(tree.predict(db), cl.labels)
    tree2, cl2 = fit_predict(db, cfg)
    assert export_tree(tree, "json") == export_tree(tree2, "json")
    np.testing.assert_array_equal(cl.labels, cl2.labels)


def test_children_partition_parent():
    db, _, _ = planted_database(3, 6, 12, 6, seed=2)
    tree = build_isct(db, TreeConfig(k=3, seed=1, projection=FAST))
    node = tree.root
    while not node.is_leaf:
        kids = sorted(node.left.member_indices + node.right.member_indices)
        assert kids == sorted(node.member_indices)
        assert all(contains(db[i], node.pattern) for i in node.right.member_indices)
        assert not any(contains(db[i], node.pattern) for i in node.left.member_indices)
        node = node.left


def test_k_equals_n_min_split_one(toy_db):
    tree, cl = fit_predict(toy_db, TreeConfig(k=6, min_split=1, seed=0, projection=FAST))
    assert tree.leaf_count <= 6
    assert cl.k == tree.leaf_count


def test_no_valid_pattern_makes_leaf():
    db = SequenceDatabase.from_tokens([list("ab")] * 6)
    tree = build_isct(db, TreeConfig(k=3, boost=False), initial_labels=[0, 0, 1, 1, 2, 2])
    assert tree.leaf_count == 1


def _fig3_tree(toy_db, enc):
    return build_isct(toy_db, TreeConfig(k=3, boost=False), initial_labels=TOY_GROUPS)


def test_dot_export(toy_db, enc):
    dot = export_tree(_fig3_tree(toy_db, enc), "dot")
    assert dot.count("shape=ellipse") == 2
    assert dot.count("shape=box") == 3
    assert dot.count("->") == 4
    assert dot.count('label="yes"') == 2 and dot.count('label="no"') == 2
    assert "contains ⟨a b d d⟩?" in dot


def test_text_export(toy_db, enc):
    text = export_tree(_fig3_tree(toy_db, enc), "text")
    lines = text.splitlines()
    assert sum("contains" in l for l in lines) == 2
    assert sum("cluster" in l for l in lines) == 3


def _random_tree(rng, alphabet_size=4):
    from isct import Alphabet
    symbols = tuple(f"t{i}" for i in range(alphabet_size))
    next_id = iter(range(100))
    depth = rng.randint(0, 5)
    leaf = IsctNode("leaf", rng.randint(1, 9), cluster_id=next(next_id))
    root = node = None
    for _ in range(depth):
        pattern = tuple(rng.randrange(alphabet_size) for _ in range(rng.randint(1, 4)))
        right = IsctNode("leaf", rng.randint(1, 9), cluster_id=next(next_id))
        inner = IsctNode("internal", rng.randint(2, 20), pattern=pattern, right=right)
        if node is None:
            root = inner
        else:
            node.left = inner
        node = inner
    if node is None:
        root = leaf
    else:
        node.left = IsctNode("leaf", rng.randint(1, 9), cluster_id=next(next_id))
    return IsctTree(root, depth + 1, Alphabet(symbols))


def test_json_round_trip_bytes():
    rng = random.Random(0)
    for _ in range(50):
        text = export_tree(_random_tree(rng), "json")
        again = export_tree(tree_from_json(text), "json")
        assert again == text


def test_json_round_trip_routes_identically(toy_db, enc):
    tree = _fig3_tree(toy_db, enc)
    loaded = tree_from_json(export_tree(tree, "json"))
    for tokens in toy_db.as_tokens():
        assert loaded.assign_tokens(tokens) == tree.assign_tokens(tokens)
    assert loaded.assign_tokens(["zzz"]) == tree.root.left.left.cluster_id


def test_json_malformed():
    with pytest.raises(TreeFormatError):
        tree_from_json('{"root": {"kind": "leaf"')
    with pytest.raises(TreeFormatError):
        tree_from_json('{"k_requested": 2, "root": {"kind": "internal", "pattern": ["a"]}}')
