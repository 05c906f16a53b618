import numpy as np
import pytest

from isct import (InfeasibleKError, ProjectionConfig, SequenceDatabase, default_max_len,
                  generate_random_patterns, kmeans, lcs_transform, pca_reduce,
                  random_projection_clustering)
from isct.projection import _kmeanspp, lloyd, pca_components
from oracles import contains_exhaustive, lcs_recursive


def test_patterns_single_symbol_exhausts_dedup():
    pats = generate_random_patterns(1, 3, 1, np.random.default_rng(0))
    assert pats == [(0,), (0,), (0,)]


def test_patterns_lengths_and_count(toy_db):
    maxs = default_max_len(toy_db)
    pats = generate_random_patterns(toy_db.alphabet, 2048, maxs, np.random.default_rng(1))
    assert len(pats) == 2048
    assert all(1 <= len(p) <= maxs for p in pats)
    assert all(0 <= i < 5 for p in pats for i in p)
    assert {len(p) for p in pats} == set(range(1, maxs + 1))


def test_patterns_deterministic(toy_db):
    a = generate_random_patterns(toy_db.alphabet, 300, 4, np.random.default_rng(42))
    b = generate_random_patterns(toy_db.alphabet, 300, 4, np.random.default_rng(42))
    assert a == b
    assert len(set(a)) == 300  # plenty of room to dedup


def test_default_max_len():
    short = SequenceDatabase.from_tokens([list("abc"), list("abcdefghijkl")])
    long = SequenceDatabase.from_tokens([list("abcdefghij"), list("abcdefghijkl")])
    assert default_max_len(short) == 3
    assert default_max_len(long) == 5


def test_lcs_transform_examples(toy_db, enc):
    pats = [enc("bd"), enc("b"), enc("abbc")]
    X = lcs_transform(toy_db, pats)
    assert X.shape == (6, 3)
    assert X[0, 0] == 1.0
    assert X[2, 1] == 0.0
    assert X[2, 2] == 0.5
    for i, s in enumerate(toy_db):
        for j, p in enumerate(pats):
            assert X[i, j] == lcs_recursive(s, p) / len(p)
            assert (X[i, j] == 1.0) == contains_exhaustive(s, p)


def test_pca_constant_input():
    X = np.ones((5, 4)) * 0.3
    assert np.allclose(pca_reduce(X, 2), 0.0)


def test_pca_line_preserves_distances():
    t = np.array([0.0, 1.0, 2.5, 4.0, -3.0])
    X = np.stack([1 + 2 * t, -1 + t], axis=1)
    Z = pca_reduce(X, 1)
    dx = np.linalg.norm(X[:, None] - X[None], axis=2)
    dz = np.abs(Z[:, None, 0] - Z[None, :, 0])
    np.testing.assert_allclose(dx, dz, atol=1e-9)


def test_pca_components_orthonormal_and_sorted():
    X = np.random.default_rng(0).random((10, 6))
    Z, comps, var = pca_components(X, 3)
    assert comps.shape == (6, 3) and Z.shape == (10, 3)
    np.testing.assert_allclose(comps.T @ comps, np.eye(3), atol=1e-9)
    assert np.all(np.diff(var) <= 1e-12)
    np.testing.assert_allclose(Z.mean(axis=0), 0.0, atol=1e-9)
    pivots = np.argmax(np.abs(comps), axis=0)
    assert np.all(comps[pivots, range(3)] > 0)


def test_pca_caps_dimension():
    X = np.random.default_rng(1).random((3, 8))
    assert pca_reduce(X, 5).shape == (3, 3)


def test_kmeans_separated_groups():
    rng = np.random.default_rng(0)
    X = np.concatenate([rng.random((10, 2)), rng.random((12, 2)) + 100])
    cl = kmeans(X, 2, np.random.default_rng(5))
    assert len(set(cl.labels[:10])) == 1 and len(set(cl.labels[10:])) == 1
    assert cl.labels[0] != cl.labels[10]


def test_kmeans_n_equals_k():
    X = np.random.default_rng(2).random((4, 3))
    cl = kmeans(X, 4, np.random.default_rng(0))
    assert sorted(cl.labels) == [0, 1, 2, 3]


def test_kmeans_infeasible():
    with pytest.raises(InfeasibleKError):
        kmeans(np.zeros((2, 2)), 3, np.random.default_rng(0))


def test_kmeans_repairs_empty_clusters():
    # duplicate points make k-means++ pick coincident centers
    X = np.zeros((6, 2))
    X[5] = 1.0
    cl = kmeans(X, 3, np.random.default_rng(0))
    assert np.all(np.bincount(cl.labels, minlength=3) > 0)


def test_lloyd_inertia_non_increasing():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        X = rng.normal(size=(40, 3))
        history = []
        lloyd(X, _kmeanspp(X, 4, rng), 300, 0.0, history)
        assert all(b <= a + 1e-9 for a, b in zip(history, history[1:]))


def test_rpc_structure_and_determinism(toy_db):
    cfg = ProjectionConfig(num_patterns=256)
    a = random_projection_clustering(toy_db, 3, cfg, np.random.default_rng(9))
    b = random_projection_clustering(toy_db, 3, cfg, np.random.default_rng(9))
    assert len(a) == 6 and a.k == 3
    assert sorted(set(a.labels)) == [0, 1, 2]
    np.testing.assert_array_equal(a.labels, b.labels)
    one = random_projection_clustering(toy_db, 1, cfg, np.random.default_rng(0))
    assert set(one.labels) == {0}
    with pytest.raises(InfeasibleKError):
        random_projection_clustering(toy_db, 7, cfg, np.random.default_rng(0))


def test_config_validation():
    with pytest.raises(ValueError):
        ProjectionConfig(num_patterns=0)
    with pytest.raises(ValueError):
        ProjectionConfig(max_random_len=0)
