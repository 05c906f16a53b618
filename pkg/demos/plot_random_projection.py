"""
Random subsequence projection
=============================

Sequences become vectors of normalized LCS similarity against random
patterns; PCA and k-means then give the initial clustering.
"""
import numpy as np

from isct import (ProjectionConfig, default_max_len, generate_random_patterns, kmeans,
                  lcs_transform, pca_reduce, purity, nmi)
from isct.synth import planted_database

db, truth, signatures = planted_database(k=4, per_cluster=12, alphabet_size=18,
                                         noise_len=10, seed=0)
print(len(db), "sequences; planted signatures:", signatures)

rng = np.random.default_rng(0)
max_len = default_max_len(db)
patterns = generate_random_patterns(db.alphabet, 2048, max_len, rng)
print("pattern lengths used:", sorted({len(p) for p in patterns}))

##############################################################################
# Feature matrix: entry (i, j) is lcs(s_i, p_j) / |p_j|, a value in [0, 1]
X = lcs_transform(db, patterns)
print("features:", X.shape, "range", X.min(), X.max())

##############################################################################
# Reduce to k dimensions and cluster
Z = pca_reduce(X, 4)
clustering = kmeans(Z, 4, rng, ProjectionConfig())
print("purity %.3f  nmi %.3f" % (purity(clustering, truth), nmi(clustering, truth)))
