"""Interpretable sequence clustering trees.

Cluster categorical sequences by random-subsequence projection, then explain
the clusters with a chain of pattern-containment tests (k leaves, k-1
patterns).
"""
from .seqcore import (Alphabet, EmptyDatabaseError, Pattern, SequenceDatabase,
                      contains, contains_matrix, lcs_length, lcs_matrix, occurrences, support)
from .projection import (Clustering, InfeasibleKError, ProjectionConfig, default_max_len,
                         generate_random_patterns, kmeans, lcs_transform, pca_reduce,
                         random_projection_clustering)
from .patterns import (MiningConfig, ScoredPattern, ScoringError, candidate_pool,
                       mine_frequent, mine_top_frequent, score_pattern, top1_discriminative)
from .tree import (IsctNode, IsctTree, TreeConfig, TreeFormatError, build_isct, export_tree,
                   fit_predict, tree_from_json)
from .metrics import contingency, evaluate, nmi, pairwise_f1, purity

__version__ = "0.1.0"
