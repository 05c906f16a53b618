"""Interpretable sequence clustering tree: construction, routing, export."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterator

import numpy as np

from .patterns import MiningConfig, ScoredPattern, candidate_pool, top1_discriminative
from .projection import (Clustering, InfeasibleKError, ProjectionConfig,
                         default_max_len, random_projection_clustering)
from .seqcore import Alphabet, Pattern, SequenceDatabase, contains


@dataclass(frozen=True)
class TreeConfig:
    k: int
    boost: bool = True
    min_split: int = 5
    mining: MiningConfig = field(default_factory=MiningConfig)
    projection: ProjectionConfig = field(default_factory=ProjectionConfig)
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.min_split < 1:
            raise ValueError("min_split must be >= 1")


@dataclass
class IsctNode:
    kind: str                              # "internal" | "leaf"
    size: int
    pattern: Pattern | None = None
    left: "IsctNode | None" = None         # sequences without the pattern
    right: "IsctNode | None" = None        # sequences with the pattern
    cluster_id: int | None = None
    member_indices: list[int] = field(default_factory=list)
    score: ScoredPattern | None = None

    @property
    def is_leaf(self):
        return self.kind == "leaf"


@dataclass
class IsctTree:
    root: IsctNode
    k_requested: int
    alphabet: Alphabet
    patterns_used: list[Pattern] = field(default_factory=list)

    @property
    def leaf_count(self) -> int:
        return sum(1 for _ in self.leaves())

    def leaves(self) -> Iterator[IsctNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                yield node
            else:
                stack.extend((node.right, node.left))

    def assign(self, s) -> int:
        node = self.root
        while not node.is_leaf:
            node = node.right if contains(s, node.pattern) else node.left
        return node.cluster_id

    def assign_tokens(self, tokens) -> int:
        return self.assign(self.alphabet.encode(tokens))

    def predict(self, db) -> np.ndarray:
        return np.array([self.assign(s) for s in db], dtype=np.int64)


def _leaf(members, cluster_id):
    return IsctNode("leaf", len(members), cluster_id=cluster_id, member_indices=list(members))


def build_isct(db: SequenceDatabase, config: TreeConfig,
               rng: np.random.Generator | None = None,
               initial_labels=None) -> IsctTree:
    """Grow the tree as a chain: each split sends the sequences containing
    the selected pattern to a new leaf and keeps refining the rest.

    ``initial_labels`` pins the initial clustering instead of computing it
    by random projection (useful when the partition is known).
    """
    n = len(db)
    if n == 0:
        raise ValueError("cannot build a tree on an empty database")
    if config.k > n:
        raise InfeasibleKError(f"k={config.k} exceeds the number of sequences ({n})")
    rng = rng if rng is not None else np.random.default_rng(config.seed)

    mining = config.mining
    if mining.max_pattern_len is None:
        maxs = config.projection.max_random_len or default_max_len(db)
        mining = replace(mining, max_pattern_len=max(maxs, mining.min_pattern_len))

    if initial_labels is not None:
        labels = np.asarray(getattr(initial_labels, "labels", initial_labels), dtype=np.int64)
        if len(labels) != n:
            raise ValueError("initial_labels must align with the database")
    else:
        labels = random_projection_clustering(db, config.k, config.projection, rng).labels

    patterns_used: list[Pattern] = []
    next_id = 0
    members = np.arange(n)
    k_left = config.k
    isolated: set[int] = set()
    root = None
    parent = None

    while True:
        node_db = db.subset(members)
        split = None
        if not (k_left < 2 or len(members) <= min(k_left, config.min_split)):
            if config.boost:
                kc = min(k_left, len(members))
                work = random_projection_clustering(node_db, kc, config.projection, rng).labels
                keep = np.arange(len(members))
            else:
                work = labels[members]
                keep = np.flatnonzero(~np.isin(work, list(isolated)))
                work = work[keep]
            if len(np.unique(work)) >= 2:
                work_db = node_db.subset(keep)
                pool = candidate_pool(work_db, work, mining)
                split = top1_discriminative(pool, work_db, work)

        if split is None:
            node = _leaf(members.tolist(), next_id)
            next_id += 1
        else:
            hit = np.array([contains(db[i], split.pattern) for i in members], dtype=bool)
            right = _leaf(members[hit].tolist(), next_id)
            next_id += 1
            node = IsctNode("internal", len(members), pattern=split.pattern, right=right,
                            member_indices=members.tolist(), score=split)
            patterns_used.append(split.pattern)
            if not config.boost:
                isolated.add(split.positive_cluster)

        if parent is None:
            root = node
        else:
            parent.left = node
        if node.is_leaf:
            break
        parent = node
        members = members[~hit]
        k_left -= 1

    return IsctTree(root, config.k, db.alphabet, patterns_used)


def fit_predict(db: SequenceDatabase, config: TreeConfig,
                rng: np.random.Generator | None = None,
                initial_labels=None) -> tuple[IsctTree, Clustering]:
    tree = build_isct(db, config, rng, initial_labels)
    labels = np.empty(len(db), dtype=np.int64)
    for leaf in tree.leaves():
        labels[leaf.member_indices] = leaf.cluster_id
    return tree, Clustering(labels, tree.leaf_count)


# ---------------------------------------------------------------- export

def _node_to_dict(node: IsctNode, alphabet: Alphabet) -> dict:
    return {
        "kind": node.kind,
        "pattern": None if node.pattern is None else alphabet.decode(node.pattern),
        "size": node.size,
        "cluster_id": node.cluster_id,
        "left": None if node.left is None else _node_to_dict(node.left, alphabet),
        "right": None if node.right is None else _node_to_dict(node.right, alphabet),
    }


def tree_to_json(tree: IsctTree) -> str:
    doc = {"k_requested": tree.k_requested, "root": _node_to_dict(tree.root, tree.alphabet)}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


class TreeFormatError(ValueError):
    pass


def tree_from_json(text: str) -> IsctTree:
    try:
        doc = json.loads(text)
        root_doc = doc["root"]
        k_requested = int(doc["k_requested"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise TreeFormatError(f"malformed tree JSON: {e}") from None

    symbols: dict[str, int] = {}

    def build(d):
        if not isinstance(d, dict) or d.get("kind") not in ("leaf", "internal"):
            raise TreeFormatError("every node needs kind 'leaf' or 'internal'")
        if d["kind"] == "leaf":
            return IsctNode("leaf", int(d.get("size", 0)), cluster_id=int(d["cluster_id"]))
        pattern = d.get("pattern")
        if not pattern or d.get("left") is None or d.get("right") is None:
            raise TreeFormatError("internal nodes need a pattern and two children")
        ids = tuple(symbols.setdefault(str(tok), len(symbols)) for tok in pattern)
        return IsctNode("internal", int(d.get("size", 0)), pattern=ids,
                        left=build(d["left"]), right=build(d["right"]))

    root = build(root_doc)
    used = []
    node = root
    stack = [root]
    while stack:
        node = stack.pop()
        if not node.is_leaf:
            used.append(node.pattern)
            stack.extend((node.right, node.left))
    return IsctTree(root, k_requested, Alphabet(tuple(symbols)), used)


def _fmt_pattern(pattern, alphabet):
    return "⟨" + " ".join(alphabet.decode(pattern)) + "⟩"


def tree_to_dot(tree: IsctTree) -> str:
    lines = ["digraph isct {", "  node [fontname=\"Helvetica\"];"]
    counter = iter(range(1 << 30))

    def esc(text):
        return text.replace("\\", "\\\\").replace("\"", "\\\"")

    def walk(node):
        name = f"n{next(counter)}"
        if node.is_leaf:
            label = f"cluster {node.cluster_id}\\nn={node.size}"
            lines.append(f"  {name} [shape=box, label=\"{label}\"];")
            return name
        label = esc(f"contains {_fmt_pattern(node.pattern, tree.alphabet)}?")
        lines.append(f"  {name} [shape=ellipse, label=\"{label}\"];")
        yes = walk(node.right)
        no = walk(node.left)
        lines.append(f"  {name} -> {yes} [label=\"yes\"];")
        lines.append(f"  {name} -> {no} [label=\"no\"];")
        return name

    walk(tree.root)
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_text(tree: IsctTree) -> str:
    out = []

    def leaf_text(node):
        return f"cluster {node.cluster_id} (n={node.size})"

    def walk(node, depth):
        pad = "  " * depth
        out.append(f"{pad}contains {_fmt_pattern(node.pattern, tree.alphabet)}?")
        for answer, child in (("yes", node.right), ("no", node.left)):
            if child.is_leaf:
                out.append(f"{pad}  {answer}: {leaf_text(child)}")
            else:
                out.append(f"{pad}  {answer}:")
                walk(child, depth + 2)

    if tree.root.is_leaf:
        return leaf_text(tree.root) + "\n"
    walk(tree.root, 0)
    return "\n".join(out) + "\n"


def export_tree(tree: IsctTree, fmt: str = "json") -> str:
    if fmt == "json":
        return tree_to_json(tree)
    if fmt == "dot":
        return tree_to_dot(tree)
    if fmt == "text":
        return tree_to_text(tree)
    raise ValueError(f"unknown export format {fmt!r}")
