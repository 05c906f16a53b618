"""
Frequent patterns and split scores
==================================

Per-cluster top-N mining followed by relative-risk scoring of the pooled
candidates.
"""
from isct import MiningConfig, SequenceDatabase, candidate_pool, mine_frequent, top1_discriminative
from isct.patterns import score_candidates

rows = ["abddc", "adbbded", "acdeeaa", "acaeadcd", "abbcaac", "acbbccaa"]
groups = [0, 0, 1, 1, 2, 2]
db = SequenceDatabase.from_tokens([list(r) for r in rows])
show = lambda p: "<" + " ".join(db.alphabet.decode(p)) + ">"

# the ten most frequent patterns of the first group
for p, count in mine_frequent(db.subset([0, 1]), 10, 5):
    print(f"{show(p):14} {count}/2")

pool = candidate_pool(db, groups, MiningConfig(max_pattern_len=5))
print(len(pool), "pooled candidates")

ranked = sorted(score_candidates(pool, db, groups), key=lambda sp: sp.rank_key())
for sp in ranked[:8]:
    print(f"{show(sp.pattern):14} rr={sp.rr:<6.3g} supp+={sp.supp_pos:.2f} "
          f"sim={float(sp.sim_exact):.3f} group={sp.positive_cluster}")

best = top1_discriminative(pool, db, groups)
print("selected split:", show(best.pattern))
