"""
Positive generation forces a balanced census
============================================

For positive generators, apply a -> a^2, b -> ab.  The core graph of the
image has only (2,1) and (1,2) valence-3 vertices, and equally many of
each.  So neither type can hold the strict majority that a counterexample
would need.
"""

import random

from freefold import Alphabet, check_paper_theorem, parse_words, positivize_pipeline
from freefold.search import TrialConfig, random_subgroup

F2 = Alphabet(2)

rep = check_paper_theorem(random_subgroup(1, TrialConfig(positive_only=True)))
print("generators:", [str(w) for w in rep.generators])
print("image:", [str(w) for w in rep.image_generators])
print("census:", rep.census.by_signature, "balanced:", rep.balanced, "dominance:", rep.dominance)

# The same check over a batch of random positive lists.
cfg = TrialConfig(positive_only=True, k_max=4, max_length=8)
rng = random.Random(0)
reports = [check_paper_theorem(random_subgroup(rng, cfg)) for _ in range(500)]
print("confirmed:", sum(r.confirmed for r in reports), "of", len(reports))

# A rank-3 subgroup goes through the positive embedding x_i -> a^i b^i first.
images = positivize_pipeline(parse_words("a, bc", Alphabet(3)), rank=3)
print([str(w) for w in images])
