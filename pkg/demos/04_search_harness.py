"""
Randomized search
=================

The library form of the ``freefold search`` command.  Every trial has its
own seed, so the records do not depend on the number of worker processes.
"""

from freefold.search import TrialConfig, run_search

for mode in ("shnc_random", "paper_theorem", "screen_consistency"):
    cfg = TrialConfig(seed=42, trials=300, mode=mode)
    records, summary = run_search(cfg)
    print(mode, "violations:", summary["violations"])
    print("  margins:", summary["margin_histogram"])
    print("  signatures:", summary["signature_histogram"])

not_excluded = [r for r in records if r["screen"]]
print(len(not_excluded), "pairs pass the majority screen; e.g.", not_excluded[:1])
