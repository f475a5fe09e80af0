"""Seeded randomized search over subgroup instances.

Every trial draws from its own generator, seeded from
``(master seed, trial index)``.  Because of that, serial and parallel
runs produce the same records in the same order.
"""

from __future__ import annotations

import hashlib
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterator, Optional

from .positivize import check_paper_theorem, counterexample_screen, embed_rank_n
from .pullback import shnc_check, verify_witness, witness
from .stallings import census, core
from .words import Alphabet, Letter, Word, apply_endomorphism

__all__ = ["TrialConfig", "MODES", "trial_seed", "random_word", "random_subgroup", "run_trial", "iter_trials", "summarize", "run_search"]

MODES = ("shnc_random", "paper_theorem", "screen_consistency")


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 1000
    rank: int = 2
    k_min: int = 1
    k_max: int = 4
    max_length: int = 8
    positive_only: bool = False
    mode: str = "shnc_random"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError("need 1 <= k_min <= k_max")
        if self.max_length < 1:
            raise ValueError("max_length must be at least 1")
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if self.mode == "screen_consistency" and self.rank != 2:
            raise ValueError(f"mode {self.mode} needs rank 2")


def trial_seed(master: int, index: int) -> int:
    digest = hashlib.blake2b(f"{master}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def random_word(rng: random.Random, rank: int, length: int, positive: bool) -> Word:
    """Uniform among reduced (or positive) words of exactly ``length`` letters."""
    if positive:
        return Word._trusted(tuple(Letter(rng.randrange(rank)) for _ in range(length)))
    nslots = 2 * rank
    slots = [rng.randrange(nslots)]
    for _ in range(length - 1):
        # skip the slot that would cancel the previous letter
        s = rng.randrange(nslots - 1)
        if s >= (slots[-1] ^ 1):
            s += 1
        slots.append(s)
    return Word._trusted(tuple(Letter(s >> 1, bool(s & 1)) for s in slots))


def _count_words(rank: int, max_length: int, positive: bool) -> int:
    if positive:
        return sum(rank**n for n in range(1, max_length + 1))
    return sum(2 * rank * (2 * rank - 1) ** (n - 1) for n in range(1, max_length + 1))


def random_subgroup(
    seed, config: TrialConfig, positive: Optional[bool] = None
) -> list[Word]:
    """Distinct nonempty generators; ``seed`` may be an int or a ``random.Random``.

    The generator count is capped by the number of available words.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if positive is None:
        positive = config.positive_only
    k = rng.randint(config.k_min, config.k_max)
    k = min(k, _count_words(config.rank, config.max_length, positive))
    gens: list[Word] = []
    seen = set()
    while len(gens) < k:
        w = random_word(rng, config.rank, rng.randint(1, config.max_length), positive)
        if w not in seen:
            seen.add(w)
            gens.append(w)
    return gens


def _sigs(c) -> dict[str, int]:
    return {f"({i},{o})": n for (i, o), n in c.by_signature.items()}


def run_trial(config: TrialConfig, index: int) -> dict:
    """Run one trial; the record's ``ok`` is False on a checked-claim failure."""
    seed = trial_seed(config.seed, index)
    rng = random.Random(seed)
    rec: dict = {"type": "trial", "trial": index, "seed": seed}
    alphabet = Alphabet(config.rank)

    if config.mode == "paper_theorem":
        gens = random_subgroup(rng, config, positive=True)
        rec["generators"] = [str(w) for w in gens]
        if config.rank != 2:
            emb = embed_rank_n(config.rank).as_endomorphism()
            gens = [apply_endomorphism(emb, w) for w in gens]
        rep = check_paper_theorem(gens)
        rec.update(
            census=_sigs(rep.census),
            only_two_types=rep.only_two_types,
            balanced=rep.balanced,
            dominance=rep.dominance,
            sizes=[len(rep.census.slots)],
            ok=rep.confirmed,
        )
        return rec

    sides = []
    for _ in range(2):
        positive = config.positive_only or rng.random() < 0.5
        sides.append(random_subgroup(rng, config, positive=positive))
    gens_u, gens_v = sides
    rec["U"] = [str(w) for w in gens_u]
    rec["V"] = [str(w) for w in gens_v]
    verdict, report = shnc_check(gens_u, gens_v, alphabet)
    rec.update(verdict.to_dict())
    rec["sizes"] = [report.left.num_vertices, report.right.num_vertices]

    if config.mode == "shnc_random":
        witnesses_ok = True
        witnessed = 0
        for comp in report.components:
            if comp.chi0 >= 1:
                x, ws = witness(comp, report.left, report.right)
                witnesses_ok &= verify_witness(x, ws, report.left, report.right)
                witnessed += 1
        rec["witnesses_ok"] = witnesses_ok
        rec["witnessed"] = witnessed
        if config.rank == 2:
            rec["census"] = [
                _sigs(census(core(g, keep_base=False))) for g in (report.left, report.right)
            ]
        rec["ok"] = verdict.holds and witnesses_ok
    else:
        screen = counterexample_screen(gens_u, gens_v)
        rec["screen"] = screen
        rec["ok"] = screen or verdict.holds
    return rec


def _run_chunk(args) -> list[dict]:
    config, indices = args
    return [run_trial(config, i) for i in indices]


def iter_trials(config: TrialConfig, jobs: int = 1, chunk: int = 64) -> Iterator[dict]:
    """Trial records in index order, optionally computed by ``jobs`` processes."""
    if jobs <= 1:
        for i in range(config.trials):
            yield run_trial(config, i)
        return
    chunks = [
        (config, range(lo, min(lo + chunk, config.trials)))
        for lo in range(0, config.trials, chunk)
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for recs in pool.map(_run_chunk, chunks):
            yield from recs


def summarize(config: TrialConfig, records) -> dict:
    """Fold trial records into counters; insensitive to record order."""
    trials = violations = 0
    margins: Counter = Counter()
    signatures: Counter = Counter()
    sizes: list[int] = []
    for rec in records:
        trials += 1
        violations += not rec["ok"]
        if "margin" in rec:
            margins[rec["margin"]] += 1
        cens = rec.get("census")
        for c in [cens] if isinstance(cens, dict) else cens or []:
            signatures.update(c)
        sizes.extend(rec["sizes"])
    return {
        "type": "summary",
        "config": asdict(config),
        "trials": trials,
        "violations": violations,
        "margin_histogram": {str(m): margins[m] for m in sorted(margins)},
        "signature_histogram": dict(sorted(signatures.items())),
        "graph_vertices": {
            "min": min(sizes, default=0),
            "mean": round(sum(sizes) / len(sizes), 6) if sizes else 0.0,
            "max": max(sizes, default=0),
        },
    }


def run_search(config: TrialConfig, jobs: int = 1) -> tuple[list[dict], dict]:
    records = list(iter_trials(config, jobs))
    return records, summarize(config, records)
