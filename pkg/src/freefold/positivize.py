"""Reduction of positively generated subgroups to the image of a ↦ a², b ↦ ab.

For positive generators, the core graph of the image under this map
immerses in the two-vertex graph of ⟨a², ab⟩.  So its valence-3 vertices
have signature (2,1) or (1,2), in equal numbers.  No type then holds a
strict majority, which a counterexample to the strengthened inequality
would need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .stallings import VertexCensus, build_bouquet, census, core, fold
from .words import Alphabet, Endomorphism, Letter, Word, apply_endomorphism, is_positive

__all__ = [
    "EmbeddingSpec",
    "TheoremReport",
    "NotPositiveError",
    "phi_standard",
    "embed_rank_n",
    "positivize_pipeline",
    "check_paper_theorem",
    "dominance_flags",
    "dominance_predicate",
    "counterexample_screen",
]

F2 = Alphabet(2)
A, B = Letter(0), Letter(1)


class NotPositiveError(ValueError):
    pass


def phi_standard() -> Endomorphism:
    """The endomorphism a ↦ a·a, b ↦ a·b of F(a, b)."""
    return Endomorphism((Word((A, A)), Word((A, B))), F2, F2)


@dataclass(frozen=True)
class EmbeddingSpec:
    """Positive embedding of F_n into F(a, b) sending the i-th generator to aⁱbⁱ.

    (aⁱb would not do: a²b·(ab)⁻¹ = a, so three or more such images
    generate F(a, b) and are not free.)
    """

    source_rank: int
    images: tuple[Word, ...]

    def as_endomorphism(self) -> Endomorphism:
        return Endomorphism(self.images, Alphabet(self.source_rank), F2)


def embed_rank_n(n: int) -> EmbeddingSpec:
    if n < 1:
        raise ValueError(f"source rank must be at least 1, got {n}")
    return EmbeddingSpec(n, tuple(Word((A,) * i + (B,) * i) for i in range(1, n + 1)))


def _check_generators(gens: Sequence[Word], require_positive: bool) -> None:
    for w in gens:
        if not w:
            raise ValueError("generators must be nonempty words")
        if require_positive and not is_positive(w):
            raise NotPositiveError(f"generator {w} is not a positive word")


def positivize_pipeline(
    gens: Sequence[Word],
    rank: int = 2,
    require_positive: bool = True,
    skip_embedding: Optional[bool] = None,
) -> list[Word]:
    """Map generators over F_rank into F(a, b), then apply a ↦ a², b ↦ ab.

    The embedding step is skipped by default when ``rank == 2``.
    """
    _check_generators(gens, require_positive)
    if skip_embedding is None:
        skip_embedding = rank == 2
    if skip_embedding:
        if rank != 2:
            raise ValueError("only rank-2 inputs may skip the embedding")
        images = list(gens)
        for w in images:
            if w.max_generator() >= 2:
                raise ValueError(f"generator {w} outside rank-2 alphabet")
    else:
        emb = embed_rank_n(rank).as_endomorphism()
        images = [apply_endomorphism(emb, w) for w in gens]
    phi = phi_standard()
    return [apply_endomorphism(phi, w) for w in images]


def dominance_flags(c: VertexCensus) -> tuple[bool, bool]:
    """Strict-majority flags for the (missing-slot, signature) classifications."""
    four = any(2 * k > c.total for k in c.by_missing.values())
    two = any(2 * k > c.total for k in c.by_signature.values())
    return four, two


def dominance_predicate(c: VertexCensus) -> bool:
    """Does one vertex type hold a strict majority of the valence-3 vertices?

    Checked for both classifications; True if either has a majority.
    Zero valence-3 vertices gives False.
    """
    four, two = dominance_flags(c)
    return four or two


@dataclass(frozen=True)
class TheoremReport:
    generators: tuple[Word, ...]
    positive: tuple[bool, ...]
    image_generators: tuple[Word, ...]
    census: VertexCensus
    base_pruned: bool
    dominance_four_way: bool
    dominance_two_way: bool

    @property
    def balanced(self) -> bool:
        return self.census.by_signature[(2, 1)] == self.census.by_signature[(1, 2)]

    @property
    def only_two_types(self) -> bool:
        return sum(self.census.by_signature.values()) == self.census.total

    @property
    def dominance(self) -> bool:
        return self.dominance_four_way or self.dominance_two_way

    @property
    def confirmed(self) -> bool:
        """Whether the outcome matches the theorem's prediction."""
        return self.only_two_types and self.balanced and not self.dominance

    def to_dict(self) -> dict:
        return {
            "generators": [str(w) for w in self.generators],
            "positive": list(self.positive),
            "image_generators": [str(w) for w in self.image_generators],
            "census": self.census.to_dict(),
            "base_pruned": self.base_pruned,
            "only_two_types": self.only_two_types,
            "balanced": self.balanced,
            "dominance": self.dominance,
            "dominance_four_way": self.dominance_four_way,
            "dominance_two_way": self.dominance_two_way,
            "confirmed": self.confirmed,
        }


def check_paper_theorem(gens: Sequence[Word]) -> TheoremReport:
    """Census the image of positive rank-2 generators under a ↦ a², b ↦ ab."""
    _check_generators(gens, require_positive=True)
    images = positivize_pipeline(gens, rank=2, skip_embedding=True)
    folded = core(fold(build_bouquet(images, F2)), keep_base=True)
    cored = core(folded, keep_base=False)
    c = census(cored)
    four, two = dominance_flags(c)
    return TheoremReport(
        generators=tuple(gens),
        positive=tuple(is_positive(w) for w in gens),
        image_generators=tuple(images),
        census=c,
        base_pruned=cored.num_vertices < folded.num_vertices,
        dominance_four_way=four,
        dominance_two_way=two,
    )


def counterexample_screen(
    gens_u: Sequence[Word], gens_v: Sequence[Word]
) -> bool:
    """True when both core graphs have a dominant valence-3 type.

    False means the pair cannot be a counterexample by the majority
    criterion.
    """
    verdicts = []
    for gens in (gens_u, gens_v):
        g = core(fold(build_bouquet(gens, F2)), keep_base=False)
        verdicts.append(dominance_predicate(census(g)))
    return all(verdicts)
