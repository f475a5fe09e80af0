"""Letters, freely reduced words and endomorphisms of free groups.

Text syntax: a lowercase letter is a generator, the same letter in
uppercase is its inverse, and ``^k`` raises the preceding letter to a
nonzero integer power.  Whitespace is ignored::

    >>> w = parse_word("a^2 b A^-1", Alphabet(2))
    >>> str(w)
    'aaba'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Alphabet",
    "Letter",
    "Word",
    "Endomorphism",
    "WordSyntaxError",
    "AlphabetError",
    "parse_word",
    "parse_words",
    "free_reduce",
    "invert",
    "concat_reduce",
    "is_positive",
    "apply_endomorphism",
]

TEXT_RANK_LIMIT = 26


class WordSyntaxError(ValueError):
    """Raised when word text does not match the grammar."""


class AlphabetError(ValueError):
    """Raised when a letter falls outside the alphabet in use."""


@dataclass(frozen=True)
class Alphabet:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"alphabet rank must be positive, got {self.rank}")

    def letters(self) -> list["Letter"]:
        """All ``2 * rank`` letters in slot order a < A < b < B < ..."""
        return [Letter(g, inv) for g in range(self.rank) for inv in (False, True)]

    def generators(self) -> list["Word"]:
        return [Word((Letter(g, False),)) for g in range(self.rank)]

    def __contains__(self, letter: "Letter") -> bool:
        return 0 <= letter.generator < self.rank


class Letter(NamedTuple):
    """A generator or its inverse.

    Tuple ordering gives the fixed letter order a < a⁻¹ < b < b⁻¹, which
    coincides with :attr:`slot`.
    """

    generator: int
    inverted: bool = False

    @property
    def slot(self) -> int:
        return 2 * self.generator + self.inverted

    def inverse(self) -> "Letter":
        return Letter(self.generator, not self.inverted)

    def __str__(self) -> str:
        if self.generator >= TEXT_RANK_LIMIT:
            raise AlphabetError(f"generator {self.generator} has no text rendering")
        ch = chr(ord("a") + self.generator)
        return ch.upper() if self.inverted else ch


class Word:
    """An immutable freely reduced word.

    The constructor rejects unreduced sequences; use :func:`free_reduce`
    to normalize arbitrary letter sequences.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        letters = tuple(Letter(*ell) for ell in letters)
        for x, y in zip(letters, letters[1:]):
            if x.generator == y.generator and x.inverted != y.inverted:
                raise ValueError(f"letter sequence is not freely reduced at {x}{y}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_hash", hash(letters))

    @classmethod
    def _trusted(cls, letters: tuple) -> "Word":
        w = cls.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "_hash", hash(letters))
        return w

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __lt__(self, other: "Word") -> bool:
        # shortlex
        return (len(self), self.letters) < (len(other), other.letters)

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return concat_reduce(self, other)

    def inverse(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return "".join(str(ell) for ell in self.letters)

    def __repr__(self) -> str:
        try:
            return f"Word({str(self)!r})"
        except AlphabetError:
            return f"Word({list(self.letters)!r})"

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((ell.generator for ell in self.letters), default=-1)


def free_reduce(letters: Iterable[Letter]) -> Word:
    stack: list[Letter] = []
    for ell in letters:
        ell = Letter(*ell)
        if stack and stack[-1].generator == ell.generator and stack[-1].inverted != ell.inverted:
            stack.pop()
        else:
            stack.append(ell)
    return Word._trusted(tuple(stack))


def invert(w: Word) -> Word:
    return Word._trusted(tuple(Letter(g, not inv) for g, inv in reversed(w.letters)))


def concat_reduce(u: Word, v: Word) -> Word:
    """Group product ``u * v``; only the junction can cancel."""
    left, right = u.letters, v.letters
    i = 0
    n = min(len(left), len(right))
    while i < n:
        x, y = left[-1 - i], right[i]
        if x.generator != y.generator or x.inverted == y.inverted:
            break
        i += 1
    return Word._trusted(left[: len(left) - i] + right[i:])


def is_positive(w: Word) -> bool:
    """True iff ``w`` is a nonempty word with no inverted letters.

    The identity is not positive: it does not lie in the semigroup
    spanned by the basis.
    """
    return bool(w.letters) and not any(ell.inverted for ell in w.letters)


_TOKEN = re.compile(r"([A-Za-z])|\^([+-]?\d+)|(\s+)|(.)", re.S)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    if alphabet.rank > TEXT_RANK_LIMIT:
        raise AlphabetError(f"text syntax supports rank <= {TEXT_RANK_LIMIT}, got {alphabet.rank}")
    letters: list[Letter] = []
    last_was_letter = False
    for m in _TOKEN.finditer(text):
        ch, exp, space, bad = m.groups()
        if ch is not None:
            g = ord(ch.lower()) - ord("a")
            if g >= alphabet.rank:
                raise AlphabetError(f"letter {ch!r} outside rank-{alphabet.rank} alphabet in {text!r}")
            letters.append(Letter(g, ch.isupper()))
            last_was_letter = True
        elif exp is not None:
            if not last_was_letter:
                raise WordSyntaxError(f"exponent with no preceding letter in {text!r}")
            k = int(exp)
            if k == 0:
                raise WordSyntaxError(f"zero exponent in {text!r}")
            ell = letters.pop()
            if k < 0:
                ell, k = ell.inverse(), -k
            letters.extend([ell] * k)
            last_was_letter = False
        elif space is not None:
            continue
        else:
            if bad == "^":
                raise WordSyntaxError(f"malformed exponent in {text!r}")
            raise WordSyntaxError(f"unexpected character {bad!r} in {text!r}")
    return free_reduce(letters)


def parse_words(text: str, alphabet: Alphabet) -> list[Word]:
    """Parse a comma-separated generator list; a blank list is allowed."""
    if not text.strip():
        return []
    return [parse_word(part, alphabet) for part in text.split(",")]


@dataclass(frozen=True)
class Endomorphism:
    """Homomorphism between free groups given by generator images."""

    images: tuple[Word, ...]
    source: Alphabet
    target: Alphabet

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.rank:
            raise ValueError(
                f"need {self.source.rank} generator images, got {len(self.images)}"
            )
        for img in self.images:
            if not img:
                raise ValueError("generator images must be nonempty")
            if img.max_generator() >= self.target.rank:
                raise AlphabetError(f"image {img!r} outside target alphabet")

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Endomorphism":
        return cls(tuple(alphabet.generators()), alphabet, alphabet)

    def __call__(self, w: Word) -> Word:
        return apply_endomorphism(self, w)


def apply_endomorphism(phi: Endomorphism, w: Word) -> Word:
    inverse_images = [invert(img) for img in phi.images]
    out: list[Letter] = []
    for g, inv in w.letters:
        if g >= phi.source.rank:
            raise AlphabetError(f"{w!r} is not a word over the source alphabet")
        out.extend(inverse_images[g].letters if inv else phi.images[g].letters)
    return free_reduce(out)


def words_of_length(alphabet: Alphabet, n: int, positive: bool = False) -> Sequence[Word]:
    """All freely reduced (or positive) words of length exactly ``n``."""
    letters = alphabet.letters()
    if positive:
        letters = [ell for ell in letters if not ell.inverted]
    level: list[tuple] = [()]
    for _ in range(n):
        level = [
            t + (ell,)
            for t in level
            for ell in letters
            if not t or t[-1] != ell.inverse()
        ]
    return [Word._trusted(t) for t in level]
