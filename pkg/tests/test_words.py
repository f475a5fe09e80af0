import pytest
from hypothesis import given
from hypothesis import strategies as st

from freefold.words import (
    Alphabet,
    AlphabetError,
    Endomorphism,
    Letter,
    Word,
    WordSyntaxError,
    apply_endomorphism,
    concat_reduce,
    free_reduce,
    invert,
    is_positive,
    parse_word,
    parse_words,
    words_of_length,
)
from freefold.positivize import phi_standard
from strategies import letter_seqs, positive_words2, words2

F2 = Alphabet(2)
a, A, b, B = Letter(0), Letter(0, True), Letter(1), Letter(1, True)


def W(text):
    return parse_word(text, F2)


def test_parse_examples():
    assert W("aA") == Word()
    assert W("a^2") == Word((a, a))
    assert W("abAB") == Word((a, b, A, B))
    assert W(" a b\tA ") == Word((a, b, A))
    assert W("a^-3") == Word((A, A, A))
    assert W("A^2b^+1") == Word((A, A, b))
    assert W("") == Word()


@pytest.mark.parametrize("text, exc", [
    ("c", AlphabetError),
    ("^2", WordSyntaxError),
    ("a^", WordSyntaxError),
    ("a^0", WordSyntaxError),
    ("a^2^3", WordSyntaxError),
    ("a*b", WordSyntaxError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        W(text)


def test_parse_rank_limit():
    with pytest.raises(AlphabetError):
        parse_word("a", Alphabet(27))
    assert parse_word("z", Alphabet(26)) == Word((Letter(25),))


def test_parse_words():
    assert parse_words("aa, ab", F2) == [W("aa"), W("ab")]
    assert parse_words("  ", F2) == []


def test_free_reduce_examples():
    assert free_reduce([a, A, b]) == Word((b,))
    assert free_reduce([a, b, B, A]) == Word()
    assert free_reduce([a, b, a]) == Word((a, b, a))


def test_word_rejects_unreduced():
    with pytest.raises(ValueError):
        Word((a, A))


def test_invert_examples():
    assert invert(W("ab")) == W("BA")
    assert invert(Word()) == Word()
    assert invert(W("aa")) == W("AA")


def test_concat_examples():
    assert concat_reduce(W("ab"), W("Ba")) == W("aa")
    assert concat_reduce(W("abA"), Word()) == W("abA")
    assert concat_reduce(W("a"), W("A")) == Word()
    assert W("ab") * W("BA") == Word()


def test_is_positive_examples():
    assert is_positive(W("aba"))
    assert not is_positive(W("aB"))
    assert not is_positive(Word())


def test_apply_endomorphism_examples():
    phi = phi_standard()
    assert apply_endomorphism(phi, W("ab")) == W("aaab")
    assert apply_endomorphism(phi, W("A")) == W("AA")
    ident = Endomorphism.identity(F2)
    assert apply_endomorphism(ident, W("abAB")) == W("abAB")
    with pytest.raises(AlphabetError):
        apply_endomorphism(phi, parse_word("c", Alphabet(3)))


def test_endomorphism_validation():
    with pytest.raises(ValueError):
        Endomorphism((W("a"), Word()), F2, F2)
    with pytest.raises(ValueError):
        Endomorphism((W("a"),), F2, F2)


def test_letter_order_matches_slots():
    assert sorted([B, b, A, a]) == [a, A, b, B]
    assert [ell.slot for ell in F2.letters()] == [0, 1, 2, 3]


def test_words_of_length_counts():
    assert [len(words_of_length(F2, n)) for n in range(4)] == [1, 4, 12, 36]
    assert len(words_of_length(F2, 3, positive=True)) == 8


@given(letter_seqs)
def test_free_reduce_idempotent(seq):
    w = free_reduce(seq)
    assert free_reduce(w.letters) == w
    for x, y in zip(w.letters, w.letters[1:]):
        assert y != x.inverse()


@given(letter_seqs)
def test_free_reduce_matches_naive_rescan(seq):
    # cancel the leftmost adjacent inverse pair until none remain
    s = list(seq)
    i = 0
    while i < len(s) - 1:
        if s[i + 1] == s[i].inverse():
            del s[i : i + 2]
            i = max(i - 1, 0)
        else:
            i += 1
    assert free_reduce(seq).letters == tuple(s)


@given(words2, words2, words2)
def test_concat_associative(u, v, w):
    assert concat_reduce(concat_reduce(u, v), w) == concat_reduce(u, concat_reduce(v, w))
    assert concat_reduce(u, v) == free_reduce(u.letters + v.letters)


@given(words2)
def test_invert_is_inverse(w):
    assert concat_reduce(w, invert(w)) == Word()
    assert invert(invert(w)) == w


@given(positive_words2, positive_words2)
def test_positive_products(u, v):
    uv = concat_reduce(u, v)
    assert is_positive(uv)
    assert len(uv) == len(u) + len(v)


@given(positive_words2)
def test_phi_doubles_positive_length(w):
    img = apply_endomorphism(phi_standard(), w)
    assert is_positive(img)
    assert len(img) == 2 * len(w)


def test_phi_kernel_trivial_up_to_length_8():
    phi = phi_standard()
    empties = [w for n in range(9) for w in words_of_length(F2, n) if not apply_endomorphism(phi, w)]
    assert empties == [Word()]


@given(words2)
def test_render_parse_roundtrip(w):
    assert W(str(w)) == w
    assert str(w).isalpha() or not w


@given(st.integers(1, 40))
def test_letter_inverse_involution(g):
    ell = Letter(g % 26, g % 2 == 0)
    assert ell.inverse().inverse() == ell
