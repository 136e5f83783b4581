"""Zip-encoded word tuples.

A word tuple (u_1, ..., u_k) is encoded as a single word over k-tuples of
symbols: position j of the encoding carries the j-th symbol of every track,
with the reserved pad token filling tracks that have already ended.  All
operations below work on that encoding.

Words are tuples of symbol tokens (strings).  The pad token is the reserved
string "#"; it is never a member of any declared alphabet.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import IllegalZipWord, IndexOutOfRange, InvalidArity

PAD = "#"

Word = tuple[str, ...]
Letter = tuple[str, ...]

_TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def check_symbol(token: str) -> str:
    """Validate a plain alphabet symbol (pad and the bare wildcard token are
    reserved)."""
    if token == PAD:
        raise InvalidArity(f"{PAD!r} is reserved for padding and cannot be a symbol")
    if token == "_" or not _TOKEN_RE.match(token):
        raise InvalidArity(f"bad symbol token {token!r}")
    return token


def parse_word(text: str, multichar: bool = False) -> Word:
    """Parse a word: juxtaposed single characters, or '.'-separated tokens.

    The pad token is rejected: plain words never contain padding.
    """
    text = text.strip()
    if not text:
        return ()
    tokens = text.split(".") if multichar else list(text)
    return tuple(check_symbol(t) for t in tokens)


def word_text(word: Word, multichar: bool = False) -> str:
    sep = "." if multichar else ""
    return sep.join(word)


@dataclass(frozen=True)
class ZipWord:
    """Immutable word over k-tuples of symbols (k = arity, possibly 0)."""

    arity: int
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise InvalidArity("arity must be >= 0")
        for letter in self.letters:
            if len(letter) != self.arity:
                raise InvalidArity(
                    f"letter {letter!r} has arity {len(letter)}, expected {self.arity}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def concat(self, other: "ZipWord") -> "ZipWord":
        """Plain letter-sequence concatenation (same arity)."""
        if self.arity != other.arity:
            raise InvalidArity("cannot concatenate zip words of different arity")
        return ZipWord(self.arity, self.letters + other.letters)

    def track(self, i: int) -> Word:
        """Track i (1-based), pad letters dropped."""
        if not 1 <= i <= self.arity:
            raise IndexOutOfRange(f"track {i} outside [1..{self.arity}]")
        return tuple(l[i - 1] for l in self.letters if l[i - 1] != PAD)


@dataclass(frozen=True)
class IndexSequence:
    """Length-k sequence of 1-based track indices in [1..k]."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.indices)
        for i in self.indices:
            if not 1 <= i <= k:
                raise IndexOutOfRange(f"index {i} outside [1..{k}]")

    @property
    def is_permutation(self) -> bool:
        return len(set(self.indices)) == len(self.indices)

    def compose(self, other: "IndexSequence") -> "IndexSequence":
        """self after other: result(i) = self(other(i))."""
        return IndexSequence(tuple(self.indices[j - 1] for j in other.indices))


def zip_words(words: Sequence[Word]) -> ZipWord:
    """Encode a word tuple; shorter tracks are padded on the right."""
    n = max((len(w) for w in words), default=0)
    letters = tuple(
        tuple(w[j] if j < len(w) else PAD for w in words) for j in range(n)
    )
    return ZipWord(len(words), letters)


def is_legal(w: ZipWord) -> bool:
    """True iff every track is a run of symbols followed by a run of pads."""
    dead = [False] * w.arity
    for letter in w.letters:
        for i, sym in enumerate(letter):
            if sym == PAD:
                dead[i] = True
            elif dead[i]:
                return False
    return True


def unzip(w: ZipWord) -> tuple[Word, ...]:
    """Recover the word tuple of a legal encoding."""
    if not is_legal(w):
        raise IllegalZipWord(f"cannot unzip {w.letters!r}")
    return tuple(w.track(i) for i in range(1, w.arity + 1))


def is_exact_zip(w: ZipWord) -> bool:
    """True iff w == zip_words(unzip(w)): legal and no all-pad letter."""
    if w.arity == 0:
        return len(w) == 0
    return is_legal(w) and all(any(s != PAD for s in l) for l in w.letters)


def strip_pads(w: ZipWord) -> ZipWord:
    """Drop trailing all-pad letters."""
    letters = list(w.letters)
    while letters and all(s == PAD for s in letters[-1]):
        letters.pop()
    return ZipWord(w.arity, tuple(letters))


def apply_sequence(w: ZipWord, seq: IndexSequence) -> ZipWord:
    """Select tracks letterwise: result letter j, track i = w letter j, track seq(i).

    The result has the same length as w; for legal w its tracks are the
    selected tracks of w up to re-padding.
    """
    if len(seq.indices) != w.arity:
        raise IndexOutOfRange(
            f"sequence of length {len(seq.indices)} applied to arity {w.arity}"
        )
    letters = tuple(tuple(l[i - 1] for i in seq.indices) for l in w.letters)
    return ZipWord(w.arity, letters)


def concat_tracks(w1: ZipWord, w2: ZipWord) -> ZipWord:
    """Tuple concatenation: re-encode (tracks of w1, tracks of w2).

    Both operands must be legal; the result has arity k1 + k2 and is padded
    to the length of the longest track overall.
    """
    return zip_words(unzip(w1) + unzip(w2))


def lift(w: ZipWord, new_arity: int) -> ZipWord:
    """Widen each letter by duplicating its last component."""
    if new_arity < w.arity:
        raise InvalidArity(f"cannot lift arity {w.arity} down to {new_arity}")
    if w.arity == 0 and len(w) > 0:
        raise InvalidArity("cannot lift a nonempty arity-0 word")
    extra = new_arity - w.arity
    letters = tuple(l + (l[-1],) * extra for l in w.letters)
    return ZipWord(new_arity, letters)


def letter_concat(l1: Letter, l2: Letter) -> Letter:
    return l1 + l2


def all_letters(sigma: Iterable[str], arity: int, with_pad: bool = True) -> list[Letter]:
    """Every arity-tuple over sigma (plus the pad token), in canonical order."""
    import itertools

    symbols = sorted(set(sigma) | ({PAD} if with_pad else set()))
    return [tuple(t) for t in itertools.product(symbols, repeat=arity)]
