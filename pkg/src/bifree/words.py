"""Letters of two-faced operator pairs and the words they form.

A letter records which pair it belongs to, which leg of the pair it is (the
left leg ``X`` or the right leg ``Y``) and whether it is starred.  The side
of a letter is a function of its leg: left legs sit on the left face, right
legs on the right face.  A word is a tuple of letters; its side map is read
off the letters, so inconsistent word/side inputs cannot be formed.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .chi import LEFT, RIGHT, ChiMap

__all__ = ["Letter", "Word", "chi_of", "star_word", "subword", "exponent_sum"]

X_LEG = "X"
Y_LEG = "Y"


class Letter(NamedTuple):
    """One symbol of a two-faced pair's *-alphabet."""

    pair: int
    leg: str  # "X" (left) or "Y" (right)
    star: bool

    @property
    def side(self) -> str:
        return LEFT if self.leg == X_LEG else RIGHT

    def starred(self) -> "Letter":
        """The adjoint letter; an involution."""
        return Letter(self.pair, self.leg, not self.star)


Word = tuple[Letter, ...]


def chi_of(word: Word) -> ChiMap:
    """The side map read off a nonempty word."""
    if not word:
        raise ValueError("the empty word has no side map")
    return ChiMap(tuple(a.side for a in word))


def star_word(word: Word) -> Word:
    """Adjoint of a product: reverse the word and star each letter."""
    return tuple(a.starred() for a in reversed(word))


def subword(word: Word, positions: Iterable[int]) -> Word:
    """Letters at the given 1-based positions, in increasing position order."""
    pos = sorted(set(positions))
    if not pos:
        raise ValueError("cannot restrict to the empty set")
    if pos[0] < 1 or pos[-1] > len(word):
        raise IndexError(f"positions out of range 1..{len(word)}: {pos}")
    return tuple(word[p - 1] for p in pos)


def exponent_sum(word: Word) -> int:
    """Number of plain letters minus number of starred letters."""
    return sum(-1 if a.star else 1 for a in word)
