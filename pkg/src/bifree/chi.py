"""Side maps on word positions and the total order they induce.

A side map assigns ``l`` or ``r`` to each of the positions ``1..n`` of an
operator string.  Listing the left positions in increasing order followed by
the right positions in decreasing order defines a permutation of ``{1..n}``;
the total order obtained by reading positions in that sequence drives all of
the partition and cumulant machinery in this package.

Positions are 1-based in every public interface.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["LEFT", "RIGHT", "Perm", "ChiMap", "build_s_chi", "chi_less", "restrict_chi"]

LEFT = "l"
RIGHT = "r"


class Perm:
    """A permutation of ``{1..n}`` stored as its image tuple.

    >>> p = Perm((2, 3, 1))
    >>> p(1), p.inverse(1)
    (2, 3)
    """

    __slots__ = ("images", "_inverse")

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {images}")
        self.images = images
        self._inverse = None

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.images):
            raise IndexError(f"position {i} out of range 1..{len(self.images)}")
        return self.images[i - 1]

    @property
    def inverse(self) -> "Perm":
        if self._inverse is None:
            inv = [0] * len(self.images)
            for k, v in enumerate(self.images, start=1):
                inv[v - 1] = k
            self._inverse = Perm(tuple(inv))
            self._inverse._inverse = self
        return self._inverse

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __iter__(self):
        return iter(self.images)

    def __repr__(self):
        return f"Perm({self.images})"


class ChiMap:
    """A word over ``{l, r}`` tagging each of ``n >= 1`` positions with a side.

    The string form is used throughout the CLI and JSON interfaces:

    >>> chi = ChiMap("lllrrl")
    >>> chi.s_chi.images
    (1, 2, 3, 6, 5, 4)
    >>> chi.less(6, 5)
    True
    >>> str(chi.restrict([1, 4]))
    'lr'
    """

    __slots__ = ("sides", "_perm")

    def __init__(self, sides: str | Iterable[str]):
        if isinstance(sides, str):
            sides = tuple(sides)
        else:
            sides = tuple(sides)
        if not sides:
            raise ValueError("side map must have length >= 1")
        for s in sides:
            if s not in (LEFT, RIGHT):
                raise ValueError(f"invalid side {s!r}; expected 'l' or 'r'")
        self.sides = sides
        self._perm = None

    @property
    def n(self) -> int:
        return len(self.sides)

    def __len__(self) -> int:
        return len(self.sides)

    def side(self, i: int) -> str:
        if not 1 <= i <= len(self.sides):
            raise IndexError(f"position {i} out of range 1..{len(self.sides)}")
        return self.sides[i - 1]

    @property
    def left_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sides, start=1) if s == LEFT)

    @property
    def right_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.sides, start=1) if s == RIGHT)

    @property
    def s_chi(self) -> Perm:
        """Left positions ascending, then right positions descending."""
        if self._perm is None:
            self._perm = Perm(self.left_positions + self.right_positions[::-1])
        return self._perm

    def less(self, i: int, j: int) -> bool:
        """Strict comparison in the induced total order."""
        inv = self.s_chi.inverse
        return inv(i) < inv(j)

    def restrict(self, positions: Iterable[int]) -> "ChiMap":
        """The side map induced on a nonempty subset, relabelled to 1..|V|."""
        pos = sorted(set(positions))
        if not pos:
            raise ValueError("cannot restrict to the empty set")
        if pos[0] < 1 or pos[-1] > len(self.sides):
            raise IndexError(f"positions out of range 1..{len(self.sides)}: {pos}")
        return ChiMap(tuple(self.sides[p - 1] for p in pos))

    def __eq__(self, other):
        return isinstance(other, ChiMap) and self.sides == other.sides

    def __hash__(self):
        return hash(self.sides)

    def __str__(self):
        return "".join(self.sides)

    def __repr__(self):
        return f"ChiMap('{self}')"


def build_s_chi(chi: ChiMap) -> Perm:
    """The reading permutation of a side map."""
    return chi.s_chi


def chi_less(chi: ChiMap, i: int, j: int) -> bool:
    return chi.less(i, j)


def restrict_chi(chi: ChiMap, positions: Iterable[int]) -> ChiMap:
    return chi.restrict(positions)
