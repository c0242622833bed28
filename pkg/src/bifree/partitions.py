"""Set partitions of ``{1..n}`` and the (bi-)non-crossing lattices.

Canonical set partitions with refinement order, joins and non-crossing
closures; enumeration of the non-crossing family and of the bi-non-crossing
family attached to a side map; Kreweras complements; and the Moebius
functions of both lattices.

Two algorithms are provided for the Moebius function: a product formula that
factors intervals through Kreweras complements, and the literal recursion on
intervals.  The recursion is slow but definitional; it backs the ``paranoid``
cross-check mode and several tests.
"""

from __future__ import annotations

import bisect
import itertools
import math
from functools import lru_cache
from typing import Iterable, Sequence

from .chi import ChiMap, Perm

__all__ = [
    "SizeLimitError",
    "NotInBncError",
    "catalan",
    "SetPartition",
    "join",
    "nc_partitions",
    "is_bnc",
    "bnc_partitions",
    "nc_closure",
    "bnc_closure",
    "kreweras_nc",
    "kreweras_bnc",
    "mobius_nc",
    "mobius_nc_recursive",
    "mobius_bnc",
    "connects_consecutive",
    "BncContext",
    "DEFAULT_SIZE_LIMIT",
]

DEFAULT_SIZE_LIMIT = 12


class SizeLimitError(ValueError):
    """Raised when an enumeration would exceed the configured size limit."""


class NotInBncError(ValueError):
    """Raised when a partition is not bi-non-crossing for the given side map."""


def catalan(n: int) -> int:
    """The n-th Catalan number, with ``catalan(0) == 1``.

    >>> [catalan(k) for k in range(7)]
    [1, 1, 2, 5, 14, 42, 132]
    """
    if n < 0:
        raise ValueError("catalan is defined for n >= 0")
    return math.comb(2 * n, n) // (n + 1)


class SetPartition:
    """A partition of ``{1..n}`` in canonical form.

    Blocks are stored as sorted tuples, listed by their minimum element, so
    structural equality and hashing agree with partition equality.

    >>> p = SetPartition(6, [[3, 6], [1, 4], [5, 2]])
    >>> p.to_text()
    '{1,4|2,5|3,6}'
    >>> p.same_block(2, 5), p.same_block(1, 2)
    (True, False)
    """

    __slots__ = ("n", "blocks", "_block_index", "_hash")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted(tuple(sorted(b)) for b in blocks))
        seen: set[int] = set()
        for b in canon:
            if not b:
                raise ValueError("empty block")
            for v in b:
                if not 1 <= v <= n:
                    raise ValueError(f"element {v} out of range 1..{n}")
                if v in seen:
                    raise ValueError(f"element {v} appears in two blocks")
                seen.add(v)
        if len(seen) != n:
            raise ValueError(f"blocks do not cover 1..{n}")
        self.n = n
        self.blocks = canon
        self._block_index = None
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "SetPartition":
        """The minimal partition, all blocks singletons."""
        return cls(n, [[i] for i in range(1, n + 1)])

    @classmethod
    def one(cls, n: int) -> "SetPartition":
        """The maximal partition, a single block."""
        return cls(n, [range(1, n + 1)])

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "SetPartition":
        """Parse the ``{1,4|2,5|3,6}`` text form.

        ``0`` and ``1`` are accepted as shorthands for the minimal and
        maximal partitions when ``n`` is supplied.
        """
        s = text.strip()
        if s == "0":
            if n is None:
                raise ValueError("shorthand '0' needs an explicit n")
            return cls.zero(n)
        if s == "1":
            if n is None:
                raise ValueError("shorthand '1' needs an explicit n")
            return cls.one(n)
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError(f"malformed partition: {text!r}")
        body = s[1:-1]
        blocks = []
        for part in body.split("|"):
            part = part.strip()
            if not part:
                raise ValueError(f"malformed partition: {text!r}")
            blocks.append([int(tok) for tok in part.split(",")])
        size = n if n is not None else max(max(b) for b in blocks)
        return cls(size, blocks)

    def to_text(self) -> str:
        return "{" + "|".join(",".join(str(v) for v in b) for b in self.blocks) + "}"

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @property
    def block_index(self) -> tuple[int, ...]:
        """``block_index[i-1]`` is the index of the block containing i."""
        if self._block_index is None:
            idx = [0] * self.n
            for k, b in enumerate(self.blocks):
                for v in b:
                    idx[v - 1] = k
            self._block_index = tuple(idx)
        return self._block_index

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.block_index[i - 1]]

    def same_block(self, i: int, j: int) -> bool:
        idx = self.block_index
        return idx[i - 1] == idx[j - 1]

    def leq(self, other: "SetPartition") -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        idx = other.block_index
        return all(len({idx[v - 1] for v in b}) == 1 for b in self.blocks)

    def is_noncrossing(self) -> bool:
        """True iff no two blocks interlace.

        Scans positions once, keeping a stack of open blocks; a partition
        crosses exactly when some element's block is open but buried.
        """
        idx = self.block_index
        last = [b[-1] for b in self.blocks]
        stack: list[int] = []
        opened = [False] * len(self.blocks)
        for i in range(1, self.n + 1):
            b = idx[i - 1]
            if not opened[b]:
                opened[b] = True
                stack.append(b)
            elif stack[-1] != b:
                return False
            if last[b] == i:
                stack.pop()
        return True

    def apply(self, perm: Perm) -> "SetPartition":
        """Relabel every element through a permutation."""
        if perm.n != self.n:
            raise ValueError("size mismatch")
        return SetPartition(self.n, [[perm(v) for v in b] for b in self.blocks])

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __eq__(self, other):
        return (isinstance(other, SetPartition)
                and self.n == other.n and self.blocks == other.blocks)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.blocks))
        return self._hash

    def __lt__(self, other: "SetPartition"):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __repr__(self):
        return f"SetPartition.from_text({self.to_text()!r})"


def join(p: SetPartition, q: SetPartition) -> SetPartition:
    """Least upper bound in the full partition lattice."""
    if p.n != q.n:
        raise ValueError("size mismatch")
    parent = list(range(p.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        for b in part.blocks:
            root = find(b[0])
            for v in b[1:]:
                parent[find(v)] = root
    groups: dict[int, list[int]] = {}
    for v in range(1, p.n + 1):
        groups.setdefault(find(v), []).append(v)
    return SetPartition(p.n, groups.values())


def _nc_block_lists(positions: tuple[int, ...]):
    """All non-crossing partitions of an ascending position tuple."""
    if not positions:
        yield ()
        return
    first, rest = positions[0], positions[1:]
    m = len(rest)
    for k in range(m + 1):
        for members in itertools.combinations(range(m), k):
            block = (first,) + tuple(rest[i] for i in members)
            gaps = []
            prev = -1
            for i in members:
                gaps.append(rest[prev + 1:i])
                prev = i
            gaps.append(rest[prev + 1:])
            partials = [()]
            for gap in gaps:
                if not gap:
                    continue
                partials = [p + q for p in partials for q in _nc_block_lists(gap)]
            for tail in partials:
                yield (block,) + tail


@lru_cache(maxsize=None)
def nc_partitions(n: int, limit: int = DEFAULT_SIZE_LIMIT) -> tuple[SetPartition, ...]:
    """All non-crossing partitions of ``{1..n}``, canonically ordered.

    >>> [len(nc_partitions(k)) for k in range(1, 6)]
    [1, 2, 5, 14, 42]
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds the enumeration limit {limit}")
    parts = [SetPartition(n, blocks) for blocks in _nc_block_lists(tuple(range(1, n + 1)))]
    parts.sort()
    return tuple(parts)


def is_bnc(chi: ChiMap, p: SetPartition) -> bool:
    """Membership test for the bi-non-crossing family of a side map."""
    if chi.n != p.n:
        raise ValueError("size mismatch")
    return p.apply(chi.s_chi.inverse).is_noncrossing()


@lru_cache(maxsize=256)
def _bnc_partitions_cached(sides: str, limit: int) -> tuple[SetPartition, ...]:
    chi = ChiMap(sides)
    s = chi.s_chi
    parts = [p.apply(s) for p in nc_partitions(chi.n, limit)]
    parts.sort()
    return tuple(parts)


def bnc_partitions(chi: ChiMap, limit: int = DEFAULT_SIZE_LIMIT) -> tuple[SetPartition, ...]:
    """All bi-non-crossing partitions for a side map, canonically ordered.

    Obtained by pushing the non-crossing family forward along the reading
    permutation; the count is always a Catalan number.
    """
    return _bnc_partitions_cached(str(chi), limit)


def nc_closure(p: SetPartition) -> SetPartition:
    """The smallest non-crossing partition coarser than ``p``.

    Well defined because non-crossing partitions are closed under meets;
    computed by merging crossing block pairs until none remain.
    """
    current = p
    while not current.is_noncrossing():
        blocks = [list(b) for b in current.blocks]
        merged = None
        for a, b in itertools.combinations(range(len(blocks)), 2):
            if _blocks_cross(blocks[a], blocks[b]):
                merged = (a, b)
                break
        if merged is None:  # pragma: no cover - guarded by is_noncrossing
            break
        a, b = merged
        blocks[a].extend(blocks[b])
        del blocks[b]
        current = SetPartition(p.n, blocks)
    return current


def _blocks_cross(u: Sequence[int], v: Sequence[int]) -> bool:
    su, sv = sorted(u), sorted(v)
    for a, c in itertools.combinations(su, 2):
        # an element of v strictly between a and c, plus one outside [a, c]
        lo = bisect.bisect_right(sv, a)
        hi = bisect.bisect_left(sv, c)
        if lo < hi and (lo > 0 or hi < len(sv)):
            return True
    return False


def bnc_closure(chi: ChiMap, p: SetPartition) -> SetPartition:
    """The smallest bi-non-crossing partition coarser than ``p``."""
    if chi.n != p.n:
        raise ValueError("size mismatch")
    s = chi.s_chi
    return nc_closure(p.apply(s.inverse)).apply(s)


def kreweras_nc(p: SetPartition) -> SetPartition:
    """The Kreweras complement on the non-crossing lattice.

    Computed through the cycle model: turn each block into the cycle that
    traverses it in increasing order, compose the inverse with the long cycle
    ``(1 2 ... n)``, and read off the resulting cycles.

    >>> kreweras_nc(SetPartition.zero(3)).to_text()
    '{1,2,3}'
    >>> kreweras_nc(SetPartition.from_text("{1,3|2|4}")).to_text()
    '{1,2|3,4}'
    """
    if not p.is_noncrossing():
        raise ValueError(f"{p.to_text()} is not non-crossing")
    n = p.n
    succ = [0] * (n + 1)
    for b in p.blocks:
        for i, v in enumerate(b):
            succ[v] = b[(i + 1) % len(b)]
    inv = [0] * (n + 1)
    for v in range(1, n + 1):
        inv[succ[v]] = v
    sigma = [0] * (n + 1)
    for v in range(1, n + 1):
        gamma = v + 1 if v < n else 1
        sigma[v] = inv[gamma]
    blocks = []
    seen = [False] * (n + 1)
    for v in range(1, n + 1):
        if seen[v]:
            continue
        cyc = []
        w = v
        while not seen[w]:
            seen[w] = True
            cyc.append(w)
            w = sigma[w]
        blocks.append(cyc)
    return SetPartition(n, blocks)


def kreweras_bnc(chi: ChiMap, p: SetPartition) -> SetPartition:
    """Kreweras complement on the bi-non-crossing lattice."""
    if not is_bnc(chi, p):
        raise NotInBncError(f"{p.to_text()} is not bi-non-crossing for {chi}")
    s = chi.s_chi
    return kreweras_nc(p.apply(s.inverse)).apply(s)


def _signed_catalan_product(p: SetPartition) -> int:
    acc = 1
    for b in p.blocks:
        k = len(b) - 1
        acc *= (-1) ** k * catalan(k)
    return acc


_MOBIUS_NC_CACHE: dict[tuple[SetPartition, SetPartition], int] = {}


def mobius_nc(p: SetPartition, q: SetPartition) -> int:
    """Moebius function of the non-crossing lattice.

    Returns 0 unless ``p <= q``.  Intervals factor block-by-block, and the
    full interval above a partition is anti-isomorphic to the ideal below its
    Kreweras complement, which gives the signed-Catalan product.
    """
    if p.n != q.n:
        raise ValueError("size mismatch")
    if p == q:
        return 1
    if not p.leq(q):
        return 0
    key = (p, q)
    cached = _MOBIUS_NC_CACHE.get(key)
    if cached is not None:
        return cached
    acc = 1
    p_idx = p.block_index
    for block in q.blocks:
        rank = {v: i + 1 for i, v in enumerate(block)}
        sub_blocks: dict[int, list[int]] = {}
        for v in block:
            sub_blocks.setdefault(p_idx[v - 1], []).append(rank[v])
        rho = SetPartition(len(block), sub_blocks.values())
        acc *= _signed_catalan_product(kreweras_nc(rho))
    _MOBIUS_NC_CACHE[key] = acc
    return acc


_MOBIUS_REC_CACHE: dict[tuple[SetPartition, SetPartition], int] = {}


def mobius_nc_recursive(p: SetPartition, q: SetPartition) -> int:
    """The defining recursion for the non-crossing Moebius function.

    Exponentially slower than :func:`mobius_nc`; kept as the definitional
    cross-check used by ``paranoid`` runs and the verification suite.
    """
    if p.n != q.n:
        raise ValueError("size mismatch")
    if p == q:
        return 1
    if not p.leq(q):
        return 0
    key = (p, q)
    cached = _MOBIUS_REC_CACHE.get(key)
    if cached is not None:
        return cached
    total = 0
    for rho in nc_partitions(p.n):
        if rho != q and p.leq(rho) and rho.leq(q):
            total += mobius_nc_recursive(p, rho)
    _MOBIUS_REC_CACHE[key] = -total
    return -total


def mobius_bnc(chi: ChiMap, t: SetPartition, l: SetPartition, *,
               recursive: bool = False) -> int:
    """Moebius function of the bi-non-crossing lattice.

    Both arguments must be bi-non-crossing for ``chi``; the value is carried
    over from the non-crossing lattice through the reading permutation.
    """
    for part in (t, l):
        if not is_bnc(chi, part):
            raise NotInBncError(f"{part.to_text()} is not bi-non-crossing for {chi}")
    sinv = chi.s_chi.inverse
    fn = mobius_nc_recursive if recursive else mobius_nc
    return fn(t.apply(sinv), l.apply(sinv))


def connects_consecutive(chi_hat: ChiMap, t: SetPartition) -> bool:
    """Consecutive-linking test for interval-paired side maps.

    For a side map of length ``2n`` that is constant on the pairs
    ``{2i-1, 2i}``, checks that ``t`` links the first and last positions of
    the induced reading order and every even position to its successor.
    """
    n2 = chi_hat.n
    if n2 % 2 != 0:
        raise ValueError("side map must have even length")
    if t.n != n2:
        raise ValueError("size mismatch")
    for i in range(1, n2 // 2 + 1):
        if chi_hat.side(2 * i - 1) != chi_hat.side(2 * i):
            raise ValueError("side map must be constant on {2i-1, 2i} pairs")
    s = chi_hat.s_chi
    if not t.same_block(s(1), s(n2)):
        return False
    return all(t.same_block(s(2 * i), s(2 * i + 1)) for i in range(1, n2 // 2))


class BncContext:
    """A side map together with cached lattice data.

    Bundles the enumerated bi-non-crossing family, the extreme elements and a
    memo table for Moebius values against the maximum, which is the hot query
    in cumulant computations.  Instances are immutable and safe to share.
    """

    def __init__(self, chi: ChiMap | str, size_limit: int = DEFAULT_SIZE_LIMIT):
        self.chi = chi if isinstance(chi, ChiMap) else ChiMap(chi)
        self.size_limit = size_limit
        self.zero = SetPartition.zero(self.chi.n)
        self.one = SetPartition.one(self.chi.n)
        self._mobius_to_one: dict[SetPartition, int] = {}

    @property
    def n(self) -> int:
        return self.chi.n

    def partitions(self) -> tuple[SetPartition, ...]:
        return bnc_partitions(self.chi, self.size_limit)

    def __contains__(self, p: SetPartition) -> bool:
        return p.n == self.chi.n and is_bnc(self.chi, p)

    def mobius(self, t: SetPartition, l: SetPartition) -> int:
        return mobius_bnc(self.chi, t, l)

    def mobius_to_one(self, t: SetPartition) -> int:
        value = self._mobius_to_one.get(t)
        if value is None:
            value = mobius_bnc(self.chi, t, self.one)
            self._mobius_to_one[t] = value
        return value

    def kreweras(self, p: SetPartition) -> SetPartition:
        return kreweras_bnc(self.chi, p)

    def closure(self, p: SetPartition) -> SetPartition:
        return bnc_closure(self.chi, p)
