"""Bi-free cumulants: Moebius inversion of moments over bi-non-crossing
partitions.

The full-interval cumulant of a word is computed by the standard recursion

    kappa(w) = phi(w) - sum over proper bi-non-crossing partitions tau of
               the product over blocks V of kappa(w|V),

evaluated with a first-block dynamic program after relabelling positions
into the reading order, where the partitions become plain non-crossing ones.
Partition-level cumulants follow by multiplicativity over blocks.  The
literal Moebius-sum definition is retained (``kappa_direct`` and the
``paranoid`` table mode) as an independent cross-check path.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .chi import ChiMap
from .partitions import (
    BncContext,
    NotInBncError,
    SetPartition,
    bnc_closure,
    bnc_partitions,
    is_bnc,
    join,
)
from .scalars import ONE, ZERO, Scalar
from .words import Word, chi_of, subword

__all__ = ["CumulantTable", "sum_over_bnc"]


def sum_over_bnc(word: Word, block_value: Callable[[Word], Scalar],
                 exclude_maximum: bool = False,
                 same_block_ok: Callable[..., bool] | None = None) -> Scalar:
    """Sum over bi-non-crossing partitions of block-value products.

    ``block_value`` maps a subword (letters in original position order) to a
    scalar; the result is ``sum_tau prod_{V in tau} block_value(word|V)``
    with ``tau`` ranging over the bi-non-crossing family of the word's side
    map, optionally excluding the one-block maximum.

    ``same_block_ok(a, b)`` may veto two letters sharing a block; it prunes
    the enumeration and must be symmetric.  Used by joint distributions whose
    mixed blocks vanish by construction.
    """
    n = len(word)
    if n == 0:
        return ONE
    order = chi_of(word).s_chi.images  # reading position k -> original position
    memo: dict[tuple[int, int], Scalar] = {}

    def segment_sum(lo: int, hi: int, skip_full: bool) -> Scalar:
        # sum over non-crossing partitions of reading positions lo..hi
        if lo > hi:
            return ONE
        if not skip_full:
            cached = memo.get((lo, hi))
            if cached is not None:
                return cached
        total = ZERO
        full = hi - lo + 1
        first_letter = word[order[lo - 1] - 1]

        def extend(last: int, members: tuple[int, ...], gap_prod: Scalar):
            nonlocal total
            if not (skip_full and len(members) == full):
                sub = tuple(word[p - 1]
                            for p in sorted(order[m - 1] for m in members))
                value = block_value(sub)
                if value:
                    tail = segment_sum(last + 1, hi, False)
                    if tail:
                        total = total + value * gap_prod * tail
            for m in range(last + 1, hi + 1):
                if same_block_ok is not None \
                        and not same_block_ok(first_letter, word[order[m - 1] - 1]):
                    continue
                gap = segment_sum(last + 1, m - 1, False) if m > last + 1 else ONE
                if gap:
                    extend(m, members + (m,), gap_prod * gap)

        extend(lo, (lo,), ONE)
        if not skip_full:
            memo[(lo, hi)] = total
        return total

    return segment_sum(1, n, exclude_maximum)


class CumulantTable:
    """Memoized bi-free cumulants of one moment model.

    The model must provide ``moment(word)`` and may provide ``kappa_hint``,
    a sound zero test derived from the moment structure alone.  Tables are
    deterministic and safe for concurrent readers; memo insertion is atomic.

    ``paranoid`` switches the full-interval cumulant to the literal Moebius
    sum over the whole lattice instead of the recursion; results must agree.
    """

    def __init__(self, model, paranoid: bool = False,
                 max_degree: int | None = None):
        self.model = model
        self.paranoid = paranoid
        self.max_degree = max_degree
        self._kappa: dict[Word, Scalar] = {}
        self._hint = getattr(model, "kappa_hint", None)

    # -- full-interval cumulants -------------------------------------------

    def kappa_full(self, word: Word) -> Scalar:
        """The cumulant at the one-block partition."""
        word = tuple(word)
        value = self._kappa.get(word)
        if value is None:
            if not word:
                raise ValueError("cumulants need a nonempty word")
            if len(word) == 1:
                value = self.model.moment(word)
            elif self._hint is not None and not self._hint(word):
                value = ZERO
            elif self.paranoid:
                value = self._kappa_mobius(word, None)
            else:
                proper = sum_over_bnc(word, self.kappa_full, exclude_maximum=True)
                value = self.model.moment(word) - proper
            self._kappa[word] = value
        return value

    def _kappa_mobius(self, word: Word, part: SetPartition | None) -> Scalar:
        chi = chi_of(word)
        ctx = BncContext(chi)
        if part is None:
            part = ctx.one
        total = ZERO
        for lam in ctx.partitions():
            if not lam.leq(part):
                continue
            phi = ONE
            for block in lam.blocks:
                phi = phi * self.model.moment(subword(word, block))
                if not phi:
                    break
            if not phi:
                continue
            mu = ctx.mobius_to_one(lam) if part == ctx.one else ctx.mobius(lam, part)
            if mu:
                total = total + phi * mu
        return total

    # -- public queries ------------------------------------------------------

    def _check_degree(self, n: int):
        if self.max_degree is not None and n > self.max_degree:
            from .distributions import DegreeExceededError

            raise DegreeExceededError(
                f"cumulant query of length {n} exceeds max degree {self.max_degree}")

    def kappa(self, word: Word, part: SetPartition | None = None) -> Scalar:
        """The cumulant of a word at a bi-non-crossing partition.

        With ``part`` omitted this is the full-interval cumulant; otherwise
        the value is the product over blocks of full-interval cumulants of
        the restricted words.
        """
        word = tuple(word)
        self._check_degree(len(word))
        if part is None:
            return self.kappa_full(word)
        if part.n != len(word):
            raise ValueError("partition size does not match word length")
        chi = chi_of(word)
        if not is_bnc(chi, part):
            raise NotInBncError(
                f"{part.to_text()} is not bi-non-crossing for {chi}")
        acc = ONE
        for block in part.blocks:
            acc = acc * self.kappa_full(subword(word, block))
            if not acc:
                return ZERO
        return acc

    def kappa_direct(self, word: Word, part: SetPartition | None = None) -> Scalar:
        """Definitional Moebius sum; the slow cross-check for :meth:`kappa`."""
        word = tuple(word)
        self._check_degree(len(word))
        chi = chi_of(word)
        if part is not None:
            if part.n != len(word):
                raise ValueError("partition size does not match word length")
            if not is_bnc(chi, part):
                raise NotInBncError(
                    f"{part.to_text()} is not bi-non-crossing for {chi}")
        return self._kappa_mobius(word, part)

    def moment_from_cumulants(self, word: Word) -> Scalar:
        """Rebuild a moment by summing cumulants over the whole lattice.

        Enumerates the lattice explicitly, independently of the dynamic
        program used inside the recursion, so comparing the result with the
        model's moment exercises the inversion for real.
        """
        word = tuple(word)
        if not word:
            return ONE
        chi = chi_of(word)
        total = ZERO
        for tau in bnc_partitions(chi):
            acc = ONE
            for block in tau.blocks:
                acc = acc * self.kappa_full(subword(word, block))
                if not acc:
                    break
            if acc:
                total = total + acc
        return total

    # -- products as arguments ------------------------------------------------

    @staticmethod
    def _segment_checks(segments: Sequence[Word]):
        if not segments:
            raise ValueError("need at least one segment")
        for seg in segments:
            if not seg:
                raise ValueError("segments must be nonempty")
            sides = {a.side for a in seg}
            if len(sides) != 1:
                raise ValueError("each segment must stay on one side")

    def kappa_grouped(self, segments: Sequence[Word]) -> Scalar:
        """Cumulant with products as arguments, via the expanded-word formula.

        Expands the segments into one long word and sums the expanded
        cumulants over the bi-non-crossing partitions whose join with the
        segment interval partition closes up to the maximum.
        """
        segments = [tuple(s) for s in segments]
        self._segment_checks(segments)
        word: Word = tuple(a for seg in segments for a in seg)
        self._check_degree(len(segments))
        n = len(word)
        chi_hat = chi_of(word)
        intervals = []
        start = 1
        for seg in segments:
            intervals.append(range(start, start + len(seg)))
            start += len(seg)
        zero_hat = SetPartition(n, intervals)
        one = SetPartition.one(n)
        total = ZERO
        for tau in bnc_partitions(chi_hat):
            if bnc_closure(chi_hat, join(tau, zero_hat)) != one:
                continue
            acc = ONE
            for block in tau.blocks:
                acc = acc * self.kappa_full(subword(word, block))
                if not acc:
                    break
            if acc:
                total = total + acc
        return total

    def kappa_grouped_direct(self, segments: Sequence[Word]) -> Scalar:
        """Cumulant with products as arguments, from grouped moments only.

        Treats each segment as a single argument and runs the Moebius sum at
        the grouped level; the independent oracle for :meth:`kappa_grouped`.
        """
        segments = [tuple(s) for s in segments]
        self._segment_checks(segments)
        self._check_degree(len(segments))
        chi_g = ChiMap(tuple(seg[0].side for seg in segments))
        ctx = BncContext(chi_g)
        total = ZERO
        for lam in ctx.partitions():
            phi = ONE
            for block in lam.blocks:
                grouped: Word = tuple(a for v in block for a in segments[v - 1])
                phi = phi * self.model.moment(grouped)
                if not phi:
                    break
            if not phi:
                continue
            mu = ctx.mobius_to_one(lam)
            if mu:
                total = total + phi * mu
        return total
