"""Degree-bounded classifiers for two-faced pair distributions.

Each predicate quantifies over all word lengths in principle; the checks
here are exhaustive up to a stated degree and report that degree together
with any witnesses, so a ``True`` verdict always means "true at degree d".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cumulants import CumulantTable
from .scalars import ONE, ZERO, Scalar
from .words import Letter, Word, chi_of

__all__ = [
    "REASON_ODD",
    "REASON_STAR",
    "REASON_ORDER",
    "PatternVerdict",
    "ClassReport",
    "is_admissible_pattern",
    "check_bi_r_diagonal",
    "check_star_bi_even",
    "check_bi_haar",
    "check_r_cyclic_2x2",
]

REASON_ODD = "odd-length"
REASON_STAR = "star-nonalternating"
REASON_ORDER = "base-order-violation"

WITNESS_CAP = 10


@dataclass(frozen=True)
class PatternVerdict:
    admissible: bool
    reason: str | None = None


def is_admissible_pattern(word: Word) -> PatternVerdict:
    """The cumulant patterns allowed to survive for a bi-R-diagonal pair.

    Reading the word in the order induced by its side map, the sequence must
    have even length, alternate between starred and plain letters, and list
    every left-leg letter before every right-leg letter.  The last condition
    is automatic for side-consistent letters but is still checked.
    """
    if len({a.pair for a in word}) > 1:
        raise ValueError("pattern test expects letters of a single pair")
    n = len(word)
    if n == 0 or n % 2:
        return PatternVerdict(False, REASON_ODD)
    s = chi_of(word).s_chi
    seq = [word[s(k) - 1] for k in range(1, n + 1)]
    for a, b in zip(seq, seq[1:]):
        if a.star == b.star:
            return PatternVerdict(False, REASON_STAR)
    seen_y = False
    for a in seq:
        if a.leg == "Y":
            seen_y = True
        elif seen_y:
            return PatternVerdict(False, REASON_ORDER)
    return PatternVerdict(True)


@dataclass
class ClassReport:
    """Verdict of a degree-bounded classifier, with capped witness list."""

    kind: str
    verdict: bool
    max_degree: int
    witnesses: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": self.kind, "verdict": self.verdict,
                "max_degree": self.max_degree, "witnesses": self.witnesses}


def _witness(model, word: Word, value: Scalar, **extra) -> dict:
    out = {"word": model.format_word(word), "chi": str(chi_of(word)),
           "kappa": str(value)}
    out.update(extra)
    return out


def check_bi_r_diagonal(model, max_degree: int,
                        table: CumulantTable | None = None) -> ClassReport:
    """All cumulants on non-admissible patterns must vanish."""
    if table is None:
        table = CumulantTable(model)
    witnesses: list[dict] = []
    for n in range(1, max_degree + 1):
        for word in itertools.product(model.alphabet(), repeat=n):
            if is_admissible_pattern(word).admissible:
                continue
            value = table.kappa_full(word)
            if value:
                if len(witnesses) < WITNESS_CAP:
                    witnesses.append(_witness(model, word, value))
                else:
                    return ClassReport("birdiagonal", False, max_degree, witnesses)
    return ClassReport("birdiagonal", not witnesses, max_degree, witnesses)


def check_star_bi_even(model, max_degree: int,
                       table: CumulantTable | None = None) -> ClassReport:
    """All odd-order *-moments (equivalently odd cumulants) must vanish."""
    if table is None:
        table = CumulantTable(model)
    witnesses: list[dict] = []
    for n in range(1, max_degree + 1, 2):
        for word in itertools.product(model.alphabet(), repeat=n):
            m = model.moment(word)
            if m:
                witnesses.append(_witness(model, word, m, kind="moment"))
            else:
                k = table.kappa_full(word)
                if k:
                    witnesses.append(_witness(model, word, k, kind="cumulant"))
            if len(witnesses) >= WITNESS_CAP:
                return ClassReport("bieven", False, max_degree, witnesses)
    return ClassReport("bieven", not witnesses, max_degree, witnesses)


def check_bi_haar(model, max_degree: int,
                  table: CumulantTable | None = None) -> ClassReport:
    """Moment-level unitarity, cross-side commutation and balanced powers."""
    witnesses: list[dict] = []
    alphabet = model.alphabet()
    x, xs, y, ys = alphabet

    def note(word, got, expected, relation):
        witnesses.append(_witness(model, word, got, expected=str(expected),
                                  relation=relation))

    # unitarity: inserting u u* or u* u anywhere never changes a moment
    for n in range(0, max_degree - 1):
        for core in itertools.product(alphabet, repeat=n):
            base = model.moment(core)
            for i in range(n + 1):
                for u in (x, y):
                    for ins in ((u, u.starred()), (u.starred(), u)):
                        word = core[:i] + ins + core[i:]
                        got = model.moment(word)
                        if got != base:
                            note(word, got, base, "unitarity")
                            if len(witnesses) >= WITNESS_CAP:
                                return ClassReport("bihaar", False, max_degree, witnesses)
    # cross-side commutation: swapping adjacent opposite-side letters
    for n in range(2, max_degree + 1):
        for word in itertools.product(alphabet, repeat=n):
            base = None
            for i in range(n - 1):
                if word[i].side != word[i + 1].side:
                    if base is None:
                        base = model.moment(word)
                    swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                    got = model.moment(swapped)
                    if got != base:
                        note(swapped, got, base, "commutation")
                        if len(witnesses) >= WITNESS_CAP:
                            return ClassReport("bihaar", False, max_degree, witnesses)
    # balanced power moments
    for p in range(-max_degree, max_degree + 1):
        for q in range(-max_degree, max_degree + 1):
            if abs(p) + abs(q) > max_degree or (p, q) == (0, 0):
                continue
            word = tuple([x if p > 0 else xs] * abs(p)) + \
                tuple([y if q > 0 else ys] * abs(q))
            expected = ONE if p + q == 0 else ZERO
            got = model.moment(word)
            if got != expected:
                note(word, got, expected, "power-moment")
                if len(witnesses) >= WITNESS_CAP:
                    return ClassReport("bihaar", False, max_degree, witnesses)
    return ClassReport("bihaar", not witnesses, max_degree, witnesses)


# entries of the off-diagonal 2x2 matrices attached to a pair: row/column
# indices of the only nonzero entry holding each letter
_ENTRY_INDEX = {("X", False): (1, 2), ("X", True): (2, 1),
                ("Y", False): (1, 2), ("Y", True): (2, 1)}


def _cycle_broken(word: Word) -> bool:
    s = chi_of(word).s_chi
    seq = [word[s(k) - 1] for k in range(1, len(word) + 1)]
    idx = [_ENTRY_INDEX[(a.leg, a.star)] for a in seq]
    for (_, j), (i, _) in zip(idx, idx[1:]):
        if j != i:
            return True
    return idx[-1][1] != idx[0][0]


def check_r_cyclic_2x2(model, max_degree: int,
                       table: CumulantTable | None = None) -> ClassReport:
    """Entry-cumulant cycle test for the standard off-diagonal 2x2 matrices.

    Each pair letter sits in an off-diagonal entry of a 2x2 matrix; words
    whose entry indices fail to chain cyclically in the reading order must
    have vanishing cumulants.
    """
    if table is None:
        table = CumulantTable(model)
    witnesses: list[dict] = []
    for n in range(1, max_degree + 1):
        for word in itertools.product(model.alphabet(), repeat=n):
            if not _cycle_broken(word):
                continue
            value = table.kappa_full(word)
            if value:
                if len(witnesses) < WITNESS_CAP:
                    witnesses.append(_witness(model, word, value))
                else:
                    return ClassReport("rcyclic2", False, max_degree, witnesses)
    return ClassReport("rcyclic2", not witnesses, max_degree, witnesses)
