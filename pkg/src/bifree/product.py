"""Joint distributions of families of pairs, and pairs derived from them.

:func:`bifree_product` builds the joint distribution in which the given
pairs are bi-freely independent: mixed cumulants are declared zero and
moments are rebuilt bottom-up from each pair's own cumulants.

:class:`DerivedPairModel` turns leg expansions (words or linear combinations
of words of an ambient model) into a new two-faced pair, which is how
products, powers and sums of pairs are realized.  :class:`ExpandedJoint`
views several derived pairs over one ambient model as a joint family, and
:func:`check_bifree` tests any joint-like model for vanishing mixed
cumulants up to a degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cumulants import CumulantTable, sum_over_bnc
from .distributions import (
    DegreeExceededError,
    ForeignLetterError,
    PairDistribution,
    WordPoly,
    poly_star,
)
from .scalars import ONE, ZERO, Scalar
from .words import Letter, Word, chi_of

__all__ = [
    "JointDistribution",
    "bifree_product",
    "DerivedPairModel",
    "ExpandedJoint",
    "BifreeReport",
    "check_bifree",
]


class JointDistribution:
    """The joint distribution of pairwise bi-free two-faced pairs.

    Moments are computed as sums over bi-non-crossing partitions of products
    of within-pair cumulants, with blocks that mix pairs contributing zero.
    Restricted to a single pair's alphabet the oracle reproduces that pair's
    own moments.
    """

    def __init__(self, pairs: Sequence[PairDistribution],
                 degree_bound: int | None = None):
        pairs = tuple(pairs)
        if not pairs:
            raise ValueError("need at least one pair")
        ids = [p.pair for p in pairs]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate pair ids: {ids}")
        self.pairs = pairs
        self.tables = {p.pair: CumulantTable(p) for p in pairs}
        self.degree_bound = (degree_bound if degree_bound is not None
                             else min(p.degree_bound for p in pairs))
        self._by_letter = {a: p for p in pairs for a in p.alphabet()}
        self._moments: dict[Word, Scalar] = {(): ONE}

    # -- structure ----------------------------------------------------------

    def pair_ids(self) -> tuple[int, ...]:
        return tuple(p.pair for p in self.pairs)

    def pair_alphabets(self) -> tuple[tuple[Letter, ...], ...]:
        return tuple(p.alphabet() for p in self.pairs)

    def alphabet(self) -> tuple[Letter, ...]:
        return tuple(a for p in self.pairs for a in p.alphabet())

    # -- moments --------------------------------------------------------------

    def moment(self, word: Word) -> Scalar:
        word = tuple(word)
        value = self._moments.get(word)
        if value is None:
            for a in word:
                if a not in self._by_letter:
                    raise ForeignLetterError(f"letter {a} is not in the joint alphabet")
            if len(word) > self.degree_bound:
                raise DegreeExceededError(
                    f"word of length {len(word)} exceeds degree bound {self.degree_bound}")
            value = sum_over_bnc(
                word, self._block_kappa,
                same_block_ok=lambda a, b: a.pair == b.pair)
            self._moments[word] = value
        return value

    def _block_kappa(self, sub: Word) -> Scalar:
        pid = sub[0].pair
        if any(a.pair != pid for a in sub):
            return ZERO
        return self.tables[pid].kappa_full(sub)

    def kappa_hint(self, word: Word) -> bool:
        return True

    # -- token form -------------------------------------------------------------

    def token_of(self, letter: Letter) -> str:
        for k, p in enumerate(self.pairs, start=1):
            if letter in p.alphabet():
                return f"{p.token_of(letter)}@{k}"
        raise ForeignLetterError(f"letter {letter} is not in the joint alphabet")

    def format_word(self, word: Word) -> str:
        return " ".join(self.token_of(a) for a in word)

    def parse_word(self, text: str) -> Word:
        """Parse ``tok@k`` tokens; the suffix may be omitted when unambiguous."""
        letters = []
        for tok in text.split():
            if "@" in tok:
                name, _, which = tok.rpartition("@")
                try:
                    p = self.pairs[int(which) - 1]
                except (ValueError, IndexError):
                    raise ForeignLetterError(f"bad pair reference in token {tok!r}")
                letters.append(p.parse_word(name)[0])
                continue
            hits = []
            for p in self.pairs:
                try:
                    hits.append(p.parse_word(tok)[0])
                except ForeignLetterError:
                    pass
            if not hits:
                raise ForeignLetterError(f"unknown token {tok!r}")
            if len(hits) > 1:
                raise ForeignLetterError(
                    f"ambiguous token {tok!r}; qualify it as tok@k")
            letters.append(hits[0])
        return tuple(letters)


def bifree_product(*pairs: PairDistribution,
                   degree_bound: int | None = None) -> JointDistribution:
    """Join pairs into the family where they are bi-freely independent."""
    if len(pairs) == 1 and isinstance(pairs[0], (list, tuple)):
        pairs = tuple(pairs[0])
    return JointDistribution(pairs, degree_bound=degree_bound)


def _expanded_moment(base, expansion: Mapping[Letter, WordPoly], word: Word) -> Scalar:
    """Multilinear expansion of derived letters into ambient moments."""
    total = ZERO
    choices = [list(expansion[a].items()) for a in word]
    for pick in itertools.product(*choices):
        coeff = ONE
        for _, c in pick:
            coeff = coeff * c
        if not coeff:
            continue
        flat: Word = tuple(x for w, _ in pick for x in w)
        total = total + coeff * base.moment(flat)
    return total


class DerivedPairModel(PairDistribution):
    """A two-faced pair whose legs expand into an ambient model.

    The left leg is a word polynomial in left letters of the ambient model,
    the right leg one in right letters; starred letters expand through the
    adjoint of the polynomial.  Covers products of pairs (one-term words),
    powers, and sums of legs (multi-term polynomials).
    """

    def __init__(self, base, x_poly: WordPoly, y_poly: WordPoly, pair: int,
                 names: tuple[str, str] = ("X", "Y"),
                 degree_bound: int | None = None):
        for poly, side in ((x_poly, "l"), (y_poly, "r")):
            if not poly:
                raise ValueError("leg expansions must be nonempty")
            for w in poly:
                if not w:
                    raise ValueError("leg expansions cannot contain the empty word")
                if any(a.side != side for a in w):
                    raise ValueError(f"leg expansion words must stay on side {side!r}")
        stretch = max(len(w) for poly in (x_poly, y_poly) for w in poly)
        if degree_bound is None:
            degree_bound = max(1, base.degree_bound // stretch)
        super().__init__(pair, degree_bound, names)
        self.base = base
        self.expansion = {
            self.x(): dict(x_poly),
            self.x_star(): poly_star(x_poly),
            self.y(): dict(y_poly),
            self.y_star(): poly_star(y_poly),
        }

    def _moment(self, word: Word) -> Scalar:
        return _expanded_moment(self.base, self.expansion, word)

    def reduced_alphabet(self) -> tuple[Letter, ...]:
        """Alphabet with starred letters dropped when a leg is self-adjoint."""
        out = [self.x()]
        if self.expansion[self.x_star()] != self.expansion[self.x()]:
            out.append(self.x_star())
        out.append(self.y())
        if self.expansion[self.y_star()] != self.expansion[self.y()]:
            out.append(self.y_star())
        return tuple(out)


class ExpandedJoint:
    """Several derived pairs over one ambient model, as one joint family.

    Unlike :class:`JointDistribution` nothing is assumed about mixed
    cumulants: moments are computed by expanding every derived letter into
    the shared ambient model.  This is the object on which bi-freeness of
    derived pairs is an honest question.
    """

    def __init__(self, base, derived: Sequence[DerivedPairModel]):
        derived = tuple(derived)
        if not derived:
            raise ValueError("need at least one derived pair")
        ids = [p.pair for p in derived]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate pair ids: {ids}")
        for p in derived:
            if p.base is not base:
                raise ValueError("all derived pairs must share the ambient model")
        self.base = base
        self.derived = derived
        self.degree_bound = min(p.degree_bound for p in derived)
        self._expansion: dict[Letter, WordPoly] = {}
        for p in derived:
            self._expansion.update(p.expansion)
        self._moments: dict[Word, Scalar] = {(): ONE}

    def pair_ids(self) -> tuple[int, ...]:
        return tuple(p.pair for p in self.derived)

    def pair_alphabets(self) -> tuple[tuple[Letter, ...], ...]:
        return tuple(p.reduced_alphabet() for p in self.derived)

    def alphabet(self) -> tuple[Letter, ...]:
        return tuple(a for p in self.derived for a in p.alphabet())

    def moment(self, word: Word) -> Scalar:
        word = tuple(word)
        value = self._moments.get(word)
        if value is None:
            for a in word:
                if a not in self._expansion:
                    raise ForeignLetterError(f"letter {a} is not in the joint alphabet")
            if len(word) > self.degree_bound:
                raise DegreeExceededError(
                    f"word of length {len(word)} exceeds degree bound {self.degree_bound}")
            value = _expanded_moment(self.base, self._expansion, word)
            self._moments[word] = value
        return value

    def kappa_hint(self, word: Word) -> bool:
        return True

    def token_of(self, letter: Letter) -> str:
        for k, p in enumerate(self.derived, start=1):
            if letter in p.alphabet():
                return f"{p.token_of(letter)}@{k}"
        raise ForeignLetterError(f"letter {letter} is not in the joint alphabet")

    def format_word(self, word: Word) -> str:
        return " ".join(self.token_of(a) for a in word)


@dataclass
class BifreeReport:
    """Outcome of a mixed-cumulant scan; empty witnesses means bi-free."""

    verdict: bool
    max_degree: int
    witnesses: list[dict] = field(default_factory=list)
    witness_cap: int = 10

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "max_degree": self.max_degree,
                "witnesses": self.witnesses}


def check_bifree(model, max_degree: int, witness_cap: int = 10,
                 table: CumulantTable | None = None) -> BifreeReport:
    """Scan all mixed words up to a degree for nonvanishing cumulants.

    ``model`` must expose ``moment`` and ``pair_alphabets``; every word using
    at least two pairs gets its full-interval cumulant computed from plain
    moments, so nothing is assumed about the construction of the joint.
    """
    if table is None:
        table = CumulantTable(model)
    alphabet = tuple(a for letters in model.pair_alphabets() for a in letters)
    witnesses: list[dict] = []
    count = 0
    for n in range(2, max_degree + 1):
        for word in itertools.product(alphabet, repeat=n):
            if len({a.pair for a in word}) < 2:
                continue
            count += 1
            value = table.kappa_full(word)
            if value:
                if len(witnesses) < witness_cap:
                    witnesses.append({
                        "word": model.format_word(word),
                        "chi": str(chi_of(word)),
                        "kappa": str(value),
                    })
                else:
                    return BifreeReport(False, max_degree, witnesses, witness_cap)
    return BifreeReport(not witnesses, max_degree, witnesses, witness_cap)
