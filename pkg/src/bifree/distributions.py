"""Moment oracles for two-faced operator pairs.

A pair model owns a four-letter *-alphabet and evaluates exact joint
*-moments of words over it.  Concrete models:

* :class:`ShiftBiHaarModel` -- the commuting-faces unitary pair whose only
  nonvanishing power moments are the balanced ones;
* :class:`MatrixStateModel` -- a pair of explicit matrices under the
  normalized trace;
* :class:`TensorMatrixModel` -- a matrix pair whose entries are formal words
  of an ambient model, evaluated entrywise and then traced;
* :class:`TableModel` -- an explicit finite moment table.

All models are unital (the empty word has moment 1) and memoize on the
canonical word form.  Values are exact scalars throughout.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Mapping, Sequence

from .chi import LEFT
from .partitions import SetPartition
from .scalars import ONE, ZERO, Scalar, parse_scalar
from .words import Letter, Word, exponent_sum, star_word, subword

__all__ = [
    "ForeignLetterError",
    "DegreeExceededError",
    "MissingMomentError",
    "PairDistribution",
    "ShiftBiHaarModel",
    "MatrixStateModel",
    "TensorMatrixModel",
    "TableModel",
    "phi_pi",
    "moment_restricted",
    "table_model",
    "load_model",
    "parse_model",
]

DEFAULT_DEGREE_BOUND = 48


class ForeignLetterError(ValueError):
    """A word uses a letter outside the model's alphabet."""


class DegreeExceededError(ValueError):
    """A word is longer than the model's degree bound."""


class MissingMomentError(ValueError):
    """A table model was queried for an entry it does not hold."""


class PairDistribution:
    """Base class: a two-faced *-alphabet plus a memoized moment oracle."""

    def __init__(self, pair: int = 0, degree_bound: int = DEFAULT_DEGREE_BOUND,
                 names: tuple[str, str] = ("X", "Y")):
        self.pair = pair
        self.degree_bound = degree_bound
        self.names = names
        self._moments: dict[Word, Scalar] = {(): ONE}

    # -- alphabet ---------------------------------------------------------

    def x(self) -> Letter:
        return Letter(self.pair, "X", False)

    def x_star(self) -> Letter:
        return Letter(self.pair, "X", True)

    def y(self) -> Letter:
        return Letter(self.pair, "Y", False)

    def y_star(self) -> Letter:
        return Letter(self.pair, "Y", True)

    def alphabet(self) -> tuple[Letter, ...]:
        """The four letters in canonical order: X, X*, Y, Y*."""
        return (self.x(), self.x_star(), self.y(), self.y_star())

    # -- moments ----------------------------------------------------------

    def validate_word(self, word: Word) -> None:
        own = set(self.alphabet())
        for a in word:
            if a not in own:
                raise ForeignLetterError(f"letter {a} is not in this model's alphabet")
        if len(word) > self.degree_bound:
            raise DegreeExceededError(
                f"word of length {len(word)} exceeds degree bound {self.degree_bound}")

    def moment(self, word: Word) -> Scalar:
        """The joint *-moment of a word; 1 on the empty word."""
        word = tuple(word)
        value = self._moments.get(word)
        if value is None:
            self.validate_word(word)
            value = self._moment(word)
            self._moments[word] = value
        return value

    def _moment(self, word: Word) -> Scalar:
        raise NotImplementedError

    def kappa_hint(self, word: Word) -> bool:
        """Conservative support hint: may the cumulant of ``word`` be nonzero?

        Must be derivable from the moment structure alone.  The default gives
        no information.
        """
        return True

    # -- token form -------------------------------------------------------

    def token_of(self, letter: Letter) -> str:
        name = self.names[0] if letter.leg == "X" else self.names[1]
        return name + "*" if letter.star else name

    def format_word(self, word: Word) -> str:
        return " ".join(self.token_of(a) for a in word)

    def parse_word(self, text: str) -> Word:
        """Parse whitespace-separated tokens like ``X X* Y*`` into a word."""
        table = {self.token_of(a): a for a in self.alphabet()}
        letters = []
        for tok in text.split():
            letter = table.get(tok)
            if letter is None:
                raise ForeignLetterError(
                    f"unknown token {tok!r}; expected one of {sorted(table)}")
            letters.append(letter)
        return tuple(letters)

    # -- derived moment forms ----------------------------------------------

    def moment_restricted(self, word: Word, positions: Iterable[int]) -> Scalar:
        return self.moment(subword(word, positions))

    def phi_pi(self, word: Word, p: SetPartition) -> Scalar:
        return phi_pi(self, word, p)


def moment_restricted(model, word: Word, positions: Iterable[int]) -> Scalar:
    """Moment of the subword at the given positions, in increasing order."""
    return model.moment(subword(word, positions))


def phi_pi(model, word: Word, p: SetPartition) -> Scalar:
    """Product over the blocks of ``p`` of restricted moments."""
    if len(word) != p.n:
        raise ValueError(f"word length {len(word)} != partition size {p.n}")
    acc = ONE
    for block in p.blocks:
        acc = acc * model.moment(subword(word, block))
        if not acc:
            return ZERO
    return acc


class ShiftBiHaarModel(PairDistribution):
    """The two-faced unitary pair with commuting faces and balanced moments.

    Faces commute and both legs are unitary, so every word reduces to a
    product of powers of the two legs; the moment is 1 exactly when the
    total exponent vanishes and 0 otherwise.
    """

    def __init__(self, pair: int = 0, degree_bound: int = 200,
                 names: tuple[str, str] = ("ul", "ur")):
        super().__init__(pair, degree_bound, names)

    def _moment(self, word: Word) -> Scalar:
        return ONE if exponent_sum(word) == 0 else ZERO

    def kappa_hint(self, word: Word) -> bool:
        # every block moment carries a balanced-exponent factor, so an
        # unbalanced word has all partitioned moments equal to zero
        return exponent_sum(word) == 0


Matrix = tuple[tuple[Scalar, ...], ...]


def _mat_from_rows(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    d = len(rows)
    for row in rows:
        if len(row) != d:
            raise ValueError("matrix must be square")
    return tuple(tuple(v if isinstance(v, Scalar) else Scalar(v) for v in row)
                 for row in rows)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(d)), ZERO) for j in range(d))
        for i in range(d))


def _mat_adjoint(a: Matrix) -> Matrix:
    d = len(a)
    return tuple(tuple(a[j][i].conjugate() for j in range(d)) for i in range(d))


def _mat_trace(a: Matrix) -> Scalar:
    return sum((a[i][i] for i in range(len(a))), ZERO)


class MatrixStateModel(PairDistribution):
    """A pair of explicit ``d x d`` matrices under the normalized trace."""

    def __init__(self, x_rows: Sequence[Sequence], y_rows: Sequence[Sequence],
                 pair: int = 0, degree_bound: int = 64,
                 names: tuple[str, str] = ("X", "Y")):
        super().__init__(pair, degree_bound, names)
        x_mat = _mat_from_rows(x_rows)
        y_mat = _mat_from_rows(y_rows)
        if len(x_mat) != len(y_mat):
            raise ValueError("generator matrices must share a dimension")
        self.dimension = len(x_mat)
        self._mats = {
            self.x(): x_mat,
            self.x_star(): _mat_adjoint(x_mat),
            self.y(): y_mat,
            self.y_star(): _mat_adjoint(y_mat),
        }

    def _moment(self, word: Word) -> Scalar:
        d = self.dimension
        acc = tuple(tuple(ONE if i == j else ZERO for j in range(d)) for i in range(d))
        for a in word:
            acc = _mat_mul(acc, self._mats[a])
        return _mat_trace(acc) / Scalar(d)


# -- word polynomials ------------------------------------------------------
#
# A word polynomial is a finite formal linear combination of words of some
# ambient model, stored as a mapping word -> scalar with no zero values.
# They serve as matrix entries in TensorMatrixModel and as leg expansions of
# the derived pairs built in bifree.product.

WordPoly = dict


def poly(*terms: tuple[Word, Scalar]) -> WordPoly:
    out: dict[Word, Scalar] = {}
    for word, coeff in terms:
        if coeff:
            out[tuple(word)] = out.get(tuple(word), ZERO) + coeff
    return {w: c for w, c in out.items() if c}


def poly_word(word: Word) -> WordPoly:
    return {tuple(word): ONE}


def poly_add(a: WordPoly, b: WordPoly) -> WordPoly:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w, ZERO) + c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def poly_mul(a: WordPoly, b: WordPoly) -> WordPoly:
    out: dict[Word, Scalar] = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            s = out.get(w, ZERO) + ca * cb
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def poly_star(a: WordPoly) -> WordPoly:
    return {star_word(w): c.conjugate() for w, c in a.items()}


def poly_eval(model, a: WordPoly) -> Scalar:
    acc = ZERO
    for w, c in a.items():
        acc = acc + c * model.moment(w)
    return acc


class TensorMatrixModel(PairDistribution):
    """A matrix pair over an ambient model, under the entrywise state + trace.

    Entries are word polynomials of the ambient model; the moment of a word
    in the matrix letters is the normalized trace of the entrywise-evaluated
    matrix product.
    """

    def __init__(self, base: PairDistribution, x_entries: Sequence[Sequence[WordPoly]],
                 y_entries: Sequence[Sequence[WordPoly]], pair: int = 100,
                 degree_bound: int = 12, names: tuple[str, str] = ("Z", "W")):
        super().__init__(pair, degree_bound, names)
        self.base = base
        d = len(x_entries)
        if any(len(row) != d for row in x_entries) or len(y_entries) != d \
                or any(len(row) != d for row in y_entries):
            raise ValueError("entry grids must be square and share a dimension")
        self.dimension = d

        def adj(entries):
            return tuple(tuple(poly_star(entries[j][i]) for j in range(d))
                         for i in range(d))

        x_grid = tuple(tuple(dict(e) for e in row) for row in x_entries)
        y_grid = tuple(tuple(dict(e) for e in row) for row in y_entries)
        self._grids = {
            self.x(): x_grid,
            self.x_star(): adj(x_grid),
            self.y(): y_grid,
            self.y_star(): adj(y_grid),
        }

    def _moment(self, word: Word) -> Scalar:
        d = self.dimension
        acc = tuple(tuple(poly_word(()) if i == j else {} for j in range(d))
                    for i in range(d))
        for a in word:
            grid = self._grids[a]
            acc = tuple(
                tuple(_poly_dot(acc[i], grid, j, d) for j in range(d))
                for i in range(d))
        total = ZERO
        for i in range(d):
            total = total + poly_eval(self.base, acc[i][i])
        return total / Scalar(d)


def _poly_dot(row: Sequence[WordPoly], grid, j: int, d: int) -> WordPoly:
    out: WordPoly = {}
    for k in range(d):
        if row[k] and grid[k][j]:
            out = poly_add(out, poly_mul(row[k], grid[k][j]))
    return out


class TableModel(PairDistribution):
    """An explicit finite moment table.

    The empty word always has moment 1.  A missing word of admissible length
    is an error unless ``default_zero`` is set, in which case it is 0.
    """

    def __init__(self, entries: Mapping[Word, Scalar], degree_bound: int,
                 default_zero: bool = False, pair: int = 0,
                 names: tuple[str, str] = ("X", "Y")):
        super().__init__(pair, degree_bound, names)
        self.default_zero = default_zero
        self.entries = {tuple(w): (v if isinstance(v, Scalar) else Scalar(v))
                        for w, v in entries.items()}
        if self.entries.get((), ONE) != ONE:
            raise ValueError("the empty word must have moment 1")
        self.entries[()] = ONE

    def _moment(self, word: Word) -> Scalar:
        value = self.entries.get(word)
        if value is None:
            if self.default_zero:
                return ZERO
            raise MissingMomentError(
                f"no stored moment for word {self.format_word(word)!r}")
        return value


def table_model(entries: Mapping[Word, Scalar], degree_bound: int,
                default_zero: bool = False, pair: int = 0,
                names: tuple[str, str] = ("X", "Y")) -> TableModel:
    return TableModel(entries, degree_bound, default_zero, pair, names)


def tabulate(model: PairDistribution, degree: int) -> TableModel:
    """Freeze a model's moments up to a degree into an explicit table."""
    import itertools

    entries: dict[Word, Scalar] = {(): ONE}
    for n in range(1, degree + 1):
        for word in itertools.product(model.alphabet(), repeat=n):
            entries[word] = model.moment(word)
    return TableModel(entries, degree, default_zero=False, pair=model.pair,
                      names=model.names)


# -- model files -----------------------------------------------------------

def parse_model(spec: Mapping, pair: int = 0) -> PairDistribution:
    """Build a model from its JSON object form.

    Types: ``shift_bihaar``, ``matrix_state`` (flat row-major entry strings)
    and ``table`` (entries keyed by token words).
    """
    kind = spec.get("type")
    if kind == "shift_bihaar":
        return ShiftBiHaarModel(pair=pair)
    if kind == "matrix_state":
        d = int(spec["dimension"])
        names = tuple(spec.get("names", ("X", "Y")))

        def rows(flat):
            vals = [parse_scalar(s) for s in flat]
            if len(vals) != d * d:
                raise ValueError(f"expected {d * d} entries, got {len(vals)}")
            return [vals[i * d:(i + 1) * d] for i in range(d)]

        return MatrixStateModel(rows(spec["x"]), rows(spec["y"]), pair=pair,
                                degree_bound=int(spec.get("degree", 64)),
                                names=names)
    if kind == "table":
        names = tuple(spec.get("names", ("X", "Y")))
        degree = int(spec["degree"])
        probe = PairDistribution(pair=pair, names=names)
        entries = {probe.parse_word(k): parse_scalar(v)
                   for k, v in spec.get("entries", {}).items()}
        return TableModel(entries, degree, bool(spec.get("default_zero", False)),
                          pair=pair, names=names)
    raise ValueError(f"unknown model type: {kind!r}")


def load_model(path: str, pair: int = 0) -> PairDistribution:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(json.load(fh), pair=pair)
