import itertools
from fractions import Fraction

import pytest

from bifree.cumulants import CumulantTable
from bifree.distributions import (
    ForeignLetterError,
    MatrixStateModel,
    ShiftBiHaarModel,
    TableModel,
)
from bifree.product import (
    DerivedPairModel,
    ExpandedJoint,
    bifree_product,
    check_bifree,
)
from bifree.scalars import ONE, ZERO, Scalar


def shift(pair=0):
    return ShiftBiHaarModel(pair=pair)


def zw(pair=1):
    return MatrixStateModel([[1, 0], [0, 0]], [[0, 0], [1, 0]],
                            pair=pair, names=("Z", "W"))


def test_single_pair_product_reproduces_the_input():
    s = shift()
    joint = bifree_product(s)
    for n in range(0, 5):
        for word in itertools.product(s.alphabet(), repeat=n):
            assert joint.moment(word) == s.moment(word)


def test_two_unitary_pairs_mixed_moment_vanishes():
    u, v = shift(0), shift(1)
    joint = bifree_product(u, v)
    assert joint.moment((u.x(), v.x())) == ZERO
    assert joint.moment((u.x(), u.x_star())) == ONE


def test_duplicate_pair_ids_rejected():
    with pytest.raises(ValueError):
        bifree_product(shift(0), shift(0))


def test_free_product_moments_of_the_quarter_example():
    u, m = shift(0), zw(1)
    joint = bifree_product(u, m)
    # factor values of the interval partition in the quarter computation
    left = joint.moment((m.x_star(), u.x_star(), u.x(), m.x()))
    right = joint.moment((m.y_star(), u.y_star(), u.y(), m.y()))
    assert left == Scalar(Fraction(1, 2))
    assert right == Scalar(Fraction(1, 2))
    assert left * right == Scalar(Fraction(1, 4))
    # centering of the cross terms
    assert joint.moment((m.x_star(), u.x_star())) == ZERO
    assert joint.moment((u.x(), m.x())) == ZERO


def test_restriction_to_each_pair_is_exact():
    u, m = shift(0), zw(1)
    joint = bifree_product(u, m)
    for model in (u, m):
        for n in range(1, 5):
            for word in itertools.product(model.alphabet(), repeat=n):
                assert joint.moment(word) == model.moment(word)


def test_product_is_associative_at_desk_scale():
    a, b, c = shift(0), shift(1), shift(2)
    inner = bifree_product(b, c)

    def freeze(pair_model, depth=5):
        # each constituent as seen through the inner joint, frozen to a table
        entries = {}
        for n in range(0, depth + 1):
            for word in itertools.product(pair_model.alphabet(), repeat=n):
                entries[word] = inner.moment(word)
        return TableModel(entries, depth, pair=pair_model.pair,
                          names=pair_model.names)

    nested = bifree_product(a, freeze(b), freeze(c))
    flat = bifree_product(a, b, c)
    alphabet = flat.alphabet()
    for n in range(1, 5):
        for word in itertools.product(alphabet, repeat=n):
            assert flat.moment(word) == nested.moment(word)
    for word in itertools.islice(itertools.product(alphabet, repeat=5),
                                 0, None, 7):
        assert flat.moment(word) == nested.moment(word)


def test_check_bifree_accepts_the_construction():
    joint = bifree_product(shift(0), shift(1))
    report = check_bifree(joint, 4)
    assert report.verdict and not report.witnesses


def test_check_bifree_flags_a_planted_correlation():
    # two pairs whose mixed second moment does not factor
    a = TableModel({}, 6, default_zero=True, pair=0)
    b = TableModel({}, 6, default_zero=True, pair=1)
    xa, xb = a.x(), b.x()

    class Glued:
        degree_bound = 6

        def pair_alphabets(self):
            return (a.alphabet(), b.alphabet())

        def moment(self, word):
            word = tuple(word)
            if not word:
                return ONE
            if word == (xa, xb):
                return ONE
            return ZERO

        def kappa_hint(self, word):
            return True

        def format_word(self, word):
            return " ".join(f"{l.leg}{'*' if l.star else ''}@{l.pair + 1}"
                            for l in word)

    report = check_bifree(Glued(), 2)
    assert not report.verdict
    assert report.witnesses[0]["kappa"] == "1"
    assert report.witnesses[0]["word"] == "X@1 X@2"


def test_derived_pair_products_and_token_forms():
    u, m = shift(0), zw(1)
    joint = bifree_product(u, m)
    prod = DerivedPairModel(joint, {(u.x(), m.x()): ONE}, {(m.y(), u.y()): ONE},
                            pair=9, names=("XZ", "WY"))
    # moments expand into the ambient joint
    assert prod.moment((prod.x(), prod.x_star())) == \
        joint.moment((u.x(), m.x(), m.x_star(), u.x_star()))
    assert prod.format_word((prod.x(), prod.y_star())) == "XZ WY*"


def test_derived_pair_validation():
    u = shift(0)
    with pytest.raises(ValueError):
        DerivedPairModel(u, {}, {(u.y(),): ONE}, pair=1)
    with pytest.raises(ValueError):
        DerivedPairModel(u, {(u.y(),): ONE}, {(u.y(),): ONE}, pair=1)
    with pytest.raises(ValueError):
        DerivedPairModel(u, {(): ONE}, {(u.y(),): ONE}, pair=1)


def test_expanded_joint_for_self_adjoint_legs():
    s = shift(0)
    p1 = DerivedPairModel(s, {(s.x(), s.x_star()): ONE},
                          {(s.y_star(), s.y()): ONE}, pair=5)
    p2 = DerivedPairModel(s, {(s.x_star(), s.x()): ONE},
                          {(s.y(), s.y_star()): ONE}, pair=6)
    ej = ExpandedJoint(s, [p1, p2])
    # legs are self-adjoint, so the scan alphabet drops the starred letters
    assert all(len(letters) == 2 for letters in ej.pair_alphabets())
    word = (p1.x(), p2.y())
    assert ej.moment(word) == ONE
    report = check_bifree(ej, 3)
    assert report.verdict


def test_expanded_joint_requires_shared_base():
    s, t = shift(0), shift(1)
    p1 = DerivedPairModel(s, {(s.x(),): ONE}, {(s.y(),): ONE}, pair=5)
    p2 = DerivedPairModel(t, {(t.x(),): ONE}, {(t.y(),): ONE}, pair=6)
    with pytest.raises(ValueError):
        ExpandedJoint(s, [p1, p2])


def test_joint_token_parsing():
    u, m = shift(0), zw(1)
    joint = bifree_product(u, m)
    word = joint.parse_word("ul@1 Z*@2")
    assert word == (u.x(), m.x_star())
    assert joint.parse_word("ul Z*") == word  # unambiguous, suffix optional
    with pytest.raises(ForeignLetterError):
        joint.parse_word("nope@1")
    with pytest.raises(ForeignLetterError):
        joint.parse_word("Z@7")
    two_shifts = bifree_product(shift(0), shift(1))
    with pytest.raises(ForeignLetterError):
        two_shifts.parse_word("ul")  # ambiguous without a suffix


def test_joint_cumulants_of_mixed_words_vanish():
    joint = bifree_product(shift(0), zw(1))
    table = CumulantTable(joint)
    u, m = joint.pairs
    assert table.kappa((u.x(), m.x())) == ZERO
    assert table.kappa((u.x(), m.x(), m.x_star(), u.x_star())) == ZERO
