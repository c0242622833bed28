import itertools
from fractions import Fraction

import pytest

from bifree.chi import ChiMap
from bifree.cumulants import CumulantTable
from bifree.distributions import (
    DegreeExceededError,
    MatrixStateModel,
    ShiftBiHaarModel,
    TableModel,
)
from bifree.partitions import NotInBncError, SetPartition, bnc_partitions
from bifree.scalars import ONE, ZERO, Scalar
from bifree.words import chi_of, subword


@pytest.fixture
def shift():
    return ShiftBiHaarModel()


@pytest.fixture
def zw():
    return MatrixStateModel([[1, 0], [0, 0]], [[0, 0], [1, 0]],
                            pair=1, names=("Z", "W"))


def test_order_one_cumulant_is_the_moment(shift, zw):
    for model in (shift, zw):
        table = CumulantTable(model)
        for a in model.alphabet():
            assert table.kappa((a,)) == model.moment((a,))


def test_shift_low_order_values(shift):
    table = CumulantTable(shift)
    assert table.kappa((shift.x(), shift.y_star())) == ONE
    alternating = (shift.x(), shift.x_star(), shift.x(), shift.x_star())
    assert table.kappa(alternating) == Scalar(-1)


def test_matrix_second_cumulant_value(zw):
    # kappa(Z, Z) = phi(ZZ) - phi(Z)^2, straight from the 2x2 entries
    phi_zz = zw.moment((zw.x(), zw.x()))
    phi_z = zw.moment((zw.x(),))
    expected = phi_zz - phi_z * phi_z
    assert expected == Scalar(Fraction(1, 4))
    assert CumulantTable(zw).kappa((zw.x(), zw.x())) == expected


def test_moment_cumulant_round_trip(shift, zw):
    for model, depth in ((shift, 5), (zw, 4)):
        table = CumulantTable(model)
        for n in range(1, depth + 1):
            for word in itertools.product(model.alphabet(), repeat=n):
                assert table.moment_from_cumulants(word) == model.moment(word)


def test_partitioned_cumulants_are_multiplicative(shift, zw):
    for model in (shift, zw):
        table = CumulantTable(model)
        for n in (2, 3, 4):
            words = list(itertools.product(model.alphabet(), repeat=n))[::5]
            for word in words:
                for tau in bnc_partitions(chi_of(word)):
                    split = ONE
                    for block in tau.blocks:
                        split = split * table.kappa(subword(word, block))
                    assert table.kappa(word, tau) == split


def test_recursion_agrees_with_mobius_definition(shift, zw):
    for model in (shift, zw):
        fast = CumulantTable(model)
        slow = CumulantTable(model, paranoid=True)
        for n in range(1, 5):
            for word in itertools.product(model.alphabet(), repeat=n):
                assert fast.kappa(word) == slow.kappa(word)
                assert fast.kappa_direct(word) == fast.kappa(word)
                for tau in bnc_partitions(chi_of(word)):
                    assert fast.kappa_direct(word, tau) == fast.kappa(word, tau)


def test_kappa_validates_partition_membership(shift):
    table = CumulantTable(shift)
    word = (shift.x(), shift.x(), shift.x(), shift.x())
    with pytest.raises(NotInBncError):
        table.kappa(word, SetPartition.from_text("{1,3|2,4}"))
    with pytest.raises(ValueError):
        table.kappa(word, SetPartition.one(3))
    with pytest.raises(ValueError):
        table.kappa(())


def test_degree_cap_applies_to_queries(shift):
    table = CumulantTable(shift, max_degree=3)
    with pytest.raises(DegreeExceededError):
        table.kappa((shift.x(),) * 4)


def test_grouped_cumulants_match_grouped_moments(shift, zw):
    for model in (shift, zw):
        table = CumulantTable(model)
        x, xs, y, ys = model.alphabet()
        cases = [
            [(x,), (xs,)],
            [(x, xs), (y, ys)],
            [(x, x), (xs, xs), (y, ys)],
            [(xs,), (x, x, xs), (ys, y)],
        ]
        for segments in cases:
            assert table.kappa_grouped(segments) == \
                table.kappa_grouped_direct(segments)


def test_singleton_grouping_degenerates_to_plain_cumulant(shift):
    table = CumulantTable(shift)
    for n in range(1, 5):
        for word in itertools.islice(
                itertools.product(shift.alphabet(), repeat=n), 0, None, 7):
            assert table.kappa_grouped([(a,) for a in word]) == table.kappa(word)


def test_grouped_validation(shift):
    table = CumulantTable(shift)
    with pytest.raises(ValueError):
        table.kappa_grouped([])
    with pytest.raises(ValueError):
        table.kappa_grouped([()])
    with pytest.raises(ValueError):
        table.kappa_grouped([(shift.x(), shift.y())])


def test_cumulants_of_sparse_table_model():
    # two nonzero moments, everything else zero: inversion must reproduce them
    probe = TableModel({}, 6, default_zero=True)
    x, xs = probe.x(), probe.x_star()
    entries = {(x, xs): Scalar(Fraction(1, 3)), (xs, x): Scalar(2)}
    model = TableModel(entries, 6, default_zero=True)
    table = CumulantTable(model)
    assert table.kappa((x, xs)) == Scalar(Fraction(1, 3))
    assert table.moment_from_cumulants((x, xs, xs, x)) == model.moment((x, xs, xs, x))
