import itertools
import random
from fractions import Fraction

import pytest

from bifree.chi import ChiMap
from bifree.partitions import (
    BncContext,
    NotInBncError,
    SetPartition,
    SizeLimitError,
    bnc_closure,
    bnc_partitions,
    catalan,
    connects_consecutive,
    is_bnc,
    join,
    kreweras_bnc,
    kreweras_nc,
    mobius_bnc,
    mobius_nc,
    mobius_nc_recursive,
    nc_partitions,
)
from bifree.scalars import Scalar


def all_chis(n):
    for sides in itertools.product("lr", repeat=n):
        yield ChiMap("".join(sides))


# -- canonical form ----------------------------------------------------------

def test_canonical_form_and_text_round_trip():
    p = SetPartition(6, [[3, 6], [5, 2], [1, 4]])
    assert p.to_text() == "{1,4|2,5|3,6}"
    assert SetPartition.from_text(p.to_text()) == p
    assert p.to_json() == [[1, 4], [2, 5], [3, 6]]


def test_partition_validation():
    with pytest.raises(ValueError):
        SetPartition(3, [[1, 2]])
    with pytest.raises(ValueError):
        SetPartition(3, [[1, 2], [2, 3]])
    with pytest.raises(ValueError):
        SetPartition(2, [[1, 2, 3]])


def test_shorthand_parsing():
    assert SetPartition.from_text("0", n=3) == SetPartition.zero(3)
    assert SetPartition.from_text("1", n=3) == SetPartition.one(3)


def test_catalan_recurrence():
    for n in range(9):
        assert catalan(n + 1) == sum(catalan(k) * catalan(n - k) for k in range(n + 1))


# -- crossing tests ----------------------------------------------------------

def crossing_oracle(p):
    # literal four-point interlacing scan
    for u, v in itertools.combinations(p.blocks, 2):
        for a, c in itertools.combinations(u, 2):
            for b, d in itertools.combinations(v, 2):
                if a < b < c < d or b < a < d < c:
                    return True
    return False


def test_noncrossing_examples():
    assert not SetPartition.from_text("{1,3|2,4}").is_noncrossing()
    assert SetPartition.from_text("{1,4|2,3}").is_noncrossing()
    assert SetPartition.one(4).is_noncrossing()


def test_noncrossing_matches_interlacing_oracle():
    for n in range(1, 7):
        base = list(range(1, n + 1))
        for blocks in all_partitions(base):
            p = SetPartition(n, blocks)
            assert p.is_noncrossing() == (not crossing_oracle(p))


def all_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for blocks in all_partitions(rest):
        yield [[first]] + blocks
        for k in range(len(blocks)):
            yield blocks[:k] + [[first] + blocks[k]] + blocks[k + 1:]


def test_nc_count_matches_catalan():
    for n in range(1, 9):
        assert len(nc_partitions(n)) == catalan(n)


def test_nc_enumeration_limit():
    with pytest.raises(SizeLimitError):
        nc_partitions(13)


# -- permutation action and membership ---------------------------------------

def test_apply_perm_worked_example():
    s = ChiMap("lllrrl").s_chi
    p = SetPartition.from_text("{1,4|2,5|3,6}")
    pulled = p.apply(s.inverse)
    assert pulled == SetPartition.from_text("{1,6|2,5|3,4}")
    assert pulled.is_noncrossing()


def test_apply_identity_and_zero():
    s = ChiMap("ll").s_chi
    p = SetPartition.from_text("{1|2}")
    assert p.apply(s) == p
    swap = ChiMap("rr").s_chi
    assert p.apply(swap) == p


def test_is_bnc_worked_example():
    tau = SetPartition.from_text("{1,4|2,5|3,6}")
    assert is_bnc(ChiMap("lllrrl"), tau)
    assert not is_bnc(ChiMap("llllll"), tau)
    assert is_bnc(ChiMap("lrlrlr"), SetPartition.one(6))


def test_bnc_enumeration_counts():
    assert len(bnc_partitions(ChiMap("l"))) == 1
    for chi in all_chis(4):
        assert len(bnc_partitions(chi)) == 14
    assert len(bnc_partitions(ChiMap("lllrrl"))) == 132


def test_bnc_members_all_pass_membership():
    for chi in all_chis(5):
        for p in bnc_partitions(chi):
            assert is_bnc(chi, p)


# -- join and closure ---------------------------------------------------------

def test_join_examples():
    a = SetPartition.from_text("{1,3|2,4}")
    b = SetPartition.from_text("{1,2|3,4}")
    assert join(a, b) == SetPartition.one(4)
    p = SetPartition.from_text("{1,2|3|4}")
    assert join(p, SetPartition.zero(4)) == p
    q = SetPartition.from_text("{1|2,3|4}")
    assert join(p, q) == SetPartition.from_text("{1,2,3|4}")


def nc_closure_oracle(chi, p):
    # brute-force minimum of the coarsenings inside the lattice
    candidates = [q for q in bnc_partitions(chi) if p.leq(q)]
    best = candidates[0]
    for q in candidates[1:]:
        if q.leq(best):
            best = q
    for q in candidates:
        assert best.leq(q)
    return best


def test_bnc_closure_examples_and_oracle():
    chi = ChiMap("llll")
    crossing = SetPartition.from_text("{1,3|2,4}")
    assert bnc_closure(chi, crossing) == SetPartition.one(4)
    for chi in all_chis(4):
        for p in bnc_partitions(chi):
            assert bnc_closure(chi, p) == p
        assert bnc_closure(chi, SetPartition.one(4)) == SetPartition.one(4)


def test_bnc_closure_is_the_minimum_coarsening():
    for n in (3, 4):
        base = list(range(1, n + 1))
        for chi in all_chis(n):
            for blocks in all_partitions(base):
                p = SetPartition(n, blocks)
                assert bnc_closure(chi, p) == nc_closure_oracle(chi, p)


# -- Moebius ------------------------------------------------------------------

def test_mobius_extreme_values():
    chi = ChiMap("llll")
    assert mobius_bnc(chi, SetPartition.zero(4), SetPartition.one(4)) == -5
    for tau in bnc_partitions(chi):
        assert mobius_bnc(chi, tau, tau) == 1


def test_mobius_product_example():
    chi = ChiMap("llrr")
    tau = SetPartition.from_text("{1,2|3,4}")
    assert mobius_bnc(chi, SetPartition.zero(4), tau) == 1


def test_mobius_zero_when_not_below():
    chi = ChiMap("llll")
    a = SetPartition.from_text("{1,2|3|4}")
    b = SetPartition.from_text("{1|2,3|4}")
    assert mobius_bnc(chi, a, b) == 0


def test_mobius_rejects_non_members():
    chi = ChiMap("llll")
    crossing = SetPartition.from_text("{1,3|2,4}")
    with pytest.raises(NotInBncError):
        mobius_bnc(chi, crossing, SetPartition.one(4))


def test_mobius_recursion_identity():
    # the defining property: summing over an interval telescopes to a delta
    for n in range(1, 6):
        for chi in all_chis(n):
            parts = bnc_partitions(chi)
            for tau in parts:
                for lam in parts:
                    if not tau.leq(lam):
                        continue
                    total = sum(mobius_bnc(chi, tau, rho)
                                for rho in parts if tau.leq(rho) and rho.leq(lam))
                    assert total == (1 if tau == lam else 0)


def test_mobius_formula_matches_recursive_definition():
    for n in range(1, 6):
        for p in nc_partitions(n):
            for q in nc_partitions(n):
                if p.leq(q):
                    assert mobius_nc(p, q) == mobius_nc_recursive(p, q)


# -- Kreweras -----------------------------------------------------------------

def interlaced_union_noncrossing(p, q):
    n = p.n
    blocks = [[2 * v - 1 for v in b] for b in p.blocks]
    blocks += [[2 * v for v in b] for b in q.blocks]
    return SetPartition(2 * n, blocks).is_noncrossing()


def kreweras_oracle(p):
    # the largest partition whose interlaced union with p stays non-crossing
    valid = [q for q in nc_partitions(p.n) if interlaced_union_noncrossing(p, q)]
    tops = [q for q in valid if all(r.leq(q) for r in valid)]
    assert len(tops) == 1
    return tops[0]


def test_kreweras_against_interlacing_oracle():
    for n in range(1, 6):
        for p in nc_partitions(n):
            assert kreweras_nc(p) == kreweras_oracle(p)


def test_kreweras_extremes():
    for n in range(1, 7):
        assert kreweras_nc(SetPartition.zero(n)) == SetPartition.one(n)
        assert kreweras_nc(SetPartition.one(n)) == SetPartition.zero(n)


def test_kreweras_is_a_bijection_with_rotation_square():
    seen = {kreweras_nc(p) for p in nc_partitions(4)}
    assert len(seen) == catalan(4)
    doubled = {p: kreweras_nc(kreweras_nc(p)) for p in nc_partitions(2)}
    assert set(doubled.values()) == set(nc_partitions(2))
    assert kreweras_nc(kreweras_nc(SetPartition.zero(2))) == SetPartition.zero(2)


def test_kreweras_rejects_crossing_input():
    with pytest.raises(ValueError):
        kreweras_nc(SetPartition.from_text("{1,3|2,4}"))


def test_kreweras_bnc_properties():
    for n in range(1, 6):
        for chi in all_chis(n):
            parts = bnc_partitions(chi)
            comp = {p: kreweras_bnc(chi, p) for p in parts}
            assert comp[SetPartition.zero(n)] == SetPartition.one(n)
            assert comp[SetPartition.one(n)] == SetPartition.zero(n)
            assert len(set(comp.values())) == len(parts)
            for tau in parts:
                for lam in parts:
                    assert tau.leq(lam) == comp[lam].leq(comp[tau])


def test_kreweras_bnc_constant_side_agrees_with_plain():
    for p in nc_partitions(5):
        assert kreweras_bnc(ChiMap("lllll"), p) == kreweras_nc(p)


def test_kreweras_bnc_rejects_non_member():
    with pytest.raises(NotInBncError):
        kreweras_bnc(ChiMap("llll"), SetPartition.from_text("{1,3|2,4}"))


# -- cancellation -------------------------------------------------------------

def test_cancellation_identity_small():
    rng = random.Random(11)
    for n in range(1, 5):
        for chi in all_chis(n):
            ctx = BncContext(chi)
            parts = ctx.partitions()
            for _ in range(3):
                d = {lam: Scalar(Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
                     for lam in parts}
                total = Scalar(0)
                for tau in parts:
                    comp = ctx.kreweras(tau)
                    inner = Scalar(0)
                    for lam in parts:
                        if lam.leq(comp):
                            inner = inner + d[lam]
                    total = total + inner * ctx.mobius(ctx.zero, tau)
                assert total == d[ctx.one]


# -- consecutive linking -------------------------------------------------------

def test_connects_consecutive_examples():
    chi = ChiMap("llll")
    assert connects_consecutive(chi, SetPartition.one(4))
    assert connects_consecutive(chi, SetPartition.from_text("{1,4|2,3}"))
    assert not connects_consecutive(chi, SetPartition.from_text("{1,2|3,4}"))


def test_connects_consecutive_validates_pairing():
    with pytest.raises(ValueError):
        connects_consecutive(ChiMap("lr"), SetPartition.one(2))
    with pytest.raises(ValueError):
        connects_consecutive(ChiMap("lll"), SetPartition.one(3))


def test_context_membership_and_caching():
    ctx = BncContext(ChiMap("lrrl"))
    assert SetPartition.one(4) in ctx
    assert len(ctx.partitions()) == 14
    tau = ctx.partitions()[3]
    assert ctx.mobius_to_one(tau) == ctx.mobius(tau, ctx.one)
