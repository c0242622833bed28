"""Executable verification suite.

Every check re-establishes one statement of the theory at desk scale by
exhaustive exact computation: lattice counts and Moebius values, the
cumulant spectrum of the commuting-unitary pair, the product/power/sum
closure properties of bi-R-diagonal pairs, the distribution-invariance
under multiplication by a commuting-unitary pair, and the exact
counterexample values that separate the near-miss statements.

Checks are deterministic for a fixed seed, independent of each other, and
report exact values as strings.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .chi import ChiMap
from .classifiers import (
    check_bi_haar,
    check_bi_r_diagonal,
    check_r_cyclic_2x2,
    check_star_bi_even,
    is_admissible_pattern,
)
from .cumulants import CumulantTable
from .distributions import MatrixStateModel, PairDistribution, ShiftBiHaarModel
from .partitions import (
    SetPartition,
    bnc_closure,
    bnc_partitions,
    catalan,
    connects_consecutive,
    join,
    kreweras_bnc,
    kreweras_nc,
    mobius_bnc,
    nc_partitions,
)
from .product import (
    DerivedPairModel,
    ExpandedJoint,
    bifree_product,
    check_bifree,
)
from .scalars import ONE, Scalar
from .words import Letter, Word, chi_of

__all__ = ["CheckResult", "SuiteReport", "CHECKS", "run_suite", "check_ids",
           "shift_pair", "projection_pair", "offdiag_even_pair"]


# ---------------------------------------------------------------------------
# model corpus builders

def shift_pair(pair: int = 0) -> ShiftBiHaarModel:
    return ShiftBiHaarModel(pair=pair)


def projection_pair(pair: int = 1) -> MatrixStateModel:
    """The 2x2 pair of a coordinate projection and a lower shift."""
    return MatrixStateModel([[1, 0], [0, 0]], [[0, 0], [1, 0]],
                            pair=pair, names=("Z", "W"))


def _rand_frac(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-2, 2)
    return Fraction(num, rng.randint(1, 2))


def offdiag_even_pair(pair: int, rng: random.Random) -> MatrixStateModel:
    """A random 2x2 pair with zero diagonals; all odd *-moments vanish."""
    z = [[0, _rand_frac(rng)], [_rand_frac(rng), 0]]
    w = [[0, _rand_frac(rng)], [_rand_frac(rng), 0]]
    return MatrixStateModel(z, w, pair=pair, names=("Z", "W"))


def _word_poly(word) -> dict:
    return {tuple(word): ONE}


def product_pair(base, left_factors, right_factors, pair, names):
    """The pair whose legs are the given products of ambient letters."""
    return DerivedPairModel(base, _word_poly(left_factors),
                            _word_poly(right_factors), pair=pair, names=names)


def _mirror_word(word: Word, target: PairDistribution) -> Word:
    """The word with the same leg/star pattern over another pair."""
    return tuple(Letter(target.pair, a.leg, a.star) for a in word)


# ---------------------------------------------------------------------------
# suite plumbing

@dataclass
class CheckResult:
    check_id: str
    passed: bool
    degree: int
    details: dict
    witnesses: list = field(default_factory=list)
    time_ms: float = 0.0

    def to_json(self, include_timing: bool = True) -> dict:
        out = {"id": self.check_id, "passed": self.passed, "degree": self.degree,
               "details": self.details, "witnesses": self.witnesses}
        if include_timing:
            out["time_ms"] = round(self.time_ms, 3)
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: list

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self, include_timing: bool = True) -> dict:
        return {"suite": self.suite, "seed": self.seed,
                "all_passed": self.all_passed,
                "checks": [r.to_json(include_timing) for r in self.results]}


@dataclass
class _Env:
    degree: int
    seed: int
    paranoid: bool

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{tag}:{self.seed}")

    def table(self, model) -> CumulantTable:
        return CumulantTable(model, paranoid=self.paranoid)


def _all_chis(n: int):
    for sides in itertools.product("lr", repeat=n):
        yield ChiMap("".join(sides))


# ---------------------------------------------------------------------------
# lattice checks

def _check_bnc_catalan(env: _Env):
    counts = {}
    for n in range(1, env.degree + 1):
        expected = catalan(n)
        base = [p.blocks for p in nc_partitions(n)]
        for chi in _all_chis(n):
            images = chi.s_chi.images
            seen = set()
            for blocks in base:
                seen.add(tuple(sorted(tuple(sorted(images[v - 1] for v in b))
                                      for b in blocks)))
            if len(seen) != expected:
                return False, {"failed_at": str(chi)}, []
            if n <= 6:
                from .partitions import is_bnc
                for blocks in seen:
                    if not is_bnc(chi, SetPartition(n, blocks)):
                        return False, {"failed_at": str(chi)}, []
        counts[n] = expected
    return True, {"counts": {str(k): v for k, v in counts.items()}}, []


def _check_mobius_catalan(env: _Env):
    # extreme interval values for every side map
    for n in range(1, env.degree + 1):
        expected = (-1) ** (n - 1) * catalan(n - 1)
        for chi in _all_chis(n):
            got = mobius_bnc(chi, SetPartition.zero(n), SetPartition.one(n))
            if got != expected:
                return False, {"n": n, "chi": str(chi), "got": got,
                               "expected": expected}, []
    # closed formula against the defining recursion on all intervals
    for n in range(1, min(5, env.degree) + 1):
        for chi in _all_chis(n):
            parts = bnc_partitions(chi)
            for lam in parts:
                for tau in parts:
                    if not tau.leq(lam):
                        continue
                    fast = mobius_bnc(chi, tau, lam)
                    slow = mobius_bnc(chi, tau, lam, recursive=True)
                    if fast != slow:
                        return False, {"chi": str(chi), "tau": tau.to_text(),
                                       "lambda": lam.to_text()}, []
    # block-product formula below the minimum, against the recursion
    for n in range(1, min(6, env.degree) + 1):
        chi = ChiMap("lr" * (n // 2) + "l" * (n % 2))
        zero = SetPartition.zero(n)
        for tau in bnc_partitions(chi):
            formula = 1
            for b in tau.blocks:
                formula *= (-1) ** (len(b) - 1) * catalan(len(b) - 1)
            if mobius_bnc(chi, zero, tau, recursive=True) != formula:
                return False, {"chi": str(chi), "tau": tau.to_text()}, []
    return True, {"max_n": env.degree}, []


def _check_cancellation(env: _Env):
    trials = 0
    for n in range(1, min(5, env.degree) + 1):
        for chi in _all_chis(n):
            parts = bnc_partitions(chi)
            zero = SetPartition.zero(n)
            one = SetPartition.one(n)
            mu = {tau: mobius_bnc(chi, zero, tau) for tau in parts}
            complements = {tau: kreweras_bnc(chi, tau) for tau in parts}
            below = {tau: [lam for lam in parts if lam.leq(complements[tau])]
                     for tau in parts}
            for shot in range(3):
                rng = env.rng(f"cancellation:{chi}:{shot}")
                d = {lam: Scalar(Fraction(rng.randint(-99, 99), rng.randint(1, 20)))
                     for lam in parts}
                total = Scalar(0)
                for tau in parts:
                    inner = Scalar(0)
                    for lam in below[tau]:
                        inner = inner + d[lam]
                    total = total + inner * mu[tau]
                if total != d[one]:
                    return False, {"chi": str(chi), "trial": shot}, []
                trials += 1
    return True, {"trials": trials}, []


def _check_kreweras(env: _Env):
    for n in range(1, min(5, env.degree) + 1):
        for chi in _all_chis(n):
            parts = bnc_partitions(chi)
            zero = SetPartition.zero(n)
            one = SetPartition.one(n)
            comp = {tau: kreweras_bnc(chi, tau) for tau in parts}
            if comp[zero] != one or comp[one] != zero:
                return False, {"chi": str(chi), "failure": "extremes"}, []
            if len(set(comp.values())) != len(parts):
                return False, {"chi": str(chi), "failure": "bijectivity"}, []
            for tau in parts:
                for lam in parts:
                    if tau.leq(lam) != comp[lam].leq(comp[tau]):
                        return False, {"chi": str(chi), "failure": "order-reversal",
                                       "tau": tau.to_text(), "lambda": lam.to_text()}, []
    # the constant-left complement is the plain non-crossing one
    for tau in nc_partitions(min(5, env.degree)):
        chi = ChiMap("l" * tau.n)
        if kreweras_bnc(chi, tau) != kreweras_nc(tau):
            return False, {"failure": "constant-side", "tau": tau.to_text()}, []
    return True, {"max_n": min(5, env.degree)}, []


def _check_even_blocks(env: _Env):
    cases = 0
    for m in range(1, env.degree // 2 + 1):
        for pat in itertools.product("lr", repeat=m):
            chi_hat = ChiMap("".join(s + s for s in pat))
            n2 = 2 * m
            zero_hat = SetPartition(n2, [(2 * i - 1, 2 * i) for i in range(1, m + 1)])
            one = SetPartition.one(n2)
            for tau in bnc_partitions(chi_hat):
                lhs = (bnc_closure(chi_hat, join(tau, zero_hat)) == one
                       and all(len(b) % 2 == 0 for b in tau.blocks))
                rhs = connects_consecutive(chi_hat, tau)
                if lhs != rhs:
                    return False, {"chi": str(chi_hat), "tau": tau.to_text(),
                                   "join-side": lhs, "linking-side": rhs}, []
                cases += 1
    return True, {"cases": cases}, []


# ---------------------------------------------------------------------------
# commuting-unitary pair checks

def _check_bihaar_cumulants(env: _Env):
    model = shift_pair()
    table = env.table(model)
    checked = 0
    for n in range(1, env.degree + 1):
        for word in itertools.product(model.alphabet(), repeat=n):
            if is_admissible_pattern(word).admissible:
                m = n // 2
                expected = Scalar((-1) ** (m - 1) * catalan(m - 1))
            else:
                expected = Scalar(0)
            if table.kappa_full(word) != expected:
                return False, {"word": model.format_word(word),
                               "got": str(table.kappa_full(word)),
                               "expected": str(expected)}, []
            checked += 1
    return True, {"words": checked}, []


def _check_bihaar_reduction(env: _Env):
    model = shift_pair()
    table = env.table(model)
    checked = 0

    def free_word(word):
        s = chi_of(word).s_chi
        return tuple(Letter(model.pair, "X", word[s(k) - 1].star)
                     for k in range(1, len(word) + 1))

    for n in range(1, min(6, env.degree) + 1):
        for word in itertools.product(model.alphabet(), repeat=n):
            if table.kappa_full(word) != table.kappa_full(free_word(word)):
                return False, {"word": model.format_word(word)}, []
            checked += 1
    for n in range(7, env.degree + 1):
        for chi in _all_chis(n):
            s = chi.s_chi
            for first_star in (False, True):
                stars = [False] * n
                for k in range(1, n + 1):
                    stars[s(k) - 1] = first_star ^ (k % 2 == 0)
                word = tuple(
                    Letter(model.pair, "X" if chi.side(i) == "l" else "Y", stars[i - 1])
                    for i in range(1, n + 1))
                if table.kappa_full(word) != table.kappa_full(free_word(word)):
                    return False, {"word": model.format_word(word)}, []
                checked += 1
    return True, {"words": checked}, []


def _check_products_formula(env: _Env):
    s0 = shift_pair(0)
    zw = projection_pair(1)
    joint = bifree_product(shift_pair(0), projection_pair(1))
    corpus = [("shift", s0), ("matrix", zw), ("product", joint)]
    checked = 0
    for tag, model in corpus:
        table = env.table(model)
        rng = env.rng(f"products-formula:{tag}")
        letters = model.alphabet()
        lefts = [a for a in letters if a.side == "l"]
        rights = [a for a in letters if a.side == "r"]
        for _ in range(60):
            m = rng.randint(2, 4)
            total = rng.randint(max(m, 2), env.degree)
            cuts = sorted(rng.sample(range(1, total), m - 1)) if m > 1 else []
            sizes = [b - a for a, b in zip([0] + cuts, cuts + [total])]
            segments = []
            for size in sizes:
                side_pool = lefts if rng.random() < 0.5 else rights
                segments.append(tuple(rng.choice(side_pool) for _ in range(size)))
            via_formula = table.kappa_grouped(segments)
            via_moments = table.kappa_grouped_direct(segments)
            if via_formula != via_moments:
                return False, {"model": tag,
                               "segments": [model.format_word(s) for s in segments],
                               "formula": str(via_formula),
                               "moments": str(via_moments)}, []
            checked += 1
        # singleton segmentation degenerates to the plain cumulant
        for n in range(1, 5):
            word = tuple(rng.choice(letters) for _ in range(n))
            if table.kappa_grouped([(a,) for a in word]) != table.kappa_full(word):
                return False, {"model": tag, "failure": "singleton-degeneration",
                               "word": model.format_word(word)}, []
            checked += 1
    return True, {"grouped_words": checked}, []


# ---------------------------------------------------------------------------
# theorem checks on operator pairs

def _check_sum_of_birdiag(env: _Env):
    s0, s1 = shift_pair(0), shift_pair(1)
    joint = bifree_product(s0, s1)
    summed = DerivedPairModel(
        joint,
        {(s0.x(),): ONE, (s1.x(),): ONE},
        {(s0.y(),): ONE, (s1.y(),): ONE},
        pair=10, names=("X+Z", "Y+W"))
    rep = check_bi_r_diagonal(summed, env.degree, table=env.table(summed))
    if not rep.verdict:
        return False, {"failure": "sum of two bi-R-diagonal pairs"}, rep.witnesses
    # control: adding a pair that is not bi-R-diagonal must break the property
    s = shift_pair(0)
    zw = projection_pair(1)
    joint2 = bifree_product(s, zw)
    mixed = DerivedPairModel(
        joint2,
        {(s.x(),): ONE, (zw.x(),): ONE},
        {(s.y(),): ONE, (zw.y(),): ONE},
        pair=11, names=("X+Z", "Y+W"))
    rep2 = check_bi_r_diagonal(mixed, min(4, env.degree), table=env.table(mixed))
    if rep2.verdict:
        return False, {"failure": "control sum unexpectedly bi-R-diagonal"}, []
    return True, {"degree": env.degree,
                  "control_witness": rep2.witnesses[0]}, []


def _check_prod_birdiag_any(env: _Env):
    s = shift_pair(0)
    zw = projection_pair(1)
    joint = bifree_product(s, zw)
    good = product_pair(joint, (s.x(), zw.x()), (zw.y(), s.y()),
                        pair=12, names=("XZ", "WY"))
    rep = check_bi_r_diagonal(good, env.degree, table=env.table(good))
    if not rep.verdict:
        return False, {"failure": "reversed-right product"}, rep.witnesses
    # without reversing the right factors the product can fail
    bad = product_pair(joint, (s.x(), zw.x()), (s.y(), zw.y()),
                       pair=13, names=("XZ", "YW"))
    rep2 = check_bi_r_diagonal(bad, min(4, env.degree), table=env.table(bad))
    if rep2.verdict:
        return False, {"failure": "plain-order control unexpectedly passed"}, []
    return True, {"degree": env.degree,
                  "control_witness": rep2.witnesses[0]}, []


def _check_quarter(env: _Env):
    s = shift_pair(0)
    zw = projection_pair(1)
    joint = bifree_product(s, zw)
    table = env.table(joint)
    segments = [
        (zw.x_star(), s.x_star()),  # Z* ul*
        (s.x(), zw.x()),            # ul Z
        (zw.y_star(), s.y_star()),  # W* ur*
        (s.y(), zw.y()),            # ur W
    ]
    expected = Scalar(Fraction(1, 4))
    direct = table.kappa_grouped_direct(segments)
    formula = table.kappa_grouped(segments)
    ok = direct == expected and formula == expected
    return ok, {"value": str(direct), "via_formula": str(formula),
                "expected": str(expected)}, []


def _check_prod_birdiag_both(env: _Env):
    s0, s1 = shift_pair(0), shift_pair(1)
    joint = bifree_product(s0, s1)
    prod = product_pair(joint, (s0.x(), s1.x()), (s0.y(), s1.y()),
                        pair=14, names=("XZ", "YW"))
    rep = check_bi_r_diagonal(prod, env.degree, table=env.table(prod))
    if not rep.verdict:
        return False, {"failure": "plain product of two bi-R-diagonal pairs"}, \
            rep.witnesses
    # second corpus member: commuting-unitary pair times a matrix-built
    # bi-R-diagonal pair, at reduced degree
    rng = env.rng("prod-birdiag-both")
    m1, m2 = offdiag_even_pair(1, rng), offdiag_even_pair(2, rng)
    j12 = bifree_product(m1, m2)
    inner = product_pair(j12, (m1.x(), m2.x()), (m2.y(), m1.y()),
                         pair=5, names=("XZ", "WY"))
    outer_joint = bifree_product(shift_pair(0), inner)
    s = shift_pair(0)
    outer = product_pair(outer_joint, (s.x(), inner.x()), (s.y(), inner.y()),
                         pair=15, names=("UA", "VB"))
    deg2 = min(4, env.degree)
    rep2 = check_bi_r_diagonal(outer, deg2, table=env.table(outer))
    if not rep2.verdict:
        return False, {"failure": "nested product", "degree": deg2}, rep2.witnesses
    return True, {"degree": env.degree, "nested_degree": deg2}, []


def _check_powers(env: _Env):
    s = shift_pair(0)
    for p in (2, 3):
        powered = DerivedPairModel(s, _word_poly((s.x(),) * p),
                                   _word_poly((s.y(),) * p),
                                   pair=16, names=(f"X^{p}", f"Y^{p}"))
        rep = check_bi_r_diagonal(powered, env.degree, table=env.table(powered))
        if not rep.verdict:
            return False, {"failure": f"power {p} of the unitary pair"}, rep.witnesses
    rng = env.rng("powers")
    m1, m2 = offdiag_even_pair(1, rng), offdiag_even_pair(2, rng)
    j12 = bifree_product(m1, m2)
    base = product_pair(j12, (m1.x(), m2.x()), (m2.y(), m1.y()),
                        pair=17, names=("A", "B"))
    squared = DerivedPairModel(j12,
                               _word_poly((m1.x(), m2.x()) * 2),
                               _word_poly((m2.y(), m1.y()) * 2),
                               pair=18, names=("A^2", "B^2"))
    deg2 = min(4, env.degree)
    rep2 = check_bi_r_diagonal(squared, deg2, table=env.table(squared))
    if not rep2.verdict:
        return False, {"failure": "square of matrix-built pair",
                       "degree": deg2}, rep2.witnesses
    return True, {"degree": env.degree, "powers": [2, 3],
                  "matrix_square_degree": deg2}, []


def _check_selfadjoint_bifree(env: _Env):
    rng = env.rng("selfadjoint-bifree")
    m1, m2 = offdiag_even_pair(1, rng), offdiag_even_pair(2, rng)
    j12 = bifree_product(m1, m2)
    xw = (m1.x(), m2.x())
    yw = (m2.y(), m1.y())
    xs = tuple(a.starred() for a in reversed(xw))
    ys = tuple(a.starred() for a in reversed(yw))
    p1 = DerivedPairModel(j12, _word_poly(xw + xs), _word_poly(ys + yw),
                          pair=20, names=("XX*", "Y*Y"))
    p2 = DerivedPairModel(j12, _word_poly(xs + xw), _word_poly(yw + ys),
                          pair=21, names=("X*X", "YY*"))
    ej = ExpandedJoint(j12, [p1, p2])
    rep = check_bifree(ej, env.degree, table=env.table(ej))
    if not rep.verdict:
        return False, {"failure": "matrix-built corpus"}, rep.witnesses
    # quick instance over the commuting-unitary pair
    s = shift_pair(0)
    q1 = DerivedPairModel(s, _word_poly((s.x(), s.x_star())),
                          _word_poly((s.y_star(), s.y())),
                          pair=22, names=("XX*", "Y*Y"))
    q2 = DerivedPairModel(s, _word_poly((s.x_star(), s.x())),
                          _word_poly((s.y(), s.y_star())),
                          pair=23, names=("X*X", "YY*"))
    ej2 = ExpandedJoint(s, [q1, q2])
    rep2 = check_bifree(ej2, min(4, env.degree), table=env.table(ej2))
    if not rep2.verdict:
        return False, {"failure": "unitary corpus"}, rep2.witnesses
    return True, {"degree": env.degree}, []


def _check_neg_quarter(env: _Env):
    s = shift_pair(0)
    zw = projection_pair(1)
    joint = bifree_product(s, zw)
    table = env.table(joint)
    expected = Scalar(Fraction(-1, 4))
    segments = [(zw.x_star(), zw.x()), (zw.y(), zw.y_star())]  # Z*Z , WW*
    direct = table.kappa_grouped_direct(segments)
    formula = table.kappa_grouped(segments)
    if direct != expected or formula != expected:
        return False, {"value": str(direct), "via_formula": str(formula),
                       "expected": str(expected)}, []
    # the same value shows up as a mixed cumulant of the derived pairs
    p1 = DerivedPairModel(
        joint, _word_poly((zw.x_star(), zw.x())),
        _word_poly((s.y_star(), zw.y_star(), zw.y(), s.y())),
        pair=24, names=("Z*Z", "ur*W*Wur"))
    p2 = DerivedPairModel(
        joint, _word_poly((s.x(), zw.x(), zw.x_star(), s.x_star())),
        _word_poly((zw.y(), zw.y_star())),
        pair=25, names=("ulZZ*ul*", "WW*"))
    ej = ExpandedJoint(joint, [p1, p2])
    rep = check_bifree(ej, 2, table=env.table(ej))
    if rep.verdict:
        return False, {"failure": "derived pairs unexpectedly bi-free"}, []
    return True, {"value": str(direct), "expected": str(expected),
                  "mixed_witness": rep.witnesses[0]}, []


def _check_bieven_product(env: _Env):
    rng = env.rng("bieven-product")
    m1, m2 = offdiag_even_pair(1, rng), offdiag_even_pair(2, rng)
    for m in (m1, m2):
        rep = check_star_bi_even(m, min(5, env.degree), table=env.table(m))
        if not rep.verdict:
            return False, {"failure": "factor not *-bi-even"}, rep.witnesses
        rep_bird = check_bi_r_diagonal(m, min(3, env.degree), table=env.table(m))
        if rep_bird.verdict:
            return False, {"failure": "factor unexpectedly bi-R-diagonal"}, []
    j12 = bifree_product(m1, m2)
    prod = product_pair(j12, (m1.x(), m2.x()), (m2.y(), m1.y()),
                        pair=26, names=("XZ", "WY"))
    rep2 = check_bi_r_diagonal(prod, env.degree, table=env.table(prod))
    if not rep2.verdict:
        return False, {"failure": "product of *-bi-even pairs"}, rep2.witnesses
    return True, {"degree": env.degree}, []


def _check_key_lemma(env: _Env):
    rng = env.rng("key-lemma")
    s = shift_pair(0)
    m = offdiag_even_pair(1, rng)
    joint = bifree_product(s, m)
    lifted = product_pair(joint, (s.x(), m.x()), (m.y(), s.y()),
                          pair=27, names=("ulZ", "Wur"))
    table_lift = env.table(lifted)
    table_m = env.table(m)
    checked = 0
    for n in range(2, env.degree + 1, 2):
        for word in itertools.product(lifted.alphabet(), repeat=n):
            if not is_admissible_pattern(word).admissible:
                continue
            lhs = table_lift.kappa_full(word)
            rhs = table_m.kappa_full(_mirror_word(word, m))
            if lhs != rhs:
                return False, {"word": lifted.format_word(word),
                               "lifted": str(lhs), "plain": str(rhs)}, []
            checked += 1
    return True, {"words": checked}, []


def _moments_match(derived: DerivedPairModel, reference, mirror_to,
                   max_degree: int):
    """First derived word (if any) whose moment differs from the reference."""
    for n in range(1, max_degree + 1):
        for word in itertools.product(derived.alphabet(), repeat=n):
            lhs = derived.moment(word)
            rhs = reference.moment(_mirror_word(word, mirror_to))
            if lhs != rhs:
                return {"word": derived.format_word(word),
                        "multiplied": str(lhs), "original": str(rhs)}
    return None


def _check_invariance(env: _Env):
    # corpus 1: the commuting-unitary pair itself
    u, v = shift_pair(0), shift_pair(1)
    joint = bifree_product(u, v)
    lifted = product_pair(joint, (u.x(), v.x()), (v.y(), u.y()),
                          pair=30, names=("ulX", "Yur"))
    mismatch = _moments_match(lifted, v, v, env.degree)
    if mismatch is not None:
        return False, {"corpus": "unitary"}, [mismatch]
    # corpus 2: a product-built bi-R-diagonal pair
    rng = env.rng("invariance")
    m = offdiag_even_pair(2, rng)
    v2 = shift_pair(1)
    big = bifree_product(shift_pair(0), v2, m)
    u = shift_pair(0)
    target = DerivedPairModel(big, _word_poly((v2.x(), m.x())),
                              _word_poly((m.y(), v2.y())),
                              pair=31, names=("X", "Y"))
    lifted2 = DerivedPairModel(big, _word_poly((u.x(), v2.x(), m.x())),
                               _word_poly((m.y(), v2.y(), u.y())),
                               pair=32, names=("ulX", "Yur"))
    mismatch = _moments_match(lifted2, target, target, env.degree)
    if mismatch is not None:
        return False, {"corpus": "product-built"}, [mismatch]
    return True, {"degree": env.degree}, []


def _check_invariance_counterexample(env: _Env):
    u, v = shift_pair(0), shift_pair(1)
    joint = bifree_product(u, v)
    table_v = env.table(v)
    plain = table_v.kappa_full((v.x(), v.y_star()))
    table_j = env.table(joint)
    lifted = table_j.kappa_grouped([(u.x(), v.x()), (v.y_star(), u.y_star())])
    ok = plain == ONE and lifted == Scalar(0)
    return ok, {"kappa(vl, vr*)": str(plain),
                "kappa(ul vl, vr* ur*)": str(lifted)}, []


def _check_equivalence(env: _Env):
    rng = env.rng("equivalence")
    corpus = [
        ("unitary", shift_pair(1), True),
        ("projection", projection_pair(1), False),
        ("offdiag-matrix", offdiag_even_pair(1, rng), False),
    ]
    rows = {}
    for tag, pair_model, expected in corpus:
        bird = check_bi_r_diagonal(pair_model, env.degree,
                                   table=env.table(pair_model)).verdict
        u = shift_pair(0)
        joint = bifree_product(u, pair_model)
        lifted = product_pair(joint, (u.x(), pair_model.x()),
                              (pair_model.y(), u.y()),
                              pair=33, names=("ulX", "Yur"))
        mismatch = _moments_match(lifted, pair_model, pair_model, env.degree)
        invariant = mismatch is None
        rows[tag] = {"bi_r_diagonal": bird, "distribution_invariant": invariant}
        if bird != expected or invariant != expected:
            return False, {"corpus": tag, **rows[tag]}, \
                [] if mismatch is None else [mismatch]
    return True, rows, []


def _check_rcyclic_equivalence(env: _Env):
    rng = env.rng("rcyclic-equivalence")
    s = shift_pair(0)
    zw = projection_pair(1)
    joint = bifree_product(shift_pair(0), projection_pair(1))
    prod = product_pair(joint, (s.x(), zw.x()), (zw.y(), s.y()),
                        pair=34, names=("XZ", "WY"))
    corpus = [
        ("unitary", shift_pair(0)),
        ("projection", projection_pair(0)),
        ("offdiag-matrix", offdiag_even_pair(0, rng)),
        ("product", prod),
    ]
    rows = {}
    for tag, model in corpus:
        table = env.table(model)
        bird = check_bi_r_diagonal(model, env.degree, table=table).verdict
        rcyc = check_r_cyclic_2x2(model, env.degree, table=table).verdict
        rows[tag] = {"bi_r_diagonal": bird, "r_cyclic_2x2": rcyc}
        if bird != rcyc:
            return False, {"corpus": tag, **rows[tag]}, []
    return True, rows, []


def _check_bihaar_classifier(env: _Env):
    rep = check_bi_haar(shift_pair(), min(6, env.degree))
    if not rep.verdict:
        return False, {"failure": "canonical model rejected"}, rep.witnesses
    # a pair with an unbalanced nonzero moment must be rejected
    from .distributions import TableModel
    probe = PairDistribution(pair=0)
    bad = TableModel({(probe.x(), probe.y()): ONE}, degree_bound=6,
                     default_zero=True)
    rep2 = check_bi_haar(bad, 2)
    if rep2.verdict:
        return False, {"failure": "defective model accepted"}, []
    return True, {"degree": min(6, env.degree)}, []


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class CheckSpec:
    default_degree: int
    fn: object
    description: str


CHECKS: dict[str, CheckSpec] = {
    "bnc-catalan": CheckSpec(8, _check_bnc_catalan,
                             "lattice counts are Catalan for every side map"),
    "mobius-catalan": CheckSpec(8, _check_mobius_catalan,
                                "Moebius values: signed Catalans, formula == recursion"),
    "cancellation": CheckSpec(5, _check_cancellation,
                              "complement-indexed Moebius sums collapse to the top term"),
    "kreweras-lemma": CheckSpec(5, _check_kreweras,
                                "complementation is an order-reversing bijection"),
    "even-blocks": CheckSpec(8, _check_even_blocks,
                             "join condition == consecutive linking, brute force"),
    "bihaar-cumulants": CheckSpec(8, _check_bihaar_cumulants,
                                  "cumulant spectrum of the commuting-unitary pair"),
    "bihaar-reduction": CheckSpec(8, _check_bihaar_reduction,
                                  "two-faced cumulants reduce to one-faced ones"),
    "bihaar-classifier": CheckSpec(6, _check_bihaar_classifier,
                                   "moment-level recognition of the unitary pair"),
    "products-formula": CheckSpec(8, _check_products_formula,
                                  "grouped cumulants == expanded-word formula"),
    "sum-of-birdiag": CheckSpec(6, _check_sum_of_birdiag,
                                "sums of bi-R-diagonal pairs stay bi-R-diagonal"),
    "prod-birdiag-any": CheckSpec(6, _check_prod_birdiag_any,
                                  "product with any pair, right factors reversed"),
    "quarter-counterexample": CheckSpec(6, _check_quarter,
                                        "the 1/4 cumulant of the plain-order product"),
    "prod-birdiag-both": CheckSpec(6, _check_prod_birdiag_both,
                                   "plain product of two bi-R-diagonal pairs"),
    "powers": CheckSpec(6, _check_powers,
                        "powers of bi-R-diagonal pairs stay bi-R-diagonal"),
    "selfadjoint-bifree": CheckSpec(6, _check_selfadjoint_bifree,
                                    "the self-adjoint derived pairs are bi-free"),
    "neg-quarter-counterexample": CheckSpec(6, _check_neg_quarter,
                                            "the -1/4 mixed cumulant control"),
    "bieven-product": CheckSpec(6, _check_bieven_product,
                                "products of *-bi-even pairs are bi-R-diagonal"),
    "key-lemma": CheckSpec(6, _check_key_lemma,
                           "unitary factors drop out of admissible cumulants"),
    "invariance": CheckSpec(6, _check_invariance,
                            "joint *-distribution invariance under unitary multiplication"),
    "invariance-counterexample": CheckSpec(6, _check_invariance_counterexample,
                                           "reversal of right factors is necessary"),
    "equivalence-i-iii": CheckSpec(6, _check_equivalence,
                                   "bi-R-diagonality == distribution invariance"),
    "rcyclic-equivalence": CheckSpec(6, _check_rcyclic_equivalence,
                                     "2x2 cycle condition == bi-R-diagonality"),
}


def check_ids() -> list[str]:
    return list(CHECKS)


def run_suite(only=None, max_degree: int | None = None, seed: int = 0,
              paranoid: bool = False) -> SuiteReport:
    """Run (a selection of) the verification suite; deterministic per seed."""
    if only is None:
        selected = list(CHECKS)
    else:
        selected = list(only)
        unknown = [cid for cid in selected if cid not in CHECKS]
        if unknown:
            raise KeyError(f"unknown check ids: {unknown}")
    results = []
    for cid in selected:
        spec = CHECKS[cid]
        degree = max_degree if max_degree is not None else spec.default_degree
        env = _Env(degree=degree, seed=seed, paranoid=paranoid)
        start = time.perf_counter()
        passed, details, witnesses = spec.fn(env)
        elapsed = (time.perf_counter() - start) * 1000.0
        results.append(CheckResult(cid, passed, degree, details, witnesses, elapsed))
    return SuiteReport("paper", seed, results)
