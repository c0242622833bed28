"""Exact combinatorics of bi-free probability.

Side maps and their reading order, the bi-non-crossing partition lattice
with Moebius and Kreweras structure, exact moment models for two-faced
operator pairs, bi-free cumulants, bi-free products, classifiers for
distinguished classes of pairs, and a desk-scale verification suite.
"""

from .chi import ChiMap, Perm, build_s_chi, chi_less, restrict_chi
from .classifiers import (
    ClassReport,
    PatternVerdict,
    check_bi_haar,
    check_bi_r_diagonal,
    check_r_cyclic_2x2,
    check_star_bi_even,
    is_admissible_pattern,
)
from .cumulants import CumulantTable
from .distributions import (
    MatrixStateModel,
    PairDistribution,
    ShiftBiHaarModel,
    TableModel,
    TensorMatrixModel,
    load_model,
    moment_restricted,
    parse_model,
    phi_pi,
    table_model,
)
from .harness import CHECKS, SuiteReport, check_ids, run_suite
from .partitions import (
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
    nc_partitions,
)
from .product import (
    BifreeReport,
    DerivedPairModel,
    ExpandedJoint,
    JointDistribution,
    bifree_product,
    check_bifree,
)
from .scalars import ONE, ZERO, Scalar, parse_scalar
from .words import Letter, Word, chi_of, star_word, subword

__version__ = "0.1.0"
