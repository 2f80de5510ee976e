"""Exact computation with Drinfeld quasi-modular forms over F_q[T].

Symbolic level-one functions live in :mod:`qmf.symbolic`; associated
polynomials and the double-slash in :mod:`qmf.qmod`; E-expansions in
:mod:`qmf.eexp`; hyperderivatives in :mod:`qmf.hyper`; the decomposition into
hyperderivatives of modular forms in :mod:`qmf.structure`; Hecke operators in
:mod:`qmf.hecke` (concrete) and :mod:`qmf.formal` (formal Gamma_0 calculus).
:mod:`qmf.carlitz` renders everything as u-series, independently.
"""

from .binomial import NvhReport, binom, nvh_check
from .carlitz import render
from .eexp import EExpansion, e_expansion_of, from_e, to_e
from .errors import *  # noqa: F401,F403
from .fields import GF, FqPoly, RatFunc, get_field
from .formal import FormalHecke
from .hecke import RepSet, hecke_generic, naive_counterexample, reps_gamma0
from .hyper import hyper, hyper_assoc, hyper_normalized, hyper_series, hyper_series_normalized
from .matrix import Matrix2
from .qmod import AssocPoly, dslash_poly, is_weak_qmod, reconstruct, slash_fn
from .scalars import CoeffScalar, ZRat
from .series import USeries
from .serialize import dumps, loads, parse_expr
from .structure import DerDecomposition, decompose, der_to_assoc
from .symbolic import Expr, Level1

__version__ = "0.1.0"
