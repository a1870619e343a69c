"""Exact checks of Frobenius rigidity for polynomial maps of the affine line
over finite fields."""

__version__ = "0.1.0"

from .artin_schreier import ASClass, as_reduce, family_class, pair_class, wp, wp_preimage_oracle
from .config import Config
from .counting import (
    CountingReport,
    break_depth,
    counting_report,
    m_set,
    s_d_count,
    slack_B,
    z_m_count,
)
from .errors import *  # noqa: F403
from .field import GF, Embedding, FieldCtx, FieldElem, embedding, frobenius, galois_orbit, trace_to_prime
from .laurent import (
    Differential,
    LaurentSeries,
    as_solvable_local,
    d,
    prop41_probe,
    series_pth_root,
    valuation,
)
from .parsing import format_poly, parse_expr, parse_field, parse_poly, parse_rational, parse_series
from .perfection import RationalFn, perf_membership, perfection_of
from .poly import LPoly, FrobeniusForm, find_root, frobenius_reduce, pth_root, radical, squarefree_root_count
from .rigidity import (
    MapPair,
    Verdict,
    decide_top,
    equal_up_to_frobenius,
    h1_equal,
    theorem_crosscheck,
    top_equal,
)

full_report = counting_report
