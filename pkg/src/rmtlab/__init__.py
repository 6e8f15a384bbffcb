"""Closed-form Mellin integrals from series coefficients, checked by quadrature."""
from .expr import EvalDomainError, ExprSyntaxError, Pole, eval_ast, format_ast, parse
from .phi import (
    CatalogEntry,
    PhiFunction,
    catalog_lookup,
    catalog_names,
    phi_eval,
    phi_from_expression,
)
from .quad import QuadResult, divergence_probe, integrate_real_line, mellin_quad, tail_extrapolate
from .rmt import RmtResult, Status, classify, rmt, rmt_generalized, rmt_symmetric
from .series import SeriesResult, eval_series, series_consistency_check
from .specfun import gamma, is_gamma_pole, log_gamma, reciprocal_gamma

__version__ = "0.1.0"
