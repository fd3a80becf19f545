"""Dimensions of weight-n double zeta values over F_q(theta)."""

from ._dzv import MathError, Pipeline, VerificationError, WeightReport, to_csv

__all__ = ["MathError", "Pipeline", "VerificationError", "WeightReport", "to_csv", "table"]


def table(q, n_min, n_max, **kwargs):
    """Reports for weights n_min..n_max over F_q, q prime."""
    return Pipeline(q, **kwargs).table(n_min, n_max)
