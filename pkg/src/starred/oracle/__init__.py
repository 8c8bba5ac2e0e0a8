"""Independent chart-geometry re-derivation of the star products."""

from .chart import ChartFunction, ChartRing, chart_ring
from .geometry import (
    Metric,
    check_geometry,
    christoffel,
    flat_metric,
    h_red_components,
    metric_components,
    pair_with_H_power,
    pi_red_components,
    sym_cov_derivative_power,
    two_im,
)
from .star import (
    OracleTruncationError,
    ambient_pairing,
    ambient_wick_oracle,
    poisson_red_oracle,
    star_red_oracle,
    to_chart,
)
from .tensors import SymTensor

__all__ = [
    "ChartFunction", "ChartRing", "chart_ring", "SymTensor", "Metric",
    "metric_components", "flat_metric", "christoffel", "h_red_components",
    "pi_red_components", "two_im", "sym_cov_derivative_power", "pair_with_H_power",
    "check_geometry", "OracleTruncationError", "to_chart", "star_red_oracle",
    "poisson_red_oracle", "ambient_wick_oracle", "ambient_pairing",
]
