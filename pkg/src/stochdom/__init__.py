"""First-order stochastic dominance measures for two-sample comparison."""

__version__ = "0.1.0"
